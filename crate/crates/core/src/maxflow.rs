//! Dinic's algorithm on small dense-ish networks with `i64` capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct Network {
    n: usize,
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    it: Vec<usize>,
}

impl Network {
    pub fn new(n: usize) -> Self {
        Network { n, head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), level: vec![0; n], it: vec![0; n] }
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    /// Adds the arc pair u→v (capacity `c_uv`) and v→u (capacity `c_vu`); returns the
    /// index of the u→v arc (its partner is index ^ 1).
    pub fn add(&mut self, u: usize, v: usize, c_uv: i64, c_vu: i64) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(c_uv);
        self.head[u].push(id);
        self.to.push(u);
        self.cap.push(c_vu);
        self.head[v].push(id + 1);
        id
    }

    pub fn set(&mut self, arc: usize, c_uv: i64, c_vu: i64) {
        self.cap[arc] = c_uv;
        self.cap[arc ^ 1] = c_vu;
    }

    pub fn residual(&self, arc: usize) -> i64 {
        self.cap[arc]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &a in &self.head[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    q.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, f: i64) -> i64 {
        if v == t {
            return f;
        }
        while self.it[v] < self.head[v].len() {
            let a = self.head[v][self.it[v]];
            let w = self.to[a];
            if self.cap[a] > 0 && self.level[w] == self.level[v] + 1 {
                let d = self.dfs(w, t, f.min(self.cap[a]));
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            self.it[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.it.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network (the minimal min-cut source side).
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.head[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Nodes that can reach `t` in the residual network (complement = maximal source side).
    pub fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &a in &self.head[v] {
                // arc a goes v→w; its partner w→v has residual cap[a^1]
                let w = self.to[a];
                if self.cap[a ^ 1] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Residual arcs as adjacency lists (for strongly-connected-component analysis).
    pub fn residual_graph(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|v| self.head[v].iter().filter(|&&a| self.cap[a] > 0).map(|&a| self.to[a]).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic() {
        let mut g = Network::new(4);
        g.add(0, 1, 3, 0);
        g.add(0, 2, 2, 0);
        g.add(1, 2, 1, 0);
        g.add(1, 3, 2, 0);
        g.add(2, 3, 3, 0);
        assert_eq!(g.max_flow(0, 3), 5);
        let side = g.reachable_from(0);
        assert_eq!(side, vec![true, false, false, false]);
    }

    #[test]
    fn undirected_pair() {
        let mut g = Network::new(3);
        g.add(0, 1, 4, 4);
        g.add(2, 1, 5, 5);
        assert_eq!(g.max_flow(0, 2), 4);
    }
}
