//! Circular flows: certificates, verification, integer-flow search and the flow-side solver.

mod coloring;
mod search;

pub use coloring::{
    enumerate_edge_colourings, extended_block_parity, extended_block_parity_report, pair_parity, three_edge_color, EdgeColoring, ParityReport,
};
pub use search::{farey_ladder, find_integer_flow, find_integer_flow_budgeted, phi_via_flows, phi_via_flows_budgeted};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerFlow {
    pub p: i64,
    pub q: i64,
    pub orientation: Vec<(usize, usize)>,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    pub r: Rational,
    pub orientation: Vec<(usize, usize)>,
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlowViolation {
    /// the orientation of an edge does not use that edge's endpoints
    Orientation { edge: usize },
    Range { edge: usize, value: Rational },
    Conservation { vertex: usize, net_outflow: Rational },
}

impl std::fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlowViolation::Orientation { edge } => write!(f, "edge {edge}: orientation does not match its endpoints"),
            FlowViolation::Range { edge, value } => write!(f, "edge {edge}: value {value} outside [1, r-1]"),
            FlowViolation::Conservation { vertex, net_outflow } => {
                write!(f, "vertex {vertex}: net outflow {net_outflow} is not zero")
            }
        }
    }
}

/// `Ok(None)` when the certificate is a circular `r`-flow, otherwise the first violation
/// (orientation and range problems by edge index, then conservation by vertex index).
pub fn verify_circular_flow(g: &Graph, cert: &FlowCertificate, r: Rational) -> Result<Option<FlowViolation>> {
    if cert.values.len() != g.m() || cert.orientation.len() != g.m() {
        return Err(Error::EdgeCountMismatch { graph: g.m(), cert: cert.values.len().min(cert.orientation.len()) });
    }
    let one = Rational::one();
    let hi = r.checked_sub(&one)?;
    for (e, &(t, h)) in cert.orientation.iter().enumerate() {
        let (u, v) = g.edge(e);
        if !((t, h) == (u, v) || (t, h) == (v, u)) {
            return Ok(Some(FlowViolation::Orientation { edge: e }));
        }
        let x = cert.values[e];
        if x < one || x > hi {
            return Ok(Some(FlowViolation::Range { edge: e, value: x }));
        }
    }
    let mut net = vec![Rational::zero(); g.n()];
    for (e, &(t, h)) in cert.orientation.iter().enumerate() {
        net[t] = net[t].checked_add(&cert.values[e])?;
        net[h] = net[h].checked_sub(&cert.values[e])?;
    }
    Ok(net
        .into_iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
        .map(|(vertex, net_outflow)| FlowViolation::Conservation { vertex, net_outflow }))
}

pub fn integer_to_circular(f: &IntegerFlow) -> FlowCertificate {
    FlowCertificate {
        r: Rational::new(f.p, f.q).expect("q > 0"),
        orientation: f.orientation.clone(),
        values: f.values.iter().map(|&x| Rational::new(x, f.q).expect("q > 0")).collect(),
    }
}

impl IntegerFlow {
    /// Checks `q ≤ value ≤ p − q` and conservation.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.values.len() != g.m() || self.orientation.len() != g.m() {
            return false;
        }
        let mut net = vec![0i64; g.n()];
        for (e, &(t, h)) in self.orientation.iter().enumerate() {
            let (u, v) = g.edge(e);
            let x = self.values[e];
            if !((t, h) == (u, v) || (t, h) == (v, u)) || x < self.q || x > self.p - self.q {
                return false;
            }
            net[t] += x;
            net[h] -= x;
        }
        net.iter().all(|&x| x == 0)
    }
}

impl FlowCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, petersen};

    fn k4_cert() -> FlowCertificate {
        let g = complete(4);
        integer_to_circular(&find_integer_flow(&g, 4, 1).unwrap().unwrap())
    }

    #[test]
    fn zero_values_out_of_range() {
        let g = complete(4);
        let mut c = k4_cert();
        c.values = vec![Rational::zero(); 6];
        let v = verify_circular_flow(&g, &c, Rational::from_integer(4)).unwrap();
        assert!(matches!(v, Some(FlowViolation::Range { edge: 0, .. })));
    }

    #[test]
    fn reorientation_keeps_validity() {
        let g = complete(4);
        let c = k4_cert();
        let r = Rational::from_integer(4);
        assert_eq!(verify_circular_flow(&g, &c, r).unwrap(), None);
        // negating the whole flow is re-orienting every edge with values unchanged
        let mut all = c.clone();
        all.orientation = all.orientation.iter().map(|&(t, h)| (h, t)).collect();
        assert_eq!(verify_circular_flow(&g, &all, r).unwrap(), None);
        let mut one = c.clone();
        let (t, h) = one.orientation[0];
        one.orientation[0] = (h, t);
        assert!(matches!(verify_circular_flow(&g, &one, r).unwrap(), Some(FlowViolation::Conservation { .. })));
    }

    #[test]
    fn scaling() {
        let f = IntegerFlow { p: 9, q: 2, orientation: vec![(0, 1)], values: vec![2] };
        assert_eq!(integer_to_circular(&f).values[0], Rational::one());
        let f = IntegerFlow { p: 9, q: 2, orientation: vec![(0, 1)], values: vec![7] };
        assert_eq!(integer_to_circular(&f).values[0], Rational::new(7, 2).unwrap());
        let f = IntegerFlow { p: 4, q: 1, orientation: vec![(0, 1)], values: vec![3] };
        assert_eq!(integer_to_circular(&f).values[0], Rational::from_integer(3));
    }

    #[test]
    fn count_mismatch_is_error() {
        let c = k4_cert();
        assert!(verify_circular_flow(&petersen().graph, &c, Rational::from_integer(4)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let c = k4_cert();
        let j = c.to_json();
        assert!(j.contains("\"r\": \"4/1\""));
        assert_eq!(FlowCertificate::from_json(&j).unwrap(), c);
    }
}
