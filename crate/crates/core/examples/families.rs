//! Builds the named graphs and prints their sizes and graph6 strings.
use snarkflow::families::{flower_snark, goldberg, petersen, reduced_goldberg};
use snarkflow::graph6::emit_graph6;

fn main() -> snarkflow::Result<()> {
    let graphs = [petersen(), flower_snark(2)?, goldberg(1)?, goldberg(2)?, reduced_goldberg(1)?];
    for lg in &graphs {
        let g = &lg.graph;
        println!(
            "{:?} k={:?}: n={} m={} cubic={} bridgeless={}  {}",
            lg.family,
            lg.k,
            g.n(),
            g.m(),
            g.is_cubic(),
            g.is_bridgeless(),
            emit_graph6(g)?
        );
    }
    let h = reduced_goldberg(2)?;
    println!("H_5 hub {:?} has neighbours {:?}", h.hub().map(|v| h.label(v)), h.graph.neighbors(h.hub().unwrap()).iter().map(|&(u, _)| h.label(u)).collect::<Vec<_>>());
    Ok(())
}
