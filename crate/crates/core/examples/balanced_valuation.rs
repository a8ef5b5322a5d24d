//! φ from the valuation side: an optimal balanced valuation, its tight sets, and the
//! structural checks on one of them.
use snarkflow::families::reduced_goldberg;
use snarkflow::valuations::{lemma_suite, optimal_sets, phi_via_valuations};

fn main() -> snarkflow::Result<()> {
    let lg = reduced_goldberg(1)?;
    let g = &lg.graph;
    let (phi, b) = phi_via_valuations(g)?;
    println!("φ(H_3) = {phi}");
    println!("b = {:?}", b.b);
    let (_, sets) = optimal_sets(g, &b, 256)?;
    let sets = sets.expect("few optimal sets");
    println!("{} optimal sets", sets.len());
    let s = sets.iter().max_by_key(|s| s.len()).unwrap();
    println!("largest: {:?}", s.iter().map(|v| lg.label(v)).collect::<Vec<_>>());
    for c in lemma_suite(g, &b, s, 1)?.checks {
        println!("  {:<24} {:?}  {}", c.lemma, c.status, c.detail);
    }
    Ok(())
}
