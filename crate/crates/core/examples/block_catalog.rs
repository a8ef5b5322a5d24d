//! The four configurations and the catalogued block types, re-derived from the rules.
use snarkflow::proofcheck::{catalog_diff, enumerate_configurations, Catalog, RuleSet};

fn main() -> snarkflow::Result<()> {
    for c in enumerate_configurations() {
        println!("configuration {} ({}): {} colourings", c.id, c.representative, c.members.len());
    }
    let cat = Catalog::load()?;
    println!("{} directed types, basic counts {:?}", cat.len(), cat.basic_counts());
    println!("re-derived under paper rules: {} differences", catalog_diff(&cat, &Catalog::build(&RuleSet::paper())?).len());
    for d in catalog_diff(&cat, &Catalog::build(&RuleSet::strict())?) {
        println!("strict: {d}");
    }
    Ok(())
}
