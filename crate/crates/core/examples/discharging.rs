//! Discharging along one cyclic type sequence, then the audit over all sequences of length 3.
use snarkflow::proofcheck::{audit_sequences, inspect_sequence, Catalog};

fn main() -> snarkflow::Result<()> {
    let cat = Catalog::load()?;
    let seq = std::env::args().skip(1).collect::<Vec<_>>();
    let seq: Vec<&str> = if seq.is_empty() { vec!["C_1", "G_4^T", "L_3"] } else { seq.iter().map(|s| s.as_str()).collect() };
    match inspect_sequence(&cat, &seq) {
        Ok((ledger, findings, excluded)) => {
            println!("{seq:?}: charges {:?}, h keeps {}, total {}", ledger.charges.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ledger.h_bucket, ledger.total());
            for t in &ledger.transfers {
                let from = t.from.map_or("edge".to_string(), |i| format!("block {i}"));
                let to = t.to.map_or("h".to_string(), |i| format!("block {i}"));
                println!("  step {} {from} -> {to}: {}", t.step, t.amount);
            }
            for f in &findings {
                println!("  flag {} at block {:?}: {}", f.claim, f.block, f.detail);
            }
            if let Some(e) = excluded {
                println!("  excluded globally: {e}");
            }
        }
        Err(e) => println!("{seq:?}: {e}"),
    }
    let a = audit_sequences(&cat, 3)?;
    println!(
        "length 3: {} compatible, {} discharged, {} flagged, {} failures; max charge {}, max total {}",
        a.compatible, a.discharged, a.flagged, a.failures.len(), a.max_plain_charge, a.max_total
    );
    Ok(())
}
