//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snarkflow::families::{complete, complete_bipartite, flower_snark, goldberg, petersen, reduced_goldberg};
use snarkflow::flows::{
    extended_block_parity, find_integer_flow, find_integer_flow_budgeted, integer_to_circular, phi_via_flows, phi_via_flows_budgeted, verify_circular_flow, FlowCertificate,
};
use snarkflow::graph::Graph;
use snarkflow::proofcheck::audit::receive_bound_audit_from;
use snarkflow::proofcheck::{audit_sequences, catalog_diff, enumerate_configurations, Catalog, RuleSet};
use snarkflow::valuations::{
    flow_to_valuation, lemma_suite, max_excess, max_excess_exhaustive, phi_valuation_exhaustive, phi_valuation_with_set, phi_via_valuations,
    validate_valuation, violating_set, BalancedValuation, ValuationMode,
};
use snarkflow::Rational;

type Outcome = Result<String, String>;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

/// Both solvers; returns the flow certificate.
fn both(g: &Graph, want: Rational) -> Result<FlowCertificate, String> {
    let (pf, cert) = phi_via_flows(g, None).map_err(e)?;
    let (pv, _) = phi_via_valuations(g).map_err(e)?;
    ensure(pf == want && pv == want, format!("flows {pf}, valuations {pv}, expected {want}"))?;
    ensure(verify_circular_flow(g, &cert, pf).map_err(e)?.is_none(), "certificate does not verify")?;
    Ok(cert)
}

struct Certs(Vec<(String, Graph, FlowCertificate)>);

fn c1(certs: &mut Certs) -> Outcome {
    let g = petersen().graph;
    let cert = both(&g, r(5, 1))?;
    // oracle: min over every orientable ±1 valuation of the max over every subset
    let mut best = Rational::from_integer(i64::MAX);
    for mask in 0u32..1 << 10 {
        if mask.count_ones() != 5 {
            continue;
        }
        let b = BalancedValuation::new((0..10).map(|v| if mask >> v & 1 == 1 { 1 } else { -1 }).collect());
        if validate_valuation(&g, &b, ValuationMode::Orientable).map_err(e)?.is_none() {
            best = best.min(phi_valuation_exhaustive(&g, &b).map_err(e)?);
        }
    }
    ensure(best == r(5, 1), format!("exhaustive oracle gives {best}"))?;
    certs.0.push(("petersen".into(), g, cert));
    Ok("flows = valuations = exhaustive = 5/1".into())
}

fn c2(certs: &mut Certs) -> Outcome {
    let mut out = vec![];
    for (name, g, want) in [("K_3,3", complete_bipartite(3, 3), r(3, 1)), ("K_4", complete(4), r(4, 1))] {
        let t = Instant::now();
        let cert = both(&g, want)?;
        ensure(t.elapsed() <= Duration::from_secs(1), format!("{name} took {:?}", t.elapsed()))?;
        ensure((want == r(3, 1)) == g.is_bipartite(), "bipartite characterization")?;
        out.push(format!("{name} = {want}"));
        certs.0.push((name.into(), g, cert));
    }
    Ok(out.join(", "))
}

fn c3(certs: &mut Certs) -> Outcome {
    let g = flower_snark(2).map_err(e)?.graph;
    let (phi, cert) = phi_via_flows(&g, None).map_err(e)?;
    ensure(phi == r(9, 2), format!("flows gives {phi}"))?;
    let (pv, _) = phi_via_valuations(&g).map_err(e)?;
    ensure(pv == r(9, 2), format!("valuations give {pv}"))?;
    certs.0.push(("flower(2)".into(), g, cert));
    Ok("φ(I_5) = 9/2 by both solvers".into())
}

fn cli_verify(g: &Graph, cert: &FlowCertificate, r: &str) -> Result<i32, String> {
    let dir = std::env::temp_dir().join(format!("snarkflow-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    // JSON keeps the edge order the certificate refers to
    let gp: PathBuf = dir.join("g.json");
    let cp: PathBuf = dir.join("cert.json");
    std::fs::write(&gp, serde_json::to_string(&g.to_json()).map_err(e)?).map_err(e)?;
    std::fs::write(&cp, cert.to_json()).map_err(e)?;
    let st = Command::new(env!("CARGO_BIN_EXE_snarkflow")).arg("verify").arg(&gp).arg(&cp).args(["--r", r]).output().map_err(e)?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(st.status.code().unwrap_or(-1))
}

fn c4(certs: &mut Certs) -> Outcome {
    let g = goldberg(1).map_err(e)?.graph;
    let f = find_integer_flow(&g, 9, 2).map_err(e)?.ok_or("no flow at 9/2")?;
    ensure(find_integer_flow(&g, 22, 5).map_err(e)?.is_none(), "a flow exists at 22/5")?;
    let cert = integer_to_circular(&f);
    ensure(cli_verify(&g, &cert, "9/2")? == 0, "snarkflow verify rejected the certificate")?;
    ensure(cli_verify(&g, &cert, "22/5")? == 1, "snarkflow verify accepted the certificate at 22/5")?;
    certs.0.push(("goldberg(1)".into(), g, cert));
    // stretch, not part of the verdict
    let g2 = goldberg(2).map_err(e)?.graph;
    let budget = Duration::from_secs(30);
    let stretch = match phi_via_flows_budgeted(&g2, None, Some(budget)) {
        Ok((phi, cert)) => {
            let ok = verify_circular_flow(&g2, &cert, phi).map_err(e)?.is_none();
            format!("stretch: φ(G_5) = {phi} (certificate verified: {ok}, expected 13/3)")
        }
        Err(x) => {
            let upper = find_integer_flow_budgeted(&g2, 13, 3, Some(budget)).map_err(e)?.is_some();
            format!("stretch: φ(G_5) not settled within {budget:?} ({x}); 13/3-flow found: {upper}")
        }
    };
    Ok(format!("flow at 9/2, none at 22/5, CLI verify exit 0; {stretch}"))
}

fn c5(_: &mut Certs) -> Outcome {
    let mut n = 0;
    for k in [1, 2] {
        let lg = reduced_goldberg(k).map_err(e)?;
        for i in 0..lg.blocks().map_err(e)? {
            ensure(extended_block_parity(&lg, i).map_err(e)?, format!("H_{} block {i}", 2 * k + 1))?;
            n += 1;
        }
    }
    Ok(format!("{n} extended blocks of H_3 and H_5"))
}

fn c6(_: &mut Certs) -> Outcome {
    let classes = enumerate_configurations();
    ensure(classes.len() == 4, format!("{} configuration classes", classes.len()))?;
    let built = Catalog::build(&RuleSet::paper()).map_err(e)?;
    let counts = built.basic_counts();
    let want = [(1, 14), (2, 8), (3, 12), (4, 8)];
    ensure(want.iter().all(|(c, n)| counts.get(c) == Some(n)), format!("basic counts {counts:?}"))?;
    let diff = catalog_diff(&Catalog::load().map_err(e)?, &built);
    ensure(diff.is_empty(), format!("differs from data/catalog.json: {diff:?}"))?;
    Ok(format!("4 configurations; basic types {counts:?}; {} directed, same as data/catalog.json", built.len()))
}

fn c7(_: &mut Certs) -> Outcome {
    let cat = Catalog::load().map_err(e)?;
    let audits = [audit_sequences(&cat, 3).map_err(e)?, audit_sequences(&cat, 5).map_err(e)?];
    let receive = receive_bound_audit_from(&cat, &audits);
    let mut parts = vec![];
    for a in &audits {
        ensure(a.passed, format!("length {}: {} failures, first {:?}", a.length, a.failures.len(), a.failures.first()))?;
        let excluded: usize = a.excluded.values().sum();
        parts.push(format!("L={}: {} sequences, {} discharged, {} flagged, {excluded} excluded", a.length, a.compatible, a.discharged, a.flagged));
    }
    ensure(receive.passed, "receive-bound audit failed")?;
    Ok(parts.join("; ") + "; receive tables hold")
}

fn c8(_: &mut Certs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut applied = std::collections::BTreeMap::<String, usize>::new();
    for i in 0..200 {
        let n = 2 * rng.gen_range(4..=8);
        let g = common::random_bridgeless_cubic(&mut rng, n);
        let b = common::random_orientable(&mut rng, &g);
        let s = if i % 2 == 0 { phi_valuation_with_set(&g, &b).map_err(e)?.1 } else { common::random_connected_set(&mut rng, &g) };
        let k = rng.gen_range(1..=3);
        let rep = lemma_suite(&g, &b, &s, k).map_err(e)?;
        if let Some(f) = rep.failures().next() {
            return Err(format!("instance {i}: {} failed: {}", f.lemma, f.detail));
        }
        for c in rep.checks.iter().filter(|c| c.status == snarkflow::valuations::LemmaStatus::Pass) {
            *applied.entry(c.lemma.clone()).or_default() += 1;
        }
    }
    Ok(format!("200 instances, no violations; checks applied {applied:?}"))
}

fn c9(certs: &mut Certs) -> Outcome {
    for (name, g, cert) in &certs.0 {
        let b = flow_to_valuation(g, cert).map_err(e)?;
        ensure(validate_valuation(g, &b, ValuationMode::Orientable).map_err(e)?.is_none(), format!("{name}: not orientable"))?;
        ensure(violating_set(g, &b, cert.r).map_err(e)?.is_none(), format!("{name}: violating set at {}", cert.r))?;
    }
    Ok(format!("{} certificates round-trip", certs.0.len()))
}

fn c10(_: &mut Certs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let n = 2 * rng.gen_range(2..=9);
        let g = common::random_cubic(&mut rng, n);
        let b: Vec<i64> = (0..n).map(|_| [-3, -1, 1, 3][rng.gen_range(0..4)]).collect();
        let q = rng.gen_range(2..=12);
        let t = r(rng.gen_range(1..q), q);
        let fast = max_excess(&g, &b, t).map_err(e)?.value;
        let slow = max_excess_exhaustive(&g, &b, t).map_err(e)?.value;
        ensure(fast == slow, format!("instance {i} (n = {n}, t = {t}): {fast} vs {slow}"))?;
    }
    Ok("100 instances agree exactly".into())
}

fn main() {
    let criteria: [(&str, u64, fn(&mut Certs) -> Outcome); 10] = [
        ("φ(Petersen) = 5, solvers agree with the exhaustive oracle", 10, c1),
        ("φ(K_3,3) = 3 and φ(K_4) = 4", 2, c2),
        ("φ(I_5) = 9/2", 600, c3),
        ("φ(G_3) = 9/2 with a verified certificate", 1800, c4),
        ("extended-block colour parity on H_3 and H_5", 60, c5),
        ("configurations and block types", 60, c6),
        ("discharging audit over sequences of length 3 and 5", 1800, c7),
        ("lemma properties on 200 random instances", 300, c8),
        ("flow certificates round-trip to orientable valuations", 60, c9),
        ("cut oracle agrees with exhaustive search", 300, c10),
    ];
    let mut certs = Certs(vec![]);
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let res = f(&mut certs);
        let el = t.elapsed();
        let res = res.and_then(|m| if el.as_secs() > limit { Err(format!("{m}; took {el:.1?}, limit {limit}s")) } else { Ok(m) });
        match res {
            Ok(m) => println!("criterion {:>2}: PASS  {name} [{el:.2?}] {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{el:.2?}] {m}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
