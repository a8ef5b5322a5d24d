//! φ from the flow side, with a certificate that is checked independently.
use snarkflow::families::{goldberg, petersen};
use snarkflow::flows::{phi_via_flows, verify_circular_flow};

fn main() -> snarkflow::Result<()> {
    for lg in [petersen(), goldberg(1)?] {
        let (phi, cert) = phi_via_flows(&lg.graph, None)?;
        let check = verify_circular_flow(&lg.graph, &cert, phi)?;
        println!("{:?}: φ = {phi}, certificate {}", lg.family, if check.is_none() { "valid" } else { "INVALID" });
        let mut broken = cert.clone();
        broken.values[0] = snarkflow::Rational::zero();
        println!("  with edge 0 zeroed: {}", verify_circular_flow(&lg.graph, &broken, phi)?.map(|v| v.to_string()).unwrap_or_default());
    }
    Ok(())
}
