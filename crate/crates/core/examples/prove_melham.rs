//! Proves Melham's cubic identity and shows the elimination tree.

use horadam::lang::parse_identity;
use horadam::prover::{prove, ProverConfig};

fn main() {
    let id = parse_identity(
        "let e = p*a*b - q*a^2 - b^2\n\
         forall n: W(n+1)*W(n+2)*W(n+6) - W(n+3)^3 == e*q^(n+1)*(p^3*W(n+2) - q^2*W(n+1))",
    )
    .unwrap();
    let cert = prove(&id, &ProverConfig::default()).unwrap();
    let top = cert.elimination.as_ref().unwrap();
    println!("identity:    {}", cert.identity);
    println!("annihilator: {} (order {})", top.charpoly, top.order);
    for leaf in &cert.leaves {
        println!("  {:<5} {}", leaf.at, leaf.polynomial);
    }
    println!("verdict:     {}", cert.verdict.label());

    let loose = ProverConfig { symmetric_squares: false, ..ProverConfig::default() };
    let cert = prove(&id, &loose).unwrap();
    println!("without symmetric squares: order {:?}, {}", cert.level_orders(), cert.verdict.label());
}
