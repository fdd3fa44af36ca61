//! A two-index identity proved by eliminating m first: the subgoals are the
//! one-index instances at m = 0 and m = 1. Prints the JSON certificate.

use horadam::lang::parse_identity;
use horadam::prover::{prove, ProverConfig};

fn main() {
    let id = parse_identity("forall m, n: W(m+n+1) == W(m+1)*u(n+1) - q*W(m)*u(n)").unwrap();
    let config = ProverConfig {
        elimination_order: Some(vec!["m".into(), "n".into()]),
        ..ProverConfig::default()
    };
    let cert = prove(&id, &config).unwrap();
    let top = cert.elimination.as_ref().unwrap();
    for sub in &top.subgoals {
        println!("m = {}: {} == 0", sub.value, sub.goal);
    }
    println!("{}", cert.to_json(false));
}
