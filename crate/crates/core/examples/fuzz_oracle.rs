//! The numeric oracle: exact evaluation at random integer points.

use horadam::lang::parse_identity;
use horadam::prover::{fuzz, prove, FuzzConfig, FuzzOutcome, ProverConfig};

fn main() {
    let config = FuzzConfig { trials: 200, seed: 42, range: 9 };
    let cases = [
        "forall n, j: W(n)^2 - q^(n-j)*W(j)^2 == u(n-j)*(b*W(n+j) - q*a*W(n+j-1))",
        "forall n, j: W(n)^2 - q^(n-j)*W(j)^2 == u(n-j)*((b+1)*W(n+j) - q*a*W(n+j-1))",
    ];
    for text in cases {
        let id = parse_identity(text).unwrap();
        let verdict = prove(&id, &ProverConfig::default()).unwrap().verdict;
        match fuzz(&id, &config).unwrap() {
            FuzzOutcome::Pass { trials } => println!("{}: pass ({trials} trials)", verdict.label()),
            FuzzOutcome::Counterexample(c) => println!("{}: {c}", verdict.label()),
        }
    }
}
