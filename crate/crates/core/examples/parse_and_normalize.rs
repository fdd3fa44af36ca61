//! Parsing the identity language and computing canonical normal forms.

use horadam::lang::{normalize_identity, parse_file};

const SOURCE: &str = "
let e = p*a*b - q*a^2 - b^2
forall n: W(n+2)*W(n+4) - W(n+3)^2 == e*q^(n+2)
forall n, k: W(n+k)^2 - q^(2*k)*W(n-k)^2 == u(2k)*(b*W(2n) - q*a*W(2n-1))
forall n: u(-n) == -1*q^(-n)*u(n)
";

fn main() {
    for id in parse_file(SOURCE).unwrap() {
        println!("line {}: {}", id.location.line, id.source);
        let nf = normalize_identity(&id);
        println!("  lhs - rhs = {}", nf.render(&id.vars));
        println!("  {} monomials", nf.len());
    }

    match parse_file("forall n: W(n) == W(m)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
