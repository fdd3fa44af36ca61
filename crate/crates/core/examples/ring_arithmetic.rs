//! Exact arithmetic in Z[p, a, b, c, d, q, 1/q].

use horadam::{Assignment, LaurentPoly, Symbol};

fn main() {
    let p = LaurentPoly::symbol(Symbol::P);
    let q = LaurentPoly::symbol(Symbol::Q);
    let a = LaurentPoly::symbol(Symbol::A);
    let b = LaurentPoly::symbol(Symbol::B);

    let e = &(&(&p * &a) * &b) - &(&(&q * &a) * &a) - &b * &b;
    println!("e          = {e}");
    println!("e * q^-2   = {}", &e * &LaurentPoly::q_pow(-2));
    println!("(p + q)^3  = {}", (&p + &q).pow(3));

    let q_inv = q.unit_inverse().expect("q is a unit");
    println!("q * q^-1   = {}", &q * &q_inv);
    println!("is 2*q a unit? {}", (&q * &LaurentPoly::constant(2)).is_unit());

    let at = Assignment::from_ints(1, -1, 0, 1, 2, 1);
    println!("e at {at} = {}", e.evaluate(&at).unwrap());
}
