//! Annihilating polynomials: slopes, products, sums and the symmetric square.

use horadam::{slope_annihilator, Annihilator, SequenceKind};

fn main() {
    let w = Annihilator::horadam();
    println!("W(n):          {w}");
    for m in [-2, -1, 2, 3] {
        let label = format!("W({m}*n):");
        println!("{label:<15}{}", slope_annihilator(SequenceKind::W, m));
    }
    println!("q^n:           {}", slope_annihilator(SequenceKind::GeoQ, 1));

    let kron = w.product(&w);
    let sym = w.symmetric_square().unwrap();
    println!("W(n)^2 (Kronecker, order {}): {kron}", kron.order());
    println!("W(n)^2 (symmetric square, order {}): {sym}", sym.order());
    let q_n = slope_annihilator(SequenceKind::GeoQ, 1);
    println!("W(n)^2 + q^n:  {}", sym.sum(&q_n));
    println!("unit constant term preserved: {}", kron.has_unit_constant() && sym.has_unit_constant());
}
