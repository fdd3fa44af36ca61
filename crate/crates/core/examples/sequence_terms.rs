//! Symbolic and numeric terms of W, V, u and q^n, including negative indices.

use horadam::{numeric_term, symbolic_term, Assignment, SequenceKind};

fn main() {
    for kind in SequenceKind::ALL {
        let def = kind.definition();
        println!("{}: characteristic polynomial {}", kind.name(), def.charpoly);
        for k in [-2, -1, 0, 1, 2, 3] {
            println!("  {}({k}) = {}", kind.name(), symbolic_term(kind, k));
        }
    }

    let fib = Assignment::from_ints(1, -1, 0, 1, 2, 1);
    let values: Vec<String> = (-8..=8)
        .map(|k| numeric_term(SequenceKind::U, k, &fib).unwrap().to_string())
        .collect();
    println!("Fibonacci u(-8..=8): {}", values.join(" "));
    let lucas: Vec<String> = (0..=10)
        .map(|k| numeric_term(SequenceKind::V, k, &fib).unwrap().to_string())
        .collect();
    println!("Lucas V(0..=10) with c=2, d=1: {}", lucas.join(" "));
}
