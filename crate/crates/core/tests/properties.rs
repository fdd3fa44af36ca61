use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use horadam::lang::{normalize, parse_expr, parse_file, parse_identity, Atom, Expr, Identity, LinForm};
use horadam::prover::{annihilator_for, evaluate_expr, fuzz, prove, FuzzConfig, ProverConfig};
use horadam::{
    numeric_term, slope_annihilator, symbolic_term, Annihilator, Assignment, LaurentPoly, Monomial,
    SequenceKind, Symbol,
};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Term `k` of the sequence with characteristic polynomial x^2 - p x + q and
/// the given initial terms, by stepping the recurrence one index at a time.
fn iterate(p: &BigRational, q: &BigRational, t0: BigRational, t1: BigRational, k: i64) -> BigRational {
    let (mut lo, mut hi) = (t0, t1);
    if k >= 0 {
        for _ in 0..k {
            let next = p * &hi - q * &lo;
            lo = std::mem::replace(&mut hi, next);
        }
        lo
    } else {
        for _ in 0..-k {
            let prev = (p * &lo - &hi) / q;
            hi = std::mem::replace(&mut lo, prev);
        }
        lo
    }
}

fn oracle_term(kind: SequenceKind, k: i64, at: &Assignment) -> BigRational {
    let (p, q) = (at.get(Symbol::P).clone(), at.get(Symbol::Q).clone());
    match kind {
        SequenceKind::W => iterate(&p, &q, at.get(Symbol::A).clone(), at.get(Symbol::B).clone(), k),
        SequenceKind::V => iterate(&p, &q, at.get(Symbol::C).clone(), at.get(Symbol::D).clone(), k),
        SequenceKind::U => iterate(&p, &q, rat(0), rat(1), k),
        SequenceKind::GeoQ => {
            let mut acc = BigRational::one();
            for _ in 0..k.abs() {
                acc *= &q;
            }
            if k < 0 {
                acc.recip()
            } else {
                acc
            }
        }
    }
}

fn assignment() -> impl Strategy<Value = Assignment> {
    (
        -6i64..=6,
        prop_oneof![-6i64..=-1, 1i64..=6],
        -6i64..=6,
        -6i64..=6,
        -6i64..=6,
        -6i64..=6,
    )
        .prop_map(|(p, q, a, b, c, d)| Assignment::from_ints(p, q, a, b, c, d))
}

fn kind() -> impl Strategy<Value = SequenceKind> {
    prop_oneof![
        Just(SequenceKind::W),
        Just(SequenceKind::V),
        Just(SequenceKind::U),
        Just(SequenceKind::GeoQ),
    ]
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, 0i64..=2, 0i64..=2, 0i64..=1, -2i64..=2), 0..5).prop_map(|terms| {
        let mut acc = LaurentPoly::zero();
        for (c, p, a, b, q) in terms {
            let m = Monomial::one()
                .with(Symbol::P, p)
                .with(Symbol::A, a)
                .with(Symbol::B, b)
                .with(Symbol::Q, q);
            acc += &LaurentPoly::term(c, m);
        }
        acc
    })
}

fn vars() -> Vec<String> {
    vec!["n".to_string(), "k".to_string()]
}

fn expr() -> impl Strategy<Value = Expr> {
    let atom = (kind(), -2i64..=2, -1i64..=1, -3i64..=3).prop_map(|(kind, cn, ck, c)| {
        let index = LinForm { coeffs: vec![cn, ck], constant: c };
        Expr::Atom(Atom::new(kind, index))
    });
    let leaf = prop_oneof![
        1 => (0i64..=4).prop_map(|v| Expr::Int(BigInt::from(v))),
        1 => prop_oneof![Just(Symbol::P), Just(Symbol::Q), Just(Symbol::A), Just(Symbol::B)].prop_map(Expr::Scalar),
        2 => atom,
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..=2).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

fn corpus(name: &str) -> Vec<Identity> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    parse_file(&std::fs::read_to_string(path).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!(a.terms().all(|(_, coeff)| !coeff.is_zero()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), at in assignment()) {
        let (x, y) = (a.evaluate(&at).unwrap(), b.evaluate(&at).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&at).unwrap(), &x + &y);
        prop_assert_eq!((&a * &b).evaluate(&at).unwrap(), &x * &y);
        prop_assert_eq!((-&a).evaluate(&at).unwrap(), -x);
    }

    #[test]
    fn terms_match_the_recurrence(kind in kind(), k in -10i64..=10, at in assignment()) {
        let want = oracle_term(kind, k, &at);
        prop_assert_eq!(numeric_term(kind, k, &at).unwrap(), want.clone());
        prop_assert_eq!(symbolic_term(kind, k).evaluate(&at).unwrap(), want);
    }

    #[test]
    fn symbolic_terms_satisfy_their_recurrence(k in -10i64..=10) {
        let (p, q) = (LaurentPoly::symbol(Symbol::P), LaurentPoly::symbol(Symbol::Q));
        for kind in [SequenceKind::W, SequenceKind::V, SequenceKind::U] {
            let lhs = symbolic_term(kind, k + 2);
            let rhs = &(&p * &symbolic_term(kind, k + 1)) - &(&q * &symbolic_term(kind, k));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn w_specializes_to_u(k in -6i64..=6) {
        let pins = [(Symbol::A, BigInt::from(0)), (Symbol::B, BigInt::from(1))];
        prop_assert_eq!(
            symbolic_term(SequenceKind::W, k).specialize(&pins).unwrap(),
            symbolic_term(SequenceKind::U, k)
        );
    }

    #[test]
    fn slope_annihilators_are_sound(kind in kind(), m in -3i64..=3, c in -4i64..=4, at in assignment()) {
        let ann = slope_annihilator(kind, m);
        prop_assert!(ann.has_unit_constant());
        let values: Vec<BigRational> =
            (0..ann.order() as i64 + 6).map(|j| oracle_term(kind, m * j + c, &at)).collect();
        prop_assert!(ann.annihilates_values(&values, &at).unwrap());
    }

    #[test]
    fn closures_are_sound(
        k1 in kind(), m1 in -2i64..=2, c1 in -3i64..=3,
        k2 in kind(), m2 in -2i64..=2, c2 in -3i64..=3,
        at in assignment(),
    ) {
        let (a1, a2) = (slope_annihilator(k1, m1), slope_annihilator(k2, m2));
        let x = |j: i64| oracle_term(k1, m1 * j + c1, &at);
        let y = |j: i64| oracle_term(k2, m2 * j + c2, &at);

        let prod = a1.product(&a2);
        let values: Vec<BigRational> = (0..prod.order() as i64 + 4).map(|j| x(j) * y(j)).collect();
        prop_assert!(prod.annihilates_values(&values, &at).unwrap());

        let sum = a1.sum(&a2);
        let values: Vec<BigRational> = (0..sum.order() as i64 + 4).map(|j| x(j) + y(j)).collect();
        prop_assert!(sum.annihilates_values(&values, &at).unwrap());

        prop_assert!(prod.has_unit_constant());
        prop_assert!(sum.has_unit_constant());
        prop_assert!(a1.dilated(2).has_unit_constant());
    }

    #[test]
    fn expressions_round_trip(e in expr()) {
        let text = e.render(&vars());
        let back = parse_expr(&text, &vars(), &[]).unwrap();
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn normalization_is_sound(e in expr(), at in assignment(), n in -4i64..=4, k in -4i64..=4) {
        let nf = normalize(&e, &[]);
        let direct = evaluate_expr(&e, &[], &at, &[n, k]).unwrap();
        prop_assert_eq!(nf.evaluate(&at, &[n, k]).unwrap(), direct);
    }

    #[test]
    fn normalization_is_idempotent(e in expr()) {
        let nf = normalize(&e, &[]);
        let text = nf.render(&vars());
        let again = normalize(&parse_expr(&text, &vars(), &[]).unwrap(), &[]);
        prop_assert_eq!(again, nf, "{}", text);
    }

    #[test]
    fn expressions_equal_their_normal_form(e in expr()) {
        let nf = normalize(&e, &[]);
        let text = format!("forall n, k: {} == {}", e.render(&vars()), nf.render(&vars()));
        let id = parse_identity(&text).unwrap();
        let cert = prove(&id, &ProverConfig::default()).unwrap();
        prop_assert!(cert.verdict.is_proved(), "{}", text);
    }

    #[test]
    fn verdicts_agree_with_the_oracle(lhs in expr(), rhs in expr()) {
        let text = format!("forall n, k: {} == {}", lhs.render(&vars()), rhs.render(&vars()));
        let id = parse_identity(&text).unwrap();
        let cert = prove(&id, &ProverConfig::default()).unwrap();
        if cert.verdict.is_proved() {
            let config = FuzzConfig { trials: 20, ..FuzzConfig::default() };
            prop_assert!(fuzz(&id, &config).unwrap().is_pass(), "{}", text);
        }
    }
}

#[test]
fn corpus_round_trips() {
    for name in ["classical.fib", "mutations.fib"] {
        for id in corpus(name) {
            let back = parse_identity(&id.render()).unwrap();
            assert_eq!(back, id, "{}", id.render());
        }
    }
}

#[test]
fn melham_difference_is_annihilated() {
    let id = parse_identity(
        "let e = p*a*b - q*a^2 - b^2\n\
         forall n: W(n+1)*W(n+2)*W(n+6) - W(n+3)^3 == e*q^(n+1)*(p^3*W(n+2) - q^2*W(n+1))",
    )
    .unwrap();
    let diff = id.difference();
    let nf = normalize(&diff, &id.lets);
    let ann: Annihilator = annihilator_for(&nf, 0, "n", &ProverConfig::default()).unwrap();
    assert!(ann.order() <= 10);
    assert!(ann.has_unit_constant());
    // The difference is identically zero, so check the annihilator on each
    // of its summands instead.
    let at = Assignment::from_ints(2, 3, 1, -2, 0, 0);
    let summands = [
        "W(n+1)*W(n+2)*W(n+6)",
        "W(n+3)^3",
        "q^(n+1)*W(n+2)",
        "q^(n+1)*W(n+1)",
    ];
    let vars = vec!["n".to_string()];
    for s in summands {
        let e = parse_expr(s, &vars, &[]).unwrap();
        let seq: Vec<BigRational> = (0..ann.order() as i64 + 12)
            .map(|n| evaluate_expr(&e, &[], &at, &[n]).unwrap())
            .collect();
        assert!(ann.annihilates_values(&seq, &at).unwrap(), "{s}");
    }
}

#[test]
fn certificates_are_well_formed() {
    let mut ids = corpus("classical.fib");
    ids.extend(corpus("mutations.fib"));
    for id in &ids {
        let cert = prove(id, &ProverConfig::default()).unwrap();
        let bound: usize = cert.level_orders().iter().product();
        assert!(cert.leaves.len() <= bound.max(1), "{}", id.render());
        assert!(cert.annihilators().iter().all(|a| a.has_unit_constant()));
        let json = cert.to_json(false);
        assert_eq!(json, cert.to_json(false));
        assert!(!json.contains("\"ms\""));
    }
}
