use galois_cli::parse::{parse_poly, ParseErrorKind};
use galois_core::field::{PrimeField, Rationals};
use galois_core::numbers::Rational;
use galois_core::poly::{q_ring, Poly, PolyRing};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Ast {
    Int(u32),
    T,
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, u32),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

fn ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![(0u32..20).prop_map(Ast::Int), Just(Ast::T)];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1u32..9).prop_map(|(a, c)| Ast::Div(Box::new(a), c)),
            inner.clone().prop_map(|a| Ast::Neg(Box::new(a))),
            (inner, 0u32..4).prop_map(|(a, e)| Ast::Pow(Box::new(a), e)),
        ]
    })
}

// binding strength: sum 1, product 2, unary 3, power 4, atom 5
fn render(a: &Ast, min: u8) -> String {
    let (s, p) = match a {
        Ast::Int(n) => (n.to_string(), 5),
        Ast::T => ("t".to_string(), 5),
        Ast::Add(x, y) => (format!("{} + {}", render(x, 1), render(y, 2)), 1),
        Ast::Sub(x, y) => (format!("{} - {}", render(x, 1), render(y, 2)), 1),
        Ast::Mul(x, y) => (format!("{}*{}", render(x, 2), render(y, 3)), 2),
        Ast::Div(x, c) => (format!("{}/{c}", render(x, 2)), 2),
        Ast::Neg(x) => (format!("-{}", render(x, 3)), 3),
        Ast::Pow(x, e) => (format!("{}^{e}", render(x, 5)), 4),
    };
    if p < min {
        format!("({s})")
    } else {
        s
    }
}

fn eval(a: &Ast, x: &Rational) -> Rational {
    match a {
        Ast::Int(n) => Rational::from_integer(BigInt::from(*n)),
        Ast::T => x.clone(),
        Ast::Add(p, q) => eval(p, x) + eval(q, x),
        Ast::Sub(p, q) => eval(p, x) - eval(q, x),
        Ast::Mul(p, q) => eval(p, x) * eval(q, x),
        Ast::Div(p, c) => eval(p, x) / Rational::from_integer(BigInt::from(*c)),
        Ast::Neg(p) => -eval(p, x),
        Ast::Pow(p, e) => {
            let b = eval(p, x);
            (0..*e).fold(Rational::one(), |acc, _| acc * &b)
        }
    }
}

fn small_poly() -> impl Strategy<Value = Poly<Rational>> {
    proptest::collection::vec((-40i64..40, 1i64..7), 0..7).prop_map(|cs| {
        q_ring().poly(
            cs.into_iter()
                .map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn well_formed_expressions_evaluate_correctly(a in ast()) {
        let src = render(&a, 1);
        let f = parse_poly(&src, &Rationals).unwrap();
        let r = q_ring();
        for x in -3i64..=3 {
            let x = Rational::from_integer(BigInt::from(x));
            prop_assert_eq!(r.eval(&f, &x), eval(&a, &x), "{}", src);
        }
    }

    #[test]
    fn render_then_parse_is_identity_over_q(f in small_poly()) {
        let r = q_ring();
        prop_assert_eq!(parse_poly(&r.render(&f, "t"), &Rationals).unwrap(), f);
    }

    #[test]
    fn render_then_parse_is_identity_over_fp(
        cs in proptest::collection::vec(0u64..13, 0..8),
    ) {
        let k = PrimeField::new(13);
        let ring = PolyRing::new(k);
        let f = ring.poly(cs);
        prop_assert_eq!(parse_poly(&ring.render(&f, "t"), &k).unwrap(), f);
    }

    #[test]
    fn noise_never_panics(s in "[0-9t+*/^() \\-x.é]{0,40}") {
        let _ = parse_poly(&s, &Rationals);
        let _ = parse_poly(&s, &PrimeField::new(7));
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let s = String::from_utf8_lossy(&bytes);
        if let Err(e) = parse_poly(&s, &Rationals) {
            prop_assert!(e.position <= s.len());
        }
    }
}

#[test]
fn worked_examples() {
    let f = parse_poly("9 + 14*t - 8*t^3", &Rationals).unwrap();
    let want: Vec<Rational> = [9, 14, 0, -8]
        .iter()
        .map(|&c| Rational::from_integer(BigInt::from(c)))
        .collect();
    assert_eq!(f.coeffs(), want.as_slice());
    let g = parse_poly("t^2 - 2", &PrimeField::new(3)).unwrap();
    assert_eq!(g.coeffs(), &[1, 0, 1]);
    assert!(parse_poly("0", &Rationals)
        .unwrap()
        .coeffs()
        .iter()
        .all(|c| c.is_zero()));
}

#[test]
fn errors_carry_expected_tokens() {
    let e = parse_poly("t +", &Rationals).unwrap_err();
    assert_eq!(e.position, 3);
    assert!(e.to_string().starts_with("at column 4"));
    match e.kind {
        ParseErrorKind::Unexpected { expected, found } => {
            assert!(expected.contains(&"'t'"));
            assert_eq!(found, "end of input");
        }
        other => panic!("unexpected {other:?}"),
    }
}
