use galois_core::factor::{self, is_irreducible_q, Verdict};
use galois_core::field::{Field, PrimeField, Rationals, Ring};
use galois_core::numbers::Rational;
use galois_core::poly::{q_ring, qpoly, PolyRing, QPoly};
use galois_core::tower::{Tower, TowerElem};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Q(√2, ∛3), degree 6 with two levels.
fn tower() -> Tower<Rationals> {
    let (t, _) = Tower::new(Rationals)
        .adjoin_base_root(&qpoly(&[-2, 0, 1]), "a")
        .unwrap();
    t.adjoin_base_root(&qpoly(&[-3, 0, 0, 1]), "b").unwrap().0
}

fn elem(t: &Tower<Rationals>, c: &[(i64, i64)]) -> TowerElem<Rational> {
    let coords = c
        .iter()
        .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    t.from_coords(coords).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 6)
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 2..=max_deg + 1).prop_map(|mut c| {
        let n = c.len() - 1;
        if c[n] == 0 {
            c[n] = 1;
        }
        qpoly(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tower_is_a_field(x in coords(), y in coords(), z in coords()) {
        let t = tower();
        let (x, y, z) = (elem(&t, &x), elem(&t, &y), elem(&t, &z));
        prop_assert_eq!(t.mul(&x, &t.add(&y, &z)), t.add(&t.mul(&x, &y), &t.mul(&x, &z)));
        prop_assert_eq!(t.mul(&t.mul(&x, &y), &z), t.mul(&x, &t.mul(&y, &z)));
        prop_assert_eq!(t.mul(&x, &y), t.mul(&y, &x));
        if !t.is_zero(&y) {
            let inv = t.inv(&y).unwrap();
            prop_assert!(t.is_one(&t.mul(&y, &inv)));
            prop_assert_eq!(t.mul(&t.div(&x, &y).unwrap(), &y), x.clone());
        }
        // the minimal polynomial vanishes and its degree divides [K:Q]
        let m = t.min_poly(&x);
        prop_assert_eq!(6 % m.deg().unwrap(), 0);
        let val = m.coeffs().iter().rev().fold(t.zero(), |acc, c| {
            t.add(&t.mul(&acc, &x), &t.from_base(c.clone()))
        });
        prop_assert!(t.is_zero(&val));
    }

    #[test]
    fn power_basis_round_trip(x in coords()) {
        let t = tower();
        let prim = t.primitive().unwrap();
        prop_assert_eq!(prim.min_poly.deg(), Some(6));
        let x = elem(&t, &x);
        let p = t.to_power_basis(&prim, &x);
        prop_assert_eq!(t.from_power_basis(&prim, &p), x);
    }

    #[test]
    fn rational_factorization_round_trips(f in small_poly(4), g in small_poly(3)) {
        let r = q_ring();
        let h = r.mul(&f, &g);
        let fac = factor::factor_q(&h).unwrap();
        prop_assert_eq!(fac.expand(&r), h.clone());
        let total: usize = fac.factors.iter().map(|(p, m)| p.deg().unwrap() * m).sum();
        prop_assert_eq!(Some(total), h.deg());
        for (p, _) in &fac.factors {
            let cert = is_irreducible_q(p).unwrap();
            prop_assert_eq!(cert.verdict, Verdict::Irreducible);
            prop_assert!(factor::verify_certificate(p, &cert));
        }
    }

    #[test]
    fn certificate_report_shape(f in small_poly(5)) {
        let cert = is_irreducible_q(&f).unwrap();
        let v = serde_json::to_value(cert.report()).unwrap();
        let obj = v.as_object().unwrap();
        prop_assert!(obj["verdict"].is_string());
        prop_assert!(obj["witness_kind"].is_string());
        prop_assert!(obj["witness_data"].is_object());
    }

    #[test]
    fn fp_factorization_round_trips(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
        c in prop::collection::vec(0u64..1000, 2..10),
    ) {
        let k = PrimeField::new(p);
        let ring = PolyRing::new(k);
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        let n = c.len() - 1;
        if c[n] == 0 {
            c[n] = 1;
        }
        let f = ring.poly(c);
        let fac = factor::factor_fp(&k, &f).unwrap();
        prop_assert_eq!(fac.expand(&ring), f);
        for (g, _) in &fac.factors {
            prop_assert!(k.is_one(g.lc().unwrap()));
            let trial = factor::factor_fp_trial(&k, g, &Default::default()).unwrap();
            prop_assert!(trial.is_irreducible());
        }
    }
}

#[test]
fn fixed_tower_values() {
    let t = tower();
    let (a, b) = (t.generator(1), t.generator(2));
    assert_eq!(t.element_degree(&t.add(&a, &b)), 6);
    assert_eq!(t.mul(&a, &a), t.from_base(q(2)));
    assert_eq!(t.pow(&b, 3), t.from_base(q(3)));
}
