//! Classical verdicts: solvability by radicals, the `S_p` criterion with
//! exact real-root counting, and ruler-and-compass constructibility.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::correspondence::{gal_over, subfield_generated};
use crate::error::{Error, Result};
use crate::factor::{is_irreducible_q, Verdict as IrrVerdict, WitnessValue};
use crate::field::{Field, Rationals};
use crate::galois::automorphisms;
use crate::limits::Limits;
use crate::numbers::{is_fermat_prime, is_prime};
use crate::poly::{q_ring, QPoly};
use crate::splitting::splitting_field_q_with;

/// Number of distinct real roots, by a Sturm chain on the squarefree part.
pub fn count_real_roots(f: &QPoly) -> Result<usize> {
    let r = q_ring();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let df = r.derivative(f);
    let g = r.gcd(f, &df);
    let sf = r
        .div_exact_poly(f, &g)
        .ok_or_else(|| Error::internal("gcd does not divide"))?;
    if sf.deg() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), r.derivative(&sf)];
    loop {
        let n = chain.len();
        let rem = r.rem(&chain[n - 2], &chain[n - 1])?;
        if rem.is_zero() {
            break;
        }
        chain.push(r.neg(&rem));
    }
    let variations = |signs: Vec<i32>| {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos = chain.iter().map(|p| sign(p.lc().unwrap())).collect();
    let at_neg = chain
        .iter()
        .map(|p| {
            let s = sign(p.lc().unwrap());
            if p.deg().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(variations(at_neg) - variations(at_pos))
}

fn sign(x: &crate::numbers::Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `Some(p)` when `f` is irreducible of prime degree `p` with exactly
/// `p − 2` real roots, so that its Galois group is `S_p`.
pub fn sp_criterion(f: &QPoly) -> Option<u64> {
    let p = f.deg()? as u64;
    if !is_prime(p) {
        return None;
    }
    let cert = is_irreducible_q(f).ok()?;
    if cert.verdict != IrrVerdict::Irreducible {
        return None;
    }
    (count_real_roots(f).ok()? as u64 + 2 == p).then_some(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Solvability {
    SolvableByRadicals,
    NotSolvableByRadicals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The group was built and its derived series computed.
    GroupComputed {
        type_name: String,
        order: usize,
        derived_series: Vec<usize>,
    },
    /// Irreducible of prime degree `p` with `p − 2` real roots, so `S_p`.
    SpCriterion { p: u64, real_roots: usize },
    /// Degree at most 4: the group embeds in `S_4`, which is solvable.
    DegreeAtMostFour { degree: usize },
}

#[derive(Debug, Clone)]
pub struct SolvabilityVerdict {
    pub polynomial: QPoly,
    pub verdict: Solvability,
    pub evidence: Evidence,
}

/// Verdict JSON shared by the solvability and constructibility reports.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub input: String,
    pub verdict: String,
    pub evidence_kind: String,
    pub evidence_data: BTreeMap<String, WitnessValue>,
    pub axioms: Vec<String>,
}

impl SolvabilityVerdict {
    /// Name of the Galois group the evidence pins down.
    pub fn group_name(&self) -> String {
        match &self.evidence {
            Evidence::GroupComputed { type_name, .. } => type_name.clone(),
            Evidence::SpCriterion { p, .. } => format!("S{p}"),
            Evidence::DegreeAtMostFour { .. } => "a subgroup of S4".to_string(),
        }
    }

    pub fn report(&self) -> VerdictReport {
        let mut data = BTreeMap::new();
        let kind = match &self.evidence {
            Evidence::GroupComputed {
                type_name,
                order,
                derived_series,
            } => {
                data.insert("type".into(), WitnessValue::Text(type_name.clone()));
                data.insert("order".into(), WitnessValue::Int(*order as i64));
                data.insert(
                    "derived_series".into(),
                    WitnessValue::List(
                        derived_series
                            .iter()
                            .map(|&o| WitnessValue::Int(o as i64))
                            .collect(),
                    ),
                );
                "GroupComputed"
            }
            Evidence::SpCriterion { p, real_roots } => {
                data.insert("p".into(), WitnessValue::Int(*p as i64));
                data.insert("real_roots".into(), WitnessValue::Int(*real_roots as i64));
                "SpCriterion"
            }
            Evidence::DegreeAtMostFour { degree } => {
                data.insert("degree".into(), WitnessValue::Int(*degree as i64));
                "DegreeAtMostFour"
            }
        };
        VerdictReport {
            input: q_ring().render(&self.polynomial, "t"),
            verdict: format!("{:?}", self.verdict),
            evidence_kind: kind.to_string(),
            evidence_data: data,
            axioms: Vec::new(),
        }
    }
}

pub fn solvable_by_radicals(f: &QPoly) -> Result<SolvabilityVerdict> {
    solvable_by_radicals_with(f, &Limits::default())
}

/// Tries the `S_p` route, then the degree route, then builds the group.
pub fn solvable_by_radicals_with(f: &QPoly, limits: &Limits) -> Result<SolvabilityVerdict> {
    let d = f.deg().ok_or(Error::ZeroPolynomial)?;
    if let Some(p) = sp_criterion(f) {
        if p >= 5 {
            return Ok(SolvabilityVerdict {
                polynomial: f.clone(),
                verdict: Solvability::NotSolvableByRadicals,
                evidence: Evidence::SpCriterion {
                    p,
                    real_roots: count_real_roots(f)?,
                },
            });
        }
    }
    if d <= 4 {
        return Ok(SolvabilityVerdict {
            polynomial: f.clone(),
            verdict: Solvability::SolvableByRadicals,
            evidence: Evidence::DegreeAtMostFour { degree: d },
        });
    }
    solvable_by_group(f, limits)
}

/// The group route alone.
pub fn solvable_by_group(f: &QPoly, limits: &Limits) -> Result<SolvabilityVerdict> {
    let sf = splitting_field_q_with(f, limits)?;
    let g = automorphisms(&sf)?;
    let series = g.table.derived_series(limits)?;
    let solvable = series.last().unwrap().is_trivial();
    Ok(SolvabilityVerdict {
        polynomial: f.clone(),
        verdict: if solvable {
            Solvability::SolvableByRadicals
        } else {
            Solvability::NotSolvableByRadicals
        },
        evidence: Evidence::GroupComputed {
            type_name: g.isomorphism_type()?,
            order: g.order(),
            derived_series: series.iter().map(|h| h.order()).collect(),
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UnityEntry {
    pub n: usize,
    pub order: usize,
    pub abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadicalEntry {
    pub n: usize,
    pub a: i64,
    pub order_over_cyclotomic: usize,
    pub abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KummerReport {
    pub unity: Vec<UnityEntry>,
    pub radical: Vec<RadicalEntry>,
}

impl KummerReport {
    pub fn all_abelian(&self) -> bool {
        self.unity.iter().all(|e| e.abelian) && self.radical.iter().all(|e| e.abelian)
    }
}

fn t_pow_minus(n: usize, a: i64) -> QPoly {
    let mut c = vec![0i64; n + 1];
    c[0] = -a;
    c[n] = 1;
    crate::poly::qpoly(&c)
}

/// `Gal_Q(tⁿ − 1)` for `n ≤ max_n`, and `Gal(tⁿ − a)` over the field of
/// `n`-th roots of unity for the given pairs.
pub fn kummer_abelian_checks(
    max_n: usize,
    pairs: &[(usize, i64)],
    limits: &Limits,
) -> Result<KummerReport> {
    let mut unity = Vec::new();
    for n in 1..=max_n {
        let g = automorphisms(&splitting_field_q_with(&t_pow_minus(n, 1), limits)?)?;
        unity.push(UnityEntry {
            n,
            order: g.order(),
            abelian: g.is_abelian(),
        });
    }
    let mut radical = Vec::new();
    for &(n, a) in pairs {
        let g = automorphisms(&splitting_field_q_with(&t_pow_minus(n, a), limits)?)?;
        let t = g.field();
        let roots = &g.splitting.roots;
        let ratios: Vec<_> = roots
            .iter()
            .map(|r| t.div(r, &roots[0]).ok_or(Error::ZeroInverse))
            .collect::<Result<_>>()?;
        let cyclotomic = subfield_generated(t, &ratios)?;
        let h = gal_over(&cyclotomic, &g);
        let sub = g.table.restrict(&h)?;
        radical.push(RadicalEntry {
            n,
            a,
            order_over_cyclotomic: h.order(),
            abelian: sub.is_abelian(),
        });
    }
    Ok(KummerReport { unity, radical })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constructibility {
    NotConstructible,
    NecessaryConditionHolds,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructibilityVerdict {
    pub target: String,
    pub degree: usize,
    pub verdict: Constructibility,
}

impl ConstructibilityVerdict {
    pub fn report(&self) -> VerdictReport {
        let mut data = BTreeMap::new();
        data.insert("degree".into(), WitnessValue::Int(self.degree as i64));
        VerdictReport {
            input: self.target.clone(),
            verdict: format!("{:?}", self.verdict),
            evidence_kind: "DegreeOverQ".into(),
            evidence_data: data,
            axioms: Vec::new(),
        }
    }
}

/// A constructible number has degree a power of 2 over `Q`; `m` is the
/// minimal polynomial of the target.
pub fn constructible_degree_check(m: &QPoly) -> Result<ConstructibilityVerdict> {
    let cert = is_irreducible_q(m)?;
    if cert.verdict != IrrVerdict::Irreducible {
        return Err(Error::NotIrreducible);
    }
    let degree = m.deg().unwrap();
    Ok(ConstructibilityVerdict {
        target: q_ring().render(m, "t"),
        degree,
        verdict: if degree.is_power_of_two() {
            Constructibility::NecessaryConditionHolds
        } else {
            Constructibility::NotConstructible
        },
    })
}

/// Regular `n`-gon: the odd part of `n` must be a product of distinct
/// Fermat primes.
pub fn ngon_constructible(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut odd = n >> n.trailing_zeros();
    let mut q = 3;
    while odd > 1 && q * q <= odd {
        if odd.is_multiple_of(q) {
            odd /= q;
            if odd.is_multiple_of(q) || !is_fermat_prime(q) {
                return false;
            }
        }
        q += 2;
    }
    odd == 1 || is_fermat_prime(odd)
}

/// Minimal polynomial of `cos(π/9)`: `cos 3θ = 4cos³θ − 3cosθ` at `3θ = π/3`.
pub fn cos_pi_over_9_min_poly() -> QPoly {
    q_ring().monic(&crate::poly::qpoly(&[-1, -6, 0, 8]))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicProblem {
    pub problem: String,
    pub possible: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub axioms: Vec<String>,
}

/// Angle trisection, cube duplication, circle squaring.
pub fn classic_problems() -> Result<Vec<ClassicProblem>> {
    let tri = constructible_degree_check(&cos_pi_over_9_min_poly())?;
    let dup = constructible_degree_check(&crate::poly::qpoly(&[-2, 0, 0, 1]))?;
    let entry = |problem: &str, v: &ConstructibilityVerdict| ClassicProblem {
        problem: problem.into(),
        possible: v.verdict != Constructibility::NotConstructible,
        reason: format!("minimal polynomial {} has degree {}", v.target, v.degree),
        degree: Some(v.degree),
        axioms: Vec::new(),
    };
    Ok(vec![
        entry("trisect 60 degrees", &tri),
        entry("duplicate the cube", &dup),
        ClassicProblem {
            problem: "square the circle".into(),
            possible: false,
            reason: "sqrt(pi) would be algebraic of degree a power of 2".into(),
            degree: None,
            axioms: vec!["pi is transcendental".into()],
        },
    ])
}

/// `Q(√a, √b)`: the second square root adds degree 1 or 2.
pub fn quadratic_join_degree(a: i64, b: i64) -> Result<usize> {
    let (t, _) = crate::tower::Tower::new(Rationals).adjoin_base_root(&t_pow_minus(2, a), "a")?;
    let m = t.lift_poly(&t_pow_minus(2, b));
    let fac = <Rationals as crate::factor::TowerBase>::factor_in_tower(&t, &m, &Limits::default())?;
    Ok(fac
        .factors
        .iter()
        .map(|(g, _)| g.deg().unwrap())
        .max()
        .unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, Rational};
    use crate::poly::qpoly;
    use proptest::prelude::*;

    #[test]
    fn real_root_examples() {
        assert_eq!(count_real_roots(&qpoly(&[3, -6, 0, 0, 0, 1])).unwrap(), 3);
        assert_eq!(count_real_roots(&qpoly(&[-6, 0, 0, 0, 5])).unwrap(), 2);
        assert_eq!(count_real_roots(&qpoly(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&qpoly(&[0, 0, 1])).unwrap(), 1);
        assert!(matches!(
            count_real_roots(&qpoly(&[])),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn sp_examples() {
        assert_eq!(sp_criterion(&qpoly(&[3, -6, 0, 0, 0, 1])), Some(5));
        assert_eq!(sp_criterion(&qpoly(&[-2, 0, 0, 1])), Some(3));
        assert_eq!(sp_criterion(&qpoly(&[-2, 0, 0, 0, 1])), None);
    }

    #[test]
    fn unsolvable_quintic() {
        let v = solvable_by_radicals(&qpoly(&[3, -6, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.verdict, Solvability::NotSolvableByRadicals);
        assert_eq!(
            v.evidence,
            Evidence::SpCriterion {
                p: 5,
                real_roots: 3
            }
        );
        assert_eq!(v.group_name(), "S5");
    }

    #[test]
    fn quartics_are_solvable() {
        let v = solvable_by_radicals(&qpoly(&[-2, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.verdict, Solvability::SolvableByRadicals);
        let g = solvable_by_group(&qpoly(&[-2, 0, 0, 0, 1]), &Limits::default()).unwrap();
        assert_eq!(g.verdict, Solvability::SolvableByRadicals);
        assert_eq!(g.group_name(), "D4");
    }

    #[test]
    fn sp_and_group_routes_agree_on_cubics() {
        let f = qpoly(&[-2, 0, 0, 1]);
        let g = solvable_by_group(&f, &Limits::default()).unwrap();
        assert_eq!(g.group_name(), "S3");
        assert_eq!(sp_criterion(&f), Some(3));
    }

    #[test]
    fn constructibility() {
        let v = constructible_degree_check(&qpoly(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(v.verdict, Constructibility::NotConstructible);
        let v = constructible_degree_check(&cos_pi_over_9_min_poly()).unwrap();
        assert_eq!(
            (v.degree, v.verdict),
            (3, Constructibility::NotConstructible)
        );
        let v = constructible_degree_check(&qpoly(&[-2, 0, 1])).unwrap();
        assert_eq!(v.verdict, Constructibility::NecessaryConditionHolds);
        assert!(matches!(
            constructible_degree_check(&qpoly(&[-4, 0, 1])),
            Err(Error::NotIrreducible)
        ));
        let yes: Vec<u64> = (3..=20).filter(|&n| ngon_constructible(n)).collect();
        assert_eq!(yes, vec![3, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20]);
        assert!(ngon_constructible(60));
        assert!(!ngon_constructible(9));
        let classic = classic_problems().unwrap();
        assert!(classic.iter().all(|c| !c.possible));
    }

    #[test]
    fn quadratic_joins() {
        assert_eq!(quadratic_join_degree(2, 3).unwrap(), 2);
        assert_eq!(quadratic_join_degree(2, 8).unwrap(), 1);
    }

    #[test]
    fn small_kummer() {
        let r = kummer_abelian_checks(4, &[(3, 2)], &Limits::default()).unwrap();
        assert!(r.all_abelian());
        assert_eq!(r.radical[0].order_over_cyclotomic, 3);
    }

    /// `sup |g'|` bound on `[a, b]` from the coefficients.
    fn lipschitz(g: &QPoly, a: &Rational, b: &Rational) -> Rational {
        let rad = a.abs().max(b.abs());
        let mut acc = rat(0);
        let mut pw = rat(1);
        for (k, c) in g.coeffs().iter().enumerate().skip(1) {
            acc += c.abs() * rat(k as i64) * &pw;
            pw *= &rad;
        }
        acc
    }

    /// No root of `g` in `[a, b]`, proved by `|g(a)| > L·(b − a)`.
    fn excluded(g: &QPoly, a: &Rational, b: &Rational) -> bool {
        let v = q_ring().eval(g, a).abs();
        v > lipschitz(g, a, b) * (b - a)
    }

    /// Roots of the squarefree `f` in `(a, b]` by exact bisection.
    fn bisect(f: &QPoly, df: &QPoly, a: Rational, b: Rational) -> usize {
        let r = q_ring();
        if excluded(f, &a, &b) {
            return 0;
        }
        if excluded(df, &a, &b) {
            let (fa, fb) = (r.eval(f, &a), r.eval(f, &b));
            return usize::from(sign(&fb) == 0 || sign(&fa) * sign(&fb) < 0);
        }
        let m = (&a + &b) / rat(2);
        bisect(f, df, a, m.clone()) + bisect(f, df, m, b)
    }

    fn bisection_count(f: &QPoly) -> usize {
        let lc = f.lc().unwrap().clone();
        let bound = f
            .coeffs()
            .iter()
            .map(|c| (c / &lc).abs())
            .fold(rat(1), |x, y| x + y);
        let df = q_ring().derivative(f);
        bisect(f, &df, -bound.clone(), bound)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn sturm_matches_sign_changes(c in proptest::collection::vec(-9i64..=9, 4..=6)) {
            let mut c = c;
            if *c.last().unwrap() == 0 { *c.last_mut().unwrap() = 1; }
            let f = qpoly(&c);
            let r = q_ring();
            prop_assume!(r.gcd(&f, &r.derivative(&f)).deg() == Some(0));
            prop_assert_eq!(count_real_roots(&f).unwrap(), bisection_count(&f));
        }
    }
}
