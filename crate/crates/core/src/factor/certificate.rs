use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::fp::factor_fp;
use super::rational::factor_q_with;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Ring};
use crate::limits::Limits;
use crate::numbers::{factor_integer, is_prime, Rational};
use crate::poly::{content_primitive, q_ring, z_ring, Poly, PolyRing, QPoly, ZPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Irreducible,
    Reducible,
}

/// The stage of the irreducibility pipeline that settled the question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Degree 1, or degree 2–3 with no rational root.
    LowDegreeRule {
        degree: usize,
    },
    RationalRoot {
        root: Rational,
    },
    Eisenstein {
        prime: u64,
        shift: i64,
    },
    ModP {
        prime: u64,
    },
    FullFactorization {
        factors: Vec<(QPoly, usize)>,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::LowDegreeRule { .. } => "LowDegreeRule",
            Witness::RationalRoot { .. } => "RationalRoot",
            Witness::Eisenstein { .. } => "Eisenstein",
            Witness::ModP { .. } => "ModP",
            Witness::FullFactorization { .. } => "FullFactorization",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub witness: Witness,
}

/// Serializable form: `{verdict, witness_kind, witness_data}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub witness_kind: String,
    pub witness_data: BTreeMap<String, WitnessValue>,
}

/// JSON-shaped witness payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Int(i64),
    Text(String),
    List(Vec<WitnessValue>),
}

impl IrreducibilityCertificate {
    pub fn report(&self) -> CertificateReport {
        let mut data = BTreeMap::new();
        match &self.witness {
            Witness::LowDegreeRule { degree } => {
                data.insert("degree".into(), WitnessValue::Int(*degree as i64));
            }
            Witness::RationalRoot { root } => {
                data.insert("root".into(), WitnessValue::Text(root.to_string()));
            }
            Witness::Eisenstein { prime, shift } => {
                data.insert("prime".into(), WitnessValue::Int(*prime as i64));
                data.insert("shift".into(), WitnessValue::Int(*shift));
            }
            Witness::ModP { prime } => {
                data.insert("prime".into(), WitnessValue::Int(*prime as i64));
            }
            Witness::FullFactorization { factors } => {
                let r = q_ring();
                let list = factors
                    .iter()
                    .map(|(f, m)| {
                        WitnessValue::List(vec![
                            WitnessValue::Text(r.render(f, "t")),
                            WitnessValue::Int(*m as i64),
                        ])
                    })
                    .collect();
                data.insert("factors".into(), WitnessValue::List(list));
            }
        }
        CertificateReport {
            verdict: self.verdict,
            witness_kind: self.witness.kind().into(),
            witness_data: data,
        }
    }
}

/// `Φp = 1 + t + … + t^(p-1)`.
pub fn cyclotomic_p(p: u64) -> Result<ZPoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(z_ring().from_i64s(&vec![1; p as usize]))
}

fn prime_factors_big(n: &BigInt, limits: &Limits) -> Vec<u64> {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        if small <= limits.trial_division_cap && small > 0 {
            let mut ps = factor_integer(small).unwrap_or_default();
            ps.dedup();
            return ps;
        }
    }
    // too big to factor completely: small prime divisors are enough to hunt
    // for an Eisenstein prime
    (2u64..10_000)
        .filter(|&p| is_prime(p) && (&n % p).is_zero())
        .collect()
}

fn eisenstein_at(g: &ZPoly, limits: &Limits) -> Option<u64> {
    let c = g.coeffs();
    let n = c.len() - 1;
    let common = c[..n].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if common.is_zero() {
        return None;
    }
    prime_factors_big(&common, limits).into_iter().find(|&p| {
        let pb = BigInt::from(p);
        !(&c[n] % &pb).is_zero() && !(&c[0] % (&pb * &pb)).is_zero()
    })
}

/// First `(p, c)` such that `f(t + c)` satisfies Eisenstein's criterion at
/// `p`, scanning shifts in the given order and primes ascending.
pub fn eisenstein(f: &ZPoly, shifts: &[i64]) -> Option<(u64, i64)> {
    let limits = Limits::default();
    if f.deg().unwrap_or(0) < 1 {
        return None;
    }
    let zr = z_ring();
    shifts.iter().find_map(|&c| {
        let g = zr.shift(f, &BigInt::from(c));
        eisenstein_at(&g, &limits).map(|p| (p, c))
    })
}

fn reduce_mod(f: &ZPoly, p: u64) -> (PrimeField, Poly<u64>) {
    let k = PrimeField::new(p);
    let r = PolyRing::new(k);
    (
        k,
        r.poly(f.coeffs().iter().map(|c| k.from_int(c)).collect()),
    )
}

fn irreducible_mod(f: &ZPoly, p: u64) -> bool {
    if (f.lc().unwrap() % p).is_zero() {
        return false;
    }
    let (k, fp) = reduce_mod(f, p);
    factor_fp(&k, &fp)
        .map(|fac| fac.is_irreducible())
        .unwrap_or(false)
}

/// Smallest prime `p <= bound` with `p ∤ lc(f)` and `f mod p` irreducible.
pub fn mod_p_certificate(f: &ZPoly, prime_bound: u64) -> Option<u64> {
    if f.deg().unwrap_or(0) < 1 {
        return None;
    }
    (2..=prime_bound)
        .filter(|&p| is_prime(p))
        .find(|&p| irreducible_mod(f, p))
}

/// Rational roots of `f`, ascending.
pub fn rational_roots(f: &QPoly) -> Result<Vec<Rational>> {
    let (_, prim) = content_primitive(f)?;
    let limits = Limits::default();
    let c = prim.coeffs();
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(Rational::zero());
    }
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    let a0 = &c[low];
    let an = prim.lc().unwrap();
    let fits = |x: &BigInt| {
        x.abs()
            .to_u64()
            .is_some_and(|v| v <= limits.trial_division_cap)
    };
    if prim.deg().unwrap() > low {
        if fits(a0) && fits(an) {
            let nums = crate::numbers::divisors(a0.abs().to_u64().unwrap());
            let dens = crate::numbers::divisors(an.abs().to_u64().unwrap());
            let r = q_ring();
            let fq = crate::poly::z_to_q(&prim);
            for n in &nums {
                for d in &dens {
                    for s in [1i64, -1] {
                        let x = Rational::new(BigInt::from(*n as i64 * s), BigInt::from(*d));
                        if r.eval(&fq, &x).is_zero() && !roots.contains(&x) {
                            roots.push(x);
                        }
                    }
                }
            }
        } else {
            let fac = factor_q_with(f, &Limits::raised())?;
            for (g, _) in fac.factors {
                if g.deg() == Some(1) && !g.coeffs()[0].is_zero() {
                    roots.push(-g.coeffs()[0].clone());
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

pub fn is_irreducible_q(f: &QPoly) -> Result<IrreducibilityCertificate> {
    is_irreducible_q_with(f, &Limits::default())
}

/// The irreducibility pipeline: degree-1 rule, rational roots for degrees
/// 2–3, Eisenstein over shifts, mod-p scan, then full factorization.
pub fn is_irreducible_q_with(f: &QPoly, limits: &Limits) -> Result<IrreducibilityCertificate> {
    let n = match f.deg() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let irr = |w| IrreducibilityCertificate {
        verdict: Verdict::Irreducible,
        witness: w,
    };
    if n == 1 {
        return Ok(irr(Witness::LowDegreeRule { degree: 1 }));
    }
    if n <= 3 {
        let roots = rational_roots(f)?;
        return Ok(match roots.first() {
            Some(r) => IrreducibilityCertificate {
                verdict: Verdict::Reducible,
                witness: Witness::RationalRoot { root: r.clone() },
            },
            None => irr(Witness::LowDegreeRule { degree: n }),
        });
    }
    let (_, prim) = content_primitive(f)?;
    let b = limits.eisenstein_shift_bound;
    let shifts: Vec<i64> = std::iter::once(0)
        .chain((1..=b).flat_map(|c| [c, -c]))
        .collect();
    let zr = z_ring();
    for &c in &shifts {
        let g = zr.shift(&prim, &BigInt::from(c));
        if let Some(p) = eisenstein_at(&g, limits) {
            return Ok(irr(Witness::Eisenstein { prime: p, shift: c }));
        }
    }
    if let Some(p) = mod_p_certificate(&prim, limits.mod_p_prime_bound) {
        return Ok(irr(Witness::ModP { prime: p }));
    }
    let fac = factor_q_with(f, limits)?;
    Ok(IrreducibilityCertificate {
        verdict: if fac.is_irreducible() {
            Verdict::Irreducible
        } else {
            Verdict::Reducible
        },
        witness: Witness::FullFactorization {
            factors: fac.factors,
        },
    })
}

/// Re-checks a certificate against `f` without trusting the pipeline.
pub fn verify_certificate(f: &QPoly, cert: &IrreducibilityCertificate) -> bool {
    let r = q_ring();
    let Some(n) = f.deg() else { return false };
    let Ok((_, prim)) = content_primitive(f) else {
        return false;
    };
    match (&cert.verdict, &cert.witness) {
        (Verdict::Irreducible, Witness::LowDegreeRule { degree }) => {
            *degree == n
                && (n == 1
                    || ((2..=3).contains(&n) && rational_roots(f).is_ok_and(|v| v.is_empty())))
        }
        (Verdict::Reducible, Witness::RationalRoot { root }) => n >= 2 && r.eval(f, root).is_zero(),
        (Verdict::Irreducible, Witness::Eisenstein { prime, shift }) => {
            let g = z_ring().shift(&prim, &BigInt::from(*shift));
            let c = g.coeffs();
            let p = BigInt::from(*prime);
            is_prime(*prime)
                && !(&c[n] % &p).is_zero()
                && c[..n].iter().all(|x| (x % &p).is_zero())
                && !(&c[0] % (&p * &p)).is_zero()
        }
        (Verdict::Irreducible, Witness::ModP { prime }) => {
            is_prime(*prime) && irreducible_mod(&prim, *prime)
        }
        (v, Witness::FullFactorization { factors }) => {
            let unit = f.lc().unwrap().clone();
            let fac = super::Factorization {
                unit,
                factors: factors.clone(),
            };
            let irreducible = factors.len() == 1 && factors[0].1 == 1;
            fac.expand(&r) == *f && (*v == Verdict::Irreducible) == irreducible
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qpoly, zpoly};
    use proptest::prelude::*;

    #[test]
    fn eisenstein_examples() {
        assert_eq!(
            eisenstein(&zpoly(&[3, 0, 0, 9, -15, 2]), &[0]),
            Some((3, 0))
        );
        assert_eq!(eisenstein(&zpoly(&[3, -6, 0, 0, 0, 1]), &[0]), Some((3, 0)));
        assert_eq!(eisenstein(&cyclotomic_p(5).unwrap(), &[0, 1]), Some((5, 1)));
        assert_eq!(eisenstein(&zpoly(&[1, 0, 1]), &[0]), None);
    }

    #[test]
    fn mod_p_examples() {
        let f = zpoly(&[9, 14, 0, -8]);
        assert_eq!(mod_p_certificate(&f, 31), Some(7));
        assert!(!irreducible_mod(&f, 3));
        assert!(!irreducible_mod(&zpoly(&[0, 1, 6]), 2));
    }

    #[test]
    fn pipeline_examples() {
        let c = is_irreducible_q(&qpoly(&[-10, 0, 0, 1])).unwrap();
        assert_eq!(c.verdict, Verdict::Irreducible);
        assert_eq!(c.witness, Witness::LowDegreeRule { degree: 3 });

        let f = q_ring().pow(&qpoly(&[1, 0, 1]), 2);
        let c = is_irreducible_q(&f).unwrap();
        assert_eq!(c.verdict, Verdict::Reducible);
        assert_eq!(c.witness.kind(), "FullFactorization");

        let c = is_irreducible_q(&qpoly(&[-5, 1])).unwrap();
        assert_eq!(c.witness, Witness::LowDegreeRule { degree: 1 });

        assert_eq!(
            is_irreducible_q(&qpoly(&[3])),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(is_irreducible_q(&qpoly(&[])), Err(Error::ZeroPolynomial));

        let c = is_irreducible_q(&qpoly(&[3, 0, 0, 9, -15, 2])).unwrap();
        assert_eq!(c.witness, Witness::Eisenstein { prime: 3, shift: 0 });
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_p(2).unwrap(), zpoly(&[1, 1]));
        assert_eq!(cyclotomic_p(7).unwrap().deg(), Some(6));
        assert_eq!(cyclotomic_p(9), Err(Error::NotPrime(9)));
        for p in [2u64, 3, 5, 7, 11, 13] {
            let phi = crate::poly::z_to_q(&cyclotomic_p(p).unwrap());
            let c = is_irreducible_q(&phi).unwrap();
            assert_eq!(c.verdict, Verdict::Irreducible);
            assert!(verify_certificate(&phi, &c));
        }
    }

    #[test]
    fn report_shape() {
        let c = is_irreducible_q(&qpoly(&[3, -6, 0, 0, 0, 1])).unwrap();
        let r = c.report();
        assert_eq!(r.witness_kind, "Eisenstein");
        assert_eq!(r.witness_data["prime"], WitnessValue::Int(3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn certificates_recheck(c in prop::collection::vec(-6i64..=6, 2..8)) {
            let f = qpoly(&c);
            prop_assume!(f.deg().unwrap_or(0) >= 1);
            let cert = is_irreducible_q(&f).unwrap();
            prop_assert!(verify_certificate(&f, &cert));
            let truth = crate::factor::factor_q(&f).unwrap().is_irreducible();
            prop_assert_eq!(cert.verdict == Verdict::Irreducible, truth);
        }
    }
}
