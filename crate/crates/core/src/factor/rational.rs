use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::factor_fp;
use super::hensel::multifactor_lift;
use super::{canonicalize, Factorization};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Ring};
use crate::limits::Limits;
use crate::numbers::{is_prime, Rational};
use crate::poly::{content_primitive, q_ring, z_ring, z_to_q, Poly, QPoly, ZPoly};

/// How many good primes are tried before choosing one for lifting.
const PRIMES_TRIED: usize = 7;

/// Complete factorization over `Q` with the default degree cap.
pub fn factor_q(f: &QPoly) -> Result<Factorization<Rational>> {
    factor_q_with(f, &Limits::default())
}

pub fn factor_q_with(f: &QPoly, limits: &Limits) -> Result<Factorization<Rational>> {
    if let Some(d) = f.deg() {
        if d > limits.max_factor_degree {
            return Err(Error::degree_cap(
                "polynomial to factor",
                d,
                limits.max_factor_degree,
            ));
        }
    }
    factor_q_uncapped(f)
}

/// Zassenhaus factorization without a degree cap; callers check their own.
pub(crate) fn factor_q_uncapped(f: &QPoly) -> Result<Factorization<Rational>> {
    let ring = q_ring();
    let Some(lc) = f.lc() else {
        return Err(Error::ZeroPolynomial);
    };
    let unit = lc.clone();
    let mut out = Vec::new();
    let parts = if f.deg() > Some(0) && squarefree_by_reduction(f) {
        vec![(ring.monic(f), 1)]
    } else {
        ring.squarefree_char0(f)
    };
    for (part, mult) in parts {
        let (_, prim) = content_primitive(&part)?;
        for g in factor_squarefree_z(&prim) {
            out.push((ring.monic(&z_to_q(&g)), mult));
        }
    }
    canonicalize(&ring, &mut out);
    Ok(Factorization { unit, factors: out })
}

/// Sufficient test: `f mod p` keeps its degree and is squarefree for one of a
/// few large primes. A `false` answer proves nothing.
pub(crate) fn squarefree_by_reduction(f: &QPoly) -> bool {
    [2_147_483_647u64, 1_000_000_007, 998_244_353]
        .iter()
        .any(|&p| {
            let k = PrimeField::new(p);
            let Some(coeffs) = f
                .coeffs()
                .iter()
                .map(|c| k.reduce_rational(c))
                .collect::<Option<Vec<u64>>>()
            else {
                return false;
            };
            let fr = crate::poly::PolyRing::new(k);
            let g = fr.poly(coeffs);
            g.deg() == f.deg() && fr.gcd(&g, &fr.derivative(&g)).deg() == Some(0)
        })
}

/// Factors a primitive squarefree integer polynomial with positive leading
/// coefficient into primitive irreducibles.
pub(crate) fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let zr = z_ring();
    let n = f.deg().unwrap_or(0);
    if n <= 1 {
        return vec![f.clone()];
    }
    // powers of t first
    let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        let rest = Poly::from_trimmed(f.coeffs()[low..].to_vec(), &BigInt::zero());
        let mut out = vec![zr.var()];
        out.extend(factor_squarefree_z(&rest));
        return out;
    }
    let Some(choice) = choose_prime(f) else {
        return vec![f.clone()];
    };
    if choice.factors.len() == 1 {
        return vec![f.clone()];
    }
    let lifted = lift(f, &choice);
    recombine(
        f,
        lifted,
        choice.modulus,
        &choice.allowed,
        &mignotte_bound(f),
    )
}

struct PrimeChoice {
    p: u64,
    factors: Vec<Poly<u64>>,
    /// Degrees a true factor can have, from every prime tried.
    allowed: BTreeSet<usize>,
    modulus: BigInt,
    steps: u32,
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Tries several primes that keep the reduction squarefree and of full
/// degree; returns the one with fewest modular factors. `allowed` ends up
/// empty (apart from 0 and n) when degree patterns already prove
/// irreducibility.
fn choose_prime(f: &ZPoly) -> Option<PrimeChoice> {
    let n = f.deg().unwrap();
    let lc = f.lc().unwrap();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut best: Option<(u64, Vec<Poly<u64>>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < PRIMES_TRIED && p < 10_000 {
        p += 1;
        if !is_prime(p) || (lc % p).is_zero() {
            continue;
        }
        let k = PrimeField::new(p);
        let r = crate::poly::PolyRing::new(k);
        let fp = r.poly(f.coeffs().iter().map(|c| k.from_int(c)).collect());
        if r.has_repeated_root(&fp).unwrap_or(true) {
            continue;
        }
        tried += 1;
        let fac = factor_fp(&k, &fp).ok()?;
        let factors: Vec<Poly<u64>> = fac.factors.into_iter().map(|(g, _)| g).collect();
        let degs: Vec<usize> = factors.iter().map(|g| g.deg().unwrap()).collect();
        let sums = subset_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        let better = best.as_ref().is_none_or(|(_, b)| factors.len() < b.len());
        if better {
            best = Some((p, factors));
        }
        let a = allowed.as_ref().unwrap();
        if a.iter().all(|&d| d == 0 || d == n) {
            return Some(PrimeChoice {
                p,
                factors: vec![fp],
                allowed: a.clone(),
                modulus: BigInt::one(),
                steps: 0,
            });
        }
    }
    let (p, factors) = best?;
    let bound = mignotte_bound(f);
    let mut steps = 0u32;
    let mut modulus = BigInt::from(p);
    // 64 spare bits make the floating-point subset filter sharp
    while modulus <= &bound << 65u32 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    Some(PrimeChoice {
        p,
        factors,
        allowed: allowed.unwrap(),
        modulus,
        steps,
    })
}

/// `2^n · (⌊‖f‖₂⌋ + 1) · |lc(f)|` bounds every coefficient of
/// `lc(f) · g` for a factor `g` of `f`.
fn mignotte_bound(f: &ZPoly) -> BigInt {
    let n = f.deg().unwrap();
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    (BigInt::one() << n) * norm * f.lc().unwrap().abs()
}

fn lift(f: &ZPoly, choice: &PrimeChoice) -> Vec<ZPoly> {
    let m = &choice.modulus;
    let lc = f.lc().unwrap();
    let lc_inv = lc.extended_gcd(m).x.mod_floor(m);
    let target = Poly::from_trimmed(
        f.coeffs()
            .iter()
            .map(|c| (c * &lc_inv).mod_floor(m))
            .collect(),
        &BigInt::zero(),
    );
    multifactor_lift(&target, &choice.factors, choice.p, choice.steps)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive_positive(f: &ZPoly) -> ZPoly {
    crate::poly::z_primitive_part(f)
}

/// Subset recombination of lifted monic factors.
fn recombine(
    f: &ZPoly,
    mut lifted: Vec<ZPoly>,
    m: BigInt,
    allowed: &BTreeSet<usize>,
    bound: &BigInt,
) -> Vec<ZPoly> {
    let zr = z_ring();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let filter = PowerSumFilter::new(&rest, &lifted, &m);
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].deg().unwrap()).sum();
            if allowed.contains(&deg) && filter.admits(&idx) {
                if let Some(g) = try_subset(&rest, &lifted, &idx, &m, bound) {
                    if let Some(q) = zr.div_exact(&rest, &g) {
                        out.push(g);
                        rest = q;
                        for &i in idx.iter().rev() {
                            lifted.remove(i);
                        }
                        found = true;
                        break;
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.deg().unwrap_or(0) > 0 {
        out.push(primitive_positive(&rest));
    }
    out
}

/// Power sums `p_k` of the roots are additive over a subset of lifted
/// factors, and for a true factor `lc^k·p_k` is an integer of size at most
/// `deg·(|lc|·R)^k` with `R` a root bound. Each factor stores
/// `(lc^k·p_k mod m)/m`; a subset whose sums are not all close to integers
/// is rejected before any big-integer work.
struct PowerSumFilter {
    fracs: Vec<Vec<f64>>,
    tols: Vec<f64>,
}

impl PowerSumFilter {
    const MAX_K: usize = 6;

    fn new(rest: &ZPoly, lifted: &[ZPoly], m: &BigInt) -> Self {
        let lc = rest.lc().unwrap();
        let n = rest.deg().unwrap();
        let lr = log2_root_bound(rest) + (lc.bits() as f64);
        let mbits = m.bits() as f64 - 1.0;
        let r = lifted.len() as f64;
        // truncation of each fraction plus rounding in the running sums
        let slack = r * r * f64::EPSILON + r * 2f64.powi(-60);
        let tols: Vec<f64> = (1..=Self::MAX_K)
            .map(|k| k as f64 * lr + (n as f64).log2() + 1.0 - mbits)
            .take_while(|&e| e < -8.0)
            .map(|e| e.exp2() + slack)
            .collect();
        let kmax = tols.len();
        let fracs = lifted
            .iter()
            .map(|g| {
                let ps = power_sums(g, kmax, m);
                let mut lck = BigInt::one();
                ps.iter()
                    .map(|p| {
                        lck = (&lck * lc).mod_floor(m);
                        let r = (&lck * p).mod_floor(m);
                        ((r << 64u32) / m).to_f64().unwrap() / 2f64.powi(64)
                    })
                    .collect()
            })
            .collect();
        PowerSumFilter { fracs, tols }
    }

    fn admits(&self, idx: &[usize]) -> bool {
        self.tols.iter().enumerate().all(|(k, tol)| {
            let x = idx.iter().map(|&i| self.fracs[i][k]).sum::<f64>().fract();
            x.min(1.0 - x) <= *tol
        })
    }
}

/// `p_1, …, p_K` of a monic polynomial modulo `m`, by Newton's identities.
fn power_sums(g: &ZPoly, kmax: usize, m: &BigInt) -> Vec<BigInt> {
    let c = g.coeffs();
    let d = c.len() - 1;
    // e(j) is the coefficient of t^(d-j)
    let e = |j: usize| -> BigInt {
        if j <= d {
            c[d - j].clone()
        } else {
            BigInt::zero()
        }
    };
    let mut p: Vec<BigInt> = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut acc = if k <= d { -e(k) * k } else { BigInt::zero() };
        for j in 1..k {
            acc -= e(j) * &p[k - j - 1];
        }
        p.push(acc.mod_floor(m));
    }
    p
}

/// Upper bound for `log2` of the Fujiwara root bound `2·max |a_(n-k)/a_n|^(1/k)`.
fn log2_root_bound(f: &ZPoly) -> f64 {
    let c = f.coeffs();
    let n = c.len() - 1;
    let l = c[n].bits() as f64 - 1.0;
    (1..=n)
        .filter(|&k| !c[n - k].is_zero())
        .map(|k| (c[n - k].bits() as f64 - l) / k as f64)
        .fold(0.0f64, f64::max)
        + 1.0
}

/// Candidate factor from a subset, after two cheap tests: the constant term
/// must divide that of `lc·rest`, and the next-to-leading coefficient (a sum
/// over the subset) must respect the coefficient bound.
fn try_subset(
    rest: &ZPoly,
    lifted: &[ZPoly],
    idx: &[usize],
    m: &BigInt,
    bound: &BigInt,
) -> Option<ZPoly> {
    let lc = rest.lc().unwrap();
    let sub: BigInt = idx
        .iter()
        .map(|&i| {
            let c = lifted[i].coeffs();
            &c[c.len() - 2]
        })
        .sum();
    if symmetric(&(sub * lc), m).abs() > *bound {
        return None;
    }
    let c0 = idx.iter().fold(lc.clone(), |acc, &i| {
        (acc * &lifted[i].coeffs()[0]).mod_floor(m)
    });
    let c0 = symmetric(&c0, m);
    let r0 = &rest.coeffs()[0] * lc;
    if c0.is_zero() || !(r0 % &c0).is_zero() {
        return None;
    }
    let zr = z_ring();
    let mut g = zr.constant(lc.clone());
    for &i in idx {
        g = zr.mul(&g, &lifted[i]);
        g = Poly::from_trimmed(
            g.coeffs().iter().map(|c| c.mod_floor(m)).collect(),
            &BigInt::zero(),
        );
    }
    let g = Poly::from_trimmed(
        g.coeffs().iter().map(|c| symmetric(c, m)).collect(),
        &BigInt::zero(),
    );
    Some(primitive_positive(&g))
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
/// Exact check that a list of monic factors multiplies back to `f / lc(f)`.
pub(crate) fn reconstructs(f: &QPoly, fac: &Factorization<Rational>) -> bool {
    fac.expand(&q_ring()) == *f && fac.unit == *f.lc().unwrap_or(&crate::numbers::rat(0))
}
