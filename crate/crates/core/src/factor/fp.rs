use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{canonicalize, Factorization};
use crate::error::{Error, Result};
use crate::field::{FiniteField, PrimeField};
use crate::limits::Limits;
use crate::poly::{Poly, PolyRing};

const SEED: u64 = 0x6761_6c6f_6973;

/// Complete factorization over `F_p`.
pub fn factor_fp(k: &PrimeField, f: &Poly<u64>) -> Result<Factorization<u64>> {
    factor_ff(k, f)
}

/// Complete factorization over any finite field (prime field or a tower over one).
pub fn factor_ff<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Result<Factorization<K::Elem>> {
    let ring = PolyRing::new(k.clone());
    let Some(lc) = f.lc() else {
        return Err(Error::ZeroPolynomial);
    };
    let unit = lc.clone();
    let f = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (g, mult) in squarefree_ff(&ring, &f) {
        for (h, d) in distinct_degree(&ring, &g) {
            for irr in equal_degree(&ring, &h, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    canonicalize(&ring, &mut out);
    Ok(Factorization { unit, factors: out })
}

/// Squarefree decomposition in characteristic `p` of a monic polynomial.
fn squarefree_ff<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &Poly<K::Elem>,
) -> Vec<(Poly<K::Elem>, usize)> {
    let k = ring.base();
    let p = k.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return out;
    }
    let df = ring.derivative(f);
    if df.is_zero() {
        for (h, m) in squarefree_ff(ring, &pth_root_poly(ring, f)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact_poly(f, &c).unwrap();
    let mut i = 1;
    while w.deg().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact_poly(&w, &y).unwrap();
        if z.deg().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = ring.div_exact_poly(&c, &w).unwrap();
    }
    if c.deg().unwrap_or(0) > 0 {
        for (h, m) in squarefree_ff(ring, &pth_root_poly(ring, &c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// `g` with `g^p = f` for `f` a polynomial in `t^p`.
fn pth_root_poly<K: FiniteField>(ring: &PolyRing<K>, f: &Poly<K::Elem>) -> Poly<K::Elem> {
    let k = ring.base();
    let p = k.characteristic() as usize;
    ring.poly(
        f.coeffs()
            .iter()
            .step_by(p)
            .map(|c| k.pth_root(c))
            .collect(),
    )
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree `d`.
fn distinct_degree<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &Poly<K::Elem>,
) -> Vec<(Poly<K::Elem>, usize)> {
    let q = BigUint::from(ring.base().size());
    let x = ring.var();
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = ring.rem(&x, &g).unwrap_or_else(|_| x.clone());
    let mut d = 0;
    while g.deg().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = ring.powmod(&h, &q, &g);
        let gd = ring.gcd(&g, &ring.sub(&h, &x));
        if gd.deg().unwrap_or(0) > 0 {
            g = ring.div_exact_poly(&g, &gd).unwrap();
            h = ring.rem(&h, &g).unwrap();
            out.push((gd, d));
        }
    }
    if let Some(dg) = g.deg() {
        if dg > 0 {
            out.push((g, dg));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting.
fn equal_degree<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &Poly<K::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<K::Elem>> {
    let n = f.deg().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let k = ring.base();
    let q = k.size();
    let p = k.characteristic();
    loop {
        let a = ring.poly((0..n).map(|_| k.random_element(rng)).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map: a + a^2 + … + a^(2^(kd - 1)) with q = 2^k
            let bits = (q.trailing_zeros() as usize) * d;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..bits {
                cur = ring.mulmod(&cur, &cur, f);
                acc = ring.add(&acc, &cur);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            let r = ring.powmod(&a, &e, f);
            ring.sub(&r, &ring.constant(k.one()))
        };
        let g = ring.gcd(f, &b);
        let dg = g.deg().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = ring.div_exact_poly(f, &g).unwrap();
            let mut out = equal_degree(ring, &g, d, rng);
            out.extend(equal_degree(ring, &h, d, rng));
            return out;
        }
    }
}

/// Baseline factorization by trial division with every monic polynomial of
/// degree at most `deg/2`, in canonical order.
pub fn factor_fp_trial<K: FiniteField>(
    k: &K,
    f: &Poly<K::Elem>,
    limits: &Limits,
) -> Result<Factorization<K::Elem>> {
    let ring = PolyRing::new(k.clone());
    let Some(lc) = f.lc() else {
        return Err(Error::ZeroPolynomial);
    };
    let unit = lc.clone();
    let mut g = ring.monic(f);
    let n = g.deg().unwrap();
    let q = k.size();
    let needed: u128 = (1..=n / 2)
        .map(|d| q.checked_pow(d as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b));
    if needed > limits.trial_factor_budget {
        return Err(Error::Budget {
            what: "trial division over a finite field".into(),
            needed,
            budget: limits.trial_factor_budget,
        });
    }
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= g.deg().unwrap_or(0) {
        let count = q.pow(d as u32);
        for idx in 0..count {
            let cand = monic_by_index(k, d, idx);
            let mut m = 0;
            while let Some(h) = ring.div_exact_poly(&g, &cand) {
                g = h;
                m += 1;
            }
            if m > 0 {
                out.push((cand, m));
            }
        }
        d += 1;
    }
    if g.deg().unwrap_or(0) > 0 {
        out.push((g, 1));
    }
    canonicalize(&ring, &mut out);
    Ok(Factorization { unit, factors: out })
}

/// The monic polynomial of degree `d` whose lower coefficients are the
/// base-`q` digits of `idx`, most significant digit at `t^(d-1)`; increasing
/// `idx` walks the canonical order.
pub(crate) fn monic_by_index<K: FiniteField>(k: &K, d: usize, mut idx: u128) -> Poly<K::Elem> {
    let q = k.size();
    let mut c = vec![k.zero(); d + 1];
    c[d] = k.one();
    for slot in c.iter_mut().take(d) {
        *slot = k.element(idx % q);
        idx /= q;
    }
    Poly::from_trimmed(c, &k.zero())
}

/// Every root in `F_p`, ascending, by evaluation at all residues.
pub fn roots_fp(k: &PrimeField, f: &Poly<u64>) -> Result<Vec<u64>> {
    roots_ff(k, f)
}

/// Every root in a finite field by exhaustive evaluation, in index order.
pub fn roots_ff<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Result<Vec<K::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = PolyRing::new(k.clone());
    Ok((0..k.size())
        .map(|i| k.element(i))
        .filter(|a| k.is_zero(&ring.eval(f, a)))
        .collect())
}
