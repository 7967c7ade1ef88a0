use super::rational::factor_q_uncapped;
use super::{canonicalize, Factorization};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals, Ring};
use crate::limits::Limits;
use crate::numbers::{big_primes, rational_reconstruct, Rational};
use crate::poly::{q_ring, Poly, PolyRing, QPoly};
use crate::tower::{Tower, TowerElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

type TElem = TowerElem<Rational>;

/// Complete factorization of `f ∈ L[t]` for a tower `L` over `Q`.
pub fn factor_over_extension(
    f: &Poly<TElem>,
    tower: &Tower<Rationals>,
) -> Result<Factorization<TElem>> {
    factor_over_extension_with(f, tower, &Limits::default())
}

pub(crate) fn factor_over_extension_with(
    f: &Poly<TElem>,
    tower: &Tower<Rationals>,
    limits: &Limits,
) -> Result<Factorization<TElem>> {
    let ring = PolyRing::new(tower.clone());
    let Some(lc) = f.lc() else {
        return Err(Error::ZeroPolynomial);
    };
    for c in f.coeffs() {
        if c.coords().len() != tower.degree() {
            return Err(Error::TowerMismatch);
        }
    }
    let unit = lc.clone();
    let n = tower.degree();
    let d = f.deg().unwrap();
    if d * n > limits.max_norm_degree {
        return Err(Error::degree_cap(
            "norm polynomial",
            d * n,
            limits.max_norm_degree,
        ));
    }
    let mut out = Vec::new();
    if n == 1 {
        let fq = q_ring().poly(f.coeffs().iter().map(|c| c.coords()[0].clone()).collect());
        for (g, m) in factor_q_uncapped(&fq)?.factors {
            out.push((tower.lift_poly(&g), m));
        }
    } else {
        for (g, m) in ring.squarefree_char0(f) {
            for h in factor_squarefree(tower, &g)? {
                out.push((h, m));
            }
        }
    }
    canonicalize(&ring, &mut out);
    let fac = Factorization { unit, factors: out };
    let total: usize = fac.factors.iter().map(|(g, m)| g.deg().unwrap() * m).sum();
    if total != d {
        return Err(Error::internal("extension factorization lost degree"));
    }
    Ok(fac)
}

/// Trager: for a shift `s` making the norm `N(t) = Res_x(m(x), g(t − s·x))`
/// squarefree, each irreducible `h | N` gives the factor `gcd(g, h(t + s·γ))`.
fn factor_squarefree(tower: &Tower<Rationals>, g: &Poly<TElem>) -> Result<Vec<Poly<TElem>>> {
    let ring = PolyRing::new(tower.clone());
    if g.deg() == Some(1) {
        return Ok(vec![g.clone()]);
    }
    let g = &ring.monic(g);
    let prim = tower.primitive()?;
    // coefficients of g as polynomials in γ
    let coeffs: Vec<QPoly> = g
        .coeffs()
        .iter()
        .map(|c| tower.to_power_basis(&prim, c))
        .collect();
    let m = &q_ring().monic(&prim.min_poly);
    // h(t + s·γ) mod `modulus`, by Horner
    let shifted_rem = |h: &QPoly, lin: &Poly<TElem>, modulus: &Poly<TElem>| {
        let mut acc = ring.zero();
        for c in h.coeffs().iter().rev() {
            acc = ring.add(
                &ring.mul(&acc, lin),
                &ring.constant(tower.from_base(c.clone())),
            );
            acc = ring.rem(&acc, modulus).unwrap();
        }
        acc
    };
    for s in std::iter::once(0).chain((1..=30).flat_map(|c| [c, -c])) {
        if !norm_squarefree_mod_p(&coeffs, m, s) {
            continue;
        }
        let lin = ring.poly(vec![tower.scale_int(&prim.element, s), tower.one()]);
        // a monic candidate of full degree divisible by g(t − s·γ) is the norm,
        // since the true norm is squarefree
        let norm = norm_of_shift(&coeffs, m, s, &mut |cand| {
            shifted_rem(cand, &lin, g).is_zero()
        })?;
        let mut rest = g.clone();
        let mut out = Vec::new();
        let nf = factor_q_uncapped(&norm)?.factors;
        let count = nf.len();
        for (i, (h, _)) in nf.into_iter().enumerate() {
            // the pieces exhaust g, so the last one is whatever remains
            if i + 1 == count && h.deg() == rest.deg().map(|d| d * tower.degree()) {
                out.push(rest);
                rest = ring.one();
                break;
            }
            let r = shifted_rem(&h, &lin, &rest);
            let piece = ring.gcd(&rest, &r);
            if piece.deg().unwrap_or(0) > 0 {
                rest = ring.div_exact_poly(&rest, &piece).unwrap();
                out.push(piece);
            }
        }
        if rest.deg().unwrap_or(0) > 0 {
            return Err(Error::internal(
                "norm factors did not exhaust the polynomial",
            ));
        }
        return Ok(out);
    }
    Err(Error::SearchExhausted)
}

/// `N mod p` for `N(t) = Res_x(m(x), G(x, t − s·x))`, by evaluation at
/// `deg_t G · deg m + 1` points and interpolation. `None` when `p` divides a
/// denominator.
fn norm_mod_p(coeffs: &[QPoly], m: &QPoly, s: i64, p: u64) -> Option<Vec<u64>> {
    let k = PrimeField::new(p);
    let fr = PolyRing::new(k);
    let reduce = |f: &QPoly| -> Option<Poly<u64>> {
        f.coeffs()
            .iter()
            .map(|c| k.reduce_rational(c))
            .collect::<Option<Vec<u64>>>()
            .map(|v| fr.poly(v))
    };
    let mm = reduce(m)?;
    let cs: Vec<Poly<u64>> = coeffs.iter().map(reduce).collect::<Option<_>>()?;
    let n = m.deg().unwrap();
    let count = (coeffs.len() - 1) * n + 1;
    let xs: Vec<u64> = (0..count as u64).collect();
    let mut ys = Vec::with_capacity(count);
    for &tau in &xs {
        let lin = fr.poly(vec![tau, k.elem(-s)]);
        let mut acc = fr.zero();
        for c in cs.iter().rev() {
            acc = fr.add(&fr.mul(&acc, &lin), c);
            acc = fr.divmod_monic(&acc, &mm).1;
        }
        ys.push(if acc.is_zero() {
            0
        } else {
            resultant_monic(&fr, &mm, &acc)
        });
    }
    Some(interpolate_mod(&k, &xs, &ys))
}

/// `Res(a, b)` over `F_p` for monic `a`, by the Euclidean remainder sequence.
fn resultant_monic(fr: &PolyRing<PrimeField>, a: &Poly<u64>, b: &Poly<u64>) -> u64 {
    let k = *fr.base();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = 1;
    loop {
        let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
        let lb = *b.lc().unwrap();
        if db == 0 {
            return k.mul(&acc, &k.pow(&lb, da as u64));
        }
        let r = fr.rem(&a, &b).unwrap();
        let Some(dr) = r.deg() else {
            return 0;
        };
        if da * db % 2 == 1 {
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &k.pow(&lb, (da - dr) as u64));
        a = b;
        b = r;
    }
}

fn interpolate_mod(k: &PrimeField, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = k.inv(&k.sub(&xs[i], &xs[i - j])).unwrap();
            dd[i] = k.mul(&k.sub(&dd[i], &dd[i - 1]), &den);
        }
    }
    let mut acc = vec![0u64; n];
    acc[0] = dd[n - 1];
    for i in (0..n - 1).rev() {
        // acc ← acc·(t − xs[i]) + dd[i]
        for j in (1..n).rev() {
            acc[j] = k.sub(&acc[j - 1], &k.mul(&acc[j], &xs[i]));
        }
        acc[0] = k.sub(&dd[i], &k.mul(&acc[0], &xs[i]));
    }
    acc
}

/// Cheap filter: the norm keeps full degree and is squarefree modulo some
/// prime. Passing proves `N` squarefree; failing is inconclusive.
fn norm_squarefree_mod_p(coeffs: &[QPoly], m: &QPoly, s: i64) -> bool {
    let full = (coeffs.len() - 1) * m.deg().unwrap();
    big_primes().take(2).any(|p| {
        let Some(v) = norm_mod_p(coeffs, m, s, p) else {
            return false;
        };
        let fr = PolyRing::new(PrimeField::new(p));
        let g = fr.poly(v);
        g.deg() == Some(full) && fr.gcd(&g, &fr.derivative(&g)).deg() == Some(0)
    })
}

fn lcm_denoms<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Upper bound for `log2 |r|`.
fn log2_upper(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    r.numer().bits() as f64 - (r.denom().bits() as f64 - 1.0)
}

/// Exact norm `Res_x(m(x), G(x, t − s·x))` for monic `m` with the `coeffs`
/// reduced mod `m`, from residues modulo word-sized primes.
///
/// Every few primes the residues are rationally reconstructed; a candidate
/// that is stable across two checkpoints and passes `accept` is returned.
/// Otherwise CRT continues up to an a priori bound: with `a`, `b` clearing
/// the denominators of `m` and `G`, `a^D·b^n·N` is integral for
/// `D = n − 1 + deg_t G`, with coefficients bounded through a root bound of `m`.
fn norm_of_shift(
    coeffs: &[QPoly],
    m: &QPoly,
    s: i64,
    accept: &mut dyn FnMut(&QPoly) -> bool,
) -> Result<QPoly> {
    let n = m.deg().unwrap();
    let dt = coeffs.len() - 1;
    let a = lcm_denoms(m.coeffs().iter());
    let b = lcm_denoms(coeffs.iter().flat_map(|c| c.coeffs().iter()));
    let d = n - 1 + if s == 0 { 0 } else { dt };
    let scale = num_traits::pow(a.clone(), d) * num_traits::pow(b.clone(), n);
    // log2 of the Fujiwara root bound 2·max |m_{n−k}|^{1/k}, at least 1
    let lr = (0..n)
        .map(|i| log2_upper(&m.coeffs()[i]) / (n - i) as f64)
        .fold(0.0f64, f64::max)
        + 1.0;
    let ls = (s.unsigned_abs() as f64).log2().max(0.0) + lr + 1.0;
    let bq = Rational::from_integer(b);
    let mut lsum = f64::NEG_INFINITY;
    let mut terms = 0usize;
    for (j, c) in coeffs.iter().enumerate() {
        for (k, x) in c.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let t = log2_upper(&(x * &bq)) + k as f64 * lr + j as f64 * ls;
            lsum = lsum.max(t);
            terms += 1;
        }
    }
    let lsum = lsum + (terms.max(1) as f64).log2();
    let bits = (d as f64 * a.bits() as f64 + n as f64 * lsum).max(0.0) + 2.0;
    let count = dt * n + 1;
    let qr = q_ring();
    let mut modulus = BigInt::one();
    let mut vals = vec![BigInt::zero(); count];
    let mut used = 0usize;
    let mut checkpoint = 2usize;
    let mut last: Option<QPoly> = None;
    for p in big_primes() {
        if (modulus.bits() as f64) > bits {
            break;
        }
        let k = PrimeField::new(p);
        if k.reduce_int(&scale) == 0 {
            continue;
        }
        let Some(res) = norm_mod_p(coeffs, m, s, p) else {
            continue;
        };
        let minv = k.inv(&k.reduce_int(&modulus)).unwrap();
        for (v, r) in vals.iter_mut().zip(res) {
            let delta = k.mul(&k.sub(&r, &k.reduce_int(v)), &minv);
            *v += &modulus * delta;
        }
        modulus *= p;
        used += 1;
        if used == checkpoint {
            checkpoint *= 2;
            let cand: Option<Vec<Rational>> = vals
                .iter()
                .map(|v| rational_reconstruct(v, &modulus))
                .collect();
            if let Some(c) = cand.map(|c| qr.poly(c)) {
                let ok = c.deg() == Some(count - 1) && c.lc().is_some_and(|x| x.is_one());
                if ok && last.as_ref() == Some(&c) && accept(&c) {
                    return Ok(c);
                }
                last = Some(c);
            }
        }
    }
    let half = &modulus >> 1;
    let scale_q = Rational::from_integer(scale.clone());
    Ok(qr.poly(
        vals.into_iter()
            .map(|v| {
                let v = (v * &scale).mod_floor(&modulus);
                let v = if v > half { v - &modulus } else { v };
                Rational::from_integer(v) / &scale_q
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use crate::poly::qpoly;

    fn root_tower(m: &[i64]) -> (Tower<Rationals>, TElem) {
        Tower::new(Rationals)
            .adjoin_base_root(&qpoly(m), "a")
            .unwrap()
    }

    #[test]
    fn cube_root_of_two() {
        let (t, xi) = root_tower(&[-2, 0, 0, 1]);
        let f = t.lift_poly(&qpoly(&[-2, 0, 0, 1]));
        let fac = factor_over_extension(&f, &t).unwrap();
        assert_eq!(fac.degrees(), vec![1, 2]);
        let r = PolyRing::new(t.clone());
        assert!(fac.factors.iter().any(|(g, _)| *g == r.linear(&xi)));
        assert_eq!(fac.expand(&r), f);
    }

    #[test]
    fn sqrt_two_splits_its_polynomial() {
        let (t, a) = root_tower(&[-2, 0, 1]);
        let f = t.lift_poly(&qpoly(&[-2, 0, 1]));
        let fac = factor_over_extension(&f, &t).unwrap();
        let r = PolyRing::new(t.clone());
        let expect = vec![(r.linear(&t.neg(&a)), 1), (r.linear(&a), 1)];
        let mut got = fac.factors.clone();
        let mut want = expect;
        got.sort_by(|x, y| r.cmp_polys(&x.0, &y.0));
        want.sort_by(|x, y| r.cmp_polys(&x.0, &y.0));
        assert_eq!(got, want);
    }

    #[test]
    fn repeated_factors_and_caps() {
        let (t, _) = root_tower(&[-2, 0, 1]);
        let r = PolyRing::new(t.clone());
        let f = t.lift_poly(&q_ring().pow(&qpoly(&[-2, 0, 1]), 2));
        let fac = factor_over_extension(&f, &t).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1, 1]);
        assert_eq!(fac.expand(&r), f);
        let big = t.lift_poly(&qpoly(&[1; 62]));
        assert!(matches!(
            factor_over_extension(&big, &t),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn norm_matches_bivariate_resultant() {
        let qr = q_ring();
        let m = qpoly(&[-2, 0, 0, 1]);
        let coeffs = vec![qpoly(&[1, 2]), qpoly(&[0, -1, 3]), qpoly(&[5]), qpoly(&[1])];
        for s in [0, 1, -2] {
            let outer = PolyRing::new(qr.clone());
            let lift =
                |p: &QPoly| outer.poly(p.coeffs().iter().map(|c| qr.constant(c.clone())).collect());
            let lin = outer.poly(vec![qr.var(), qr.constant(rat(-s))]);
            let mut acc = outer.zero();
            for c in coeffs.iter().rev() {
                acc = outer.add(&outer.mul(&acc, &lin), &lift(c));
            }
            let direct = outer.resultant(&lift(&m), &acc).unwrap();
            // the a priori bound alone, and early reconstruction
            assert_eq!(
                norm_of_shift(&coeffs, &m, s, &mut |_| false).unwrap(),
                direct
            );
            let mut seen = 0;
            let early = norm_of_shift(&coeffs, &m, s, &mut |c| {
                seen += 1;
                c == &direct
            });
            assert_eq!(early.unwrap(), direct);
            assert!(seen <= 1);
        }
    }

    #[test]
    fn two_level_tower() {
        let (t, _) = root_tower(&[-2, 0, 1]);
        let (t, _) = t.adjoin_base_root(&qpoly(&[-3, 0, 1]), "b").unwrap();
        // t^4 - 10t^2 + 1 splits completely over Q(√2, √3)
        let f = t.lift_poly(&qpoly(&[1, 0, -10, 0, 1]));
        let fac = factor_over_extension(&f, &t).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1, 1]);
        // t^2 - 5 stays irreducible
        let g = t.lift_poly(&qpoly(&[-5, 0, 1]));
        assert!(factor_over_extension(&g, &t).unwrap().is_irreducible());
    }
}
