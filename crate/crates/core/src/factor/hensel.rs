//! Quadratic multifactor Hensel lifting over `Z/p^k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{PrimeField, Ring};
use crate::poly::{Poly, PolyRing};

/// `Z/mZ` with residues in `[0, m)`. Only used with prime-power `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct IntegersMod {
    pub m: BigInt,
}

impl Ring for IntegersMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one().mod_floor(&self.m)
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.m)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.m {
            s - &self.m
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.m - a
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s < BigInt::zero() {
            s + &self.m
        } else {
            s
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.m)
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        let e = b.extended_gcd(&self.m);
        e.gcd.is_one().then(|| self.mul(a, &e.x.mod_floor(&self.m)))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn cmp_elems(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.cmp(b)
    }
}

fn to_mod(ring: &PolyRing<IntegersMod>, f: &Poly<BigInt>) -> Poly<BigInt> {
    let m = &ring.base().m;
    ring.poly(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn from_fp(ring: &PolyRing<IntegersMod>, f: &Poly<u64>) -> Poly<BigInt> {
    ring.poly(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the same
/// relations modulo `m²`. `f`, `g`, `h` monic.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &Poly<BigInt>,
    g: &Poly<BigInt>,
    h: &Poly<BigInt>,
    s: &Poly<BigInt>,
    t: &Poly<BigInt>,
    m2: &BigInt,
) -> (Poly<BigInt>, Poly<BigInt>, Poly<BigInt>, Poly<BigInt>) {
    let r = PolyRing::new(IntegersMod { m: m2.clone() });
    let f = to_mod(&r, f);
    let e = r.sub(&f, &r.mul(g, h));
    let (q, rem) = r.divmod_monic(&r.mul(s, &e), h);
    let g2 = r.add(g, &r.add(&r.mul(t, &e), &r.mul(&q, g)));
    let h2 = r.add(h, &rem);
    let one = r.constant(BigInt::one());
    let b = r.sub(&r.add(&r.mul(s, &g2), &r.mul(t, &h2)), &one);
    let (c, d) = r.divmod_monic(&r.mul(s, &b), &h2);
    let s2 = r.sub(s, &d);
    let t2 = r.sub(t, &r.add(&r.mul(t, &b), &r.mul(&c, &g2)));
    (g2, h2, s2, t2)
}

/// Lifts the monic factorization `f ≡ Π factors (mod p)` to modulus
/// `p^(2^steps)`. `f` must be monic modulo that modulus and squarefree mod p.
pub(crate) fn multifactor_lift(
    f: &Poly<BigInt>,
    factors: &[Poly<u64>],
    p: u64,
    steps: u32,
) -> Vec<Poly<BigInt>> {
    let fp = PrimeField::new(p);
    let rp = PolyRing::new(fp);
    let modulus = BigInt::from(p).pow(1u32 << steps);
    let top = PolyRing::new(IntegersMod { m: modulus.clone() });
    if factors.len() == 1 {
        return vec![to_mod(&top, f)];
    }
    let half = factors.len() / 2;
    let g0 = rp.product(&factors[..half]);
    let h0 = rp.product(&factors[half..]);
    let (d, s0, t0) = rp.gcd_ext(&g0, &h0);
    debug_assert_eq!(d.deg(), Some(0));
    let r1 = PolyRing::new(IntegersMod { m: BigInt::from(p) });
    let (mut g, mut h) = (from_fp(&r1, &g0), from_fp(&r1, &h0));
    let (mut s, mut t) = (from_fp(&r1, &s0), from_fp(&r1, &t0));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        m = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
    }
    let mut out = multifactor_lift(&g, &factors[..half], p, steps);
    out.extend(multifactor_lift(&h, &factors[half..], p, steps));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::zpoly;

    #[test]
    fn lifts_a_split_quadratic() {
        // t^2 - 2 ≡ (t - 3)(t - 4) mod 7
        let f = zpoly(&[-2, 0, 1]);
        let k = PrimeField::new(7);
        let r = PolyRing::new(k);
        let facs = vec![r.from_i64s(&[-3, 1]), r.from_i64s(&[-4, 1])];
        let lifted = multifactor_lift(&f, &facs, 7, 3);
        let m = BigInt::from(7).pow(8u32);
        let rm = PolyRing::new(IntegersMod { m: m.clone() });
        let prod = rm.product(&lifted);
        assert_eq!(prod, to_mod(&rm, &f));
        // each lift reduces to its starting factor mod 7
        assert_eq!(
            lifted[0].coeffs()[0].mod_floor(&BigInt::from(7)),
            BigInt::from(4)
        );
    }

    #[test]
    fn lifts_several_factors() {
        // t^4 - 1 mod 5 splits into four linear factors
        let f = zpoly(&[-1, 0, 0, 0, 1]);
        let k = PrimeField::new(5);
        let r = PolyRing::new(k);
        let facs: Vec<_> = (1..5).map(|a| r.from_i64s(&[-a, 1])).collect();
        let lifted = multifactor_lift(&f, &facs, 5, 4);
        let rm = PolyRing::new(IntegersMod {
            m: BigInt::from(5).pow(16u32),
        });
        assert_eq!(rm.product(&lifted), to_mod(&rm, &f));
    }
}
