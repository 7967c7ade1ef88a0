//! Exact scalars and the bits of elementary number theory the rest of the
//! stack leans on: rationals, prime-field residues, trial-division
//! primality and factorization, Fermat primes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A residue modulo a prime `p`, kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    residue: u64,
    modulus: u64,
}

impl FpScalar {
    pub fn new(value: i64, p: u64) -> Self {
        let r = value.rem_euclid(p as i64) as u64;
        FpScalar {
            residue: r,
            modulus: p,
        }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar {
            residue: add_mod(self.residue, o.residue, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar {
            residue: sub_mod(self.residue, o.residue, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar {
            residue: mul_mod(self.residue, o.residue, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> Self {
        FpScalar {
            residue: sub_mod(0, self.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, over) = a.overflowing_add(b);
    if over || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        (a as u128 + p as u128 - b as u128) as u64
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// Multiplicative inverse in `F_p`, from a Bézout identity `a·r + p·s = 1`.
pub fn fp_inv(a: FpScalar) -> Result<FpScalar> {
    inv_mod(a.residue, a.modulus)
        .map(|r| FpScalar {
            residue: r,
            modulus: a.modulus,
        })
        .ok_or(Error::ZeroInverse)
}

/// Word-sized primes below `2^62`, descending; residues fit comfortably in
/// `u64` arithmetic.
pub(crate) fn big_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&q| is_prime(q))
}

/// The unique `a/b ≡ u (mod m)` with `|a|, b ≤ √(m/2)` and `gcd(a, b) = 1`,
/// if there is one.
pub(crate) fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below `2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, smallest prime first, with
/// repetition. `factor_integer(1)` is empty.
pub fn factor_integer(n: u64) -> Result<Vec<u64>> {
    factor_integer_with(n, &Limits::default())
}

pub fn factor_integer_with(mut n: u64, limits: &Limits) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::internal("factor_integer(0)"));
    }
    if n > limits.trial_division_cap {
        return Err(Error::Budget {
            what: "trial division".into(),
            needed: n as u128,
            budget: limits.trial_division_cap as u128,
        });
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    let mut ps = factor_integer(n)?;
    ps.dedup();
    Ok(ps)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// A Fermat prime is a prime of the form `2^u + 1` with `u >= 1`.
pub fn is_fermat_prime(q: u64) -> bool {
    q >= 3 && is_prime(q) && (q - 1).is_power_of_two()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `p^n` if it fits in a `u128`.
pub fn checked_pow(p: u64, n: u32) -> Option<u128> {
    (p as u128).checked_pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
        // strong pseudoprimes to several small bases
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
        ] {
            assert!(!is_prime(n));
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 62) - 1));
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        for (a, b) in [(3i64, 7i64), (-22, 5), (0, 1), (12345, 678)] {
            let binv = BigInt::from(b).modinv(&m).unwrap();
            let u = (BigInt::from(a) * binv).mod_floor(&m);
            assert_eq!(rational_reconstruct(&u, &m), Some(ratio(a, b)));
        }
        // out of range: nothing within the bound maps here
        assert_eq!(
            rational_reconstruct(&BigInt::from(4), &BigInt::from(11)),
            None
        );
    }

    proptest! {
        #[test]
        fn miller_rabin_on_random_range(n in 1_000_000u64..1_000_000_000) {
            prop_assert_eq!(is_prime(n), trial_division(n));
        }
    }

    #[test]
    fn fp_inverse_examples() {
        assert_eq!(fp_inv(FpScalar::new(3, 7)).unwrap().residue(), 5);
        assert_eq!(fp_inv(FpScalar::new(1, 101)).unwrap().residue(), 1);
        assert_eq!(fp_inv(FpScalar::new(2, 3)).unwrap().residue(), 2);
        assert_eq!(fp_inv(FpScalar::new(0, 7)), Err(Error::ZeroInverse));
    }

    #[test]
    fn fp_inverse_matches_exhaustive_search() {
        for p in (2..=97).filter(|&p| is_prime(p)) {
            for a in 1..p {
                let brute = (1..p).find(|&b| (a * b) % p == 1).unwrap();
                assert_eq!(fp_inv(FpScalar::new(a as i64, p)).unwrap().residue(), brute);
            }
        }
    }

    #[test]
    fn primality_and_factoring() {
        assert!(is_prime(65537));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert_eq!(factor_integer(60).unwrap(), vec![2, 2, 3, 5]);
        assert_eq!(factor_integer(1).unwrap(), Vec::<u64>::new());
        assert_eq!(
            factor_integer(999_999_999_989).unwrap(),
            vec![999_999_999_989]
        );
        assert!(matches!(
            factor_integer(2_000_000_000_000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn fermat_primes() {
        assert!(is_fermat_prime(17));
        assert!(!is_fermat_prime(7));
        assert!(is_fermat_prime(257));
        assert!(is_fermat_prime(65537));
        assert!(is_fermat_prime(3));
        assert!(!is_fermat_prime(2));
        assert!(!is_fermat_prime(9));
    }

    #[test]
    fn p_divides_inner_binomials() {
        for p in (2..=50).filter(|&p| is_prime(p)) {
            for i in 1..p {
                assert_eq!(binomial(p, i) % BigInt::from(p), BigInt::from(0));
            }
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn rationals_are_normalized_and_form_a_field(a in small_rational(), b in small_rational(), c in small_rational()) {
            use num_traits::{One, Zero};
            let g = a.numer().gcd(a.denom());
            prop_assert!(g == BigInt::one() || a.is_zero());
            prop_assert!(a.denom() > &BigInt::zero());
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), Rational::one());
            }
        }

        #[test]
        fn fp_scalars_form_a_field(a in 0i64..97, b in 0i64..97, c in 0i64..97) {
            let p = 97;
            let (x, y, z) = (FpScalar::new(a, p), FpScalar::new(b, p), FpScalar::new(c, p));
            prop_assert_eq!(x.add(y).add(z), x.add(y.add(z)));
            prop_assert_eq!(x.mul(y.add(z)), x.mul(y).add(x.mul(z)));
            prop_assert_eq!(x.sub(x), FpScalar::new(0, p));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(fp_inv(x).unwrap()), FpScalar::new(1, p));
            }
        }
    }
}
