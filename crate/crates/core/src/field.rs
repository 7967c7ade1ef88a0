//! Ring and field abstractions.
//!
//! A ring is a *context* value (`Rationals`, `PrimeField { p }`, a tower)
//! that knows how to operate on its plain element values. Polynomials and
//! matrices are generic over these contexts.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numbers::{add_mod, inv_mod, mul_mod, sub_mod, Rational};

/// A commutative ring with identity whose elements are plain values.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the unique ring map from `Z`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a` exactly, `None` otherwise.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Human-readable rendering of one element.
    fn render(&self, a: &Self::Elem) -> String;
    /// A fixed total order used for canonical output.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `n·a` for a machine integer `n`.
    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(&self.from_i64(n), a)
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Matrix inverse through a route faster than plain elimination, when the
    /// field has one. `None` means "no verdict", not "singular".
    fn fast_inverse(&self, _a: &[Vec<Self::Elem>]) -> Option<Vec<Vec<Self::Elem>>> {
        None
    }

    /// Solution of a nonsingular square system, when the field has a fast
    /// route. `None` means "no verdict".
    fn fast_solve(&self, _a: &[Vec<Self::Elem>], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// A field with finitely many elements, enumerable by index.
pub trait FiniteField: Field {
    /// Number of elements `q`.
    fn size(&self) -> u128;
    /// The element with the given index in canonical order; `0` is zero.
    fn element(&self, index: u128) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u128;
    /// The unique `p`-th root, i.e. `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.characteristic() as u128;
        pow_u128(self, a, self.size() / p)
    }
    fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Self::Elem {
        let idx = rng.gen_range(0..self.size());
        self.element(idx)
    }
}

pub fn pow_u128<R: Ring>(ring: &R, a: &R::Elem, mut e: u128) -> R::Elem {
    let mut acc = ring.one();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = ring.mul(&base, &base);
        }
    }
    acc
}

pub fn pow_big<R: Ring>(ring: &R, a: &R::Elem, e: &num_bigint::BigUint) -> R::Elem {
    let mut acc = ring.one();
    for i in (0..e.bits()).rev() {
        acc = ring.mul(&acc, &acc);
        if e.bit(i) {
            acc = ring.mul(&acc, a);
        }
    }
    acc
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn div_exact(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn cmp_elems(&self, a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn fast_inverse(&self, a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
        crate::linalg::inverse_q_modular(a)
    }
    fn fast_solve(&self, a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
        crate::linalg::solve_q_modular(a, b)
    }
}

/// The integers, used for primitive polynomials and fraction-free work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
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

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Caller guarantees `p` is prime; see `PrimeField::checked`.
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2);
        PrimeField { p }
    }

    pub fn checked(p: u64) -> crate::Result<Self> {
        if crate::numbers::is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(crate::Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Reduction of a rational `a/b`, `None` when `p | b`.
    pub fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let num = self.reduce_int(r.numer());
        let den = self.reduce_int(r.denom());
        inv_mod(den, self.p).map(|d| mul_mod(num, d, self.p))
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn cmp_elems(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn size(&self) -> u128 {
        self.p as u128
    }
    fn element(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }
    fn index_of(&self, a: &u64) -> u128 {
        *a as u128
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
    fn random_element<R: rand::Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
