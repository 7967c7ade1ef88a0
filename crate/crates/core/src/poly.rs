//! Dense univariate polynomials over an abstract ring.
//!
//! `Poly<E>` stores coefficients lowest degree first and never carries a
//! zero leading coefficient. All arithmetic goes through a [`PolyRing`],
//! which wraps the coefficient ring and is itself a [`Ring`], so that
//! polynomials over `Q[t]` (needed for norms) come for free.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Integers, Rationals, Ring};
use crate::numbers::Rational;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Codegree (lowest index with a nonzero coefficient); zero has codegree `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Codegree {
    Finite(usize),
    Infinity,
}

impl Add for Codegree {
    type Output = Codegree;
    fn add(self, rhs: Codegree) -> Codegree {
        match (self, rhs) {
            (Codegree::Finite(a), Codegree::Finite(b)) => Codegree::Finite(a + b),
            _ => Codegree::Infinity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Builds a polynomial, trimming trailing entries equal to `zero`.
    pub fn from_trimmed(mut coeffs: Vec<E>, zero: &E) -> Self {
        while coeffs.last() == Some(zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn map<F, G: Clone + PartialEq>(&self, zero: &G, f: F) -> Poly<G>
    where
        F: FnMut(&E) -> G,
    {
        Poly::from_trimmed(self.coeffs.iter().map(f).collect(), zero)
    }
}

/// Polynomials in one variable over the ring `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn poly(&self, coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        Poly::from_trimmed(coeffs, &self.base.zero())
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.poly(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.poly(vec![c])
    }

    /// The indeterminate `t`.
    pub fn var(&self) -> Poly<R::Elem> {
        self.poly(vec![self.base.zero(), self.base.one()])
    }

    /// `c·t^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.poly(v)
    }

    /// `t - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.poly(vec![self.base.neg(a), self.base.one()])
    }

    pub fn add(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&z);
                let b = g.coeffs.get(i).unwrap_or(&z);
                self.base.add(a, b)
            })
            .collect();
        self.poly(v)
    }

    pub fn neg(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly {
            coeffs: f.coeffs.iter().map(|a| self.base.neg(a)).collect(),
        }
    }

    pub fn sub(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&z);
                let b = g.coeffs.get(i).unwrap_or(&z);
                self.base.sub(a, b)
            })
            .collect();
        self.poly(v)
    }

    pub fn mul(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.base.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                let prod = self.base.mul(a, b);
                out[i + j] = self.base.add(&out[i + j], &prod);
            }
        }
        self.poly(out)
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.poly(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn pow(&self, f: &Poly<R::Elem>, mut e: u64) -> Poly<R::Elem> {
        let mut acc = self.constant(self.base.one());
        let mut b = f.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn product<'a, I>(&self, it: I) -> Poly<R::Elem>
    where
        I: IntoIterator<Item = &'a Poly<R::Elem>>,
        R::Elem: 'a,
    {
        it.into_iter()
            .fold(self.constant(self.base.one()), |acc, f| self.mul(&acc, f))
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, f: &Poly<R::Elem>, a: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, a), c);
        }
        acc
    }

    /// `f(g(t))`.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = Poly::zero();
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        let v = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.base.mul(&self.base.from_i64(i as i64), a))
            .collect();
        self.poly(v)
    }

    /// `g(u) = f(u + c)`.
    pub fn shift(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        let lin = self.poly(vec![c.clone(), self.base.one()]);
        self.compose(f, &lin)
    }

    pub fn codegree(&self, f: &Poly<R::Elem>) -> Codegree {
        f.coeffs
            .iter()
            .position(|a| !self.base.is_zero(a))
            .map_or(Codegree::Infinity, Codegree::Finite)
    }

    /// Division by a polynomial with invertible-free leading coefficient 1.
    pub fn divmod_monic(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let dg = g.deg().expect("divisor must be nonzero");
        debug_assert!(self.base.is_one(g.lc().unwrap()));
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return (Poly::zero(), f.clone());
        }
        let mut q = vec![self.base.zero(); r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = r[i].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            q[i - dg] = c.clone();
            for (j, gj) in g.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, gj);
                r[i - dg + j] = self.base.sub(&r[i - dg + j], &t);
            }
        }
        r.truncate(dg);
        (self.poly(q), self.poly(r))
    }

    /// Pseudo-remainder: `lc(g)^(deg f - deg g + 1) · f mod g`.
    pub fn prem(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let dg = g.deg().expect("divisor must be nonzero");
        let df = match f.deg() {
            Some(d) if d >= dg => d,
            _ => return f.clone(),
        };
        let lg = g.lc().unwrap().clone();
        let mut r = f.clone();
        let mut e = df - dg + 1;
        while let Some(dr) = r.deg() {
            if dr < dg {
                break;
            }
            let t = self.monomial(r.lc().unwrap().clone(), dr - dg);
            r = self.sub(&self.scale(&r, &lg), &self.mul(&t, g));
            e -= 1;
        }
        let factor = self.base.pow(&lg, e as u64);
        self.scale(&r, &factor)
    }

    /// Total order: by degree, then coefficients from the top down.
    pub fn cmp_polys(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Ordering {
        f.degree().cmp(&g.degree()).then_with(|| {
            for (a, b) in f.coeffs.iter().rev().zip(g.coeffs.iter().rev()) {
                let o = self.base.cmp_elems(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Resultant by the subresultant PRS, exact over any integral domain.
    ///
    /// Convention: `Res(f, g) = lc(f)^deg(g) · Π g(α)` over the roots of `f`.
    pub fn resultant(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = &self.base;
        let (mut a, mut b) = (f.clone(), g.clone());
        let mut negate = false;
        if b.deg() > a.deg() {
            std::mem::swap(&mut a, &mut b);
            negate = (a.deg().unwrap() * b.deg().unwrap()) % 2 == 1;
        }
        if b.deg() == Some(0) {
            let r = k.pow(b.lc().unwrap(), a.deg().unwrap() as u64);
            return Ok(if negate { k.neg(&r) } else { r });
        }
        let mut g_ = k.one();
        let mut h = k.one();
        loop {
            let da = a.deg().unwrap();
            let db = b.deg().unwrap();
            let delta = (da - db) as u64;
            if da % 2 == 1 && db % 2 == 1 {
                negate = !negate;
            }
            let r = self.prem(&a, &b);
            a = b;
            let divisor = k.mul(&g_, &k.pow(&h, delta));
            b = self.div_exact_scalar(&r, &divisor)?;
            g_ = a.lc().unwrap().clone();
            // h <- h^(1-delta) g^delta
            h = if delta == 0 {
                h
            } else {
                let num = k.pow(&g_, delta);
                let den = k.pow(&h, delta - 1);
                k.div_exact(&num, &den)
                    .ok_or_else(|| Error::internal("subresultant: inexact h update"))?
            };
            match b.deg() {
                None => return Ok(k.zero()),
                Some(0) => {
                    let da = a.deg().unwrap() as u64;
                    let num = k.pow(b.lc().unwrap(), da);
                    let res = if da == 0 {
                        num
                    } else {
                        let den = k.pow(&h, da - 1);
                        k.div_exact(&num, &den)
                            .ok_or_else(|| Error::internal("subresultant: inexact final step"))?
                    };
                    return Ok(if negate { k.neg(&res) } else { res });
                }
                Some(_) => {}
            }
        }
    }

    fn div_exact_scalar(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Result<Poly<R::Elem>> {
        let v = f
            .coeffs
            .iter()
            .map(|a| {
                self.base
                    .div_exact(a, c)
                    .ok_or_else(|| Error::internal("inexact scalar division"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.poly(v))
    }

    /// Renders `a_n*t^n + ... + a_0`.
    pub fn render(&self, f: &Poly<R::Elem>, var: &str) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in f.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let s = self.base.render(c);
            let (neg, body) = split_sign(&s);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&wrap(body));
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&wrap(body));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Splits a rendered coefficient into sign and body when the sign applies to
/// the whole expression.
fn split_sign(s: &str) -> (bool, &str) {
    if let Some(rest) = s.strip_prefix('-') {
        if is_atomic(rest) {
            return (true, rest);
        }
    }
    (false, s)
}

fn is_atomic(s: &str) -> bool {
    !s.contains(' ')
}

fn wrap(s: &str) -> String {
    if is_atomic(s) {
        s.to_string()
    } else {
        format!("({s})")
    }
}

impl<F: Field> PolyRing<F> {
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.lc() {
            None => Poly::zero(),
            Some(l) if self.base.is_one(l) => f.clone(),
            Some(l) => self.poly(
                f.coeffs
                    .iter()
                    .map(|c| self.base.div(c, l).expect("nonzero leading coefficient"))
                    .collect(),
            ),
        }
    }

    /// `f = q·g + r` with `deg r < deg g`.
    pub fn divmod(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let dg = g.deg().ok_or(Error::DivisionByZeroPoly)?;
        if f.coeffs.len() <= dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let lc = g.lc().unwrap();
        let monic = self.base.is_one(lc);
        let lgi = if monic {
            self.base.one()
        } else {
            self.base.inv(lc).unwrap()
        };
        let mut r = f.coeffs.clone();
        let mut q = vec![self.base.zero(); r.len() - dg];
        for i in (dg..r.len()).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = if monic {
                r[i].clone()
            } else {
                self.base.mul(&r[i], &lgi)
            };
            for (j, gj) in g.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, gj);
                r[i - dg + j] = self.base.sub(&r[i - dg + j], &t);
            }
            q[i - dg] = c;
        }
        r.truncate(dg);
        Ok((self.poly(q), self.poly(r)))
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divmod(f, g)?.1)
    }

    /// Exact quotient; `None` if `g` does not divide `f`.
    pub fn div_exact_poly(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divmod(f, g).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, g: &Poly<F::Elem>, f: &Poly<F::Elem>) -> bool {
        self.div_exact_poly(f, g).is_some()
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (self.monic(f), self.monic(g));
        while !b.is_zero() {
            let r = self.monic(&self.rem(&a, &b).unwrap());
            a = b;
            b = r;
        }
        a
    }

    /// `(d, a, b)` with `d = a·f + b·g`, `d` monic or zero.
    pub fn gcd_ext(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let one = self.constant(self.base.one());
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).unwrap();
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(l) => {
                let li = self.base.inv(l).unwrap();
                (
                    self.scale(&r0, &li),
                    self.scale(&s0, &li),
                    self.scale(&t0, &li),
                )
            }
        }
    }

    /// True iff `f` has a repeated root in a splitting field, i.e.
    /// `gcd(f, f')` is nonconstant.
    pub fn has_repeated_root(&self, f: &Poly<F::Elem>) -> Result<bool> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(f, &self.derivative(f));
        Ok(g.deg().unwrap_or(0) >= 1)
    }

    /// `f^e mod m`.
    pub fn powmod(
        &self,
        f: &Poly<F::Elem>,
        e: &num_bigint::BigUint,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.constant(self.base.one()), m).unwrap();
        let base = self.rem(f, m).unwrap();
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m).unwrap();
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m).unwrap();
            }
        }
        acc
    }

    pub fn mulmod(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(f, g), m).unwrap()
    }

    /// Squarefree decomposition in characteristic zero (Yun):
    /// `monic(f) = Π a_i^i`, returned as `(a_i, i)` with `a_i` nonconstant.
    pub fn squarefree_char0(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        if f.deg().unwrap_or(0) == 0 {
            return out;
        }
        let df = self.derivative(&f);
        let a0 = self.gcd(&f, &df);
        let mut b = self.div_exact_poly(&f, &a0).unwrap();
        let mut c = self.div_exact_poly(&df, &a0).unwrap();
        let mut d = self.sub(&c, &self.derivative(&b));
        let mut i = 1;
        while b.deg().unwrap_or(0) > 0 {
            let a = self.gcd(&b, &d);
            b = self.div_exact_poly(&b, &a).unwrap();
            c = self.div_exact_poly(&d, &a).unwrap();
            d = self.sub(&c, &self.derivative(&b));
            if a.deg().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::add(self, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        PolyRing::neg(self, a)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::sub(self, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::mul(self, a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    /// Exact division over an integral domain: long division that fails as
    /// soon as a leading coefficient does not divide exactly.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let db = b.deg()?;
        let lb = b.lc().unwrap();
        let mut r = a.clone();
        let da = match a.deg() {
            None => return Some(Poly::zero()),
            Some(d) if d < db => return None,
            Some(d) => d,
        };
        let mut q = vec![self.base.zero(); da - db + 1];
        while let Some(dr) = r.deg() {
            if dr < db {
                return None;
            }
            let c = self.base.div_exact(r.lc().unwrap(), lb)?;
            let t = self.monomial(c.clone(), dr - db);
            q[dr - db] = c;
            r = PolyRing::sub(self, &r, &PolyRing::mul(self, &t, b));
        }
        Some(self.poly(q))
    }
    fn render(&self, a: &Self::Elem) -> String {
        PolyRing::render(self, a, "t")
    }
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.cmp_polys(a, b)
    }
}

/// Polynomials over `Q`.
pub type QPoly = Poly<Rational>;
/// Polynomials over `Z`.
pub type ZPoly = Poly<BigInt>;

pub fn q_ring() -> PolyRing<Rationals> {
    PolyRing::new(Rationals)
}

pub fn z_ring() -> PolyRing<Integers> {
    PolyRing::new(Integers)
}

/// Polynomial over `Q` from integer coefficients, lowest degree first.
pub fn qpoly(coeffs: &[i64]) -> QPoly {
    q_ring().from_i64s(coeffs)
}

pub fn zpoly(coeffs: &[i64]) -> ZPoly {
    z_ring().from_i64s(coeffs)
}

pub fn z_to_q(f: &ZPoly) -> QPoly {
    f.map(&Rational::zero(), |c| Rational::from_integer(c.clone()))
}

/// `f = α·F` with `F` primitive in `Z[t]` and `lc(F) > 0`.
pub fn content_primitive(f: &QPoly) -> Result<(Rational, ZPoly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    Ok((
        Rational::new(g, den),
        Poly::from_trimmed(prim, &BigInt::zero()),
    ))
}

/// Content (gcd of coefficients, nonnegative) of an integer polynomial.
pub fn z_content(f: &ZPoly) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn z_primitive_part(f: &ZPoly) -> ZPoly {
    let mut c = z_content(f);
    if c.is_zero() {
        return f.clone();
    }
    if f.lc().unwrap().is_negative() {
        c = -c;
    }
    Poly::from_trimmed(f.coeffs().iter().map(|a| a / &c).collect(), &BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linalg::sylvester_determinant;
    use crate::numbers::{rat, ratio};
    use proptest::prelude::*;

    fn q() -> PolyRing<Rationals> {
        q_ring()
    }

    #[test]
    fn divmod_examples() {
        let r = q();
        // t^3 - 2 by t - 5: remainder 5^3 - 2
        let (_, rem) = r.divmod(&qpoly(&[-2, 0, 0, 1]), &qpoly(&[-5, 1])).unwrap();
        assert_eq!(rem, qpoly(&[123]));
        let (quo, rem) = r
            .divmod(&qpoly(&[-1, 0, 0, 0, 0, 1]), &qpoly(&[-1, 1]))
            .unwrap();
        assert_eq!(quo, qpoly(&[1, 1, 1, 1, 1]));
        assert!(rem.is_zero());
        let (quo, rem) = r.divmod(&Poly::zero(), &qpoly(&[0, 0, 1])).unwrap();
        assert!(quo.is_zero() && rem.is_zero());
        assert_eq!(
            r.divmod(&qpoly(&[1]), &Poly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn gcd_ext_examples() {
        let r = q();
        let (d, _, _) = r.gcd_ext(&qpoly(&[-2, 0, 1]), &qpoly(&[-3, 0, 1]));
        assert_eq!(d, qpoly(&[1]));
        let f = qpoly(&[4, 0, 2]);
        let (d, a, b) = r.gcd_ext(&f, &Poly::zero());
        assert_eq!(d, qpoly(&[2, 0, 1]));
        assert_eq!(a, r.constant(ratio(1, 2)));
        assert!(b.is_zero());
        let (d, a, b) = r.gcd_ext(&qpoly(&[-1, 0, 1]), &qpoly(&[-1, 1]));
        assert_eq!(d, qpoly(&[-1, 1]));
        assert_eq!(
            r.add(
                &r.mul(&a, &qpoly(&[-1, 0, 1])),
                &r.mul(&b, &qpoly(&[-1, 1]))
            ),
            d
        );
        let (d, a, b) = r.gcd_ext(&Poly::zero(), &Poly::zero());
        assert!(d.is_zero() && a.is_zero() && b.is_zero());
    }

    #[test]
    fn derivative_examples() {
        let r = q();
        assert_eq!(
            r.derivative(&qpoly(&[3, -6, 0, 0, 0, 1])),
            qpoly(&[-6, 0, 0, 0, 5])
        );
        assert!(r.derivative(&qpoly(&[7])).is_zero());
        let f7 = PolyRing::new(PrimeField::new(7));
        assert!(f7.derivative(&f7.monomial(1, 7)).is_zero());
    }

    #[test]
    fn repeated_roots() {
        let r = q();
        let sq = r.mul(&qpoly(&[1, 0, 1]), &qpoly(&[1, 0, 1]));
        assert!(r.has_repeated_root(&sq).unwrap());
        assert!(!r.has_repeated_root(&qpoly(&[-2, 0, 0, 1])).unwrap());
        assert!(r.has_repeated_root(&qpoly(&[1, -2, 1])).unwrap());
        assert_eq!(
            r.has_repeated_root(&Poly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn shift_examples() {
        let r = q();
        assert_eq!(
            r.shift(&qpoly(&[1, 1, 1, 1, 1]), &rat(1)),
            qpoly(&[5, 10, 10, 5, 1])
        );
        let f = qpoly(&[3, -1, 4]);
        assert_eq!(r.shift(&f, &rat(0)), f);
        assert_eq!(r.shift(&qpoly(&[0, 0, 1]), &rat(1)), qpoly(&[1, 2, 1]));
    }

    #[test]
    fn eval_examples() {
        let f7 = PolyRing::new(PrimeField::new(7));
        let f = f7.from_i64s(&[9, 14, 0, -8]);
        assert_eq!(f7.eval(&f, &1), 1);
        let g = qpoly(&[5, 3, 2]);
        assert_eq!(q().eval(&g, &rat(0)), rat(5));
    }

    #[test]
    fn content_primitive_examples() {
        let f = q().poly(vec![
            ratio(1, 3),
            rat(0),
            rat(0),
            rat(1),
            ratio(-5, 3),
            ratio(2, 9),
        ]);
        let (a, p) = content_primitive(&f).unwrap();
        assert_eq!(a, ratio(1, 9));
        assert_eq!(p, zpoly(&[3, 0, 0, 9, -15, 2]));
        let (a, p) = content_primitive(&qpoly(&[15, 6, 30])).unwrap();
        assert_eq!(a, rat(3));
        assert_eq!(p, zpoly(&[5, 2, 10]));
        let (a, p) = content_primitive(&qpoly(&[-2, 0, 1])).unwrap();
        assert_eq!(a, rat(1));
        assert_eq!(p, zpoly(&[-2, 0, 1]));
        let (a, p) = content_primitive(&qpoly(&[2, -4])).unwrap();
        assert_eq!(a, rat(-2));
        assert_eq!(p, zpoly(&[-1, 2]));
    }

    #[test]
    fn resultant_examples() {
        let r = q();
        assert_eq!(
            r.resultant(&qpoly(&[-2, 0, 1]), &qpoly(&[-3, 0, 1]))
                .unwrap(),
            rat(1)
        );
        assert_eq!(
            r.resultant(&qpoly(&[-2, 0, 1]), &qpoly(&[1])).unwrap(),
            rat(1)
        );
        let g = qpoly(&[7, -3, 0, 2]);
        assert_eq!(
            r.resultant(&qpoly(&[-5, 1]), &g).unwrap(),
            r.eval(&g, &rat(5))
        );
        assert_eq!(r.resultant(&Poly::zero(), &g), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn resultant_over_polynomial_coefficients() {
        // Res_x(x^2 - 2, t - x) = t^2 - 2
        let qt = q();
        let qtx = PolyRing::new(qt.clone());
        let m = qtx.poly(vec![qpoly(&[-2]), Poly::zero(), qpoly(&[1])]);
        let g = qtx.poly(vec![qpoly(&[0, 1]), qpoly(&[-1])]);
        assert_eq!(qtx.resultant(&m, &g).unwrap(), qpoly(&[-2, 0, 1]));
    }

    #[test]
    fn codegree_examples() {
        let r = q();
        assert_eq!(r.codegree(&qpoly(&[0, 0, 0, 1, 0, 1])), Codegree::Finite(3));
        assert_eq!(r.codegree(&Poly::zero()), Codegree::Infinity);
        assert_eq!(r.codegree(&qpoly(&[5])), Codegree::Finite(0));
    }

    #[test]
    fn rendering() {
        let r = q();
        assert_eq!(r.render(&qpoly(&[-2, 0, 0, 0, 1]), "t"), "t^4 - 2");
        assert_eq!(
            r.render(&qpoly(&[3, 0, 0, 9, -15, 2]), "t"),
            "2*t^5 - 15*t^4 + 9*t^3 + 3"
        );
        assert_eq!(
            r.render(&r.poly(vec![ratio(-3, 4), ratio(1, 2)]), "t"),
            "1/2*t - 3/4"
        );
        assert_eq!(r.render(&qpoly(&[0, -1]), "t"), "-t");
        assert_eq!(r.render(&Poly::zero(), "t"), "0");
    }

    #[test]
    fn squarefree_decomposition() {
        let r = q();
        let f = r.mul(&r.pow(&qpoly(&[1, 0, 1]), 2), &r.pow(&qpoly(&[-1, 1]), 3));
        let sf = r.squarefree_char0(&f);
        assert_eq!(sf, vec![(qpoly(&[1, 0, 1]), 2), (qpoly(&[-1, 1]), 3)]);
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|v| qpoly(&v))
    }

    fn primitive_zpoly() -> impl Strategy<Value = ZPoly> {
        prop::collection::vec(-9i64..=9, 1..=5)
            .prop_map(|v| zpoly(&v))
            .prop_filter("nonzero", |f| !f.is_zero())
            .prop_map(|f| z_primitive_part(&f))
    }

    proptest! {
        #[test]
        fn degree_is_additive(f in small_poly(5), g in small_poly(5)) {
            let r = q();
            prop_assert_eq!(r.mul(&f, &g).degree(), f.degree() + g.degree());
            let fp = PolyRing::new(PrimeField::new(5));
            let (f5, g5) = (
                f.map(&0, |c| PrimeField::new(5).reduce_rational(c).unwrap()),
                g.map(&0, |c| PrimeField::new(5).reduce_rational(c).unwrap()),
            );
            prop_assert_eq!(fp.mul(&f5, &g5).degree(), f5.degree() + g5.degree());
        }

        #[test]
        fn divmod_round_trip(f in small_poly(7), g in small_poly(4)) {
            prop_assume!(!g.is_zero());
            let r = q();
            let (quo, rem) = r.divmod(&f, &g).unwrap();
            prop_assert_eq!(r.add(&r.mul(&quo, &g), &rem), f);
            prop_assert!(rem.degree() < g.degree());
        }

        #[test]
        fn product_rule(f in small_poly(5), g in small_poly(5)) {
            let r = q();
            let lhs = r.derivative(&r.mul(&f, &g));
            let rhs = r.add(&r.mul(&f, &r.derivative(&g)), &r.mul(&r.derivative(&f), &g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gauss_lemma_product_of_primitives(f in primitive_zpoly(), g in primitive_zpoly()) {
            let prod = z_ring().mul(&f, &g);
            prop_assert_eq!(z_content(&prod), BigInt::one());
        }

        #[test]
        fn shift_inverts(f in small_poly(5), c in -4i64..=4) {
            let r = q();
            prop_assert_eq!(r.shift(&r.shift(&f, &rat(c)), &rat(-c)), f);
        }

        #[test]
        fn resultant_is_multiplicative(f in small_poly(3), g in small_poly(2), h in small_poly(2)) {
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let r = q();
            let lhs = r.resultant(&f, &r.mul(&g, &h)).unwrap();
            let rhs = r.resultant(&f, &g).unwrap() * r.resultant(&f, &h).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_matches_sylvester_determinant(f in small_poly(4), g in small_poly(4)) {
            prop_assume!(f.deg().unwrap_or(0) >= 1 && g.deg().unwrap_or(0) >= 1);
            let r = q();
            prop_assert_eq!(r.resultant(&f, &g).unwrap(), sylvester_determinant(&Rationals, &f, &g));
        }

        #[test]
        fn gcd_ext_bezout(f in small_poly(5), g in small_poly(5)) {
            let r = q();
            let (d, a, b) = r.gcd_ext(&f, &g);
            prop_assert_eq!(r.add(&r.mul(&a, &f), &r.mul(&b, &g)), d.clone());
            if !d.is_zero() {
                prop_assert!(r.divides(&d, &f) && r.divides(&d, &g));
            }
        }
    }
}
