//! Towers of simple extensions `K(α₁)(α₂)…(α_k)` over `Q` or `F_p`.
//!
//! An element of a tower with `k` levels is stored as its flattened
//! coordinate vector in the power-product basis `α₁^i₁ ⋯ α_k^i_k`
//! (`0 <= i_j < d_j`), with `i₁` varying fastest. Read recursively, the
//! vector is `d_k` consecutive chunks, chunk `j` being the level-`(k-1)`
//! coefficient of `α_k^j`; elements of a lower level are exactly the
//! zero-padded prefixes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{Factorization, TowerBase};
use crate::field::{Field, FiniteField, Ring};
use crate::limits::Limits;
use crate::linalg::{self, DependencyFinder, Echelon};
use crate::poly::{Poly, PolyRing};

/// Flattened coordinates of a tower element over the base field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TowerElem<E>(pub(crate) Vec<E>);

impl<E: Clone> TowerElem<E> {
    pub fn coords(&self) -> &[E] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<E> {
        self.0
    }
}

struct Level<F: Field> {
    label: String,
    min_poly: Poly<TowerElem<F::Elem>>,
    degree: usize,
    below: usize,
    primitive: OnceLock<Arc<Primitive<F>>>,
}

/// A primitive element `γ` of a tower, with the change of basis between
/// flattened coordinates and the power basis `1, γ, …, γ^(n-1)`.
pub struct Primitive<F: Field> {
    pub element: TowerElem<F::Elem>,
    pub min_poly: Poly<F::Elem>,
    /// `γ = Σ c_l α_l` when found by the integer-combination search.
    pub combination: Option<Vec<i64>>,
    /// Row `j` holds the coordinates of `γ^j`.
    powers: Vec<Vec<F::Elem>>,
    /// Maps coordinates to power-basis coefficients.
    to_power: Vec<Vec<F::Elem>>,
}

impl<F: Field> fmt::Debug for Primitive<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Primitive")
            .field("element", &self.element)
            .field("min_poly", &self.min_poly)
            .finish()
    }
}

/// An immutable tower of simple extensions. Cloning is cheap; lower levels
/// are shared between a tower and its extensions.
pub struct Tower<F: Field> {
    base: F,
    levels: Vec<Arc<Level<F>>>,
}

impl<F: Field> Clone for Tower<F> {
    fn clone(&self) -> Self {
        Tower {
            base: self.base.clone(),
            levels: self.levels.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Tower<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.levels.iter().map(|l| l.label.as_str()).collect();
        f.debug_struct("Tower")
            .field("base", &self.base)
            .field("levels", &labels)
            .field("degree", &self.degree())
            .finish()
    }
}

/// Same base and the same (shared) levels.
impl<F: Field + PartialEq> PartialEq for Tower<F> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| Arc::ptr_eq(a, b))
    }
}

impl<F: Field + PartialEq> Eq for Tower<F> {}

impl<F: Field + std::hash::Hash> std::hash::Hash for Tower<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.levels.len().hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelDescription {
    pub label: String,
    pub min_poly: String,
}

impl<F: Field> Tower<F> {
    /// The trivial tower: just the base field.
    pub fn new(base: F) -> Self {
        Tower {
            base,
            levels: Vec::new(),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// `[L : K]`, the product of the level degrees.
    pub fn degree(&self) -> usize {
        self.levels.last().map_or(1, |l| l.below * l.degree)
    }

    /// Degree of level `k` (1-based) over level `k - 1`.
    pub fn level_degree(&self, k: usize) -> usize {
        self.levels[k - 1].degree
    }

    pub fn label(&self, k: usize) -> &str {
        &self.levels[k - 1].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.levels.iter().map(|l| l.label.clone()).collect()
    }

    /// Minimal polynomial of level `k` over the tower of the first `k - 1` levels.
    pub fn level_min_poly(&self, k: usize) -> &Poly<TowerElem<F::Elem>> {
        &self.levels[k - 1].min_poly
    }

    /// The tower made of the first `k` levels.
    pub fn truncate(&self, k: usize) -> Tower<F> {
        Tower {
            base: self.base.clone(),
            levels: self.levels[..k].to_vec(),
        }
    }

    /// True if `self` is `other` with possibly more levels on top.
    pub fn extends(&self, other: &Tower<F>) -> bool {
        other.levels.len() <= self.levels.len()
            && other
                .levels
                .iter()
                .zip(&self.levels)
                .all(|(a, b)| Arc::ptr_eq(a, b))
    }

    /// `[self : lower]` by the tower law.
    pub fn degree_over(&self, lower: &Tower<F>) -> Result<usize> {
        if !self.extends(lower) {
            return Err(Error::TowerMismatch);
        }
        Ok(self.degree() / lower.degree())
    }

    pub fn from_base(&self, c: F::Elem) -> TowerElem<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c;
        TowerElem(v)
    }

    pub fn from_coords(&self, coords: Vec<F::Elem>) -> Result<TowerElem<F::Elem>> {
        if coords.len() != self.degree() {
            return Err(Error::TowerMismatch);
        }
        Ok(TowerElem(coords))
    }

    /// Embeds an element of a sub-tower by zero padding.
    pub fn embed(&self, x: &TowerElem<F::Elem>) -> TowerElem<F::Elem> {
        let mut v = x.0.clone();
        v.resize(self.degree(), self.base.zero());
        TowerElem(v)
    }

    /// Restricts an element that lies in the first `k` levels.
    pub fn restrict(&self, x: &TowerElem<F::Elem>, k: usize) -> Option<TowerElem<F::Elem>> {
        let n = self.truncate(k).degree();
        if x.0[n..].iter().all(|c| self.base.is_zero(c)) {
            Some(TowerElem(x.0[..n].to_vec()))
        } else {
            None
        }
    }

    /// The generator `α_k` (1-based) as an element of the whole tower.
    pub fn generator(&self, k: usize) -> TowerElem<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        let below = self.levels[k - 1].below;
        if self.levels[k - 1].degree > 1 {
            v[below] = self.base.one();
        } else {
            // a degree-1 level: α_k is the root of t + c, i.e. -c
            let c = &self.levels[k - 1].min_poly.coeffs()[0];
            for (i, x) in c.0.iter().enumerate() {
                v[i] = self.base.neg(x);
            }
        }
        TowerElem(v)
    }

    pub fn generators(&self) -> Vec<TowerElem<F::Elem>> {
        (1..=self.levels.len()).map(|k| self.generator(k)).collect()
    }

    /// Exponent vector of flattened index `idx`.
    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| {
                let e = idx % l.degree;
                idx /= l.degree;
                e
            })
            .collect()
    }

    fn mul_level(&self, k: usize, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let kf = &self.base;
        if k == 0 {
            return vec![kf.mul(&a[0], &b[0])];
        }
        let lv = &self.levels[k - 1];
        let (d, n) = (lv.degree, lv.below);
        let zero_chunk = |c: &[F::Elem]| c.iter().all(|x| kf.is_zero(x));
        let mut prod: Vec<Vec<F::Elem>> = vec![vec![kf.zero(); n]; 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * n..(i + 1) * n];
            if zero_chunk(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * n..(j + 1) * n];
                if zero_chunk(bj) {
                    continue;
                }
                let t = self.mul_level(k - 1, ai, bj);
                add_assign(kf, &mut prod[i + j], &t);
            }
        }
        let m = lv.min_poly.coeffs();
        for j in (d..2 * d - 1).rev() {
            if zero_chunk(&prod[j]) {
                continue;
            }
            let c = std::mem::replace(&mut prod[j], vec![kf.zero(); n]);
            for (i, mi) in m.iter().take(d).enumerate() {
                if zero_chunk(&mi.0) {
                    continue;
                }
                let t = self.mul_level(k - 1, &c, &mi.0);
                sub_assign(kf, &mut prod[j - d + i], &t);
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    /// `x` with `b·x = rhs`, through the base field's fast solver on the
    /// multiplication matrix of `b`; only tried for large degree.
    fn solve_mul(&self, b: &TowerElem<F::Elem>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let n = self.degree();
        if n <= 8 || b.0.iter().all(|x| self.base.is_zero(x)) {
            return None;
        }
        let cols: Vec<Vec<F::Elem>> = (0..n)
            .map(|j| {
                let mut e = vec![self.base.zero(); n];
                e[j] = self.base.one();
                self.mul_level(self.levels.len(), &b.0, &e)
            })
            .collect();
        self.base.fast_solve(&linalg::transpose(&cols), rhs)
    }

    fn inv_level(&self, k: usize, a: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let kf = &self.base;
        if k == 0 {
            return kf.inv(&a[0]).map(|x| vec![x]);
        }
        if a.iter().all(|x| kf.is_zero(x)) {
            return None;
        }
        let lv = &self.levels[k - 1];
        let (d, n) = (lv.degree, lv.below);
        let below = self.truncate(k - 1);
        let ring = PolyRing::new(below);
        let ap = ring.poly(a.chunks(n).map(|c| TowerElem(c.to_vec())).collect());
        let (g, s, _) = ring.gcd_ext(&ap, &lv.min_poly);
        if g.deg() != Some(0) {
            return None;
        }
        let mut out = Vec::with_capacity(d * n);
        for i in 0..d {
            match s.coeff(i) {
                Some(c) => out.extend(c.0.iter().cloned()),
                None => out.extend(std::iter::repeat_n(kf.zero(), n)),
            }
        }
        Some(out)
    }

    /// Minimal polynomial of `β` over the base field, from the first linear
    /// dependency among `1, β, β², …`.
    pub fn min_poly(&self, beta: &TowerElem<F::Elem>) -> Poly<F::Elem> {
        self.min_poly_with_powers(beta).0
    }

    fn min_poly_with_powers(
        &self,
        beta: &TowerElem<F::Elem>,
    ) -> (Poly<F::Elem>, Vec<Vec<F::Elem>>) {
        let n = self.degree();
        let mut finder = DependencyFinder::new(self.base.clone(), n);
        let mut powers = Vec::new();
        let mut cur = self.one();
        loop {
            powers.push(cur.0.clone());
            if let Some(c) = finder.push(cur.0.clone()) {
                powers.pop();
                let pr = PolyRing::new(self.base.clone());
                return (pr.poly(c), powers);
            }
            cur = self.mul(&cur, beta);
        }
    }

    /// Degree of `β` over the base field.
    pub fn element_degree(&self, beta: &TowerElem<F::Elem>) -> usize {
        self.min_poly(beta).deg().unwrap_or(0)
    }

    fn make_primitive(
        &self,
        element: TowerElem<F::Elem>,
        combination: Option<Vec<i64>>,
    ) -> Option<Primitive<F>> {
        let n = self.degree();
        let mut powers = Vec::with_capacity(n + 1);
        let mut cur = self.one();
        for _ in 0..=n {
            powers.push(cur.0.clone());
            cur = self.mul(&cur, &element);
        }
        let top = powers.pop().unwrap();
        if let Some(to_power) = self.base.fast_inverse(&linalg::transpose(&powers)) {
            // γ^n = Σ c_j γ^j
            let c = linalg::mat_vec(&self.base, &to_power, &top);
            let mut coeffs: Vec<F::Elem> = c.iter().map(|x| self.base.neg(x)).collect();
            coeffs.push(self.base.one());
            return Some(Primitive {
                element,
                min_poly: PolyRing::new(self.base.clone()).poly(coeffs),
                combination,
                powers,
                to_power,
            });
        }
        let (min_poly, powers) = self.min_poly_with_powers(&element);
        if min_poly.deg() != Some(n) {
            return None;
        }
        // coordinates x = Σ c_j powers[j]; to_power = inverse of the matrix
        // whose columns are the powers
        let cols = linalg::transpose(&powers);
        let to_power = linalg::inverse(&self.base, &cols)?;
        Some(Primitive {
            element,
            min_poly,
            combination,
            powers,
            to_power,
        })
    }

    /// Power-basis coefficients of `x` with respect to the primitive element.
    pub fn to_power_basis(&self, prim: &Primitive<F>, x: &TowerElem<F::Elem>) -> Poly<F::Elem> {
        let v = linalg::mat_vec(&self.base, &prim.to_power, &x.0);
        Poly::from_trimmed(v, &self.base.zero())
    }

    /// Evaluates a base polynomial at the primitive element.
    pub fn from_power_basis(&self, prim: &Primitive<F>, p: &Poly<F::Elem>) -> TowerElem<F::Elem> {
        let n = self.degree();
        let mut v = vec![self.base.zero(); n];
        for (c, pw) in p.coeffs().iter().zip(&prim.powers) {
            if self.base.is_zero(c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(pw) {
                *x = self.base.add(x, &self.base.mul(c, y));
            }
        }
        if p.coeffs().len() > prim.powers.len() {
            // reduce higher powers through the minimal polynomial first
            let pr = PolyRing::new(self.base.clone());
            let r = pr.rem(p, &prim.min_poly).unwrap();
            return self.from_power_basis(prim, &r);
        }
        TowerElem(v)
    }

    /// Does `x` lie in the span of an echelon basis (a subfield, say)?
    pub fn contains(&self, subspace: &Echelon<F::Elem>, x: &TowerElem<F::Elem>) -> Result<bool> {
        if x.0.len() != self.degree() {
            return Err(Error::TowerMismatch);
        }
        Ok(linalg::in_span(&self.base, subspace, &x.0))
    }

    /// JSON-friendly description: one entry per level.
    pub fn describe(&self) -> Vec<LevelDescription> {
        (1..=self.levels.len())
            .map(|k| {
                let below = self.truncate(k - 1);
                let ring = PolyRing::new(below);
                LevelDescription {
                    label: self.levels[k - 1].label.clone(),
                    min_poly: ring.render(&self.levels[k - 1].min_poly, "t"),
                }
            })
            .collect()
    }

    /// Adjoins a root of `m` without checking irreducibility. The caller
    /// must already know that `m` is monic and irreducible over `self`.
    pub(crate) fn adjoin_unchecked(
        &self,
        m: Poly<TowerElem<F::Elem>>,
        label: &str,
    ) -> (Tower<F>, TowerElem<F::Elem>) {
        let degree = m.deg().unwrap();
        let level = Level {
            label: label.to_string(),
            min_poly: m,
            degree,
            below: self.degree(),
            primitive: OnceLock::new(),
        };
        let mut levels = self.levels.clone();
        levels.push(Arc::new(level));
        let t = Tower {
            base: self.base.clone(),
            levels,
        };
        let k = t.num_levels();
        let alpha = t.generator(k);
        (t, alpha)
    }

    /// Enumerates the whole field when the base is finite.
    pub fn element_count(&self) -> Option<u128>
    where
        F: FiniteField,
    {
        crate::numbers::checked_pow(self.base.size() as u64, self.degree() as u32)
    }
}

impl<F: TowerBase> Tower<F> {
    /// Adjoins a root of the monic irreducible `m ∈ L[t]`, certifying
    /// irreducibility by factoring `m` over `L`.
    pub fn adjoin_root(
        &self,
        m: &Poly<TowerElem<F::Elem>>,
        label: &str,
    ) -> Result<(Tower<F>, TowerElem<F::Elem>)> {
        self.adjoin_root_with(m, label, &Limits::default())
    }

    pub fn adjoin_root_with(
        &self,
        m: &Poly<TowerElem<F::Elem>>,
        label: &str,
        limits: &Limits,
    ) -> Result<(Tower<F>, TowerElem<F::Elem>)> {
        let Some(lc) = m.lc() else {
            return Err(Error::ZeroPolynomial);
        };
        if !self.is_one(lc) {
            return Err(Error::NotMonic);
        }
        if m.deg() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        if self.coprime_base_irreducible(m, limits)? {
            return Ok(self.adjoin_unchecked(m.clone(), label));
        }
        let fac: Factorization<TowerElem<F::Elem>> = F::factor_in_tower(self, m, limits)?;
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(Error::NotIrreducible);
        }
        Ok(self.adjoin_unchecked(m.clone(), label))
    }

    /// Cheap sufficient test: `m` has base coefficients, is irreducible over
    /// the base, and its degree is coprime to `[L : K]`. Then `[L(β) : K]`
    /// is divisible by both degrees, so `m` stays irreducible over `L`.
    fn coprime_base_irreducible(
        &self,
        m: &Poly<TowerElem<F::Elem>>,
        limits: &Limits,
    ) -> Result<bool> {
        let d = m.deg().unwrap_or(0);
        if self.num_levels() == 0 || crate::numbers::gcd_u64(d as u64, self.degree() as u64) != 1 {
            return Ok(false);
        }
        let mut base = Vec::with_capacity(d + 1);
        for c in m.coeffs() {
            match self.restrict(c, 0) {
                Some(x) => base.push(x),
                None => return Ok(false),
            }
        }
        let trivial = self.truncate(0);
        let fac = F::factor_in_tower(&trivial, &PolyRing::new(trivial.clone()).poly(base), limits)?;
        Ok(fac.is_irreducible())
    }

    /// Adjoins a root of a base-field polynomial.
    pub fn adjoin_base_root(
        &self,
        m: &Poly<F::Elem>,
        label: &str,
    ) -> Result<(Tower<F>, TowerElem<F::Elem>)> {
        let lifted = self.lift_poly(m);
        self.adjoin_root(&lifted, label)
    }

    /// A primitive element of the whole tower with its minimal polynomial.
    ///
    /// Level by level, `γ_k = γ_(k-1) + c·α_k` for the first integer `c` in
    /// `0, 1, -1, 2, -2, …` that gives full degree; over a finite base the
    /// search falls back to enumerating elements.
    pub fn primitive(&self) -> Result<Arc<Primitive<F>>> {
        self.primitive_at(self.levels.len())
    }

    fn primitive_at(&self, k: usize) -> Result<Arc<Primitive<F>>> {
        if k == 0 {
            let t = self.truncate(0);
            let prim = t
                .make_primitive(t.zero(), Some(Vec::new()))
                .ok_or_else(|| Error::internal("base primitive"))?;
            return Ok(Arc::new(prim));
        }
        if let Some(p) = self.levels[k - 1].primitive.get() {
            return Ok(p.clone());
        }
        let prev = self.primitive_at(k - 1)?;
        let t = self.truncate(k);
        let prev_gamma = t.embed(&prev.element);
        let alpha = t.generator(k);
        let mut found = None;
        let candidates: Vec<i64> = std::iter::once(0)
            .chain((1..=40).flat_map(|c| [c, -c]))
            .collect();
        let distinct = match t.base.characteristic() {
            0 => candidates.len(),
            p => (p as usize).min(candidates.len()),
        };
        for &c in candidates.iter().take(distinct) {
            let gamma = t.add(&prev_gamma, &t.scale_int(&alpha, c));
            let combination = prev.combination.as_ref().map(|v| {
                let mut v = v.clone();
                v.push(c);
                v
            });
            if let Some(p) = t.make_primitive(gamma, combination) {
                found = Some(p);
                break;
            }
        }
        if found.is_none() && t.base.characteristic() != 0 {
            found = F::exhaustive_primitive(&t);
        }
        let prim = Arc::new(found.ok_or(Error::SearchExhausted)?);
        let _ = self.levels[k - 1].primitive.set(prim.clone());
        Ok(self.levels[k - 1].primitive.get().unwrap().clone())
    }

    pub(crate) fn primitive_from_element(&self, e: TowerElem<F::Elem>) -> Option<Primitive<F>> {
        self.make_primitive(e, None)
    }

    /// Lifts a polynomial with base coefficients into `L[t]`.
    pub fn lift_poly(&self, f: &Poly<F::Elem>) -> Poly<TowerElem<F::Elem>> {
        let ring = PolyRing::new(self.clone());
        ring.poly(
            f.coeffs()
                .iter()
                .map(|c| self.from_base(c.clone()))
                .collect(),
        )
    }
}

fn add_assign<F: Field>(k: &F, acc: &mut [F::Elem], x: &[F::Elem]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = k.add(a, b);
    }
}

fn sub_assign<F: Field>(k: &F, acc: &mut [F::Elem], x: &[F::Elem]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = k.sub(a, b);
    }
}

impl<F: Field> Ring for Tower<F> {
    type Elem = TowerElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        TowerElem(vec![self.base.zero(); self.degree()])
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_base(self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TowerElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        )
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TowerElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TowerElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        )
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TowerElem(self.mul_level(self.levels.len(), &a.0, &b.0))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.iter().all(|x| self.base.is_zero(x))
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div(a, b)
    }
    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let c = self.base.from_i64(n);
        TowerElem(a.0.iter().map(|x| self.base.mul(x, &c)).collect())
    }
    fn render(&self, a: &Self::Elem) -> String {
        let mut out = String::new();
        for (idx, c) in a.0.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mono: Vec<String> = self
                .exponents(idx)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(l, &e)| {
                    let lab = &self.levels[l].label;
                    if e == 1 {
                        lab.clone()
                    } else {
                        format!("{lab}^{e}")
                    }
                })
                .collect();
            let s = self.base.render(c);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        for (x, y) in a.0.iter().zip(&b.0) {
            let o = self.base.cmp_elems(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl<F: Field> Field for Tower<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut rhs = vec![self.base.zero(); self.degree()];
        rhs[0] = self.base.one();
        if let Some(x) = self.solve_mul(a, &rhs) {
            return Some(TowerElem(x));
        }
        self.inv_level(self.levels.len(), &a.0).map(TowerElem)
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if let Some(x) = self.solve_mul(b, &a.0) {
            return Some(TowerElem(x));
        }
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

impl<F: FiniteField> FiniteField for Tower<F> {
    fn size(&self) -> u128 {
        (self.base.size()).pow(self.degree() as u32)
    }
    fn element(&self, mut index: u128) -> Self::Elem {
        let q = self.base.size();
        TowerElem(
            (0..self.degree())
                .map(|_| {
                    let d = index % q;
                    index /= q;
                    self.base.element(d)
                })
                .collect(),
        )
    }
    fn index_of(&self, a: &Self::Elem) -> u128 {
        let q = self.base.size();
        a.0.iter()
            .rev()
            .fold(0u128, |acc, x| acc * q + self.base.index_of(x))
    }
}
