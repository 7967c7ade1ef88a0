//! Splitting fields as explicit towers with every root written out.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{factor_ff, factor_fp, factor_q_with, roots_ff, TowerBase};
use crate::field::{Field, PrimeField, Rationals, Ring};
use crate::finitefield::find_irreducible_with;
use crate::limits::Limits;
use crate::linalg::{self, Echelon};
use crate::numbers::{checked_pow, lcm_u64, Rational};
use crate::poly::{Poly, PolyRing, QPoly};
use crate::tower::{LevelDescription, Tower, TowerElem};

/// `source = unit · Π (t − roots[i])^multiplicities[i]` inside `field[t]`.
#[derive(Debug, Clone)]
pub struct SplittingField<F: Field> {
    pub field: Tower<F>,
    pub roots: Vec<TowerElem<F::Elem>>,
    pub multiplicities: Vec<usize>,
    pub unit: F::Elem,
    pub source: Poly<F::Elem>,
}

/// A construction stopped by a cap, with the tower built so far.
#[derive(Debug, Clone)]
pub struct PartialSplitting {
    pub error: Error,
    pub partial: Tower<Rationals>,
    pub roots_found: Vec<TowerElem<Rational>>,
}

impl From<PartialSplitting> for Error {
    fn from(p: PartialSplitting) -> Error {
        p.error
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SplittingReport {
    pub degree: usize,
    pub tower: Vec<LevelDescription>,
    pub roots: Vec<String>,
    pub multiplicities: Vec<usize>,
}

impl<F: Field> SplittingField<F> {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Position of `x` in the root list.
    pub fn root_index(&self, x: &TowerElem<F::Elem>) -> Option<usize> {
        self.roots.iter().position(|r| r == x)
    }

    /// Index of the root equal to each tower generator, where there is one.
    pub fn generator_roots(&self) -> Vec<Option<usize>> {
        self.field
            .generators()
            .iter()
            .map(|g| self.root_index(g))
            .collect()
    }

    pub fn report(&self) -> SplittingReport {
        SplittingReport {
            degree: self.degree(),
            tower: self.field.describe(),
            roots: self.roots.iter().map(|r| self.field.render(r)).collect(),
            multiplicities: self.multiplicities.clone(),
        }
    }
}

/// Splitting field of `f ∈ Q[t]` under the default caps.
pub fn splitting_field_q(f: &QPoly) -> Result<SplittingField<Rationals>> {
    Ok(try_splitting_field_q(f, &Limits::default())?)
}

pub fn splitting_field_q_with(f: &QPoly, limits: &Limits) -> Result<SplittingField<Rationals>> {
    Ok(try_splitting_field_q(f, limits)?)
}

/// Like [`splitting_field_q_with`], but a cap failure keeps the partial tower.
pub fn try_splitting_field_q(
    f: &QPoly,
    limits: &Limits,
) -> std::result::Result<SplittingField<Rationals>, PartialSplitting> {
    let fail = |error: Error, tower: &Tower<Rationals>, roots: &[(TowerElem<Rational>, usize)]| {
        PartialSplitting {
            error,
            partial: tower.clone(),
            roots_found: roots.iter().map(|(r, _)| r.clone()).collect(),
        }
    };
    let base = Tower::new(Rationals);
    let fac = factor_q_with(f, limits).map_err(|e| fail(e, &base, &[]))?;
    let mut tower = base;
    let mut roots: Vec<(TowerElem<Rational>, usize)> = Vec::new();
    let mut pending: Vec<(Poly<TowerElem<Rational>>, usize)> = Vec::new();
    for (g, m) in &fac.factors {
        absorb(&tower, tower.lift_poly(g), *m, &mut roots, &mut pending);
    }
    while !pending.is_empty() {
        let ring = PolyRing::new(tower.clone());
        let pick = (0..pending.len())
            .min_by(|&i, &j| ring.cmp_polys(&pending[i].0, &pending[j].0))
            .unwrap();
        let (g, m) = pending.remove(pick);
        let d = g.deg().unwrap();
        let next = tower.degree() * d;
        if next > limits.splitting_cap {
            return Err(fail(
                Error::degree_cap("splitting field", next, limits.splitting_cap),
                &tower,
                &roots,
            ));
        }
        let label = format!("a{}", tower.num_levels() + 1);
        let (bigger, alpha) = tower.adjoin_unchecked(g.clone(), &label);
        let lift = |p: &Poly<TowerElem<Rational>>| -> Poly<TowerElem<Rational>> {
            PolyRing::new(bigger.clone()).poly(p.coeffs().iter().map(|c| bigger.embed(c)).collect())
        };
        let big_ring = PolyRing::new(bigger.clone());
        let cofactor = big_ring
            .div_exact_poly(&lift(&g), &big_ring.linear(&alpha))
            .ok_or_else(|| {
                fail(
                    Error::internal("adjoined root does not divide"),
                    &tower,
                    &roots,
                )
            })?;
        let mut rest: Vec<(Poly<TowerElem<Rational>>, usize)> = vec![(cofactor, m)];
        rest.extend(pending.drain(..).map(|(p, k)| (lift(&p), k)));
        for (r, _) in roots.iter_mut() {
            *r = bigger.embed(r);
        }
        roots.push((alpha, m));
        tower = bigger;
        for (p, k) in rest {
            if p.deg() == Some(0) {
                continue;
            }
            let fac = Rationals::factor_in_tower(&tower, &p, limits)
                .map_err(|e| fail(e, &tower, &roots))?;
            for (h, j) in fac.factors {
                absorb(&tower, h, k * j, &mut roots, &mut pending);
            }
        }
    }
    let unit = fac.unit.clone();
    Ok(finish(tower, roots, unit, f.clone()))
}

fn absorb<F: Field>(
    tower: &Tower<F>,
    g: Poly<TowerElem<F::Elem>>,
    m: usize,
    roots: &mut Vec<(TowerElem<F::Elem>, usize)>,
    pending: &mut Vec<(Poly<TowerElem<F::Elem>>, usize)>,
) {
    if g.deg() == Some(1) {
        let c = &g.coeffs()[0];
        roots.push((tower.neg(c), m));
    } else {
        pending.push((g, m));
    }
}

fn finish<F: Field>(
    field: Tower<F>,
    mut roots: Vec<(TowerElem<F::Elem>, usize)>,
    unit: F::Elem,
    source: Poly<F::Elem>,
) -> SplittingField<F> {
    let mut keyed: Vec<(usize, TowerElem<F::Elem>, usize)> = roots
        .drain(..)
        .map(|(r, m)| (field.element_degree(&r), r, m))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| field.cmp_elems(&a.1, &b.1)));
    SplittingField {
        roots: keyed.iter().map(|(_, r, _)| r.clone()).collect(),
        multiplicities: keyed.iter().map(|(_, _, m)| *m).collect(),
        field,
        unit,
        source,
    }
}

/// Splitting field of `f ∈ F_p[t]`: `GF(p^d)` with `d` the lcm of the
/// degrees of the irreducible factors, roots found by evaluation.
pub fn splitting_field_fp(k: &PrimeField, f: &Poly<u64>) -> Result<SplittingField<PrimeField>> {
    splitting_field_fp_with(k, f, &Limits::default())
}

pub fn splitting_field_fp_with(
    k: &PrimeField,
    f: &Poly<u64>,
    limits: &Limits,
) -> Result<SplittingField<PrimeField>> {
    let fac = factor_fp(k, f)?;
    let d = fac
        .factors
        .iter()
        .fold(1u64, |acc, (g, _)| lcm_u64(acc, g.deg().unwrap() as u64)) as usize;
    let p = k.modulus();
    let size = checked_pow(p, d as u32);
    if size.is_none_or(|s| s > limits.element_budget) {
        let mut cap = 0;
        while checked_pow(p, cap as u32 + 1).is_some_and(|s| s <= limits.element_budget) {
            cap += 1;
        }
        return Err(Error::degree_cap("splitting field over F_p", d, cap));
    }
    let base = Tower::new(*k);
    let tower = if d == 1 {
        base
    } else {
        let m = find_irreducible_with(p, d, limits)?;
        base.adjoin_unchecked(base.lift_poly(&m), "a").0
    };
    let lifted = tower.lift_poly(f);
    let ring = PolyRing::new(tower.clone());
    let mut roots = Vec::new();
    for r in roots_ff(&tower, &lifted)? {
        let lin = ring.linear(&r);
        let mut rest = lifted.clone();
        let mut mult = 0;
        while let Some(q) = ring.div_exact_poly(&rest, &lin) {
            rest = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    Ok(finish(tower, roots, fac.unit, f.clone()))
}

/// Splitting field over any finite prime-field tower by repeated factoring;
/// used to cross-check the direct construction.
pub fn splitting_field_ff_by_factoring(
    k: &PrimeField,
    f: &Poly<u64>,
) -> Result<SplittingField<PrimeField>> {
    let fac = factor_fp(k, f)?;
    let mut tower = Tower::new(*k);
    let mut roots = Vec::new();
    let mut pending = Vec::new();
    for (g, m) in &fac.factors {
        absorb(&tower, tower.lift_poly(g), *m, &mut roots, &mut pending);
    }
    while let Some((g, m)) = pending.pop() {
        let label = format!("a{}", tower.num_levels() + 1);
        let (bigger, _) = tower.adjoin_unchecked(g.clone(), &label);
        let lift = |p: &Poly<TowerElem<u64>>| {
            PolyRing::new(bigger.clone()).poly(p.coeffs().iter().map(|c| bigger.embed(c)).collect())
        };
        let mut rest = vec![(lift(&g), m)];
        rest.extend(pending.drain(..).map(|(p, k)| (lift(&p), k)));
        for (r, _) in roots.iter_mut() {
            *r = bigger.embed(r);
        }
        tower = bigger;
        for (p, j) in rest {
            for (h, i) in factor_ff(&tower, &p)?.factors {
                absorb(&tower, h, i * j, &mut roots, &mut pending);
            }
        }
    }
    Ok(finish(tower, roots, fac.unit, f.clone()))
}

/// Subspace spanned by all products of the given elements (the subring,
/// hence subfield, they generate).
pub fn generated_subspace<F: Field>(
    tower: &Tower<F>,
    gens: &[TowerElem<F::Elem>],
) -> Echelon<F::Elem> {
    let k = tower.base();
    let n = tower.degree();
    let mut basis = vec![tower.one()];
    let mut ech = linalg::rref(k, &[tower.one().coords().to_vec()], n);
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let x = tower.mul(&basis[i], g);
            if !linalg::in_span(k, &ech, x.coords()) {
                basis.push(x);
                let rows: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.coords().to_vec()).collect();
                ech = linalg::rref(k, &rows, n);
            }
        }
        i += 1;
    }
    ech
}

/// Re-multiplies the linear factors and checks that the roots generate the
/// whole tower.
pub fn verify_splits<F: Field>(sf: &SplittingField<F>) -> bool {
    let t = &sf.field;
    let ring = PolyRing::new(t.clone());
    if sf.roots.len() != sf.multiplicities.len() {
        return false;
    }
    let mut prod = ring.constant(t.from_base(sf.unit.clone()));
    for (r, m) in sf.roots.iter().zip(&sf.multiplicities) {
        prod = ring.mul(&prod, &ring.pow(&ring.linear(r), *m as u64));
    }
    let source = ring.poly(
        sf.source
            .coeffs()
            .iter()
            .map(|c| t.from_base(c.clone()))
            .collect(),
    );
    if prod != source {
        return false;
    }
    if sf.generator_roots().iter().all(Option::is_some) {
        return true;
    }
    generated_subspace(t, &sf.roots).rank() == t.degree()
}

/// Canonical comparison used for root order; exposed for tests.
pub fn cmp_roots<F: Field>(
    t: &Tower<F>,
    a: &TowerElem<F::Elem>,
    b: &TowerElem<F::Elem>,
) -> Ordering {
    t.element_degree(a)
        .cmp(&t.element_degree(b))
        .then_with(|| t.cmp_elems(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use crate::poly::{q_ring, qpoly};

    #[test]
    fn cube_root_of_two() {
        let sf = splitting_field_q(&qpoly(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(sf.degree(), 6);
        assert_eq!(sf.roots.len(), 3);
        assert!(verify_splits(&sf));
        assert!(sf.generator_roots().iter().all(Option::is_some));
    }

    #[test]
    fn fourth_root_of_two() {
        let sf = splitting_field_q(&qpoly(&[-2, 0, 0, 0, 1])).unwrap();
        assert_eq!(sf.degree(), 8);
        assert_eq!(sf.roots.len(), 4);
        assert!(verify_splits(&sf));
    }

    #[test]
    fn already_split() {
        let f = q_ring().mul(&qpoly(&[-1, 1]), &qpoly(&[-2, 1]));
        let sf = splitting_field_q(&f).unwrap();
        assert_eq!(sf.degree(), 1);
        let t = &sf.field;
        assert_eq!(sf.roots, vec![t.from_base(rat(1)), t.from_base(rat(2))]);
        assert!(verify_splits(&sf));
    }

    #[test]
    fn double_root() {
        let sf = splitting_field_q(&qpoly(&[0, 0, 1])).unwrap();
        assert_eq!(sf.multiplicities, vec![2]);
        assert!(verify_splits(&sf));
    }

    #[test]
    fn repeated_irreducible_factor() {
        let f = q_ring().pow(&qpoly(&[-2, 0, 1]), 2);
        let sf = splitting_field_q(&f).unwrap();
        assert_eq!(sf.degree(), 2);
        assert_eq!(sf.multiplicities, vec![2, 2]);
        assert!(verify_splits(&sf));
    }

    #[test]
    fn non_minimal_tower_is_rejected() {
        let (t, a) = Tower::new(Rationals)
            .adjoin_base_root(&qpoly(&[-2, 0, 1]), "a")
            .unwrap();
        let (t, _) = t.adjoin_base_root(&qpoly(&[-5, 0, 1]), "b").unwrap();
        let a = t.embed(&a);
        let sf = SplittingField {
            roots: vec![t.neg(&a), a],
            multiplicities: vec![1, 1],
            unit: rat(1),
            source: qpoly(&[-2, 0, 1]),
            field: t,
        };
        assert!(!verify_splits(&sf));
    }

    #[test]
    fn cap_keeps_partial_tower() {
        let limits = Limits {
            splitting_cap: 4,
            ..Limits::default()
        };
        let err = try_splitting_field_q(&qpoly(&[-2, 0, 0, 1]), &limits).unwrap_err();
        assert!(matches!(err.error, Error::DegreeCap { .. }));
        assert_eq!(err.partial.degree(), 3);
        assert_eq!(err.roots_found.len(), 1);
    }

    #[test]
    fn finite_field_examples() {
        let f2 = PrimeField::new(2);
        let sf = splitting_field_fp(&f2, &PolyRing::new(f2).from_i64s(&[1, 1, 1])).unwrap();
        assert_eq!(sf.degree(), 2);
        assert_eq!(sf.roots.len(), 2);
        assert!(verify_splits(&sf));

        let f3 = PrimeField::new(3);
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        let sf = splitting_field_fp(&f3, &PolyRing::new(f3).from_i64s(&c)).unwrap();
        assert_eq!(sf.degree(), 2);
        assert_eq!(sf.roots.len(), 9);
        assert!(verify_splits(&sf));

        let f7 = PrimeField::new(7);
        let sf = splitting_field_fp(&f7, &PolyRing::new(f7).from_i64s(&[-2, 0, 1])).unwrap();
        assert_eq!(sf.degree(), 1);
        assert_eq!(sf.roots.len(), 2);
    }

    #[test]
    fn factoring_route_agrees_on_degree() {
        let f5 = PrimeField::new(5);
        let r = PolyRing::new(f5);
        let f = r.mul(&r.from_i64s(&[2, 0, 1]), &r.from_i64s(&[1, 1, 0, 1]));
        let a = splitting_field_fp(&f5, &f).unwrap();
        let b = splitting_field_ff_by_factoring(&f5, &f).unwrap();
        assert_eq!(a.degree(), b.degree());
        assert_eq!(a.roots.len(), b.roots.len());
        assert!(verify_splits(&b));
    }
}
