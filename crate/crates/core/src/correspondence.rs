//! Fixed fields, groups over intermediate fields, and the checks that the
//! two maps are mutually inverse.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::galois::GaloisGroup;
use crate::group::{GroupTable, Subgroup};
use crate::limits::Limits;
use crate::linalg::{self, Echelon};
use crate::poly::{Poly, PolyRing};
use crate::splitting::generated_subspace;
use crate::tower::{Tower, TowerElem};

/// An intermediate field as a subspace of the flattened coordinates.
#[derive(Debug, Clone)]
pub struct Subfield<F: Field> {
    pub basis: Echelon<F::Elem>,
    pub primitive: TowerElem<F::Elem>,
    pub min_poly: Poly<F::Elem>,
}

impl<F: Field> PartialEq for Subfield<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl<F: Field> Subfield<F> {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, tower: &Tower<F>, x: &TowerElem<F::Elem>) -> bool {
        linalg::in_span(tower.base(), &self.basis, x.coords())
    }

    pub fn is_subfield_of(&self, tower: &Tower<F>, other: &Subfield<F>) -> bool {
        self.basis
            .rows
            .iter()
            .all(|r| linalg::in_span(tower.base(), &other.basis, r))
    }

    pub fn basis_elements(&self) -> Vec<TowerElem<F::Elem>> {
        self.basis
            .rows
            .iter()
            .map(|r| TowerElem(r.clone()))
            .collect()
    }
}

/// Wraps a subspace known to be a subfield, finding a primitive element.
pub fn subfield_from_basis<F: Field>(
    tower: &Tower<F>,
    basis: Echelon<F::Elem>,
) -> Result<Subfield<F>> {
    let dim = basis.rank();
    let elem = |v: &[F::Elem]| TowerElem(v.to_vec());
    let k = tower.base();
    let check = |x: TowerElem<F::Elem>| -> Option<(TowerElem<F::Elem>, Poly<F::Elem>)> {
        let m = tower.min_poly(&x);
        (m.deg() == Some(dim)).then_some((x, m))
    };
    for row in &basis.rows {
        if let Some((x, m)) = check(elem(row)) {
            return Ok(Subfield {
                basis,
                primitive: x,
                min_poly: m,
            });
        }
    }
    // Σ c^i b_i for c = 1, 2, …; in characteristic 0 only finitely many fail
    let tries = match k.characteristic() {
        0 => (dim * dim + 2) as i64,
        p => (p as i64 - 1).min(64),
    };
    for c in 1..=tries {
        let mut x = vec![k.zero(); tower.degree()];
        let mut w = k.one();
        for row in &basis.rows {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi = k.add(xi, &k.mul(&w, ri));
            }
            w = k.mul(&w, &k.from_i64(c));
        }
        if let Some((x, m)) = check(TowerElem(x)) {
            return Ok(Subfield {
                basis,
                primitive: x,
                min_poly: m,
            });
        }
    }
    if k.characteristic() != 0 {
        // enumerate the subspace over the prime field
        let p = k.characteristic();
        let total = crate::numbers::checked_pow(p, dim as u32).unwrap_or(u128::MAX);
        let budget = Limits::default().element_budget;
        for mut idx in 1..total.min(budget) {
            let mut x = vec![k.zero(); tower.degree()];
            for row in &basis.rows {
                let c = k.from_i64((idx % p as u128) as i64);
                idx /= p as u128;
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi = k.add(xi, &k.mul(&c, ri));
                }
            }
            if let Some((x, m)) = check(TowerElem(x)) {
                return Ok(Subfield {
                    basis,
                    primitive: x,
                    min_poly: m,
                });
            }
        }
    }
    Err(Error::SearchExhausted)
}

/// The subfield generated by the given elements.
pub fn subfield_generated<F: Field>(
    tower: &Tower<F>,
    elems: &[TowerElem<F::Elem>],
) -> Result<Subfield<F>> {
    subfield_from_basis(tower, generated_subspace(tower, elems))
}

/// `Fix(H)`: the common kernel of `g − 1` over `g ∈ H`.
pub fn fixed_field<F: Field>(h: &Subgroup, g: &GaloisGroup<F>) -> Result<Subfield<F>> {
    let t = g.field();
    let k = t.base();
    let n = t.degree();
    let mut rows = Vec::new();
    for &e in &h.members {
        let m = g.matrix(e);
        for (i, row) in m.iter().enumerate() {
            let mut r = row.clone();
            r[i] = k.sub(&r[i], &k.one());
            rows.push(r);
        }
    }
    let kernel = linalg::kernel(k, &rows, n);
    let basis = linalg::rref(k, &kernel, n);
    if basis.rank() * h.order() != n {
        return Err(Error::internal(format!(
            "fixed field of a subgroup of order {} has dimension {} in degree {}",
            h.order(),
            basis.rank(),
            n
        )));
    }
    subfield_from_basis(t, basis)
}

/// `Gal(M : L)`: the elements fixing `L` pointwise.
pub fn gal_over<F: Field>(l: &Subfield<F>, g: &GaloisGroup<F>) -> Subgroup {
    let members = (0..g.order())
        .filter(|&e| l.basis.rows.iter().all(|b| g.apply_linear(e, b) == *b))
        .collect();
    Subgroup { members }
}

/// `φ(L)` as a subspace.
pub fn image<F: Field>(l: &Subfield<F>, e: usize, g: &GaloisGroup<F>) -> Echelon<F::Elem> {
    let t = g.field();
    let rows: Vec<Vec<F::Elem>> = l.basis.rows.iter().map(|b| g.apply_linear(e, b)).collect();
    linalg::rref(t.base(), &rows, t.degree())
}

/// `φ(L) = L` for every `φ ∈ G`.
pub fn is_normal_intermediate<F: Field>(l: &Subfield<F>, g: &GaloisGroup<F>) -> bool {
    (0..g.order()).all(|e| image(l, e, g) == l.basis)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub subfield_dim: usize,
    pub quotient_order: usize,
    pub quotient_type: String,
    pub restriction_count: usize,
    pub restriction_type: String,
    pub consistent: bool,
}

/// `G / Gal(M : L)` against the group of restrictions to `L`.
pub fn quotient_check<F: Field>(l: &Subfield<F>, g: &GaloisGroup<F>) -> Result<QuotientReport> {
    if !is_normal_intermediate(l, g) {
        return Err(Error::NotNormal);
    }
    let n = gal_over(l, g);
    let q = g.table.quotient(&n)?;
    let quotient_type = q.isomorphism_type()?;
    let restrictions = restriction_group(l, g)?;
    let restriction_type = restrictions.isomorphism_type()?;
    Ok(QuotientReport {
        subfield_dim: l.dim(),
        quotient_order: q.order(),
        restriction_count: restrictions.order(),
        consistent: q.order() == restrictions.order() && quotient_type == restriction_type,
        quotient_type,
        restriction_type,
    })
}

/// The distinct restrictions `φ|_L` composed as matrices in `L`'s basis.
fn restriction_group<F: Field>(l: &Subfield<F>, g: &GaloisGroup<F>) -> Result<GroupTable> {
    let k = g.field().base();
    let mut mats: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for e in 0..g.order() {
        let cols: Vec<Vec<F::Elem>> = l
            .basis
            .rows
            .iter()
            .map(|b| {
                linalg::coordinates(k, &l.basis, &g.apply_linear(e, b))
                    .ok_or_else(|| Error::internal("restriction leaves the subfield"))
            })
            .collect::<Result<_>>()?;
        let m = linalg::transpose(&cols);
        if !mats.contains(&m) {
            mats.push(m);
        }
    }
    let table = mats
        .iter()
        .map(|a| {
            mats.iter()
                .map(|b| {
                    let c = linalg::mat_mul(k, a, b);
                    mats.iter()
                        .position(|m| *m == c)
                        .ok_or_else(|| Error::internal("restrictions not closed"))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GroupTable::new(table)
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedFieldInfo {
    pub dim: usize,
    pub primitive: String,
    pub primitive_min_poly: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeEntry {
    pub subgroup: Vec<String>,
    pub order: usize,
    pub normal: bool,
    pub fixed_field: FixedFieldInfo,
    pub gal_over_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub degree: usize,
    pub lattice: Vec<LatticeEntry>,
    pub mutual_inverse: bool,
    pub degree_order_duality: bool,
    pub order_reversing: bool,
    pub unit_laws: bool,
    pub conjugation_covariant: bool,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.mutual_inverse
            && self.degree_order_duality
            && self.order_reversing
            && self.unit_laws
            && self.conjugation_covariant
            && self.lattice.iter().all(|e| e.gal_over_matches)
    }
}

/// Runs both legs of the correspondence over the whole subgroup lattice.
pub fn verify_correspondence<F: Field>(g: &GaloisGroup<F>) -> Result<CorrespondenceReport> {
    verify_correspondence_with(g, &Limits::default())
}

pub fn verify_correspondence_with<F: Field>(
    g: &GaloisGroup<F>,
    limits: &Limits,
) -> Result<CorrespondenceReport> {
    let t = g.field();
    let n = t.degree();
    let subs = g.subgroups_with(limits)?;
    let mut fix: BTreeMap<Vec<usize>, Subfield<F>> = BTreeMap::new();
    for h in &subs {
        fix.insert(h.members.clone(), fixed_field(h, g)?);
    }
    let ring = PolyRing::new(t.base().clone());
    let mut lattice = Vec::new();
    let mut mutual = true;
    let mut duality = true;
    let mut unit = true;
    for h in &subs {
        let f = &fix[&h.members];
        let back = gal_over(f, g);
        let matches = back == *h;
        // L = Fix(H) must be recovered from Gal(M : L)
        let again = fixed_field(&back, g)?;
        mutual &= matches && again == *f;
        duality &= h.order() * f.dim() == n;
        unit &= h.is_subset_of(&back) && f.is_subfield_of(t, &again);
        lattice.push(LatticeEntry {
            subgroup: h.members.iter().map(|&e| g.cycles(e)).collect(),
            order: h.order(),
            normal: g.is_normal_subgroup(h)?,
            fixed_field: FixedFieldInfo {
                dim: f.dim(),
                primitive: t.render(&f.primitive),
                primitive_min_poly: ring.render(&f.min_poly, "t"),
            },
            gal_over_matches: matches,
        });
    }
    let mut reversing = true;
    for a in &subs {
        for b in &subs {
            if a.is_subset_of(b) {
                let (fa, fb) = (&fix[&a.members], &fix[&b.members]);
                reversing &= fb.is_subfield_of(t, fa);
                reversing &= gal_over(fa, g).is_subset_of(&gal_over(fb, g));
            }
        }
    }
    let mut covariant = true;
    for h in &subs {
        for e in 0..g.order() {
            let conj = Subgroup {
                members: {
                    let mut m: Vec<usize> =
                        h.members.iter().map(|&x| g.table.conjugate(e, x)).collect();
                    m.sort_unstable();
                    m
                },
            };
            let lhs = match fix.get(&conj.members) {
                Some(s) => s.basis.clone(),
                None => fixed_field(&conj, g)?.basis,
            };
            covariant &= lhs == image(&fix[&h.members], e, g);
        }
    }
    Ok(CorrespondenceReport {
        degree: n,
        lattice,
        mutual_inverse: mutual,
        degree_order_duality: duality,
        order_reversing: reversing,
        unit_laws: unit,
        conjugation_covariant: covariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::galois::automorphisms;
    use crate::poly::{q_ring, qpoly};
    use crate::splitting::splitting_field_q;

    fn gal(f: &crate::poly::QPoly) -> GaloisGroup<Rationals> {
        automorphisms(&splitting_field_q(f).unwrap()).unwrap()
    }

    #[test]
    fn fourth_root_two_lattice() {
        let g = gal(&qpoly(&[-2, 0, 0, 0, 1]));
        let report = verify_correspondence(&g).unwrap();
        assert!(report.passed());
        assert_eq!(report.lattice.len(), 10);
        let dims: Vec<usize> = report.lattice.iter().map(|e| e.fixed_field.dim).collect();
        assert_eq!(dims, vec![8, 4, 4, 4, 4, 4, 2, 2, 2, 1]);
        assert_eq!(report.lattice.iter().filter(|e| e.normal).count(), 6);
    }

    #[test]
    fn fixed_field_of_conjugation_is_real_radical_field() {
        let g = gal(&qpoly(&[-2, 0, 0, 0, 1]));
        let t = g.field().clone();
        let xi = t.generator(1);
        // an element of order 2 fixing ξ
        let kappa = (1..g.order())
            .find(|&e| g.table.element_order(e) == 2 && g.apply(e, &xi).unwrap() == xi)
            .unwrap();
        let f = fixed_field(&g.table.generate(&[kappa]), &g).unwrap();
        assert_eq!(f.dim(), 4);
        assert!(f.contains(&t, &xi));
        assert_eq!(f.min_poly, qpoly(&[-2, 0, 0, 0, 1]));
        let whole = fixed_field(&g.table.whole(), &g).unwrap();
        assert_eq!(whole.dim(), 1);
    }

    #[test]
    fn quotients() {
        let g = gal(&qpoly(&[-2, 0, 0, 1]));
        let t = g.field().clone();
        let (a, b) = (t.generator(1), t.generator(2));
        let omega = t.div(&b, &a).unwrap();
        let l = subfield_generated(&t, &[omega]).unwrap();
        assert_eq!(l.dim(), 2);
        assert_eq!(gal_over(&l, &g).order(), 3);
        let q = quotient_check(&l, &g).unwrap();
        assert!(q.consistent);
        assert_eq!(q.quotient_type, "C2");
        let cube = subfield_generated(&t, &[a]).unwrap();
        assert!(!is_normal_intermediate(&cube, &g));
        assert!(matches!(quotient_check(&cube, &g), Err(Error::NotNormal)));
    }

    #[test]
    fn klein_lattice() {
        let f = q_ring().mul(&qpoly(&[1, 0, 1]), &qpoly(&[-2, 0, 1]));
        let report = verify_correspondence(&gal(&f)).unwrap();
        assert!(report.passed());
        assert_eq!(report.lattice.len(), 5);
    }
}
