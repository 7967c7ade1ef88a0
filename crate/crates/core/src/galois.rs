//! Galois groups of splitting fields as explicit automorphisms.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::group::{self, GroupTable, Subgroup};
use crate::limits::Limits;
use crate::poly::PolyRing;
use crate::splitting::SplittingField;
use crate::tower::{Tower, TowerElem};

/// An automorphism of the splitting field, fixed by the images of the
/// tower generators.
#[derive(Debug)]
pub struct Automorphism<F: Field> {
    pub generator_images: Vec<TowerElem<F::Elem>>,
    pub root_perm: Vec<usize>,
    matrix: OnceLock<Vec<Vec<F::Elem>>>,
}

impl<F: Field> Clone for Automorphism<F> {
    fn clone(&self) -> Self {
        Automorphism {
            generator_images: self.generator_images.clone(),
            root_perm: self.root_perm.clone(),
            matrix: self.matrix.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaloisGroup<F: Field> {
    pub splitting: SplittingField<F>,
    pub elements: Vec<Automorphism<F>>,
    pub table: GroupTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisReport {
    pub order: usize,
    #[serde(rename = "type")]
    pub type_name: String,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
    pub action: Vec<String>,
}

/// Applies generator images to the flattened coordinates of an element of
/// the first `k` levels.
fn substitute<F: Field>(
    tower: &Tower<F>,
    images: &[TowerElem<F::Elem>],
    k: usize,
    coords: &[F::Elem],
) -> TowerElem<F::Elem> {
    if k == 0 {
        return tower.from_base(coords[0].clone());
    }
    let below = tower.truncate(k - 1).degree();
    let d = tower.level_degree(k);
    let img = &images[k - 1];
    let mut acc = tower.zero();
    for j in (0..d).rev() {
        acc = tower.mul(&acc, img);
        let chunk = &coords[j * below..(j + 1) * below];
        acc = tower.add(&acc, &substitute(tower, images, k - 1, chunk));
    }
    acc
}

/// Candidate images for generator `k`: roots of the image of its minimal
/// polynomial among `pool`.
fn images_for_level<F: Field>(
    tower: &Tower<F>,
    partial: &[TowerElem<F::Elem>],
    k: usize,
    pool: &[TowerElem<F::Elem>],
) -> Vec<TowerElem<F::Elem>> {
    let m = tower.level_min_poly(k);
    let ring = PolyRing::new(tower.clone());
    let mapped = ring.poly(
        m.coeffs()
            .iter()
            .map(|c| substitute(tower, partial, k - 1, c.coords()))
            .collect(),
    );
    pool.iter()
        .filter(|r| tower.is_zero(&ring.eval(&mapped, r)))
        .cloned()
        .collect()
}

/// Frobenius orbit `x, x^p, x^(p^2), …` in characteristic `p`.
fn frobenius_orbit<F: Field>(tower: &Tower<F>, x: &TowerElem<F::Elem>) -> Vec<TowerElem<F::Elem>> {
    let p = tower.base().characteristic();
    let mut out = vec![x.clone()];
    let mut y = tower.pow(x, p);
    while y != *x {
        out.push(y.clone());
        y = tower.pow(&y, p);
    }
    out
}

/// Every automorphism of the splitting field over its base, found by
/// choosing generator images level by level.
pub fn automorphisms<F: Field>(sf: &SplittingField<F>) -> Result<GaloisGroup<F>> {
    let tower = &sf.field;
    let levels = tower.num_levels();
    let mut pools = Vec::with_capacity(levels);
    for g in tower.generators() {
        let mut pool = sf.roots.clone();
        if tower.base().characteristic() != 0 && sf.root_index(&g).is_none() {
            pool.extend(frobenius_orbit(tower, &g));
        }
        pools.push(pool);
    }
    let mut found: Vec<Vec<TowerElem<F::Elem>>> = Vec::new();
    let mut stack: Vec<Vec<TowerElem<F::Elem>>> = vec![Vec::new()];
    while let Some(partial) = stack.pop() {
        let k = partial.len();
        if k == levels {
            found.push(partial);
            continue;
        }
        let mut cands = images_for_level(tower, &partial, k + 1, &pools[k]);
        cands.sort_by(|a, b| tower.cmp_elems(a, b));
        cands.dedup();
        for c in cands.into_iter().rev() {
            let mut next = partial.clone();
            next.push(c);
            stack.push(next);
        }
    }
    let mut elements = Vec::with_capacity(found.len());
    for images in found {
        let mut perm = Vec::with_capacity(sf.roots.len());
        for r in &sf.roots {
            let y = substitute(tower, &images, levels, r.coords());
            perm.push(
                sf.root_index(&y)
                    .ok_or_else(|| Error::internal("automorphism does not permute the roots"))?,
            );
        }
        elements.push(Automorphism {
            generator_images: images,
            root_perm: perm,
            matrix: OnceLock::new(),
        });
    }
    if elements.len() != tower.degree() {
        return Err(Error::internal(format!(
            "found {} automorphisms of a degree {} extension",
            elements.len(),
            tower.degree()
        )));
    }
    elements.sort_by(|a, b| a.root_perm.cmp(&b.root_perm));
    if elements
        .windows(2)
        .any(|w| w[0].root_perm == w[1].root_perm)
    {
        return Err(Error::internal("root action is not faithful"));
    }
    let perms: Vec<Vec<usize>> = elements.iter().map(|e| e.root_perm.clone()).collect();
    let table = GroupTable::from_perms(&perms)?;
    Ok(GaloisGroup {
        splitting: sf.clone(),
        elements,
        table,
    })
}

impl<F: Field> GaloisGroup<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn field(&self) -> &Tower<F> {
        &self.splitting.field
    }

    pub fn perms(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|e| e.root_perm.clone()).collect()
    }

    /// `φ(x)` by substituting generator images.
    pub fn apply(&self, g: usize, x: &TowerElem<F::Elem>) -> Result<TowerElem<F::Elem>> {
        let t = self.field();
        if x.coords().len() != t.degree() {
            return Err(Error::TowerMismatch);
        }
        Ok(substitute(
            t,
            &self.elements[g].generator_images,
            t.num_levels(),
            x.coords(),
        ))
    }

    /// Matrix of element `g` on the flattened basis, columns = images of basis vectors.
    pub fn matrix(&self, g: usize) -> &Vec<Vec<F::Elem>> {
        self.elements[g].matrix.get_or_init(|| {
            let t = self.field();
            let n = t.degree();
            let k = t.base();
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .map(|j| {
                    let mut e = vec![k.zero(); n];
                    e[j] = k.one();
                    substitute(t, &self.elements[g].generator_images, t.num_levels(), &e)
                        .into_coords()
                })
                .collect();
            crate::linalg::transpose(&cols)
        })
    }

    /// `φ(x)` through the cached matrix.
    pub fn apply_linear(&self, g: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        crate::linalg::mat_vec(self.field().base(), self.matrix(g), x)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        group::orbits(&self.perms(), self.splitting.roots.len())
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.splitting.roots.len();
        n == 0 || self.orbits().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_abelian()
    }

    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        self.subgroups_with(&Limits::default())
    }

    pub fn subgroups_with(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        self.table.subgroups(limits)
    }

    pub fn is_normal_subgroup(&self, h: &Subgroup) -> Result<bool> {
        self.table.is_normal_subgroup(h)
    }

    pub fn derived_series(&self) -> Result<Vec<Subgroup>> {
        self.table.derived_series(&Limits::default())
    }

    pub fn is_solvable(&self) -> Result<bool> {
        self.table.is_solvable(&Limits::default())
    }

    pub fn is_solvable_with(&self, limits: &Limits) -> Result<bool> {
        self.table.is_solvable(limits)
    }

    /// Type name; a transitive group of order 3 on 3 roots is reported as A3.
    pub fn isomorphism_type(&self) -> Result<String> {
        let name = self.table.isomorphism_type()?;
        if name == "C3" && self.splitting.roots.len() == 3 && self.is_transitive() {
            return Ok("A3".to_string());
        }
        Ok(name)
    }

    /// Index of the element with the given root permutation.
    pub fn find(&self, perm: &[usize]) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.root_perm.as_slice().cmp(perm))
            .ok()
    }

    /// A small generating set: greedily add elements outside the span.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.table.trivial();
        for g in 1..self.order() {
            if !span.contains(g) {
                gens.push(g);
                span = self.table.generate(&gens);
            }
        }
        gens
    }

    pub fn cycles(&self, g: usize) -> String {
        group::cycle_notation(&self.elements[g].root_perm)
    }

    pub fn report(&self) -> Result<GaloisReport> {
        let t = self.field();
        Ok(GaloisReport {
            order: self.order(),
            type_name: self.isomorphism_type()?,
            generators: self
                .generators()
                .into_iter()
                .map(|g| self.cycles(g))
                .collect(),
            elements: (0..self.order()).map(|g| self.cycles(g)).collect(),
            action: self.splitting.roots.iter().map(|r| t.render(r)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use crate::poly::{q_ring, qpoly};
    use crate::splitting::splitting_field_q;

    fn gal(c: &[i64]) -> GaloisGroup<crate::field::Rationals> {
        automorphisms(&splitting_field_q(&qpoly(c)).unwrap()).unwrap()
    }

    #[test]
    fn cube_root_two_is_s3() {
        let g = gal(&[-2, 0, 0, 1]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.isomorphism_type().unwrap(), "S3");
        assert!(g.is_transitive());
        assert!(g.is_solvable().unwrap());
    }

    #[test]
    fn klein_four() {
        let f = q_ring().mul(&qpoly(&[1, 0, 1]), &qpoly(&[-2, 0, 1]));
        let g = automorphisms(&splitting_field_q(&f).unwrap()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.isomorphism_type().unwrap(), "C2 x C2");
        assert!(!g.is_transitive());
        assert_eq!(g.orbits().len(), 2);
        assert!((1..4).all(|i| g.table.element_order(i) == 2));
    }

    #[test]
    fn cyclotomic_five() {
        let g = gal(&[1, 1, 1, 1, 1]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.isomorphism_type().unwrap(), "C4");
        // each automorphism sends ω to a power of ω
        let t = g.field();
        let w = t.generator(1);
        for e in 0..4 {
            let img = g.apply(e, &w).unwrap();
            assert!((1..5).any(|i| t.pow(&w, i) == img));
        }
    }

    #[test]
    fn fourth_root_two_is_d4() {
        let g = gal(&[-2, 0, 0, 0, 1]);
        assert_eq!(g.order(), 8);
        assert_eq!(g.isomorphism_type().unwrap(), "D4");
        assert_eq!(g.subgroups().unwrap().len(), 10);
    }

    #[test]
    fn conjugation_on_gaussian_field() {
        let g = gal(&[1, 0, 1]);
        let t = g.field();
        let i = t.generator(1);
        assert_eq!(g.apply(1, &i).unwrap(), t.neg(&i));
        assert_eq!(g.apply(0, &i).unwrap(), i);
        assert_eq!(
            g.apply(1, &t.from_base(rat(3))).unwrap(),
            t.from_base(rat(3))
        );
    }

    #[test]
    fn matrices_agree_with_substitution() {
        let g = gal(&[-2, 0, 0, 1]);
        let t = g.field();
        let x = t.add(&t.generator(1), &t.mul(&t.generator(2), &t.generator(1)));
        for e in 0..g.order() {
            assert_eq!(
                g.apply_linear(e, x.coords()),
                g.apply(e, &x).unwrap().into_coords()
            );
        }
    }

    #[test]
    fn rational_roots_are_fixed() {
        let f = q_ring().mul(&qpoly(&[-1, 1]), &qpoly(&[-2, 1]));
        let g = automorphisms(&splitting_field_q(&f).unwrap()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn finite_field_groups_are_cyclic() {
        use crate::field::PrimeField;
        use crate::splitting::splitting_field_fp;
        let k = PrimeField::new(2);
        let f = PolyRing::new(k).from_i64s(&[1, 1, 0, 0, 1]);
        let g = automorphisms(&splitting_field_fp(&k, &f).unwrap()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.isomorphism_type().unwrap(), "C4");
    }
}
