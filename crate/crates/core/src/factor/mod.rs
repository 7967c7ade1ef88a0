//! Factorization and irreducibility.
//!
//! * `fp`: Berlekamp-free factoring over finite fields (squarefree,
//!   distinct-degree, Cantor–Zassenhaus) plus the exhaustive baseline.
//! * `rational`: Zassenhaus over `Q` with multifactor Hensel lifting.
//! * `certificate`: re-checkable irreducibility witnesses.
//! * `extension`: Trager's norm method over towers of number fields.

mod certificate;
mod extension;
mod fp;
mod hensel;
mod rational;

use crate::error::Result;
use crate::field::{Field, PrimeField, Rationals, Ring};
use crate::limits::Limits;
use crate::poly::{Poly, PolyRing};
use crate::tower::{Primitive, Tower, TowerElem};

pub use certificate::{
    cyclotomic_p, eisenstein, is_irreducible_q, is_irreducible_q_with, mod_p_certificate,
    rational_roots, verify_certificate, CertificateReport, IrreducibilityCertificate, Verdict,
    Witness, WitnessValue,
};
pub use extension::factor_over_extension;
pub(crate) use fp::monic_by_index;
pub use fp::{factor_ff, factor_fp, factor_fp_trial, roots_ff, roots_fp};
pub use rational::{factor_q, factor_q_with};

/// `unit · Π factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, usize)>,
}

impl<E: Clone + PartialEq> Factorization<E> {
    /// Multiplies everything back out.
    pub fn expand<R: Ring<Elem = E>>(&self, ring: &PolyRing<R>) -> Poly<E> {
        let mut acc = ring.constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = ring.mul(&acc, &ring.pow(f, *m as u64));
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.deg().unwrap_or(0), *m))
            .collect();
        d.sort_unstable();
        d
    }
}

/// Sorts factors into the canonical order and merges repeated entries.
pub(crate) fn canonicalize<R: Ring>(ring: &PolyRing<R>, factors: &mut Vec<(Poly<R::Elem>, usize)>) {
    factors.sort_by(|a, b| ring.cmp_polys(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(Poly<R::Elem>, usize)> = Vec::with_capacity(factors.len());
    for (f, m) in factors.drain(..) {
        match merged.last_mut() {
            Some((g, k)) if *g == f => *k += m,
            _ => merged.push((f, m)),
        }
    }
    *factors = merged;
}

/// Base fields over which towers can factor polynomials.
pub trait TowerBase: Field {
    /// Complete factorization of `f` over the tower.
    fn factor_in_tower(
        tower: &Tower<Self>,
        f: &Poly<TowerElem<Self::Elem>>,
        limits: &Limits,
    ) -> Result<Factorization<TowerElem<Self::Elem>>>;

    /// Fallback primitive element search by enumeration (finite bases only).
    fn exhaustive_primitive(tower: &Tower<Self>) -> Option<Primitive<Self>>;
}

impl TowerBase for Rationals {
    fn factor_in_tower(
        tower: &Tower<Self>,
        f: &Poly<TowerElem<Self::Elem>>,
        limits: &Limits,
    ) -> Result<Factorization<TowerElem<Self::Elem>>> {
        extension::factor_over_extension_with(f, tower, limits)
    }

    fn exhaustive_primitive(_tower: &Tower<Self>) -> Option<Primitive<Self>> {
        None
    }
}

impl TowerBase for PrimeField {
    fn factor_in_tower(
        tower: &Tower<Self>,
        f: &Poly<TowerElem<Self::Elem>>,
        _limits: &Limits,
    ) -> Result<Factorization<TowerElem<Self::Elem>>> {
        factor_ff(tower, f)
    }

    fn exhaustive_primitive(tower: &Tower<Self>) -> Option<Primitive<Self>> {
        use crate::field::FiniteField;
        let budget = Limits::default().element_budget;
        let size = tower.size().min(budget);
        (1..size).find_map(|i| tower.primitive_from_element(tower.element(i)))
    }
}
