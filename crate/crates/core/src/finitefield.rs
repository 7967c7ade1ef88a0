//! Finite fields `GF(p^n)`: construction, Frobenius, subfields,
//! multiplicative generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::factor_fp;
use crate::field::{pow_u128, FiniteField, PrimeField, Ring};
use crate::limits::Limits;
use crate::linalg;
use crate::numbers::{checked_pow, divisors, is_prime, pow_mod, prime_divisors};
use crate::poly::{Poly, PolyRing};
use crate::tower::{Tower, TowerElem};

pub type GfElem = TowerElem<u64>;

/// The least monic irreducible of degree `n` over `F_p` in the canonical
/// polynomial order.
pub fn find_irreducible(p: u64, n: usize) -> Result<Poly<u64>> {
    find_irreducible_with(p, n, &Limits::default())
}

pub fn find_irreducible_with(p: u64, n: usize, limits: &Limits) -> Result<Poly<u64>> {
    let k = PrimeField::checked(p)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let count = checked_pow(p, n as u32).unwrap_or(u128::MAX);
    if count > limits.element_budget {
        return Err(Error::Budget {
            what: "irreducible search".into(),
            needed: count,
            budget: limits.element_budget,
        });
    }
    for idx in 0..count {
        let f = crate::factor::monic_by_index(&k, n, idx);
        if factor_fp(&k, &f)?.is_irreducible() {
            return Ok(f);
        }
    }
    Err(Error::internal("no irreducible polynomial found"))
}

/// `GF(p^n) = F_p[t]/⟨modulus⟩`.
#[derive(Debug, Clone)]
pub struct GF {
    pub p: u64,
    pub n: usize,
    pub modulus: Poly<u64>,
    pub tower: Tower<PrimeField>,
}

#[derive(Debug, Clone)]
pub struct FfSubfield {
    pub m: usize,
    pub elements: Vec<GfElem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GfReport {
    pub p: u64,
    pub n: usize,
    pub modulus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subfield_orders: Option<Vec<u128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub frobenius_order: usize,
}

pub fn gf(p: u64, n: usize) -> Result<GF> {
    gf_with(p, n, &Limits::default())
}

pub fn gf_with(p: u64, n: usize, limits: &Limits) -> Result<GF> {
    let modulus = find_irreducible_with(p, n, limits)?;
    gf_from_modulus(p, modulus)
}

/// `GF(p^n)` from a caller-chosen irreducible of degree `n`.
pub fn gf_from_modulus(p: u64, modulus: Poly<u64>) -> Result<GF> {
    let k = PrimeField::checked(p)?;
    let n = modulus.deg().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if modulus.lc() != Some(&1) {
        return Err(Error::NotMonic);
    }
    if !factor_fp(&k, &modulus)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let base = Tower::new(k);
    let (tower, _) = base.adjoin_unchecked(base.lift_poly(&modulus), "a");
    Ok(GF {
        p,
        n,
        modulus,
        tower,
    })
}

impl GF {
    pub fn order(&self) -> u128 {
        self.tower.size()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The class of `t`.
    pub fn alpha(&self) -> GfElem {
        self.tower.generator(1)
    }

    pub fn element(&self, idx: u128) -> GfElem {
        self.tower.element(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.order()).map(|i| self.tower.element(i))
    }

    /// Element from the coefficients of a polynomial in `α`.
    pub fn from_poly(&self, c: &[i64]) -> GfElem {
        let k = self.tower.base();
        let ring = PolyRing::new(*k);
        let r = ring.rem(&ring.from_i64s(c), &self.modulus).unwrap();
        let mut v = r.into_coeffs();
        v.resize(self.n, 0);
        self.tower.from_coords(v).unwrap()
    }

    pub fn render(&self, x: &GfElem) -> String {
        self.tower.render(x)
    }

    pub fn frobenius(&self, x: &GfElem) -> GfElem {
        self.tower.pow(x, self.p)
    }

    /// Least `m ≥ 1` with `θ^m = id`; `θ` is determined by its value on `α`.
    pub fn frobenius_order(&self) -> usize {
        let a = self.alpha();
        let mut x = self.frobenius(&a);
        let mut m = 1;
        while x != a {
            x = self.frobenius(&x);
            m += 1;
        }
        m
    }

    /// Matrix of `θ^m` over the basis `1, α, …, α^(n-1)`, by columns.
    fn frobenius_power_matrix(&self, m: usize) -> Vec<Vec<u64>> {
        let cols: Vec<Vec<u64>> = (0..self.n)
            .map(|j| {
                let mut e = vec![0u64; self.n];
                e[j] = 1;
                let mut x = self.tower.from_coords(e).unwrap();
                for _ in 0..m {
                    x = self.frobenius(&x);
                }
                x.into_coords()
            })
            .collect();
        linalg::transpose(&cols)
    }

    /// One subfield per divisor `m | n`, as the fixed points of `θ^m`.
    pub fn subfields(&self) -> Result<Vec<FfSubfield>> {
        self.subfields_with(&Limits::default())
    }

    pub fn subfields_with(&self, limits: &Limits) -> Result<Vec<FfSubfield>> {
        if self.order() > limits.element_budget {
            return Err(Error::Budget {
                what: "subfield enumeration".into(),
                needed: self.order(),
                budget: limits.element_budget,
            });
        }
        let k = self.tower.base();
        let mut out = Vec::new();
        for m in divisors(self.n as u64) {
            let m = m as usize;
            let mut a = self.frobenius_power_matrix(m);
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = k.sub(&row[i], &1);
            }
            let basis = linalg::kernel(k, &a, self.n);
            let size = checked_pow(self.p, basis.len() as u32).unwrap();
            let elements = (0..size)
                .map(|mut idx| {
                    let mut v = vec![0u64; self.n];
                    for b in &basis {
                        let c = (idx % self.p as u128) as u64;
                        idx /= self.p as u128;
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = k.add(x, &k.mul(&c, y));
                        }
                    }
                    self.tower.from_coords(v).unwrap()
                })
                .collect();
            out.push(FfSubfield { m, elements });
        }
        Ok(out)
    }

    pub fn multiplicative_order(&self, x: &GfElem) -> Option<u128> {
        if self.tower.is_zero(x) {
            return None;
        }
        let mut ord = self.order() - 1;
        for q in prime_divisors_u128(ord) {
            while ord.is_multiple_of(q) && self.tower.is_one(&pow_u128(&self.tower, x, ord / q)) {
                ord /= q;
            }
        }
        Some(ord)
    }

    /// True iff `x^((q-1)/r) ≠ 1` for every prime `r | q - 1`.
    pub fn is_generator(&self, x: &GfElem) -> bool {
        if self.tower.is_zero(x) {
            return false;
        }
        let e = self.order() - 1;
        prime_divisors_u128(e)
            .into_iter()
            .all(|r| !self.tower.is_one(&pow_u128(&self.tower, x, e / r)))
    }

    /// First generator of `GF(p^n)^×` in element order.
    pub fn multiplicative_generator(&self) -> GfElem {
        (1..self.order())
            .map(|i| self.element(i))
            .find(|x| self.is_generator(x))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// The unique `y` with `y^p = x`, namely `x^(p^(n-1))`.
    pub fn unique_pth_root(&self, x: &GfElem) -> GfElem {
        let mut y = x.clone();
        for _ in 1..self.n {
            y = self.frobenius(&y);
        }
        y
    }

    pub fn report(&self, with_subfields: bool, with_generator: bool) -> Result<GfReport> {
        let ring = PolyRing::new(*self.tower.base());
        Ok(GfReport {
            p: self.p,
            n: self.n,
            modulus: ring.render(&self.modulus, "t"),
            subfield_orders: if with_subfields {
                Some(
                    self.subfields()?
                        .iter()
                        .map(|s| s.elements.len() as u128)
                        .collect(),
                )
            } else {
                None
            },
            generator: with_generator.then(|| self.render(&self.multiplicative_generator())),
            frobenius_order: self.frobenius_order(),
        })
    }
}

fn prime_divisors_u128(n: u128) -> Vec<u128> {
    match u64::try_from(n) {
        Ok(m) if m > 1 => prime_divisors(m)
            .unwrap_or_default()
            .into_iter()
            .map(u128::from)
            .collect(),
        _ => Vec::new(),
    }
}

/// Is `a` a generator of `F_p^×`?
pub fn is_primitive_root(a: i64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(false);
    }
    let e = p - 1;
    Ok(prime_divisors(e)?
        .into_iter()
        .all(|q| pow_mod(a, e / q, p) != 1))
}

/// `Gal(F_(p^n) : F_(p^m)) = ⟨θ^m⟩ ≅ C_(n/m)`.
#[derive(Debug, Clone, Serialize)]
pub struct FfGalois {
    pub order: usize,
    pub generator_power: usize,
    pub type_name: String,
    /// Exponents `k` of the members `θ^k`.
    pub powers: Vec<usize>,
}

pub fn gal_ff(p: u64, n: usize, m: usize) -> Result<FfGalois> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n });
    }
    let order = n / m;
    Ok(FfGalois {
        order,
        generator_power: m,
        type_name: format!("C{order}"),
        powers: (0..order).map(|j| (j * m) % n).collect(),
    })
}

impl GF {
    /// Realizes `Gal(GF(p^n) : GF(p^m))` as maps on `α` and checks that it is
    /// cyclic of order `n/m` fixing the order-`p^m` subfield.
    pub fn realize_gal(&self, m: usize) -> Result<Vec<GfElem>> {
        let g = gal_ff(self.p, self.n, m)?;
        let a = self.alpha();
        let mut images = Vec::new();
        for &k in &g.powers {
            let mut x = a.clone();
            for _ in 0..k {
                x = self.frobenius(&x);
            }
            images.push(x);
        }
        let mut distinct = images.clone();
        distinct.sort_by(|x, y| self.tower.cmp_elems(x, y));
        distinct.dedup();
        if distinct.len() != g.order {
            return Err(Error::internal("Frobenius powers are not distinct"));
        }
        Ok(images)
    }
}
