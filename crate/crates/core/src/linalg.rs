//! Exact linear algebra over a field: reduced row echelon form, kernels,
//! span membership, and an incremental dependency finder used for minimal
//! polynomials. Determinants over integral domains use Bareiss elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, PrimeField, Rationals, Ring};
use crate::numbers::{big_primes, rational_reconstruct, Rational};
use crate::poly::Poly;

pub type Vector<E> = Vec<E>;

/// Rows in reduced row echelon form, together with their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    pub rows: Vec<Vector<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Reduced row echelon form of the given rows (zero rows dropped).
pub fn rref<F: Field>(k: &F, rows: &[Vector<F::Elem>], ncols: usize) -> Echelon<F::Elem> {
    let mut m: Vec<Vector<F::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// Basis of `{x : A x = 0}` where `rows` are the rows of `A`.
pub fn kernel<F: Field>(k: &F, rows: &[Vector<F::Elem>], ncols: usize) -> Vec<Vector<F::Elem>> {
    let e = rref(k, rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![k.zero(); ncols];
            v[fc] = k.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = k.neg(&row[fc]);
            }
            v
        })
        .collect()
}

/// Reduces `v` against an echelon basis; returns the residue.
pub fn reduce<F: Field>(k: &F, basis: &Echelon<F::Elem>, v: &[F::Elem]) -> Vector<F::Elem> {
    let mut v = v.to_vec();
    for (row, &pc) in basis.rows.iter().zip(&basis.pivots) {
        if !k.is_zero(&v[pc]) {
            let f = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = k.sub(x, &k.mul(&f, r));
            }
        }
    }
    v
}

pub fn in_span<F: Field>(k: &F, basis: &Echelon<F::Elem>, v: &[F::Elem]) -> bool {
    reduce(k, basis, v).iter().all(|x| k.is_zero(x))
}

/// Coordinates of `v` in an echelon basis, if `v` lies in its span.
pub fn coordinates<F: Field>(
    k: &F,
    basis: &Echelon<F::Elem>,
    v: &[F::Elem],
) -> Option<Vector<F::Elem>> {
    let coords: Vec<F::Elem> = basis.pivots.iter().map(|&pc| v[pc].clone()).collect();
    let mut recon = vec![k.zero(); v.len()];
    for (c, row) in coords.iter().zip(&basis.rows) {
        for (x, r) in recon.iter_mut().zip(row) {
            *x = k.add(x, &k.mul(c, r));
        }
    }
    (recon == v).then_some(coords)
}

/// Matrix-vector product `A v` with `A` given by rows.
pub fn mat_vec<R: Ring>(k: &R, a: &[Vector<R::Elem>], v: &[R::Elem]) -> Vector<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
        })
        .collect()
}

pub fn mat_mul<R: Ring>(
    k: &R,
    a: &[Vector<R::Elem>],
    b: &[Vector<R::Elem>],
) -> Vec<Vector<R::Elem>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(k.zero(), |acc, (x, brow)| k.add(&acc, &k.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &[Vector<E>]) -> Vec<Vector<E>> {
    let n = a.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(k: &F, a: &[Vector<F::Elem>]) -> Option<Vec<Vector<F::Elem>>> {
    let n = a.len();
    let aug: Vec<Vector<F::Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    let e = rref(k, &aug, 2 * n);
    if e.rank() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a rational matrix from its images modulo word-sized primes.
///
/// Columns are scaled to integers; the adjugate and determinant of the
/// scaled matrix are recovered by CRT once the modulus exceeds twice the
/// Hadamard bound. `None` when the matrix is singular modulo the first prime,
/// which does not prove it singular over `Q`.
pub fn inverse_q_modular(a: &[Vector<Rational>]) -> Option<Vec<Vector<Rational>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let scale: Vec<BigInt> = (0..n)
        .map(|j| {
            a.iter()
                .fold(BigInt::one(), |acc, row| acc.lcm(row[j].denom()))
        })
        .collect();
    let b: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            row.iter()
                .zip(&scale)
                .map(|(x, d)| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    // log2 of Π max(1, ‖column‖₂) bounds the determinant and every cofactor
    let bits: u64 = (0..n)
        .map(|j| {
            let sq: BigInt = b.iter().map(|row| &row[j] * &row[j]).sum();
            sq.bits().div_ceil(2)
        })
        .sum::<u64>()
        + 2;
    let mut modulus = BigInt::one();
    let mut det = BigInt::zero();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for (i, p) in big_primes().enumerate() {
        if modulus.bits() > bits {
            break;
        }
        let k = PrimeField::new(p);
        let bp: Vec<Vec<u64>> = b
            .iter()
            .map(|row| row.iter().map(|x| k.reduce_int(x)).collect())
            .collect();
        let Some((inv, d)) = inverse_mod(&k, bp) else {
            if i == 0 {
                return None;
            }
            continue;
        };
        let minv = k.inv(&k.reduce_int(&modulus)).unwrap();
        let lift = |v: &mut BigInt, r: u64| {
            let delta = k.mul(&k.sub(&r, &k.reduce_int(v)), &minv);
            *v += &modulus * delta;
        };
        lift(&mut det, d);
        for (row, irow) in adj.iter_mut().zip(&inv) {
            for (v, x) in row.iter_mut().zip(irow) {
                lift(v, k.mul(x, &d));
            }
        }
        modulus *= p;
    }
    let half = &modulus >> 1;
    let sym = |v: BigInt| if v > half { v - &modulus } else { v };
    let det = sym(det);
    if det.is_zero() {
        return None;
    }
    Some(
        adj.into_iter()
            .zip(&scale)
            .map(|(row, d)| {
                row.into_iter()
                    .map(|v| Rational::new(sym(v) * d, det.clone()))
                    .collect()
            })
            .collect(),
    )
}

/// Solution of the nonsingular system `a·x = b` over `Q`, by rational
/// reconstruction from residues modulo word-sized primes. Candidates are
/// checked exactly, so a returned solution is always correct; `None` when
/// the system is singular or the reconstruction does not settle in time.
pub fn solve_q_modular(a: &[Vector<Rational>], b: &[Rational]) -> Option<Vector<Rational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    // clear denominators row by row
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let d = row
                .iter()
                .chain(std::iter::once(bi))
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let dq = Rational::from_integer(d);
            row.iter()
                .chain(std::iter::once(bi))
                .map(|x| (x * &dq).to_integer())
                .collect()
        })
        .collect();
    // Cramer bound on numerators and the common denominator
    let bits: u64 = (0..=n)
        .map(|j| {
            let sq: BigInt = rows.iter().map(|row| &row[j] * &row[j]).sum();
            sq.bits().div_ceil(2)
        })
        .sum::<u64>()
        + 2;
    let mut modulus = BigInt::one();
    let mut x = vec![BigInt::zero(); n];
    let mut used = 0usize;
    let mut singular = 0usize;
    let mut checkpoint = 1usize;
    for p in big_primes() {
        if modulus.bits() > 2 * bits + 2 {
            break;
        }
        let k = PrimeField::new(p);
        let m: Vec<Vec<u64>> = rows
            .iter()
            .map(|row| row.iter().map(|v| k.reduce_int(v)).collect())
            .collect();
        let Some(sol) = solve_mod(&k, m) else {
            singular += 1;
            if singular > 4 {
                return None;
            }
            continue;
        };
        let minv = k.inv(&k.reduce_int(&modulus)).unwrap();
        for (v, r) in x.iter_mut().zip(sol) {
            let delta = k.mul(&k.sub(&r, &k.reduce_int(v)), &minv);
            *v += &modulus * delta;
        }
        modulus *= p;
        used += 1;
        if used == checkpoint {
            checkpoint *= 2;
            let cand: Option<Vec<Rational>> = x
                .iter()
                .map(|v| rational_reconstruct(v, &modulus))
                .collect();
            if let Some(c) = cand {
                if mat_vec(&Rationals, a, &c) == b {
                    return Some(c);
                }
            }
        }
    }
    let cand: Vec<Rational> = x
        .iter()
        .map(|v| rational_reconstruct(v, &modulus))
        .collect::<Option<_>>()?;
    (mat_vec(&Rationals, a, &cand) == b).then_some(cand)
}

/// Gauss-Jordan solution of an augmented `n × (n+1)` system over `F_p`.
fn solve_mod(k: &PrimeField, mut m: Vec<Vec<u64>>) -> Option<Vec<u64>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(c, piv);
        let inv = k.inv(&m[c][c]).unwrap();
        for v in m[c].iter_mut() {
            *v = k.mul(v, &inv);
        }
        let prow = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&prow).skip(c) {
                *v = k.sub(v, &k.mul(&f, pv));
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Gauss-Jordan inverse and determinant over `F_p`.
fn inverse_mod(k: &PrimeField, mut m: Vec<Vec<u64>>) -> Option<(Vec<Vec<u64>>, u64)> {
    let n = m.len();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut det = 1u64;
    for c in 0..n {
        let pr = (c..n).find(|&i| m[i][c] != 0)?;
        if pr != c {
            m.swap(pr, c);
            inv.swap(pr, c);
            det = k.neg(&det);
        }
        det = k.mul(&det, &m[c][c]);
        let piv = k.inv(&m[c][c]).unwrap();
        for j in 0..n {
            m[c][j] = k.mul(&m[c][j], &piv);
            inv[c][j] = k.mul(&inv[c][j], &piv);
        }
        for i in 0..n {
            if i == c || m[i][c] == 0 {
                continue;
            }
            let f = m[i][c];
            for j in 0..n {
                let (mc, ic) = (m[c][j], inv[c][j]);
                m[i][j] = k.sub(&m[i][j], &k.mul(&f, &mc));
                inv[i][j] = k.sub(&inv[i][j], &k.mul(&f, &ic));
            }
        }
    }
    Some((inv, det))
}

/// Determinant by fraction-free Bareiss elimination; only exact divisions.
pub fn determinant<R: Ring>(k: &R, a: &[Vector<R::Elem>]) -> R::Elem {
    let n = a.len();
    if n == 0 {
        return k.one();
    }
    let mut m = a.to_vec();
    let mut sign_neg = false;
    let mut prev = k.one();
    for c in 0..n {
        if k.is_zero(&m[c][c]) {
            match (c + 1..n).find(|&i| !k.is_zero(&m[i][c])) {
                Some(i) => {
                    m.swap(c, i);
                    sign_neg = !sign_neg;
                }
                None => return k.zero(),
            }
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = k.sub(&k.mul(&m[c][c], &m[i][j]), &k.mul(&m[i][c], &m[c][j]));
                m[i][j] = k.div_exact(&t, &prev).expect("Bareiss division is exact");
            }
            m[i][c] = k.zero();
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        k.neg(&d)
    } else {
        d
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size `m + n`.
pub fn sylvester_matrix<R: Ring>(
    k: &R,
    f: &Poly<R::Elem>,
    g: &Poly<R::Elem>,
) -> Vec<Vector<R::Elem>> {
    let m = f.deg().unwrap_or(0);
    let n = g.deg().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![k.zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![k.zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

pub fn sylvester_determinant<R: Ring>(k: &R, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> R::Elem {
    determinant(k, &sylvester_matrix(k, f, g))
}

/// Finds the first linear dependency in a growing sequence of vectors.
///
/// Each pushed vector is reduced against the previous ones; the reduction
/// coefficients are tracked so that a dependency `Σ c_i v_i = 0` with
/// `c_last = 1` can be read off.
pub struct DependencyFinder<F: Field> {
    k: F,
    dim: usize,
    rows: Vec<(Vector<F::Elem>, Vector<F::Elem>, usize)>,
    count: usize,
}

impl<F: Field> DependencyFinder<F> {
    pub fn new(k: F, dim: usize) -> Self {
        DependencyFinder {
            k,
            dim,
            rows: Vec::new(),
            count: 0,
        }
    }

    /// Pushes `v`. Returns `Some(c)` with `Σ c_i v_i = 0` (over all pushed
    /// vectors, `c_last = 1`) if `v` depends on the earlier ones.
    pub fn push(&mut self, v: Vector<F::Elem>) -> Option<Vector<F::Elem>> {
        let k = &self.k;
        let idx = self.count;
        self.count += 1;
        let mut v = v;
        let mut comb = vec![k.zero(); self.count];
        comb[idx] = k.one();
        for (row, rcomb, pc) in &self.rows {
            if !k.is_zero(&v[*pc]) {
                let f = v[*pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
                for (x, r) in comb.iter_mut().zip(rcomb) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
            }
        }
        match v.iter().position(|x| !k.is_zero(x)) {
            None => Some(comb),
            Some(pc) => {
                let inv = k.inv(&v[pc]).unwrap();
                for x in v.iter_mut() {
                    *x = k.mul(x, &inv);
                }
                for x in comb.iter_mut() {
                    *x = k.mul(x, &inv);
                }
                self.rows.push((v, comb, pc));
                None
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Integers, Rationals};
    use crate::numbers::{rat, ratio};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<crate::numbers::Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn modular_inverse_matches_elimination(
            n in 1usize..6,
            entries in prop::collection::vec((-50i64..50, 1i64..9), 36),
        ) {
            let a: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (num, den) = entries[i * 6 + j];
                    ratio(num, den)
                }).collect())
                .collect();
            let exact = inverse(&Rationals, &a);
            if let Some(m) = inverse_q_modular(&a) { prop_assert_eq!(Some(m), exact) }
        }
    }

    proptest! {
        #[test]
        fn modular_solve_matches_inverse(
            entries in proptest::collection::vec((-30i64..30, 1i64..6), 16),
            rhs in proptest::collection::vec(-50i64..50, 4),
        ) {
            let a: Vec<Vec<_>> = entries
                .chunks(4)
                .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
                .collect();
            let b: Vec<_> = rhs.iter().map(|&x| rat(x)).collect();
            match inverse(&Rationals, &a) {
                Some(inv) => prop_assert_eq!(solve_q_modular(&a, &b), Some(mat_vec(&Rationals, &inv, &b))),
                None => prop_assert_eq!(solve_q_modular(&a, &b), None),
            }
        }
    }

    #[test]
    fn modular_inverse_of_singular_and_hilbert() {
        let sing = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(inverse_q_modular(&sing), None);
        let h: Vec<Vec<Rational>> = (0..8)
            .map(|i| (0..8).map(|j| ratio(1, i + j + 1)).collect())
            .collect();
        let inv = inverse_q_modular(&h).unwrap();
        assert_eq!(Some(inv.clone()), inverse(&Rationals, &h));
        assert_eq!(inv[0][0], rat(64));
    }

    #[test]
    fn rref_and_kernel() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = rref(&Rationals, &a, 3);
        assert_eq!(e.rank(), 2);
        let ker = kernel(&Rationals, &a, 3);
        assert_eq!(ker.len(), 1);
        assert!(mat_vec(&Rationals, &a, &ker[0])
            .iter()
            .all(|x| *x == rat(0)));
    }

    #[test]
    fn inverse_round_trip() {
        let a = qm(&[&[2, 1], &[5, 3]]);
        let inv = inverse(&Rationals, &a).unwrap();
        assert_eq!(mat_mul(&Rationals, &a, &inv), qm(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&Rationals, &qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn bareiss_determinant() {
        let a: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 0.into(), 1.into()],
            vec![1.into(), 3.into(), 2.into()],
            vec![1.into(), 1.into(), 2.into()],
        ];
        assert_eq!(determinant(&Integers, &a), BigInt::from(6));
        let z: Vec<Vec<BigInt>> = vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]];
        assert_eq!(determinant(&Integers, &z), BigInt::from(-1));
    }

    #[test]
    fn dependency_finder() {
        let k = PrimeField::new(5);
        let mut d = DependencyFinder::new(k, 2);
        assert!(d.push(vec![1, 0]).is_none());
        assert!(d.push(vec![0, 1]).is_none());
        let c = d.push(vec![2, 3]).unwrap();
        // c0*(1,0) + c1*(0,1) + (2,3) = 0
        assert_eq!(c, vec![3, 2, 1]);
    }
}
