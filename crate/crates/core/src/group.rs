//! Finite groups given by a multiplication table, plus permutation helpers.
//!
//! Elements are indices `0..n` with `0` the identity and
//! `table[i][j] = i ∘ j` (apply `j` first).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numbers::prime_divisors;

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks identity at 0, closure, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        let bad = || Error::internal("multiplication table is not a group");
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(bad());
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(bad());
        }
        let mut inverse = vec![0; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n).find(|&j| table[i][j] == 0).ok_or_else(bad)?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(GroupTable { table, inverse })
    }

    /// Group of permutations (closed under composition, identity first).
    pub fn from_perms(perms: &[Vec<usize>]) -> Result<GroupTable> {
        let index: BTreeMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        if index.len() != perms.len() || perms.first().map(|p| is_identity(p)) != Some(true) {
            return Err(Error::internal(
                "permutation list has duplicates or no leading identity",
            ));
        }
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                let c = compose(a, b);
                table[i][j] = *index
                    .get(c.as_slice())
                    .ok_or_else(|| Error::internal("permutations not closed under composition"))?;
            }
        }
        GroupTable::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            members: set.into_iter().collect(),
        }
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        let ok_members = h.members.windows(2).all(|w| w[0] < w[1])
            && h.members.iter().all(|&x| x < self.order());
        ok_members
            && h.contains(0)
            && h.members.iter().all(|&a| {
                h.members
                    .iter()
                    .all(|&b| h.contains(self.mul(a, self.inv(b))))
            })
    }

    /// Every subgroup: cyclic seeds closed under pairwise joins, sorted by
    /// `(order, members)`.
    pub fn subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        if self.order() > limits.max_group_order {
            return Err(Error::OrderCap {
                order: self.order(),
                cap: limits.max_group_order,
            });
        }
        let mut all: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.generate(&[g])).collect();
        let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let current: Vec<Subgroup> = all.iter().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                for b in &current {
                    if a.is_subset_of(b) || b.is_subset_of(a) {
                        continue;
                    }
                    let gens: Vec<usize> = a.members.iter().chain(&b.members).copied().collect();
                    let j = self.generate(&gens);
                    if all.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = all.into_iter().collect();
        out.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members.cmp(&b.members))
        });
        Ok(out)
    }

    pub fn is_normal_subgroup(&self, h: &Subgroup) -> Result<bool> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        Ok((0..self.order()).all(|g| h.members.iter().all(|&x| h.contains(self.conjugate(g, x)))))
    }

    /// Subgroup generated by the commutators `a b a⁻¹ b⁻¹` of `h`.
    pub fn commutator_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &a in &h.members {
            for &b in &h.members {
                gens.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        self.generate(&gens.into_iter().collect::<Vec<_>>())
    }

    /// `G ⊇ G′ ⊇ G″ ⊇ …` until it stabilizes.
    pub fn derived_series(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        if self.order() > limits.max_series_order {
            return Err(Error::OrderCap {
                order: self.order(),
                cap: limits.max_series_order,
            });
        }
        let mut series = vec![self.whole()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap());
            if next == *series.last().unwrap() {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self, limits: &Limits) -> Result<bool> {
        Ok(self.derived_series(limits)?.last().unwrap().is_trivial())
    }

    /// The quotient by a normal subgroup, as a table on cosets ordered by
    /// their least member.
    pub fn quotient(&self, n: &Subgroup) -> Result<GroupTable> {
        if !self.is_normal_subgroup(n)? {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &x in &n.members {
                    coset_of[self.mul(g, x)] = id;
                }
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        GroupTable::new(table)
    }

    /// The subgroup as a group in its own right.
    pub fn restrict(&self, h: &Subgroup) -> Result<GroupTable> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let pos = |x: usize| h.members.binary_search(&x).unwrap();
        let table = h
            .members
            .iter()
            .map(|&a| h.members.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        GroupTable::new(table)
    }

    /// Element order → count.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.order() {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    /// Name from a fingerprint: order, commutativity and element orders.
    pub fn isomorphism_type(&self) -> Result<String> {
        let n = self.order();
        if n > 120 {
            return Err(Error::OrderCap { order: n, cap: 120 });
        }
        if self.is_abelian() {
            return Ok(self.abelian_type());
        }
        let profile = self.order_profile();
        let known: [(&str, usize, &[(usize, usize)]); 7] = [
            ("S3", 6, &[(1, 1), (2, 3), (3, 2)]),
            ("Q8", 8, &[(1, 1), (2, 1), (4, 6)]),
            ("A4", 12, &[(1, 1), (2, 3), (3, 8)]),
            ("S4", 24, &[(1, 1), (2, 9), (3, 8), (4, 6)]),
            ("A5", 60, &[(1, 1), (2, 15), (3, 20), (5, 24)]),
            (
                "S5",
                120,
                &[(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)],
            ),
            ("SL(2,3)", 24, &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]),
        ];
        for (name, order, prof) in known {
            if n == order && profile == prof.iter().copied().collect::<BTreeMap<_, _>>() {
                return Ok(name.to_string());
            }
        }
        if n.is_multiple_of(2)
            && n >= 6
            && profile == dihedral_profile(n / 2)
            && self.has_index_two_cyclic()
        {
            return Ok(format!("D{}", n / 2));
        }
        Ok(format!("unidentified group of order {n}"))
    }

    fn has_index_two_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.element_order(a) == n / 2)
    }

    /// `C_a x C_b x …` from the invariant factors.
    fn abelian_type(&self) -> String {
        let n = self.order();
        if n == 1 {
            return "C1".to_string();
        }
        // elementary divisors p^e, grouped per prime
        let mut elementary: Vec<Vec<usize>> = Vec::new();
        for p in prime_divisors(n as u64).unwrap_or_default() {
            let p = p as usize;
            // count[k] = #{x : x^(p^k) = 1}
            let mut counts = vec![1usize];
            let mut pk = 1;
            while counts.last() != Some(&p_part(n, p)) {
                pk *= p;
                counts.push((0..n).filter(|&a| pk % self.element_order(a) == 0).count());
            }
            let logs: Vec<usize> = counts.iter().map(|&c| log_p(c, p)).collect();
            // number of cyclic factors of order ≥ p^k is logs[k] - logs[k-1]
            let ge: Vec<usize> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
            let mut powers = Vec::new();
            for k in 1..=ge.len() {
                let exactly = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
                for _ in 0..exactly {
                    powers.push(p.pow(k as u32));
                }
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            elementary.push(powers);
        }
        let width = elementary.iter().map(Vec::len).max().unwrap_or(0);
        let mut inv: Vec<usize> = (0..width)
            .map(|i| {
                elementary
                    .iter()
                    .map(|v| v.get(i).copied().unwrap_or(1))
                    .product()
            })
            .collect();
        inv.sort_unstable();
        inv.iter()
            .map(|d| format!("C{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

fn log_p(mut c: usize, p: usize) -> usize {
    let mut e = 0;
    while c > 1 {
        c /= p;
        e += 1;
    }
    e
}

fn dihedral_profile(m: usize) -> BTreeMap<usize, usize> {
    let mut prof = BTreeMap::new();
    for k in 0..m {
        *prof
            .entry(m / crate::numbers::gcd_u64(k as u64, m as u64) as usize)
            .or_insert(0) += 1;
    }
    *prof.entry(2).or_insert(0) += m;
    prof
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Cycle notation on points `1..=n`; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// Orbits of a set of permutations on `0..n`, each sorted, ordered by
/// least element.
pub fn orbits(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::from([start]);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for p in perms {
                if orbit.insert(p[x]) {
                    frontier.push(p[x]);
                }
            }
        }
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// All permutations generated by `gens` on `0..n`, sorted, identity first.
pub fn closure(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// The full symmetric group on `0..n`.
pub fn symmetric_group(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return closure(&[], n);
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    closure(&[transposition, cycle], n)
}
