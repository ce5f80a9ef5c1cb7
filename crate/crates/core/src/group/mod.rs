//! Finite groups given by their multiplication tables.
//!
//! Element identifiers are dense integers `0..order` with `0` the identity.
//! Every constructor validates the table (Latin square, identity row and
//! column, associativity) before returning.

mod catalog;
mod perm;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::set::{ElementPartition, ElementSet, SubgroupSet};

pub use catalog::catalog_group;
pub use perm::{parse_cycles, Permutation};

/// Tables up to this order have associativity checked on every triple.
pub const DEFAULT_ASSOC_BOUND: usize = 512;

const SPOT_CHECKS: usize = 200_000;

/// Where a group comes from.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Table { label: String, rows: Vec<Vec<usize>> },
    Permutations { label: String, generators: Vec<Permutation> },
    Catalog(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    label: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({}, order {})", self.label, self.order)
    }
}

/// A quotient `G/N` together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupTable,
    /// `projection[g]` is the coset of `g`, as an element of `group`.
    pub projection: Vec<usize>,
    /// The cosets, indexed like the elements of `group`.
    pub cosets: Vec<Vec<usize>>,
}

/// A subgroup re-numbered as a group of its own.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: GroupTable,
    /// `embedding[h]` is the parent identifier of sub-element `h`.
    pub embedding: Vec<usize>,
    /// Inverse of `embedding` on the subgroup; `None` outside it.
    pub index: Vec<Option<usize>>,
}

pub fn build_group(source: GroupSource) -> Result<GroupTable> {
    match source {
        GroupSource::Table { label, rows } => GroupTable::from_rows(label, rows),
        GroupSource::Permutations { label, generators } => {
            GroupTable::from_permutations(label, &generators)
        }
        GroupSource::Catalog(name) => catalog_group(&name),
    }
}

impl GroupTable {
    /// Validates and wraps a multiplication table.
    pub fn from_rows(label: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_rows_with_bound(label, rows, DEFAULT_ASSOC_BOUND)
    }

    pub fn from_rows_with_bound(
        label: impl Into<String>,
        rows: Vec<Vec<usize>>,
        assoc_bound: usize,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Format("empty multiplication table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Format(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Format(format!("entry {x} out of range in row {i}")));
            }
            mul.extend_from_slice(row);
        }
        let table = GroupTable::from_flat(label.into(), n, mul)?;
        table.check_associative(assoc_bound)?;
        Ok(table)
    }

    /// Latin-square, identity and inverse checks; associativity is separate.
    fn from_flat(label: String, n: usize, mul: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = mul[i * n + j];
                let c = mul[j * n + i];
                if std::mem::replace(&mut seen_row[r], true) {
                    return Err(Error::NotLatinSquare(format!("row {i} repeats {r}")));
                }
                if std::mem::replace(&mut seen_col[c], true) {
                    return Err(Error::NotLatinSquare(format!("column {i} repeats {c}")));
                }
            }
        }
        for g in 0..n {
            if mul[g] != g || mul[g * n] != g {
                return Err(Error::BadIdentity);
            }
        }
        let mut inv = vec![0; n];
        for (g, slot) in inv.iter_mut().enumerate() {
            // Latin square: exactly one h with gh = 0
            *slot = (0..n).find(|&h| mul[g * n + h] == 0).expect("latin row");
        }
        Ok(GroupTable {
            label,
            order: n,
            mul,
            inv,
        })
    }

    fn check_associative(&self, bound: usize) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAssociative(a, b, c))
            } else {
                Ok(())
            }
        };
        if n <= bound {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // deterministic spot checks for very large tables
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// The group generated by permutations; elements are numbered in
    /// lexicographic order of their image tuples, so the identity is 0.
    /// Products compose left to right: `(a*b)(x) = b(a(x))`.
    pub fn from_permutations(label: impl Into<String>, generators: &[Permutation]) -> Result<Self> {
        let degree = generators.iter().map(|p| p.degree()).max().unwrap_or(0);
        let gens: Vec<Permutation> = generators.iter().map(|p| p.extended(degree)).collect();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut seen = std::collections::HashSet::from([id]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elements[i].then(g);
                if seen.insert(p.clone()) {
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(Self::from_permutation_list(label.into(), elements))
    }

    /// Builds the table of an explicit, closed list of permutations.
    pub(crate) fn from_permutation_list(label: String, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let n = elements.len();
        let pos: std::collections::HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(pos[&a.then(b)]);
            }
        }
        GroupTable::from_flat(label, n, mul).expect("permutation group table is valid")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// `h g h⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |e, g| num_integer::lcm(e, self.element_order(g)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet::new_unchecked(ElementSet::full(self.order))
    }

    pub fn trivial(&self) -> SubgroupSet {
        SubgroupSet::new_unchecked(ElementSet::from_iter(self.order, [0]))
    }

    /// Orbits of the conjugation action, identity block first and the rest
    /// by increasing minimal element.
    pub fn conjugacy_classes(&self) -> ElementPartition {
        let n = self.order;
        let mut label = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for g in 0..n {
            if label[g] != usize::MAX {
                continue;
            }
            let mut block = Vec::new();
            for h in 0..n {
                let c = self.conjugate(g, h);
                if label[c] == usize::MAX {
                    label[c] = blocks.len();
                    block.push(c);
                }
            }
            blocks.push(block);
        }
        ElementPartition::new(n, blocks).expect("orbits partition the group")
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated_subgroup<I: IntoIterator<Item = usize>>(&self, seed: I) -> SubgroupSet {
        let mut members = ElementSet::from_iter(self.order, [0]);
        let gens: Vec<usize> = seed.into_iter().filter(|&g| g != 0).collect();
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        // finite group: closing under right multiplication by generators suffices
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        SubgroupSet::new_unchecked(members)
    }

    pub fn generated_by_set(&self, seed: &ElementSet) -> SubgroupSet {
        self.generated_subgroup(seed.iter())
    }

    /// Checks closure and wraps `set` as a subgroup.
    pub fn subgroup(&self, set: ElementSet) -> Result<SubgroupSet> {
        if set.universe() != self.order {
            return Err(Error::NotSubgroup("set universe differs from group order".into()));
        }
        if !set.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for a in set.iter() {
            if !set.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a} * {b} missing")));
                }
            }
        }
        Ok(SubgroupSet::new_unchecked(set))
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, n: &SubgroupSet) -> bool {
        n.iter()
            .all(|x| (0..self.order).all(|h| n.contains(self.conjugate(x, h))))
    }

    /// `G/N` with the projection; cosets are numbered by their minimal
    /// element so the coset of the identity is 0.
    pub fn quotient_group(&self, n: &SubgroupSet) -> Result<Quotient> {
        self.subgroup(n.members().clone())?;
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = n.iter().map(|x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                projection[x] = cosets.len();
            }
            cosets.push(coset);
        }
        let m = cosets.len();
        let mut mul = Vec::with_capacity(m * m);
        for a in &cosets {
            for b in &cosets {
                mul.push(projection[self.mul(a[0], b[0])]);
            }
        }
        let label = format!("{}/N{}", self.label, n.order());
        let group = GroupTable::from_flat(label, m, mul)?;
        Ok(Quotient {
            group,
            projection,
            cosets,
        })
    }

    /// `AB`; fails if the product set is not a subgroup.
    pub fn subgroup_product(&self, a: &SubgroupSet, b: &SubgroupSet) -> Result<SubgroupSet> {
        let mut set = ElementSet::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                set.insert(self.mul(x, y));
            }
        }
        if !self.is_closed(&set) {
            return Err(Error::ProductNotClosed);
        }
        Ok(SubgroupSet::new_unchecked(set))
    }

    /// Union of the cosets `gM` for `g` in `block`.
    pub fn coset_saturation(&self, m: &SubgroupSet, block: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for g in block.iter() {
            for x in m.iter() {
                out.insert(self.mul(g, x));
            }
        }
        out
    }

    /// Renumbers a subgroup as a group in its own right, keeping the parent
    /// order of elements.
    pub fn embedded(&self, h: &SubgroupSet) -> Embedded {
        let embedding = h.to_vec();
        let mut index = vec![None; self.order];
        for (i, &g) in embedding.iter().enumerate() {
            index[g] = Some(i);
        }
        let k = embedding.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &embedding {
            for &b in &embedding {
                mul.push(index[self.mul(a, b)].expect("subgroup is closed"));
            }
        }
        let label = format!("{}<{}>", self.label, k);
        let group = GroupTable::from_flat(label, k, mul).expect("subgroup table is valid");
        Embedded {
            group,
            embedding,
            index,
        }
    }

    /// Direct product; `(a, b)` gets identifier `a * |B| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order, other.order);
        let mut mul = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                mul.push(a * m + b);
            }
        }
        let label = format!("{}x{}", self.label, other.label);
        GroupTable::from_flat(label, n * m, mul).expect("direct product is valid")
    }

    /// Renumbers elements so that new element `i` is old element `perm[i]`.
    pub(crate) fn relabeled(&self, perm: &[usize]) -> GroupTable {
        let n = self.order;
        let mut pos = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            pos[p] = i;
        }
        let mut mul = Vec::with_capacity(n * n);
        for &a in perm {
            for &b in perm {
                mul.push(pos[self.mul(a, b)]);
            }
        }
        GroupTable::from_flat(self.label.clone(), n, mul).expect("relabeling is valid")
    }
}

/// Parses the group file format: `order n` followed by `n` rows.
pub fn parse_table_text(label: &str, text: &str) -> Result<GroupTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty group file".into()))?;
    let n: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Format(format!("expected `order n`, got `{header}`")))?;
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad table entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Format(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    GroupTable::from_rows(label, rows)
}

/// Parses one generator per line in cycle notation.
pub fn parse_permutation_text(label: &str, text: &str) -> Result<GroupTable> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let gens = parse_cycles(&lines)?;
    GroupTable::from_permutations(label, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        catalog_group("S3").unwrap()
    }

    #[test]
    fn rejects_non_latin_square() {
        let err = GroupTable::from_rows("bad", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare(_)));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // a Latin square with identity 0 that is not a group (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_rows("loop", rows).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn rejects_moved_identity() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(GroupTable::from_rows("x", rows).unwrap_err(), Error::BadIdentity);
    }

    #[test]
    fn c2_table() {
        let g = catalog_group("C2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn class_sizes() {
        let sizes = |name: &str| {
            let mut v: Vec<usize> = catalog_group(name)
                .unwrap()
                .conjugacy_classes()
                .blocks()
                .iter()
                .map(|b| b.len())
                .collect();
            v.sort();
            v
        };
        assert_eq!(sizes("C4"), vec![1, 1, 1, 1]);
        assert_eq!(sizes("S3"), vec![1, 2, 3]);
        assert_eq!(sizes("Q8"), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn q8_classes_follow_documented_numbering() {
        let g = catalog_group("Q8").unwrap();
        let cl = g.conjugacy_classes();
        assert_eq!(
            cl.blocks(),
            &[vec![0], vec![1], vec![2, 3], vec![4, 5], vec![6, 7]]
        );
    }

    #[test]
    fn generated_subgroups() {
        let g = s3();
        assert_eq!(g.generated_subgroup([]).order(), 1);
        // element 3 is the 3-cycle (0 1 2)
        assert_eq!(g.generated_subgroup([3]).order(), 3);
        let q8 = catalog_group("Q8").unwrap();
        assert_eq!(q8.generated_subgroup([1]).to_vec(), vec![0, 1]);
    }

    #[test]
    fn permutation_generators_give_d4() {
        let gens = parse_cycles(&["(1 2 3 4)", "(1 3)"]).unwrap();
        let g = GroupTable::from_permutations("perm", &gens).unwrap();
        assert_eq!(g.order(), 8);
        let mut sizes: Vec<usize> = g.conjugacy_classes().blocks().iter().map(|b| b.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(!g.is_abelian());
        let involutions = (1..8).filter(|&x| g.element_order(x) == 2).count();
        // D4 has five involutions, Q8 has one
        assert_eq!(involutions, 5);
    }

    #[test]
    fn quotients() {
        let g = s3();
        let q = g.quotient_group(&g.whole()).unwrap();
        assert_eq!(q.group.order(), 1);
        let a3 = g.generated_subgroup([3]);
        assert_eq!(g.quotient_group(&a3).unwrap().group.order(), 2);
        let q8 = catalog_group("Q8").unwrap();
        let z = q8.generated_subgroup([1]);
        let k = q8.quotient_group(&z).unwrap().group;
        assert_eq!(k.order(), 4);
        assert!((1..4).all(|x| k.element_order(x) == 2));
    }

    #[test]
    fn quotient_requires_normality() {
        let g = s3();
        let t = g.generated_subgroup([1]);
        assert_eq!(g.quotient_group(&t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn products_and_saturation() {
        let g = s3();
        let a3 = g.generated_subgroup([3]);
        let t = g.generated_subgroup([1]);
        assert_eq!(g.subgroup_product(&a3, &g.trivial()).unwrap(), a3);
        assert!(g.subgroup_product(&a3, &t).unwrap().is_whole());
        let q8 = catalog_group("Q8").unwrap();
        let i = q8.generated_subgroup([2]);
        let j = q8.generated_subgroup([4]);
        assert!(q8.subgroup_product(&i, &j).unwrap().is_whole());
        // two distinct order-2 subgroups of S3 do not multiply to a subgroup
        let t2 = g.generated_subgroup([2]);
        assert_eq!(g.subgroup_product(&t, &t2).unwrap_err(), Error::ProductNotClosed);

        let block = ElementSet::from_iter(6, [1]);
        let sat = g.coset_saturation(&a3, &block);
        assert_eq!(sat.to_vec(), vec![1, 2, 5]);
        assert_eq!(g.coset_saturation(&g.trivial(), &block), block);
    }

    #[test]
    fn parses_group_file() {
        let text = "order 2\n0 1\n1 0\n";
        assert_eq!(parse_table_text("f", text).unwrap().order(), 2);
        assert!(parse_table_text("f", "order 3\n0 1 2\n").is_err());
        assert!(parse_table_text("f", "ord 2\n0 1\n1 0").is_err());
    }
}
