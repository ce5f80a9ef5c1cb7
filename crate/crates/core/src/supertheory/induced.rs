//! Restriction, deflation and subquotients, plus the ∗ and Δ product
//! predicates and constructions.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::chartab::{dixon_with_bound, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{Embedded, GroupTable, Quotient};
use crate::set::{ElementPartition, ElementSet, SubgroupSet};

use super::SuperTheory;

/// `G/N` with its character table.
#[derive(Debug)]
pub struct QuotientTable {
    pub quotient: Quotient,
    pub table: Arc<CharacterTable>,
}

/// A subgroup as a group of its own, with its character table.
#[derive(Debug)]
pub struct EmbeddedTable {
    pub embedded: Embedded,
    pub table: Arc<CharacterTable>,
}

type CacheKey = (u64, Vec<usize>);

/// Memoizes quotient and subgroup tables, keyed by the parent group's
/// multiplication table and the subgroup's members.
#[derive(Debug, Default)]
pub struct TableCache {
    quotients: Mutex<HashMap<CacheKey, Arc<QuotientTable>>>,
    subgroups: Mutex<HashMap<CacheKey, Arc<EmbeddedTable>>>,
}

fn cache_key(g: &GroupTable, h: &SubgroupSet) -> CacheKey {
    let mut hasher = DefaultHasher::new();
    g.hash(&mut hasher);
    (hasher.finish(), h.to_vec())
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn quotient(&self, g: &GroupTable, n: &SubgroupSet) -> Result<Arc<QuotientTable>> {
        let key = cache_key(g, n);
        if let Some(hit) = self.quotients.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let quotient = g.quotient_group(n)?;
        let table = Arc::new(dixon_with_bound(&quotient.group, g.order())?);
        let entry = Arc::new(QuotientTable { quotient, table });
        Ok(self
            .quotients
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(entry)
            .clone())
    }

    pub fn subgroup(&self, g: &GroupTable, h: &SubgroupSet) -> Result<Arc<EmbeddedTable>> {
        let key = cache_key(g, h);
        if let Some(hit) = self.subgroups.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let embedded = g.embedded(h);
        let table = Arc::new(dixon_with_bound(&embedded.group, g.order())?);
        let entry = Arc::new(EmbeddedTable { embedded, table });
        Ok(self
            .subgroups
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(entry)
            .clone())
    }
}

/// `S^{G/N}` and the projection it lives under.
#[derive(Clone, Debug)]
pub struct Deflated {
    pub theory: SuperTheory,
    pub quotient: Arc<QuotientTable>,
}

impl Deflated {
    /// `π(X)` for a subset of the parent group.
    pub fn project(&self, set: &ElementSet) -> ElementSet {
        let q = &self.quotient.quotient;
        ElementSet::from_iter(q.group.order(), set.iter().map(|g| q.projection[g]))
    }

    pub fn project_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::new_unchecked(self.project(h.members()))
    }

    /// Full preimage of a set of cosets.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        let q = &self.quotient.quotient;
        ElementSet::from_iter(
            q.projection.len(),
            set.iter().flat_map(|c| q.cosets[c].iter().copied()),
        )
    }

    pub fn preimage_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::new_unchecked(self.preimage(h.members()))
    }
}

/// `S_N` on the renumbered subgroup.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub theory: SuperTheory,
    pub embedded: Arc<EmbeddedTable>,
}

impl Restricted {
    pub fn to_parent(&self, set: &ElementSet) -> ElementSet {
        let e = &self.embedded.embedded;
        ElementSet::from_iter(e.index.len(), set.iter().map(|h| e.embedding[h]))
    }

    /// Parent elements of `set` that lie in the subgroup, renumbered.
    pub fn from_parent(&self, set: &ElementSet) -> ElementSet {
        let e = &self.embedded.embedded;
        ElementSet::from_iter(e.group.order(), set.iter().filter_map(|g| e.index[g]))
    }
}

fn partition_from_sets(order: usize, sets: Vec<ElementSet>) -> Result<ElementPartition> {
    let unique: BTreeSet<ElementSet> = sets.into_iter().collect();
    ElementPartition::new(order, unique.into_iter().map(|s| s.to_vec()).collect())
        .ok_or_else(|| Error::Internal("induced class images do not partition the group".into()))
}

/// Merges overlapping sets into connected components.
fn merge_overlapping(order: usize, sets: Vec<ElementSet>) -> ElementPartition {
    let mut merged: Vec<ElementSet> = Vec::new();
    for s in sets {
        let mut acc = s;
        let mut i = 0;
        while i < merged.len() {
            if !merged[i].is_disjoint(&acc) {
                acc.union_with(&merged.swap_remove(i));
                i = 0;
            } else {
                i += 1;
            }
        }
        merged.push(acc);
    }
    ElementPartition::new(order, merged.into_iter().map(|s| s.to_vec()).collect())
        .expect("merged cover is a partition")
}

impl SuperTheory {
    fn blocks_outside<'a>(&'a self, n: &'a SubgroupSet) -> impl Iterator<Item = ElementSet> + 'a {
        (0..self.rank())
            .map(|y| self.yparts().block_set(y))
            .filter(move |b| b.is_disjoint(n.members()))
    }

    /// `S_N`; its classes are the S-classes inside `N`.
    pub fn restriction(&self, n: &SubgroupSet) -> Result<Restricted> {
        self.restriction_cached(n, &TableCache::new())
    }

    pub fn restriction_cached(&self, n: &SubgroupSet, cache: &TableCache) -> Result<Restricted> {
        self.require_s_normal(n)?;
        let embedded = cache.subgroup(self.group(), n)?;
        let e = &embedded.embedded;
        let blocks: Vec<Vec<usize>> = self
            .yparts()
            .blocks()
            .iter()
            .filter(|b| n.contains(b[0]))
            .map(|b| b.iter().map(|&g| e.index[g].expect("S-normal")).collect())
            .collect();
        let y = ElementPartition::new(e.group.order(), blocks)
            .ok_or_else(|| Error::Internal("restricted classes do not partition N".into()))?;
        let theory = SuperTheory::from_class_partition(&embedded.table, &y)
            .ok_or_else(|| Error::Internal("restriction failed validation".into()))?;
        Ok(Restricted { theory, embedded })
    }

    /// `S^{G/N}`; its classes are the images `π(K)`.
    pub fn deflation(&self, n: &SubgroupSet) -> Result<Deflated> {
        self.deflation_cached(n, &TableCache::new())
    }

    pub fn deflation_cached(&self, n: &SubgroupSet, cache: &TableCache) -> Result<Deflated> {
        self.require_s_normal(n)?;
        let quotient = cache.quotient(self.group(), n)?;
        let q = &quotient.quotient;
        let m = q.group.order();
        let images = (0..self.rank())
            .map(|y| ElementSet::from_iter(m, self.yparts().block(y).iter().map(|&g| q.projection[g])))
            .collect();
        let y = partition_from_sets(m, images)?;
        let theory = SuperTheory::from_class_partition(&quotient.table, &y)
            .ok_or_else(|| Error::Internal("deflation failed validation".into()))?;
        Ok(Deflated { theory, quotient })
    }

    /// `S_{N/H} = (S^{G/H})_{N/H}`.
    pub fn subquotient(&self, n: &SubgroupSet, h: &SubgroupSet, cache: &TableCache) -> Result<Restricted> {
        if !h.is_subgroup_of(n) {
            return Err(Error::Precondition("subquotient needs H <= N".into()));
        }
        self.require_s_normal(n)?;
        let deflated = self.deflation_cached(h, cache)?;
        let image = deflated.project_subgroup(n);
        deflated.theory.restriction(&image)
    }

    /// Every S-class outside `N` is a union of `N`-cosets.
    pub fn is_star_product(&self, n: &SubgroupSet) -> Result<bool> {
        self.require_s_normal(n)?;
        let g = self.group();
        Ok(self.blocks_outside(n).all(|b| g.coset_saturation(n, &b) == b))
    }

    /// Every S-class outside `N` is a union of `M`-cosets.
    pub fn is_delta_product(&self, m: &SubgroupSet, n: &SubgroupSet) -> Result<bool> {
        self.require_s_normal(m)?;
        self.require_s_normal(n)?;
        if !m.is_subgroup_of(n) {
            return Err(Error::Precondition("delta product needs M <= N".into()));
        }
        let g = self.group();
        Ok(self.blocks_outside(n).all(|b| g.coset_saturation(m, &b) == b))
    }

    /// `S_N ∗ S_{G/N}`: S-classes inside `N` together with the full
    /// preimages of the nonidentity classes of the deflation.
    pub fn star_construct(&self, n: &SubgroupSet) -> Result<SuperTheory> {
        self.require_s_normal(n)?;
        let g = self.group();
        let mut sets: Vec<ElementSet> = (0..self.rank())
            .map(|y| self.yparts().block_set(y))
            .filter(|b| b.is_subset(n.members()))
            .collect();
        sets.extend(self.blocks_outside(n).map(|b| g.coset_saturation(n, &b)));
        let y = partition_from_sets(self.order(), sets)?;
        let theory = SuperTheory::from_class_partition(self.table(), &y)
            .ok_or_else(|| Error::Internal("star product failed validation".into()))?;
        if !self.is_refinement_of(&theory) {
            return Err(Error::Internal("star product classes are not unions of S-classes".into()));
        }
        Ok(theory)
    }

    /// Coarsens the classes outside `N` to their `M`-coset saturations;
    /// `None` when the result is not a supercharacter theory.
    pub fn delta_coarsen(&self, m: &SubgroupSet, n: &SubgroupSet) -> Result<Option<SuperTheory>> {
        self.require_s_normal(m)?;
        self.require_s_normal(n)?;
        if !m.is_subgroup_of(n) {
            return Err(Error::Precondition("delta coarsening needs M <= N".into()));
        }
        let g = self.group();
        let mut sets: Vec<ElementSet> = (0..self.rank())
            .map(|y| self.yparts().block_set(y))
            .filter(|b| b.is_subset(n.members()))
            .collect();
        sets.extend(self.blocks_outside(n).map(|b| g.coset_saturation(m, &b)));
        let y = merge_overlapping(self.order(), sets);
        Ok(SuperTheory::from_class_partition(self.table(), &y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supertheory::tests::table;

    fn sub(g: &GroupTable, members: &[usize]) -> SubgroupSet {
        g.subgroup(ElementSet::from_iter(g.order(), members.iter().copied())).unwrap()
    }

    #[test]
    fn deflation_by_whole_group_is_trivial() {
        let t = table("S3");
        let s = SuperTheory::finest(&t);
        let d = s.deflation(&t.group().whole()).unwrap();
        assert_eq!(d.theory.order(), 1);
        assert_eq!(d.theory.rank(), 1);
    }

    #[test]
    fn restriction_to_a3_has_two_parts() {
        let t = table("S3");
        let s = SuperTheory::finest(&t);
        let a3 = sub(t.group(), &[0, 3, 4]);
        let r = s.restriction(&a3).unwrap();
        assert_eq!(r.theory.rank(), 2);
        assert_eq!(r.to_parent(&r.theory.yparts().block_set(1)).to_vec(), vec![3, 4]);
        assert!(r.theory.validate().passed());
    }

    #[test]
    fn deflation_of_q8_by_center_is_klein_finest() {
        let t = table("Q8");
        let s = SuperTheory::finest(&t);
        let z = sub(t.group(), &[0, 1]);
        let d = s.deflation(&z).unwrap();
        assert_eq!(d.theory.order(), 4);
        assert_eq!(d.theory.rank(), 4);
        assert_eq!(d.theory, SuperTheory::finest(&d.quotient.table));
    }

    #[test]
    fn not_s_normal_is_rejected() {
        let t = table("S3");
        let s = SuperTheory::coarsest(&t).unwrap();
        let a3 = sub(t.group(), &[0, 3, 4]);
        assert!(matches!(s.deflation(&a3), Err(Error::NotSNormal)));
        assert!(matches!(s.is_star_product(&a3), Err(Error::NotSNormal)));
    }

    #[test]
    fn star_products() {
        let t = table("S3");
        let s = SuperTheory::finest(&t);
        let g = t.group();
        assert!(s.is_star_product(&g.trivial()).unwrap());
        let a3 = sub(g, &[0, 3, 4]);
        assert!(s.is_star_product(&a3).unwrap());
        assert_eq!(s.star_construct(&a3).unwrap(), s);
        assert_eq!(s.star_construct(&g.trivial()).unwrap(), s);
    }

    #[test]
    fn delta_products_q8() {
        let t = table("Q8");
        let s = SuperTheory::finest(&t);
        let g = t.group();
        let z = sub(g, &[0, 1]);
        let i = sub(g, &[0, 1, 2, 3]);
        assert!(s.is_delta_product(&z, &i).unwrap());
        assert_eq!(s.delta_coarsen(&g.trivial(), &i).unwrap().unwrap(), s);
        assert!(matches!(s.is_delta_product(&i, &z), Err(Error::Precondition(_))));
    }

    #[test]
    fn subquotient_of_q8() {
        let t = table("Q8");
        let s = SuperTheory::finest(&t);
        let g = t.group();
        let z = sub(g, &[0, 1]);
        let i = sub(g, &[0, 1, 2, 3]);
        let sq = s.subquotient(&i, &z, &TableCache::new()).unwrap();
        assert_eq!(sq.theory.order(), 2);
        assert_eq!(sq.theory.rank(), 2);
    }
}
