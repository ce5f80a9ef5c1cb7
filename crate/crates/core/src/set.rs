//! Element sets, subgroups and partitions of a finite group.
//!
//! Elements are dense identifiers `0..order`; all containers here are plain
//! data and carry no reference to the ambient group.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A set of element identifiers backed by a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(order),
        }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(order: usize, it: I) -> Self {
        let mut s = Self::empty(order);
        for g in it {
            s.insert(g);
        }
        s
    }

    /// Capacity, i.e. the order of the ambient group.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, g: usize) -> bool {
        !self.bits.put(g)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }

    /// Complement within the universe `0..order`.
    pub fn complement(&self) -> ElementSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }
}

/// Sets order by size first, then by their sorted member lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A subgroup, stored as its member set.
///
/// Constructed only through [`crate::group::GroupTable`] methods that check
/// closure, so holding one means the set contains the identity and is closed
/// under products and inverses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SubgroupSet {
    members: ElementSet,
}

impl SubgroupSet {
    pub(crate) fn new_unchecked(members: ElementSet) -> Self {
        SubgroupSet { members }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Whether this is the whole ambient group.
    pub fn is_whole(&self) -> bool {
        self.order() == self.members.universe()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl fmt::Display for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

/// A partition of `0..order` into nonempty disjoint blocks.
///
/// Blocks are kept sorted by their minimal element, so the block holding the
/// identity (element 0) is always block 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl ElementPartition {
    /// Builds a partition from arbitrary blocks, canonicalizing the order.
    /// Returns `None` if the blocks are not a partition of `0..order`.
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Option<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return None;
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; order];
        for (i, b) in blocks.iter().enumerate() {
            for &g in b {
                if g >= order || block_of[g] != usize::MAX {
                    return None;
                }
                block_of[g] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return None;
        }
        Some(ElementPartition { blocks, block_of })
    }

    /// Groups elements by a key; blocks are the key's fibers.
    pub fn from_labels<K: Ord + Clone>(labels: &[K]) -> Self {
        let mut fibers: std::collections::BTreeMap<K, Vec<usize>> = Default::default();
        for (g, k) in labels.iter().enumerate() {
            fibers.entry(k.clone()).or_default().push(g);
        }
        Self::new(labels.len(), fibers.into_values().collect()).expect("fibers partition")
    }

    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, g: usize) -> usize {
        self.block_of[g]
    }

    pub fn block_set(&self, i: usize) -> ElementSet {
        ElementSet::from_iter(self.order(), self.blocks[i].iter().copied())
    }

    /// Whether every block is contained in some block of `coarser`.
    pub fn refines(&self, coarser: &ElementPartition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&g| coarser.block_of(g) == coarser.block_of(b[0])))
    }

    /// Whether `set` is a union of blocks.
    pub fn is_union_of_blocks(&self, set: &ElementSet) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&g| set.contains(g)) || b.iter().all(|&g| !set.contains(g)))
    }
}
