//! S-normal subgroups, `Z(S)`, `[H,S]`, supercharacter kernels and the
//! S-central series.

use serde::Serialize;

use crate::chartab::ValidationReport;
use crate::error::{Error, Result};
use crate::set::{ElementSet, SubgroupSet};
use crate::supertheory::{SuperTheory, TableCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Lower,
    Upper,
    VSeries,
    UChain,
}

/// Terms of a series up to (not repeating) the stable term.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<SubgroupSet>,
    pub stabilized: bool,
    pub class_index: Option<usize>,
}

impl SeriesResult {
    pub fn last(&self) -> &SubgroupSet {
        self.terms.last().expect("series has a first term")
    }

    /// Term `i`, repeating the stable term past the end.
    pub fn term(&self, i: usize) -> &SubgroupSet {
        self.terms.get(i).unwrap_or_else(|| self.last())
    }
}

impl SuperTheory {
    /// Subgroups that are unions of superclasses, by size then members.
    pub fn s_normal_subgroups(&self) -> &[SubgroupSet] {
        self.normals.get_or_init(|| {
            let g = self.group();
            let m = self.rank();
            let mut out = Vec::new();
            for mask in 0u64..(1 << (m - 1)) {
                let mut set = self.yparts().block_set(0);
                for y in 1..m {
                    if mask >> (y - 1) & 1 == 1 {
                        for &x in self.yparts().block(y) {
                            set.insert(x);
                        }
                    }
                }
                if g.order() % set.len() == 0 && g.is_closed(&set) {
                    out.push(SubgroupSet::new_unchecked(set));
                }
            }
            out.sort();
            out
        })
    }

    /// `Z(S)`: elements whose superclass is a singleton.
    pub fn s_center(&self) -> Result<SubgroupSet> {
        let set = ElementSet::from_iter(
            self.order(),
            self.yparts().blocks().iter().filter(|b| b.len() == 1).map(|b| b[0]),
        );
        self.group().subgroup(set)
    }

    pub fn is_s_abelian(&self) -> bool {
        self.rank() == self.order()
    }

    /// `[H,S] = ⟨g⁻¹k : g ∈ H, k ∈ Cl_S(g)⟩`.
    pub fn s_commutator(&self, h: &SubgroupSet) -> SubgroupSet {
        let g = self.group();
        let mut gens = ElementSet::empty(self.order());
        for x in h.iter() {
            let xi = g.inv(x);
            for &k in self.yparts().block(self.class_of(x)) {
                gens.insert(g.mul(xi, k));
            }
        }
        g.generated_by_set(&gens)
    }

    /// `[G,S]`.
    pub fn derived(&self) -> SubgroupSet {
        self.s_commutator(&self.group().whole())
    }

    /// `[G,S]` recomputed as `∩ ker φ` over `φ ∈ Irr(S/[G,S])`.
    pub fn derived_from_kernels(&self) -> ElementSet {
        let d = self.derived();
        let mut acc = ElementSet::full(self.order());
        for x in self.irr_quotient(&d) {
            acc.intersect_with(self.super_kernel(x).members());
        }
        acc
    }

    /// `{g : σ_X(g) = σ_X(1)}`.
    pub fn super_kernel(&self, x: usize) -> SubgroupSet {
        let one = self.sigma(x, 0);
        let set = ElementSet::from_iter(
            self.order(),
            (0..self.order()).filter(|&g| self.sigma_at(x, g) == one),
        );
        SubgroupSet::new_unchecked(set)
    }

    /// `∩_{χ∈X} ker χ` from the classical table.
    pub fn kernel_from_irreducibles(&self, x: usize) -> ElementSet {
        let mut acc = ElementSet::full(self.order());
        for &i in &self.xparts()[x] {
            acc.intersect_with(&self.table().kernel(i));
        }
        acc
    }

    /// `Irr(S|N)`: parts whose kernel does not contain `N`.
    pub fn irr_over(&self, n: &SubgroupSet) -> Vec<usize> {
        (0..self.rank())
            .filter(|&x| !n.is_subgroup_of(&self.super_kernel(x)))
            .collect()
    }

    /// `Irr(S/N)`: parts whose kernel contains `N`.
    pub fn irr_quotient(&self, n: &SubgroupSet) -> Vec<usize> {
        (0..self.rank())
            .filter(|&x| n.is_subgroup_of(&self.super_kernel(x)))
            .collect()
    }

    /// `γ₁ = G`, `γ_i = [γ_{i−1}, S]`.
    pub fn lower_series(&self) -> SeriesResult {
        let mut terms = vec![self.group().whole()];
        loop {
            let next = self.s_commutator(terms.last().unwrap());
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
        }
        let class_index = terms
            .iter()
            .position(|t| t.is_trivial())
            .map(|i| i.max(1));
        SeriesResult {
            kind: SeriesKind::Lower,
            terms,
            stabilized: true,
            class_index,
        }
    }

    /// `ζ₀ = 1`, `ζ_i/ζ_{i−1} = Z(S^{G/ζ_{i−1}})`.
    pub fn upper_series(&self, cache: &TableCache) -> Result<SeriesResult> {
        let mut terms = vec![self.group().trivial()];
        loop {
            let current = terms.last().unwrap();
            let d = self.deflation_cached(current, cache)?;
            let center = d.theory.s_center()?;
            let next = d.preimage_subgroup(&center);
            if !self.is_s_normal(&next) {
                return Err(Error::Internal("pulled-back center is not S-normal".into()));
            }
            if &next == current {
                break;
            }
            terms.push(next);
        }
        let class_index = terms
            .iter()
            .position(|t| t.is_whole())
            .map(|i| i.max(1));
        Ok(SeriesResult {
            kind: SeriesKind::Upper,
            terms,
            stabilized: true,
            class_index,
        })
    }

    /// Least `c ≥ 1` with `ζ_c = G`, from the upper series.
    pub fn nilpotence_class(&self, cache: &TableCache) -> Result<Option<usize>> {
        Ok(self.upper_series(cache)?.class_index)
    }

    /// `ζ_∞(S)`.
    pub fn hypercenter(&self, cache: &TableCache) -> Result<SubgroupSet> {
        Ok(self.upper_series(cache)?.last().clone())
    }

    /// Smallest S-normal subgroup containing `seed`.
    pub fn s_normal_closure(&self, seed: &ElementSet) -> SubgroupSet {
        let g = self.group();
        let mut current = seed.clone();
        loop {
            let h = g.generated_by_set(&current);
            let mut saturated = ElementSet::empty(self.order());
            for x in h.iter() {
                for &k in self.yparts().block(self.class_of(x)) {
                    saturated.insert(k);
                }
            }
            if &saturated == h.members() {
                return h;
            }
            current = saturated;
        }
    }

    /// `γ_i(S^{G/N}) = π(γ_i(S)·N)` for every `i` up to stabilization of
    /// both series.
    pub fn deflated_gamma_check(&self, n: &SubgroupSet, cache: &TableCache) -> Result<ValidationReport> {
        let d = self.deflation_cached(n, cache)?;
        let ours = self.lower_series();
        let theirs = d.theory.lower_series();
        let mut report = ValidationReport::default();
        let len = ours.terms.len().max(theirs.terms.len()) + 1;
        for i in 0..len {
            let lifted = self.group().subgroup_product(ours.term(i), n)?;
            let image = d.project_subgroup(&lifted);
            let term = theirs.term(i);
            report.push(
                format!("gamma{}", i + 1),
                &image == term,
                format!("deflated {term}, projected {image}"),
            );
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_character_table;
    use crate::group::catalog_group;
    use std::sync::Arc;

    fn theory(name: &str, finest: bool) -> SuperTheory {
        let t = Arc::new(dixon_character_table(&catalog_group(name).unwrap()).unwrap());
        if finest {
            SuperTheory::finest(&t)
        } else {
            SuperTheory::coarsest(&t).unwrap()
        }
    }

    fn members(h: &SubgroupSet) -> Vec<usize> {
        h.to_vec()
    }

    #[test]
    fn s_normal_lists() {
        let s = theory("S3", true);
        let orders: Vec<usize> = s.s_normal_subgroups().iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 3, 6]);
        let q = theory("Q8", false);
        assert_eq!(q.s_normal_subgroups().len(), 2);
        let f = theory("Q8", true);
        // 1, Z, three cyclic subgroups of order 4, Q8
        assert_eq!(f.s_normal_subgroups().len(), 6);
    }

    #[test]
    fn centers() {
        assert!(theory("C6", true).is_s_abelian());
        assert!(theory("C4", false).s_center().unwrap().is_trivial());
        assert_eq!(members(&theory("Q8", true).s_center().unwrap()), vec![0, 1]);
    }

    #[test]
    fn commutators() {
        let s = theory("S3", true);
        assert_eq!(members(&s.derived()), vec![0, 3, 4]);
        assert!(theory("S3", false).derived().is_whole());
        assert!(theory("C4", true).derived().is_trivial());
        for (name, fin) in [("S3", true), ("Q8", true), ("A4", true), ("D4", false)] {
            let s = theory(name, fin);
            assert_eq!(&s.derived_from_kernels(), s.derived().members(), "{name}");
        }
    }

    #[test]
    fn kernels_and_irr_over() {
        let s = theory("S3", true);
        let p = s.principal_part();
        assert!(s.super_kernel(p).is_whole());
        assert!(s.irr_over(&s.group().trivial()).is_empty());
        let a3 = s.derived();
        let over = s.irr_over(&a3);
        assert_eq!(over.len(), 1);
        assert_eq!(s.degree(over[0]), 4);
        for x in 0..s.rank() {
            assert_eq!(&s.kernel_from_irreducibles(x), s.super_kernel(x).members());
        }
    }

    #[test]
    fn series_q8() {
        let s = theory("Q8", true);
        let cache = TableCache::new();
        let lower = s.lower_series();
        let orders: Vec<usize> = lower.terms.iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![8, 2, 1]);
        assert_eq!(lower.class_index, Some(2));
        let upper = s.upper_series(&cache).unwrap();
        let orders: Vec<usize> = upper.terms.iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![1, 2, 8]);
        assert_eq!(upper.class_index, Some(2));
    }

    #[test]
    fn series_s3() {
        let s = theory("S3", true);
        let cache = TableCache::new();
        assert_eq!(s.nilpotence_class(&cache).unwrap(), None);
        assert!(s.hypercenter(&cache).unwrap().is_trivial());
        assert_eq!(s.lower_series().class_index, None);
        let c = theory("C5", true);
        assert_eq!(c.nilpotence_class(&cache).unwrap(), Some(1));
        assert_eq!(c.lower_series().class_index, Some(1));
    }

    #[test]
    fn normal_closures() {
        let s = theory("S3", true);
        assert!(s.s_normal_closure(&ElementSet::from_iter(6, [0])).is_trivial());
        assert!(s.s_normal_closure(&ElementSet::from_iter(6, [1])).is_whole());
        let q = theory("Q8", true);
        assert_eq!(members(&q.s_normal_closure(&ElementSet::from_iter(8, [2]))), vec![0, 1, 2, 3]);
    }

    #[test]
    fn deflated_gamma() {
        let s = theory("S3", true);
        let cache = TableCache::new();
        assert!(s.deflated_gamma_check(&s.derived(), &cache).unwrap().passed());
        assert!(s.deflated_gamma_check(&s.group().whole(), &cache).unwrap().passed());
        let q = theory("Q8", true);
        let z = q.s_center().unwrap();
        assert!(q.deflated_gamma_check(&z, &cache).unwrap().passed());
    }
}
