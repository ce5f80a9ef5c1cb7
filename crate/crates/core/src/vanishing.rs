//! Vanishing-off subgroups `V(χ)`, `V(S|N)`, `V(S)`, the subgroups
//! `U(S|N)`, S-Camina elements, pairs and triples, and VZ(S)-groups.

use serde::Serialize;

use crate::chartab::ValidationReport;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::set::{ElementSet, SubgroupSet};
use crate::structure::{SeriesKind, SeriesResult};
use crate::supertheory::{SuperTheory, TableCache};

/// One evaluated condition of an equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn new(name: &str, holds: bool, witness: Option<String>) -> Self {
        Condition {
            name: name.into(),
            holds,
            witness,
        }
    }
}

/// Outcome of a Camina-type predicate, with every equivalent condition
/// evaluated on its own. `notes` are recorded but not part of the
/// equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct CaminaVerdict {
    pub subject: String,
    pub holds: bool,
    pub vacuous: bool,
    pub conditions: Vec<Condition>,
    pub notes: Vec<Condition>,
}

impl CaminaVerdict {
    pub fn agree(&self) -> bool {
        self.conditions.iter().all(|c| c.holds == self.holds)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(move |c| c.holds != self.holds)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().chain(&self.notes).find(|c| c.name == name)
    }
}

/// First item failing `ok`, formatted as a witness.
fn first_failure<T: std::fmt::Debug>(
    mut items: impl Iterator<Item = T>,
    mut ok: impl FnMut(&T) -> bool,
) -> (bool, Option<String>) {
    match items.find(|t| !ok(t)) {
        Some(t) => (false, Some(format!("{t:?}"))),
        None => (true, None),
    }
}

impl SuperTheory {
    /// `{g : σ_X(g) ≠ 0}`.
    pub fn nonvanishing_set(&self, x: usize) -> ElementSet {
        ElementSet::from_iter(self.order(), (0..self.order()).filter(|&g| self.nonzero_at(x, g)))
    }

    /// `V(σ_X)`: the subgroup generated by the nonvanishing set.
    pub fn vanish_off(&self, x: usize) -> SubgroupSet {
        self.group().generated_by_set(&self.nonvanishing_set(x))
    }

    /// `V(S|N)`; `{1}` when `Irr(S|N)` is empty.
    pub fn v_rel(&self, n: &SubgroupSet) -> Result<SubgroupSet> {
        self.require_s_normal(n)?;
        let mut gens = ElementSet::empty(self.order());
        for x in self.irr_over(n) {
            gens.union_with(&self.nonvanishing_set(x));
        }
        Ok(self.group().generated_by_set(&gens))
    }

    /// `V(S) = V(S|[G,S])`.
    pub fn v_theory(&self) -> SubgroupSet {
        self.v_rel(&self.derived()).expect("[G,S] is S-normal")
    }

    /// `V₁ = V(S)`, `V_i = [V_{i−1}, S]`.
    pub fn v_series(&self) -> SeriesResult {
        let mut terms = vec![self.v_theory()];
        loop {
            let next = self.s_commutator(terms.last().unwrap());
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
        }
        let class_index = terms.iter().position(|t| t.is_trivial()).map(|i| i + 1);
        SeriesResult {
            kind: SeriesKind::VSeries,
            terms,
            stabilized: true,
            class_index,
        }
    }

    fn camina_element_with(&self, g: usize, d: &SubgroupSet, over: &[usize]) -> CaminaVerdict {
        let grp = self.group();
        let class = self.class_set(g);
        let (c1, w1) = first_failure(over.iter(), |&&x| !self.nonzero_at(x, g));
        let coset = ElementSet::from_iter(self.order(), d.iter().map(|z| grp.mul(g, z)));
        let c2 = class == coset;
        let c3 = class.len() == d.order();
        let (c4, w4) = first_failure(d.iter(), |&z| class.contains(grp.mul(g, z)));
        CaminaVerdict {
            subject: format!("element {g}"),
            holds: c1,
            vacuous: false,
            conditions: vec![
                Condition::new("supercharacters-vanish", c1, w1.map(|x| format!("sigma{x} nonzero"))),
                Condition::new("class-is-coset", c2, (!c2).then(|| format!("class {class}, coset {coset}"))),
                Condition::new("class-size", c3, (!c3).then(|| format!("|class| = {}, |[G,S]| = {}", class.len(), d.order()))),
                Condition::new("transversal", c4, w4.map(|z| format!("no y with g^-1 y = {z}"))),
            ],
            notes: Vec::new(),
        }
    }

    /// The four equivalent descriptions of an S-Camina element.
    pub fn is_camina_element(&self, g: usize) -> CaminaVerdict {
        let d = self.derived();
        let over = self.irr_over(&d);
        self.camina_element_with(g, &d, &over)
    }

    /// `(G,N)` is an S-GCP: every element outside `N` is an S-Camina
    /// element. Evaluates the equivalent conditions independently.
    pub fn is_s_gcp(&self, n: &SubgroupSet) -> Result<CaminaVerdict> {
        self.require_s_normal(n)?;
        let grp = self.group();
        let d = self.derived();
        let over = self.irr_over(&d);
        let outside: Vec<usize> = (0..self.order()).filter(|&g| !n.contains(g)).collect();

        let (c1, w1) = first_failure(outside.iter(), |&&g| self.camina_element_with(g, &d, &over).holds);
        let (c3, w3) = first_failure(outside.iter(), |&&g| self.class_size(g) == d.order());
        let (c4, w4) = first_failure(outside.iter(), |&&g| {
            let class = self.class_set(g);
            d.iter().all(|z| class.contains(grp.mul(g, z)))
        });
        let (c5, w5) = first_failure(over.iter(), |&&x| outside.iter().all(|&g| !self.nonzero_at(x, g)));

        let mut conditions = vec![Condition::new("camina-elements", c1, w1.map(|g| format!("element {g}")))];
        let mut notes = Vec::new();
        if d.is_subgroup_of(n) {
            let c2 = self.is_delta_product(&d, n)?;
            conditions.push(Condition::new("delta-product-over-derived", c2, None));
        }
        if n.is_subgroup_of(&d) {
            let literal = self.is_delta_product(n, &d)?;
            notes.push(Condition::new("delta-product-literal", literal, None));
        }
        conditions.push(Condition::new("class-size", c3, w3.map(|g| format!("element {g}"))));
        conditions.push(Condition::new("transversal", c4, w4.map(|g| format!("element {g}"))));
        conditions.push(Condition::new("vanishing", c5, w5.map(|x| format!("sigma{x}"))));
        Ok(CaminaVerdict {
            subject: format!("pair N = {n}"),
            holds: c1,
            vacuous: outside.is_empty(),
            conditions,
            notes,
        })
    }

    /// `(G,N)` is an S-Camina pair: every class outside `N` is a union of
    /// `N`-cosets.
    pub fn is_camina_pair(&self, n: &SubgroupSet) -> Result<CaminaVerdict> {
        self.require_s_normal(n)?;
        let grp = self.group();
        let outside: Vec<usize> = (0..self.order()).filter(|&g| !n.contains(g)).collect();
        let (coset, wc) = first_failure(outside.iter(), |&&g| {
            let class = self.class_set(g);
            n.iter().all(|x| class.contains(grp.mul(g, x)))
        });
        let star = self.is_star_product(n)?;
        let v = self.v_rel(n)?;
        let over = self.irr_over(n);
        let (vanish, wv) = first_failure(over.iter(), |&&x| outside.iter().all(|&g| !self.nonzero_at(x, g)));
        let (cover, wn) = first_failure(n.iter(), |&g| over.iter().any(|&x| self.nonzero_at(x, g)));
        Ok(CaminaVerdict {
            subject: format!("pair N = {n}"),
            holds: coset,
            vacuous: outside.is_empty(),
            conditions: vec![
                Condition::new("coset-union", coset, wc.map(|g| format!("element {g}"))),
                Condition::new("star-product", star, None),
                Condition::new(
                    "character-condition",
                    vanish && cover,
                    wv.map(|x| format!("sigma{x} nonzero outside N"))
                        .or(wn.map(|g| format!("no sigma over N is nonzero at {g}"))),
                ),
                Condition::new("v-equals-n", v == *n, (v != *n).then(|| format!("V(S|N) = {v}"))),
            ],
            notes: Vec::new(),
        })
    }

    /// `(G,N,M)` with `M ≤ N`: every class outside `N` is a union of
    /// `M`-cosets.
    pub fn is_camina_triple(&self, n: &SubgroupSet, m: &SubgroupSet, cache: &TableCache) -> Result<CaminaVerdict> {
        self.require_s_normal(n)?;
        self.require_s_normal(m)?;
        if !m.is_subgroup_of(n) {
            return Err(Error::Precondition("Camina triple needs M <= N".into()));
        }
        let grp = self.group();
        let outside: Vec<usize> = (0..self.order()).filter(|&g| !n.contains(g)).collect();
        let delta = self.is_delta_product(m, n)?;
        let deflated = self.deflation_cached(m, cache)?;
        let (sizes, ws) = first_failure(outside.iter(), |&&g| {
            let gm = deflated.quotient.quotient.projection[g];
            self.class_size(g) == deflated.theory.class_size(gm) * m.order()
        });
        let (transversal, wt) = first_failure(outside.iter(), |&&g| {
            let class = self.class_set(g);
            m.iter().all(|x| class.contains(grp.mul(g, x)))
        });
        let v = self.v_rel(m)?;
        let bounded = v.is_subgroup_of(n);
        let over = self.irr_over(m);
        let (vanish, wv) = first_failure(over.iter(), |&&x| outside.iter().all(|&g| !self.nonzero_at(x, g)));
        Ok(CaminaVerdict {
            subject: format!("triple N = {n}, M = {m}"),
            holds: delta,
            vacuous: outside.is_empty(),
            conditions: vec![
                Condition::new("delta-product", delta, None),
                Condition::new("class-size-product", sizes, ws.map(|g| format!("element {g}"))),
                Condition::new("transversal", transversal, wt.map(|g| format!("element {g}"))),
                Condition::new("v-below-n", bounded, (!bounded).then(|| format!("V(S|M) = {v}"))),
                Condition::new("vanishing", vanish, wv.map(|x| format!("sigma{x}"))),
            ],
            notes: Vec::new(),
        })
    }

    /// The S-normal `H` with `V(S|H) ≤ N`.
    pub fn u_family(&self, n: &SubgroupSet) -> Result<Vec<SubgroupSet>> {
        self.require_s_normal(n)?;
        let mut out = Vec::new();
        for h in self.s_normal_subgroups() {
            if self.v_rel(h)?.is_subgroup_of(n) {
                out.push(h.clone());
            }
        }
        Ok(out)
    }

    /// `U(S|N)`: the product of the family above.
    pub fn u_rel(&self, n: &SubgroupSet) -> Result<SubgroupSet> {
        let mut gens = ElementSet::empty(self.order());
        for h in self.u_family(n)? {
            gens.union_with(h.members());
        }
        Ok(self.group().generated_by_set(&gens))
    }

    /// Every supercharacter with `g` outside its kernel vanishes on `G∖N`.
    pub fn u_membership(&self, n: &SubgroupSet, g: usize) -> bool {
        (0..self.rank())
            .filter(|&x| !self.super_kernel(x).contains(g))
            .all(|x| (0..self.order()).all(|h| n.contains(h) || !self.nonzero_at(x, h)))
    }

    /// `U¹ = U(S|N)`, `U^i = U(S|U^{i−1})`.
    pub fn u_chain(&self, n: &SubgroupSet) -> Result<SeriesResult> {
        let mut terms = vec![self.u_rel(n)?];
        loop {
            let next = self.u_rel(terms.last().unwrap())?;
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
        }
        Ok(SeriesResult {
            kind: SeriesKind::UChain,
            terms,
            stabilized: true,
            class_index: None,
        })
    }

    /// `U(S) = U(S|Z(S))`, and `G` for S-abelian theories.
    pub fn u_theory(&self) -> Result<SubgroupSet> {
        if self.is_s_abelian() {
            return Ok(self.group().whole());
        }
        self.u_rel(&self.s_center()?)
    }

    /// `∩ ker σ` over the supercharacters with `V(σ) ⊄ N`; `G` when there
    /// are none.
    pub fn u_kernel(&self, n: &SubgroupSet) -> ElementSet {
        let mut acc = ElementSet::full(self.order());
        for x in 0..self.rank() {
            if !self.vanish_off(x).is_subgroup_of(n) {
                acc.intersect_with(self.super_kernel(x).members());
            }
        }
        acc
    }

    /// Every supercharacter in `Irr(S|[G,S])` vanishes on `G∖Z(S)`.
    pub fn is_vz(&self) -> Result<bool> {
        let z = self.s_center()?;
        let d = self.derived();
        Ok(self
            .irr_over(&d)
            .into_iter()
            .all(|x| (0..self.order()).all(|g| z.contains(g) || !self.nonzero_at(x, g))))
    }

    /// VZ(S) together with its equivalent descriptions.
    pub fn vz_verdict(&self, cache: &TableCache) -> Result<CaminaVerdict> {
        let z = self.s_center()?;
        let d = self.derived();
        let v = self.v_theory();
        let vz = self.is_vz()?;
        let mut conditions = vec![
            Condition::new("v-below-center", v.is_subgroup_of(&z), Some(format!("V(S) = {v}, Z(S) = {z}"))),
            Condition::new("sandwich", d.is_subgroup_of(&v) && v.is_subgroup_of(&z), None),
        ];
        if !self.is_s_abelian() {
            conditions.push(Condition::new("center-equals-v", z == v, None));
            let u = self.u_theory()?;
            conditions.push(Condition::new("u-equals-derived", u == d, Some(format!("U(S) = {u}, [G,S] = {d}"))));
        }
        if d.is_subgroup_of(&z) {
            let triple = self.is_camina_triple(&z, &d, cache)?;
            for c in triple.conditions.into_iter().take(3) {
                conditions.push(Condition::new(&format!("triple-{}", c.name), c.holds, c.witness));
            }
        }
        Ok(CaminaVerdict {
            subject: "VZ(S)".into(),
            holds: vz,
            vacuous: self.irr_over(&d).is_empty(),
            conditions,
            notes: Vec::new(),
        })
    }

    /// For a VZ(S)-group: `σ(1)² = ‖X‖²·|G:Z(S)|` and `|σ(z)| = σ(1)` on
    /// `Z(S)` for every `σ ∈ Irr(S|[G,S])`.
    pub fn scd_check(&self) -> Result<ValidationReport> {
        let z = self.s_center()?;
        let d = self.derived();
        let index = (self.order() / z.order()) as u64;
        let mut report = ValidationReport::default();
        for x in self.irr_over(&d) {
            let deg = self.degree(x);
            report.push(
                format!("degree sigma{x}"),
                deg * deg == deg * index,
                format!("sigma(1) = {deg}, |X|^2 = {deg}, |G:Z(S)| = {index}"),
            );
            let e = self.table().exponent();
            let square = Cyclotomic::from_int(e, (deg * deg) as i64);
            let bad: Vec<usize> = z
                .iter()
                .filter(|&g| Cyclotomic::hermitian_term(self.sigma_at(x, g), self.sigma_at(x, g)) != square)
                .collect();
            report.push(
                format!("center modulus sigma{x}"),
                bad.is_empty(),
                if bad.is_empty() { format!("{} central elements", z.order()) } else { format!("fails at {bad:?}") },
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

    fn sub(s: &SuperTheory, m: &[usize]) -> SubgroupSet {
        s.group().subgroup(ElementSet::from_iter(s.order(), m.iter().copied())).unwrap()
    }

    #[test]
    fn vanishing_off_s3() {
        let s = theory("S3", true);
        let p = s.principal_part();
        assert!(s.vanish_off(p).is_whole());
        let two = s.irr_over(&s.derived())[0];
        assert_eq!(s.vanish_off(two).to_vec(), vec![0, 3, 4]);
        let a3 = sub(&s, &[0, 3, 4]);
        assert!(s.v_rel(&s.group().trivial()).unwrap().is_trivial());
        assert_eq!(s.v_rel(&a3).unwrap(), a3);
        assert!(s.v_rel(&s.group().whole()).unwrap().is_whole());
        assert_eq!(s.v_theory(), a3);
    }

    #[test]
    fn coarsest_never_vanishes() {
        for name in ["C4", "S3", "Q8"] {
            let s = theory(name, false);
            assert!(s.v_theory().is_whole(), "{name}");
            for g in 1..s.order() {
                assert!(!s.is_camina_element(g).holds);
                assert!(s.is_camina_element(g).agree());
            }
        }
    }

    #[test]
    fn camina_elements_s3() {
        let s = theory("S3", true);
        let t = s.is_camina_element(1);
        assert!(t.holds && t.agree());
        let c = s.is_camina_element(3);
        assert!(!c.holds && c.agree());
    }

    #[test]
    fn gcp_and_pairs() {
        let s = theory("S3", true);
        let a3 = sub(&s, &[0, 3, 4]);
        let v = s.is_s_gcp(&a3).unwrap();
        assert!(v.holds && v.agree());
        let whole = s.is_s_gcp(&s.group().whole()).unwrap();
        assert!(whole.holds && whole.vacuous);
        let p = s.is_camina_pair(&a3).unwrap();
        assert!(p.holds && p.agree());
        let q = theory("Q8", true);
        let i = sub(&q, &[0, 1, 2, 3]);
        let z = sub(&q, &[0, 1]);
        assert!(q.is_s_gcp(&i).unwrap().holds);
        let cache = TableCache::new();
        let t = q.is_camina_triple(&i, &z, &cache).unwrap();
        assert!(t.holds && t.agree());
    }

    #[test]
    fn u_subgroups() {
        let s = theory("S3", true);
        let a3 = sub(&s, &[0, 3, 4]);
        assert_eq!(s.u_rel(&a3).unwrap(), a3);
        assert!(s.u_theory().unwrap().is_trivial());
        assert!(s.u_membership(&a3, 3));
        assert!(!s.u_membership(&a3, 1));
        assert_eq!(&s.u_kernel(&a3), a3.members());
        let chain = s.u_chain(&a3).unwrap();
        assert_eq!(chain.last(), &a3);
        let q = theory("Q8", true);
        let z = sub(&q, &[0, 1]);
        assert_eq!(q.u_rel(&z).unwrap(), z);
        assert_eq!(q.u_theory().unwrap(), z);
    }

    #[test]
    fn vz() {
        let q = theory("Q8", true);
        let cache = TableCache::new();
        let v = q.vz_verdict(&cache).unwrap();
        assert!(v.holds && v.agree(), "{v:?}");
        assert!(q.scd_check().unwrap().passed());
        assert!(!theory("S3", true).is_vz().unwrap());
        let c = theory("C4", false).vz_verdict(&cache).unwrap();
        assert!(!c.holds && c.agree());
    }

    #[test]
    fn v_series_examples() {
        let q = theory("Q8", true);
        let orders: Vec<usize> = q.v_series().terms.iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![2, 1]);
        let s = theory("S3", true);
        let orders: Vec<usize> = s.v_series().terms.iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![3]);
    }
}
