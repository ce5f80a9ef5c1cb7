//! Runs every structural result over a theory and reports each instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{dixon_character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::set::{ElementSet, SubgroupSet};
use crate::supertheory::{enumerate_scts, SuperTheory, TableCache};

/// Stable identifiers, in report order.
pub const THEOREM_IDS: [&str; 31] = [
    "T-celt",
    "T-corgcp",
    "L-cp",
    "L-vs",
    "T-zeta",
    "C-class",
    "C-hyper",
    "L-vsn",
    "T-vseries",
    "C-vterm",
    "L-vzs",
    "T-zs",
    "T-vznilp",
    "L-scd",
    "L-unormal",
    "L-irr",
    "L-uorder",
    "L-ugroup",
    "C-ucorr",
    "C-ucor",
    "T-ugroupp",
    "L-ucap",
    "T-udelta",
    "L-uchain",
    "L-uquot",
    "L-ukernel",
    "T-final",
    "L-sabelian-gcp",
    "P-roworth",
    "P-colorth",
    "P-prop42",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub group: String,
    pub theory: usize,
    pub subgroups: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem_id: &'static str,
    pub scope: Scope,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub na: usize,
}

impl Summary {
    pub fn add(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::NotApplicable => self.na += 1,
        }
    }

    pub fn merge(&mut self, other: &Summary) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.vacuous += other.vacuous;
        self.na += other.na;
    }

    pub fn of(reports: &[TheoremReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            s.add(r.status);
        }
        s
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn fails<T, F>(items: impl IntoIterator<Item = T>, mut ok: F) -> Vec<T>
where
    F: FnMut(&T) -> bool,
{
    items.into_iter().filter(|t| !ok(t)).collect()
}

struct Suite<'a> {
    s: &'a SuperTheory,
    cache: &'a TableCache,
    group: &'a str,
    theory: usize,
    normals: Vec<SubgroupSet>,
    out: Vec<TheoremReport>,
}

impl Suite<'_> {
    fn emit(
        &mut self,
        id: &'static str,
        subgroups: &[&SubgroupSet],
        element: Option<usize>,
        index: Option<usize>,
        status: Status,
        witness: Option<String>,
    ) {
        self.out.push(TheoremReport {
            theorem_id: id,
            scope: Scope {
                group: self.group.to_string(),
                theory: self.theory,
                subgroups: subgroups.iter().map(|h| h.to_vec()).collect(),
                element,
                index,
            },
            status,
            witness,
        });
    }

    fn check(&mut self, id: &'static str, subgroups: &[&SubgroupSet], ok: bool, witness: impl FnOnce() -> String) {
        let w = (!ok).then(witness);
        self.emit(id, subgroups, None, None, status(ok), w);
    }

    fn run(&mut self, id: &'static str, f: fn(&mut Self) -> Result<()>) {
        let before = self.out.len();
        if let Err(e) = f(self) {
            self.emit(id, &[], None, None, Status::Fail, Some(format!("error: {e}")));
        }
        if self.out.len() == before {
            self.emit(id, &[], None, None, Status::NotApplicable, None);
        }
    }

    fn celt(&mut self) -> Result<()> {
        for g in 0..self.s.order() {
            let v = self.s.is_camina_element(g);
            let w = (!v.agree()).then(|| disagreement(&v));
            self.emit("T-celt", &[], Some(g), None, status(v.agree()), w);
        }
        Ok(())
    }

    fn corgcp(&mut self) -> Result<()> {
        for n in self.normals.clone() {
            let v = self.s.is_s_gcp(&n)?;
            let st = if !v.agree() {
                Status::Fail
            } else if v.vacuous {
                Status::Vacuous
            } else {
                Status::Pass
            };
            let w = (!v.agree()).then(|| disagreement(&v));
            self.emit("T-corgcp", &[&n], None, None, st, w);
        }
        Ok(())
    }

    fn cp(&mut self) -> Result<()> {
        let s = self.s;
        let d = s.derived();
        let nonab = !s.is_s_abelian();
        let z = s.s_center()?;
        for n in self.normals.clone() {
            let v = s.is_s_gcp(&n)?;
            if !v.holds {
                continue;
            }
            let mut bad = Vec::new();
            if !d.is_subgroup_of(&n) {
                bad.push(format!("(1) [G,S] = {d} not in N"));
            }
            for m in &self.normals {
                if n.is_subgroup_of(m) && !m.is_whole() && !s.is_s_gcp(m)?.holds {
                    bad.push(format!("(2) M = {m} not a GCP"));
                }
            }
            for k in self.normals.iter().filter(|k| k.is_subgroup_of(&n)) {
                let defl = s.deflation_cached(k, self.cache)?;
                let image = defl.project_subgroup(&n);
                if !defl.theory.is_s_gcp(&image)?.holds {
                    bad.push(format!("(3) K = {k}: quotient pair not a GCP"));
                }
            }
            if nonab && !z.is_subgroup_of(&n) {
                bad.push(format!("(4) Z(S) = {z} not in N"));
            }
            let st = if !bad.is_empty() {
                Status::Fail
            } else if v.vacuous {
                Status::Vacuous
            } else {
                Status::Pass
            };
            let w = (!bad.is_empty()).then(|| bad.join("; "));
            self.emit("L-cp", &[&n], None, None, st, w);
        }
        Ok(())
    }

    fn vs(&mut self) -> Result<()> {
        let s = self.s;
        let v = s.v_theory();
        let d = s.derived();
        let z = s.s_center()?;
        let mut bad = Vec::new();
        if !s.is_s_gcp(&v)?.holds {
            bad.push("(1) (G, V(S)) is not a GCP".to_string());
        }
        if !d.is_subgroup_of(&v) {
            bad.push("(2) [G,S] not in V(S)".into());
        }
        if !s.is_s_abelian() && !z.is_subgroup_of(&v) {
            bad.push("(3) Z(S) not in V(S)".into());
        }
        let mut meet = ElementSet::full(s.order());
        for n in &self.normals {
            if s.is_s_gcp(n)?.holds {
                meet.intersect_with(n.members());
                if !v.is_subgroup_of(n) {
                    bad.push(format!("(4) V(S) not in GCP N = {n}"));
                }
            }
        }
        if &meet != v.members() {
            bad.push(format!("(5) intersection of GCP subgroups is {meet}"));
        }
        let ok = bad.is_empty();
        self.check("L-vs", &[&v], ok, || format!("V(S) = {v}: {}", bad.join("; ")));
        Ok(())
    }

    fn zeta(&mut self) -> Result<()> {
        let s = self.s;
        let upper = s.upper_series(self.cache)?;
        let v = s.v_theory();
        let d = s.derived();
        for m in 1..=upper.terms.len() {
            let zm = upper.term(m);
            if d.is_subgroup_of(zm) {
                continue;
            }
            let next = upper.term(m + 1);
            let ok = next.is_subgroup_of(&v);
            let w = (!ok).then(|| format!("zeta_{} = {next} not in V(S) = {v}", m + 1));
            self.emit("T-zeta", &[zm], None, Some(m), status(ok), w);
        }
        Ok(())
    }

    fn class(&mut self) -> Result<()> {
        let s = self.s;
        let upper = s.upper_series(self.cache)?;
        let lower = s.lower_series();
        if upper.class_index != lower.class_index {
            self.emit(
                "C-class",
                &[],
                None,
                None,
                Status::Fail,
                Some(format!("upper class {:?}, lower class {:?}", upper.class_index, lower.class_index)),
            );
            return Ok(());
        }
        if let Some(c) = upper.class_index {
            let v = s.v_theory();
            let t = upper.term(c - 1);
            let ok = t.is_subgroup_of(&v);
            let w = (!ok).then(|| format!("zeta_{} = {t} not in V(S) = {v}", c - 1));
            self.emit("C-class", &[t], None, Some(c), status(ok), w);
        }
        Ok(())
    }

    fn hyper(&mut self) -> Result<()> {
        let s = self.s;
        let upper = s.upper_series(self.cache)?;
        if upper.class_index.is_none() {
            let h = upper.last();
            let v = s.v_theory();
            let ok = h.is_subgroup_of(&v);
            self.check("C-hyper", &[h], ok, || format!("hypercenter {h} not in V(S) = {v}"));
        }
        Ok(())
    }

    fn vsn(&mut self) -> Result<()> {
        let s = self.s;
        let v = s.v_theory();
        for n in self.normals.clone() {
            let defl = s.deflation_cached(&n, self.cache)?;
            if defl.theory.is_s_abelian() {
                continue;
            }
            let below = n.is_subgroup_of(&v);
            let vq = defl.theory.v_theory();
            let image = defl.project_subgroup(&v);
            let bounded = vq.is_subgroup_of(&image);
            self.check("L-vsn", &[&n], below && bounded, || {
                format!("V(S) = {v}, V(quotient) = {vq}, image of V(S) = {image}")
            });
        }
        Ok(())
    }

    fn vseries(&mut self) -> Result<()> {
        let s = self.s;
        let lower = s.lower_series();
        let vs = s.v_series();
        let len = lower.terms.len().max(vs.terms.len()) + 1;
        // index i is V_{i+1} / gamma_{i+1}
        let gamma = |i: usize| lower.term(i);
        let vterm = |i: usize| vs.term(i);
        let bad = fails(0..len, |&i| gamma(i + 1).is_subgroup_of(vterm(i)) && vterm(i).is_subgroup_of(gamma(i)));
        let ok = bad.is_empty();
        self.emit(
            "T-vseries",
            &[],
            None,
            Some(1),
            status(ok),
            (!ok).then(|| format!("sandwich fails at i = {}", bad[0] + 1)),
        );
        for n in 0..len {
            if vterm(n) == gamma(n) {
                continue;
            }
            let strict = fails(0..=n, |&i| vterm(i) != gamma(i));
            let defl = s.deflation_cached(vterm(n), self.cache)?;
            let class = defl.theory.lower_series().class_index;
            let qv = defl.theory.v_series();
            let quotient = fails(0..=n, |&i| qv.term(i) == &defl.project_subgroup(vterm(i)));
            let mut bad = Vec::new();
            if !strict.is_empty() {
                bad.push(format!("(2) V_{} = gamma_{}", strict[0] + 1, strict[0] + 1));
            }
            if class != Some(n + 1) {
                bad.push(format!("(3) quotient class {class:?}, expected {}", n + 1));
            }
            if let Some(&i) = quotient.first() {
                bad.push(format!(
                    "(3) V_{}(quotient) = {}, V_{}(S)/V_{} = {}",
                    i + 1,
                    qv.term(i),
                    i + 1,
                    n + 1,
                    defl.project_subgroup(vterm(i))
                ));
            }
            let ok = bad.is_empty();
            self.emit("T-vseries", &[vterm(n)], None, Some(n + 1), status(ok), (!ok).then(|| bad.join("; ")));
        }
        Ok(())
    }

    fn vterm(&mut self) -> Result<()> {
        let s = self.s;
        let nilpotent = s.upper_series(self.cache)?.class_index.is_some();
        let vs = s.v_series();
        let terminates = vs.last().is_trivial();
        self.check("C-vterm", &[], nilpotent == terminates, || {
            format!("S-nilpotent: {nilpotent}, V-series ends at {}", vs.last())
        });
        Ok(())
    }

    fn vzs(&mut self) -> Result<()> {
        let s = self.s;
        let d = s.derived();
        let z = s.s_center()?;
        let v = s.v_theory();
        let vz = s.is_vz()?;
        let below = v.is_subgroup_of(&z);
        let mut bad = Vec::new();
        if vz != below {
            bad.push(format!("VZ {vz}, V(S) <= Z(S) {below}"));
        }
        if d.is_subgroup_of(&z) {
            let triple = s.is_camina_triple(&z, &d, self.cache)?;
            for c in triple.conditions.iter().take(3) {
                if c.holds != vz {
                    bad.push(format!("{} is {} but VZ is {vz}", c.name, c.holds));
                }
            }
        }
        let ok = bad.is_empty();
        self.check("L-vzs", &[&d, &z], ok, || bad.join("; "));
        Ok(())
    }

    fn zs(&mut self) -> Result<()> {
        let s = self.s;
        let d = s.derived();
        let z = s.s_center()?;
        let v = s.v_theory();
        let vz = s.is_vz()?;
        let sandwich = d.is_subgroup_of(&v) && v.is_subgroup_of(&z);
        self.check("T-zs", &[&v], vz == sandwich, || {
            format!("VZ {vz}; [G,S] = {d}, V(S) = {v}, Z(S) = {z}")
        });
        Ok(())
    }

    fn vznilp(&mut self) -> Result<()> {
        let s = self.s;
        if s.is_s_abelian() || !s.is_vz()? {
            return Ok(());
        }
        let upper = s.upper_series(self.cache)?.class_index;
        let lower = s.lower_series().class_index;
        let ok = upper == Some(2) && lower == Some(2);
        self.check("T-vznilp", &[], ok, || format!("class {upper:?} (upper), {lower:?} (lower)"));
        Ok(())
    }

    fn scd(&mut self) -> Result<()> {
        let s = self.s;
        if s.is_s_abelian() || !s.is_vz()? {
            return Ok(());
        }
        let report = s.scd_check()?;
        let ok = report.passed();
        self.check("L-scd", &[], ok, || {
            report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ")
        });
        Ok(())
    }

    fn unormal(&mut self) -> Result<()> {
        for n in self.normals.clone() {
            let u = self.s.u_rel(&n)?;
            let ok = self.s.is_s_normal(&u);
            self.check("L-unormal", &[&n], ok, || format!("U(S|N) = {u} is not S-normal"));
        }
        Ok(())
    }

    fn irr(&mut self) -> Result<()> {
        let over: Vec<Vec<usize>> = self.normals.iter().map(|n| self.s.irr_over(n)).collect();
        for (i, m) in self.normals.clone().iter().enumerate() {
            for (j, n) in self.normals.clone().iter().enumerate() {
                let contained = over[i].iter().all(|x| over[j].contains(x));
                let sub = m.is_subgroup_of(n);
                self.check("L-irr", &[m, n], sub == contained, || {
                    format!("M <= N is {sub}, Irr(S|M) in Irr(S|N) is {contained}")
                });
            }
        }
        Ok(())
    }

    fn uorder(&mut self) -> Result<()> {
        let normals = self.normals.clone();
        let us: Vec<SubgroupSet> = normals.iter().map(|n| self.s.u_rel(n)).collect::<Result<_>>()?;
        for (i, h) in normals.iter().enumerate() {
            for (j, n) in normals.iter().enumerate() {
                if h.is_subgroup_of(n) {
                    let ok = us[i].is_subgroup_of(&us[j]);
                    self.check("L-uorder", &[h, n], ok, || format!("U(S|H) = {}, U(S|N) = {}", us[i], us[j]));
                }
            }
        }
        Ok(())
    }

    fn ugroup(&mut self) -> Result<()> {
        let normals = self.normals.clone();
        let us: Vec<SubgroupSet> = normals.iter().map(|n| self.s.u_rel(n)).collect::<Result<_>>()?;
        let vs: Vec<SubgroupSet> = normals.iter().map(|n| self.s.v_rel(n)).collect::<Result<_>>()?;
        for (i, h) in normals.iter().enumerate() {
            for (j, n) in normals.iter().enumerate() {
                let left = h.is_subgroup_of(&us[j]);
                let right = vs[i].is_subgroup_of(n);
                self.check("L-ugroup", &[h, n], left == right, || {
                    format!("H <= U(S|N) is {left}, V(S|H) <= N is {right}")
                });
            }
        }
        Ok(())
    }

    fn ucorr(&mut self) -> Result<()> {
        let s = self.s;
        let normals = self.normals.clone();
        for n in &normals {
            let u = s.u_rel(n)?;
            for h in &normals {
                let left = h.is_subgroup_of(&u);
                if !h.is_subgroup_of(n) {
                    self.check("C-ucorr", &[h, n], !left, || format!("H not in N but H <= U(S|N) = {u}"));
                    continue;
                }
                let delta = s.is_delta_product(h, n)?;
                let triple = s.is_camina_triple(n, h, self.cache)?;
                let mut bad = Vec::new();
                if left != delta {
                    bad.push(format!("H <= U(S|N) is {left}, delta product is {delta}"));
                }
                if !triple.agree() {
                    bad.push(disagreement(&triple));
                }
                let ok = bad.is_empty();
                self.check("C-ucorr", &[h, n], ok, || bad.join("; "));
            }
        }
        Ok(())
    }

    fn ucor(&mut self) -> Result<()> {
        let s = self.s;
        for n in self.normals.clone() {
            let u = s.u_rel(&n)?;
            let star = s.is_star_product(&n)?;
            let pair = s.is_camina_pair(&n)?;
            let mut bad = Vec::new();
            if (u == n) != star {
                bad.push(format!("U(S|N) = {u}, star product {star}"));
            }
            if !pair.agree() {
                bad.push(disagreement(&pair));
            }
            let ok = bad.is_empty();
            self.check("C-ucor", &[&n], ok, || bad.join("; "));
        }
        Ok(())
    }

    fn vanishes_outside(&self, over: &[usize], n: &SubgroupSet) -> bool {
        over.iter()
            .all(|&x| (0..self.s.order()).all(|g| n.contains(g) || !self.s.nonzero_at(x, g)))
    }

    fn ugroupp(&mut self) -> Result<()> {
        let s = self.s;
        if s.is_s_abelian() {
            return Ok(());
        }
        for n in self.normals.clone() {
            let u = s.u_rel(&n)?;
            let mut bad = Vec::new();
            if !self.vanishes_outside(&s.irr_over(&u), &n) {
                bad.push(format!("(1) Irr(S|U) does not vanish off N, U = {u}"));
            }
            for h in &self.normals {
                if self.vanishes_outside(&s.irr_over(h), &n) && !h.is_subgroup_of(&u) {
                    bad.push(format!("(1) larger subgroup {h} also works"));
                }
            }
            for g in 0..s.order() {
                let cyclic = s.group().generated_by_set(&ElementSet::from_iter(s.order(), [g]));
                if self.vanishes_outside(&s.irr_over_set(cyclic.members()), &n) && !u.contains(g) {
                    bad.push(format!("(1) element {g} outside U also works"));
                }
                if s.u_membership(&n, g) != u.contains(g) {
                    bad.push(format!("(2) membership differs at {g}"));
                }
            }
            let ok = bad.is_empty();
            self.check("T-ugroupp", &[&n], ok, || bad.join("; "));
        }
        Ok(())
    }

    fn ucap(&mut self) -> Result<()> {
        let s = self.s;
        if s.is_s_abelian() {
            return Ok(());
        }
        let d = s.derived();
        for n in self.normals.clone() {
            let u = s.u_rel(&n)?;
            let ok = u.is_subgroup_of(&n) && u.is_subgroup_of(&d);
            self.check("L-ucap", &[&n], ok, || format!("U(S|N) = {u}, [G,S] = {d}"));
        }
        Ok(())
    }

    fn udelta(&mut self) -> Result<()> {
        let s = self.s;
        for n in self.normals.clone() {
            if n.is_trivial() {
                continue;
            }
            let u = s.u_rel(&n)?;
            let mut exists = false;
            for h in &self.normals {
                if !h.is_trivial() && h.is_subgroup_of(&n) && s.is_delta_product(h, &n)? {
                    exists = true;
                    break;
                }
            }
            let nontrivial = !u.is_trivial();
            self.check("T-udelta", &[&n], exists == nontrivial, || {
                format!("delta factor exists {exists}, U(S|N) = {u}")
            });
        }
        Ok(())
    }

    fn uchain(&mut self) -> Result<()> {
        let s = self.s;
        for n in self.normals.clone() {
            if n.is_trivial() || n.is_whole() {
                continue;
            }
            let chain = s.u_chain(&n)?;
            let last = chain.last().clone();
            let mut exists = false;
            for h in &self.normals {
                if !h.is_trivial() && h.is_subgroup_of(&n) && s.is_star_product(h)? {
                    exists = true;
                    break;
                }
            }
            let nontrivial = !last.is_trivial();
            self.check("L-uchain", &[&n], exists == nontrivial, || {
                format!("star factor exists {exists}, chain ends at {last}")
            });
        }
        Ok(())
    }

    fn uquot(&mut self) -> Result<()> {
        let s = self.s;
        let normals = self.normals.clone();
        for n in &normals {
            let vn = s.v_rel(n)?;
            let defl = s.deflation_cached(n, self.cache)?;
            for h in &normals {
                if !vn.is_subgroup_of(h) {
                    continue;
                }
                let left = defl.theory.u_rel(&defl.project_subgroup(h))?;
                let uh = s.u_rel(h)?;
                let right = defl.project_subgroup(&uh);
                let contained = n.is_subgroup_of(&uh);
                self.check("L-uquot", &[n, h], left == right && contained, || {
                    format!("U(quotient|H/N) = {left}, U(S|H) = {uh}, image {right}")
                });
            }
        }
        Ok(())
    }

    fn ukernel(&mut self) -> Result<()> {
        for n in self.normals.clone() {
            let u = self.s.u_rel(&n)?;
            let k = self.s.u_kernel(&n);
            self.check("L-ukernel", &[&n], &k == u.members(), || format!("U(S|N) = {u}, kernel intersection {k}"));
        }
        Ok(())
    }

    fn final_theorem(&mut self) -> Result<()> {
        let s = self.s;
        if s.is_s_abelian() {
            return Ok(());
        }
        let d = s.derived();
        let z = s.s_center()?;
        let v = s.v_theory();
        let u = s.u_theory()?;
        let vz = s.is_vz()?;
        let mut bad = Vec::new();
        if (z == v) != vz || (u == d) != vz {
            bad.push(format!("VZ {vz}, Z(S) = V(S) {}, U(S) = [G,S] {}", z == v, u == d));
        }
        let mut meet = d.members().clone();
        meet.intersect_with(z.members());
        let product = s.group().subgroup_product(&d, &z)?;
        if !(u.members().is_subset(&meet) && meet.is_subset(product.members()) && product.is_subgroup_of(&v)) {
            bad.push(format!("sandwich fails: U(S) = {u}, [G,S] = {d}, Z(S) = {z}, V(S) = {v}"));
        }
        let ok = bad.is_empty();
        self.check("T-final", &[&u, &d], ok, || bad.join("; "));
        Ok(())
    }

    fn sabelian(&mut self) -> Result<()> {
        let s = self.s;
        let one = s.group().trivial();
        let gcp = s.is_s_gcp(&one)?.holds;
        let ab = s.is_s_abelian();
        self.check("L-sabelian-gcp", &[&one], gcp == ab, || format!("S-abelian {ab}, (G,1) GCP {gcp}"));
        Ok(())
    }

    fn roworth(&mut self) -> Result<()> {
        let report = self.s.check_row_orthogonality();
        let ok = report.passed();
        self.check("P-roworth", &[], ok, || {
            report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ")
        });
        Ok(())
    }

    fn colorth(&mut self) -> Result<()> {
        let s = self.s;
        let reps: Vec<usize> = s.yparts().blocks().iter().map(|b| b[0]).collect();
        let mut bad = Vec::new();
        for &g in &reps {
            for h in 0..s.order() {
                let (value, ok) = s.check_column_orthogonality(g, h);
                if !ok {
                    bad.push(format!("({g},{h}) -> {value}"));
                }
            }
        }
        let ok = bad.is_empty();
        self.check("P-colorth", &[], ok, || bad.join("; "));
        Ok(())
    }

    fn prop42(&mut self) -> Result<()> {
        let s = self.s;
        for n in self.normals.clone() {
            let v = s.v_rel(&n)?;
            let mut product = s.group().trivial();
            for x in s.irr_over(&n) {
                product = s.group().subgroup_product(&product, &s.vanish_off(x))?;
            }
            let mut bad = Vec::new();
            if !s.is_s_normal(&v) {
                bad.push(format!("V(S|N) = {v} not S-normal"));
            }
            if product != v {
                bad.push(format!("V(S|N) = {v}, product of V(sigma) = {product}"));
            }
            if !n.is_subgroup_of(&v) {
                bad.push(format!("N not in V(S|N) = {v}"));
            }
            let ok = bad.is_empty();
            self.check("P-prop42", &[&n], ok, || bad.join("; "));
        }
        Ok(())
    }
}

fn disagreement(v: &crate::vanishing::CaminaVerdict) -> String {
    let parts: Vec<String> = v
        .disagreements()
        .map(|c| match &c.witness {
            Some(w) => format!("{} is {} ({w})", c.name, c.holds),
            None => format!("{} is {}", c.name, c.holds),
        })
        .collect();
    format!("{}: defining condition {}, but {}", v.subject, v.holds, parts.join(", "))
}

impl SuperTheory {
    /// `Irr(S|H)` for an arbitrary subgroup `H`.
    pub fn irr_over_set(&self, h: &ElementSet) -> Vec<usize> {
        (0..self.rank())
            .filter(|&x| !h.is_subset(self.super_kernel(x).members()))
            .collect()
    }
}

type Check<'a> = fn(&mut Suite<'a>) -> Result<()>;

/// Every result, in `THEOREM_IDS` order, over every applicable scope.
pub fn run_suite(label: &str, index: usize, theory: &SuperTheory, cache: &TableCache) -> Vec<TheoremReport> {
    let mut suite = Suite {
        s: theory,
        cache,
        group: label,
        theory: index,
        normals: theory.s_normal_subgroups().to_vec(),
        out: Vec::new(),
    };
    let checks: [Check; 31] = [
        Suite::celt,
        Suite::corgcp,
        Suite::cp,
        Suite::vs,
        Suite::zeta,
        Suite::class,
        Suite::hyper,
        Suite::vsn,
        Suite::vseries,
        Suite::vterm,
        Suite::vzs,
        Suite::zs,
        Suite::vznilp,
        Suite::scd,
        Suite::unormal,
        Suite::irr,
        Suite::uorder,
        Suite::ugroup,
        Suite::ucorr,
        Suite::ucor,
        Suite::ugroupp,
        Suite::ucap,
        Suite::udelta,
        Suite::uchain,
        Suite::uquot,
        Suite::ukernel,
        Suite::final_theorem,
        Suite::sabelian,
        Suite::roworth,
        Suite::colorth,
        Suite::prop42,
    ];
    for (id, f) in THEOREM_IDS.iter().zip(checks) {
        suite.run(id, f);
    }
    suite.out
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub group: GroupTable,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    /// Enumerate every theory; otherwise finest and coarsest only.
    pub all_scts: bool,
    pub jobs: Option<usize>,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            all_scts: true,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoryReport {
    pub index: usize,
    pub xparts: Vec<Vec<usize>>,
    pub yparts: Vec<Vec<usize>>,
    pub reports: Vec<TheoremReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub label: String,
    pub order: usize,
    pub theory_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    pub theories: Vec<TheoryReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub groups: Vec<GroupReport>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Counts per theorem id, in `THEOREM_IDS` order.
    pub fn by_theorem(&self) -> Vec<(&'static str, Summary)> {
        let mut map: BTreeMap<&str, Summary> = BTreeMap::new();
        for r in self.reports() {
            map.entry(r.theorem_id).or_default().add(r.status);
        }
        THEOREM_IDS
            .iter()
            .map(|id| (*id, map.get(id).copied().unwrap_or_default()))
            .collect()
    }

    pub fn reports(&self) -> impl Iterator<Item = &TheoremReport> {
        self.groups.iter().flat_map(|g| g.theories.iter().flat_map(|t| t.reports.iter()))
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports().filter(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let _ = writeln!(out, "{} (order {}): {} theories", g.label, g.order, g.theory_count);
            if let Some(n) = &g.notice {
                let _ = writeln!(out, "  note: {n}");
            }
            for t in &g.theories {
                let s = Summary::of(&t.reports);
                let _ = writeln!(
                    out,
                    "  theory {}: pass {}, fail {}, vacuous {}, n/a {}",
                    t.index, s.pass, s.fail, s.vacuous, s.na
                );
                for r in t.reports.iter().filter(|r| r.status == Status::Fail) {
                    let _ = writeln!(
                        out,
                        "    FAIL {} {:?}: {}",
                        r.theorem_id,
                        r.scope.subgroups,
                        r.witness.as_deref().unwrap_or("")
                    );
                }
            }
        }
        let _ = writeln!(out, "by theorem:");
        for (id, s) in self.by_theorem() {
            let _ = writeln!(
                out,
                "  {id:<16} pass {:>6}  fail {:>4}  vacuous {:>4}  n/a {:>4}",
                s.pass, s.fail, s.vacuous, s.na
            );
        }
        let s = self.summary;
        let _ = writeln!(out, "total: pass {}, fail {}, vacuous {}, n/a {}", s.pass, s.fail, s.vacuous, s.na);
        out
    }
}

fn theories_for(table: &Arc<CharacterTable>, all: bool) -> Result<(Vec<SuperTheory>, Option<String>)> {
    let extremes = |notice| -> Result<(Vec<SuperTheory>, Option<String>)> {
        let mut out = vec![SuperTheory::finest(table)];
        if table.group().order() > 1 {
            let c = SuperTheory::coarsest(table)?;
            if c != out[0] {
                out.push(c);
            }
        }
        Ok((out, notice))
    };
    if !all {
        return extremes(None);
    }
    match enumerate_scts(table) {
        Ok(all) => Ok((all, None)),
        Err(e @ Error::GuardExceeded { .. }) => extremes(Some(format!("{e}; finest and coarsest only"))),
        Err(e) => Err(e),
    }
}

/// Runs the suite over every theory of every group.
pub fn run_corpus(catalog: &[CorpusEntry], options: CorpusOptions) -> Result<CorpusReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = options.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| {
        let tables: Vec<Arc<CharacterTable>> = catalog
            .par_iter()
            .map(|e| dixon_character_table(&e.group).map(Arc::new))
            .collect::<Result<_>>()?;
        let mut groups = Vec::with_capacity(catalog.len());
        let mut summary = Summary::default();
        for (entry, table) in catalog.iter().zip(&tables) {
            let (theories, notice) = theories_for(table, options.all_scts)?;
            let cache = TableCache::new();
            let reports: Vec<TheoryReport> = theories
                .par_iter()
                .enumerate()
                .map(|(i, t)| TheoryReport {
                    index: i,
                    xparts: t.xparts().to_vec(),
                    yparts: t.yparts().blocks().to_vec(),
                    reports: run_suite(&entry.label, i, t, &cache),
                })
                .collect();
            for t in &reports {
                summary.merge(&Summary::of(&t.reports));
            }
            groups.push(GroupReport {
                label: entry.label.clone(),
                order: entry.group.order(),
                theory_count: theories.len(),
                notice,
                theories: reports,
            });
        }
        Ok(CorpusReport { groups, summary })
    })
}

/// Labels of the default catalog.
pub const DEFAULT_CATALOG: [&str; 19] = [
    "C2", "C3", "C4", "C5", "C6", "C2xC2", "C8", "C2xC4", "C2xC2xC2", "S3", "D4", "Q8", "D5", "D6", "A4", "C3xC3",
    "D8", "Q16", "S4",
];

pub fn default_catalog() -> Result<Vec<CorpusEntry>> {
    DEFAULT_CATALOG
        .iter()
        .map(|&label| {
            Ok(CorpusEntry {
                label: label.to_string(),
                group: crate::group::catalog_group(label)?,
            })
        })
        .collect()
}
