//! Everything `analyze` reports about one theory. Text and JSON are both
//! rendered from [`Analysis`].

use std::fmt::Write as _;

use serde::Serialize;
use superchar::structure::SeriesResult;
use superchar::supertheory::TableCache;
use superchar::{Result, SubgroupSet, SuperTheory};

#[derive(Serialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct NormalEntry {
    pub subgroup: Subgroup,
    pub v_rel: Subgroup,
    pub u_rel: Subgroup,
    pub u_chain: Vec<Vec<usize>>,
    pub s_gcp: bool,
    pub camina_pair: bool,
    pub star_product: bool,
}

#[derive(Serialize)]
pub struct Series {
    pub terms: Vec<Vec<usize>>,
    pub class_index: Option<usize>,
}

#[derive(Serialize)]
pub struct ScdEntry {
    pub part: usize,
    pub degree: u64,
    pub nonlinear: bool,
}

#[derive(Serialize)]
pub struct Analysis {
    pub group: String,
    pub order: usize,
    pub rank: usize,
    pub xparts: Vec<Vec<usize>>,
    pub yparts: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<String>>,
    pub s_abelian: bool,
    pub center: Subgroup,
    pub derived: Subgroup,
    pub v_theory: Subgroup,
    pub u_theory: Subgroup,
    pub s_normal: Vec<NormalEntry>,
    pub lower_series: Series,
    pub upper_series: Series,
    pub v_series: Series,
    pub nilpotence_class: Option<usize>,
    pub hypercenter: Subgroup,
    pub camina_elements: Vec<usize>,
    pub vz: bool,
    pub scd: Vec<ScdEntry>,
    pub scd_check: Option<bool>,
}

fn series(s: &SeriesResult) -> Series {
    Series {
        terms: s.terms.iter().map(|t| t.to_vec()).collect(),
        class_index: s.class_index,
    }
}

pub fn analyze(label: &str, s: &SuperTheory) -> Result<Analysis> {
    let cache = TableCache::new();
    let z = s.s_center()?;
    let d = s.derived();
    let v = s.v_theory();
    let u = s.u_theory()?;
    let name = |h: &SubgroupSet| {
        let mut names = Vec::new();
        if h.is_trivial() {
            names.push("1");
        }
        if h.is_whole() {
            names.push("G");
        }
        if *h == z {
            names.push("Z(S)");
        }
        if *h == d {
            names.push("[G,S]");
        }
        if *h == v {
            names.push("V(S)");
        }
        Subgroup {
            members: h.to_vec(),
            names,
        }
    };
    let mut s_normal = Vec::new();
    for n in s.s_normal_subgroups() {
        s_normal.push(NormalEntry {
            subgroup: name(n),
            v_rel: name(&s.v_rel(n)?),
            u_rel: name(&s.u_rel(n)?),
            u_chain: s.u_chain(n)?.terms.iter().map(|t| t.to_vec()).collect(),
            s_gcp: s.is_s_gcp(n)?.holds,
            camina_pair: s.is_camina_pair(n)?.holds,
            star_product: s.is_star_product(n)?,
        });
    }
    let upper = s.upper_series(&cache)?;
    let nonlinear = s.irr_over(&d);
    let vz = s.is_vz()?;
    Ok(Analysis {
        group: label.to_string(),
        order: s.order(),
        rank: s.rank(),
        xparts: s.xparts().to_vec(),
        yparts: s.yparts().blocks().to_vec(),
        sigma: (0..s.rank())
            .map(|x| (0..s.rank()).map(|y| s.sigma(x, y).to_string()).collect())
            .collect(),
        s_abelian: s.is_s_abelian(),
        center: name(&z),
        derived: name(&d),
        v_theory: name(&v),
        u_theory: name(&u),
        s_normal,
        lower_series: series(&s.lower_series()),
        upper_series: series(&upper),
        v_series: series(&s.v_series()),
        nilpotence_class: upper.class_index,
        hypercenter: name(upper.last()),
        camina_elements: (0..s.order()).filter(|&g| s.is_camina_element(g).holds).collect(),
        vz,
        scd: (0..s.rank())
            .map(|x| ScdEntry {
                part: x,
                degree: s.degree(x),
                nonlinear: nonlinear.contains(&x),
            })
            .collect(),
        scd_check: (vz && !s.is_s_abelian()).then(|| s.scd_check().map(|r| r.passed())).transpose()?,
    })
}

fn show(h: &Subgroup) -> String {
    let members: Vec<String> = h.members.iter().map(|g| g.to_string()).collect();
    if h.names.is_empty() {
        format!("{{{}}}", members.join(", "))
    } else {
        format!("{{{}}} ({})", members.join(", "), h.names.join(", "))
    }
}

fn show_terms(s: &Series) -> String {
    s.terms
        .iter()
        .map(|t| format!("{}", t.len()))
        .collect::<Vec<_>>()
        .join(" > ")
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "group {} (order {}), {} superclasses", self.group, self.order, self.rank);
        let _ = writeln!(o, "X: {:?}", self.xparts);
        let _ = writeln!(o, "Y: {:?}", self.yparts);
        for (x, row) in self.sigma.iter().enumerate() {
            let _ = writeln!(o, "  sigma{x}: {}", row.join(" | "));
        }
        let _ = writeln!(o, "S-abelian: {}", self.s_abelian);
        let _ = writeln!(o, "Z(S) = {}", show(&self.center));
        let _ = writeln!(o, "[G,S] = {}", show(&self.derived));
        let _ = writeln!(o, "V(S) = {}", show(&self.v_theory));
        let _ = writeln!(o, "U(S) = {}", show(&self.u_theory));
        let _ = writeln!(o, "S-normal subgroups:");
        for n in &self.s_normal {
            let _ = writeln!(
                o,
                "  N = {}: V(S|N) = {}, U(S|N) = {}, GCP {}, Camina pair {}, star product {}",
                show(&n.subgroup),
                show(&n.v_rel),
                show(&n.u_rel),
                n.s_gcp,
                n.camina_pair,
                n.star_product
            );
        }
        let _ = writeln!(o, "lower series orders: {}", show_terms(&self.lower_series));
        let _ = writeln!(o, "upper series orders: {}", show_terms(&self.upper_series));
        let _ = writeln!(o, "V-series orders: {}", show_terms(&self.v_series));
        match self.nilpotence_class {
            Some(c) => {
                let _ = writeln!(o, "S-nilpotent, class {c}");
            }
            None => {
                let _ = writeln!(o, "not S-nilpotent, hypercenter {}", show(&self.hypercenter));
            }
        }
        let _ = writeln!(o, "S-Camina elements: {:?}", self.camina_elements);
        let _ = writeln!(o, "VZ: {}", self.vz);
        let degrees: Vec<String> = self.scd.iter().map(|e| e.degree.to_string()).collect();
        let _ = writeln!(o, "supercharacter degrees: {}", degrees.join(", "));
        if let Some(ok) = self.scd_check {
            let _ = writeln!(o, "degree check: {}", if ok { "pass" } else { "FAIL" });
        }
        o
    }
}
