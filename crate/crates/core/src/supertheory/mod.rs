//! Supercharacter theories: a partition `𝒳` of the irreducible characters
//! and a partition `𝒴` of the group such that `{1} ∈ 𝒴`, `|𝒳| = |𝒴|`, and
//! every `σ_X = Σ_{χ∈X} χ(1)χ` is constant on every block of `𝒴`.

mod enumerate;
mod induced;

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::chartab::{CharacterTable, ValidationReport};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::set::{ElementPartition, ElementSet, SubgroupSet};

pub use enumerate::{
    enumerate_scts, enumerate_scts_with, EnumerateOptions, DEFAULT_MAX_IRREDUCIBLES,
};
pub use induced::{Deflated, EmbeddedTable, QuotientTable, Restricted, TableCache};

#[derive(Clone, Debug)]
pub struct SuperTheory {
    table: Arc<CharacterTable>,
    xparts: Vec<Vec<usize>>,
    yparts: ElementPartition,
    sigma: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    nonzero: Vec<Vec<bool>>,
    pub(crate) normals: OnceLock<Vec<SubgroupSet>>,
}

/// One supercharacter `σ_X` with its values on the superclasses.
#[derive(Clone, Debug, Serialize)]
pub struct SuperCharacter {
    pub part: usize,
    pub members: Vec<usize>,
    pub values: Vec<Cyclotomic>,
    pub degree: u64,
}

impl PartialEq for SuperTheory {
    fn eq(&self, other: &Self) -> bool {
        self.xparts == other.xparts && self.yparts == other.yparts
    }
}

impl Eq for SuperTheory {}

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `σ_X` on every conjugacy class.
fn sigma_on_classes(table: &CharacterTable, part: &[usize]) -> Vec<Cyclotomic> {
    let e = table.exponent();
    (0..table.num_classes())
        .map(|k| {
            part.iter().fold(Cyclotomic::zero(e), |acc, &i| {
                let d = Cyclotomic::from_int(e, table.degrees()[i] as i64);
                &acc + &(&d * table.value(i, k))
            })
        })
        .collect()
}

fn canonical_parts(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    parts.sort();
    parts
}

fn is_partition_of(parts: &[Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    for p in parts {
        if p.is_empty() {
            return false;
        }
        for &i in p {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl SuperTheory {
    /// Derives `𝒴` as the common level sets of the `σ_X`; returns the theory
    /// iff `{1}` is a level set and the counts agree.
    pub fn from_character_partition(
        table: &Arc<CharacterTable>,
        xparts: Vec<Vec<usize>>,
    ) -> Option<SuperTheory> {
        if !is_partition_of(&xparts, table.num_irreducibles()) {
            return None;
        }
        let xparts = canonical_parts(xparts);
        let on_classes: Vec<Vec<Cyclotomic>> =
            xparts.iter().map(|p| sigma_on_classes(table, p)).collect();
        // column key of each conjugacy class
        let keys: Vec<Vec<&Cyclotomic>> = (0..table.num_classes())
            .map(|k| on_classes.iter().map(|row| &row[k]).collect())
            .collect();
        let mut level: BTreeMap<&Vec<&Cyclotomic>, Vec<usize>> = BTreeMap::new();
        for (k, key) in keys.iter().enumerate() {
            level.entry(key).or_default().extend_from_slice(table.classes().block(k));
        }
        if level.len() != xparts.len() || level[&keys[0]].len() != 1 {
            return None;
        }
        let yparts = ElementPartition::new(table.group().order(), level.into_values().collect())?;
        Some(Self::build(table.clone(), xparts, yparts, &on_classes))
    }

    fn build(
        table: Arc<CharacterTable>,
        xparts: Vec<Vec<usize>>,
        yparts: ElementPartition,
        on_classes: &[Vec<Cyclotomic>],
    ) -> SuperTheory {
        let classes = table.classes();
        let sigma: Vec<Vec<Cyclotomic>> = on_classes
            .iter()
            .map(|row| {
                yparts
                    .blocks()
                    .iter()
                    .map(|b| row[classes.block_of(b[0])].clone())
                    .collect()
            })
            .collect();
        let degrees = xparts
            .iter()
            .map(|p| p.iter().map(|&i| table.degrees()[i].pow(2)).sum())
            .collect();
        let nonzero = sigma
            .iter()
            .map(|row| row.iter().map(|v| !v.is_zero()).collect())
            .collect();
        SuperTheory {
            table,
            xparts,
            yparts,
            sigma,
            degrees,
            nonzero,
            normals: OnceLock::new(),
        }
    }

    /// Groups irreducibles by their central characters summed over the
    /// blocks of `yparts`, then accepts the pair only if it satisfies the
    /// full definition.
    pub fn from_class_partition(
        table: &Arc<CharacterTable>,
        yparts: &ElementPartition,
    ) -> Option<SuperTheory> {
        let classes = table.classes();
        if yparts.order() != table.group().order()
            || yparts.block(0) != [0]
            || !classes.refines(yparts)
        {
            return None;
        }
        let e = table.exponent();
        let mut fibers: BTreeMap<Vec<Cyclotomic>, Vec<usize>> = BTreeMap::new();
        for i in 0..table.num_irreducibles() {
            let inv_degree = BigRational::new(1.into(), BigInt::from(table.degrees()[i]));
            let key: Vec<Cyclotomic> = yparts
                .blocks()
                .iter()
                .map(|b| {
                    let mut acc = Cyclotomic::zero(e);
                    for k in 0..classes.len() {
                        if yparts.block_of(classes.block(k)[0]) == yparts.block_of(b[0]) {
                            acc = &acc + &table.value(i, k).scale(&rational(classes.block(k).len()));
                        }
                    }
                    acc.scale(&inv_degree)
                })
                .collect();
            fibers.entry(key).or_default().push(i);
        }
        let candidate = Self::from_character_partition(table, fibers.into_values().collect())?;
        (candidate.yparts == *yparts).then_some(candidate)
    }

    /// `m(G)`: singleton parts and conjugacy classes.
    pub fn finest(table: &Arc<CharacterTable>) -> SuperTheory {
        let parts = (0..table.num_irreducibles()).map(|i| vec![i]).collect();
        Self::from_character_partition(table, parts).expect("m(G) is a supercharacter theory")
    }

    /// `({{1_G}, rest}, {{1}, G∖1})`; undefined for the trivial group.
    pub fn coarsest(table: &Arc<CharacterTable>) -> Result<SuperTheory> {
        let n = table.num_irreducibles();
        if table.group().order() < 2 {
            return Err(Error::Precondition("coarsest theory needs |G| >= 2".into()));
        }
        let parts = vec![vec![0], (1..n).collect()];
        Self::from_character_partition(table, parts)
            .ok_or_else(|| Error::Internal("coarsest partition is not a theory".into()))
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn group(&self) -> &GroupTable {
        self.table.group()
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    pub fn xparts(&self) -> &[Vec<usize>] {
        &self.xparts
    }

    pub fn yparts(&self) -> &ElementPartition {
        &self.yparts
    }

    /// Number of supercharacters (equal to the number of superclasses).
    pub fn rank(&self) -> usize {
        self.xparts.len()
    }

    /// `σ_X` on superclass `Y`.
    pub fn sigma(&self, x: usize, y: usize) -> &Cyclotomic {
        &self.sigma[x][y]
    }

    pub fn sigma_at(&self, x: usize, g: usize) -> &Cyclotomic {
        &self.sigma[x][self.yparts.block_of(g)]
    }

    /// `σ_X(g) ≠ 0`.
    pub fn nonzero_at(&self, x: usize, g: usize) -> bool {
        self.nonzero[x][self.yparts.block_of(g)]
    }

    /// `σ_X(1) = ‖X‖²`.
    pub fn degree(&self, x: usize) -> u64 {
        self.degrees[x]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.yparts.block_of(g)
    }

    /// `Cl_S(g)` as a set.
    pub fn class_set(&self, g: usize) -> ElementSet {
        self.yparts.block_set(self.class_of(g))
    }

    pub fn class_size(&self, g: usize) -> usize {
        self.yparts.block(self.class_of(g)).len()
    }

    pub fn supercharacter(&self, x: usize) -> SuperCharacter {
        SuperCharacter {
            part: x,
            members: self.xparts[x].clone(),
            values: self.sigma[x].clone(),
            degree: self.degrees[x],
        }
    }

    /// Index of the part holding the principal character.
    pub fn principal_part(&self) -> usize {
        self.xparts.iter().position(|p| p.contains(&0)).expect("partition")
    }

    /// A subgroup is S-normal iff it is a union of superclasses.
    pub fn is_s_normal(&self, h: &SubgroupSet) -> bool {
        self.yparts.is_union_of_blocks(h.members())
    }

    pub(crate) fn require_s_normal(&self, h: &SubgroupSet) -> Result<()> {
        if self.is_s_normal(h) {
            Ok(())
        } else {
            Err(Error::NotSNormal)
        }
    }

    /// Re-checks the definition from the character table, independently of
    /// the cached values.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let table = &self.table;
        let mut push = |name: &str, passed: bool, detail: String| {
            report.checks.push(crate::chartab::Check {
                name: name.into(),
                passed,
                detail,
            })
        };
        push(
            "x-partition",
            is_partition_of(&self.xparts, table.num_irreducibles()),
            format!("{} parts", self.xparts.len()),
        );
        push(
            "identity-block",
            self.yparts.blocks().iter().any(|b| b == &[0]),
            "{1} is a superclass".into(),
        );
        push(
            "equal-counts",
            self.xparts.len() == self.yparts.len(),
            format!("|X| = {}, |Y| = {}", self.xparts.len(), self.yparts.len()),
        );
        let mut not_constant = Vec::new();
        for (x, part) in self.xparts.iter().enumerate() {
            let row = sigma_on_classes(table, part);
            for (y, block) in self.yparts.blocks().iter().enumerate() {
                let first = &row[table.classes().block_of(block[0])];
                if block.iter().any(|&g| &row[table.classes().block_of(g)] != first) {
                    not_constant.push(format!("sigma{x} on block {y}"));
                } else if first != &self.sigma[x][y] {
                    not_constant.push(format!("cached sigma{x} on block {y}"));
                }
            }
        }
        push(
            "constant-on-blocks",
            not_constant.is_empty(),
            not_constant.join("; "),
        );
        report
    }

    /// `⟨σ_i, σ_j⟩ = δ_ij ‖X_i‖²` for every pair.
    pub fn check_row_orthogonality(&self) -> ValidationReport {
        let e = self.table.exponent();
        let order = self.order();
        let inv_order = BigRational::new(1.into(), BigInt::from(order));
        let m = self.rank();
        let mut report = ValidationReport::default();
        for i in 0..m {
            for j in 0..m {
                let mut acc = Cyclotomic::zero(e);
                for (r, block) in self.yparts.blocks().iter().enumerate() {
                    let t = Cyclotomic::hermitian_term(&self.sigma[i][r], &self.sigma[j][r]);
                    acc = &acc + &t.scale(&rational(block.len()));
                }
                let ip = acc.scale(&inv_order);
                let expected = if i == j {
                    Cyclotomic::from_int(e, self.degrees[i] as i64)
                } else {
                    Cyclotomic::zero(e)
                };
                report.checks.push(crate::chartab::Check {
                    name: format!("<sigma{i}, sigma{j}>"),
                    passed: ip == expected,
                    detail: format!("{ip} (expected {expected})"),
                });
            }
        }
        report
    }

    /// `Σ_σ σ(g) conj(σ(h)) / σ(1)`, and whether it equals `|G|/|Cl_S(g)|`
    /// when `h ∈ Cl_S(g)` and 0 otherwise.
    pub fn check_column_orthogonality(&self, g: usize, h: usize) -> (Cyclotomic, bool) {
        let e = self.table.exponent();
        let (yg, yh) = (self.class_of(g), self.class_of(h));
        let mut acc = Cyclotomic::zero(e);
        for x in 0..self.rank() {
            let t = Cyclotomic::hermitian_term(&self.sigma[x][yg], &self.sigma[x][yh]);
            acc = &acc + &t.scale(&BigRational::new(1.into(), BigInt::from(self.degrees[x])));
        }
        let expected = if yg == yh {
            Cyclotomic::from_rational(
                e,
                BigRational::new(BigInt::from(self.order()), BigInt::from(self.class_size(g))),
            )
        } else {
            Cyclotomic::zero(e)
        };
        let ok = acc == expected;
        (acc, ok)
    }

    /// Every superclass of `self` lies inside a superclass of `coarser`.
    pub fn is_refinement_of(&self, coarser: &SuperTheory) -> bool {
        self.yparts.refines(&coarser.yparts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "parts:").unwrap();
        for (x, p) in self.xparts.iter().enumerate() {
            writeln!(out, "  X{x} = {:?}  degree {}", p, self.degrees[x]).unwrap();
        }
        writeln!(out, "classes:").unwrap();
        for (y, b) in self.yparts.blocks().iter().enumerate() {
            writeln!(out, "  K{y} = {:?}", b).unwrap();
        }
        writeln!(out, "values:").unwrap();
        for (x, row) in self.sigma.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "  sigma{x}: {}", cells.join(", ")).unwrap();
        }
        out
    }

    pub fn export(&self) -> TheoryExport {
        TheoryExport {
            xparts: self.xparts.clone(),
            yparts: self.yparts.blocks().to_vec(),
            sigma: self
                .sigma
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

/// Serializable view of a theory's supercharacter table.
#[derive(Clone, Debug, Serialize)]
pub struct TheoryExport {
    pub xparts: Vec<Vec<usize>>,
    pub yparts: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<String>>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::chartab::dixon_character_table;
    use crate::group::catalog_group;

    pub(crate) fn table(name: &str) -> Arc<CharacterTable> {
        Arc::new(dixon_character_table(&catalog_group(name).unwrap()).unwrap())
    }

    #[test]
    fn finest_is_conjugacy_classes() {
        let t = table("Q8");
        let s = SuperTheory::finest(&t);
        assert_eq!(s.rank(), 5);
        assert_eq!(s.yparts(), t.classes());
        assert!(s.validate().passed());
    }

    #[test]
    fn c4_three_part_theory() {
        // C4 rows: 1, χ², then χ, χ³ in canonical order; find χ² by value
        let t = table("C4");
        let sq = (1..4).find(|&i| t.value(i, 2).to_rational().is_some() && t.value(i, 1).is_rational()).unwrap();
        let others: Vec<usize> = (1..4).filter(|&i| i != sq).collect();
        let s = SuperTheory::from_character_partition(&t, vec![vec![0], vec![sq], others]).unwrap();
        assert_eq!(s.yparts().blocks(), &[vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn s3_linear_pair_is_not_a_theory() {
        let t = table("S3");
        assert!(SuperTheory::from_character_partition(&t, vec![vec![0, 1], vec![2]]).is_none());
    }

    #[test]
    fn coarsest_values() {
        let t = table("S3");
        let s = SuperTheory::coarsest(&t).unwrap();
        let rest = 1 - s.principal_part();
        let vals: Vec<String> = (0..2).map(|y| s.sigma(rest, y).to_string()).collect();
        assert_eq!(vals, vec!["5", "-1"]);
        let c2 = table("C2");
        assert_eq!(SuperTheory::finest(&c2), SuperTheory::coarsest(&c2).unwrap());
        assert!(SuperTheory::coarsest(&table("C1")).is_err());
    }

    #[test]
    fn class_partition_derivation() {
        let t = table("S3");
        let fin = SuperTheory::from_class_partition(&t, t.classes()).unwrap();
        assert_eq!(fin, SuperTheory::finest(&t));
        let y = ElementPartition::new(6, vec![vec![0], vec![1, 2, 3, 4, 5]]).unwrap();
        let coarse = SuperTheory::from_class_partition(&t, &y).unwrap();
        assert_eq!(coarse, SuperTheory::coarsest(&t).unwrap());
        let c4 = table("C4");
        let y = ElementPartition::new(4, vec![vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(SuperTheory::from_class_partition(&c4, &y).unwrap().rank(), 3);
        // {1}, {g}, {g², g³} is not a theory of C4
        let y = ElementPartition::new(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        assert!(SuperTheory::from_class_partition(&c4, &y).is_none());
    }

    #[test]
    fn row_orthogonality_coarsest_s3() {
        let t = table("S3");
        let s = SuperTheory::coarsest(&t).unwrap();
        let report = s.check_row_orthogonality();
        assert!(report.passed());
        let rest = 1 - s.principal_part();
        let name = format!("<sigma{rest}, sigma{rest}>");
        let c = report.checks.iter().find(|c| c.name == name).unwrap();
        assert!(c.detail.starts_with("5 "));
    }

    #[test]
    fn column_orthogonality_coarsest_s3() {
        let t = table("S3");
        let s = SuperTheory::coarsest(&t).unwrap();
        let (v, ok) = s.check_column_orthogonality(1, 1);
        assert!(ok);
        assert_eq!(v.to_string(), "6/5");
        let (v, ok) = s.check_column_orthogonality(0, 0);
        assert!(ok && v.to_string() == "6");
        let (v, ok) = s.check_column_orthogonality(0, 3);
        assert!(ok && v.is_zero());
    }
}
