//! Exact irreducible character tables.

mod dixon;
mod modp;
mod text;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::group::GroupTable;
use crate::set::{ElementPartition, ElementSet};

pub use dixon::{
    class_mult_coefficients, dixon_character_table, dixon_with_bound, ClassCoefficients,
    DEFAULT_MAX_ORDER,
};
pub use text::{format_table, ingest_table};

/// Irreducible characters of a group, rows indexed by character and columns
/// by conjugacy class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<GroupTable>,
    classes: ElementPartition,
    reps: Vec<usize>,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    exponent: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub(crate) fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl CharacterTable {
    /// Assembles a table from raw rows over the canonical classes, sorting
    /// the rows canonically. Does not validate.
    pub(crate) fn assemble(group: Arc<GroupTable>, mut values: Vec<Vec<Cyclotomic>>) -> Self {
        let classes = group.conjugacy_classes();
        let reps = classes.blocks().iter().map(|b| b[0]).collect();
        let exponent = group.exponent();
        let is_principal = |row: &[Cyclotomic]| row.iter().all(|v| *v == Cyclotomic::one(exponent));
        values.sort_by(|a, b| {
            is_principal(b)
                .cmp(&is_principal(a))
                .then_with(|| a[0].cmp(&b[0]))
                .then_with(|| a.cmp(b))
        });
        let degrees = values
            .iter()
            .map(|row| {
                row[0]
                    .to_rational()
                    .filter(|q| q.is_integer())
                    .and_then(|q| u64::try_from(q.to_integer()).ok())
                    .unwrap_or(0)
            })
            .collect();
        CharacterTable {
            group,
            classes,
            reps,
            values,
            degrees,
            exponent,
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn classes(&self) -> &ElementPartition {
        &self.classes
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.values.len()
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes.block(k).len()
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    /// `χ_i` on class `k`.
    pub fn value(&self, i: usize, k: usize) -> &Cyclotomic {
        &self.values[i][k]
    }

    /// `χ_i(g)`.
    pub fn value_at(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.values[i][self.classes.block_of(g)]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// `ker χ_i = {g : χ_i(g) = χ_i(1)}`.
    pub fn kernel(&self, i: usize) -> ElementSet {
        let d = &self.values[i][0];
        let order = self.group.order();
        let mut set = ElementSet::empty(order);
        for (k, block) in self.classes.blocks().iter().enumerate() {
            if &self.values[i][k] == d {
                for &g in block {
                    set.insert(g);
                }
            }
        }
        set
    }

    /// Exact checks of both orthogonality relations, the degree sum, the
    /// principal row and integrality of all values.
    pub fn validate(&self) -> ValidationReport {
        validate_table(self)
    }
}

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn validate_table(t: &CharacterTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    let g = t.group();
    let order = g.order();
    let r = t.num_classes();
    let e = t.exponent();
    report.push(
        "square",
        t.values.len() == r && t.values.iter().all(|row| row.len() == r),
        format!("{} rows over {r} classes", t.values.len()),
    );
    if !report.passed() {
        return report;
    }
    let one = Cyclotomic::one(e);
    report.push(
        "principal",
        t.values[0].iter().all(|v| *v == one),
        "row 0 is the principal character",
    );
    let integral = t.values.iter().flatten().all(|v| v.is_integral());
    report.push("integral", integral, "values have integral coordinates");

    let degree_ok = t.degrees.iter().all(|&d| d > 0);
    let sum: u64 = t.degrees.iter().map(|d| d * d).sum();
    report.push(
        "degree-sum",
        degree_ok && sum == order as u64,
        format!("sum of squared degrees {sum}, group order {order}"),
    );

    let conj: Vec<Vec<Cyclotomic>> = t
        .values
        .iter()
        .map(|row| row.iter().map(Cyclotomic::conjugate).collect())
        .collect();
    let inv_order = BigRational::new(BigInt::one(), BigInt::from(order));

    let mut first_bad = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let mut acc = Cyclotomic::zero(e);
            for k in 0..r {
                let term = &t.values[i][k] * &conj[j][k];
                acc = &acc + &term.scale(&rational(t.class_size(k)));
            }
            let ip = acc.scale(&inv_order);
            let expected = if i == j { one.clone() } else { Cyclotomic::zero(e) };
            if ip != expected {
                first_bad.push(format!("<chi{i}, chi{j}> = {ip}"));
            }
        }
    }
    report.push(
        "first-orthogonality",
        first_bad.is_empty(),
        if first_bad.is_empty() {
            format!("{} pairs", r * r)
        } else {
            first_bad.join("; ")
        },
    );

    let mut second_bad = Vec::new();
    for k in 0..r {
        for l in 0..r {
            let mut acc = Cyclotomic::zero(e);
            for i in 0..r {
                acc = &acc + &(&t.values[i][k] * &conj[i][l]);
            }
            let expected = if k == l {
                Cyclotomic::from_rational(e, BigRational::new(order.into(), t.class_size(k).into()))
            } else {
                Cyclotomic::zero(e)
            };
            if acc != expected {
                second_bad.push(format!("column {k} x column {l} = {acc}"));
            }
        }
    }
    report.push(
        "second-orthogonality",
        second_bad.is_empty(),
        if second_bad.is_empty() {
            format!("{} pairs", r * r)
        } else {
            second_bad.join("; ")
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog_group;

    fn table(name: &str) -> CharacterTable {
        dixon_character_table(&catalog_group(name).unwrap()).unwrap()
    }

    #[test]
    fn c2_table() {
        let t = table("C2");
        let v: Vec<Vec<String>> = t
            .values()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(v, vec![vec!["1", "1"], vec!["1", "-1"]]);
    }

    #[test]
    fn c4_first_orthogonality_all_pairs() {
        let t = table("C4");
        let report = t.validate();
        let first = report
            .checks
            .iter()
            .find(|c| c.name == "first-orthogonality")
            .unwrap();
        assert!(first.passed);
        assert_eq!(first.detail, "16 pairs");
    }

    #[test]
    fn corrupted_row_is_reported() {
        let mut t = table("S3");
        // degree-2 row (2, 0, -1) -> (2, 1, 0)
        t.values[2][1] = Cyclotomic::one(t.exponent);
        t.values[2][2] = Cyclotomic::zero(t.exponent);
        let report = t.validate();
        assert!(!report.passed());
        let bad = report.failures().find(|c| c.name == "first-orthogonality").unwrap();
        assert!(bad.detail.contains("<chi2, chi2>"), "{}", bad.detail);
    }

    #[test]
    fn kernels() {
        let t = table("S3");
        assert_eq!(t.kernel(0).len(), 6);
        assert_eq!(t.kernel(1).to_vec(), vec![0, 3, 4]);
        assert_eq!(t.kernel(2).to_vec(), vec![0]);
    }
}
