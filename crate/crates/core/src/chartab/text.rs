//! Plain-text character table format.
//!
//! ```text
//! chartab S3 classes=3 exponent=6
//! class 0 size=1 rep=0
//! class 1 size=3 rep=1
//! class 2 size=2 rep=3
//! 1, 1, 1
//! 1, -1, 1
//! 2, 0, -1
//! ```

use std::fmt::Write;
use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupTable;

use super::CharacterTable;

pub fn format_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "chartab {} classes={} exponent={}",
        t.group().label(),
        t.num_classes(),
        t.exponent()
    )
    .unwrap();
    for k in 0..t.num_classes() {
        writeln!(out, "class {k} size={} rep={}", t.class_size(k), t.reps()[k]).unwrap();
    }
    for row in t.values() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(", ")).unwrap();
    }
    out
}

fn field<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected `{key}=...`, got `{token}`")))
}

fn number(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Format(format!("expected a number, got `{s}`")))
}

/// Parses and validates an externally supplied table for `g`.
pub fn ingest_table(text: &str, g: &GroupTable) -> Result<CharacterTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty table".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "chartab" {
        return Err(Error::Format(format!("bad header `{header}`")));
    }
    let k = number(field(tokens[2], "classes")?)?;
    let file_exponent = number(field(tokens[3], "exponent")?)?;
    let exponent = g.exponent();
    if file_exponent == 0 || exponent % file_exponent != 0 {
        return Err(Error::Format(format!(
            "table exponent {file_exponent} does not divide the group exponent {exponent}"
        )));
    }

    let classes = g.conjugacy_classes();
    if k != classes.len() {
        return Err(Error::ClassMismatch(format!(
            "table has {k} classes, group has {}",
            classes.len()
        )));
    }
    // column_of[file column] = canonical class index
    let mut column_of = Vec::with_capacity(k);
    for expected in 0..k {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format("missing class line".into()))?;
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 4 || t[0] != "class" {
            return Err(Error::Format(format!("bad class line `{line}`")));
        }
        if number(t[1])? != expected {
            return Err(Error::Format(format!("class lines out of order at `{line}`")));
        }
        let size = number(field(t[2], "size")?)?;
        let rep = number(field(t[3], "rep")?)?;
        if rep >= g.order() {
            return Err(Error::ClassMismatch(format!("rep {rep} is not an element")));
        }
        let c = classes.block_of(rep);
        if classes.block(c).len() != size {
            return Err(Error::ClassMismatch(format!(
                "class {expected} declares size {size} but rep {rep} has class size {}",
                classes.block(c).len()
            )));
        }
        if column_of.contains(&c) {
            return Err(Error::ClassMismatch(format!("class of rep {rep} listed twice")));
        }
        column_of.push(c);
    }

    let mut rows = Vec::with_capacity(k);
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != k {
            return Err(Error::Format(format!(
                "character row has {} values, expected {k}",
                cells.len()
            )));
        }
        let mut row = vec![Cyclotomic::zero(exponent); k];
        for (col, cell) in cells.iter().enumerate() {
            row[column_of[col]] = Cyclotomic::parse(file_exponent, cell)?.lift(exponent);
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(Error::Format(format!("expected {k} characters, found {}", rows.len())));
    }

    let table = CharacterTable::assemble(Arc::new(g.clone()), rows);
    let report = table.validate();
    if !report.passed() {
        let why: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Error::Orthogonality(why.join("; ")));
    }
    Ok(table)
}
