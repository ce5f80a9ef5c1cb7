use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A permutation of `0..degree` stored as its image tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Format(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.get(x).copied().unwrap_or(x)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn extended(&self, degree: usize) -> Self {
        Permutation((0..degree).map(|x| self.apply(x)).collect())
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let d = self.degree().max(other.degree());
        Permutation((0..d).map(|x| other.apply(self.apply(x))).collect())
    }
}

/// Parses generators in cycle notation, e.g. `(1 2 3)(4 5)`.
///
/// Point labels are arbitrary integers; they are mapped to `0..n` in
/// increasing order across all generators. `()` denotes the identity.
pub fn parse_cycles<S: AsRef<str>>(lines: &[S]) -> Result<Vec<Permutation>> {
    let mut parsed: Vec<Vec<Vec<i64>>> = Vec::new();
    for line in lines {
        parsed.push(parse_line(line.as_ref())?);
    }
    let labels: BTreeMap<i64, usize> = {
        let mut pts: Vec<i64> = parsed.iter().flatten().flatten().copied().collect();
        pts.sort_unstable();
        pts.dedup();
        pts.into_iter().enumerate().map(|(i, p)| (p, i)).collect()
    };
    let degree = labels.len();
    parsed
        .into_iter()
        .map(|cycles| {
            // cycles are applied left to right
            let mut perm = Permutation::identity(degree);
            for cycle in cycles {
                let mut images: Vec<usize> = (0..degree).collect();
                for (k, p) in cycle.iter().enumerate() {
                    images[labels[p]] = labels[&cycle[(k + 1) % cycle.len()]];
                }
                perm = perm.then(&Permutation::from_images(images)?);
            }
            Ok(perm)
        })
        .collect()
}

fn parse_line(line: &str) -> Result<Vec<Vec<i64>>> {
    let mut cycles = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Format(format!("expected `(` in `{line}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Format(format!("unclosed cycle in `{line}`")))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Format(format!("bad point `{t}` in `{line}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = points.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::Format(format!("repeated point in cycle of `{line}`")));
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_disjoint_cycles() {
        let p = parse_cycles(&["(1 2 3)(4 5)"]).unwrap();
        assert_eq!(p[0].images(), &[1, 2, 0, 4, 3]);
    }

    #[test]
    fn labels_are_shared_across_generators() {
        let p = parse_cycles(&["(10 20)", "(20 30)"]).unwrap();
        assert_eq!(p[0].images(), &[1, 0, 2]);
        assert_eq!(p[1].images(), &[0, 2, 1]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_cycles(&["(1 2"]).is_err());
        assert!(parse_cycles(&["(1 1)"]).is_err());
        assert!(parse_cycles(&["1 2"]).is_err());
        assert!(parse_cycles(&["(a b)"]).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
    }
}
