//! Exhaustive search over set partitions of the irreducible characters.
//!
//! Each candidate partition is screened with integer arithmetic on the
//! power-basis coordinates of `χ(1)χ`, then rebuilt exactly.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};

use super::SuperTheory;

/// Bell-number guard on the number of irreducible characters.
pub const DEFAULT_MAX_IRREDUCIBLES: usize = 12;

const GUARD_ENV: &str = "SUPERCHAR_MAX_BELL";

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub max_irreducibles: usize,
    /// Only visit partitions in which the principal character is alone.
    pub prune_principal: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        let max_irreducibles = std::env::var(GUARD_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_IRREDUCIBLES);
        EnumerateOptions {
            max_irreducibles,
            prune_principal: true,
        }
    }
}

/// All supercharacter theories, ordered by number of parts (descending) and
/// then by the parts themselves.
pub fn enumerate_scts(table: &Arc<CharacterTable>) -> Result<Vec<SuperTheory>> {
    enumerate_scts_with(table, EnumerateOptions::default())
}

struct Screen {
    k: usize,
    r: usize,
    width: usize,
    /// contrib[i] = coordinates of χ_i(1)χ_i on every class, class-major
    contrib: Vec<Vec<i64>>,
}

impl Screen {
    fn new(table: &CharacterTable) -> Option<Screen> {
        let r = table.num_classes();
        let width = table.value(0, 0).coeffs().len();
        let mut contrib = Vec::with_capacity(table.num_irreducibles());
        for i in 0..table.num_irreducibles() {
            let d = table.degrees()[i] as i64;
            let mut row = Vec::with_capacity(r * width);
            for k in 0..r {
                let v = table.value(i, k);
                if v.coeffs().len() != width {
                    return None;
                }
                for c in v.coeffs() {
                    if !c.is_integer() {
                        return None;
                    }
                    row.push(c.to_integer().to_i64()?.checked_mul(d)?);
                }
            }
            contrib.push(row);
        }
        Some(Screen {
            k: table.num_irreducibles(),
            r,
            width,
            contrib,
        })
    }

    /// Level-set test on the accumulated part sums.
    fn accepts(&self, sums: &[Vec<i64>], parts: usize) -> bool {
        let w = self.width;
        let column_eq = |a: usize, b: usize| {
            sums[..parts]
                .iter()
                .all(|s| s[a * w..(a + 1) * w] == s[b * w..(b + 1) * w])
        };
        if (1..self.r).any(|c| column_eq(0, c)) {
            return false;
        }
        let mut distinct = 1;
        for c in 1..self.r {
            if !(1..c).any(|d| column_eq(c, d)) {
                distinct += 1;
                if distinct > parts {
                    return false;
                }
            }
        }
        distinct == parts
    }

    fn search(&self, labels: &mut Vec<usize>, sums: &mut Vec<Vec<i64>>, parts: usize, prune: bool, out: &mut Vec<Vec<usize>>) {
        let i = labels.len();
        if i == self.k {
            if self.accepts(sums, parts) {
                out.push(labels.clone());
            }
            return;
        }
        let lo = usize::from(prune && i > 0);
        for p in lo..=parts {
            if sums.len() <= p {
                sums.push(vec![0; self.r * self.width]);
            }
            for (s, c) in sums[p].iter_mut().zip(&self.contrib[i]) {
                *s += c;
            }
            labels.push(p);
            self.search(labels, sums, parts.max(p + 1), prune, out);
            labels.pop();
            for (s, c) in sums[p].iter_mut().zip(&self.contrib[i]) {
                *s -= c;
            }
        }
    }
}

/// Restricted-growth prefixes of length `len`.
fn prefixes(len: usize, prune: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..len {
        let mut next = Vec::new();
        for p in out {
            let parts = p.iter().max().map_or(0, |m| m + 1);
            let lo = usize::from(prune && i > 0);
            for l in lo..=parts {
                let mut q = p.clone();
                q.push(l);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn labels_to_parts(labels: &[usize]) -> Vec<Vec<usize>> {
    let n = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); n];
    for (i, &l) in labels.iter().enumerate() {
        parts[l].push(i);
    }
    parts
}

pub fn enumerate_scts_with(
    table: &Arc<CharacterTable>,
    options: EnumerateOptions,
) -> Result<Vec<SuperTheory>> {
    let k = table.num_irreducibles();
    if k > options.max_irreducibles {
        return Err(Error::GuardExceeded {
            irreducibles: k,
            guard: options.max_irreducibles,
        });
    }
    let screen = Screen::new(table)
        .ok_or_else(|| Error::Internal("character values overflow the integer screen".into()))?;
    let prune = options.prune_principal;
    let seeds = prefixes(k.min(6), prune);
    let accepted: Vec<Vec<usize>> = seeds
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut sums = Vec::new();
            for (i, &p) in prefix.iter().enumerate() {
                if sums.len() <= p {
                    sums.push(vec![0; screen.r * screen.width]);
                }
                for (s, c) in sums[p].iter_mut().zip(&screen.contrib[i]) {
                    *s += c;
                }
            }
            let parts = sums.len();
            let mut labels = prefix;
            let mut out = Vec::new();
            screen.search(&mut labels, &mut sums, parts, prune, &mut out);
            out
        })
        .collect();
    let mut theories = accepted
        .iter()
        .map(|labels| {
            SuperTheory::from_character_partition(table, labels_to_parts(labels)).ok_or_else(|| {
                Error::Internal(format!("screened partition {labels:?} failed exact derivation"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    theories.sort_by(|a, b| b.rank().cmp(&a.rank()).then_with(|| a.xparts().cmp(b.xparts())));
    Ok(theories)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supertheory::tests::table;

    fn count(name: &str) -> usize {
        enumerate_scts(&table(name)).unwrap().len()
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(count("S3"), 2);
        assert_eq!(count("C4"), 3);
        assert_eq!(count("C2"), 1);
        assert_eq!(count("C1"), 1);
    }

    #[test]
    fn ordering_and_extremes() {
        let t = table("Q8");
        let all = enumerate_scts(&t).unwrap();
        assert_eq!(all.first().unwrap(), &SuperTheory::finest(&t));
        assert_eq!(all.last().unwrap(), &SuperTheory::coarsest(&t).unwrap());
        for w in all.windows(2) {
            assert!(w[0].rank() >= w[1].rank());
            assert_ne!(w[0], w[1]);
        }
    }

    #[test]
    fn pruned_matches_unpruned() {
        for name in ["S3", "C4", "Q8", "D4", "C6", "A4", "C2xC2"] {
            let t = table(name);
            let full = EnumerateOptions {
                max_irreducibles: 12,
                prune_principal: false,
            };
            let a = enumerate_scts_with(&t, full).unwrap();
            let b = enumerate_scts_with(&t, EnumerateOptions { prune_principal: true, ..full }).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn guard() {
        let t = table("Q8");
        let opts = EnumerateOptions {
            max_irreducibles: 4,
            prune_principal: true,
        };
        assert!(matches!(
            enumerate_scts_with(&t, opts),
            Err(Error::GuardExceeded { irreducibles: 5, guard: 4 })
        ));
    }

    #[test]
    fn prefix_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(prefixes(n, false).len(), b);
        }
    }
}
