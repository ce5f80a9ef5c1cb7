//! Dixon's modular method.
//!
//! The central characters `ω_χ(K_i) = |K_i| χ(g_i) / χ(1)` are the common
//! eigenvectors of the class matrices `(M_j)_{ik} = a[i][j][k]`. They are
//! found over a prime field `F_p` with `p ≡ 1 (mod e)` and `p > 2√|G|`,
//! degrees are recovered from the norm relation, and each value `χ(g)` is
//! lifted back to `Z[ζ_e]` by counting eigenvalue multiplicities of `g`
//! through a discrete Fourier inversion over the `e`-th roots of unity mod p.

use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupTable;

use super::modp::{inv_mod, is_prime, null_space, pow_mod, primitive_root};
use super::CharacterTable;

/// Default bound on group order for table computation.
pub const DEFAULT_MAX_ORDER: usize = 64;

const PRIME_SEARCH_BOUND: u64 = 1_000_000;

/// `a[i][j][k] = #{(x, y) ∈ K_i × K_j : xy = rep_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoefficients {
    r: usize,
    a: Vec<u64>,
}

impl ClassCoefficients {
    pub fn num_classes(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.a[(i * self.r + j) * self.r + k]
    }
}

pub fn class_mult_coefficients(g: &GroupTable) -> ClassCoefficients {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut a = vec![0u64; r * r * r];
    for (k, kb) in classes.blocks().iter().enumerate() {
        let rep = kb[0];
        for (i, ib) in classes.blocks().iter().enumerate() {
            for &x in ib {
                let y = g.mul(g.inv(x), rep);
                let j = classes.block_of(y);
                a[(i * r + j) * r + k] += 1;
            }
        }
    }
    ClassCoefficients { r, a }
}

fn choose_prime(order: usize, exponent: usize) -> Result<u64> {
    let e = exponent as u64;
    let n = order as u64;
    let mut p = e + 1;
    while p < PRIME_SEARCH_BOUND {
        if p * p > 4 * n && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::NoPrime {
        exponent,
        lower: 2 * (order as f64).sqrt().ceil() as usize,
        bound: PRIME_SEARCH_BOUND as usize,
    })
}

/// Splits `F_p^r` into the common eigenlines of the class matrices.
fn common_eigenvectors(coeffs: &ClassCoefficients, p: u64) -> Result<Vec<Vec<u64>>> {
    let r = coeffs.r;
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|k| coeffs.get(i, j, k) % p).collect())
            .collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // M_j applied to each basis vector
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| (0..r).map(|k| m[i][k] * b[k] % p).sum::<u64>() % p)
                        .collect()
                })
                .collect();
            let d = basis.len();
            let mut found = 0;
            for lambda in 0..p {
                // (M_j - λ) B as an r x d matrix
                let mat: Vec<Vec<u64>> = (0..r)
                    .map(|i| {
                        (0..d)
                            .map(|c| (images[c][i] + p - lambda * basis[c][i] % p) % p)
                            .collect()
                    })
                    .collect();
                let ns = null_space(mat, d, p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|i| (0..d).map(|t| c[t] * basis[t][i] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Internal(format!(
                    "class matrix {j} does not diagonalize over F_{p}"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Internal(format!(
            "found {} common eigenspaces, expected {r}",
            spaces.len()
        )));
    }
    Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

/// Computes the exact character table; the result has passed validation.
pub fn dixon_character_table(g: &GroupTable) -> Result<CharacterTable> {
    dixon_with_bound(g, DEFAULT_MAX_ORDER)
}

pub fn dixon_with_bound(g: &GroupTable, max_order: usize) -> Result<CharacterTable> {
    let order = g.order();
    if order > max_order {
        return Err(Error::TooLarge {
            order,
            bound: max_order,
        });
    }
    let e = g.exponent();
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let sizes: Vec<u64> = classes.blocks().iter().map(|b| b.len() as u64).collect();
    let reps: Vec<usize> = classes.blocks().iter().map(|b| b[0]).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&x| classes.block_of(g.inv(x))).collect();
    // power_class[k][l] = class of rep_k^l
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let mut acc = 0;
            (0..e)
                .map(|_| {
                    let c = classes.block_of(acc);
                    acc = g.mul(acc, x);
                    c
                })
                .collect()
        })
        .collect();

    let p = choose_prime(order, e)?;
    let coeffs = class_mult_coefficients(g);
    let vectors = common_eigenvectors(&coeffs, p)?;
    let z = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let z_inv = inv_mod(z, p);
    let e_inv = inv_mod(e as u64 % p, p);
    let n = order as u64;

    let mut rows = Vec::with_capacity(r);
    for v in vectors {
        if v[0] == 0 {
            return Err(Error::Internal("eigenvector vanishes at the identity".into()));
        }
        let s = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * s % p).collect();
        // χ(1)² = |G| / Σ ω_i ω_{i*} / |K_i|
        let norm = (0..r)
            .map(|i| omega[i] * omega[inverse_class[i]] % p * inv_mod(sizes[i] % p, p) % p)
            .sum::<u64>()
            % p;
        if norm == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = n % p * inv_mod(norm, p) % p;
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Internal("no integral degree".into()))?;
        let theta: Vec<u64> = (0..r)
            .map(|i| omega[i] * (degree % p) % p * inv_mod(sizes[i] % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(r);
        for pc in &power_class {
            let mut counts = vec![0i64; e];
            for (k, slot) in counts.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (l, &c) in pc.iter().enumerate() {
                    let root = pow_mod(z_inv, (k * l) as u64, p);
                    acc = (acc + theta[c] * root) % p;
                }
                let m = acc * e_inv % p;
                if m > degree {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                *slot = m as i64;
            }
            row.push(Cyclotomic::from_exponent_counts(e, &counts));
        }
        rows.push(row);
    }
    let table = CharacterTable::assemble(Arc::new(g.clone()), rows);
    let report = table.validate();
    if !report.passed() {
        let why: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::Internal(format!("computed table failed validation: {}", why.join("; "))));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog_group;

    #[test]
    fn trivial_class_row() {
        let g = catalog_group("S3").unwrap();
        let a = class_mult_coefficients(&g);
        let r = a.num_classes();
        for j in 0..r {
            for k in 0..r {
                assert_eq!(a.get(0, j, k), (j == k) as u64);
            }
        }
    }

    #[test]
    fn s3_transposition_products() {
        let g = catalog_group("S3").unwrap();
        let a = class_mult_coefficients(&g);
        // classes: {1}, transpositions {1,2,5}, 3-cycles {3,4}
        assert_eq!(a.get(1, 1, 0), 3);
        assert_eq!(a.get(1, 1, 1), 0);
        assert_eq!(a.get(1, 1, 2), 3);
    }

    #[test]
    fn abelian_coefficients_are_zero_one() {
        let g = catalog_group("C2xC4").unwrap();
        let a = class_mult_coefficients(&g);
        let r = a.num_classes();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    assert!(a.get(i, j, k) <= 1);
                }
            }
        }
    }

    #[test]
    fn coefficient_size_identity() {
        for name in ["S3", "Q8", "A4", "D5"] {
            let g = catalog_group(name).unwrap();
            let cl = g.conjugacy_classes();
            let a = class_mult_coefficients(&g);
            let r = a.num_classes();
            for i in 0..r {
                for j in 0..r {
                    let lhs: u64 = (0..r).map(|k| a.get(i, j, k) * cl.block(k).len() as u64).sum();
                    assert_eq!(lhs, (cl.block(i).len() * cl.block(j).len()) as u64);
                }
            }
        }
    }

    #[test]
    fn prime_choice() {
        // S4: e = 12, |G| = 24, need p > 9.8
        assert_eq!(choose_prime(24, 12).unwrap(), 13);
        assert_eq!(choose_prime(2, 2).unwrap(), 3);
        assert_eq!(choose_prime(1, 1).unwrap(), 3);
    }

    #[test]
    fn order_guard() {
        let g = catalog_group("C8").unwrap();
        assert!(matches!(dixon_with_bound(&g, 4), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn degrees() {
        let degs = |name: &str| {
            dixon_character_table(&catalog_group(name).unwrap())
                .unwrap()
                .degrees()
                .to_vec()
        };
        assert_eq!(degs("S3"), vec![1, 1, 2]);
        assert_eq!(degs("Q8"), vec![1, 1, 1, 1, 2]);
        assert_eq!(degs("S4"), vec![1, 1, 2, 3, 3]);
        assert_eq!(degs("A4"), vec![1, 1, 1, 3]);
        assert_eq!(degs("C1"), vec![1]);
    }
}
