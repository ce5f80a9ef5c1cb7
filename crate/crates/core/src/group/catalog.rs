//! Named groups with fixed element numbering.
//!
//! * `Cn`: element `k` is `g^k`.
//! * `Dn` (order `2n`): `k < n` is `r^k`, `n + k` is `s r^k`.
//! * `Q8`: `0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j, 5 = -j, 6 = k, 7 = -k`.
//! * `Qn` (dicyclic, `n = 4m`, `m > 2`): `k < 2m` is `a^k`, `2m + k` is `b a^k`.
//! * `Sn`, `An` (`n <= 4`): permutations of `0..n` in lexicographic order of
//!   their image tuples, composed left to right.
//! * `A x B`: the pair `(a, b)` is `a * |B| + b`; `Cn^k` is the `k`-fold power.
//! * `V4` / `K4` are `C2xC2`.

use crate::error::{Error, Result};

use super::{GroupTable, Permutation};

pub fn catalog_group(name: &str) -> Result<GroupTable> {
    let name = name.trim();
    let factors: Vec<&str> = name.split(['x', 'X']).collect();
    if factors.len() > 1 {
        let mut acc: Option<GroupTable> = None;
        for f in factors {
            let g = catalog_factor(f)?;
            acc = Some(match acc {
                None => g,
                Some(a) => a.direct_product(&g),
            });
        }
        return Ok(acc.expect("nonempty").with_label(name));
    }
    Ok(catalog_factor(name)?.with_label(name))
}

fn catalog_factor(name: &str) -> Result<GroupTable> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    if let Some((base, exp)) = name.split_once('^') {
        let k: usize = exp.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        let g = catalog_factor(base)?;
        let mut acc = g.clone();
        for _ in 1..k {
            acc = acc.direct_product(&g);
        }
        return Ok(acc);
    }
    if name == "V4" || name == "K4" {
        return catalog_group("C2xC2");
    }
    if name == "Q8" {
        return Ok(quaternion8());
    }
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().map_err(|_| unknown())?;
    match kind {
        "C" if n >= 1 => Ok(cyclic(n)),
        "D" if n >= 1 => Ok(dihedral(n)),
        "Q" if n >= 8 && n % 4 == 0 => Ok(dicyclic(n / 4)),
        "S" if (1..=4).contains(&n) => Ok(symmetric(n, false)),
        "A" if (1..=4).contains(&n) => Ok(symmetric(n, true)),
        _ => Err(unknown()),
    }
}

fn from_fn(label: String, n: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
    // catalog tables are small and known-good; the full check is cheap
    GroupTable::from_rows(label, rows).expect("catalog table is a group")
}

fn cyclic(n: usize) -> GroupTable {
    from_fn(format!("C{n}"), n, |a, b| (a + b) % n)
}

fn dihedral(n: usize) -> GroupTable {
    from_fn(format!("D{n}"), 2 * n, |a, b| {
        let (sa, ra) = (a >= n, a % n);
        let (sb, rb) = (b >= n, b % n);
        match (sa, sb) {
            (false, false) => (ra + rb) % n,
            (false, true) => n + (rb + n - ra) % n,
            (true, false) => n + (ra + rb) % n,
            (true, true) => (rb + n - ra) % n,
        }
    })
}

fn dicyclic(m: usize) -> GroupTable {
    let t = 2 * m;
    from_fn(format!("Q{}", 4 * m), 2 * t, |a, b| {
        let (sa, xa) = (a >= t, a % t);
        let (sb, xb) = (b >= t, b % t);
        match (sa, sb) {
            (false, false) => (xa + xb) % t,
            (false, true) => t + (xb + t - xa) % t,
            (true, false) => t + (xa + xb) % t,
            (true, true) => (m + xb + t - xa) % t,
        }
    })
}

fn quaternion8() -> GroupTable {
    // dicyclic ids: a^k -> k, b a^k -> 4 + k, with a = i, b = j
    // 1, -1, i, -i, j, -j, k = b a^3, -k = b a
    dicyclic(2).relabeled(&[0, 2, 1, 3, 4, 6, 7, 5]).with_label("Q8")
}

fn symmetric(n: usize, even_only: bool) -> GroupTable {
    let mut perms = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        if !even_only || is_even(&images) {
            perms.push(Permutation::from_images(images.clone()).expect("valid"));
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    let label = format!("{}{n}", if even_only { "A" } else { "S" });
    GroupTable::from_permutation_list(label, perms)
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
