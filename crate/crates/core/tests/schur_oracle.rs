//! Supercharacter theories correspond to central Schur rings: partitions of
//! G into unions of conjugacy classes, with {1} a block, closed under
//! inversion, whose block sums span a subalgebra of the group algebra. The
//! search below uses only the multiplication table.

use std::collections::BTreeSet;
use std::sync::Arc;

use superchar::chartab::dixon_character_table;
use superchar::group::catalog_group;
use superchar::supertheory::enumerate_scts;
use superchar::GroupTable;

fn classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut c: Vec<usize> = (0..n).map(|h| g.mul(g.mul(g.inv(h), x), h)).collect();
        c.sort_unstable();
        c.dedup();
        for &y in &c {
            seen[y] = true;
        }
        out.push(c);
    }
    out
}

fn is_schur_ring(g: &GroupTable, blocks: &[Vec<usize>]) -> bool {
    let n = g.order();
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = i;
        }
    }
    for b in blocks {
        let inv = block_of[g.inv(b[0])];
        if blocks[inv].len() != b.len() || b.iter().any(|&x| block_of[g.inv(x)] != inv) {
            return false;
        }
    }
    for a in blocks {
        for b in blocks {
            let mut count = vec![0usize; n];
            for &x in a {
                for &y in b {
                    count[g.mul(x, y)] += 1;
                }
            }
            if blocks.iter().any(|c| c.iter().any(|&x| count[x] != count[c[0]])) {
                return false;
            }
        }
    }
    true
}

fn schur_partitions(g: &GroupTable) -> BTreeSet<Vec<Vec<usize>>> {
    let cls = classes(g);
    let rest: Vec<&Vec<usize>> = cls.iter().filter(|c| c[0] != 0).collect();
    let mut out = BTreeSet::new();
    let mut labels = Vec::new();
    fn walk(
        g: &GroupTable,
        rest: &[&Vec<usize>],
        labels: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<Vec<usize>>>,
    ) {
        if labels.len() == rest.len() {
            let parts = labels.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![vec![0]];
            for p in 0..parts {
                let mut b: Vec<usize> = labels
                    .iter()
                    .zip(rest)
                    .filter(|(l, _)| **l == p)
                    .flat_map(|(_, c)| c.iter().copied())
                    .collect();
                b.sort_unstable();
                blocks.push(b);
            }
            if is_schur_ring(g, &blocks) {
                blocks.sort();
                out.insert(blocks);
            }
            return;
        }
        let parts = labels.iter().max().map_or(0, |m| m + 1);
        for p in 0..=parts {
            labels.push(p);
            walk(g, rest, labels, out);
            labels.pop();
        }
    }
    walk(g, &rest, &mut labels, &mut out);
    out
}

fn enumerated(g: &GroupTable) -> BTreeSet<Vec<Vec<usize>>> {
    let t = Arc::new(dixon_character_table(g).unwrap());
    enumerate_scts(&t)
        .unwrap()
        .iter()
        .map(|s| {
            let mut b = s.yparts().blocks().to_vec();
            b.sort();
            b
        })
        .collect()
}

#[test]
fn enumeration_matches_schur_rings() {
    let expected = [
        ("C1", 1),
        ("C2", 1),
        ("C3", 2),
        ("C4", 3),
        ("C5", 3),
        ("C6", 7),
        ("C2xC2", 5),
        ("S3", 2),
        ("D4", 9),
        ("Q8", 9),
        ("D5", 3),
        ("A4", 3),
        ("S4", 5),
        ("C8", 10),
        ("C2xC4", 28),
        ("D6", 15),
        ("D8", 20),
        ("Q16", 20),
        ("C2xC2xC2", 100),
        ("C3xC3", 40),
    ];
    for (name, count) in expected {
        let g = catalog_group(name).unwrap();
        let oracle = schur_partitions(&g);
        assert_eq!(oracle.len(), count, "{name}: oracle count");
        assert_eq!(enumerated(&g), oracle, "{name}");
    }
}
