use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use superchar::chartab::dixon_character_table;
use superchar::group::catalog_group;
use superchar::supertheory::{enumerate_scts, TableCache};
use superchar::{Cyclotomic, ElementSet, GroupTable, SuperTheory};

const ORDER: usize = 12;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-4i64..=4, ORDER).prop_map(|counts| Cyclotomic::from_exponent_counts(ORDER, &counts))
}

fn group() -> impl Strategy<Value = GroupTable> {
    prop::sample::select(vec!["S3", "D4", "Q8", "A4", "C2xC4", "D5", "S4", "Q16"])
        .prop_map(|n| catalog_group(n).unwrap())
}

fn theories(name: &str) -> Vec<SuperTheory> {
    let t = Arc::new(dixon_character_table(&catalog_group(name).unwrap()).unwrap());
    enumerate_scts(&t).unwrap()
}

proptest! {
    #[test]
    fn cyclotomic_ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &Cyclotomic::one(ORDER), a.clone());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn cyclotomic_display_round_trips(a in cyclotomic(), num in -9i64..9, den in 1i64..5) {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        let x = a.scale(&q);
        prop_assert_eq!(Cyclotomic::parse(ORDER, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn lifting_is_a_ring_map(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!((&a * &b).lift(24), &a.lift(24) * &b.lift(24));
        prop_assert_eq!((&a + &b).lift(24), &a.lift(24) + &b.lift(24));
    }

    #[test]
    fn generated_subgroup_is_a_closure(g in group(), seed in prop::collection::vec(any::<prop::sample::Index>(), 0..4), extra in any::<prop::sample::Index>()) {
        let n = g.order();
        let small = ElementSet::from_iter(n, seed.iter().map(|i| i.index(n)));
        let mut big = small.clone();
        big.insert(extra.index(n));
        let h = g.generated_by_set(&small);
        prop_assert!(small.is_subset(h.members()));
        prop_assert!(g.is_closed(h.members()));
        prop_assert_eq!(&g.generated_by_set(h.members()), &h);
        prop_assert!(h.members().is_subset(g.generated_by_set(&big).members()));
    }

    #[test]
    fn coset_saturation_is_idempotent(g in group(), gen in any::<prop::sample::Index>(), block in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        let n = g.order();
        let m = g.generated_by_set(&ElementSet::from_iter(n, [gen.index(n)]));
        let b = ElementSet::from_iter(n, block.iter().map(|i| i.index(n)));
        let once = g.coset_saturation(&m, &b);
        prop_assert!(b.is_subset(&once));
        prop_assert_eq!(g.coset_saturation(&m, &once), once.clone());
        prop_assert_eq!(once.len() % m.order(), 0);
    }

    #[test]
    fn quotient_map_is_a_homomorphism(g in group(), pick in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let t = Arc::new(dixon_character_table(&g).unwrap());
        let normals = SuperTheory::finest(&t).s_normal_subgroups().to_vec();
        let n = &normals[pick.index(normals.len())];
        let q = g.quotient_group(n).unwrap();
        let (x, y) = (a.index(g.order()), b.index(g.order()));
        prop_assert_eq!(q.projection[g.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
        prop_assert_eq!(q.group.order() * n.order(), g.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn induced_theories_are_valid(name in prop::sample::select(vec!["D4", "Q8", "C2xC4", "A4", "D6"]), ti in any::<prop::sample::Index>(), ni in any::<prop::sample::Index>()) {
        let all = theories(name);
        let s = &all[ti.index(all.len())];
        let normals = s.s_normal_subgroups();
        let n = &normals[ni.index(normals.len())];
        let cache = TableCache::new();
        let r = s.restriction_cached(n, &cache).unwrap();
        let d = s.deflation_cached(n, &cache).unwrap();
        prop_assert!(r.theory.validate().passed());
        prop_assert!(d.theory.validate().passed());
        // S-normal subgroups above N correspond to S-normal subgroups of the quotient
        let above = normals.iter().filter(|m| n.is_subgroup_of(m)).count();
        prop_assert_eq!(above, d.theory.s_normal_subgroups().len());
        // Irr(S|N) and Irr(S/N) split the supercharacters
        prop_assert_eq!(s.irr_over(n).len() + s.irr_quotient(n).len(), s.rank());
        prop_assert_eq!(s.irr_quotient(n).len(), d.theory.rank());
        prop_assert!(s.deflated_gamma_check(n, &cache).unwrap().passed());
    }

    #[test]
    fn structural_invariants(name in prop::sample::select(vec!["D4", "Q8", "C2xC4", "A4", "D6", "S4"]), ti in any::<prop::sample::Index>()) {
        let all = theories(name);
        let s = &all[ti.index(all.len())];
        let cache = TableCache::new();
        let z = s.s_center().unwrap();
        prop_assert!(s.is_s_normal(&z));
        let d = s.derived();
        prop_assert_eq!(&s.derived_from_kernels(), d.members());
        prop_assert_eq!(s.upper_series(&cache).unwrap().class_index, s.lower_series().class_index);
        for x in 0..s.rank() {
            let k = s.super_kernel(x);
            prop_assert!(s.is_s_normal(&k));
            prop_assert_eq!(&s.kernel_from_irreducibles(x), k.members());
        }
        for n in s.s_normal_subgroups() {
            let v = s.v_rel(n).unwrap();
            prop_assert!(s.is_s_normal(&v));
            prop_assert!(n.is_subgroup_of(&v));
            prop_assert!(s.u_rel(n).unwrap().is_subgroup_of(n));
        }
    }
}
