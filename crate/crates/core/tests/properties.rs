use std::sync::OnceLock;

use ctrad_core::verify::summarize;
use ctrad_core::{exchange_permutation, ClusterCategory, DynkinType, RadicalTable};
use proptest::prelude::*;

const TYPES: [&str; 8] = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"];

fn categories() -> &'static Vec<ClusterCategory> {
    static CATS: OnceLock<Vec<ClusterCategory>> = OnceLock::new();
    CATS.get_or_init(|| TYPES.iter().map(|s| ClusterCategory::new(s.parse::<DynkinType>().unwrap()).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exchange_is_an_involution(i in 0..TYPES.len(), seed in any::<u64>(), steps in 0usize..12, x in 0usize..8) {
        let cat = &categories()[i];
        let t = cat.random_walk(seed, steps).unwrap().pop().unwrap();
        let x = x % cat.rank();
        let (t2, new) = cat.exchange(&t, x).unwrap();
        prop_assert_ne!(&t, &t2);
        let back = cat.exchange(&t2, t2.position(new).unwrap()).unwrap().0;
        prop_assert_eq!(back, t);
    }

    #[test]
    fn exchange_mutates_the_quiver(i in 0..TYPES.len(), seed in any::<u64>(), steps in 0usize..12, x in 0usize..8) {
        let cat = &categories()[i];
        let t = cat.random_walk(seed, steps).unwrap().pop().unwrap();
        let x = x % cat.rank();
        let (t2, new) = cat.exchange(&t, x).unwrap();
        let perm = exchange_permutation(&t, &t2, x, new);
        let q = cat.cluster_tilted_quiver(&t).unwrap();
        prop_assert_eq!(q.mutate(x).unwrap().relabel(&perm), cat.cluster_tilted_quiver(&t2).unwrap());
    }

    #[test]
    fn index_matches_table_and_vertex_bounds(i in 0..TYPES.len(), seed in any::<u64>(), steps in 0usize..12) {
        let cat = &categories()[i];
        let ty = cat.dynkin_type();
        let t = cat.random_walk(seed, steps).unwrap().pop().unwrap();
        let s = summarize(cat, &t).unwrap();
        prop_assert_eq!(s.r_bruteforce, ty.expected_nilpotency_index());
        prop_assert_eq!(s.r_formula, s.r_bruteforce);
        prop_assert!(s.routes_agree);
        prop_assert!(s.irreducible_hom);
        prop_assert_eq!(s.ind_count, ty.positive_root_count());
        for v in &s.vertices {
            prop_assert_eq!(v.r_a, v.n_a + v.m_a);
            prop_assert!(v.r_a < s.r_bruteforce);
        }
    }

    #[test]
    fn radical_powers_are_nested(i in 0..5usize, seed in any::<u64>(), steps in 0usize..10) {
        let cat = &categories()[i];
        let t = cat.random_walk(seed, steps).unwrap().pop().unwrap();
        let alg = cat.module_category(&t).unwrap();
        let table = RadicalTable::new(&alg).unwrap();
        let r = table.nilpotency_index();
        for x in 0..alg.ind_count() {
            for y in 0..alg.ind_count() {
                for k in 1..=r {
                    let (hi, lo) = (table.power(k + 1, x, y), table.power(k, x, y));
                    prop_assert!(hi.dim() <= lo.dim());
                    prop_assert!(hi.is_subspace_of(&lo));
                }
                prop_assert_eq!(table.power(r, x, y).dim(), 0);
            }
        }
    }

    #[test]
    fn hom_blocks_are_exclusive_and_ext_symmetric(i in 0..TYPES.len(), x in any::<usize>(), y in any::<usize>()) {
        let c = categories()[i].orbit();
        let (x, y) = (x % c.len(), y % c.len());
        let b = c.block(x, y);
        prop_assert!(b.minus == 0 || b.zero == 0);
        prop_assert_eq!(c.ext1(x, y), c.ext1(y, x));
    }
}
