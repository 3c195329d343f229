//! Randomized structural properties of partitions, permutations and dessin counts.

use dessin_toda::dessins::{correlator, n_kl};
use dessin_toda::partitions::{character, partitions_of, Partition, Permutation};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn partition(max_weight: u32) -> impl Strategy<Value = Partition> {
    (1..=max_weight).prop_flat_map(|d| {
        let all = partitions_of(d);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just((0..d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|img| Permutation::from_images(img).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(p in partition(12)) {
        let c = p.conjugate();
        prop_assert_eq!(c.weight(), p.weight());
        prop_assert_eq!(c.conjugate(), p);
    }

    #[test]
    fn display_parses_back(p in partition(12)) {
        let s = p.to_string();
        let back = Partition::parse(s.trim_start_matches('(').trim_end_matches(')')).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn hook_length_formula(p in partition(8)) {
        let d = p.weight();
        let fact: i64 = (1..=d as i64).product();
        let dim = character(&p, &Partition::new(vec![1; d as usize]));
        let hooks = p.hook_product().to_integer().to_i64().unwrap();
        prop_assert_eq!(dim * hooks, fact);
    }

    #[test]
    fn conjugation_twists_characters_by_sign(p in partition(7), r in partition(7)) {
        prop_assume!(p.weight() == r.weight());
        let sign = if (r.weight() as usize - r.len()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(character(&p.conjugate(), &r), sign * character(&p, &r));
    }

    #[test]
    fn cycle_type_is_conjugation_invariant(s in permutation(7), t in permutation(7)) {
        let inv = {
            let mut img = vec![0; 7];
            for i in 0..7 {
                img[t.apply(i)] = i;
            }
            Permutation::from_images(img).unwrap()
        };
        let conj = t.compose(&s).compose(&inv);
        prop_assert_eq!(conj.cycle_type(), s.cycle_type());
        prop_assert_eq!(s.cycle_type().weight(), 7);
    }

    #[test]
    fn dessin_counts_are_symmetric_in_colors(p in partition(6)) {
        prop_assume!(p.len() <= 4);
        let counts = n_kl(&p).unwrap();
        for c in &counts {
            let swapped = counts.iter().find(|o| o.k == c.l && o.l == c.k);
            prop_assert_eq!(swapped.map(|o| &o.value), Some(&c.value));
        }
    }

    #[test]
    fn correlators_ignore_insertion_order(p in partition(6), rot in 0usize..4) {
        prop_assume!((2..=4).contains(&p.len()));
        let mut mus = p.parts().to_vec();
        let k = rot % mus.len();
        mus.rotate_left(k);
        let last = mus.len() - 1;
        mus.swap(0, last);
        prop_assert_eq!(correlator(&mus).unwrap(), correlator(p.parts()).unwrap());
    }
}
