mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vlh_core::complex::{build_complex, graded_homology, homology};
use vlh_core::diagram::{apply_move, random_move, BraidLetter};
use vlh_core::{
    jones_at_one, kauffman_jones, Field, LaurentPoly, Sign, TheoryParams, VirtualLinkDiagram, PRESET_NAMES,
};

/// Closures of braids on up to three strands with classical and virtual letters.
fn diagram() -> impl Strategy<Value = VirtualLinkDiagram> {
    (1usize..=3, any::<bool>()).prop_flat_map(|(strands, extra)| {
        let letter = (0..3u8, 1..strands.max(2), any::<bool>()).prop_map(|(kind, index, pos)| match kind {
            0 => BraidLetter::Virtual(index),
            _ => BraidLetter::Sigma { index, sign: if pos { Sign::Positive } else { Sign::Negative } },
        });
        let max = if strands == 1 { 0 } else { 5 };
        proptest::collection::vec(letter, 0..=max).prop_map(move |w| {
            let d = VirtualLinkDiagram::from_braid(strands, &w).unwrap();
            if extra { d.with_extra_unknot() } else { d }
        })
    })
}

fn theory() -> impl Strategy<Value = TheoryParams> {
    let preset = (0..PRESET_NAMES.len()).prop_map(|i| TheoryParams::preset(PRESET_NAMES[i]).unwrap());
    let field = prop_oneof![Just(Field::Rationals), Just(Field::prime(3).unwrap()), Just(Field::prime(7).unwrap())];
    let triple = (field, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter_map("a and mu invertible", |(f, a, l, m)| {
            TheoryParams::from_triple(f.from_int(a), f.from_int(l), f.from_int(m)).ok()
        });
    prop_oneof![preset, triple]
}

fn betti(d: &VirtualLinkDiagram, th: &TheoryParams) -> BTreeMap<i64, usize> {
    homology(&build_complex(d, th).unwrap()).betti
}

fn shifted(b: &BTreeMap<i64, usize>, by: i64) -> BTreeMap<i64, usize> {
    b.iter().map(|(&i, &n)| (i + by, n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_squares_to_zero(d in diagram(), th in theory()) {
        let c = build_complex(&d, &th).unwrap();
        for i in c.min_degree()..c.max_degree() {
            if let (Some(a), Some(b)) = (c.differential(i), c.differential(i + 1)) {
                prop_assert!(b.compose(a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn euler_characteristic_is_jones_at_one(d in diagram(), th in theory()) {
        let c = build_complex(&d, &th).unwrap();
        let h = homology(&c);
        let at_one = jones_at_one(&d);
        prop_assert_eq!(h.euler, at_one);
        prop_assert_eq!(c.euler_characteristic(), at_one);
        prop_assert_eq!(common::state_sum_at_one(&d), at_one);
    }

    #[test]
    fn graded_euler_is_jones(d in diagram()) {
        let manturov = TheoryParams::preset("manturov").unwrap();
        let h = graded_homology(&build_complex(&d, &manturov).unwrap()).unwrap();
        prop_assert_eq!(h.graded_euler().unwrap(), kauffman_jones(&d));
    }

    #[test]
    fn crossing_relabelling_preserves_homology(d in diagram(), th in theory(), seed in any::<u64>()) {
        let n = d.crossing_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let e = d.relabel(&perm).unwrap();
        prop_assert_eq!(betti(&e, &th), betti(&d, &th));
    }

    #[test]
    fn component_reversal_shifts_homology(d in diagram(), th in theory(), pick in any::<prop::sample::Index>()) {
        let i = pick.index(d.components().len());
        let e = d.reverse_component(i).unwrap();
        let shift = d.n_minus() as i64 - e.n_minus() as i64;
        prop_assert_eq!(betti(&e, &th), shifted(&betti(&d, &th), shift));
        prop_assert_eq!(kauffman_jones(&e).eval_at_one().abs(), kauffman_jones(&d).eval_at_one().abs());
    }

    #[test]
    fn disjoint_unknot_doubles_homology(d in diagram(), th in theory()) {
        let doubled: BTreeMap<i64, usize> = betti(&d, &th).into_iter().map(|(i, n)| (i, 2 * n)).collect();
        prop_assert_eq!(betti(&d.with_extra_unknot(), &th), doubled);
    }

    #[test]
    fn jones_survives_random_moves(d in diagram(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j = kauffman_jones(&d);
        let mut cur = d.clone();
        for _ in 0..4 {
            let m = random_move(&cur, &mut rng, d.crossing_count() + 4).unwrap();
            cur = apply_move(&cur, &m).unwrap();
            prop_assert_eq!(kauffman_jones(&cur), j.clone());
        }
    }

    #[test]
    fn homology_survives_one_random_move(d in diagram(), th in theory(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_move(&d, &mut rng, d.crossing_count() + 2).unwrap();
        let e = apply_move(&d, &m).unwrap();
        prop_assert_eq!(betti(&e, &th), betti(&d, &th), "move {:?}", m);
    }
}

#[test]
fn jones_of_unlinks_is_a_power_of_the_circle() {
    let mut d = VirtualLinkDiagram::unknot();
    for k in 1..5u32 {
        assert_eq!(kauffman_jones(&d), LaurentPoly::circle().pow(k));
        d = d.with_extra_unknot();
    }
}
