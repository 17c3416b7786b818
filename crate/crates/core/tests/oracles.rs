mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use vlh_core::complex::{build_complex, graded_homology, homology};
use vlh_core::diagram::{smooth, BraidLetter};
use vlh_core::linalg::rank;
use vlh_core::{corpus, kauffman_jones, Field, LaurentPoly, Sign, State, TheoryParams, VirtualLinkDiagram};

fn q(n: i64) -> vlh_core::FieldScalar {
    Field::Rationals.from_int(n)
}

fn as_poly(terms: &BTreeMap<i64, i64>) -> LaurentPoly {
    LaurentPoly::from(terms.clone())
}

fn braid(strands: usize, word: &str) -> VirtualLinkDiagram {
    VirtualLinkDiagram::from_braid(strands, &BraidLetter::parse_word(word).unwrap()).unwrap()
}

#[test]
fn circle_counts_match_library_smoothing() {
    for d in corpus::all() {
        let n = d.crossing_count();
        for s in State::all(n) {
            let bits: Vec<bool> = (1..=n).map(|j| s.get(j)).collect();
            let ours = common::circles(&d, &bits).len();
            assert_eq!(smooth(&d, s).unwrap().k(), ours, "{} state {s}", d.name());
        }
    }
}

#[test]
fn jones_matches_oracle_on_corpus() {
    for d in corpus::all() {
        assert_eq!(kauffman_jones(&d), as_poly(&common::jones(&d)), "{}", d.name());
    }
}

#[test]
fn classical_corpus_matches_f2_oracle() {
    let manturov = TheoryParams::preset("manturov").unwrap();
    for d in corpus::diagrams().into_iter().filter(|d| d.is_classical()) {
        let h = graded_homology(&build_complex(&d, &manturov).unwrap()).unwrap();
        assert_eq!(h.qtable.unwrap(), common::classical_khovanov_f2(&d), "{}", d.name());
    }
}

#[test]
fn oracle_reproduces_known_f2_khovanov_groups() {
    // alternating knots: total rank over GF(2) is twice the determinant
    let trefoil = corpus::get("trefoil").unwrap();
    let fig8 = corpus::get("figure_eight").unwrap();
    assert_eq!(common::classical_betti_f2(&trefoil), BTreeMap::from([(0, 2), (2, 2), (3, 2)]));
    assert_eq!(common::classical_betti_f2(&fig8).values().sum::<usize>(), 10);
    assert_eq!(common::classical_betti_f2(&VirtualLinkDiagram::unknot()), BTreeMap::from([(0, 2)]));
}

#[test]
fn trefoil_over_q_matches_dense_elimination() {
    let d = corpus::get("trefoil").unwrap();
    let th = TheoryParams::from_triple(q(1), q(0), q(1)).unwrap();
    let c = build_complex(&d, &th).unwrap();
    let h = homology(&c);
    let mut dense = BTreeMap::new();
    let ranks: BTreeMap<i64, usize> = (c.min_degree()..=c.max_degree())
        .map(|i| (i, c.differential(i).map_or(0, common::dense_rank_q)))
        .collect();
    for g in c.groups() {
        let b = g.dim - ranks[&g.degree] - ranks.get(&(g.degree - 1)).copied().unwrap_or(0);
        if b > 0 {
            dense.insert(g.degree, b);
        }
    }
    assert_eq!(h.betti, dense);
    assert_eq!(h.euler, 2);
}

#[test]
fn sparse_rank_matches_dense_on_rational_complexes() {
    let triples = [(1, 0, 1), (2, 1, 3), (-1, 2, -1)];
    for d in corpus::all() {
        for &(a, l, m) in &triples {
            let th = TheoryParams::from_triple(q(a), q(l), q(m)).unwrap();
            let c = build_complex(&d, &th).unwrap();
            for i in c.min_degree()..=c.max_degree() {
                if let Some(m) = c.differential(i) {
                    assert_eq!(rank(m), common::dense_rank_q(m), "{} degree {i}", d.name());
                }
            }
        }
    }
}

fn classical_braid() -> impl Strategy<Value = VirtualLinkDiagram> {
    (2usize..=3).prop_flat_map(|strands| {
        let letter = (1..strands, any::<bool>()).prop_map(|(index, pos)| BraidLetter::Sigma {
            index,
            sign: if pos { Sign::Positive } else { Sign::Negative },
        });
        proptest::collection::vec(letter, 0..=6)
            .prop_map(move |w| VirtualLinkDiagram::from_braid(strands, &w).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classical_braids_match_f2_oracle(d in classical_braid()) {
        let manturov = TheoryParams::preset("manturov").unwrap();
        let h = graded_homology(&build_complex(&d, &manturov).unwrap()).unwrap();
        prop_assert_eq!(h.qtable.unwrap(), common::classical_khovanov_f2(&d));
        prop_assert_eq!(kauffman_jones(&d), as_poly(&common::jones(&d)));
    }
}

#[test]
fn hopf_link_from_braid() {
    let hopf = braid(2, "s1 s1");
    assert_eq!(common::classical_betti_f2(&hopf), BTreeMap::from([(0, 2), (2, 2)]));
}
