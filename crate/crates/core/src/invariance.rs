//! Random walks of Reidemeister moves that check homology stays put.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::TheoryParams;
use crate::complex::{build_complex, homology};
use crate::diagram::{apply_move, random_move, Move, VirtualLinkDiagram};
use crate::error::ComplexError;

/// Walks may grow a diagram by at most this many crossings.
pub const HEADROOM: usize = 4;

/// A theory under which some prefix of the walk changed the Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub diagram: String,
    pub theory: String,
    pub moves: Vec<Move>,
    pub expected: BTreeMap<i64, usize>,
    pub found: BTreeMap<i64, usize>,
}

/// `moves` random moves from `d`. The generator is seeded by `seed` and uses
/// `stream` to keep walks of different diagrams independent.
pub fn random_walk(
    d: &VirtualLinkDiagram,
    moves: usize,
    seed: u64,
    stream: u64,
) -> Vec<(Move, VirtualLinkDiagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let cap = d.crossing_count() + HEADROOM;
    let mut cur = d.clone();
    let mut out = Vec::with_capacity(moves);
    for _ in 0..moves {
        let m = random_move(&cur, &mut rng, cap).expect("headroom leaves a forward move");
        cur = apply_move(&cur, &m).expect("generated moves apply");
        out.push((m, cur.clone()));
    }
    out
}

/// Betti numbers after every step of the walk, compared with the start.
pub fn check_walk(
    d: &VirtualLinkDiagram,
    theories: &[TheoryParams],
    moves: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<Mismatch>, ComplexError> {
    let walk = random_walk(d, moves, seed, stream);
    let mut mismatches = Vec::new();
    for th in theories {
        let expected = homology(&build_complex(d, th)?).betti;
        for (step, (_, e)) in walk.iter().enumerate() {
            let found = homology(&build_complex(e, th)?).betti;
            if found != expected {
                mismatches.push(Mismatch {
                    diagram: d.name().to_string(),
                    theory: th.to_string(),
                    moves: walk[..=step].iter().map(|(m, _)| *m).collect(),
                    expected,
                    found,
                });
                break;
            }
        }
    }
    Ok(mismatches)
}
