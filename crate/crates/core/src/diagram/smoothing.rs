//! States of the cube of resolutions and the circles they produce.

use std::fmt;
use std::str::FromStr;

use crate::error::DiagramError;

use super::{Sign, VirtualLinkDiagram};

/// A choice of 0/1 smoothing per crossing. Crossing `j` (1-based) lives at bit
/// `len - j`, so numeric order on bits agrees with lexicographic order on
/// the string form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: u64,
    len: u8,
}

impl State {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len < 64, "state length {len} too large");
        debug_assert!(len == 0 || bits >> len == 0);
        Self { bits, len: len as u8 }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Bit of crossing `j` (1-based).
    pub fn get(self, j: usize) -> bool {
        (self.bits >> (self.len() - j)) & 1 == 1
    }

    pub fn with(self, j: usize, bit: bool) -> Self {
        let mask = 1u64 << (self.len() - j);
        let bits = if bit { self.bits | mask } else { self.bits & !mask };
        Self { bits, ..self }
    }

    /// Number of 1-smoothings.
    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of 1-bits strictly before crossing `j`.
    pub fn ones_before(self, j: usize) -> u32 {
        (self.bits >> (self.len() - j + 1)).count_ones()
    }

    /// All `2^len` states in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = State> {
        (0..1u64 << len).map(move |b| State::new(b, len))
    }

    /// The crossing where two states differ, when they differ in exactly one
    /// place with `self` holding the 0.
    pub fn edge_to(self, other: State) -> Option<usize> {
        let diff = self.bits ^ other.bits;
        if self.len != other.len || diff.count_ones() != 1 || self.bits & diff != 0 {
            return None;
        }
        Some(self.len() - diff.trailing_zeros() as usize)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.len() {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for State {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() >= 64 {
            return Err(DiagramError::TooManyCrossings(s.len(), 63));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(DiagramError::BadSyntax {
                            position: i,
                            message: format!("state digit `{ch}`"),
                        })
                    }
                };
        }
        Ok(State::new(bits, s.len()))
    }
}

/// A circle of a smoothing as a cyclic list of half-edges. The list starts at
/// the smallest half-edge (always a tail) and follows the canonical
/// orientation, which runs along that arc from tail to head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub id: usize,
    pub half_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    pub state: State,
    pub circles: Vec<Circle>,
    circle_of_arc: Vec<usize>,
    arc_forward: Vec<bool>,
}

impl Smoothing {
    /// Number of 1-smoothings.
    pub fn r(&self) -> usize {
        self.state.weight()
    }

    /// Number of circles.
    pub fn k(&self) -> usize {
        self.circles.len()
    }

    /// Index into `circles` of the circle through a half-edge.
    pub fn circle_index(&self, half_edge: usize) -> usize {
        self.circle_of_arc[half_edge / 2]
    }

    /// Whether the canonical orientation runs along the arc from tail to head.
    pub fn arc_forward(&self, arc: usize) -> bool {
        self.arc_forward[arc]
    }

    pub fn position_of_id(&self, id: usize) -> Option<usize> {
        self.circles.binary_search_by_key(&id, |c| c.id).ok()
    }
}

/// Pairs of half-edges joined at crossing `j` by the smoothing `bit`.
pub(crate) fn crossing_pairs(d: &VirtualLinkDiagram, j: usize, bit: bool) -> [(usize, usize); 2] {
    let [oi, oo, ui, uo] = d.crossing_ends(j);
    let oriented = (d.sign(j) == Sign::Positive) != bit;
    if oriented {
        [(oi, uo), (ui, oo)]
    } else {
        [(oi, ui), (oo, uo)]
    }
}

pub fn smooth(d: &VirtualLinkDiagram, state: State) -> Result<Smoothing, DiagramError> {
    if state.len() != d.crossing_count() {
        return Err(DiagramError::LengthMismatch {
            expected: d.crossing_count(),
            got: state.len(),
        });
    }
    let arcs = d.arc_count();
    let mut partner = vec![usize::MAX; 2 * arcs];
    for j in 1..=d.crossing_count() {
        for (a, b) in crossing_pairs(d, j, state.get(j)) {
            partner[a] = b;
            partner[b] = a;
        }
    }
    for e in d.free_loops() {
        partner[2 * e] = 2 * e + 1;
        partner[2 * e + 1] = 2 * e;
    }

    let mut circle_of_arc = vec![usize::MAX; arcs];
    let mut arc_forward = vec![false; arcs];
    let mut circles = Vec::new();
    for start in (0..arcs).map(|e| 2 * e) {
        if circle_of_arc[start / 2] != usize::MAX {
            continue;
        }
        let index = circles.len();
        let mut half_edges = Vec::new();
        let mut cur = start;
        loop {
            let arc = cur / 2;
            circle_of_arc[arc] = index;
            arc_forward[arc] = cur % 2 == 0;
            half_edges.push(cur);
            half_edges.push(cur ^ 1);
            cur = partner[cur ^ 1];
            debug_assert_ne!(cur, usize::MAX, "unpaired half-edge");
            if cur == start {
                break;
            }
        }
        circles.push(Circle { id: start, half_edges });
    }
    Ok(Smoothing { state, circles, circle_of_arc, arc_forward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diagram(code: &str) -> VirtualLinkDiagram {
        VirtualLinkDiagram::parse_gauss(code).unwrap()
    }

    #[test]
    fn state_round_trip_and_order() {
        let s: State = "0110".parse().unwrap();
        assert_eq!(s.to_string(), "0110");
        assert!(!s.get(1) && s.get(2) && s.get(3) && !s.get(4));
        assert_eq!(s.ones_before(4), 2);
        assert_eq!(s.ones_before(1), 0);
        let strings: Vec<String> = State::all(3).map(|s| s.to_string()).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
        assert_eq!(s.with(1, true).to_string(), "1110");
        assert_eq!(
            "0100".parse::<State>().unwrap().edge_to("0110".parse().unwrap()),
            Some(3)
        );
        assert_eq!(s.edge_to("0100".parse().unwrap()), None);
    }

    #[test]
    fn trefoil_circle_counts() {
        let d = diagram("O1+,U2+,O3+,U1+,O2+,U3+");
        let ks: Vec<usize> = State::all(3).map(|s| smooth(&d, s).unwrap().k()).collect();
        assert_eq!(ks, vec![2, 1, 1, 2, 1, 2, 2, 3]);
    }

    #[test]
    fn unknot_is_one_circle() {
        let s = smooth(&VirtualLinkDiagram::unknot(), State::zero(0)).unwrap();
        assert_eq!(s.k(), 1);
        assert_eq!(s.circles[0].half_edges, vec![0, 1]);
    }

    #[test]
    fn kink_smoothings() {
        let d = diagram("O1+,U1+");
        assert_eq!(smooth(&d, "0".parse().unwrap()).unwrap().k(), 2);
        assert_eq!(smooth(&d, "1".parse().unwrap()).unwrap().k(), 1);
        let d = diagram("O1-,U1-");
        assert_eq!(smooth(&d, "0".parse().unwrap()).unwrap().k(), 1);
        assert_eq!(smooth(&d, "1".parse().unwrap()).unwrap().k(), 2);
    }

    #[test]
    fn length_mismatch() {
        let d = diagram("O1+,U1+");
        assert_eq!(
            smooth(&d, "01".parse().unwrap()).unwrap_err(),
            DiagramError::LengthMismatch { expected: 1, got: 2 }
        );
    }

    proptest! {
        #[test]
        fn every_half_edge_on_exactly_one_circle(
            d in crate::diagram::arbitrary_diagram(),
            seed in any::<u64>(),
        ) {
            let n = d.crossing_count();
            let state = State::new(if n == 0 { 0 } else { seed & ((1u64 << n) - 1) }, n);
            let s = smooth(&d, state).unwrap();
            let mut all: Vec<usize> = s.circles.iter().flat_map(|c| c.half_edges.clone()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..2 * d.arc_count()).collect::<Vec<_>>());
            for c in &s.circles {
                prop_assert_eq!(c.id, *c.half_edges.iter().min().unwrap());
                prop_assert_eq!(c.half_edges[0], c.id);
                prop_assert_eq!(c.id % 2, 0);
            }
        }
    }
}
