//! Classification of cube edges as elementary cobordisms.

use crate::error::DiagramError;
use crate::tqft::ElementaryCobordism;

use super::smoothing::crossing_pairs;
use super::{smooth, Smoothing, State, VirtualLinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaddleKind {
    Merge,
    Split,
    SingleCycle,
}

/// One edge `from → to` of the cube of resolutions.
///
/// `inputs` and `outputs` hold circle ids, sorted. A twist bit is set when the
/// local orientation carried across the saddle disagrees with the canonical
/// orientation of that circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleDescriptor {
    pub from: State,
    pub to: State,
    pub crossing: usize,
    pub kind: SaddleKind,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub twist_in: Vec<bool>,
    pub twist_out: Vec<bool>,
    pub sign_exponent: u32,
}

impl SaddleDescriptor {
    pub fn cobordism(&self) -> ElementaryCobordism {
        match self.kind {
            SaddleKind::Merge => ElementaryCobordism::Merge {
                twist_in: [self.twist_in[0], self.twist_in[1]],
                twist_out: self.twist_out[0],
            },
            SaddleKind::Split => ElementaryCobordism::Split {
                twist_in: self.twist_in[0],
                twist_out: [self.twist_out[0], self.twist_out[1]],
            },
            SaddleKind::SingleCycle => ElementaryCobordism::SingleCycle,
        }
    }

    /// `(-1)^sign_exponent` as a boolean: true for a minus sign.
    pub fn negative(&self) -> bool {
        self.sign_exponent % 2 == 1
    }
}

pub fn classify_saddle(
    d: &VirtualLinkDiagram,
    from: State,
    to: State,
) -> Result<SaddleDescriptor, DiagramError> {
    let s = smooth(d, from)?;
    let t = smooth(d, to)?;
    let j = from.edge_to(to).ok_or_else(|| DiagramError::NotCubeEdge {
        from: from.to_string(),
        to: to.to_string(),
    })?;
    Ok(classify_between(d, &s, &t, j))
}

/// Whether the curve enters the crossing at half-edge `h` when arc `h / 2`
/// is traversed in direction `forward`.
fn entering(h: usize, forward: bool) -> bool {
    (h % 2 == 1) == forward
}

fn consistent(pairs: &[(usize, usize); 2], dir: &impl Fn(usize) -> bool) -> bool {
    pairs
        .iter()
        .all(|&(a, b)| entering(a, dir(a / 2)) != entering(b, dir(b / 2)))
}

pub(crate) fn classify_between(
    d: &VirtualLinkDiagram,
    s: &Smoothing,
    t: &Smoothing,
    j: usize,
) -> SaddleDescriptor {
    let ends = d.crossing_ends(j);
    let t_pairs = crossing_pairs(d, j, true);
    debug_assert!(!s.state.get(j) && t.state.get(j));

    let mut in_idx: Vec<usize> = ends.iter().map(|&h| s.circle_index(h)).collect();
    in_idx.sort_unstable();
    in_idx.dedup();
    let mut out_idx: Vec<usize> = ends.iter().map(|&h| t.circle_index(h)).collect();
    out_idx.sort_unstable();
    out_idx.dedup();

    // Direction of every arc at the crossing, relative to the canonical
    // orientation of its input circle, with circles listed in `flips` reversed.
    let assigned = |flipped: Option<usize>| {
        move |arc: usize| s.arc_forward(arc) != (Some(s.circle_index(2 * arc)) == flipped)
    };
    let twist_of = |idx: usize, dir: &dyn Fn(usize) -> bool| {
        let arc = ends
            .iter()
            .map(|h| h / 2)
            .find(|&a| t.circle_index(2 * a) == idx)
            .expect("output circle meets the crossing");
        t.arc_forward(arc) != dir(arc)
    };

    let (kind, twist_in, twist_out) = match (in_idx.len(), out_idx.len()) {
        (2, 1) => {
            let plain = assigned(None);
            let flipped = assigned(Some(in_idx[1]));
            let flip = !consistent(&t_pairs, &plain);
            let twist = if flip {
                debug_assert!(consistent(&t_pairs, &flipped));
                twist_of(out_idx[0], &flipped)
            } else {
                twist_of(out_idx[0], &plain)
            };
            (SaddleKind::Merge, vec![false, flip], vec![twist])
        }
        (1, 2) => {
            let dir = assigned(None);
            debug_assert!(consistent(&t_pairs, &dir));
            let twists = out_idx.iter().map(|&o| twist_of(o, &dir)).collect();
            (SaddleKind::Split, vec![false], twists)
        }
        (1, 1) => (SaddleKind::SingleCycle, vec![], vec![]),
        other => unreachable!("saddle with circle counts {other:?}"),
    };

    SaddleDescriptor {
        from: s.state,
        to: t.state,
        crossing: j,
        kind,
        inputs: in_idx.iter().map(|&i| s.circles[i].id).collect(),
        outputs: out_idx.iter().map(|&i| t.circles[i].id).collect(),
        twist_in,
        twist_out,
        sign_exponent: s.state.ones_before(j),
    }
}

/// All `n · 2^(n-1)` edges, ordered by source state and then crossing.
pub fn cube_edges(d: &VirtualLinkDiagram) -> Result<Vec<SaddleDescriptor>, DiagramError> {
    let n = d.crossing_count();
    if n > super::MAX_CROSSINGS {
        return Err(DiagramError::TooManyCrossings(n, super::MAX_CROSSINGS));
    }
    let smoothings: Vec<Smoothing> = State::all(n)
        .map(|s| smooth(d, s))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
    for s in &smoothings {
        for j in 1..=n {
            if !s.state.get(j) {
                let t = &smoothings[s.state.with(j, true).bits() as usize];
                edges.push(classify_between(d, s, t, j));
            }
        }
    }
    Ok(edges)
}
