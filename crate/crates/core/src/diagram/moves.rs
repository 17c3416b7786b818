//! Reidemeister moves on Gauss codes.
//!
//! Forward moves add crossings labelled `n + 1` (and `n + 2`). Inverse moves
//! remove a pattern and close the gap in the labels, so undoing a forward
//! move restores the original code exactly.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

use super::{Passage, Sign, VirtualLinkDiagram};

/// Insertion point: before passage `index` of `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R1Variant {
    pub sign: Sign,
    pub over_first: bool,
}

/// The two new crossings get opposite signs, `first_sign` on the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Variant {
    pub parallel: bool,
    pub first_sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    R1 { gap: Gap, variant: R1Variant },
    R2 { over_gap: Gap, under_gap: Gap, variant: R2Variant },
    InverseR1 { crossing: usize },
    InverseR2 { crossings: [usize; 2] },
}

fn check_gap(d: &VirtualLinkDiagram, gap: Gap) -> Result<(), DiagramError> {
    match d.components().get(gap.component) {
        Some(c) if gap.index <= c.len() => Ok(()),
        _ => Err(DiagramError::BadSite(format!(
            "component {} index {}",
            gap.component, gap.index
        ))),
    }
}

fn rebuild(d: &VirtualLinkDiagram, components: Vec<Vec<Passage>>) -> VirtualLinkDiagram {
    VirtualLinkDiagram::new(components)
        .expect("moves preserve validity")
        .with_name(d.name().to_string())
        .with_classical(d.is_classical())
}

pub fn apply_r1(
    d: &VirtualLinkDiagram,
    gap: Gap,
    variant: R1Variant,
) -> Result<VirtualLinkDiagram, DiagramError> {
    check_gap(d, gap)?;
    let c = d.crossing_count() + 1;
    let (o, u) = (Passage::over(c, variant.sign), Passage::under(c, variant.sign));
    let pair = if variant.over_first { [o, u] } else { [u, o] };
    let mut components = d.components().to_vec();
    components[gap.component].splice(gap.index..gap.index, pair);
    Ok(rebuild(d, components))
}

pub fn apply_r2(
    d: &VirtualLinkDiagram,
    over_gap: Gap,
    under_gap: Gap,
    variant: R2Variant,
) -> Result<VirtualLinkDiagram, DiagramError> {
    check_gap(d, over_gap)?;
    check_gap(d, under_gap)?;
    let (a, b) = (d.crossing_count() + 1, d.crossing_count() + 2);
    let (sa, sb) = (variant.first_sign, variant.first_sign.flip());
    let over = [Passage::over(a, sa), Passage::over(b, sb)];
    let under = if variant.parallel {
        [Passage::under(a, sa), Passage::under(b, sb)]
    } else {
        [Passage::under(b, sb), Passage::under(a, sa)]
    };
    let mut components = d.components().to_vec();
    // insert at the later position first so the earlier index stays valid
    let under_later = (under_gap.component, under_gap.index) >= (over_gap.component, over_gap.index);
    if under_later {
        components[under_gap.component].splice(under_gap.index..under_gap.index, under);
        components[over_gap.component].splice(over_gap.index..over_gap.index, over);
    } else {
        components[over_gap.component].splice(over_gap.index..over_gap.index, over);
        components[under_gap.component].splice(under_gap.index..under_gap.index, under);
    }
    Ok(rebuild(d, components))
}

/// Position `(component, index)` of a passage.
fn find(d: &VirtualLinkDiagram, crossing: usize, over: bool) -> (usize, usize) {
    d.components()
        .iter()
        .enumerate()
        .find_map(|(ci, comp)| {
            comp.iter()
                .position(|p| p.crossing == crossing && p.over == over)
                .map(|i| (ci, i))
        })
        .expect("validated diagrams contain both passages")
}

fn cyclically_adjacent(d: &VirtualLinkDiagram, x: (usize, usize), y: (usize, usize)) -> bool {
    if x.0 != y.0 {
        return false;
    }
    let m = d.components()[x.0].len();
    (x.1 + 1) % m == y.1 || (y.1 + 1) % m == x.1
}

fn remove_crossings(d: &VirtualLinkDiagram, labels: &[usize]) -> VirtualLinkDiagram {
    let shift = |c: usize| c - labels.iter().filter(|&&l| l < c).count();
    let components = d
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .filter(|p| !labels.contains(&p.crossing))
                .map(|p| Passage { crossing: shift(p.crossing), ..*p })
                .collect()
        })
        .collect();
    rebuild(d, components)
}

fn check_label(d: &VirtualLinkDiagram, c: usize) -> Result<(), DiagramError> {
    if c == 0 || c > d.crossing_count() {
        return Err(DiagramError::BadSite(format!("no crossing {c}")));
    }
    Ok(())
}

fn is_r1_site(d: &VirtualLinkDiagram, c: usize) -> bool {
    cyclically_adjacent(d, find(d, c, true), find(d, c, false))
}

fn is_r2_site(d: &VirtualLinkDiagram, a: usize, b: usize) -> bool {
    a != b
        && d.sign(a) != d.sign(b)
        && cyclically_adjacent(d, find(d, a, true), find(d, b, true))
        && cyclically_adjacent(d, find(d, a, false), find(d, b, false))
}

pub fn inverse_r1(d: &VirtualLinkDiagram, crossing: usize) -> Result<VirtualLinkDiagram, DiagramError> {
    check_label(d, crossing)?;
    if !is_r1_site(d, crossing) {
        return Err(DiagramError::PatternNotFound(format!(
            "crossing {crossing} is not a kink"
        )));
    }
    Ok(remove_crossings(d, &[crossing]))
}

pub fn inverse_r2(
    d: &VirtualLinkDiagram,
    a: usize,
    b: usize,
) -> Result<VirtualLinkDiagram, DiagramError> {
    check_label(d, a)?;
    check_label(d, b)?;
    if !is_r2_site(d, a, b) {
        return Err(DiagramError::PatternNotFound(format!(
            "crossings {a} and {b} do not form a bigon"
        )));
    }
    Ok(remove_crossings(d, &[a, b]))
}

pub fn r1_sites(d: &VirtualLinkDiagram) -> Vec<usize> {
    (1..=d.crossing_count()).filter(|&c| is_r1_site(d, c)).collect()
}

pub fn r2_sites(d: &VirtualLinkDiagram) -> Vec<(usize, usize)> {
    let n = d.crossing_count();
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| is_r2_site(d, a, b))
        .collect()
}

pub fn apply_move(d: &VirtualLinkDiagram, m: &Move) -> Result<VirtualLinkDiagram, DiagramError> {
    match *m {
        Move::R1 { gap, variant } => apply_r1(d, gap, variant),
        Move::R2 { over_gap, under_gap, variant } => apply_r2(d, over_gap, under_gap, variant),
        Move::InverseR1 { crossing } => inverse_r1(d, crossing),
        Move::InverseR2 { crossings: [a, b] } => inverse_r2(d, a, b),
    }
}

fn random_gap(d: &VirtualLinkDiagram, rng: &mut impl Rng) -> Gap {
    let component = rng.gen_range(0..d.components().len());
    let index = rng.gen_range(0..=d.components()[component].len());
    Gap { component, index }
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// A uniformly chosen applicable move that keeps at most `max_crossings`.
pub fn random_move(d: &VirtualLinkDiagram, rng: &mut impl Rng, max_crossings: usize) -> Option<Move> {
    let n = d.crossing_count();
    let kinks = r1_sites(d);
    let bigons = r2_sites(d);
    let mut kinds = Vec::new();
    if n < max_crossings {
        kinds.push(0);
    }
    if n + 2 <= max_crossings {
        kinds.push(1);
    }
    if !kinks.is_empty() {
        kinds.push(2);
    }
    if !bigons.is_empty() {
        kinds.push(3);
    }
    if kinds.is_empty() {
        return None;
    }
    Some(match kinds[rng.gen_range(0..kinds.len())] {
        0 => Move::R1 {
            gap: random_gap(d, rng),
            variant: R1Variant { sign: random_sign(rng), over_first: rng.gen() },
        },
        1 => Move::R2 {
            over_gap: random_gap(d, rng),
            under_gap: random_gap(d, rng),
            variant: R2Variant { parallel: rng.gen(), first_sign: random_sign(rng) },
        },
        2 => Move::InverseR1 { crossing: kinks[rng.gen_range(0..kinks.len())] },
        _ => {
            let (a, b) = bigons[rng.gen_range(0..bigons.len())];
            Move::InverseR2 { crossings: [a, b] }
        }
    })
}
