//! The chain complex of a diagram under a theory, and its homology.
//!
//! Chain group `r` is the direct sum over states with `r` one-smoothings of
//! `V^{⊗k(s)}`. Generators are ordered by state (lexicographically), then by
//! decoration with the first circle most significant and `1 < x`. The
//! homological degree is `i = r - n₋`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Basis, TheoryParams};
use crate::diagram::{cube_edges, smooth, SaddleDescriptor, SaddleKind, Smoothing, State, VirtualLinkDiagram};
use crate::error::{ComplexError, DiagramError, FaceWitness};
use crate::field::{Field, FieldScalar};
use crate::jones::LaurentPoly;
use crate::linalg::rank;
use crate::tqft::{elementary_map, ElementaryCobordism, ExactLinearMap, StateSpaceBasis};

/// The summand of one state inside a chain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub state: State,
    pub basis: StateSpaceBasis,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGroup {
    pub degree: i64,
    pub summands: Vec<Summand>,
    pub dim: usize,
}

impl ChainGroup {
    fn summand_of(&self, index: usize) -> &Summand {
        let pos = self.summands.partition_point(|s| s.offset <= index) - 1;
        &self.summands[pos]
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    n_plus: usize,
    n_minus: usize,
    homogeneous: bool,
    groups: Vec<ChainGroup>,
    differentials: Vec<ExactLinearMap>,
}

/// Nonzero Betti numbers by homological degree and, for graded theories,
/// nonzero dimensions by `(degree, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: BTreeMap<i64, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qtable: Option<BTreeMap<(i64, i64), usize>>,
    pub euler: i64,
}

impl HomologyResult {
    pub fn graded_euler(&self) -> Option<LaurentPoly> {
        self.qtable.as_ref().map(|table| {
            let mut p = LaurentPoly::zero();
            for (&(i, q), &n) in table {
                p.add_term(q, if i % 2 == 0 { n as i64 } else { -(n as i64) });
            }
            p
        })
    }
}

/// One circle of one smoothing whose reference orientation is reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircleSelector {
    pub state: State,
    pub circle: usize,
}

impl ChainComplex {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn min_degree(&self) -> i64 {
        -(self.n_minus as i64)
    }

    pub fn max_degree(&self) -> i64 {
        self.n_plus as i64
    }

    pub fn groups(&self) -> &[ChainGroup] {
        &self.groups
    }

    /// Chain group dimensions from `min_degree` to `max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim).collect()
    }

    /// The differential leaving degree `i`, if it exists.
    pub fn differential(&self, i: i64) -> Option<&ExactLinearMap> {
        usize::try_from(i - self.min_degree())
            .ok()
            .and_then(|r| self.differentials.get(r))
    }

    /// `Σ_s (-1)^(r(s) - n₋) 2^k(s)`, read off the chain groups.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.degree % 2 == 0 { g.dim as i64 } else { -(g.dim as i64) })
            .sum()
    }

    fn locate(&self, state: State) -> (usize, &Summand) {
        let r = state.weight();
        let summand = self.groups[r]
            .summands
            .iter()
            .find(|s| s.state == state)
            .expect("every state has a summand");
        (r, summand)
    }

    /// The component of the differential from one state's summand to another's.
    pub fn block(&self, from: State, to: State) -> Result<ExactLinearMap, DiagramError> {
        if from.edge_to(to).is_none() {
            return Err(DiagramError::NotCubeEdge { from: from.to_string(), to: to.to_string() });
        }
        let (r, src) = self.locate(from);
        let (_, dst) = self.locate(to);
        let d = &self.differentials[r];
        let mut out = ExactLinearMap::zero(self.field, dst.basis.dim(), src.basis.dim());
        for c in 0..src.basis.dim() {
            for (&row, v) in d.column(src.offset + c).range(dst.offset..dst.offset + dst.basis.dim()) {
                out.add_entry(row - dst.offset, c, v);
            }
        }
        Ok(out)
    }

    /// q-degree of generator `index` of chain group `r`.
    fn qdegree(&self, r: usize, index: usize) -> i64 {
        let s = self.groups[r].summand_of(index);
        let local = index - s.offset;
        let k = s.basis.circles.len();
        let xs = local.count_ones() as i64;
        (k as i64 - 2 * xs) + r as i64 + self.n_plus as i64 - 2 * self.n_minus as i64
    }
}

/// Bit of circle position `pos` among `k` circles in a decoration index.
fn label_bit(index: usize, k: usize, pos: usize) -> usize {
    (index >> (k - 1 - pos)) & 1
}

fn edge_entries(
    th: &TheoryParams,
    edge: &SaddleDescriptor,
    src: &Smoothing,
    dst: &Smoothing,
    flipped: &HashSet<(State, usize)>,
) -> Vec<(usize, usize, FieldScalar)> {
    let flip_in = |i: usize| flipped.contains(&(edge.from, edge.inputs[i]));
    let flip_out = |i: usize| flipped.contains(&(edge.to, edge.outputs[i]));
    let cob = match edge.kind {
        SaddleKind::Merge => ElementaryCobordism::Merge {
            twist_in: [edge.twist_in[0] ^ flip_in(0), edge.twist_in[1] ^ flip_in(1)],
            twist_out: edge.twist_out[0] ^ flip_out(0),
        },
        SaddleKind::Split => ElementaryCobordism::Split {
            twist_in: edge.twist_in[0] ^ flip_in(0),
            twist_out: [edge.twist_out[0] ^ flip_out(0), edge.twist_out[1] ^ flip_out(1)],
        },
        SaddleKind::SingleCycle => ElementaryCobordism::SingleCycle,
    };
    let local = elementary_map(th, cob);

    let (ks, kt) = (src.k(), dst.k());
    let pos_src = |id: usize| src.position_of_id(id).expect("input circle exists");
    let pos_dst = |id: usize| dst.position_of_id(id).expect("output circle exists");
    let in_pos: Vec<usize> = edge.inputs.iter().map(|&id| pos_src(id)).collect();
    let out_pos: Vec<usize> = edge.outputs.iter().map(|&id| pos_dst(id)).collect();
    let passive: Vec<(usize, usize)> = (0..ks)
        .filter(|p| !in_pos.contains(p))
        .map(|p| (p, pos_dst(src.circles[p].id)))
        .collect();

    let negative = edge.negative();
    let mut entries = Vec::new();
    for col in 0..1usize << ks {
        let li = in_pos.iter().fold(0, |acc, &p| (acc << 1) | label_bit(col, ks, p));
        let base = passive
            .iter()
            .fold(0, |acc, &(p, q)| acc | (label_bit(col, ks, p) << (kt - 1 - q)));
        for (&lo, v) in local.column(li) {
            let row = out_pos
                .iter()
                .enumerate()
                .fold(base, |acc, (i, &q)| acc | (label_bit(lo, out_pos.len(), i) << (kt - 1 - q)));
            let v = if negative { -v.clone() } else { v.clone() };
            entries.push((row, col, v));
        }
    }
    entries
}

pub fn build_complex(d: &VirtualLinkDiagram, th: &TheoryParams) -> Result<ChainComplex, ComplexError> {
    build_with_flips(d, th, &HashSet::new())
}

/// `(row, column, value)` of one differential entry.
type Entry = (usize, usize, FieldScalar);

fn build_with_flips(
    d: &VirtualLinkDiagram,
    th: &TheoryParams,
    flipped: &HashSet<(State, usize)>,
) -> Result<ChainComplex, ComplexError> {
    let n = d.crossing_count();
    let field = th.field();
    let edges = cube_edges(d)?;
    let smoothings: Vec<Smoothing> = (0..1u64 << n)
        .into_par_iter()
        .map(|b| smooth(d, State::new(b, n)))
        .collect::<Result<_, _>>()?;

    let mut groups: Vec<ChainGroup> = (0..=n)
        .map(|r| ChainGroup { degree: r as i64 - d.n_minus() as i64, summands: Vec::new(), dim: 0 })
        .collect();
    let mut offset_of = vec![0usize; smoothings.len()];
    for s in &smoothings {
        let g = &mut groups[s.r()];
        offset_of[s.state.bits() as usize] = g.dim;
        g.summands.push(Summand {
            state: s.state,
            basis: StateSpaceBasis::new(s.circles.iter().map(|c| c.id).collect()),
            offset: g.dim,
        });
        g.dim += 1 << s.k();
    }

    let blocks: Vec<(usize, Vec<Entry>)> = edges
        .par_iter()
        .map(|e| {
            let src = &smoothings[e.from.bits() as usize];
            let dst = &smoothings[e.to.bits() as usize];
            let (so, dof) = (offset_of[e.from.bits() as usize], offset_of[e.to.bits() as usize]);
            let entries = edge_entries(th, e, src, dst, flipped)
                .into_iter()
                .map(|(r, c, v)| (r + dof, c + so, v))
                .collect();
            (e.from.weight(), entries)
        })
        .collect();
    let mut differentials: Vec<ExactLinearMap> = (0..n)
        .map(|r| ExactLinearMap::zero(field, groups[r + 1].dim, groups[r].dim))
        .collect();
    for (r, entries) in blocks {
        for (row, col, v) in entries {
            differentials[r].add_entry(row, col, &v);
        }
    }

    let complex = ChainComplex {
        field,
        n_plus: d.n_plus(),
        n_minus: d.n_minus(),
        homogeneous: th.is_homogeneous(),
        groups,
        differentials,
    };
    check_d_squared(&complex)?;
    Ok(complex)
}

fn check_d_squared(c: &ChainComplex) -> Result<(), ComplexError> {
    let witness = (0..c.differentials.len().saturating_sub(1))
        .into_par_iter()
        .find_map_first(|r| {
            let dd = c.differentials[r + 1]
                .compose(&c.differentials[r])
                .expect("consecutive differentials compose");
            let first = dd.entries().next().map(|(row, col, v)| FaceWitness {
                degree: c.groups[r].degree,
                from_state: c.groups[r].summand_of(col).state.to_string(),
                to_state: c.groups[r + 2].summand_of(row).state.to_string(),
                value: v.clone(),
            });
            first
        });
    match witness {
        Some(w) => Err(ComplexError::DSquaredNonzero(w)),
        None => Ok(()),
    }
}

pub fn homology(c: &ChainComplex) -> HomologyResult {
    let ranks: Vec<usize> = c.differentials.par_iter().map(rank).collect();
    let betti: BTreeMap<i64, usize> = c
        .groups
        .iter()
        .enumerate()
        .map(|(r, g)| {
            let out = ranks.get(r).copied().unwrap_or(0);
            let inc = if r == 0 { 0 } else { ranks[r - 1] };
            (g.degree, g.dim - out - inc)
        })
        .filter(|&(_, b)| b > 0)
        .collect();
    let euler = betti
        .iter()
        .map(|(&i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    HomologyResult { betti, qtable: None, euler }
}

/// Restriction of a differential to one q-degree, with both sides reindexed.
fn q_block(m: &ExactLinearMap, rows: &[usize], cols: &[usize]) -> ExactLinearMap {
    let mut out = ExactLinearMap::zero(m.field(), rows.len(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for (r, v) in m.column(c) {
            let i = rows.binary_search(r).expect("homogeneous differential");
            out.add_entry(i, j, v);
        }
    }
    out
}

pub fn graded_homology(c: &ChainComplex) -> Result<HomologyResult, ComplexError> {
    if !c.homogeneous {
        return Err(ComplexError::NotGraded(
            "the q-grading needs h = t = 0, θ = 0 and φ = Id".into(),
        ));
    }
    // generators of each chain group bucketed by q-degree
    let buckets: Vec<BTreeMap<i64, Vec<usize>>> = (0..c.groups.len())
        .map(|r| {
            let mut by_q: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for index in 0..c.groups[r].dim {
                by_q.entry(c.qdegree(r, index)).or_default().push(index);
            }
            by_q
        })
        .collect();
    for (r, d) in c.differentials.iter().enumerate() {
        if let Some((row, col, _)) = d.entries().find(|&(row, col, _)| c.qdegree(r + 1, row) != c.qdegree(r, col)) {
            return Err(ComplexError::NotGraded(format!(
                "differential from {} to {} changes q-degree",
                c.groups[r].summand_of(col).state,
                c.groups[r + 1].summand_of(row).state
            )));
        }
    }
    let empty = Vec::new();
    let ranks: Vec<BTreeMap<i64, usize>> = c
        .differentials
        .par_iter()
        .enumerate()
        .map(|(r, d)| {
            buckets[r]
                .iter()
                .map(|(&q, cols)| {
                    let rows = buckets[r + 1].get(&q).unwrap_or(&empty);
                    (q, rank(&q_block(d, rows, cols)))
                })
                .collect()
        })
        .collect();
    let mut qtable = BTreeMap::new();
    for (r, g) in c.groups.iter().enumerate() {
        for (&q, gens) in &buckets[r] {
            let out = ranks.get(r).and_then(|m| m.get(&q)).copied().unwrap_or(0);
            let inc = if r == 0 { 0 } else { ranks[r - 1].get(&q).copied().unwrap_or(0) };
            let b = gens.len() - out - inc;
            if b > 0 {
                qtable.insert((g.degree, q), b);
            }
        }
    }
    let mut result = homology(c);
    debug_assert!(result.betti.iter().all(|(&i, &b)| {
        qtable.iter().filter(|(&(j, _), _)| j == i).map(|(_, &n)| n).sum::<usize>() == b
    }));
    result.qtable = Some(qtable);
    Ok(result)
}

/// Homology after reversing the reference orientation of one circle.
pub fn betti_with_reversed_anchor(
    d: &VirtualLinkDiagram,
    th: &TheoryParams,
    selector: CircleSelector,
) -> Result<HomologyResult, ComplexError> {
    let s = smooth(d, selector.state)?;
    if s.position_of_id(selector.circle).is_none() {
        return Err(DiagramError::BadSite(format!(
            "state {} has no circle {}",
            selector.state, selector.circle
        ))
        .into());
    }
    let flipped = HashSet::from([(selector.state, selector.circle)]);
    Ok(homology(&build_with_flips(d, th, &flipped)?))
}

/// Every circle of every smoothing, in state order.
pub fn all_selectors(d: &VirtualLinkDiagram) -> Result<Vec<CircleSelector>, DiagramError> {
    let n = d.crossing_count();
    let mut out = Vec::new();
    for state in State::all(n) {
        for c in smooth(d, state)?.circles {
            out.push(CircleSelector { state, circle: c.id });
        }
    }
    Ok(out)
}

/// Decoration of a generator, for reports.
pub fn decoration(basis: &StateSpaceBasis, local: usize) -> Vec<Basis> {
    (0..basis.circles.len()).map(|p| basis.label(local, p)).collect()
}
