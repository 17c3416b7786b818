//! Reference computations that share no code with the library's smoothing,
//! saddle or elimination routines.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use vlh_core::{ExactLinearMap, FieldScalar, Sign, VirtualLinkDiagram};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Arc `i` of a component runs from passage `i` to passage `i + 1`.
struct ArcTable {
    arcs: usize,
    /// Per crossing: (arc into over, arc out of over, arc into under, arc out of under).
    ends: Vec<[usize; 4]>,
    signs: Vec<Sign>,
}

fn arc_table(d: &VirtualLinkDiagram) -> ArcTable {
    let n = d.crossing_count();
    let mut ends = vec![[0; 4]; n];
    let mut signs = vec![Sign::Positive; n];
    let mut base = 0;
    for comp in d.components() {
        let len = comp.len();
        for (i, p) in comp.iter().enumerate() {
            let incoming = base + (i + len - 1) % len;
            let outgoing = base + i;
            let slot = if p.over { 0 } else { 2 };
            ends[p.crossing - 1][slot] = incoming;
            ends[p.crossing - 1][slot + 1] = outgoing;
            signs[p.crossing - 1] = p.sign;
        }
        base += len.max(1);
    }
    ArcTable { arcs: base, ends, signs }
}

/// Circles of a smoothing as sorted arc sets, ordered by least arc.
/// `bits[j]` is the smoothing of crossing `j + 1`.
pub fn circles(d: &VirtualLinkDiagram, bits: &[bool]) -> Vec<Vec<usize>> {
    let table = arc_table(d);
    let mut uf = UnionFind::new(table.arcs);
    for (j, &[in_o, out_o, in_u, out_u]) in table.ends.iter().enumerate() {
        let oriented = (table.signs[j] == Sign::Positive) != bits[j];
        if oriented {
            uf.union(in_o, out_u);
            uf.union(in_u, out_o);
        } else {
            uf.union(in_o, in_u);
            uf.union(out_o, out_u);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..table.arcs {
        let r = uf.find(a);
        groups.entry(r).or_default().push(a);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn state_bits(n: usize, s: u64) -> Vec<bool> {
    (0..n).map(|j| (s >> j) & 1 == 1).collect()
}

/// `Σ_s (-1)^(r(s) - n₋) 2^k(s)`.
pub fn state_sum_at_one(d: &VirtualLinkDiagram) -> i64 {
    let n = d.crossing_count();
    (0..1u64 << n)
        .map(|s| {
            let r = s.count_ones() as usize;
            let k = circles(d, &state_bits(n, s)).len() as u32;
            let sign = if (r + d.n_minus()).is_multiple_of(2) { 1 } else { -1 };
            sign * (1i64 << k)
        })
        .sum()
}

/// Bracket state sum `(-1)^n₋ q^(n₊ - 2n₋) Σ (-1)^r q^r (q + q⁻¹)^k` as exponent → coefficient.
pub fn jones(d: &VirtualLinkDiagram) -> BTreeMap<i64, i64> {
    let n = d.crossing_count();
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for s in 0..1u64 << n {
        let r = s.count_ones() as i64;
        let k = circles(d, &state_bits(n, s)).len() as i64;
        let sign = if (r + nm) % 2 == 0 { 1 } else { -1 };
        // (q + q⁻¹)^k = Σ_j C(k, j) q^(k - 2j)
        let mut binom = 1i64;
        for j in 0..=k {
            *out.entry(k - 2 * j + r + np - 2 * nm).or_insert(0) += sign * binom;
            binom = binom * (k - j) / (j + 1);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

struct Generator {
    state: u64,
    labels: u64,
    q: i64,
}

/// Homology of the classical cube over GF(2) with `m(x⊗x) = 0`,
/// `Δ(1) = 1⊗x + x⊗1`, `Δ(x) = x⊗x`, keyed by (homological, quantum) degree.
/// Panics on a saddle that neither merges nor splits.
pub fn classical_khovanov_f2(d: &VirtualLinkDiagram) -> BTreeMap<(i64, i64), usize> {
    let n = d.crossing_count();
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let smoothings: Vec<Vec<Vec<usize>>> =
        (0..1u64 << n).map(|s| circles(d, &state_bits(n, s))).collect();

    let mut by_degree: BTreeMap<i64, Vec<Generator>> = BTreeMap::new();
    for (s, cs) in smoothings.iter().enumerate() {
        let r = (s as u64).count_ones() as i64;
        for labels in 0..1u64 << cs.len() {
            let k = cs.len() as i64;
            let xs = labels.count_ones() as i64;
            let q = k - 2 * xs + r + np - 2 * nm;
            by_degree.entry(r - nm).or_default().push(Generator { state: s as u64, labels, q });
        }
    }
    let index: Vec<BTreeMap<(u64, u64), usize>> = by_degree
        .values()
        .map(|gens| gens.iter().enumerate().map(|(i, g)| ((g.state, g.labels), i)).collect())
        .collect();
    let degrees: Vec<i64> = by_degree.keys().copied().collect();

    // differential out of each degree, as dense rows over GF(2)
    let mut ranks: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (di, &deg) in degrees.iter().enumerate() {
        let Some(targets) = index.get(di + 1) else { continue };
        let sources = &by_degree[&deg];
        let mut columns: Vec<(i64, Vec<usize>)> = Vec::new();
        for g in sources {
            let mut image: BTreeMap<usize, bool> = BTreeMap::new();
            for j in 0..n {
                if (g.state >> j) & 1 == 1 {
                    continue;
                }
                let t = g.state | (1 << j);
                for labels in saddle_image(&smoothings[g.state as usize], &smoothings[t as usize], g.labels) {
                    let e = image.entry(targets[&(t, labels)]).or_insert(false);
                    *e = !*e;
                }
            }
            columns.push((g.q, image.into_iter().filter(|&(_, v)| v).map(|(r, _)| r).collect()));
        }
        let mut per_q: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
        for (q, col) in columns {
            per_q.entry(q).or_default().push(col);
        }
        for (q, cols) in per_q {
            ranks.insert((deg, q), rank_f2(cols, by_degree[&degrees[di + 1]].len()));
        }
    }

    let mut out = BTreeMap::new();
    for (&deg, gens) in &by_degree {
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for g in gens {
            *dims.entry(g.q).or_insert(0) += 1;
        }
        for (q, dim) in dims {
            let b = dim
                - ranks.get(&(deg, q)).copied().unwrap_or(0)
                - ranks.get(&(deg - 1, q)).copied().unwrap_or(0);
            if b > 0 {
                out.insert((deg, q), b);
            }
        }
    }
    out
}

/// Betti numbers of [`classical_khovanov_f2`] summed over quantum degree.
pub fn classical_betti_f2(d: &VirtualLinkDiagram) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for ((i, _), b) in classical_khovanov_f2(d) {
        *out.entry(i).or_insert(0) += b;
    }
    out
}

/// Target labelings of one saddle applied to one labeling, over GF(2).
fn saddle_image(from: &[Vec<usize>], to: &[Vec<usize>], labels: u64) -> Vec<u64> {
    let label = |i: usize| (labels >> i) & 1 == 1;
    let gone: Vec<usize> = (0..from.len()).filter(|&i| !to.contains(&from[i])).collect();
    let fresh: Vec<usize> = (0..to.len()).filter(|&i| !from.contains(&to[i])).collect();
    let mut base = 0u64;
    for (i, c) in from.iter().enumerate() {
        if let Some(p) = to.iter().position(|x| x == c) {
            if label(i) {
                base |= 1 << p;
            }
        }
    }
    match (gone.as_slice(), fresh.as_slice()) {
        (&[a, b], &[c]) => match (label(a), label(b)) {
            (false, false) => vec![base],
            (true, true) => vec![],
            _ => vec![base | 1 << c],
        },
        (&[a], &[c, e]) => {
            if label(a) {
                vec![base | 1 << c | 1 << e]
            } else {
                vec![base | 1 << c, base | 1 << e]
            }
        }
        _ => panic!("saddle is neither a merge nor a split"),
    }
}

fn rank_f2(mut cols: Vec<Vec<usize>>, rows: usize) -> usize {
    let mut dense: Vec<Vec<bool>> = cols
        .drain(..)
        .map(|c| {
            let mut v = vec![false; rows];
            for r in c {
                v[r] = true;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for r in 0..rows {
        let Some(p) = (rank..dense.len()).find(|&i| dense[i][r]) else { continue };
        dense.swap(rank, p);
        let pivot = dense[rank].clone();
        for (i, col) in dense.iter_mut().enumerate() {
            if i != rank && col[r] {
                for (x, y) in col.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over ℚ by dense Gauss–Jordan elimination on rational entries.
pub fn dense_rank_q(m: &ExactLinearMap) -> usize {
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        let FieldScalar::Rational(q) = v else { panic!("rational matrix expected") };
        a[r][c] = q.clone();
    }
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / &a[rank][c];
        let pivot: Vec<BigRational> = a[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &k * y;
                }
            }
        }
        a[rank] = pivot;
        rank += 1;
    }
    rank
}
