//! Evaluation of the unoriented (1+1)-dimensional TQFT on the elementary
//! cobordisms that occur in a cube of smoothings.
//!
//! Every circle carries a fixed reference orientation. An orientable piece is
//! evaluated by the Frobenius algebra after converting each boundary circle
//! whose reference orientation disagrees with the piece's orientation through
//! `φ`; a twice-punctured projective plane acts by multiplication with `θ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraElement, Basis, TheoryParams};
use crate::error::TqftError;
use crate::field::{Field, FieldScalar};

/// Ordered circle identifiers of a smoothing; basis vectors are labelings
/// `circle → {1, x}` with the first circle most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSpaceBasis {
    pub circles: Vec<usize>,
}

impl StateSpaceBasis {
    pub fn new(circles: Vec<usize>) -> Self {
        Self { circles }
    }

    pub fn dim(&self) -> usize {
        1 << self.circles.len()
    }

    /// Label of circle position `pos` in basis vector `index`.
    pub fn label(&self, index: usize, pos: usize) -> Basis {
        Basis::from_index(index >> (self.circles.len() - 1 - pos))
    }

    pub fn position(&self, circle: usize) -> Option<usize> {
        self.circles.iter().position(|&c| c == circle)
    }
}

/// The six basic pieces; twist bits mark boundary circles whose reference
/// orientation disagrees with the orientation of the piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryCobordism {
    Merge { twist_in: [bool; 2], twist_out: bool },
    Split { twist_in: bool, twist_out: [bool; 2] },
    /// One circle to one circle through a Möbius band.
    SingleCycle,
    Cylinder { twist: bool },
    /// The disc `∅ → S¹`.
    Cap,
    /// The disc `S¹ → ∅`.
    Cup,
}

impl ElementaryCobordism {
    pub fn arity(self) -> (usize, usize) {
        match self {
            ElementaryCobordism::Merge { .. } => (2, 1),
            ElementaryCobordism::Split { .. } => (1, 2),
            ElementaryCobordism::SingleCycle | ElementaryCobordism::Cylinder { .. } => (1, 1),
            ElementaryCobordism::Cap => (0, 1),
            ElementaryCobordism::Cup => (1, 0),
        }
    }
}

/// A sparse matrix over a field, stored by columns with zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLinearMap {
    field: Field,
    rows: usize,
    cols: Vec<BTreeMap<usize, FieldScalar>>,
}

impl ExactLinearMap {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.add_entry(i, i, &field.one());
        }
        m
    }

    /// Builds a map from the images of the domain basis vectors.
    pub fn from_columns(field: Field, rows: usize, columns: Vec<Vec<FieldScalar>>) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (c, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.add_entry(r, c, v);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> FieldScalar {
        self.cols[c]
            .get(&r)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, FieldScalar> {
        &self.cols[c]
    }

    /// Nonzero entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldScalar)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: &FieldScalar) {
        assert!(r < self.rows, "row {r} out of range {}", self.rows);
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[c];
        match col.get_mut(&r) {
            Some(e) => {
                *e += v;
                if e.is_zero() {
                    col.remove(&r);
                }
            }
            None => {
                col.insert(r, v.clone());
            }
        }
    }

    pub fn scale(&self, k: &FieldScalar) -> Self {
        let mut out = Self::zero(self.field, self.rows, self.cols());
        for (r, c, v) in self.entries() {
            out.add_entry(r, c, &(k * v));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, TqftError> {
        check_dims(self.rows, other.rows)?;
        check_dims(self.cols(), other.cols())?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, TqftError> {
        check_dims(self.cols(), other.rows)?;
        let mut out = Self::zero(self.field, self.rows, other.cols());
        for (c, col) in other.cols.iter().enumerate() {
            for (&mid, v) in col {
                for (&r, w) in &self.cols[mid] {
                    out.add_entry(r, c, &(w * v));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other` (first factor most significant).
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.rows * other.rows, self.cols() * other.cols());
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in other.entries() {
                out.add_entry(r1 * other.rows + r2, c1 * other.cols() + c2, &(v1 * v2));
            }
        }
        out
    }

    /// `Id^{⊗before} ⊗ self ⊗ Id^{⊗after}` on tensor powers of the rank-two algebra.
    pub fn tensor_extend(&self, before: usize, after: usize) -> Self {
        let left = Self::identity(self.field, 1 << before);
        let right = Self::identity(self.field, 1 << after);
        left.kron(self).kron(&right)
    }
}

fn check_dims(left: usize, right: usize) -> Result<(), TqftError> {
    if left == right {
        Ok(())
    } else {
        Err(TqftError::DimensionMismatch { left, right })
    }
}

impl fmt::Display for ExactLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `φ` if `twist`, otherwise the identity, applied to one element.
fn twisted(th: &TheoryParams, v: AlgebraElement, twist: bool) -> AlgebraElement {
    if twist {
        th.phi(&v)
    } else {
        v
    }
}

fn element_column(v: &AlgebraElement) -> Vec<FieldScalar> {
    vec![v.c1.clone(), v.cx.clone()]
}

/// The matrix of an elementary cobordism on its own boundary circles.
pub fn elementary_map(th: &TheoryParams, c: ElementaryCobordism) -> ExactLinearMap {
    let field = th.field();
    let e = |b: Basis| AlgebraElement::basis(field, b);
    match c {
        ElementaryCobordism::Merge { twist_in, twist_out } => {
            let mut cols = Vec::with_capacity(4);
            for u in Basis::ALL {
                for v in Basis::ALL {
                    let prod = th.multiply(
                        &twisted(th, e(u), twist_in[0]),
                        &twisted(th, e(v), twist_in[1]),
                    );
                    cols.push(element_column(&twisted(th, prod, twist_out)));
                }
            }
            ExactLinearMap::from_columns(field, 2, cols)
        }
        ElementaryCobordism::Split { twist_in, twist_out } => {
            let mut cols = Vec::with_capacity(2);
            for u in Basis::ALL {
                let mut d = th.comultiply(&twisted(th, e(u), twist_in));
                for (pos, &tw) in twist_out.iter().enumerate() {
                    if tw {
                        d = d.map_factor(pos, |b| th.phi(&e(b)));
                    }
                }
                let col = [Basis::One, Basis::X]
                    .iter()
                    .flat_map(|&a| Basis::ALL.map(move |b| [a, b]))
                    .map(|key| d.coeff(&key))
                    .collect();
                cols.push(col);
            }
            ExactLinearMap::from_columns(field, 4, cols)
        }
        ElementaryCobordism::SingleCycle => {
            let theta = th.theta();
            let cols = Basis::ALL
                .iter()
                .map(|&b| element_column(&th.multiply(&theta, &e(b))))
                .collect();
            ExactLinearMap::from_columns(field, 2, cols)
        }
        ElementaryCobordism::Cylinder { twist } => {
            let cols = Basis::ALL
                .iter()
                .map(|&b| element_column(&twisted(th, e(b), twist)))
                .collect();
            ExactLinearMap::from_columns(field, 2, cols)
        }
        ElementaryCobordism::Cap => {
            ExactLinearMap::from_columns(field, 2, vec![element_column(&th.unit())])
        }
        ElementaryCobordism::Cup => ExactLinearMap::from_columns(
            field,
            1,
            Basis::ALL.iter().map(|&b| vec![th.counit(&e(b))]).collect(),
        ),
    }
}

/// Composes maps listed in the order they are applied (first map first).
pub fn compose(maps: &[ExactLinearMap]) -> Result<ExactLinearMap, TqftError> {
    let (first, rest) = maps.split_first().expect("at least one map");
    rest.iter()
        .try_fold(first.clone(), |acc, next| next.compose(&acc))
}

/// Value of the closed surface with `genus` handles and `crosscaps` crosscaps:
/// `ε(H^genus · θ^crosscaps)`.
pub fn evaluate_closed_surface(th: &TheoryParams, genus: u32, crosscaps: u32) -> FieldScalar {
    let handle = th.handle_element();
    let theta = th.theta();
    let mut v = th.unit();
    for _ in 0..genus {
        v = th.multiply(&v, &handle);
    }
    for _ in 0..crosscaps {
        v = th.multiply(&v, &theta);
    }
    th.counit(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PRESET_NAMES;

    fn q(n: i64) -> FieldScalar {
        Field::Rationals.from_int(n)
    }

    fn theories() -> Vec<TheoryParams> {
        let mut v: Vec<_> = PRESET_NAMES
            .iter()
            .map(|n| TheoryParams::preset(n).unwrap())
            .collect();
        v.push(TheoryParams::from_triple(q(1), q(0), q(1)).unwrap());
        v.push(TheoryParams::from_triple(q(2), q(-1), q(3)).unwrap());
        v
    }

    #[test]
    fn merge_row1_is_khovanov_product() {
        let th = TheoryParams::preset("f2_row1").unwrap();
        let m = elementary_map(
            &th,
            ElementaryCobordism::Merge { twist_in: [false; 2], twist_out: false },
        );
        let f = Field::F2;
        let expect = ExactLinearMap::from_columns(
            f,
            2,
            vec![
                vec![f.one(), f.zero()],
                vec![f.zero(), f.one()],
                vec![f.zero(), f.one()],
                vec![f.zero(), f.zero()],
            ],
        );
        assert_eq!(m, expect);
    }

    #[test]
    fn single_cycle_examples() {
        let row1 = TheoryParams::preset("f2_row1").unwrap();
        assert!(elementary_map(&row1, ElementaryCobordism::SingleCycle).is_zero());
        let row7 = TheoryParams::preset("f2_row7").unwrap();
        let m = elementary_map(&row7, ElementaryCobordism::SingleCycle);
        let f = Field::F2;
        // 1 ↦ x, x ↦ x² = 0
        let expect = ExactLinearMap::from_columns(f, 2, vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn closed_surface_examples() {
        for th in theories() {
            let two = th.field().from_int(2);
            assert!(evaluate_closed_surface(&th, 0, 0).is_zero());
            assert_eq!(evaluate_closed_surface(&th, 1, 0), two);
        }
        let row7 = TheoryParams::preset("f2_row7").unwrap();
        assert!(evaluate_closed_surface(&row7, 0, 1).is_one());
    }

    #[test]
    fn compose_examples() {
        for th in theories() {
            let f = th.field();
            let cyl = elementary_map(&th, ElementaryCobordism::Cylinder { twist: false });
            assert_eq!(compose(&[cyl.clone(), cyl]).unwrap(), ExactLinearMap::identity(f, 2));
            let phi = elementary_map(&th, ElementaryCobordism::Cylinder { twist: true });
            assert_eq!(compose(&[phi.clone(), phi]).unwrap(), ExactLinearMap::identity(f, 2));
            let sphere = compose(&[
                elementary_map(&th, ElementaryCobordism::Cap),
                elementary_map(&th, ElementaryCobordism::Cup),
            ])
            .unwrap();
            assert!(sphere.is_zero());
        }
    }

    #[test]
    fn compose_dimension_mismatch() {
        let th = TheoryParams::preset("f2_row1").unwrap();
        let cap = elementary_map(&th, ElementaryCobordism::Cap);
        let err = compose(&[cap.clone(), cap]).unwrap_err();
        assert_eq!(err, TqftError::DimensionMismatch { left: 1, right: 2 });
    }

    #[test]
    fn tensor_extend_phi_first_factor() {
        let th = TheoryParams::preset("f2_row2").unwrap();
        let phi = elementary_map(&th, ElementaryCobordism::Cylinder { twist: true });
        let ext = phi.tensor_extend(0, 1);
        assert_eq!(ext.rows(), 4);
        // basis 1⊗1, 1⊗x, x⊗1, x⊗x; φ(x) = 1 + x on the first factor only
        let f = Field::F2;
        for c in 0..4 {
            let second = c & 1;
            let first = c >> 1;
            for r in 0..4 {
                let expect = (r & 1) == second && (first == 1 || r >> 1 == 0);
                assert_eq!(ext.get(r, c), if expect { f.one() } else { f.zero() }, "({r},{c})");
            }
        }
    }

    #[test]
    fn single_cycle_absorbs_twist() {
        for th in theories() {
            let sc = elementary_map(&th, ElementaryCobordism::SingleCycle);
            let phi = elementary_map(&th, ElementaryCobordism::Cylinder { twist: true });
            assert_eq!(phi.compose(&sc).unwrap(), sc);
            assert_eq!(sc.compose(&phi).unwrap(), sc);
        }
    }

    #[test]
    fn fully_twisted_merge_is_untwisted() {
        for th in theories() {
            let plain = elementary_map(&th, ElementaryCobordism::Merge { twist_in: [false; 2], twist_out: false });
            let all = elementary_map(&th, ElementaryCobordism::Merge { twist_in: [true; 2], twist_out: true });
            assert_eq!(plain, all);
            let inputs = elementary_map(&th, ElementaryCobordism::Merge { twist_in: [true; 2], twist_out: false });
            let phi = elementary_map(&th, ElementaryCobordism::Cylinder { twist: true });
            assert_eq!(inputs, phi.compose(&plain).unwrap());

            let split = elementary_map(&th, ElementaryCobordism::Split { twist_in: false, twist_out: [false; 2] });
            let split_all = elementary_map(&th, ElementaryCobordism::Split { twist_in: true, twist_out: [true; 2] });
            assert_eq!(split, split_all);
        }
    }

    #[test]
    fn crosscap_normalization() {
        for th in theories() {
            for g in 0..=4u32 {
                for k in 2..=6u32 {
                    if g + k > 6 {
                        continue;
                    }
                    assert_eq!(
                        evaluate_closed_surface(&th, g, k),
                        evaluate_closed_surface(&th, g + 1, k - 2),
                        "g={g} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn klein_bottle_two_ways() {
        for th in theories() {
            let delta = th.comultiply(&th.unit());
            let twisted = delta
                .map_factor(0, |b| th.phi(&AlgebraElement::basis(th.field(), b)))
                .multiply_factors(&th, 0)
                .to_element()
                .unwrap();
            assert_eq!(evaluate_closed_surface(&th, 0, 2), th.counit(&twisted));
        }
    }

    #[test]
    fn torus_from_pieces() {
        // cap, split, merge, cup: orientable iff the relative twists on the two
        // middle circles agree, otherwise a Klein bottle.
        for th in theories() {
            let cap = elementary_map(&th, ElementaryCobordism::Cap);
            let cup = elementary_map(&th, ElementaryCobordism::Cup);
            for bits in 0..16u32 {
                let so = [bits & 1 == 1, bits & 2 == 2];
                let mi = [bits & 4 == 4, bits & 8 == 8];
                let split = elementary_map(&th, ElementaryCobordism::Split { twist_in: false, twist_out: so });
                let merge = elementary_map(&th, ElementaryCobordism::Merge { twist_in: mi, twist_out: false });
                let total = compose(&[cap.clone(), split, merge, cup.clone()]).unwrap();
                let value = total.get(0, 0);
                let orientable = (so[0] ^ mi[0]) == (so[1] ^ mi[1]);
                let expect = if orientable {
                    evaluate_closed_surface(&th, 1, 0)
                } else {
                    evaluate_closed_surface(&th, 0, 2)
                };
                assert_eq!(value, expect, "bits {bits:04b}");
                if orientable {
                    assert_eq!(value, th.field().from_int(2));
                }
            }
        }
    }
}
