//! The unnormalised Jones polynomial by the bracket state sum, normalised so
//! that the unknot has value `q + q⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{smooth, State, VirtualLinkDiagram};

/// A Laurent polynomial in `q` with integer coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i64, i64>", into = "BTreeMap<i64, i64>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl From<BTreeMap<i64, i64>> for LaurentPoly {
    fn from(terms: BTreeMap<i64, i64>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }
}

impl From<LaurentPoly> for BTreeMap<i64, i64> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `q + q⁻¹`.
    pub fn circle() -> Self {
        Self::monomial(1, 1) + Self::monomial(-1, 1)
    }

    pub fn add_term(&mut self, exponent: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exponent).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let (mut base, mut acc) = (self.clone(), Self::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => f.write_str("q")?,
                (1, e) => write!(f, "q^{e}")?,
                (m, 1) => write!(f, "{m}q")?,
                (m, e) => write!(f, "{m}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Number of states with each `(r, k)`.
fn state_census(d: &VirtualLinkDiagram) -> BTreeMap<(usize, usize), u64> {
    let n = d.crossing_count();
    (0..1u64 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, bits| {
            let s = smooth(d, State::new(bits, n)).expect("state length matches");
            *acc.entry((s.r(), s.k())).or_insert(0u64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        })
}

pub fn kauffman_jones(d: &VirtualLinkDiagram) -> LaurentPoly {
    let circle = LaurentPoly::circle();
    let mut sum = LaurentPoly::zero();
    for ((r, k), count) in state_census(d) {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let term = circle.pow(k as u32).shift(r as i64);
        sum = &sum + &(&term * &LaurentPoly::monomial(0, sign * count as i64));
    }
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    &sum * &LaurentPoly::monomial(np - 2 * nm, sign)
}

/// `Σ_s (-1)^(r(s) - n₋) 2^k(s)`.
pub fn jones_at_one(d: &VirtualLinkDiagram) -> i64 {
    let nm = d.n_minus();
    state_census(d)
        .into_iter()
        .map(|((r, k), count)| {
            let sign = if (r + nm).is_multiple_of(2) { 1 } else { -1 };
            sign * ((count as i64) << k)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        terms.iter().map(|&(e, c)| LaurentPoly::monomial(e, c)).fold(LaurentPoly::zero(), |a, b| a + b)
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(kauffman_jones(&VirtualLinkDiagram::unknot()), LaurentPoly::circle());
        let unlink = VirtualLinkDiagram::parse_gauss(";").unwrap();
        assert_eq!(kauffman_jones(&unlink), LaurentPoly::circle().pow(2));
        assert_eq!(jones_at_one(&VirtualLinkDiagram::unknot()), 2);
        assert_eq!(jones_at_one(&unlink), 4);
    }

    #[test]
    fn kinks_are_invisible() {
        for code in ["O1+,U1+", "U1+,O1+", "O1-,U1-", "U1-,O1-"] {
            let d = VirtualLinkDiagram::parse_gauss(code).unwrap();
            assert_eq!(kauffman_jones(&d), LaurentPoly::circle(), "{code}");
        }
    }

    #[test]
    fn trefoil() {
        let d = VirtualLinkDiagram::parse_gauss("O1+,U2+,O3+,U1+,O2+,U3+").unwrap();
        assert_eq!(kauffman_jones(&d), poly(&[(1, 1), (3, 1), (5, 1), (9, -1)]));
        assert_eq!(jones_at_one(&d), 2);
    }

    #[test]
    fn display_and_json() {
        let p = poly(&[(-1, 1), (1, -2), (3, 1), (0, 4)]);
        assert_eq!(p.to_string(), "q^-1 + 4 - 2q + q^3");
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"-1":1,"0":4,"1":-2,"3":1}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), p);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(poly(&[(2, -1)]).to_string(), "-q^2");
    }

    proptest! {
        #[test]
        fn disjoint_union_multiplies(d in crate::diagram::arbitrary_diagram()) {
            let j = kauffman_jones(&d);
            prop_assert_eq!(kauffman_jones(&d.with_extra_unknot()), &j * &LaurentPoly::circle());
            prop_assert_eq!(j.eval_at_one(), jones_at_one(&d));
        }
    }
}
