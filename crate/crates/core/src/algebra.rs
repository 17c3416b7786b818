//! The rank-two extended Frobenius algebra `V = R{1, x}` attached to a
//! parameter tuple `(a, t, λ, μ, β)`.
//!
//! Structure maps in the basis `{1, x}`:
//!
//! ```text
//! x·x   = h x + t 1,            h = β − aλ² − aμ²t
//! Δ(1)  = f(1⊗x + x⊗1) − h f 1⊗1,   f = a⁻¹
//! Δ(x)  = f x⊗x + f t 1⊗1
//! ε(1)  = 0, ε(x) = a, i(1) = 1
//! θ     = λ1 + μx
//! φ(1)  = 1, φ(x) = β1 + x
//! ```
//!
//! A tuple defines a theory iff `a` is invertible, `μβ = λβ = 0` and
//! `2aλμ − a²μ²λ² − a²μ⁴t = 2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::{Field, FieldScalar};

/// Names of the five free parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Param {
    A,
    T,
    Lambda,
    Mu,
    Beta,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::A => "a",
            Param::T => "t",
            Param::Lambda => "lambda",
            Param::Mu => "mu",
            Param::Beta => "beta",
        })
    }
}

/// The two defining relations of the parameter ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// `μβ = λβ = 0`
    BetaAnnihilation,
    /// `2aλμ − a²μ²λ² − a²μ⁴t = 2`
    Normalization,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::BetaAnnihilation => "mu*beta = lambda*beta = 0",
            Constraint::Normalization => "2a*lambda*mu - a^2*mu^2*lambda^2 - a^2*mu^4*t = 2",
        })
    }
}

/// Basis vector of `V`; `One < X` fixes the tensor ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    One,
    X,
}

impl Basis {
    pub const ALL: [Basis; 2] = [Basis::One, Basis::X];

    pub fn index(self) -> usize {
        match self {
            Basis::One => 0,
            Basis::X => 1,
        }
    }

    pub fn from_index(i: usize) -> Basis {
        if i & 1 == 0 {
            Basis::One
        } else {
            Basis::X
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::One => "1",
            Basis::X => "x",
        })
    }
}

/// `c1·1 + cx·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub c1: FieldScalar,
    pub cx: FieldScalar,
}

impl AlgebraElement {
    pub fn new(c1: FieldScalar, cx: FieldScalar) -> Self {
        assert_eq!(c1.field(), cx.field(), "coefficients in different fields");
        Self { c1, cx }
    }

    pub fn zero(field: Field) -> Self {
        Self::new(field.zero(), field.zero())
    }

    pub fn basis(field: Field, b: Basis) -> Self {
        match b {
            Basis::One => Self::new(field.one(), field.zero()),
            Basis::X => Self::new(field.zero(), field.one()),
        }
    }

    pub fn field(&self) -> Field {
        self.c1.field()
    }

    pub fn coeff(&self, b: Basis) -> &FieldScalar {
        match b {
            Basis::One => &self.c1,
            Basis::X => &self.cx,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.cx.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.c1 + &other.c1, &self.cx + &other.cx)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.c1 - &other.c1, &self.cx - &other.cx)
    }

    pub fn scale(&self, k: &FieldScalar) -> Self {
        Self::new(k * &self.c1, k * &self.cx)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·1 + ({})·x", self.c1, self.cx)
    }
}

/// A finite sum of pure tensors of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    field: Field,
    rank: usize,
    terms: BTreeMap<Vec<Basis>, FieldScalar>,
}

impl TensorElement {
    pub fn zero(field: Field, rank: usize) -> Self {
        Self {
            field,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(k: FieldScalar) -> Self {
        let mut t = Self::zero(k.field(), 0);
        t.add_term(Vec::new(), k);
        t
    }

    pub fn from_element(v: &AlgebraElement) -> Self {
        let mut t = Self::zero(v.field(), 1);
        for b in Basis::ALL {
            t.add_term(vec![b], v.coeff(b).clone());
        }
        t
    }

    /// A pure tensor `v₁ ⊗ … ⊗ v_r`.
    pub fn pure(field: Field, factors: &[AlgebraElement]) -> Self {
        factors.iter().fold(Self::scalar(field.one()), |acc, v| {
            acc.tensor(&Self::from_element(v))
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Basis], &FieldScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, key: &[Basis]) -> FieldScalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Basis>, k: FieldScalar) {
        assert_eq!(key.len(), self.rank, "tensor rank mismatch");
        if k.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(|| self.field.zero());
        *entry += &k;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, k: &FieldScalar) -> Self {
        let mut out = Self::zero(self.field, self.rank);
        for (key, v) in &self.terms {
            out.add_term(key.clone(), k * v);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.rank + other.rank);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, v1 * v2);
            }
        }
        out
    }

    /// Rank-one tensor as an algebra element.
    pub fn to_element(&self) -> Option<AlgebraElement> {
        (self.rank == 1).then(|| {
            AlgebraElement::new(self.coeff(&[Basis::One]), self.coeff(&[Basis::X]))
        })
    }

    /// Applies a linear endomorphism of `V` (given on basis vectors) to one factor.
    pub fn map_factor(&self, pos: usize, f: impl Fn(Basis) -> AlgebraElement) -> Self {
        let mut out = Self::zero(self.field, self.rank);
        for (key, v) in &self.terms {
            let image = f(key[pos]);
            for b in Basis::ALL {
                let mut k = key.clone();
                k[pos] = b;
                out.add_term(k, v * image.coeff(b));
            }
        }
        out
    }

    /// Multiplies factors `pos` and `pos + 1` together.
    pub fn multiply_factors(&self, th: &TheoryParams, pos: usize) -> Self {
        let mut out = Self::zero(self.field, self.rank - 1);
        for (key, v) in &self.terms {
            let prod = th.multiply_basis(key[pos], key[pos + 1]);
            for b in Basis::ALL {
                let mut k = key[..pos].to_vec();
                k.push(b);
                k.extend_from_slice(&key[pos + 2..]);
                out.add_term(k, v * prod.coeff(b));
            }
        }
        out
    }

    /// Applies the coproduct to factor `pos`.
    pub fn comultiply_factor(&self, th: &TheoryParams, pos: usize) -> Self {
        let mut out = Self::zero(self.field, self.rank + 1);
        for (key, v) in &self.terms {
            let cop = th.comultiply_basis(key[pos]);
            for (pair, c) in cop.terms() {
                let mut k = key[..pos].to_vec();
                k.extend_from_slice(pair);
                k.extend_from_slice(&key[pos + 1..]);
                out.add_term(k, v * c);
            }
        }
        out
    }

    /// Applies the counit to factor `pos`.
    pub fn counit_factor(&self, th: &TheoryParams, pos: usize) -> Self {
        let mut out = Self::zero(self.field, self.rank - 1);
        for (key, v) in &self.terms {
            let e = th.counit(&AlgebraElement::basis(self.field, key[pos]));
            let mut k = key[..pos].to_vec();
            k.extend_from_slice(&key[pos + 1..]);
            out.add_term(k, v * &e);
        }
        out
    }

    /// Reorders factors: factor `i` of the result is factor `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zero(self.field, self.rank);
        for (key, v) in &self.terms {
            out.add_term(perm.iter().map(|&p| key[p]).collect(), v.clone());
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, v) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let word: Vec<String> = key.iter().map(|b| b.to_string()).collect();
            write!(f, "({v})·{}", word.join("⊗"))?;
        }
        Ok(())
    }
}

/// A validated (or, via [`TheoryParams::unchecked`], merely well-typed)
/// parameter tuple together with the derived `f = a⁻¹` and `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryParams {
    field: Field,
    a: FieldScalar,
    t: FieldScalar,
    lambda: FieldScalar,
    mu: FieldScalar,
    beta: FieldScalar,
    f: FieldScalar,
    h: FieldScalar,
}

/// Stable names of the eight characteristic-two theories, in table order.
pub const PRESET_NAMES: [&str; 8] = [
    "f2_row1", "f2_row2", "f2_row3", "f2_row4", "f2_row5", "f2_row6", "f2_row7", "f2_row8",
];

// (λ, μ, t, β) per row, a = 1.
const PRESET_ROWS: [[i64; 4]; 8] = [
    [0, 0, 0, 0],
    [0, 0, 0, 1],
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 1, 1],
    [1, 0, 1, 0],
    [0, 1, 0, 0],
    [1, 1, 1, 0],
];

impl fmt::Display for TheoryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={},t={},lambda={},mu={},beta={},field={}",
            self.a, self.t, self.lambda, self.mu, self.beta, self.field
        )
    }
}

impl TheoryParams {
    /// Builds the tuple without checking the two relations. `a` must still be
    /// invertible so that `f` exists.
    pub fn unchecked(
        a: FieldScalar,
        t: FieldScalar,
        lambda: FieldScalar,
        mu: FieldScalar,
        beta: FieldScalar,
    ) -> Result<Self, AlgebraError> {
        let field = a.field();
        if [&t, &lambda, &mu, &beta].iter().any(|s| s.field() != field) {
            return Err(AlgebraError::FieldMismatch);
        }
        let f = a.inverse().ok_or(AlgebraError::NotInvertible(Param::A))?;
        let h = &(&beta - &(&a * &(&lambda * &lambda))) - &(&a * &(&(&mu * &mu) * &t));
        Ok(Self {
            field,
            a,
            t,
            lambda,
            mu,
            beta,
            f,
            h,
        })
    }

    /// Validated theory from all five parameters.
    pub fn from_params(
        a: FieldScalar,
        t: FieldScalar,
        lambda: FieldScalar,
        mu: FieldScalar,
        beta: FieldScalar,
    ) -> Result<Self, AlgebraError> {
        let th = Self::unchecked(a, t, lambda, mu, beta)?;
        th.check_constraints()?;
        Ok(th)
    }

    /// Theory with `β = 0` and `t` solved from the normalization relation;
    /// needs `a` and `μ` invertible.
    pub fn from_triple(
        a: FieldScalar,
        lambda: FieldScalar,
        mu: FieldScalar,
    ) -> Result<Self, AlgebraError> {
        let field = a.field();
        if lambda.field() != field || mu.field() != field {
            return Err(AlgebraError::FieldMismatch);
        }
        let a_inv = a.inverse().ok_or(AlgebraError::NotInvertible(Param::A))?;
        let mu_inv = mu.inverse().ok_or(AlgebraError::NotInvertible(Param::Mu))?;
        let two = field.from_int(2);
        let lm = &lambda * &mu;
        let numer = &(&(&two * &a) * &lm) - &(&(&a * &a) * &(&lm * &lm));
        let numer = &numer - &two;
        let t = &numer * &(&(&a_inv * &a_inv) * &mu_inv.pow(4));
        Self::from_params(a, t, lambda, mu, field.zero())
    }

    /// One of `f2_row1..f2_row8` or `manturov` (= `f2_row1`).
    pub fn preset(name: &str) -> Result<Self, AlgebraError> {
        let key = name.trim().to_ascii_lowercase();
        let row = match key.as_str() {
            "manturov" => 1,
            other => other
                .strip_prefix("f2_row")
                .and_then(|r| r.parse::<usize>().ok())
                .filter(|r| (1..=8).contains(r))
                .ok_or_else(|| AlgebraError::UnknownPreset(name.to_string()))?,
        };
        let [l, m, t, b] = PRESET_ROWS[row - 1];
        let f2 = Field::F2;
        Self::from_params(
            f2.one(),
            f2.from_int(t),
            f2.from_int(l),
            f2.from_int(m),
            f2.from_int(b),
        )
    }

    /// Residual of the first violated relation, if any.
    pub fn check_constraints(&self) -> Result<(), AlgebraError> {
        let mb = &self.mu * &self.beta;
        let lb = &self.lambda * &self.beta;
        if !mb.is_zero() || !lb.is_zero() {
            return Err(AlgebraError::ConstraintViolated {
                constraint: Constraint::BetaAnnihilation,
                residual: if mb.is_zero() { lb } else { mb },
            });
        }
        let residual = self.normalization_residual();
        if !residual.is_zero() {
            return Err(AlgebraError::ConstraintViolated {
                constraint: Constraint::Normalization,
                residual,
            });
        }
        Ok(())
    }

    /// `2aλμ − a²μ²λ² − a²μ⁴t − 2`.
    pub fn normalization_residual(&self) -> FieldScalar {
        let two = self.field.from_int(2);
        let a2 = &self.a * &self.a;
        let lm = &self.lambda * &self.mu;
        let lhs = &(&(&two * &self.a) * &lm) - &(&a2 * &(&lm * &lm));
        let lhs = &lhs - &(&(&a2 * &self.mu.pow(4)) * &self.t);
        &lhs - &two
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn a(&self) -> &FieldScalar {
        &self.a
    }
    pub fn t(&self) -> &FieldScalar {
        &self.t
    }
    pub fn lambda(&self) -> &FieldScalar {
        &self.lambda
    }
    pub fn mu(&self) -> &FieldScalar {
        &self.mu
    }
    pub fn beta(&self) -> &FieldScalar {
        &self.beta
    }
    pub fn f(&self) -> &FieldScalar {
        &self.f
    }
    pub fn h(&self) -> &FieldScalar {
        &self.h
    }

    /// Whether every structure map is homogeneous for `deg 1 = 1`, `deg x = -1`:
    /// `h = t = 0`, `θ = 0` and `φ = Id`.
    pub fn is_homogeneous(&self) -> bool {
        [&self.h, &self.t, &self.lambda, &self.mu, &self.beta]
            .iter()
            .all(|s| s.is_zero())
    }

    pub fn param(&self, p: Param) -> &FieldScalar {
        match p {
            Param::A => &self.a,
            Param::T => &self.t,
            Param::Lambda => &self.lambda,
            Param::Mu => &self.mu,
            Param::Beta => &self.beta,
        }
    }

    fn el(&self, c1: FieldScalar, cx: FieldScalar) -> AlgebraElement {
        AlgebraElement::new(c1, cx)
    }

    pub(crate) fn multiply_basis(&self, u: Basis, v: Basis) -> AlgebraElement {
        let z = self.field.zero();
        match (u, v) {
            (Basis::One, Basis::One) => self.el(self.field.one(), z),
            (Basis::One, Basis::X) | (Basis::X, Basis::One) => self.el(z, self.field.one()),
            (Basis::X, Basis::X) => self.el(self.t.clone(), self.h.clone()),
        }
    }

    pub(crate) fn comultiply_basis(&self, v: Basis) -> TensorElement {
        let mut out = TensorElement::zero(self.field, 2);
        match v {
            Basis::One => {
                out.add_term(vec![Basis::One, Basis::X], self.f.clone());
                out.add_term(vec![Basis::X, Basis::One], self.f.clone());
                out.add_term(vec![Basis::One, Basis::One], -(&self.h * &self.f));
            }
            Basis::X => {
                out.add_term(vec![Basis::X, Basis::X], self.f.clone());
                out.add_term(vec![Basis::One, Basis::One], &self.f * &self.t);
            }
        }
        out
    }

    pub(crate) fn phi_basis(&self, v: Basis) -> AlgebraElement {
        match v {
            Basis::One => AlgebraElement::basis(self.field, Basis::One),
            Basis::X => self.el(self.beta.clone(), self.field.one()),
        }
    }

    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(self.field);
        for bu in Basis::ALL {
            for bv in Basis::ALL {
                let k = u.coeff(bu) * v.coeff(bv);
                if !k.is_zero() {
                    acc = acc.add(&self.multiply_basis(bu, bv).scale(&k));
                }
            }
        }
        acc
    }

    pub fn comultiply(&self, v: &AlgebraElement) -> TensorElement {
        let mut acc = TensorElement::zero(self.field, 2);
        for b in Basis::ALL {
            acc = acc.add(&self.comultiply_basis(b).scale(v.coeff(b)));
        }
        acc
    }

    pub fn counit(&self, v: &AlgebraElement) -> FieldScalar {
        &v.cx * &self.a
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::basis(self.field, Basis::One)
    }

    pub fn phi(&self, v: &AlgebraElement) -> AlgebraElement {
        self.el(&v.c1 + &(&v.cx * &self.beta), v.cx.clone())
    }

    pub fn theta(&self) -> AlgebraElement {
        self.el(self.lambda.clone(), self.mu.clone())
    }

    /// `H = m(Δ(1))`, the element a handle contributes.
    pub fn handle_element(&self) -> AlgebraElement {
        let delta = self.comultiply(&self.unit());
        delta
            .multiply_factors(self, 0)
            .to_element()
            .expect("rank one")
    }

    /// The Gram matrix `[ε(eᵢ eⱼ)]` on the basis `{1, x}`.
    pub fn gram_matrix(&self) -> [[FieldScalar; 2]; 2] {
        let e = |u: Basis, v: Basis| self.counit(&self.multiply_basis(u, v));
        [
            [e(Basis::One, Basis::One), e(Basis::One, Basis::X)],
            [e(Basis::X, Basis::One), e(Basis::X, Basis::X)],
        ]
    }
}

/// Evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Element(AlgebraElement),
    Tensor(TensorElement),
    Scalar(FieldScalar),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Element(v) => write!(f, "{v}"),
            Witness::Tensor(t) => write!(f, "{t}"),
            Witness::Scalar(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// The nonzero difference (or residual) for a failed check.
    pub witness: Option<Witness>,
}

/// Outcome of every named check; failures never short-circuit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record_tensors(&mut self, name: &'static str, pairs: &[(TensorElement, TensorElement)]) {
        let bad = pairs.iter().map(|(l, r)| l.sub(r)).find(|d| !d.is_zero());
        self.checks.push(AxiomCheck {
            name,
            passed: bad.is_none(),
            witness: bad.map(Witness::Tensor),
        });
    }

    fn record_scalar(&mut self, name: &'static str, residual: FieldScalar) {
        let passed = residual.is_zero();
        self.checks.push(AxiomCheck {
            name,
            passed,
            witness: (!passed).then_some(Witness::Scalar(residual)),
        });
    }

    fn record_elements(&mut self, name: &'static str, pairs: &[(AlgebraElement, AlgebraElement)]) {
        let bad = pairs.iter().map(|(l, r)| l.sub(r)).find(|d| !d.is_zero());
        self.checks.push(AxiomCheck {
            name,
            passed: bad.is_none(),
            witness: bad.map(Witness::Element),
        });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  [pass] {}", c.name)?,
                Some(w) => writeln!(f, "  [FAIL] {} (witness: {w})", c.name)?,
            }
        }
        Ok(())
    }
}

/// Evaluates every structural identity on the basis `{1, x}`.
pub fn verify_axioms(th: &TheoryParams) -> AxiomReport {
    let field = th.field();
    let basis: Vec<AlgebraElement> = Basis::ALL
        .iter()
        .map(|&b| AlgebraElement::basis(field, b))
        .collect();
    let theta = th.theta();
    let theta2 = th.multiply(&theta, &theta);
    let phi_t = |t: &TensorElement, pos: usize| t.map_factor(pos, |b| th.phi_basis(b));
    let mut report = AxiomReport::default();

    report.record_elements(
        "phi involution",
        &basis.iter().map(|v| (th.phi(&th.phi(v)), v.clone())).collect::<Vec<_>>(),
    );
    report.record_elements("phi preserves unit", &[(th.phi(&th.unit()), th.unit())]);
    report.record_scalar(
        "phi preserves counit",
        basis
            .iter()
            .map(|v| &th.counit(&th.phi(v)) - &th.counit(v))
            .find(|d| !d.is_zero())
            .unwrap_or_else(|| field.zero()),
    );
    let mut prod_pairs = Vec::new();
    let mut cop_pairs = Vec::new();
    let mut frob_pairs = Vec::new();
    for u in &basis {
        for v in &basis {
            prod_pairs.push((
                th.phi(&th.multiply(u, v)),
                th.multiply(&th.phi(u), &th.phi(v)),
            ));
            let uv = TensorElement::pure(field, &[u.clone(), v.clone()]);
            let left = uv.comultiply_factor(th, 0).multiply_factors(th, 1);
            let middle = TensorElement::from_element(&th.multiply(u, v)).comultiply_factor(th, 0);
            let right = uv.comultiply_factor(th, 1).multiply_factors(th, 0);
            frob_pairs.push((left, middle.clone()));
            frob_pairs.push((middle, right));
        }
        let d = th.comultiply(u);
        cop_pairs.push((phi_t(&phi_t(&d, 0), 1), th.comultiply(&th.phi(u))));
    }
    report.record_elements("phi respects product", &prod_pairs);
    report.record_tensors("phi respects coproduct", &cop_pairs);
    report.record_tensors("Frobenius relation", &frob_pairs);

    let mut counit_pairs = Vec::new();
    for v in &basis {
        let d = th.comultiply(v);
        counit_pairs.push((d.counit_factor(th, 0).to_element().unwrap(), v.clone()));
        counit_pairs.push((d.counit_factor(th, 1).to_element().unwrap(), v.clone()));
    }
    report.record_elements("counit law", &counit_pairs);

    report.record_elements(
        "phi(theta v) = theta v",
        &basis
            .iter()
            .map(|v| {
                let tv = th.multiply(&theta, v);
                (th.phi(&tv), tv)
            })
            .collect::<Vec<_>>(),
    );
    let twisted = |v: &AlgebraElement| {
        phi_t(&th.comultiply(v), 0)
            .multiply_factors(th, 0)
            .to_element()
            .unwrap()
    };
    report.record_elements(
        "m(phi x id)Delta(1) = theta^2",
        &[(twisted(&th.unit()), theta2.clone())],
    );
    report.record_elements(
        "m(phi x id)Delta(v) = theta^2 v",
        &basis
            .iter()
            .map(|v| (twisted(v), th.multiply(&theta2, v)))
            .collect::<Vec<_>>(),
    );
    let m_delta_theta = th
        .comultiply(&theta)
        .multiply_factors(th, 0)
        .to_element()
        .unwrap();
    report.record_elements(
        "m(Delta(theta)) = theta^3",
        &[(m_delta_theta, th.multiply(&theta2, &theta))],
    );

    let mb = th.mu() * th.beta();
    let lb = th.lambda() * th.beta();
    report.record_scalar(
        "mu*beta = lambda*beta = 0",
        if mb.is_zero() { lb } else { mb },
    );
    report.record_scalar("normalization relation", th.normalization_residual());

    let g = th.gram_matrix();
    let det = &(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0]);
    let nondegenerate = !det.is_zero();
    report.checks.push(AxiomCheck {
        name: "counit nondegenerate",
        passed: nondegenerate,
        witness: (!nondegenerate).then_some(Witness::Scalar(det)),
    });
    report.record_scalar("aspherical", th.counit(&th.unit()));
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTuReport {
    pub passed: bool,
    pub lhs: TensorElement,
    pub rhs: TensorElement,
    /// `lhs − rhs` when nonzero.
    pub witness: Option<TensorElement>,
}

/// Compares the two sides of the four-tube identity built from a given `Δ(1)`.
pub fn four_tu_check(delta_one: &TensorElement) -> FourTuReport {
    assert_eq!(delta_one.rank(), 2);
    let field = delta_one.field();
    let one = TensorElement::pure(field, &[AlgebraElement::basis(field, Basis::One)]);
    let ones = one.tensor(&one);
    // Δ(1) ⊗ 1 ⊗ 1 has factors (a', a'', 1, 1); the other terms are permutations of it.
    let base = delta_one.tensor(&ones);
    let lhs = base.add(&base.permute(&[2, 3, 0, 1]));
    let rhs = base.permute(&[0, 2, 1, 3]).add(&base.permute(&[2, 0, 3, 1]));
    let diff = lhs.sub(&rhs);
    FourTuReport {
        passed: diff.is_zero(),
        witness: (!diff.is_zero()).then_some(diff),
        lhs,
        rhs,
    }
}

pub fn verify_4tu(th: &TheoryParams) -> FourTuReport {
    four_tu_check(&th.comultiply(&th.unit()))
}
