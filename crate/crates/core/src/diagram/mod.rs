//! Virtual link diagrams as signed Gauss codes.
//!
//! Each component is a cyclic sequence of passages through crossings. The
//! arc leaving a passage runs to the next passage of the same component; a
//! component without passages is a single free loop. Arc `e` has two
//! half-edges, its tail `2e` and its head `2e + 1`.

mod braid;
mod moves;
mod saddle;
mod smoothing;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

pub use braid::BraidLetter;
pub use moves::{
    apply_move, apply_r1, apply_r2, inverse_r1, inverse_r2, r1_sites, r2_sites, random_move,
    Gap, Move, R1Variant, R2Variant,
};
pub use saddle::{classify_saddle, cube_edges, SaddleDescriptor, SaddleKind};
pub use smoothing::{smooth, Circle, Smoothing, State};

/// Largest crossing count accepted by cube-based computations.
pub const MAX_CROSSINGS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_int(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_int())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(serde::de::Error::custom(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    #[serde(rename = "c")]
    pub crossing: usize,
    #[serde(rename = "o")]
    pub over: bool,
    #[serde(rename = "s")]
    pub sign: Sign,
}

impl Passage {
    pub fn over(crossing: usize, sign: Sign) -> Self {
        Self { crossing, over: true, sign }
    }

    pub fn under(crossing: usize, sign: Sign) -> Self {
        Self { crossing, over: false, sign }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = if self.over { 'O' } else { 'U' };
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{role}{}{sign}", self.crossing)
    }
}

/// Where the two passages of a crossing sit, as global passage indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CrossingSlots {
    over: usize,
    under: usize,
    sign: Sign,
}

/// A validated signed Gauss code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualLinkDiagram {
    name: String,
    classical: bool,
    components: Vec<Vec<Passage>>,
    crossings: Vec<CrossingSlots>,
    owner: Vec<(usize, usize)>,
    arc_base: Vec<usize>,
    arc_count: usize,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    #[serde(default)]
    name: String,
    components: Vec<Vec<Passage>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    classical: bool,
}

impl VirtualLinkDiagram {
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self, DiagramError> {
        let mut seen: Vec<[Option<Sign>; 2]> = Vec::new();
        for p in components.iter().flatten() {
            if p.crossing == 0 {
                return Err(DiagramError::MissingPassage(0));
            }
            if seen.len() < p.crossing {
                seen.resize(p.crossing, [None, None]);
            }
            let slot = &mut seen[p.crossing - 1][usize::from(!p.over)];
            if slot.is_some() {
                return Err(DiagramError::DuplicateRole(p.crossing));
            }
            *slot = Some(p.sign);
        }
        for (i, roles) in seen.iter().enumerate() {
            match roles {
                [Some(a), Some(b)] if a != b => return Err(DiagramError::SignMismatch(i + 1)),
                [Some(_), Some(_)] => {}
                _ => return Err(DiagramError::MissingPassage(i + 1)),
            }
        }

        let mut owner = Vec::new();
        let mut arc_base = Vec::with_capacity(components.len());
        let mut arcs = 0;
        for (c, comp) in components.iter().enumerate() {
            owner.extend((0..comp.len()).map(|i| (c, i)));
            arc_base.push(arcs);
            arcs += comp.len().max(1);
        }
        let mut crossings = vec![
            CrossingSlots { over: 0, under: 0, sign: Sign::Positive };
            seen.len()
        ];
        for (g, p) in components.iter().flatten().enumerate() {
            let slot = &mut crossings[p.crossing - 1];
            slot.sign = p.sign;
            if p.over {
                slot.over = g;
            } else {
                slot.under = g;
            }
        }
        Ok(Self {
            name: String::new(),
            classical: false,
            components,
            crossings,
            owner,
            arc_base,
            arc_count: arcs,
        })
    }

    pub fn unknot() -> Self {
        Self::new(vec![Vec::new()]).expect("valid").with_name("unknot")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_classical(mut self, classical: bool) -> Self {
        self.classical = classical;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether the diagram is flagged as planar-realizable.
    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.crossings[crossing - 1].sign
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossing_count() - self.n_plus()
    }

    /// Parses the text form `O1+,U2-;…`. An empty component string is a free loop.
    pub fn parse_gauss(text: &str) -> Result<Self, DiagramError> {
        let mut components = Vec::new();
        let mut pos = 0;
        for comp_text in text.split(';') {
            let mut comp = Vec::new();
            let mut inner = pos;
            for item in comp_text.split(',') {
                let trimmed = item.trim();
                let lead = item.len() - item.trim_start().len();
                if trimmed.is_empty() {
                    if comp_text.split(',').count() > 1 {
                        return Err(DiagramError::BadSyntax {
                            position: inner + lead,
                            message: "empty passage".into(),
                        });
                    }
                } else {
                    comp.push(parse_passage(trimmed, inner + lead)?);
                }
                inner += item.len() + 1;
            }
            components.push(comp);
            pos += comp_text.len() + 1;
        }
        Self::new(components)
    }

    /// Text form accepted by [`parse_gauss`](Self::parse_gauss).
    pub fn to_gauss(&self) -> String {
        self.components
            .iter()
            .map(|c| c.iter().map(Passage::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let raw: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Ok(Self::new(raw.components)?
            .with_name(raw.name)
            .with_classical(raw.classical))
    }

    pub fn to_json(&self) -> String {
        let raw = DiagramJson {
            name: self.name.clone(),
            components: self.components.clone(),
            classical: self.classical,
        };
        serde_json::to_string(&raw).expect("diagram serializes")
    }

    /// Reads a `.json` diagram or a text Gauss code (named after the file stem).
    pub fn load(path: &Path) -> Result<Self, DiagramError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DiagramError::Json(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e == "json")
            || text.trim_start().starts_with('{');
        if is_json {
            let d = Self::from_json(&text)?;
            if d.name.is_empty() {
                return Ok(d.with_name(file_stem(path)));
            }
            Ok(d)
        } else {
            let body: String = text
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join("");
            Ok(Self::parse_gauss(body.trim())?.with_name(file_stem(path)))
        }
    }

    /// The same diagram with crossing `i` renamed to `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, DiagramError> {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| Passage { crossing: perm[p.crossing - 1], ..*p })
                    .collect()
            })
            .collect();
        Ok(Self::new(components)?
            .with_name(self.name.clone())
            .with_classical(self.classical))
    }

    /// Reverses the traversal direction of one component. Signs of crossings
    /// shared with other components flip; self-crossings keep their sign.
    pub fn reverse_component(&self, index: usize) -> Result<Self, DiagramError> {
        let own: std::collections::HashSet<usize> = {
            let mut counts = std::collections::HashMap::new();
            for p in &self.components[index] {
                *counts.entry(p.crossing).or_insert(0) += 1;
            }
            counts.into_iter().filter(|&(_, n)| n == 2).map(|(c, _)| c).collect()
        };
        let mixed = |c: usize| !own.contains(&c);
        let mut components = self.components.clone();
        components[index].reverse();
        for p in components.iter_mut().flatten() {
            let touches = self.components[index].iter().any(|q| q.crossing == p.crossing);
            if touches && mixed(p.crossing) {
                p.sign = p.sign.flip();
            }
        }
        Ok(Self::new(components)?
            .with_name(self.name.clone())
            .with_classical(self.classical))
    }

    /// Disjoint union with a free loop.
    pub fn with_extra_unknot(&self) -> Self {
        let mut components = self.components.clone();
        components.push(Vec::new());
        Self::new(components)
            .expect("adding a free loop keeps validity")
            .with_name(format!("{} + unknot", self.name))
            .with_classical(self.classical)
    }

    // ---- arc bookkeeping used by smoothing ----

    pub(crate) fn arc_count(&self) -> usize {
        self.arc_count
    }

    fn locate(&self, g: usize) -> (usize, usize) {
        self.owner[g]
    }

    /// Arc leaving global passage `g`.
    pub(crate) fn arc_out(&self, g: usize) -> usize {
        let (c, i) = self.locate(g);
        self.arc_base[c] + i
    }

    /// Arc arriving at global passage `g`.
    pub(crate) fn arc_in(&self, g: usize) -> usize {
        let (c, i) = self.locate(g);
        let m = self.components[c].len();
        self.arc_base[c] + (i + m - 1) % m
    }

    /// Arcs of components without passages.
    pub(crate) fn free_loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.components
            .iter()
            .zip(&self.arc_base)
            .filter(|(c, _)| c.is_empty())
            .map(|(_, &a)| a)
    }

    /// Half-edges at crossing `c` (1-based): `[over in, over out, under in, under out]`.
    pub(crate) fn crossing_ends(&self, c: usize) -> [usize; 4] {
        let slots = self.crossings[c - 1];
        [
            2 * self.arc_in(slots.over) + 1,
            2 * self.arc_out(slots.over),
            2 * self.arc_in(slots.under) + 1,
            2 * self.arc_out(slots.under),
        ]
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_gauss())
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn parse_passage(item: &str, position: usize) -> Result<Passage, DiagramError> {
    let bad = |message: &str| DiagramError::BadSyntax {
        position,
        message: format!("{message} in `{item}`"),
    };
    let mut chars = item.chars();
    let over = match chars.next() {
        Some('O') | Some('o') => true,
        Some('U') | Some('u') => false,
        _ => return Err(bad("expected O or U")),
    };
    let rest = chars.as_str();
    let sign_char = rest.chars().last().ok_or_else(|| bad("missing sign"))?;
    let sign = match sign_char {
        '+' => Sign::Positive,
        '-' | '−' => Sign::Negative,
        _ => return Err(bad("expected + or -")),
    };
    let digits = &rest[..rest.len() - sign_char.len_utf8()];
    let crossing: usize = digits.trim().parse().map_err(|_| bad("bad crossing label"))?;
    if crossing == 0 {
        return Err(bad("crossing labels start at 1"));
    }
    Ok(Passage { crossing, over, sign })
}

/// Random valid diagrams for property tests.
#[cfg(test)]
pub(crate) fn arbitrary_diagram() -> impl proptest::strategy::Strategy<Value = VirtualLinkDiagram> {
    use proptest::strategy::Strategy;
    (0usize..6, 1usize..3, proptest::prelude::any::<u64>()).prop_map(|(n, comps, seed)| {
        // deterministic shuffle from the seed
        let mut items: Vec<Passage> = Vec::new();
        let mut s = seed;
        for c in 1..=n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let sign = if s >> 63 == 1 { Sign::Positive } else { Sign::Negative };
            items.push(Passage::over(c, sign));
            items.push(Passage::under(c, sign));
        }
        for i in (1..items.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            items.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut components = vec![Vec::new(); comps];
        for (i, p) in items.into_iter().enumerate() {
            components[i % comps].push(p);
        }
        VirtualLinkDiagram::new(components).unwrap()
    })
}
