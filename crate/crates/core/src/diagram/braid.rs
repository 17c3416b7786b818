//! Closures of virtual braids.

use std::fmt;
use std::str::FromStr;

use crate::error::DiagramError;

use super::{Passage, Sign, VirtualLinkDiagram};

/// A generator acting on positions `index` and `index + 1` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    Sigma { index: usize, sign: Sign },
    Virtual(usize),
}

impl BraidLetter {
    pub fn index(self) -> usize {
        match self {
            BraidLetter::Sigma { index, .. } | BraidLetter::Virtual(index) => index,
        }
    }

    /// Parses a whitespace-separated word: `s2` is a positive generator,
    /// `S2` its inverse, `v2` a virtual crossing.
    pub fn parse_word(text: &str) -> Result<Vec<BraidLetter>, DiagramError> {
        text.split_whitespace().map(str::parse).collect()
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidLetter::Sigma { index, sign: Sign::Positive } => write!(f, "s{index}"),
            BraidLetter::Sigma { index, sign: Sign::Negative } => write!(f, "S{index}"),
            BraidLetter::Virtual(index) => write!(f, "v{index}"),
        }
    }
}

impl FromStr for BraidLetter {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::BadSyntax { position: 0, message: format!("braid letter `{s}`") };
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let index: usize = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        match head {
            's' => Ok(BraidLetter::Sigma { index, sign: Sign::Positive }),
            'S' => Ok(BraidLetter::Sigma { index, sign: Sign::Negative }),
            'v' | 'V' => Ok(BraidLetter::Virtual(index)),
            _ => Err(bad()),
        }
    }
}

impl VirtualLinkDiagram {
    /// Closure of a braid on `strands` strands. At a positive generator the
    /// strand moving to the right passes over; at a negative one the strand
    /// moving to the left does.
    pub fn from_braid(strands: usize, word: &[BraidLetter]) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::BadSite("a braid needs at least one strand".into()));
        }
        let mut at: Vec<usize> = (0..strands).collect();
        let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); strands];
        let mut label = 0;
        for &letter in word {
            let i = letter.index();
            if i >= strands {
                return Err(DiagramError::BadSite(format!(
                    "generator {letter} on {strands} strands"
                )));
            }
            let (left, right) = (at[i - 1], at[i]);
            if let BraidLetter::Sigma { sign, .. } = letter {
                label += 1;
                let left_over = sign == Sign::Positive;
                passages[left].push(Passage { crossing: label, over: left_over, sign });
                passages[right].push(Passage { crossing: label, over: !left_over, sign });
            }
            at.swap(i - 1, i);
        }
        // the strand ending at position p continues as the strand starting there
        let mut next = vec![0; strands];
        for (p, &s) in at.iter().enumerate() {
            next[s] = p;
        }
        let mut seen = vec![false; strands];
        let mut components = Vec::new();
        for start in 0..strands {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                comp.extend_from_slice(&passages[s]);
                s = next[s];
            }
            components.push(comp);
        }
        let classical = word.iter().all(|l| matches!(l, BraidLetter::Sigma { .. }));
        Ok(Self::new(components)?.with_classical(classical))
    }
}
