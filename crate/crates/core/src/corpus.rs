//! Built-in diagrams: small classical and virtual knots, plus pairs related by
//! a third Reidemeister move (braid closures of `σ₁σ₂σ₁·w` and `σ₂σ₁σ₂·w`).

use crate::diagram::VirtualLinkDiagram;

macro_rules! corpus_file {
    ($name:literal) => {
        ($name, include_str!(concat!("../corpus/", $name, ".json")))
    };
}

const DIAGRAMS: [(&str, &str); 6] = [
    corpus_file!("unknot"),
    corpus_file!("unlink2"),
    corpus_file!("trefoil"),
    corpus_file!("figure_eight"),
    corpus_file!("virtual_trefoil"),
    corpus_file!("kishino"),
];

const R3_PAIRS: [[(&str, &str); 2]; 4] = [
    [corpus_file!("r3_1a"), corpus_file!("r3_1b")],
    [corpus_file!("r3_2a"), corpus_file!("r3_2b")],
    [corpus_file!("r3_3a"), corpus_file!("r3_3b")],
    [corpus_file!("r3_4a"), corpus_file!("r3_4b")],
];

fn load((name, text): (&str, &str)) -> VirtualLinkDiagram {
    VirtualLinkDiagram::from_json(text).unwrap_or_else(|e| panic!("corpus file {name}: {e}"))
}

/// The named knots and links, without the R3 pairs.
pub fn diagrams() -> Vec<VirtualLinkDiagram> {
    DIAGRAMS.into_iter().map(load).collect()
}

pub fn r3_pairs() -> Vec<(VirtualLinkDiagram, VirtualLinkDiagram)> {
    R3_PAIRS.into_iter().map(|[a, b]| (load(a), load(b))).collect()
}

/// Every built-in diagram, R3 pairs included.
pub fn all() -> Vec<VirtualLinkDiagram> {
    let mut out = diagrams();
    for (a, b) in r3_pairs() {
        out.push(a);
        out.push(b);
    }
    out
}

pub fn get(name: &str) -> Option<VirtualLinkDiagram> {
    all().into_iter().find(|d| d.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::{kauffman_jones, LaurentPoly};

    #[test]
    fn loads_everything() {
        let all = all();
        assert_eq!(all.len(), 14);
        assert!(all.iter().all(|d| d.crossing_count() <= 6));
        let classical: Vec<&str> = all.iter().filter(|d| d.is_classical()).map(|d| d.name()).collect();
        assert_eq!(classical, vec!["unknot", "unlink2", "trefoil", "figure_eight"]);
    }

    #[test]
    fn kishino_has_trivial_jones_and_no_reducing_sites() {
        let d = get("kishino").unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(kauffman_jones(&d), LaurentPoly::circle());
        assert!(crate::diagram::r1_sites(&d).is_empty());
        assert!(crate::diagram::r2_sites(&d).is_empty());
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let j = kauffman_jones(&get("figure_eight").unwrap());
        assert_eq!(j, LaurentPoly::monomial(5, 1) + LaurentPoly::monomial(-5, 1));
    }
}
