use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use vlh_core::algebra::{verify_4tu, verify_axioms};
use vlh_core::complex::{build_complex, graded_homology, homology, HomologyResult};
use vlh_core::invariance::{check_walk, Mismatch};
use vlh_core::{corpus, evaluate_closed_surface, jones_at_one, kauffman_jones, ComplexError, LaurentPoly, VirtualLinkDiagram};

use crate::theory::{Selected, Selector};
use crate::{CliError, Common, Outcome, SurfaceArgs};

fn selector(c: &Common) -> Selector<'_> {
    Selector {
        presets: &c.theories,
        params: c.params.as_deref(),
        triple: c.triple.as_deref(),
        field: c.field.as_deref(),
    }
}

fn complex_error(e: ComplexError) -> CliError {
    match e {
        ComplexError::Diagram(_) | ComplexError::NotGraded(_) => CliError::Input(e.to_string()),
        _ => CliError::Computation(e.to_string()),
    }
}

/// Files are read when they exist; otherwise the file stem names a built-in diagram.
fn load_diagrams(c: &Common) -> Result<Vec<VirtualLinkDiagram>, CliError> {
    if c.diagrams.is_empty() {
        return Ok(corpus::all());
    }
    c.diagrams
        .iter()
        .map(|path| {
            if path.exists() {
                return VirtualLinkDiagram::load(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
            }
            path.file_stem()
                .and_then(|s| corpus::get(&s.to_string_lossy()))
                .ok_or_else(|| CliError::Input(format!("no diagram file or built-in diagram `{}`", path.display())))
        })
        .collect()
}

#[derive(Serialize)]
struct ComputeReport {
    diagram: String,
    theory: String,
    dims: Vec<usize>,
    betti: BTreeMap<i64, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qtable: Option<BTreeMap<i64, BTreeMap<i64, usize>>>,
    euler: i64,
    jones_at_one: i64,
    euler_matches_jones: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    graded_euler_matches_jones: Option<bool>,
}

fn nested_qtable(h: &HomologyResult) -> Option<BTreeMap<i64, BTreeMap<i64, usize>>> {
    h.qtable.as_ref().map(|table| {
        let mut out: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        for (&(i, q), &n) in table {
            out.entry(i).or_default().insert(q, n);
        }
        out
    })
}

fn betti_text(betti: &BTreeMap<i64, usize>) -> String {
    let items: Vec<String> = betti.iter().map(|(i, b)| format!("{i}:{b}")).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn compute(c: &Common) -> Result<Outcome, CliError> {
    let theories = selector(c).resolve(false)?;
    let diagrams = load_diagrams(c)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    for d in &diagrams {
        let at_one = jones_at_one(d);
        let jones = c.graded.then(|| kauffman_jones(d));
        for Selected { label, theory, .. } in &theories {
            let complex = build_complex(d, theory).map_err(complex_error)?;
            let h = if c.graded {
                graded_homology(&complex).map_err(complex_error)?
            } else {
                homology(&complex)
            };
            let graded_ok = jones.as_ref().map(|j| h.graded_euler().as_ref() == Some(j));
            let report = ComputeReport {
                diagram: d.name().to_string(),
                theory: label.clone(),
                dims: complex.dims(),
                betti: h.betti.clone(),
                qtable: nested_qtable(&h),
                euler: h.euler,
                jones_at_one: at_one,
                euler_matches_jones: h.euler == at_one,
                graded_euler_matches_jones: graded_ok,
            };
            let ok = report.euler_matches_jones && graded_ok != Some(false);
            let _ = writeln!(
                text,
                "{}\t{}\tdims {:?}\tbetti {}\teuler {}\tjones(1) {}\t{}",
                report.diagram,
                report.theory,
                report.dims,
                betti_text(&report.betti),
                report.euler,
                report.jones_at_one,
                if ok { "ok" } else { "MISMATCH" }
            );
            if let Some(q) = &report.qtable {
                for (i, row) in q {
                    let cells: Vec<String> = row.iter().map(|(q, n)| format!("q^{q}:{n}")).collect();
                    let _ = writeln!(text, "\t  H^{i}: {}", cells.join(" "));
                }
            }
            reports.push(report);
        }
    }
    let passed = reports
        .iter()
        .all(|r| r.euler_matches_jones && r.graded_euler_matches_jones != Some(false));
    Ok(Outcome { json: serde_json::to_value(&reports).expect("serializable"), text, passed })
}

pub fn verify(c: &Common) -> Result<Outcome, CliError> {
    let theories = selector(c).resolve(true)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for Selected { label, theory, invalid } in &theories {
        let axioms = verify_axioms(theory);
        let four = verify_4tu(theory);
        let passed = invalid.is_none() && axioms.all_passed() && four.passed;
        all &= passed;
        let checks: Vec<_> = axioms
            .checks
            .iter()
            .map(|ch| json!({"name": ch.name, "passed": ch.passed, "witness": ch.witness.as_ref().map(|w| w.to_string())}))
            .collect();
        reports.push(json!({
            "theory": label,
            "constraint_violation": invalid,
            "checks": checks,
            "four_tu": {"passed": four.passed, "witness": four.witness.as_ref().map(|w| w.to_string())},
            "passed": passed,
        }));
        let _ = writeln!(text, "{label}: {}", if passed { "PASS" } else { "FAIL" });
        if let Some(msg) = invalid {
            let _ = writeln!(text, "  constraint: {msg}");
        }
        for ch in &axioms.checks {
            let mark = if ch.passed { "ok" } else { "FAIL" };
            match &ch.witness {
                Some(w) => { let _ = writeln!(text, "  [{mark}] {} (witness {w})", ch.name); }
                None => { let _ = writeln!(text, "  [{mark}] {}", ch.name); }
            }
        }
        let _ = writeln!(text, "  [{}] four-tube relation", if four.passed { "ok" } else { "FAIL" });
    }
    Ok(Outcome { json: serde_json::Value::Array(reports), text, passed: all })
}

pub fn invariance(c: &Common) -> Result<Outcome, CliError> {
    let theories = selector(c).resolve(false)?;
    let diagrams = load_diagrams(c)?;
    let params: Vec<_> = theories.iter().map(|s| s.theory.clone()).collect();
    let mut walks = Vec::new();
    let mut text = String::new();
    let mut mismatches: Vec<Mismatch> = Vec::new();
    for (i, d) in diagrams.iter().enumerate() {
        let mut found = check_walk(d, &params, c.moves, c.seed, i as u64).map_err(complex_error)?;
        for (m, s) in found.iter_mut().zip(&theories) {
            m.theory = s.label.clone();
        }
        let _ = writeln!(text, "{}\t{} moves\t{} mismatches", d.name(), c.moves, found.len());
        walks.push(json!({"diagram": d.name(), "mismatches": found}));
        mismatches.extend(found);
    }
    let mut pairs = Vec::new();
    let mut pair_failures = 0;
    for (a, b) in corpus::r3_pairs() {
        for s in &theories {
            let ha = homology(&build_complex(&a, &s.theory).map_err(complex_error)?);
            let hb = homology(&build_complex(&b, &s.theory).map_err(complex_error)?);
            let equal = ha.betti == hb.betti;
            pair_failures += usize::from(!equal);
            let _ = writeln!(
                text,
                "{} ~ {}\t{}\t{}",
                a.name(),
                b.name(),
                s.label,
                if equal { "equal" } else { "DIFFERENT" }
            );
            pairs.push(json!({"a": a.name(), "b": b.name(), "theory": s.label, "equal": equal,
                              "betti_a": ha.betti, "betti_b": hb.betti}));
        }
    }
    let total = mismatches.len() + pair_failures;
    let _ = writeln!(text, "total mismatches: {total}");
    let json = json!({
        "seed": c.seed,
        "moves": c.moves,
        "walks": walks,
        "r3_pairs": pairs,
        "mismatches": total,
    });
    Ok(Outcome { json, text, passed: total == 0 })
}

pub fn surface(s: &SurfaceArgs) -> Result<Outcome, CliError> {
    let theories = selector(&s.common).resolve(false)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    for sel in &theories {
        let value = evaluate_closed_surface(&sel.theory, s.genus, s.crosscaps);
        let _ = writeln!(text, "{}\tgenus {}\tcrosscaps {}\t{value}", sel.label, s.genus, s.crosscaps);
        reports.push(json!({"theory": sel.label, "genus": s.genus, "crosscaps": s.crosscaps,
                            "value": value.to_string()}));
    }
    Ok(Outcome { json: serde_json::Value::Array(reports), text, passed: true })
}

pub fn jones(c: &Common) -> Result<Outcome, CliError> {
    let diagrams = load_diagrams(c)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    for d in &diagrams {
        let j: LaurentPoly = kauffman_jones(d);
        let at_one = jones_at_one(d);
        let consistent = j.eval_at_one() == at_one;
        passed &= consistent;
        let _ = writeln!(text, "{}\t{j}", d.name());
        reports.push(json!({"diagram": d.name(), "jones": j, "polynomial": j.to_string(),
                            "jones_at_one": at_one, "consistent": consistent}));
    }
    Ok(Outcome { json: serde_json::Value::Array(reports), text, passed })
}
