//! Theory selection from `--theory`, `--params`, `--triple` and `--field`.

use std::collections::BTreeMap;

use vlh_core::{Field, TheoryParams};

use crate::CliError;

/// A resolved theory with the label echoed in reports.
pub struct Selected {
    pub label: String,
    pub theory: TheoryParams,
    /// Set when the tuple does not satisfy the defining relations.
    pub invalid: Option<String>,
}

pub struct Selector<'a> {
    pub presets: &'a [String],
    pub params: Option<&'a str>,
    pub triple: Option<&'a str>,
    pub field: Option<&'a str>,
}

fn parse_field(text: &str) -> Result<Field, CliError> {
    text.parse::<Field>().map_err(|e| CliError::Input(e.to_string()))
}

/// Splits `a,b,k=v` into positional values and `key=value` pairs.
fn split_list(text: &str) -> (Vec<&str>, BTreeMap<&str, &str>) {
    let mut positional = Vec::new();
    let mut keyed = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('=') {
            Some((k, v)) => {
                keyed.insert(k.trim(), v.trim());
            }
            None => positional.push(item),
        }
    }
    (positional, keyed)
}

impl Selector<'_> {
    /// Resolves the selection. With `allow_invalid`, tuples that break the
    /// defining relations are returned (flagged) instead of rejected.
    pub fn resolve(&self, allow_invalid: bool) -> Result<Vec<Selected>, CliError> {
        let kinds = [!self.presets.is_empty(), self.params.is_some(), self.triple.is_some()];
        match kinds.iter().filter(|&&k| k).count() {
            0 => return Err(CliError::Input("one of --theory, --params or --triple is required".into())),
            1 => {}
            _ => return Err(CliError::Input("--theory, --params and --triple are mutually exclusive".into())),
        }
        if !self.presets.is_empty() {
            if let Some(f) = self.field {
                if parse_field(f)? != Field::F2 {
                    return Err(CliError::Input(format!("preset theories live over f2, not {f}")));
                }
            }
            return self
                .presets
                .iter()
                .map(|name| {
                    let theory = TheoryParams::preset(name).map_err(|e| CliError::Input(e.to_string()))?;
                    Ok(Selected { label: name.clone(), theory, invalid: None })
                })
                .collect();
        }
        if let Some(text) = self.params {
            return Ok(vec![self.explicit(text, allow_invalid)?]);
        }
        let text = self.triple.expect("one selector present");
        Ok(vec![self.solved(text)?])
    }

    fn field_for(&self, keyed: &BTreeMap<&str, &str>) -> Result<Field, CliError> {
        match (keyed.get("field").copied(), self.field) {
            (Some(a), Some(b)) if parse_field(a)? != parse_field(b)? => {
                Err(CliError::Input(format!("conflicting fields {a} and {b}")))
            }
            (Some(f), _) | (None, Some(f)) => parse_field(f),
            (None, None) => Ok(Field::Rationals),
        }
    }

    fn explicit(&self, text: &str, allow_invalid: bool) -> Result<Selected, CliError> {
        let (positional, keyed) = split_list(text);
        if let Some(p) = positional.first() {
            return Err(CliError::Input(format!("--params expects key=value pairs, got `{p}`")));
        }
        if let Some(k) = keyed.keys().find(|k| !["a", "t", "lambda", "mu", "beta", "field"].contains(k)) {
            return Err(CliError::Input(format!("unknown parameter `{k}`")));
        }
        let field = self.field_for(&keyed)?;
        let get = |key: &str| {
            let v = keyed
                .get(key)
                .ok_or_else(|| CliError::Input(format!("--params is missing `{key}`")))?;
            field.parse_scalar(v).map_err(|e| CliError::Input(e.to_string()))
        };
        let theory = TheoryParams::unchecked(get("a")?, get("t")?, get("lambda")?, get("mu")?, get("beta")?)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let invalid = theory.check_constraints().err().map(|e| e.to_string());
        if let (Some(msg), false) = (&invalid, allow_invalid) {
            return Err(CliError::Input(msg.clone()));
        }
        Ok(Selected { label: theory.to_string(), theory, invalid })
    }

    fn solved(&self, text: &str) -> Result<Selected, CliError> {
        let (positional, keyed) = split_list(text);
        if positional.len() != 3 || keyed.keys().any(|&k| k != "field") {
            return Err(CliError::Input(format!("--triple expects a,lambda,mu[,field=F], got `{text}`")));
        }
        let field = self.field_for(&keyed)?;
        let s: Vec<_> = positional
            .iter()
            .map(|v| field.parse_scalar(v).map_err(|e| CliError::Input(e.to_string())))
            .collect::<Result<_, _>>()?;
        let theory = TheoryParams::from_triple(s[0].clone(), s[1].clone(), s[2].clone())
            .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Selected { label: theory.to_string(), theory, invalid: None })
    }
}
