//! JSON model files.
//!
//! ```json
//! {"name": "toy", "commodities": ["corn"], "wage_timing": "post",
//!  "techniques": [{"name": "I", "labor": [1.0], "circulating": [[0.0]],
//!                  "capital": [[0.5]], "depreciation": [1.0]}]}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EconomyModel, Technique, WageTiming};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub commodities: Vec<String>,
    pub wage_timing: WageTiming,
    pub techniques: Vec<TechniqueFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechniqueFile {
    pub name: String,
    pub labor: Vec<f64>,
    pub circulating: Vec<Vec<f64>>,
    pub capital: Vec<Vec<f64>>,
    pub depreciation: Vec<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub capital_tags: BTreeMap<String, String>,
}

fn matrix(rows: &[Vec<f64>], n: usize, field: &str, at: &str) -> Result<Matrix<f64>> {
    if rows.len() != n {
        return Err(Error::ModelFile(format!(
            "{at}: field `{field}` has {} rows, expected {n}",
            rows.len()
        )));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::ModelFile(format!(
            "{at}: field `{field}` row {i} has {} entries, expected {n}",
            rows[i].len()
        )));
    }
    Matrix::from_rows(rows.to_vec())
}

impl TryFrom<ModelFile> for EconomyModel<f64> {
    type Error = Error;

    fn try_from(file: ModelFile) -> Result<Self> {
        let n = file.commodities.len();
        let mut techniques = Vec::with_capacity(file.techniques.len());
        for (k, t) in file.techniques.into_iter().enumerate() {
            let at = format!("techniques[{k}] (`{}`)", t.name);
            if t.labor.len() != n {
                return Err(Error::ModelFile(format!(
                    "{at}: field `labor` has {} entries, expected {n}",
                    t.labor.len()
                )));
            }
            if t.depreciation.len() != n {
                return Err(Error::ModelFile(format!(
                    "{at}: field `depreciation` has {} entries, expected {n}",
                    t.depreciation.len()
                )));
            }
            let circulating = matrix(&t.circulating, n, "circulating", &at)?;
            let capital = matrix(&t.capital, n, "capital", &at)?;
            let technique = Technique::new(t.name, t.labor, circulating, capital, t.depreciation)
                .map_err(|e| Error::ModelFile(format!("{at}: {e}")))?
                .with_capital_tags(t.capital_tags);
            techniques.push(technique);
        }
        EconomyModel::new(file.name, file.commodities, file.wage_timing, techniques)
            .map_err(|e| Error::ModelFile(e.to_string()))
    }
}

impl From<&EconomyModel<f64>> for ModelFile {
    fn from(model: &EconomyModel<f64>) -> Self {
        ModelFile {
            name: model.name.clone(),
            commodities: model.commodities.clone(),
            wage_timing: model.wage_timing,
            techniques: model
                .techniques
                .iter()
                .map(|t| TechniqueFile {
                    name: t.name.clone(),
                    labor: t.labor.clone(),
                    circulating: t.circulating.to_rows(),
                    capital: t.capital.to_rows(),
                    depreciation: t.depreciation.clone(),
                    capital_tags: t.capital_tags.clone(),
                })
                .collect(),
        }
    }
}

pub fn parse_model_str(text: &str) -> Result<EconomyModel<f64>> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))?;
    file.try_into()
}

pub fn parse_model_file(path: impl AsRef<Path>) -> Result<EconomyModel<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ModelFile(format!("{}: {e}", path.display())))?;
    parse_model_str(&text).map_err(|e| match e {
        Error::ModelFile(msg) => Error::ModelFile(format!("{}: {msg}", path.display())),
        other => other,
    })
}

impl EconomyModel<f64> {
    /// Canonical pretty-printed JSON; parsing it back yields an equal model.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from(self)).expect("model serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE: &str = r#"{
        "name": "corn",
        "commodities": ["corn"],
        "wage_timing": "post",
        "techniques": [
            {"name": "I", "labor": [1.0], "circulating": [[0.0]], "capital": [[0.5]], "depreciation": [1.0]}
        ]
    }"#;

    #[test]
    fn parses_single_sector() {
        let model = parse_model_str(SINGLE).unwrap();
        assert_eq!(model.order(), 1);
        assert_eq!(model.techniques[0].capital.get(0, 0), &0.5);
        assert_eq!(model.wage_timing, WageTiming::PostFactum);
    }

    #[test]
    fn missing_depreciation_names_the_field() {
        let text = SINGLE.replace(r#", "depreciation": [1.0]"#, "");
        let err = parse_model_str(&text).unwrap_err().to_string();
        assert!(err.contains("depreciation"), "{err}");
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn dimension_mismatch_names_technique_and_field() {
        let text = SINGLE.replace(r#""labor": [1.0]"#, r#""labor": [1.0, 2.0]"#);
        let err = parse_model_str(&text).unwrap_err().to_string();
        assert!(err.contains("techniques[0]") && err.contains("`labor`"), "{err}");
    }

    #[test]
    fn ante_timing_and_tags_round_trip() {
        let text = SINGLE
            .replace(r#""post""#, r#""ante""#)
            .replace(r#""depreciation": [1.0]"#, r#""depreciation": [1.0], "capital_tags": {"corn": "k-I"}"#);
        let model = parse_model_str(&text).unwrap();
        assert_eq!(model.wage_timing, WageTiming::AnteFactum);
        let again = parse_model_str(&model.to_json()).unwrap();
        assert_eq!(again, model);
        assert_eq!(again.to_json(), model.to_json());
    }
}
