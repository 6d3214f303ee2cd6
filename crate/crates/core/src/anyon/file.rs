//! JSON model files.
//!
//! ```json
//! {
//!   "name": "fibonacci",
//!   "labels": ["1", "tau"],
//!   "fusion": [["1", "1", "1"], ["1", "tau", "tau"], ...],
//!   "f_symbols": [{"abcd": ["tau", "tau", "tau", "tau"], "e": "1", "f": "1", "re": 0.618, "im": 0.0}, ...],
//!   "r_symbols": [{"a": "tau", "b": "tau", "c": "1", "re": -0.809, "im": 0.588}, ...],
//!   "qdims": [1.0, 1.618]
//! }
//! ```
//!
//! Structural errors are reported as [`Error::ModelFormat`] with the
//! 1-based line of the offending entry.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{Anchor, AnyonModel, ModelData};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub fusion: Vec<[String; 3]>,
    pub f_symbols: Vec<FSymbolEntry>,
    pub r_symbols: Vec<RSymbolEntry>,
    pub qdims: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FSymbolEntry {
    pub abcd: [String; 4],
    pub e: String,
    pub f: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RSymbolEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub re: f64,
    pub im: f64,
}

impl ModelFile {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ModelFormat {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    pub fn from_model<T: Real>(model: &AnyonModel<T>) -> Self {
        let data = model.to_data();
        let name = |i: usize| data.labels[i].clone();
        Self {
            name: Some(data.name.clone()),
            labels: data.labels.clone(),
            fusion: data.fusion.iter().map(|t| t.map(name)).collect(),
            f_symbols: data
                .f_symbols
                .iter()
                .map(|([a, b, c, d, e, f], v)| FSymbolEntry {
                    abcd: [name(*a), name(*b), name(*c), name(*d)],
                    e: name(*e),
                    f: name(*f),
                    re: v.re.as_f64(),
                    im: v.im.as_f64(),
                })
                .collect(),
            r_symbols: data
                .r_symbols
                .iter()
                .map(|([a, b, c], v)| RSymbolEntry {
                    a: name(*a),
                    b: name(*b),
                    c: name(*c),
                    re: v.re.as_f64(),
                    im: v.im.as_f64(),
                })
                .collect(),
            qdims: data.qdims.iter().map(|d| d.as_f64()).collect(),
        }
    }

    /// Resolves label names and converts to raw model data. Errors carry the
    /// anchor of the offending entry.
    fn resolve<T: Real>(&self) -> std::result::Result<ModelData<T>, (Anchor, Error)> {
        let lookup = |name: &str, anchor: Anchor| {
            self.labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| (anchor, Error::UnknownLabel(name.to_string())))
        };
        let mut fusion = Vec::with_capacity(self.fusion.len());
        for (k, t) in self.fusion.iter().enumerate() {
            let at = Anchor::Fusion(k);
            fusion.push([lookup(&t[0], at)?, lookup(&t[1], at)?, lookup(&t[2], at)?]);
        }
        let mut f_symbols = Vec::with_capacity(self.f_symbols.len());
        for (k, s) in self.f_symbols.iter().enumerate() {
            let at = Anchor::FSymbols(k);
            let key = [
                lookup(&s.abcd[0], at)?,
                lookup(&s.abcd[1], at)?,
                lookup(&s.abcd[2], at)?,
                lookup(&s.abcd[3], at)?,
                lookup(&s.e, at)?,
                lookup(&s.f, at)?,
            ];
            f_symbols.push((key, Complex::new(T::lit(s.re), T::lit(s.im))));
        }
        let mut r_symbols = Vec::with_capacity(self.r_symbols.len());
        for (k, s) in self.r_symbols.iter().enumerate() {
            let at = Anchor::RSymbols(k);
            let key = [lookup(&s.a, at)?, lookup(&s.b, at)?, lookup(&s.c, at)?];
            r_symbols.push((key, Complex::new(T::lit(s.re), T::lit(s.im))));
        }
        Ok(ModelData {
            name: self.name.clone().unwrap_or_else(|| "custom".to_string()),
            labels: self.labels.clone(),
            fusion,
            f_symbols,
            r_symbols,
            qdims: self.qdims.iter().map(|&d| T::lit(d)).collect(),
        })
    }
}

impl<T: Real> AnyonModel<T> {
    /// Parses and structurally validates a JSON model document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file = ModelFile::from_json_str(text)?;
        file.resolve()
            .and_then(AnyonModel::from_data_anchored)
            .map_err(|(anchor, err)| Error::ModelFormat {
                line: anchor_line(text, anchor),
                message: match err {
                    Error::InvalidArgument(m) => m,
                    other => other.to_string(),
                },
            })
    }

    pub fn to_json_string(&self) -> String {
        ModelFile::from_model(self).to_json_string()
    }
}

fn anchor_line(text: &str, anchor: Anchor) -> usize {
    let (key, index) = match anchor {
        Anchor::Labels(i) => ("labels", Some(i)),
        Anchor::Fusion(i) => ("fusion", Some(i)),
        Anchor::FSymbols(i) => ("f_symbols", Some(i)),
        Anchor::RSymbols(i) => ("r_symbols", Some(i)),
        Anchor::Qdims => ("qdims", None),
        Anchor::Document => return 1,
    };
    locate(text, key, index).unwrap_or(1)
}

/// Line of top-level field `key`, or of element `index` of that field's
/// array value.
fn locate(text: &str, key: &str, index: Option<usize>) -> Option<usize> {
    let mut line = 1;
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    let mut string = String::new();
    let mut last_string = String::new();
    let mut current_key = String::new();
    let mut key_line = 0;
    let mut string_line = 0;
    let mut in_target = false;
    let mut expect_element = false;
    let mut count = 0usize;

    for ch in text.chars() {
        if in_string {
            if escaped {
                escaped = false;
                string.push(ch);
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
                last_string = std::mem::take(&mut string);
            } else {
                string.push(ch);
            }
            if ch == '\n' {
                line += 1;
            }
            continue;
        }
        if in_target && depth == 2 && expect_element && !ch.is_whitespace() && ch != ',' && ch != ']' {
            if index == Some(count) {
                return Some(line);
            }
            count += 1;
            expect_element = false;
        }
        match ch {
            '\n' => line += 1,
            '"' => {
                in_string = true;
                string_line = line;
            }
            ':' if depth == 1 => {
                current_key = last_string.clone();
                key_line = string_line;
                if current_key == key && index.is_none() {
                    return Some(key_line);
                }
            }
            '{' | '[' => {
                depth += 1;
                if depth == 2 && ch == '[' && current_key == key {
                    in_target = true;
                    expect_element = true;
                }
            }
            '}' | ']' => {
                if depth == 2 && in_target {
                    return Some(key_line);
                }
                depth = depth.saturating_sub(1);
            }
            ',' if depth == 2 && in_target => expect_element = true,
            _ => {}
        }
    }
    None
}
