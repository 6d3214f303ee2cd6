//! Algebraic data of multiplicity-free anyon models.
//!
//! Conventions used throughout the crate:
//!
//! * `F^{abc}_d[e][f]` relates the two bracketings of three anyons with
//!   total charge `d`:
//!   `|((a b)_e c)_d⟩ = Σ_f F^{abc}_d[e][f] |(a (b c)_f)_d⟩`.
//! * `R^{ab}_c` is the phase picked up by `|(a b)_c⟩` when the two anyons are
//!   exchanged counterclockwise.
//!
//! Consistency is defined by the pentagon and hexagon identities, not by any
//! particular gauge, so any data set passing [`AnyonModel::verify`] is
//! accepted.

mod builtin;
mod file;
mod gauge;
mod verify;

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{c_zero, Real};

pub use builtin::BuiltinModel;
pub use file::{FSymbolEntry, ModelFile, RSymbolEntry};
pub use gauge::GaugeTransform;
pub use verify::{CheckResult, ConsistencyReport};

/// Index of a charge in its model's label list. Index 0 is the vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChargeLabel(usize);

impl ChargeLabel {
    pub const VACUUM: ChargeLabel = ChargeLabel(0);

    pub const fn new(index: usize) -> Self {
        ChargeLabel(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub fn is_vacuum(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ChargeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Raw description of a model, before structural validation.
///
/// Symbols are listed sparsely; every key must name an admissible tuple.
#[derive(Clone, Debug, Default)]
pub struct ModelData<T> {
    pub name: String,
    pub labels: Vec<String>,
    pub fusion: Vec<[usize; 3]>,
    pub f_symbols: Vec<([usize; 6], Complex<T>)>,
    pub r_symbols: Vec<([usize; 3], Complex<T>)>,
    pub qdims: Vec<T>,
}

/// Location of a structural defect inside [`ModelData`], used to anchor
/// error messages to lines of a model file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Anchor {
    Labels(usize),
    Fusion(usize),
    FSymbols(usize),
    RSymbols(usize),
    Qdims,
    Document,
}

/// Immutable fusion, F-, R- and quantum-dimension data of an anyon model.
#[derive(Clone, Debug, PartialEq)]
pub struct AnyonModel<T: Real> {
    name: String,
    labels: Vec<String>,
    fusion: Vec<bool>,
    f_symbols: Vec<Option<Complex<T>>>,
    r_symbols: Vec<Option<Complex<T>>>,
    qdims: Vec<T>,
}

impl<T: Real> AnyonModel<T> {
    /// Builds a model after checking its structural invariants: vacuum at
    /// index 0 named `"1"`, unique labels, vacuum neutrality of the fusion
    /// rules, and symbols supplied only for admissible tuples.
    ///
    /// Missing symbols are allowed here and reported by [`Self::verify`].
    pub fn from_data(data: ModelData<T>) -> Result<Self> {
        Self::from_data_anchored(data).map_err(|(_, e)| e)
    }

    pub(crate) fn from_data_anchored(data: ModelData<T>) -> std::result::Result<Self, (Anchor, Error)> {
        let invalid = |anchor, msg: String| (anchor, Error::InvalidArgument(msg));
        let n = data.labels.len();
        if n == 0 {
            return Err(invalid(Anchor::Document, "model has no labels".into()));
        }
        if data.labels[0] != "1" {
            return Err(invalid(Anchor::Labels(0), format!("label 0 must be the vacuum \"1\", found {:?}", data.labels[0])));
        }
        for (i, l) in data.labels.iter().enumerate() {
            if data.labels[..i].contains(l) {
                return Err(invalid(Anchor::Labels(i), format!("duplicate label {l:?}")));
            }
        }

        let mut fusion = vec![false; n * n * n];
        for (k, t) in data.fusion.iter().enumerate() {
            if t.iter().any(|&x| x >= n) {
                return Err(invalid(Anchor::Fusion(k), format!("fusion triple {t:?} references an unknown label")));
            }
            let slot = &mut fusion[(t[0] * n + t[1]) * n + t[2]];
            if *slot {
                return Err(invalid(Anchor::Fusion(k), format!("duplicate fusion triple {t:?}")));
            }
            *slot = true;
        }
        let fuses = |a: usize, b: usize, c: usize| fusion[(a * n + b) * n + c];
        for a in 0..n {
            for c in 0..n {
                let want = a == c;
                if fuses(0, a, c) != want || fuses(a, 0, c) != want {
                    return Err(invalid(
                        Anchor::Fusion(0),
                        format!(
                            "vacuum neutrality violated for {:?} x 1 -> {:?}",
                            data.labels[a], data.labels[c]
                        ),
                    ));
                }
            }
        }

        let mut f_symbols = vec![None; n.pow(6)];
        for (k, (key, value)) in data.f_symbols.iter().enumerate() {
            let [a, b, c, d, e, f] = *key;
            if key.iter().any(|&x| x >= n) {
                return Err(invalid(Anchor::FSymbols(k), format!("F-symbol {key:?} references an unknown label")));
            }
            if !(fuses(a, b, e) && fuses(e, c, d) && fuses(b, c, f) && fuses(a, f, d)) {
                return Err(invalid(Anchor::FSymbols(k), format!("F-symbol for inadmissible tuple {key:?}")));
            }
            if !(value.re.is_finite() && value.im.is_finite()) {
                return Err(invalid(Anchor::FSymbols(k), "non-finite F-symbol".into()));
            }
            let slot = &mut f_symbols[f_index(n, *key)];
            if slot.is_some() {
                return Err(invalid(Anchor::FSymbols(k), format!("duplicate F-symbol {key:?}")));
            }
            *slot = Some(*value);
        }

        let mut r_symbols = vec![None; n.pow(3)];
        for (k, (key, value)) in data.r_symbols.iter().enumerate() {
            let [a, b, c] = *key;
            if key.iter().any(|&x| x >= n) {
                return Err(invalid(Anchor::RSymbols(k), format!("R-symbol {key:?} references an unknown label")));
            }
            if !fuses(a, b, c) {
                return Err(invalid(Anchor::RSymbols(k), format!("R-symbol for inadmissible triple {key:?}")));
            }
            if !(value.re.is_finite() && value.im.is_finite()) {
                return Err(invalid(Anchor::RSymbols(k), "non-finite R-symbol".into()));
            }
            let slot = &mut r_symbols[(a * n + b) * n + c];
            if slot.is_some() {
                return Err(invalid(Anchor::RSymbols(k), format!("duplicate R-symbol {key:?}")));
            }
            *slot = Some(*value);
        }

        if data.qdims.len() != n {
            return Err(invalid(Anchor::Qdims, format!("expected {n} quantum dimensions, found {}", data.qdims.len())));
        }
        if data.qdims.iter().any(|d| !(*d > T::zero())) {
            return Err(invalid(Anchor::Qdims, "quantum dimensions must be positive".into()));
        }

        Ok(Self {
            name: data.name,
            labels: data.labels,
            fusion,
            f_symbols,
            r_symbols,
            qdims: data.qdims,
        })
    }

    /// Flattens the model back into sparse form.
    pub fn to_data(&self) -> ModelData<T> {
        let n = self.rank();
        let mut fusion = Vec::new();
        let mut r_symbols = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.fusion[(a * n + b) * n + c] {
                        fusion.push([a, b, c]);
                    }
                    if let Some(r) = self.r_symbols[(a * n + b) * n + c] {
                        r_symbols.push(([a, b, c], r));
                    }
                }
            }
        }
        let mut f_symbols = Vec::new();
        for (i, v) in self.f_symbols.iter().enumerate() {
            if let Some(v) = v {
                f_symbols.push((f_key(n, i), *v));
            }
        }
        ModelData {
            name: self.name.clone(),
            labels: self.labels.clone(),
            fusion,
            f_symbols,
            r_symbols,
            qdims: self.qdims.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn charges(&self) -> impl Iterator<Item = ChargeLabel> + '_ {
        (0..self.rank()).map(ChargeLabel)
    }

    pub fn label_name(&self, a: ChargeLabel) -> &str {
        self.labels.get(a.0).map(String::as_str).unwrap_or("?")
    }

    /// Looks up a charge by name.
    pub fn label(&self, name: &str) -> Result<ChargeLabel> {
        self.labels
            .iter()
            .position(|l| l == name)
            .map(ChargeLabel)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn check_label(&self, a: ChargeLabel) -> Result<ChargeLabel> {
        if a.0 < self.rank() {
            Ok(a)
        } else {
            Err(Error::LabelOutOfRange {
                index: a.0,
                rank: self.rank(),
            })
        }
    }

    /// `N[a][b][c] = 1`.
    #[inline]
    pub fn fuses(&self, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel) -> bool {
        let n = self.rank();
        self.fusion[(a.0 * n + b.0) * n + c.0]
    }

    /// Admissible outcomes of `a × b`, in label order.
    pub fn fusion_channels(&self, a: ChargeLabel, b: ChargeLabel) -> Vec<ChargeLabel> {
        self.charges().filter(|&c| self.fuses(a, b, c)).collect()
    }

    /// True when `a × b` has exactly one outcome for every `b`.
    pub fn is_abelian(&self, a: ChargeLabel) -> bool {
        self.charges().all(|b| self.fusion_channels(a, b).len() == 1)
    }

    /// The unique outcome of `a × b`, if there is exactly one.
    pub fn unique_fusion(&self, a: ChargeLabel, b: ChargeLabel) -> Option<ChargeLabel> {
        let ch = self.fusion_channels(a, b);
        (ch.len() == 1).then(|| ch[0])
    }

    pub fn qdim(&self, a: ChargeLabel) -> T {
        self.qdims[a.0]
    }

    pub fn qdims(&self) -> &[T] {
        &self.qdims
    }

    /// Whether `F^{abc}_d[e][f]` is an admissible symbol.
    #[inline]
    pub fn f_admissible(&self, key: [ChargeLabel; 6]) -> bool {
        let [a, b, c, d, e, f] = key;
        self.fuses(a, b, e) && self.fuses(e, c, d) && self.fuses(b, c, f) && self.fuses(a, f, d)
    }

    /// Stored `F^{abc}_d[e][f]`, or `None` when absent.
    #[inline]
    pub fn try_f(&self, key: [ChargeLabel; 6]) -> Option<Complex<T>> {
        let n = self.rank();
        self.f_symbols[f_index(n, key.map(|l| l.0))]
    }

    /// `F^{abc}_d[e][f]`, zero for inadmissible (or missing) tuples.
    #[inline]
    pub fn f(&self, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel, d: ChargeLabel, e: ChargeLabel, f: ChargeLabel) -> Complex<T> {
        self.try_f([a, b, c, d, e, f]).unwrap_or_else(c_zero)
    }

    /// `R^{ab}_c`, or `None` when absent.
    #[inline]
    pub fn try_r(&self, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel) -> Option<Complex<T>> {
        let n = self.rank();
        self.r_symbols[(a.0 * n + b.0) * n + c.0]
    }

    /// `R^{ab}_c`, zero for inadmissible triples.
    #[inline]
    pub fn r(&self, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel) -> Complex<T> {
        self.try_r(a, b, c).unwrap_or_else(c_zero)
    }

    /// The matrix `F^{abc}_d` over admissible intermediate labels.
    pub fn f_matrix(&self, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel, d: ChargeLabel) -> FMatrix<T> {
        let rows: Vec<_> = self.charges().filter(|&e| self.fuses(a, b, e) && self.fuses(e, c, d)).collect();
        let cols: Vec<_> = self.charges().filter(|&f| self.fuses(b, c, f) && self.fuses(a, f, d)).collect();
        let entries = CMatrix::from_fn(rows.len(), cols.len(), |i, j| self.f(a, b, c, d, rows[i], cols[j]));
        FMatrix { rows, cols, entries }
    }

    /// The mirror-image model: same fusion and F data, inverse braiding.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for r in out.r_symbols.iter_mut().flatten() {
            *r = r.conj();
        }
        out.name = format!("{}-mirror", self.name);
        out
    }

    /// Converts the model to another scalar precision.
    pub fn cast<U: Real>(&self) -> AnyonModel<U> {
        let conv = |z: &Complex<T>| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()));
        AnyonModel {
            name: self.name.clone(),
            labels: self.labels.clone(),
            fusion: self.fusion.clone(),
            f_symbols: self.f_symbols.iter().map(|v| v.as_ref().map(conv)).collect(),
            r_symbols: self.r_symbols.iter().map(|v| v.as_ref().map(conv)).collect(),
            qdims: self.qdims.iter().map(|d| U::lit(d.as_f64())).collect(),
        }
    }

    pub(crate) fn f_symbols_mut(&mut self) -> impl Iterator<Item = ([usize; 6], &mut Complex<T>)> {
        let n = self.rank();
        self.f_symbols
            .iter_mut()
            .enumerate()
            .filter_map(move |(i, v)| v.as_mut().map(|v| (f_key(n, i), v)))
    }

    pub(crate) fn r_symbols_mut(&mut self) -> impl Iterator<Item = ([usize; 3], &mut Complex<T>)> {
        let n = self.rank();
        self.r_symbols
            .iter_mut()
            .enumerate()
            .filter_map(move |(i, v)| v.as_mut().map(|v| ([i / (n * n), (i / n) % n, i % n], v)))
    }

    pub(crate) fn set_name(&mut self, name: String) {
        self.name = name;
    }
}

/// `F^{abc}_d` with its row (`e`) and column (`f`) labels.
#[derive(Clone, Debug)]
pub struct FMatrix<T: Real> {
    pub rows: Vec<ChargeLabel>,
    pub cols: Vec<ChargeLabel>,
    pub entries: CMatrix<T>,
}

#[inline]
fn f_index(n: usize, key: [usize; 6]) -> usize {
    key.iter().fold(0, |acc, &k| acc * n + k)
}

fn f_key(n: usize, mut idx: usize) -> [usize; 6] {
    let mut key = [0; 6];
    for slot in key.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    key
}
