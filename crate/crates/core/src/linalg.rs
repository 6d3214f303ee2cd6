//! Dense complex operators on fusion spaces and the handful of
//! factorizations the simulator needs (Hermitian eigensolver, polar
//! unitarization, exact propagators).
//!
//! Every operator carries the total-charge sector of each basis row. All
//! physical operators conserve total charge, so eigenproblems are solved one
//! sector block at a time; this keeps eigenvectors sector-pure even inside
//! degenerate eigenspaces.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::anyon::ChargeLabel;
use crate::scalar::{abs, c_one, c_real, c_zero, cis, max, modulus, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// A dense complex square matrix acting on a fusion-tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    matrix: CMatrix<T>,
    sectors: Arc<[ChargeLabel]>,
}

impl<T: Real> OperatorMatrix<T> {
    /// Wraps `matrix`. `sectors[i]` is the total charge of basis state `i`.
    ///
    /// Panics if the matrix is not square of dimension `sectors.len()`.
    pub fn new(matrix: CMatrix<T>, sectors: Arc<[ChargeLabel]>) -> Self {
        assert_eq!(matrix.nrows(), sectors.len(), "operator/basis dimension mismatch");
        assert_eq!(matrix.ncols(), sectors.len(), "operator must be square");
        Self { matrix, sectors }
    }

    pub fn zeros(sectors: Arc<[ChargeLabel]>) -> Self {
        let n = sectors.len();
        Self::new(CMatrix::zeros(n, n), sectors)
    }

    pub fn identity(sectors: Arc<[ChargeLabel]>) -> Self {
        let n = sectors.len();
        Self::new(CMatrix::identity(n, n), sectors)
    }

    pub fn from_diagonal(diag: &[Complex<T>], sectors: Arc<[ChargeLabel]>) -> Self {
        let n = sectors.len();
        assert_eq!(diag.len(), n);
        let mut m = CMatrix::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        Self::new(m, sectors)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn sectors(&self) -> &Arc<[ChargeLabel]> {
        &self.sectors
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint(), self.sectors.clone())
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&self.matrix * &other.matrix, self.sectors.clone())
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, coeff: T, other: &Self) {
        let k = c_real(coeff);
        self.matrix.zip_apply(&other.matrix, |a, b| *a += b * k);
    }

    pub fn scaled(&self, coeff: Complex<T>) -> Self {
        Self::new(self.matrix.map(|z| z * coeff), self.sectors.clone())
    }

    pub fn apply(&self, v: &CVector<T>) -> CVector<T> {
        &self.matrix * v
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    /// Largest entry modulus, `‖·‖_max`.
    pub fn max_abs(&self) -> T {
        max_abs(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(&(&self.matrix - &other.matrix))
    }

    /// `‖H - H†‖_max`.
    pub fn hermiticity_residual(&self) -> T {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `‖P² - P‖_max` combined with the Hermiticity residual.
    pub fn projector_residual(&self) -> T {
        let sq = &self.matrix * &self.matrix;
        max(max_abs(&(sq - &self.matrix)), self.hermiticity_residual())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        Self::new(ab - ba, self.sectors.clone())
    }

    /// Largest modulus among entries connecting different total-charge
    /// sectors. Zero for every operator built by this crate.
    pub fn cross_sector_max(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                if self.sectors[i] != self.sectors[j] {
                    worst = max(worst, modulus(self.matrix[(i, j)]));
                }
            }
        }
        worst
    }

    /// Real part of the trace; the rank of a projector.
    pub fn trace_rank(&self) -> usize {
        let tr = self.trace().re.as_f64();
        tr.round().max(0.0) as usize
    }

    /// Eigen-decomposition of a Hermitian operator, block by block.
    pub fn eigen(&self) -> Eigensystem<T> {
        Eigensystem::hermitian(&self.matrix, &self.sectors)
    }

    /// Rows as `[re, im]` pairs, for serialization.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let z = self.matrix[(i, j)];
                        [z.re.as_f64(), z.im.as_f64()]
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| max(acc, modulus(*z)))
}

/// Spectral data of a Hermitian operator with eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct Eigensystem<T: Real> {
    pub values: Vec<T>,
    /// Eigenvectors as columns, aligned with `values`.
    pub vectors: CMatrix<T>,
    /// Total-charge sector of each eigenvector.
    pub sectors: Vec<ChargeLabel>,
}

impl<T: Real> Eigensystem<T> {
    /// Diagonalizes each total-charge block of a Hermitian matrix separately
    /// and merges the spectra. Blocks are visited in ascending sector order
    /// and the merge is a stable sort, so the result is deterministic.
    pub fn hermitian(matrix: &CMatrix<T>, sectors: &[ChargeLabel]) -> Self {
        let n = matrix.nrows();
        let mut labels: Vec<ChargeLabel> = sectors.to_vec();
        labels.sort();
        labels.dedup();

        let mut entries: Vec<(T, ChargeLabel, CVector<T>)> = Vec::with_capacity(n);
        for sector in labels {
            let idx: Vec<usize> = (0..n).filter(|&i| sectors[i] == sector).collect();
            let block = CMatrix::from_fn(idx.len(), idx.len(), |r, c| matrix[(idx[r], idx[c])]);
            let eig = SymmetricEigen::new(block);
            for k in 0..idx.len() {
                let mut v = CVector::zeros(n);
                for (r, &i) in idx.iter().enumerate() {
                    v[i] = eig.eigenvectors[(r, k)];
                }
                entries.push((eig.eigenvalues[k], sector, v));
            }
        }
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

        let mut vectors = CMatrix::zeros(n, n);
        let mut values = Vec::with_capacity(n);
        let mut secs = Vec::with_capacity(n);
        for (k, (val, sec, v)) in entries.into_iter().enumerate() {
            vectors.set_column(k, &v);
            values.push(val);
            secs.push(sec);
        }
        Self {
            values,
            vectors,
            sectors: secs,
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// The `k` lowest eigenvectors as columns.
    pub fn lowest(&self, k: usize) -> CMatrix<T> {
        self.vectors.columns(0, k).into_owned()
    }

    /// Number of eigenvalues within `rel_tol · span` of the minimum, where
    /// `span` is the spectral width (at least one).
    pub fn ground_multiplicity(&self, rel_tol: T) -> usize {
        if self.values.is_empty() {
            return 0;
        }
        let lo = self.values[0];
        let span = self.values[self.values.len() - 1] - lo;
        let window = rel_tol * span;
        self.values.iter().take_while(|&&v| v - lo <= window).count()
    }

    /// `max |λ|`.
    pub fn spectral_radius(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| max(acc, abs(v)))
    }

    /// Gap between eigenvalue `k` and eigenvalue `k - 1`; zero if `k` is out
    /// of range.
    pub fn gap_above(&self, k: usize) -> T {
        if k == 0 || k >= self.values.len() {
            T::zero()
        } else {
            self.values[k] - self.values[k - 1]
        }
    }

    /// Exact propagator `exp(-i H dt) = V diag(e^{-i λ dt}) V†`.
    pub fn propagator(&self, dt: T) -> CMatrix<T> {
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let phase = cis(-lambda * dt);
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= phase);
        }
        scaled * self.vectors.adjoint()
    }
}

/// Closest unitary in Frobenius norm (the polar factor `W V†` of the SVD
/// `M = W Σ V†`).
pub fn unitarize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    if m.is_empty() {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    let (u, v_t) = (svd.u.expect("left singular vectors"), svd.v_t.expect("right singular vectors"));
    u * v_t
}

/// `‖U†U - 1‖_max`.
pub fn unitarity_residual<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - CMatrix::<T>::identity(n, n)))
}

/// Normalizes a vector to unit Euclidean norm.
pub fn normalized<T: Real>(v: CVector<T>) -> CVector<T> {
    let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    if norm > T::zero() {
        let inv = c_real(T::one() / norm);
        v.map(|z| z * inv)
    } else {
        v
    }
}

/// `⟨a|b⟩`.
pub fn inner<T: Real>(a: &CVector<T>, b: &CVector<T>) -> Complex<T> {
    a.iter().zip(b.iter()).fold(c_zero(), |acc, (x, y)| acc + x.conj() * y)
}

/// Identity-shaped complex matrix helper.
pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |i, j| if i == j { c_one() } else { c_zero() })
}
