//! Dense complex linear algebra for matrices and vectors of dimension at most 6.
//!
//! Everything here is small enough that robustness matters more than speed:
//! the Hermitian eigensolver is a cyclic complex Jacobi iteration run to
//! machine precision, and every other spectral routine is built on it.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported row/column count.
pub const MAX_DIM: usize = 6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

fn check_dim(n: usize, what: &str) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "{what} {n} outside supported range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

impl CMatrix {
    /// Zero matrix. Panics when a dimension is outside `1..=MAX_DIM`.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&rows) && (1..=MAX_DIM).contains(&cols),
            "matrix dimensions {rows}x{cols} out of range"
        );
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major data, checking size and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(rows, "row count")?;
        check_dim(cols, "column count")?;
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = CMatrix { rows, cols, data };
        m.ensure_finite()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::from_fn(self.rows, |i| self[(i, j)])
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidInput("matrix has non-finite entries".into()))
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from Hermiticity, `max |M_ij - conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M†) / 2`; the result is exactly Hermitian.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let mut h = self.clone();
        for i in 0..self.rows {
            h[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in i + 1..self.cols {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    pub fn mul_vec(&self, v: &CVector) -> CVector {
        assert_eq!(self.cols, v.dim());
        CVector::from_fn(self.rows, |i| {
            self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum()
        })
    }

    /// Kronecker product; fails when the result would exceed [`MAX_DIM`].
    pub fn kron(&self, other: &CMatrix) -> Result<CMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        check_dim(rows, "kron row count")?;
        check_dim(cols, "kron column count")?;
        Ok(Self::from_fn(rows, cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        }))
    }

    /// Quadratic form `⟨v|M|v⟩`.
    pub fn quad_form(&self, v: &CVector) -> Complex64 {
        v.dot(&self.mul_vec(v))
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        CMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }
}

impl CVector {
    pub fn zeros(dim: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "vector dimension {dim} out of range"
        );
        CVector {
            data: vec![ZERO; dim],
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "vector dimension {dim} out of range"
        );
        CVector {
            data: (0..dim).map(f).collect(),
        }
    }

    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        check_dim(data.len(), "vector dimension")?;
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("vector has non-finite entries".into()));
        }
        Ok(CVector { data })
    }

    pub fn from_real(v: &[f64]) -> Self {
        Self::from_fn(v.len(), |i| Complex64::new(v[i], 0.0))
    }

    /// Standard basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        Self::from_fn(dim, |i| if i == k { ONE } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.data.iter()
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn dot(&self, other: &CVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<CVector> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn scale(&self, s: f64) -> CVector {
        CVector {
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: Complex64) -> CVector {
        CVector {
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn conj(&self) -> CVector {
        CVector {
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn kron(&self, other: &CVector) -> Result<CVector> {
        let n = self.dim() * other.dim();
        check_dim(n, "kron dimension")?;
        Ok(CVector::from_fn(n, |k| {
            self.data[k / other.dim()] * other.data[k % other.dim()]
        }))
    }

    /// Outer product `|self⟩⟨self|`.
    pub fn projector(&self) -> CMatrix {
        CMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.data[i] * self.data[j].conj()
        })
    }

    /// Multiplies by a unit phase so that the first component with modulus
    /// above `tol` becomes real and nonnegative. Returns the applied phase.
    pub fn fix_phase_first(&mut self, tol: f64) -> Complex64 {
        match self.data.iter().find(|z| z.norm() > tol) {
            Some(&z) => {
                let phase = (z / z.norm()).conj();
                for x in &mut self.data {
                    *x *= phase;
                }
                phase
            }
            None => ONE,
        }
    }

    /// Makes the largest-modulus component (first one on ties) real positive.
    pub fn fix_phase_largest(&mut self) {
        let mut best = 0;
        for (k, z) in self.data.iter().enumerate() {
            if z.norm() > self.data[best].norm() * (1.0 + 1e-12) {
                best = k;
            }
        }
        let z = self.data[best];
        if z.norm() > 0.0 {
            let phase = (z / z.norm()).conj();
            for x in &mut self.data {
                *x *= phase;
            }
            self.data[best] = Complex64::new(self.data[best].re, 0.0);
        }
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.data[i]
    }
}

impl Add for &CVector {
    type Output = CVector;

    fn add(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim());
        CVector {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CVector {
    type Output = CVector;

    fn sub(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim());
        CVector {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl EigResult {
    pub fn eigenvector(&self, k: usize) -> CVector {
        self.eigenvectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is symmetrized first.
///
/// Eigenvalues come back ascending. Each eigenvector has its largest-modulus
/// component real positive; within a cluster of equal eigenvalues the vectors
/// are ordered lexicographically by their components.
pub fn herm_eig(m: &CMatrix) -> Result<EigResult> {
    if !m.is_square() {
        return Err(Error::InvalidInput(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.ensure_finite()?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.norm_frobenius();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-2 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<(f64, CVector)> = (0..n)
        .map(|k| {
            let mut col = v.column(k);
            col.fix_phase_largest();
            (a[(k, k)].re, col)
        })
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Tie-break degenerate clusters lexicographically so runs are reproducible.
    let tie = 1e-12 * order.iter().map(|x| x.0.abs()).fold(1.0, f64::max);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && order[end].0 - order[end - 1].0 <= tie {
            end += 1;
        }
        order[start..end].sort_by(|x, y| lex_cmp(&x.1, &y.1));
        start = end;
    }

    let eigenvalues = order.iter().map(|x| x.0).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, k| order[k].1[i]);
    Ok(EigResult {
        eigenvalues,
        eigenvectors,
    })
}

fn lex_cmp(x: &CVector, y: &CVector) -> std::cmp::Ordering {
    const EPS: f64 = 1e-12;
    for (a, b) in x.iter().zip(y.iter()) {
        for (s, t) in [(a.re, b.re), (a.im, b.im)] {
            if (s - t).abs() > EPS {
                return s.total_cmp(&t);
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// One Jacobi step zeroing `a[p][q]`: `a ← G† a G`, `v ← v G` with
/// `G = diag(1, z) · R(θ)` on the `(p, q)` plane.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let z = apq.conj() / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();

    // Columns: col_p' = c col_p - s z col_q, col_q' = s col_p + c z col_q.
    for i in 0..n {
        let xp = a[(i, p)];
        let xq = a[(i, q)] * z;
        a[(i, p)] = xp * c - xq * s;
        a[(i, q)] = xp * s + xq * c;
        let yp = v[(i, p)];
        let yq = v[(i, q)] * z;
        v[(i, p)] = yp * c - yq * s;
        v[(i, q)] = yp * s + yq * c;
    }
    // Rows: the adjoint of the same transform.
    let zc = z.conj();
    for j in 0..n {
        let xp = a[(p, j)];
        let xq = a[(q, j)] * zc;
        a[(p, j)] = xp * c - xq * s;
        a[(q, j)] = xp * s + xq * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Cutoff below which an eigenvalue counts as zero: `rank_tol · max(1, λ_max)`.
pub fn rank_cutoff(eig: &EigResult, rank_tol: f64) -> f64 {
    rank_tol * eig.max().max(1.0)
}

/// Number of eigenvalues above `rank_tol · max(1, λ_max)`.
pub fn rank_with_tol(m: &CMatrix, rank_tol: f64) -> Result<usize> {
    let eig = herm_eig(m)?;
    Ok(rank_of(&eig, rank_tol))
}

pub fn rank_of(eig: &EigResult, rank_tol: f64) -> usize {
    let cut = rank_cutoff(eig, rank_tol);
    eig.eigenvalues.iter().filter(|&&l| l > cut).count()
}

/// Moore-Penrose pseudoinverse of a PSD matrix by inverting the eigenvalues
/// above the rank cutoff.
pub fn pinv_psd(m: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    let eig = herm_eig(m)?;
    Ok(pinv_from_eig(&eig, rank_tol))
}

pub fn pinv_from_eig(eig: &EigResult, rank_tol: f64) -> CMatrix {
    let cut = rank_cutoff(eig, rank_tol);
    spectral_sum(eig, |l| if l > cut { Some(1.0 / l) } else { None })
}

/// Orthogonal projector onto the span of eigenvectors above the rank cutoff.
pub fn range_projector(eig: &EigResult, rank_tol: f64) -> CMatrix {
    let cut = rank_cutoff(eig, rank_tol);
    spectral_sum(eig, |l| if l > cut { Some(1.0) } else { None })
}

fn spectral_sum(eig: &EigResult, f: impl Fn(f64) -> Option<f64>) -> CMatrix {
    let v = &eig.eigenvectors;
    let n = v.rows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if let Some(w) = f(l) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[(i, k)] * v[(j, k)].conj() * w;
                }
            }
        }
    }
    out
}

pub fn det2(m: &CMatrix) -> Complex64 {
    assert_eq!((m.rows(), m.cols()), (2, 2), "det2 needs a 2x2 matrix");
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Singular value decomposition of a 2×2 matrix, `M = U · diag(s) · V†`.
#[derive(Debug, Clone)]
pub struct Svd2 {
    /// `s[0] ≥ s[1] ≥ 0`.
    pub s: [f64; 2],
    pub u: CMatrix,
    pub v: CMatrix,
}

/// 2×2 SVD. The singular values come from the Frobenius norm and `|det M|`
/// so the small one keeps full relative accuracy; the first nonzero entry of
/// each column of `U` is real nonnegative.
pub fn svd2(m: &CMatrix) -> Svd2 {
    assert_eq!((m.rows(), m.cols()), (2, 2), "svd2 needs a 2x2 matrix");
    let fro2 = m.norm_frobenius().powi(2);
    let det = det2(m).norm();
    if fro2 == 0.0 {
        return Svd2 {
            s: [0.0, 0.0],
            u: CMatrix::identity(2),
            v: CMatrix::identity(2),
        };
    }
    // M is finite here, so the Gram matrix is too.
    let gram = &m.adjoint() * m;
    let eig = herm_eig(&gram).expect("finite 2x2 Gram matrix");
    let s1 = eig.eigenvalues[1].max(0.0).sqrt();
    let s2 = (det / s1).min(s1);
    let mut v1 = eig.eigenvector(1);
    let mut u1 = m.mul_vec(&v1).scale(1.0 / s1);
    u1 = u1.normalized().unwrap_or_else(|| CVector::basis(2, 0));
    let mut v2 = CVector::from_fn(2, |i| if i == 0 { -v1[1].conj() } else { v1[0].conj() });
    let mut u2 = CVector::from_fn(2, |i| if i == 0 { -u1[1].conj() } else { u1[0].conj() });
    let gamma = u2.dot(&m.mul_vec(&v2));
    if gamma.norm() > 0.0 {
        u2 = u2.scale_c(gamma / gamma.norm());
    }

    let p1 = u1.fix_phase_first(1e-12);
    v1 = v1.scale_c(p1);
    let p2 = u2.fix_phase_first(1e-12);
    v2 = v2.scale_c(p2);

    let u = CMatrix::from_fn(2, 2, |i, k| if k == 0 { u1[i] } else { u2[i] });
    let v = CMatrix::from_fn(2, 2, |i, k| if k == 0 { v1[i] } else { v2[i] });
    Svd2 { s: [s1, s2], u, v }
}

/// A point `[α : β]` of the complex projective line, scaled so its
/// larger-modulus component is exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projective {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Projective {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        let (na, nb) = (alpha.norm(), beta.norm());
        assert!(na > 0.0 || nb > 0.0, "[0:0] is not a projective point");
        if na >= nb {
            Projective {
                alpha: ONE,
                beta: beta / alpha,
            }
        } else {
            Projective {
                alpha: alpha / beta,
                beta: ONE,
            }
        }
    }

    /// Chordal-style distance between two projective points.
    pub fn distance(&self, other: &Projective) -> f64 {
        let cross = (self.alpha * other.beta - self.beta * other.alpha).norm();
        let n1 = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        let n2 = (other.alpha.norm_sqr() + other.beta.norm_sqr()).sqrt();
        cross / (n1 * n2)
    }
}

/// Solutions of `a α² + b αβ + c β² = 0` on the projective line.
#[derive(Debug, Clone, PartialEq)]
pub enum RootSet {
    TwoRoots([Projective; 2]),
    OneDoubleRoot(Projective),
    AllSolutions,
}

/// Coefficients this small relative to the largest one are treated as zero.
pub const QUADRATIC_ZERO_TOL: f64 = 1e-12;
/// Discriminants this small (relative to the squared coefficient scale) give a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-10;

/// Projective roots of the binary quadratic form `a α² + b αβ + c β²`.
///
/// `abs_zero` is the magnitude at or below which all three coefficients are
/// taken to vanish identically.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64, abs_zero: f64) -> RootSet {
    let scale = a.norm().max(b.norm()).max(c.norm());
    if scale <= abs_zero || scale == 0.0 {
        return RootSet::AllSolutions;
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    let zero = |z: Complex64| z.norm() <= QUADRATIC_ZERO_TOL;

    if zero(a) {
        // β (b α + c β) = 0
        if zero(b) {
            return RootSet::OneDoubleRoot(Projective::new(ONE, ZERO));
        }
        let r1 = Projective::new(ONE, ZERO);
        let r2 = Projective::new(-c, b);
        if zero(c) {
            return RootSet::TwoRoots([r1, Projective::new(ZERO, ONE)]);
        }
        return RootSet::TwoRoots([r1, r2]);
    }

    let disc = b * b - a * c * 4.0;
    if disc.norm() <= DOUBLE_ROOT_TOL {
        return RootSet::OneDoubleRoot(Projective::new(-b, a * 2.0));
    }
    let sq = disc.sqrt();
    // Pick the sign that avoids cancellation.
    let q = if (b.conj() * sq).re >= 0.0 {
        -(b + sq) * 0.5
    } else {
        -(b - sq) * 0.5
    };
    // Roots α/β = q/a and c/q; written projectively to avoid division by small q.
    RootSet::TwoRoots([Projective::new(q, a), Projective::new(c, q)])
}
