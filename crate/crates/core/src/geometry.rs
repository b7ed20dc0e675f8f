//! Product vectors in `C² ⊗ C²`.
//!
//! A two-qubit ket `ψ` is a product `e ⊗ f` exactly when its 2×2 coefficient
//! matrix `ψ_{iμ}` has vanishing determinant. Everything in this module
//! builds on that fact: Schmidt forms, product states inside a plane (roots
//! of a binary quadratic), and product vectors orthogonal to a given kernel
//! vector, which is how the decomposition finds product vectors inside
//! rank-3 ranges.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    det2, herm_eig, quadratic_roots, rank_of, svd2, CMatrix, CVector, Projective, RootSet,
};
use crate::state::{sphere_vector, ProductVector, ToleranceConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn require_dim4(psi: &CVector) -> Result<()> {
    if psi.dim() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected a two-qubit vector of dimension 4, got {}",
            psi.dim()
        )));
    }
    Ok(())
}

/// Coefficient matrix with entry `(i, μ)` = `ψ[2i + μ]`.
pub fn reshape_to_2x2(psi: &CVector) -> Result<CMatrix> {
    require_dim4(psi)?;
    Ok(CMatrix::from_fn(2, 2, |i, mu| psi[2 * i + mu]))
}

/// `|det(reshape(ψ))| ≤ tol`.
pub fn is_product_vector(psi: &CVector, tol: f64) -> bool {
    match reshape_to_2x2(psi) {
        Ok(m) => det2(&m).norm() <= tol,
        Err(_) => false,
    }
}

/// Best rank-one factor pair of a two-qubit ket, ignoring the determinant.
pub(crate) fn nearest_product(psi: &CVector) -> Result<ProductVector> {
    let m = reshape_to_2x2(psi)?;
    let svd = svd2(&m);
    ProductVector::new(svd.u.column(0), svd.v.column(0).conj())
}

/// Splits a product ket into `(e, f)` from the leading singular pair of its
/// reshape. Fails with `NotAProductVector` when `|det| > tol`.
pub fn factorize_product(psi: &CVector, tol: f64) -> Result<ProductVector> {
    let det = det2(&reshape_to_2x2(psi)?).norm();
    if det > tol {
        return Err(Error::NotAProductVector { det });
    }
    nearest_product(psi)
}

/// `ψ = c1 e1⊗f1 + c2 e2⊗f2` with `c1 ≥ c2 ≥ 0` and orthonormal local pairs.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: [f64; 2],
    pub e: [CVector; 2],
    pub f: [CVector; 2],
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> CVector {
        let mut out = CVector::zeros(4);
        for k in 0..2 {
            let t = self.e[k].kron(&self.f[k]).expect("2x2");
            out = &out + &t.scale(self.coefficients[k]);
        }
        out
    }

    /// The `k`-th Schmidt product `e_k ⊗ f_k`.
    pub fn product(&self, k: usize) -> ProductVector {
        ProductVector::new(self.e[k].clone(), self.f[k].clone()).expect("unit local vectors")
    }
}

/// Schmidt decomposition from the SVD of the coefficient matrix:
/// `e_k` are left singular vectors and `f_k` conjugated right ones.
pub fn schmidt(psi: &CVector) -> Result<SchmidtForm> {
    let m = reshape_to_2x2(psi)?;
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "Schmidt form needs a unit vector, norm is {n}"
        )));
    }
    let svd = svd2(&m);
    Ok(SchmidtForm {
        coefficients: svd.s,
        e: [svd.u.column(0), svd.u.column(1)],
        f: [svd.v.column(0).conj(), svd.v.column(1).conj()],
    })
}

/// A product state found inside a plane, with its plane coordinates.
#[derive(Debug, Clone)]
pub struct PlaneRoot {
    /// `[α : β]` with the larger component equal to 1.
    pub coefficients: Projective,
    pub vector: ProductVector,
}

#[derive(Debug, Clone)]
pub enum PlaneProductResult {
    /// Every vector of the plane is a product vector.
    AllProduct,
    /// The one or two product states of the plane (never empty).
    Roots(Vec<PlaneRoot>),
}

impl PlaneProductResult {
    pub fn root_count(&self) -> Option<usize> {
        match self {
            PlaneProductResult::AllProduct => None,
            PlaneProductResult::Roots(r) => Some(r.len()),
        }
    }
}

/// Coefficients are treated as identically zero below this magnitude.
const PLANE_ALL_ZERO: f64 = 1e-10;

/// Product vectors in `span{v1, v2}`: roots of `det(α M1 + β M2) = 0`, a
/// binary quadratic in `(α, β)` whose coefficients are `det M1`, the mixed
/// term and `det M2`.
pub fn product_states_in_plane(v1: &CVector, v2: &CVector) -> Result<PlaneProductResult> {
    require_dim4(v1)?;
    require_dim4(v2)?;
    let u1 = v1
        .normalized()
        .ok_or(Error::DependentInputs { overlap: f64::NAN })?;
    let u2 = v2
        .normalized()
        .ok_or(Error::DependentInputs { overlap: f64::NAN })?;
    let overlap = u1.dot(&u2).norm();
    if overlap >= 1.0 - 1e-12 {
        return Err(Error::DependentInputs { overlap });
    }

    let m1 = reshape_to_2x2(&u1)?;
    let m2 = reshape_to_2x2(&u2)?;
    let a = det2(&m1);
    let c = det2(&m2);
    let b = m1[(0, 0)] * m2[(1, 1)] + m2[(0, 0)] * m1[(1, 1)]
        - m1[(0, 1)] * m2[(1, 0)]
        - m2[(0, 1)] * m1[(1, 0)];

    let roots: Vec<Projective> = match quadratic_roots(a, b, c, PLANE_ALL_ZERO) {
        RootSet::AllSolutions => return Ok(PlaneProductResult::AllProduct),
        RootSet::OneDoubleRoot(r) => vec![r],
        RootSet::TwoRoots(rs) => rs.to_vec(),
    };
    let roots = roots
        .into_iter()
        .map(|r| {
            let psi = &u1.scale_c(r.alpha) + &u2.scale_c(r.beta);
            let psi = psi.normalized().ok_or(Error::DependentInputs { overlap })?;
            Ok(PlaneRoot {
                coefficients: r,
                vector: nearest_product(&psi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlaneProductResult::Roots(roots))
}

/// Canonical plane families: spanned by two product states (`P1`), with a
/// single product state (`P2`), and generic (`P3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneKind {
    P1,
    P2,
    P3,
}

fn in_range(x: f64, lo: f64, hi: f64, hi_inclusive: bool, lo_inclusive: bool) -> bool {
    let lo_ok = if lo_inclusive { x >= lo } else { x > lo };
    let hi_ok = if hi_inclusive { x <= hi } else { x < hi };
    x.is_finite() && lo_ok && hi_ok
}

fn angle_error(kind: PlaneKind, name: &str, value: f64) -> Error {
    Error::InvalidInput(format!("{kind:?}: angle {name} = {value} out of range"))
}

fn local(theta: f64, phase: f64) -> [Complex64; 2] {
    [
        Complex64::new(theta.cos(), 0.0),
        Complex64::from_polar(theta.sin(), phase),
    ]
}

/// Haar-random element of SU(2).
fn random_su2(rng: &mut ChaCha8Rng) -> CMatrix {
    let v = sphere_vector(rng, 2);
    let (a, b) = (v[0], v[1]);
    CMatrix::from_vec(2, 2, vec![a, -b.conj(), b, a.conj()]).expect("2x2")
}

/// Spanning vectors of a canonical plane.
///
/// * `P1`: `|00⟩` and `(cos A, e^{iB} sin A) ⊗ (cos C, e^{iD} sin C)`,
///   `0 ≤ A, C ≤ π/2`, `0 ≤ B, D < 2π`.
/// * `P2`: `|00⟩` and `(0, cos A, e^{iC} sin A cos B, sin A sin B)`,
///   `0 < A < π/2`, `0 ≤ B < π/2`, `0 ≤ C < 2π`; `D` is unused. Only the
///   `B = 0` slice has a single product state; for `sin B ≠ 0` the
///   quadratic picks up an `αβ sin A sin B` term and a second root.
/// * `P3`: `(cos A, 0, 0, sin A)` and
///   `(sin A cos B, sin B cos C, e^{iD} sin B sin C, -cos A cos B)`,
///   `0 < A < π/2`, `0 ≤ B, C ≤ π/2`, `0 ≤ D < 2π`; draws whose second
///   vector is itself a product are rejected.
///
/// With a seed, both vectors are mapped by the same random `U_a ⊗ U_b`.
pub fn gen_plane_case(
    kind: PlaneKind,
    angles: [f64; 4],
    seed: Option<u64>,
) -> Result<(CVector, CVector)> {
    let [a, b, c, d] = angles;
    let two_pi = 2.0 * PI;
    let (v1, v2) = match kind {
        PlaneKind::P1 => {
            for (name, x, hi, inc) in [
                ("A", a, FRAC_PI_2, true),
                ("B", b, two_pi, false),
                ("C", c, FRAC_PI_2, true),
                ("D", d, two_pi, false),
            ] {
                if !in_range(x, 0.0, hi, inc, true) {
                    return Err(angle_error(kind, name, x));
                }
            }
            let e = local(a, b);
            let f = local(c, d);
            let v2 = CVector::from_fn(4, |k| e[k / 2] * f[k % 2]);
            (CVector::basis(4, 0), v2)
        }
        PlaneKind::P2 => {
            if !in_range(a, 0.0, FRAC_PI_2, false, false) {
                return Err(angle_error(kind, "A", a));
            }
            if !in_range(b, 0.0, FRAC_PI_2, false, true) {
                return Err(angle_error(kind, "B", b));
            }
            if !in_range(c, 0.0, two_pi, false, true) {
                return Err(angle_error(kind, "C", c));
            }
            let v2 = CVector::from_vec(vec![
                ZERO,
                Complex64::new(a.cos(), 0.0),
                Complex64::from_polar(a.sin() * b.cos(), c),
                Complex64::new(a.sin() * b.sin(), 0.0),
            ])?;
            (CVector::basis(4, 0), v2)
        }
        PlaneKind::P3 => {
            if !in_range(a, 0.0, FRAC_PI_2, false, false) {
                return Err(angle_error(kind, "A", a));
            }
            for (name, x) in [("B", b), ("C", c)] {
                if !in_range(x, 0.0, FRAC_PI_2, true, true) {
                    return Err(angle_error(kind, name, x));
                }
            }
            if !in_range(d, 0.0, two_pi, false, true) {
                return Err(angle_error(kind, "D", d));
            }
            let v1 = CVector::from_real(&[a.cos(), 0.0, 0.0, a.sin()]);
            let v2 = CVector::from_vec(vec![
                Complex64::new(a.sin() * b.cos(), 0.0),
                Complex64::new(b.sin() * c.cos(), 0.0),
                Complex64::from_polar(b.sin() * c.sin(), d),
                Complex64::new(-a.cos() * b.cos(), 0.0),
            ])?;
            if is_product_vector(&v2, 1e-10) {
                return Err(Error::InvalidInput(
                    "P3: second spanning vector is a product vector".into(),
                ));
            }
            (v1, v2)
        }
    };
    match seed {
        None => Ok((v1, v2)),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let u = random_su2(&mut rng).kron(&random_su2(&mut rng))?;
            Ok((u.mul_vec(&v1), u.mul_vec(&v2)))
        }
    }
}

/// Point of the Riemann sphere parameterizing `e = (1, t)`, or `e = (0, 1)`
/// at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereParam {
    Finite(Complex64),
    Infinity,
}

/// Product partner orthogonal to a unit kernel vector `w`, with `e` given.
///
/// `⟨w|e⊗f⟩ = Σ_μ g_μ f_μ` with `g_μ = Σ_i conj(w_{iμ}) e_i`, so
/// `f = (-g_1, g_0)` is the solution up to scale. Returns `None` when
/// `g = 0`, where every `f` works.
fn orthogonal_partner(w: &CVector, e: &[Complex64; 2]) -> Option<CVector> {
    let g0 = w[0].conj() * e[0] + w[2].conj() * e[1];
    let g1 = w[1].conj() * e[0] + w[3].conj() * e[1];
    if (g0.norm_sqr() + g1.norm_sqr()).sqrt() <= 1e-12 {
        return None;
    }
    CVector::from_vec(vec![-g1, g0]).ok()?.normalized()
}

fn local_e(t: SphereParam) -> [Complex64; 2] {
    match t {
        SphereParam::Finite(t) => [ONE, t],
        SphereParam::Infinity => [ZERO, ONE],
    }
}

fn require_rank3(
    m: &CMatrix,
    tol: &ToleranceConfig,
    what: &str,
) -> Result<crate::linalg::EigResult> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::InvalidInput(format!("{what} must be 4x4")));
    }
    let eig = herm_eig(m)?;
    let r = rank_of(&eig, tol.rank_tol);
    if r != 3 {
        return Err(Error::InvalidInput(format!(
            "{what} has rank {r}, expected 3"
        )));
    }
    Ok(eig)
}

/// `‖(I − Π_R) v‖` for a rank-3 matrix whose unit kernel vector is `w`.
fn kernel_residual(w: &CVector, v: &CVector) -> f64 {
    w.dot(v).norm()
}

/// The product vector `e(t) ⊗ f(t)` in the range of a rank-3 PSD matrix,
/// with `f(t)` the unique partner making it orthogonal to the kernel.
///
/// When the kernel is orthogonal to `e(t) ⊗ C²` altogether, every `f` works
/// and `f = |0⟩` is returned. A non-finite `t` is a `DegenerateParameter`.
pub fn product_in_range(
    m: &CMatrix,
    t: SphereParam,
    tol: &ToleranceConfig,
) -> Result<ProductVector> {
    if let SphereParam::Finite(z) = t {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::DegenerateParameter);
        }
    }
    let eig = require_rank3(m, tol, "matrix")?;
    let w = eig.eigenvector(0);
    let e = local_e(t);
    let f = orthogonal_partner(&w, &e).unwrap_or_else(|| CVector::basis(2, 0));
    let pv = ProductVector::new(CVector::from_vec(e.to_vec())?, f)?;
    let res = kernel_residual(&w, &pv.ket());
    if res > 1e-10 {
        return Err(Error::InconsistentState(format!(
            "range certificate failed with residual {res:e}"
        )));
    }
    Ok(pv)
}

/// A certified product vector `e⊗f` with `e⊗f ∈ R(ρ)` and `e⊗f* ∈ R(ρ^{T_b})`.
#[derive(Debug, Clone)]
pub struct BothRangeSolution {
    pub vector: ProductVector,
    /// `‖(I − Π_R(ρ)) e⊗f‖`.
    pub residual: f64,
    /// `‖(I − Π_R(ρ^{T_b})) e⊗f*‖`.
    pub residual_pt: f64,
}

/// Search schedule for [`solve_both_ranges`].
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Samples on the Riemann sphere, including `t = 0` and `t = ∞`.
    pub samples: usize,
    /// Newton starts taken from the best samples.
    pub restarts: usize,
    pub newton_tol: f64,
    pub max_iterations: usize,
    /// Acceptance threshold on both range residuals.
    pub certify_tol: f64,
    /// Rotation of the spiral, so different seeds probe different points.
    pub phase_offset: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            samples: 64,
            restarts: 8,
            newton_tol: 1e-12,
            max_iterations: 50,
            certify_tol: 1e-8,
            phase_offset: 0.0,
        }
    }
}

/// Local chart of the Riemann sphere: `e = (1, τ)` or, flipped, `e = (τ, 1)`.
#[derive(Debug, Clone, Copy)]
struct ChartPoint {
    flipped: bool,
    tau: Complex64,
}

impl ChartPoint {
    fn e(&self) -> [Complex64; 2] {
        if self.flipped {
            [self.tau, ONE]
        } else {
            [ONE, self.tau]
        }
    }

    fn recentered(self) -> Self {
        if self.tau.norm() > 1.5 {
            ChartPoint {
                flipped: !self.flipped,
                tau: self.tau.inv(),
            }
        } else {
            self
        }
    }

    fn shifted(&self, dx: f64, dy: f64) -> Self {
        ChartPoint {
            flipped: self.flipped,
            tau: self.tau + Complex64::new(dx, dy),
        }
    }
}

struct BothRangeProblem {
    w: CVector,
    u: CVector,
}

impl BothRangeProblem {
    /// Normalized `⟨u| e ⊗ f*⟩` with `f` chosen orthogonal to `w`; `None`
    /// where `f` degenerates.
    fn residual(&self, p: &ChartPoint) -> Option<(Complex64, CVector, CVector)> {
        let e = p.e();
        let f = orthogonal_partner(&self.w, &e)?;
        let ev = CVector::from_vec(e.to_vec()).ok()?.normalized()?;
        let v = ev.kron(&f.conj()).ok()?;
        Some((self.u.dot(&v), ev, f))
    }

    fn abs_residual(&self, p: &ChartPoint) -> f64 {
        self.residual(p).map_or(f64::INFINITY, |r| r.0.norm())
    }

    fn newton(&self, start: ChartPoint, cfg: &SearchConfig) -> Option<ChartPoint> {
        let mut p = start;
        let mut r = self.residual(&p)?.0;
        let mut mu = 0.0f64;
        for _ in 0..cfg.max_iterations {
            if r.norm() <= cfg.newton_tol {
                break;
            }
            let h = 1e-7 * p.tau.norm().max(1.0);
            let dx = (self.residual(&p.shifted(h, 0.0))?.0 - self.residual(&p.shifted(-h, 0.0))?.0)
                / (2.0 * h);
            let dy = (self.residual(&p.shifted(0.0, h))?.0 - self.residual(&p.shifted(0.0, -h))?.0)
                / (2.0 * h);
            // Real Jacobian J = [[Re dx, Re dy], [Im dx, Im dy]]; damped normal equations.
            let j = [[dx.re, dy.re], [dx.im, dy.im]];
            let jtj = [
                [
                    j[0][0] * j[0][0] + j[1][0] * j[1][0],
                    j[0][0] * j[0][1] + j[1][0] * j[1][1],
                ],
                [
                    j[0][0] * j[0][1] + j[1][0] * j[1][1],
                    j[0][1] * j[0][1] + j[1][1] * j[1][1],
                ],
            ];
            let jtr = [
                j[0][0] * r.re + j[1][0] * r.im,
                j[0][1] * r.re + j[1][1] * r.im,
            ];
            let scale = (jtj[0][0] + jtj[1][1]).max(f64::MIN_POSITIVE);
            let mut improved = false;
            for _ in 0..12 {
                let a = jtj[0][0] + mu * scale;
                let d = jtj[1][1] + mu * scale;
                let det = a * d - jtj[0][1] * jtj[1][0];
                if det.abs() <= 1e-300 {
                    mu = if mu == 0.0 { 1e-12 } else { mu * 10.0 };
                    continue;
                }
                let sx = -(d * jtr[0] - jtj[0][1] * jtr[1]) / det;
                let sy = -(a * jtr[1] - jtj[1][0] * jtr[0]) / det;
                let cand = p.shifted(sx, sy);
                match self.residual(&cand) {
                    Some((rc, _, _)) if rc.norm() < r.norm() => {
                        p = cand.recentered();
                        r = self.residual(&p)?.0;
                        mu *= 0.1;
                        improved = true;
                        break;
                    }
                    _ => mu = if mu == 0.0 { 1e-12 } else { mu * 10.0 },
                }
            }
            if !improved {
                break;
            }
        }
        Some(p)
    }
}

/// Points on a golden-angle spiral over the Riemann sphere, each expressed
/// in the chart where `|τ| ≤ 1`. The first two are `t = 0` and `t = ∞`.
fn spiral_samples(n: usize, phase_offset: f64) -> Vec<ChartPoint> {
    let mut out = vec![
        ChartPoint {
            flipped: false,
            tau: ZERO,
        },
        ChartPoint {
            flipped: true,
            tau: ZERO,
        },
    ];
    let golden = PI * (3.0 - 5f64.sqrt());
    let m = n.saturating_sub(2);
    for k in 0..m {
        let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let phi = k as f64 * golden + phase_offset;
        let (x, y) = (rho * phi.cos(), rho * phi.sin());
        // Stereographic projection from the north pole: t = (x + iy)/(1 - z).
        out.push(if z <= 0.0 {
            ChartPoint {
                flipped: false,
                tau: Complex64::new(x, y) / (1.0 - z),
            }
        } else {
            ChartPoint {
                flipped: true,
                tau: Complex64::new(x, -y) / (1.0 + z),
            }
        });
    }
    out
}

/// All distinct certified solutions found by the sampled Newton search for
/// a product `e⊗f` with `e⊗f ⊥ ker ρ` and `e⊗f* ⊥ ker ρ^{T_b}` (both rank 3).
///
/// `f` is eliminated through the first condition, leaving one complex
/// equation in the sphere coordinate of `e`; it mixes `t` and `conj(t)`,
/// so it is solved as two real equations by damped Newton.
pub fn solve_both_ranges(
    m: &CMatrix,
    m_pt: &CMatrix,
    tol: &ToleranceConfig,
    cfg: &SearchConfig,
) -> Result<Vec<BothRangeSolution>> {
    let w = require_rank3(m, tol, "matrix")?.eigenvector(0);
    let u = require_rank3(m_pt, tol, "partial transpose")?.eigenvector(0);
    let problem = BothRangeProblem { w, u };

    let mut samples: Vec<(f64, ChartPoint)> = spiral_samples(cfg.samples, cfg.phase_offset)
        .into_iter()
        .map(|p| (problem.abs_residual(&p), p))
        .collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let best_sample = samples.first().map_or(f64::INFINITY, |s| s.0);

    let mut found: Vec<BothRangeSolution> = Vec::new();
    let mut best_residual = best_sample;
    for (_, start) in samples.iter().take(cfg.restarts) {
        let Some(p) = problem.newton(*start, cfg) else {
            continue;
        };
        let Some((_, e, f)) = problem.residual(&p) else {
            continue;
        };
        let Ok(vector) = ProductVector::new(e, f) else {
            continue;
        };
        let residual = kernel_residual(&problem.w, &vector.ket());
        let residual_pt = kernel_residual(&problem.u, &vector.partial_conjugate().ket());
        best_residual = best_residual.min(residual.max(residual_pt));
        if residual > cfg.certify_tol || residual_pt > cfg.certify_tol {
            continue;
        }
        if found
            .iter()
            .any(|s| s.vector.projective_distance(&vector) < 1e-10)
        {
            continue;
        }
        found.push(BothRangeSolution {
            vector,
            residual,
            residual_pt,
        });
    }
    if found.is_empty() {
        return Err(Error::NoSolutionFound {
            restarts: cfg.restarts,
            best_residual,
        });
    }
    Ok(found)
}

/// The best-certified product vector from [`solve_both_ranges`] with the
/// default schedule.
pub fn product_in_both_ranges(
    m: &CMatrix,
    m_pt: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<ProductVector> {
    let sols = solve_both_ranges(m, m_pt, tol, &SearchConfig::default())?;
    Ok(sols
        .into_iter()
        .min_by(|a, b| {
            a.residual
                .max(a.residual_pt)
                .total_cmp(&b.residual.max(b.residual_pt))
        })
        .expect("non-empty")
        .vector)
}

/// Sixteen spiral parameters for choosing among the product vectors of a
/// rank-3 range.
pub(crate) fn range_parameters(n: usize, phase_offset: f64) -> Vec<SphereParam> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let r = (PI * (k as f64 + 0.5) / (2.0 * n as f64)).tan();
            SphereParam::Finite(Complex64::from_polar(r, k as f64 * golden + phase_offset))
        })
        .collect()
}
