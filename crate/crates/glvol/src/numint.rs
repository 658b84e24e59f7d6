//! Floating-point check of `∫_{U(n)} det^{-n} ⋀ dz_ij` for `n <= 3`.
//!
//! `U(n)` is charted by inverting the fibration `U(n) -> S^{2n-1}`,
//! `g ↦ g e_0`, one level at a time: hyperspherical angles give the first
//! column `c`, a complex reflection completes `c` to a unitary `H(c)`, and
//!
//! ```text
//! U(θ) = H(c(θ_level_n)) · diag(1, U'(θ_rest)),   U' ∈ U(n-1).
//! ```
//!
//! Angle layout is outermost level first: `2n-1` angles for `S^{2n-1}`
//! (`2n-2` polar angles in `[0, π]`, then one azimuth in `[0, 2π)`), followed
//! by the angles of `U(n-1)`, ending with the single `U(1)` phase. The chart
//! is singular only where the leading entry `c_0` of some level vanishes.
//!
//! The pulled-back density is `det(J) / det(U)^n` with `J` the `n^2 x n^2`
//! matrix of central differences `∂u_ij/∂θ_k`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, periodic_midpoint};

pub const MAX_N: usize = 3;
pub const MAX_QUADRATURE_N: usize = 2;
pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const UNITARITY_TOL: f64 = 1e-12;
pub const DEGENERACY_EPS: f64 = 1e-12;
/// A difference stencil must stay this many steps away from the singular
/// locus (`|c_0|` of any level).
pub const FD_GUARD_STEPS: f64 = 100.0;
pub const MIN_MC_SAMPLES: u64 = 10_000;
/// Samples per Monte Carlo chunk; each chunk has its own RNG stream.
pub const MC_CHUNK: u64 = 1 << 14;

/// Acceptance tolerances per method and size.
pub mod tolerance {
    pub const N1_QUADRATURE_ABS: f64 = 1e-8;
    pub const N2_QUADRATURE_REL: f64 = 1e-4;
    pub const MONTE_CARLO_REL: f64 = 0.05;
    pub const MONTE_CARLO_SIGMAS: f64 = 3.0;
    /// Relative size allowed for the component that should vanish.
    pub const PHASE_REL: f64 = 1e-3;
    /// Relative finite-difference floor added to the Monte Carlo sigma band;
    /// matters only when the density is nearly constant (`n = 1`).
    pub const FD_FLOOR_REL: f64 = 1e-8;
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense `n x n` complex matrix for `n <= 3`, row-major, on the stack.
#[derive(Clone, Copy, Debug)]
struct Mat {
    n: usize,
    a: [Complex64; 9],
}

impl Mat {
    fn identity(n: usize) -> Self {
        let mut a = [ZERO; 9];
        for i in 0..n {
            a[i * n + i] = ONE;
        }
        Self { n, a }
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut a = [ZERO; 9];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                for j in 0..n {
                    a[i * n + j] += x * other.a[k * n + j];
                }
            }
        }
        Mat { n, a }
    }

    fn det(&self) -> Complex64 {
        let mut a = self.a;
        lu_det(&mut a[..self.n * self.n], self.n)
    }

    fn from_dmatrix(m: &DMatrix<Complex64>) -> Self {
        let n = m.nrows();
        let mut a = [ZERO; 9];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = m[(i, j)];
            }
        }
        Mat { n, a }
    }

    fn to_dmatrix(self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }
}

/// Determinant by LU with partial pivoting; destroys `a` (row-major `k x k`).
fn lu_det(a: &mut [Complex64], k: usize) -> Complex64 {
    let mut det = ONE;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&x, &y| {
                a[x * k + col]
                    .norm_sqr()
                    .total_cmp(&a[y * k + col].norm_sqr())
            })
            .expect("non-empty range");
        if a[pivot * k + col] == ZERO {
            return ZERO;
        }
        if pivot != col {
            for j in 0..k {
                a.swap(pivot * k + j, col * k + j);
            }
            det = -det;
        }
        let p = a[col * k + col];
        det *= p;
        for r in col + 1..k {
            let f = a[r * k + col] / p;
            if f == ZERO {
                continue;
            }
            for j in col..k {
                let t = a[col * k + j];
                a[r * k + j] -= f * t;
            }
        }
    }
    det
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleKind {
    /// `[0, π]`
    Polar,
    /// `[0, 2π)`
    Azimuth,
}

impl AngleKind {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            AngleKind::Polar => (0.0, PI),
            AngleKind::Azimuth => (0.0, 2.0 * PI),
        }
    }

    fn contains(self, x: f64) -> bool {
        match self {
            AngleKind::Polar => (0.0..=PI).contains(&x),
            AngleKind::Azimuth => (0.0..2.0 * PI).contains(&x),
        }
    }
}

/// Kind of each of the `n^2` chart angles.
pub fn angle_layout(n: usize) -> Vec<AngleKind> {
    let mut out = Vec::with_capacity(n * n);
    for m in (1..=n).rev() {
        out.extend(std::iter::repeat_n(AngleKind::Polar, 2 * m - 2));
        out.push(AngleKind::Azimuth);
    }
    out
}

/// Lebesgue volume of the angle box.
pub fn box_volume(n: usize) -> f64 {
    angle_layout(n)
        .iter()
        .map(|k| {
            let (a, b) = k.bounds();
            b - a
        })
        .product()
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::range("n", n, "1 <= n <= 3 (quadrature: n <= 2)"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartParams {
    n: usize,
    angles: Vec<f64>,
}

impl ChartParams {
    pub fn new(n: usize, angles: Vec<f64>) -> Result<Self> {
        check_n(n, MAX_N)?;
        if angles.len() != n * n {
            return Err(Error::range(
                "angle count",
                angles.len(),
                "exactly n^2 angles",
            ));
        }
        for (x, kind) in angles.iter().zip(angle_layout(n)) {
            if !kind.contains(*x) {
                return Err(Error::range(
                    "angle",
                    x,
                    "polar in [0, π], azimuth in [0, 2π)",
                ));
            }
        }
        Ok(Self { n, angles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryPoint {
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl UnitaryPoint {
    /// Fails unless `‖U*U - I‖_∞ < 1e-12`.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::format(
                "unitary matrix",
                "must be square and non-empty",
            ));
        }
        let defect = unitarity_defect(&matrix);
        if defect.is_nan() || defect >= UNITARITY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self {
            n: matrix.nrows(),
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

/// `max |(U*U - I)_ij|`.
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let g = u.adjoint() * u;
    let n = u.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// Point of `S^{2m-1} ⊂ C^m` from `2m-1` hyperspherical angles, with
/// `c_k = x_{2k} + i x_{2k+1}`.
fn sphere_point(angles: &[f64], out: &mut [Complex64]) {
    let d = angles.len() + 1;
    let mut x = [0.0_f64; 6];
    let mut s = 1.0;
    for (k, a) in angles.iter().enumerate() {
        let (sin, cos) = a.sin_cos();
        x[k] = s * cos;
        s *= sin;
    }
    x[d - 1] = s;
    for (k, c) in out.iter_mut().enumerate() {
        *c = Complex64::new(x[2 * k], x[2 * k + 1]);
    }
}

/// Unitary with first column `c` (a unit vector), singular where `c_0 = 0`.
///
/// With `c_0 = r e^{iφ}` and `w = e^{-iφ} c`, the reflection
/// `P = I - 2uu*/(u*u)`, `u = e_0 + w`, maps `e_0` to `-w`; then
/// `H = -e^{iφ} P diag(1, -1, …, -1)` sends `e_0` to `c` and is the
/// identity at `c = e_0`.
fn completion(c: &[Complex64]) -> Result<(Mat, f64)> {
    let m = c.len();
    let r = c[0].norm();
    if r < DEGENERACY_EPS {
        return Err(Error::Degenerate {
            modulus: r,
            threshold: DEGENERACY_EPS,
        });
    }
    let phase = c[0] / r;
    let mut u = [ZERO; 3];
    for k in 0..m {
        u[k] = c[k] * phase.conj();
    }
    u[0] += ONE;
    let uu: f64 = u[..m].iter().map(|z| z.norm_sqr()).sum();
    let mut h = Mat { n: m, a: [ZERO; 9] };
    for i in 0..m {
        for j in 0..m {
            let delta = if i == j { ONE } else { ZERO };
            let p = delta - u[i] * u[j].conj() * (2.0 / uu);
            let flip = if j == 0 { 1.0 } else { -1.0 };
            h.a[i * m + j] = -phase * p * flip;
        }
    }
    Ok((h, r))
}

/// Chart matrix and the smallest leading modulus `|c_0|` over the levels.
fn chart_matrix(n: usize, angles: &[f64]) -> Result<(Mat, f64)> {
    let mut u = Mat::identity(0);
    let mut min_r = f64::INFINITY;
    for m in 1..=n {
        let start = n * n - m * m;
        let mut c = [ZERO; 3];
        sphere_point(&angles[start..start + 2 * m - 1], &mut c[..m]);
        let (h, r) = completion(&c[..m])?;
        min_r = min_r.min(r);
        // diag(1, u)
        let mut lifted = Mat::identity(m);
        for i in 0..m - 1 {
            for j in 0..m - 1 {
                lifted.a[(i + 1) * m + (j + 1)] = u.get(i, j);
            }
        }
        u = h.mul(&lifted);
    }
    Ok((u, min_r))
}

pub fn chart_point(params: &ChartParams) -> Result<UnitaryPoint> {
    let (u, _) = chart_matrix(params.n, &params.angles)?;
    UnitaryPoint::new(u.to_dmatrix())
}

pub fn pullback_density(params: &ChartParams, step: f64) -> Result<Complex64> {
    density_kernel(params.n, &params.angles, step, None)
}

/// Density of the chart composed with the left translation `g ↦ left · g`.
pub fn pullback_density_translated(
    params: &ChartParams,
    step: f64,
    left: &UnitaryPoint,
) -> Result<Complex64> {
    if left.n != params.n {
        return Err(Error::range(
            "left translation size",
            left.n,
            "same n as the chart",
        ));
    }
    density_kernel(
        params.n,
        &params.angles,
        step,
        Some(&Mat::from_dmatrix(&left.matrix)),
    )
}

fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0 && step < 0.1) {
        return Err(Error::range("fd step", step, "0 < step < 0.1"));
    }
    Ok(())
}

fn density_kernel(n: usize, angles: &[f64], step: f64, left: Option<&Mat>) -> Result<Complex64> {
    check_step(step)?;
    let (mut z, min_r) = chart_matrix(n, angles)?;
    let threshold = FD_GUARD_STEPS * step;
    if min_r < threshold {
        return Err(Error::Degenerate {
            modulus: min_r,
            threshold,
        });
    }
    let translate = |m: Mat| left.map_or(m, |l| l.mul(&m));
    z = translate(z);

    let k = n * n;
    let mut theta = [0.0_f64; 9];
    theta[..k].copy_from_slice(angles);
    let mut jac = [ZERO; 81];
    let inv_2h = 1.0 / (2.0 * step);
    for col in 0..k {
        let orig = theta[col];
        theta[col] = orig + step;
        let plus = translate(chart_matrix(n, &theta[..k])?.0);
        theta[col] = orig - step;
        let minus = translate(chart_matrix(n, &theta[..k])?.0);
        theta[col] = orig;
        for e in 0..k {
            jac[e * k + col] = (plus.a[e] - minus.a[e]) * inv_2h;
        }
    }
    let det_j = lu_det(&mut jac[..k * k], k);
    Ok(det_j / z.det().powu(n as u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "montecarlo",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationEstimate {
    pub n: usize,
    pub value: Complex64,
    /// Zero for quadrature.
    pub stderr: f64,
    pub evaluations: u64,
    pub method: Method,
    pub seed: Option<u64>,
}

/// Tensor-product rule over the angle box: Gauss–Legendre on polar axes,
/// midpoint nodes on the periodic azimuth axes.
pub fn integrate_quadrature(
    n: usize,
    nodes_per_axis: usize,
    step: f64,
) -> Result<IntegrationEstimate> {
    check_n(n, MAX_QUADRATURE_N)?;
    check_step(step)?;
    if nodes_per_axis < 2 {
        return Err(Error::range("nodes per axis", nodes_per_axis, ">= 2"));
    }
    let rules: Vec<Vec<(f64, f64)>> = angle_layout(n)
        .into_iter()
        .map(|kind| match kind {
            AngleKind::Polar => gauss_legendre(nodes_per_axis, 0.0, PI),
            AngleKind::Azimuth => periodic_midpoint(nodes_per_axis, 0.0, 2.0 * PI),
        })
        .collect();
    let k = rules.len();
    let inner_count = nodes_per_axis.pow(k as u32 - 1);

    // Parallel over the first axis; partial sums are combined in order.
    let partials = (0..nodes_per_axis)
        .into_par_iter()
        .map(|first| -> Result<Complex64> {
            let mut theta = [0.0_f64; 9];
            let (x0, w0) = rules[0][first];
            theta[0] = x0;
            let mut sum = ZERO;
            for mut code in 0..inner_count {
                let mut w = w0;
                for (axis, rule) in rules.iter().enumerate().skip(1) {
                    let (x, wx) = rule[code % nodes_per_axis];
                    code /= nodes_per_axis;
                    theta[axis] = x;
                    w *= wx;
                }
                sum += density_kernel(n, &theta[..k], step, None)? * w;
            }
            Ok(sum)
        })
        .collect::<Result<Vec<_>>>()?;
    let value = partials.into_iter().fold(ZERO, |a, b| a + b);
    Ok(IntegrationEstimate {
        n,
        value,
        stderr: 0.0,
        evaluations: (nodes_per_axis as u64).pow(k as u32),
        method: Method::Quadrature,
        seed: None,
    })
}

/// Streaming mean and sum of squared deviations of complex samples.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: u64,
    mean: Complex64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: Complex64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += (delta * (x - self.mean).conj()).re;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        Moments {
            count: total,
            mean: self.mean + delta * (nb / total as f64),
            m2: self.m2 + other.m2 + delta.norm_sqr() * na * nb / total as f64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonteCarloConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub step: f64,
    /// Optional fixed left translation composed with the chart.
    pub left: Option<UnitaryPoint>,
}

pub fn integrate_mc(n: usize, samples: u64, seed: u64, step: f64) -> Result<IntegrationEstimate> {
    integrate_mc_with(&MonteCarloConfig {
        n,
        samples,
        seed,
        step,
        left: None,
    })
}

/// Uniform sampling of the angle box. Samples whose difference stencil
/// would touch the singular locus are redrawn. Chunk `c` draws from stream
/// `c` of a ChaCha8 generator seeded with `seed`, so the result does not
/// depend on the thread count.
pub fn integrate_mc_with(config: &MonteCarloConfig) -> Result<IntegrationEstimate> {
    let n = config.n;
    check_n(n, MAX_N)?;
    check_step(config.step)?;
    if config.samples < MIN_MC_SAMPLES {
        return Err(Error::range("samples", config.samples, ">= 10000"));
    }
    let left = match &config.left {
        Some(l) if l.n != n => {
            return Err(Error::range(
                "left translation size",
                l.n,
                "same n as the chart",
            ))
        }
        Some(l) => Some(Mat::from_dmatrix(&l.matrix)),
        None => None,
    };
    let layout = angle_layout(n);
    let chunks = config.samples.div_ceil(MC_CHUNK);
    let moments = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Moments> {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(chunk);
            let count = MC_CHUNK.min(config.samples - chunk * MC_CHUNK);
            let mut acc = Moments::default();
            let mut theta = [0.0_f64; 9];
            for _ in 0..count {
                let density = loop {
                    for (t, kind) in theta.iter_mut().zip(&layout) {
                        let (a, b) = kind.bounds();
                        *t = a + (b - a) * rng.random::<f64>();
                    }
                    match density_kernel(n, &theta[..n * n], config.step, left.as_ref()) {
                        Ok(d) => break d,
                        Err(Error::Degenerate { .. }) => continue,
                        Err(e) => return Err(e),
                    }
                };
                acc.push(density);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = moments.into_iter().fold(Moments::default(), Moments::merge);
    let volume = box_volume(n);
    let count = total.count as f64;
    let variance = if total.count > 1 {
        total.m2 / (count - 1.0)
    } else {
        0.0
    };
    Ok(IntegrationEstimate {
        n,
        value: total.mean * volume,
        stderr: volume * (variance / count).sqrt(),
        evaluations: total.count,
        method: Method::MonteCarlo,
        seed: Some(config.seed),
    })
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn haar_sample(n: usize, seed: u64) -> UnitaryPoint {
    assert!(n >= 1, "n must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    UnitaryPoint::new(q).expect("QR factor is unitary")
}

/// `|∏_{ν<n} (2πi)^{ν+1}/ν!|` evaluated in floating point.
pub fn expected_modulus(n: usize) -> f64 {
    glvol_core::volume_closed_form(n).to_float().norm()
}

/// Comparison of an estimate against the exact closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Assessment {
    pub expected: Complex64,
    pub expected_modulus: f64,
    /// `| |value| - |expected| |`.
    pub modulus_error: f64,
    pub rel_error: f64,
    /// Distance to `±expected` (or to `expected` when signs are enforced).
    pub abs_error: f64,
    /// Size of the component that must vanish, relative to the modulus.
    pub phase_residual: f64,
    pub tolerance: String,
    pub pass: bool,
}

pub fn assess(est: &IntegrationEstimate, up_to_sign: bool) -> Assessment {
    use tolerance::*;
    let expected = glvol_core::volume_closed_form(est.n).to_float();
    let modulus = expected.norm();
    let modulus_error = (est.value.norm() - modulus).abs();
    let rel_error = modulus_error / modulus;
    let abs_error = if up_to_sign {
        (est.value - expected)
            .norm()
            .min((est.value + expected).norm())
    } else {
        (est.value - expected).norm()
    };
    // The closed form is real or purely imaginary; the other part vanishes.
    let residual = if expected.re.abs() > expected.im.abs() {
        est.value.im
    } else {
        est.value.re
    };
    let phase_residual = residual.abs() / modulus;
    let phase_ok = phase_residual < PHASE_REL;

    let (tolerance, pass) = match (est.method, est.n) {
        (Method::Quadrature, 1) => (
            format!("absolute {:e}", N1_QUADRATURE_ABS),
            abs_error < N1_QUADRATURE_ABS,
        ),
        (Method::Quadrature, _) => {
            let signed_ok = up_to_sign || abs_error / modulus < N2_QUADRATURE_REL;
            (
                format!("relative {:e}, phase {:e}", N2_QUADRATURE_REL, PHASE_REL),
                rel_error < N2_QUADRATURE_REL && phase_ok && signed_ok,
            )
        }
        (Method::MonteCarlo, _) => {
            let band = MONTE_CARLO_SIGMAS * est.stderr + FD_FLOOR_REL * modulus;
            let signed_ok = up_to_sign || abs_error <= band;
            (
                format!(
                    "relative {}, {} stderr, phase {:e}",
                    MONTE_CARLO_REL, MONTE_CARLO_SIGMAS, PHASE_REL
                ),
                rel_error < MONTE_CARLO_REL && modulus_error <= band && phase_ok && signed_ok,
            )
        }
    };
    Assessment {
        expected,
        expected_modulus: modulus,
        modulus_error,
        rel_error,
        abs_error,
        phase_residual,
        tolerance,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, angles: &[f64]) -> ChartParams {
        ChartParams::new(n, angles.to_vec()).unwrap()
    }

    #[test]
    fn layout_counts() {
        assert_eq!(angle_layout(1), vec![AngleKind::Azimuth]);
        let l3 = angle_layout(3);
        assert_eq!(l3.len(), 9);
        assert_eq!(l3.iter().filter(|k| **k == AngleKind::Polar).count(), 6);
        assert!((box_volume(2) - PI.powi(2) * (2.0 * PI).powi(2)).abs() < 1e-9);
    }

    #[test]
    fn chart_n1_is_phase() {
        let t = 1.234;
        let u = chart_point(&params(1, &[t])).unwrap();
        let z = u.matrix()[(0, 0)];
        assert!((z - Complex64::from_polar(1.0, t)).norm() < 1e-15);
    }

    #[test]
    fn chart_n2_zero_angles_is_identity() {
        let u = chart_point(&params(2, &[0.0; 4])).unwrap();
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!((u.matrix() - id).norm() < 1e-15);
    }

    #[test]
    fn chart_first_column_is_sphere_point() {
        let angles = [0.3, 1.1, 2.0, 0.7, 4.2, 1.3, 0.4, 1.9, 5.5];
        let u = chart_point(&params(3, &angles)).unwrap();
        let mut c = [ZERO; 3];
        sphere_point(&angles[..5], &mut c);
        for i in 0..3 {
            assert!((u.matrix()[(i, 0)] - c[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn chart_is_unitary_on_random_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            for _ in 0..200 {
                let angles: Vec<f64> = angle_layout(n)
                    .iter()
                    .map(|k| {
                        let (a, b) = k.bounds();
                        a + (b - a) * rng.random::<f64>()
                    })
                    .collect();
                chart_point(&params(n, &angles)).unwrap();
            }
        }
    }

    #[test]
    fn chart_rejects_bad_params() {
        assert!(matches!(
            ChartParams::new(2, vec![0.0; 3]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            ChartParams::new(1, vec![7.0]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            ChartParams::new(4, vec![0.0; 16]),
            Err(Error::OutOfRange { .. })
        ));
        // c_0 = 0 exactly: θ_0 = θ_1 = π/2.
        let p = params(2, &[PI / 2.0, PI / 2.0, 0.0, 0.0]);
        assert!(matches!(chart_point(&p), Err(Error::Degenerate { .. })));
        assert!(matches!(
            pullback_density(&p, 1e-5),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn density_n1_is_constant_i() {
        for t in [0.1, 1.0, 2.5, 4.0, 6.2] {
            let d = pullback_density(&params(1, &[t]), DEFAULT_FD_STEP).unwrap();
            assert!((d - Complex64::new(0.0, 1.0)).norm() < 1e-9, "{d}");
        }
    }

    #[test]
    fn density_invariant_under_left_translation() {
        let left = haar_sample(3, 5);
        let angles = [0.3, 1.1, 2.0, 0.7, 4.2, 1.3, 0.4, 1.9, 5.5];
        let p = params(3, &angles);
        let a = pullback_density(&p, DEFAULT_FD_STEP).unwrap();
        let b = pullback_density_translated(&p, DEFAULT_FD_STEP, &left).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm(), "{a} vs {b}");
    }

    #[test]
    fn quadrature_n1() {
        let est = integrate_quadrature(1, 1024, DEFAULT_FD_STEP).unwrap();
        assert!((est.value - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-8);
        assert_eq!(est.evaluations, 1024);
        assert!(assess(&est, true).pass);
        assert!(assess(&est, false).pass);
    }

    #[test]
    fn quadrature_n2_converges() {
        let coarse = integrate_quadrature(2, 6, DEFAULT_FD_STEP).unwrap();
        let fine = integrate_quadrature(2, 12, DEFAULT_FD_STEP).unwrap();
        let m = expected_modulus(2);
        let e_coarse = (coarse.value.norm() - m).abs();
        let e_fine = (fine.value.norm() - m).abs();
        assert!(e_fine <= e_coarse, "{e_fine} > {e_coarse}");
        assert!(e_fine / m < 1e-4);
    }

    #[test]
    fn quadrature_rejects_n3() {
        assert!(matches!(
            integrate_quadrature(3, 4, 1e-5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            integrate_quadrature(1, 16, 0.0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn mc_n1_within_band() {
        let est = integrate_mc(1, 100_000, 3, DEFAULT_FD_STEP).unwrap();
        let a = assess(&est, true);
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn mc_is_deterministic() {
        let a = integrate_mc(2, 20_000, 42, DEFAULT_FD_STEP).unwrap();
        let b = integrate_mc(2, 20_000, 42, DEFAULT_FD_STEP).unwrap();
        assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        assert!(matches!(
            integrate_mc(2, 10, 1, 1e-5),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs: Vec<Complex64> = (0..100)
            .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos()))
            .collect();
        let mut all = Moments::default();
        xs.iter().for_each(|x| all.push(*x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..37].iter().for_each(|x| a.push(*x));
        xs[37..].iter().for_each(|x| b.push(*x));
        let m = a.merge(b);
        assert_eq!(m.count, 100);
        assert!((m.mean - all.mean).norm() < 1e-14);
        assert!((m.m2 - all.m2).abs() < 1e-12);
    }

    #[test]
    fn haar_sample_is_unitary_and_seeded() {
        for n in 1..=4 {
            let u = haar_sample(n, 9);
            assert!(unitarity_defect(u.matrix()) < UNITARITY_TOL);
            assert_eq!(u, haar_sample(n, 9));
        }
        assert_ne!(haar_sample(3, 1), haar_sample(3, 2));
    }

    #[test]
    fn haar_first_entry_second_moment() {
        // E|u_00|^2 = 1/n for Haar-distributed U.
        let n = 3;
        let samples = 100_000;
        let xs: Vec<f64> = (0..samples)
            .map(|s| haar_sample(n, s as u64).matrix()[(0, 0)].norm_sqr())
            .collect();
        let mean = xs.iter().sum::<f64>() / samples as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0);
        let stderr = (var / samples as f64).sqrt();
        assert!(
            (mean - 1.0 / n as f64).abs() < 3.0 * stderr,
            "{mean} ± {stderr}"
        );
    }
}
