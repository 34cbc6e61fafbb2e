//! Bound-state wavefunctions: sampling, normalization, node counting,
//! and the finite-difference Schrödinger residual.
//!
//! The N-th bound state is `φ_N = e^{−W_N}` with the order-N prepotential
//!
//! ```text
//! W_N(x) = W₀(x) − Σ_k ln |z(x) − z_k|,        W₀' = A₁ z + A₀,
//! ```
//!
//! `A₁ = −(a+N)`, `A₀ = b/(a+N)` in the generic couplings and `{z_k}` the
//! converged Bethe-ansatz roots.  Numerically φ_N is always evaluated in
//! the equivalent product form `e^{−W₀} Π_k (z − z_k)`, which is finite at
//! the nodes; `e^{−W_N}` itself appears only through
//! [`vn_from_prepotential`], the term-by-term `W_N'² − W_N''` used to check
//! that the roots cancel every pole of the reconstructed potential.

use serde::{Deserialize, Serialize};

use crate::bae::RootSet;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::models::{
    coordinate, coordinate_antiderivative, coordinate_derivative, Model, ModelKind, ModelParams,
    SpectralLevel,
};

/// Relative tolerance for the boundary-leak check in [`normalize`].
pub const LEAK_TOL: f64 = 1e-8;

/// Sampled wavefunction on a grid, with its Simpson norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub kind: ModelKind,
    pub params: ModelParams,
    pub level: SpectralLevel,
    pub roots: RootSet,
    pub grid: Grid,
    pub values: Vec<f64>,
    /// Simpson-rule integral of φ² over the grid.
    pub norm_squared: f64,
}

/// `W_N(x)`: the model prepotential at order `N = roots.len()`.
///
/// Errors with [`Error::PoleEval`] when `z(x)` lands on a root, where the
/// log term diverges.
pub fn prepotential_w(model: &Model, roots: &[f64], x: f64) -> Result<f64> {
    let z = coordinate(model.kind(), x)?;
    let mut w = w0(model, roots.len(), x)?;
    for &zk in roots {
        let d = (z - zk).abs();
        if d <= 1e-12 * (1.0 + zk.abs()) {
            return Err(Error::PoleEval { x, z: zk });
        }
        w -= d.ln();
    }
    Ok(w)
}

/// Zeroth-order prepotential `W₀ = A₁ ∫z dx + A₀ x`.
fn w0(model: &Model, n: usize, x: f64) -> Result<f64> {
    let raw = model.raw();
    Ok(raw.a1(n) * coordinate_antiderivative(model.kind(), x)? + raw.a0(n) * x)
}

/// Un-normalized `φ_N(x) = e^{−W₀} Π_k (z(x) − z_k)`; finite on the whole
/// open domain.
pub fn evaluate(model: &Model, roots: &[f64], x: f64) -> Result<f64> {
    let z = coordinate(model.kind(), x)?;
    let envelope = (-w0(model, roots.len(), x)?).exp();
    let poly = roots.iter().fold(1.0, |acc, zk| acc * (z - zk));
    Ok(envelope * poly)
}

/// Samples `φ_N` on a grid, fixes the sign convention (φ > 0 at the left
/// grid edge) and computes the Simpson norm.
pub fn sample(model: &Model, roots: &RootSet, grid: &Grid) -> Result<WaveSample> {
    grid.validate_for(model.kind())?;
    let level = model.spectral_level(roots.len())?;
    let mut values = Vec::with_capacity(grid.points);
    for x in grid.iter_x() {
        let v = evaluate(model, &roots.roots, x)?;
        if !v.is_finite() {
            return Err(Error::Numerical(format!(
                "wavefunction overflowed at x = {x}"
            )));
        }
        values.push(v);
    }
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return Err(Error::Numerical("wavefunction vanished on the grid".into()));
    }
    // Sign convention: first significant value positive.
    if let Some(first) = values.iter().find(|v| v.abs() > 1e-12 * max_abs) {
        if *first < 0.0 {
            values.iter_mut().for_each(|v| *v = -*v);
        }
    }
    let norm_squared = simpson_squared(&values, grid.spacing());
    Ok(WaveSample {
        kind: model.kind(),
        params: model.params(),
        level,
        roots: roots.clone(),
        grid: *grid,
        values,
        norm_squared,
    })
}

/// Scales the sample to unit Simpson norm after checking that the grid
/// captures the tails:
///
/// * at an end where the domain is unbounded: `|φ_end| ≤ LEAK_TOL · max|φ|`;
/// * at an end approaching a finite domain endpoint `e`: the omitted-mass
///   estimate `φ_end² · |x_end − e|` must stay below `LEAK_TOL · ∫φ²`.
pub fn normalize(mut sample: WaveSample) -> Result<WaveSample> {
    let leak = boundary_leak(&sample);
    if leak > LEAK_TOL {
        return Err(Error::BoundaryLeak {
            leak,
            tol: LEAK_TOL,
        });
    }
    if !(sample.norm_squared > 0.0) {
        return Err(Error::Numerical("non-positive norm".into()));
    }
    let scale = sample.norm_squared.sqrt().recip();
    sample.values.iter_mut().for_each(|v| *v *= scale);
    sample.norm_squared = 1.0;
    Ok(sample)
}

/// Worst relative leak indicator over both grid ends (see [`normalize`]).
pub fn boundary_leak(sample: &WaveSample) -> f64 {
    let max_abs = sample.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (lo, hi) = sample.kind.domain();
    let mut worst = 0.0f64;
    for (end_x, end_v, domain_edge) in [
        (sample.grid.xmin, sample.values[0], lo),
        (sample.grid.xmax, *sample.values.last().unwrap(), hi),
    ] {
        let indicator = if domain_edge.is_finite() {
            end_v * end_v * (end_x - domain_edge).abs() / sample.norm_squared
        } else {
            end_v.abs() / max_abs
        };
        worst = worst.max(indicator);
    }
    worst
}

/// Number of strict sign changes across the grid — equals `N` for a
/// faithful sample of the N-th bound state.
pub fn node_count(sample: &WaveSample) -> usize {
    let mut count = 0;
    let mut last_sign = 0i8;
    for &v in &sample.values {
        if v == 0.0 {
            continue;
        }
        let sign = if v > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            count += 1;
        }
        last_sign = sign;
    }
    count
}

/// Simpson inner product `∫ a·b dx` of two samples on the same grid.
pub fn inner_product(a: &WaveSample, b: &WaveSample) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::InvalidGrid(
            "inner product requires identical grids".into(),
        ));
    }
    let products: Vec<f64> = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
    Ok(simpson(&products, a.grid.spacing()))
}

/// Finite-difference residual of the eigenproblem and its behaviour under
/// grid refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// max |−φ'' + (V − E_N) φ| / max|φ| over interior points of `grid`.
    pub residual: f64,
    /// Same quantity with the spacing halved.
    pub refined_residual: f64,
    /// `residual / refined_residual` — ≈ 4 when the error is O(h²).
    pub ratio: f64,
}

/// Checks `−φ'' + (V − E_N) φ ≈ 0` with finite differences: 5-point
/// second-derivative stencils at interior points, 3-point next to the
/// ends; the two end points carry no stencil and are excluded.
pub fn schrodinger_residual(model: &Model, roots: &RootSet, grid: &Grid) -> Result<ResidualReport> {
    let energy = model.eigenvalue(roots.len())?;
    let residual = residual_with_energy(model, roots, grid, energy)?;
    let refined_residual = residual_with_energy(model, roots, &grid.refined(), energy)?;
    Ok(ResidualReport {
        residual,
        refined_residual,
        ratio: residual / refined_residual,
    })
}

/// Residual against an arbitrary trial energy (the residual is linear in
/// the energy offset, which makes a useful sanity probe).
pub fn residual_with_energy(
    model: &Model,
    roots: &RootSet,
    grid: &Grid,
    energy: f64,
) -> Result<f64> {
    let sample = sample(model, roots, grid)?;
    // The residual is scale invariant; work at max|φ| = 1 for conditioning.
    let max_abs = sample.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let phi: Vec<f64> = sample.values.iter().map(|v| v / max_abs).collect();
    let n = phi.len();
    let h = grid.spacing();
    let h2 = h * h;
    let mut worst = 0.0f64;
    for i in 1..n - 1 {
        let second = if i >= 2 && i + 2 < n {
            (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] + 16.0 * phi[i + 1] - phi[i + 2])
                / (12.0 * h2)
        } else {
            (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) / h2
        };
        let v = model.potential(grid.x(i))?;
        let r = (-second + (v - energy) * phi[i]).abs();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `W_N'² − W_N''` assembled term by term from the analytic derivatives
///
/// ```text
/// W_N'  = A₁ z + A₀ − Σ_k z'/(z − z_k)
/// W_N'' = A₁ z' − Σ_k [z''/(z − z_k) − z'²/(z − z_k)²],   z'' = −2 z z'
/// ```
///
/// With converged roots this equals `V(x) − E_N` for every x off the root
/// preimages; with perturbed roots the simple poles reappear.
pub fn vn_from_prepotential(model: &Model, roots: &[f64], x: f64) -> Result<f64> {
    let kind = model.kind();
    let z = coordinate(kind, x)?;
    let zp = coordinate_derivative(kind, z);
    let zpp = -2.0 * z * zp;
    let raw = model.raw();
    let n = roots.len();
    let mut w1 = raw.a1(n) * z + raw.a0(n);
    let mut w2 = raw.a1(n) * zp;
    for &zk in roots {
        let d = z - zk;
        if d.abs() <= 1e-12 * (1.0 + zk.abs()) {
            return Err(Error::PoleEval { x, z: zk });
        }
        w1 -= zp / d;
        w2 -= zpp / d - zp * zp / (d * d);
    }
    Ok(w1 * w1 - w2)
}

/// A grid wide enough for [`normalize`]'s leak check, sized from the
/// asymptotic decay rates of the level.
pub fn default_grid(model: &Model, n: usize, points: usize) -> Result<Grid> {
    let p = model.params();
    let nf = n as f64;
    let (xmin, xmax) = match model.kind() {
        ModelKind::Coulomb => {
            let kappa = p.b / (p.a + nf);
            // Solve κx − (A+N) ln x ≈ 45 by fixed-point iteration.
            let mut xmax = 45.0 / kappa;
            for _ in 0..4 {
                xmax = (45.0 + (p.a + nf) * xmax.max(1.0).ln()) / kappa;
            }
            (1e-4, xmax.clamp(5.0, 2000.0))
        }
        ModelKind::Eckart => {
            let kappa = p.b / (p.a + nf) - (p.a + nf);
            (1e-4, (45.0 / kappa).clamp(4.0, 400.0))
        }
        ModelKind::RosenMorseII => {
            let an = p.a - nf;
            let rate_plus = an + p.b / an;
            let rate_minus = an - p.b / an;
            (
                -(45.0 / rate_minus).clamp(4.0, 400.0),
                (45.0 / rate_plus).clamp(4.0, 400.0),
            )
        }
        ModelKind::RosenMorseI => (1e-4, std::f64::consts::PI - 1e-4),
    };
    Grid::new(xmin, xmax, points)
}

/// Composite Simpson rule (trapezoid fix-up on the last interval when the
/// interval count is odd).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let intervals = n - 1;
    let simpson_end = if intervals % 2 == 0 { n - 1 } else { n - 2 };
    let mut sum = 0.0;
    if simpson_end >= 2 {
        sum += values[0] + values[simpson_end];
        for (i, &v) in values.iter().enumerate().take(simpson_end).skip(1) {
            sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        sum *= h / 3.0;
    }
    if intervals % 2 == 1 {
        sum += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    sum
}

fn simpson_squared(values: &[f64], h: f64) -> f64 {
    let squared: Vec<f64> = values.iter().map(|v| v * v).collect();
    simpson(&squared, h)
}
