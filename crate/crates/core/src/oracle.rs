//! Independent finite-difference eigensolver.
//!
//! Validates the closed-form spectra without touching the root systems or
//! wavefunctions: discretize `−d²/dx² + V(x)` with the 3-point Laplacian
//! and Dirichlet walls, then extract the lowest eigenvalues of the
//! resulting symmetric tridiagonal matrix by bisection on the Sturm
//! sequence count.  Consumes only `Model::potential` and (for the final
//! comparison) `Model::eigenvalue`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::models::{Model, ModelKind, ModelParams};

/// Hard cap on how many eigenvalues one call may request.
pub const MAX_LEVELS: usize = 12;

/// Configuration of one oracle run.  The grid's ends are the Dirichlet
/// walls; the unknowns are the `points − 2` interior nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub grid: Grid,
    /// Number of eigenvalues to compare (levels `N = 0 .. levels−1`).
    pub levels: usize,
    /// Richardson-extrapolate with a half-spacing companion run.
    pub richardson: bool,
}

/// Symmetric tridiagonal `−d²/dx² + V` on the interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

/// Per-level comparison record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub n: usize,
    pub closed_form: f64,
    pub numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub model: ModelKind,
    pub params: ModelParams,
    pub levels: Vec<LevelComparison>,
    pub grid: Grid,
    /// Continuum threshold used to separate bound levels, if the model has one.
    pub threshold: Option<f64>,
    pub richardson: bool,
    pub runtime_ms: u128,
}

/// Ratios `|E(h)−E(h/2)| / |E(h/2)−E(h/4)|` per level; ≈ 4 for the
/// second-order stencil.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub report: OracleReport,
    pub ratios: Vec<f64>,
}

/// Discretize a model Hamiltonian on the interior of `grid`.
pub fn discretize(model: &Model, grid: &Grid) -> Result<TridiagonalOperator> {
    grid.validate_for(model.kind())?;
    Ok(discretize_potential(grid, |x| {
        model.potential(x).expect("interior nodes are inside the domain")
    }))
}

/// Discretize an arbitrary potential; walls sit at the grid ends.
pub fn discretize_potential(grid: &Grid, potential: impl Fn(f64) -> f64) -> TridiagonalOperator {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let interior = grid.points - 2;
    let mut diagonal = Vec::with_capacity(interior);
    for i in 1..=interior {
        diagonal.push(2.0 * inv_h2 + potential(grid.x(i)));
    }
    TridiagonalOperator {
        diagonal,
        off_diagonal: vec![-inv_h2; interior.saturating_sub(1)],
    }
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `sigma` (Sturm sequence count
    /// via the LDLᵀ recurrence).
    pub fn count_below(&self, sigma: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE.max(
            f64::EPSILON
                * self
                    .off_diagonal
                    .iter()
                    .fold(1.0f64, |m, e| m.max(e.abs())),
        );
        let mut count = 0;
        let mut d = 1.0;
        for (i, &diag) in self.diagonal.iter().enumerate() {
            let e2 = if i == 0 {
                0.0
            } else {
                self.off_diagonal[i - 1] * self.off_diagonal[i - 1]
            };
            d = diag - sigma - e2 / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin bounds on the spectrum.
    fn spectrum_bounds(&self) -> (f64, f64) {
        let n = self.dimension();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off_diagonal[i - 1].abs();
            }
            if i < n - 1 {
                radius += self.off_diagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - radius);
            hi = hi.max(self.diagonal[i] + radius);
        }
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (0-indexed), bracketed to relative 1e−12.
    fn kth_eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.spectrum_bounds();
        while hi - lo > 1e-12 * lo.abs().max(hi.abs()).max(1.0) {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// The `k` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    if k > MAX_LEVELS {
        return Err(Error::Numerical(format!(
            "requested {k} eigenvalues, maximum is {MAX_LEVELS}"
        )));
    }
    if k * 10 >= op.dimension() {
        return Err(Error::Numerical(format!(
            "requested {k} eigenvalues from a dimension-{} operator; need k < points/10",
            op.dimension()
        )));
    }
    Ok((0..k).map(|i| op.kth_eigenvalue(i)).collect())
}

/// Compare the lowest closed-form levels against the numeric spectrum.
///
/// For models with a continuum, numeric eigenvalues at or above
/// `threshold − 10h²` are discarded before the rank pairing; coming up
/// short is an error rather than a silent partial comparison.
pub fn compare(model: &Model, n_max: usize, config: &OracleConfig) -> Result<OracleReport> {
    let start = Instant::now();
    if config.grid.points < 500 {
        return Err(Error::InvalidGrid(format!(
            "oracle comparisons need at least 500 grid points, got {}",
            config.grid.points
        )));
    }
    let wanted = n_max + 1;
    if wanted > config.levels.max(wanted) {
        unreachable!();
    }
    let numeric = bound_levels(model, &config.grid, wanted)?;
    let numeric = if config.richardson {
        let finer = bound_levels(model, &config.grid.refined(), wanted)?;
        numeric
            .iter()
            .zip(&finer)
            .map(|(coarse, fine)| (4.0 * fine - coarse) / 3.0)
            .collect()
    } else {
        numeric
    };
    let mut levels = Vec::with_capacity(wanted);
    for (n, &num) in numeric.iter().enumerate() {
        let closed = model.eigenvalue(n)?;
        let abs_err = (num - closed).abs();
        levels.push(LevelComparison {
            n,
            closed_form: closed,
            numeric: num,
            abs_err,
            rel_err: abs_err / closed.abs().max(f64::MIN_POSITIVE),
        });
    }
    Ok(OracleReport {
        model: model.kind(),
        params: model.params(),
        levels,
        grid: config.grid,
        threshold: model.continuum_threshold(),
        richardson: config.richardson,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Lowest `wanted` numeric eigenvalues below the continuum threshold.
fn bound_levels(model: &Model, grid: &Grid, wanted: usize) -> Result<Vec<f64>> {
    let op = discretize(model, grid)?;
    let eigenvalues = lowest_eigenvalues(&op, wanted)?;
    let cutoff = model
        .continuum_threshold()
        .map(|t| t - 10.0 * grid.spacing() * grid.spacing());
    let bound: Vec<f64> = match cutoff {
        Some(cut) => eigenvalues.into_iter().filter(|e| *e < cut).collect(),
        None => eigenvalues,
    };
    if bound.len() < wanted {
        return Err(Error::InsufficientBoundLevels {
            found: bound.len(),
            needed: wanted,
        });
    }
    Ok(bound)
}

/// Three runs at h, h/2, h/4 (taking `config.grid` as the coarse one);
/// the report is from the finest grid, the ratios diagnose the
/// second-order convergence.
pub fn convergence_study(
    model: &Model,
    n_max: usize,
    config: &OracleConfig,
) -> Result<ConvergenceStudy> {
    let wanted = n_max + 1;
    let coarse = bound_levels(model, &config.grid, wanted)?;
    let mid_grid = config.grid.refined();
    let mid = bound_levels(model, &mid_grid, wanted)?;
    let fine_grid = mid_grid.refined();
    let fine = bound_levels(model, &fine_grid, wanted)?;
    let ratios = (0..wanted)
        .map(|n| (coarse[n] - mid[n]).abs() / (mid[n] - fine[n]).abs())
        .collect();
    let fine_config = OracleConfig {
        grid: fine_grid,
        levels: wanted,
        richardson: false,
    };
    Ok(ConvergenceStudy {
        report: compare(model, n_max, &fine_config)?,
        ratios,
    })
}

/// Largest eigenvalue shift per level when the walls move in by 25%
/// (both walls for two-sided decay, the outer wall otherwise).  Small
/// shifts mean the Dirichlet truncation is not what limits accuracy.
pub fn truncation_sensitivity(model: &Model, n_max: usize, grid: &Grid) -> Result<Vec<f64>> {
    let wanted = n_max + 1;
    let baseline = bound_levels(model, grid, wanted)?;
    let perturbed_grid = match model.kind() {
        ModelKind::Coulomb | ModelKind::Eckart => {
            Grid::new(grid.xmin * 1.25, grid.xmax * 0.75, grid.points)?
        }
        ModelKind::RosenMorseII => Grid::new(grid.xmin * 0.75, grid.xmax * 0.75, grid.points)?,
        ModelKind::RosenMorseI => {
            let lo = grid.xmin * 1.25;
            let hi = std::f64::consts::PI - (std::f64::consts::PI - grid.xmax) * 1.25;
            Grid::new(lo, hi, grid.points)?
        }
    };
    let perturbed = bound_levels(model, &perturbed_grid, wanted)?;
    Ok(baseline
        .iter()
        .zip(&perturbed)
        .map(|(a, b)| (a - b).abs())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelParams;

    #[test]
    fn stencil_entries() {
        let grid = Grid::new(0.0, 1.0, 5).unwrap();
        let op = discretize_potential(&grid, |x| 10.0 * x);
        let inv_h2 = 16.0;
        assert_eq!(op.dimension(), 3);
        for (i, d) in op.diagonal.iter().enumerate() {
            let x = grid.x(i + 1);
            assert!((d - (2.0 * inv_h2 + 10.0 * x)).abs() < 1e-12);
        }
        assert!(op.off_diagonal.iter().all(|&e| e == -inv_h2));
    }

    #[test]
    fn two_by_two_analytic() {
        let op = TridiagonalOperator {
            diagonal: vec![2.0, 2.0],
            off_diagonal: vec![-1.0],
        };
        let eigs: Vec<f64> = (0..2).map(|k| op.kth_eigenvalue(k)).collect();
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 3.0).abs() < 1e-12);
        assert!(lowest_eigenvalues(&op, 0).unwrap().is_empty());
    }

    #[test]
    fn particle_in_a_box() {
        // V = 0 on [0, π] with Dirichlet walls: E_n = (n+1)².
        let grid = Grid::new(0.0, std::f64::consts::PI, 2001).unwrap();
        let op = discretize_potential(&grid, |_| 0.0);
        let eigs = lowest_eigenvalues(&op, 3).unwrap();
        for (n, e) in eigs.iter().enumerate() {
            let exact = ((n + 1) * (n + 1)) as f64;
            assert!(
                (e - exact).abs() < 5e-5 * exact,
                "level {n}: {e} vs {exact}"
            );
        }
    }

    #[test]
    fn harmonic_sanity() {
        // V = x² in these units has E_n = 2n+1.
        let grid = Grid::new(-10.0, 10.0, 4001).unwrap();
        let op = discretize_potential(&grid, |x| x * x);
        let eigs = lowest_eigenvalues(&op, 3).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-4, "{}", eigs[0]);
        assert!((eigs[1] - 3.0).abs() < 1e-4);
        assert!((eigs[2] - 5.0).abs() < 1e-3);
    }

    #[test]
    fn sturm_count_is_consistent_with_levels() {
        let grid = Grid::new(-8.0, 8.0, 1501).unwrap();
        let op = discretize_potential(&grid, |x| x * x);
        let eigs = lowest_eigenvalues(&op, 5).unwrap();
        for k in 0..eigs.len() - 1 {
            let mid = 0.5 * (eigs[k] + eigs[k + 1]);
            assert_eq!(op.count_below(mid), k + 1);
        }
        assert_eq!(op.count_below(eigs[0] - 0.5), 0);
    }

    #[test]
    fn request_limits() {
        let op = TridiagonalOperator {
            diagonal: vec![1.0; 50],
            off_diagonal: vec![-0.1; 49],
        };
        assert!(lowest_eigenvalues(&op, 13).is_err());
        assert!(lowest_eigenvalues(&op, 5).is_err()); // 5*10 >= 50
        assert!(lowest_eigenvalues(&op, 4).is_ok());
    }

    #[test]
    fn compare_coulomb_levels() {
        // With A = 1 the wavefunctions behave like x at the origin, so the
        // Dirichlet wall at xmin shifts E_N by ≈ 4·xmin/(N+1); the wall must
        // sit well below 2.5e-4 for the 1e-3 relative target.
        let m = Model::new(ModelKind::Coulomb, ModelParams::new(1.0, 1.0)).unwrap();
        let config = OracleConfig {
            grid: Grid::new(5e-5, 60.0, 12001).unwrap(),
            levels: 3,
            richardson: false,
        };
        let report = compare(&m, 2, &config).unwrap();
        let expected = [-1.0, -0.25, -1.0 / 9.0];
        for (level, exact) in report.levels.iter().zip(expected) {
            assert!((level.closed_form - exact).abs() < 1e-14);
            assert!(level.rel_err < 1e-3, "N = {}: rel {}", level.n, level.rel_err);
        }
    }

    #[test]
    fn compare_eckart_levels() {
        let m = Model::new(ModelKind::Eckart, ModelParams::new(2.0, 16.0)).unwrap();
        let config = OracleConfig {
            grid: Grid::new(1e-3, 12.0, 8001).unwrap(),
            levels: 2,
            richardson: false,
        };
        let report = compare(&m, 1, &config).unwrap();
        assert!((report.levels[0].closed_form - (-66.0)).abs() < 1e-12);
        assert!((report.levels[1].closed_form - (-256.0 / 9.0 - 7.0)).abs() < 1e-12);
        for level in &report.levels {
            assert!(level.rel_err < 1e-3, "N = {}: rel {}", level.n, level.rel_err);
        }
        assert_eq!(report.threshold, Some(2.0 - 32.0));
    }

    #[test]
    fn insufficient_bound_levels_detected() {
        // Eckart (2, 16) has two bound states; asking for four must fail.
        let m = Model::new(ModelKind::Eckart, ModelParams::new(2.0, 16.0)).unwrap();
        let config = OracleConfig {
            grid: Grid::new(1e-3, 12.0, 2001).unwrap(),
            levels: 4,
            richardson: false,
        };
        assert!(matches!(
            compare(&m, 3, &config),
            Err(Error::InsufficientBoundLevels { .. })
        ));
    }

    #[test]
    fn richardson_improves_coulomb() {
        // Wall far enough in that the h² discretization error dominates,
        // which is the part Richardson removes.
        let m = Model::new(ModelKind::Coulomb, ModelParams::new(1.0, 1.0)).unwrap();
        let grid = Grid::new(1e-6, 40.0, 2001).unwrap();
        let plain = compare(
            &m,
            0,
            &OracleConfig {
                grid,
                levels: 1,
                richardson: false,
            },
        )
        .unwrap();
        let extrapolated = compare(
            &m,
            0,
            &OracleConfig {
                grid,
                levels: 1,
                richardson: true,
            },
        )
        .unwrap();
        assert!(extrapolated.levels[0].abs_err < plain.levels[0].abs_err / 4.0);
    }

    #[test]
    fn convergence_ratio_near_four() {
        let m = Model::new(ModelKind::Coulomb, ModelParams::new(1.0, 1.0)).unwrap();
        let config = OracleConfig {
            grid: Grid::new(1e-3, 40.0, 1001).unwrap(),
            levels: 1,
            richardson: false,
        };
        let study = convergence_study(&m, 0, &config).unwrap();
        assert!(
            study.ratios[0] > 3.5 && study.ratios[0] < 4.5,
            "ratio {}",
            study.ratios[0]
        );
        assert!(study.report.levels[0].rel_err < 1e-3);
    }
}
