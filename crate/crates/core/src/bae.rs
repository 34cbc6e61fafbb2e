//! Bethe-ansatz root systems.
//!
//! The polynomial factor of the N-th bound state has roots `{z_k}` fixed by
//! an algebraic system: simple poles of the candidate potential cancel
//! exactly when, for every `k`,
//!
//! ```text
//! Σ_{l≠k} (z_k² − λ)/(z_k − z_l) − (A+N−1) z_k + B/(A+N) = 0        (exact)
//! Σ_{l≠k} (z_k² − λ)/(z_k − z_l) + (A₁+1) z_k + A₀    = 0          (general)
//! Σ_{l≠k} 1/(x_k − x_l) + A/x_k − b                   = 0          (sinusoidal Coulomb)
//! ```
//!
//! The exact form is the general one with `A₁ = −(A+N)`, `A₀ = B/(A+N)`.
//! The systems are tiny (N ≤ ~20) and solved by damped Newton with an
//! analytic Jacobian; seeds come from closed forms (N = 1), model-aware
//! heuristics, or a homotopy ladder that grows the configuration one root
//! at a time.  This module is deliberately independent of [`crate::orthopoly`]
//! so the polynomial-root route stays a genuinely separate oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{Model, ModelKind};

/// Residual tolerance (max-abs) for a converged root set.
pub const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 20;
const MAX_PERTURB_EVENTS: usize = 3;

/// Which root system to solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Flavor {
    /// Fully solvable form with N-dependent prepotential coefficients.
    Exact,
    /// Quasi-exact form with free constants `A₁`, `A₀`.
    GeneralQes { a1: f64, a0: f64 },
    /// Coulomb in the linear coordinate `z(x) = x`; roots are the `x_k`.
    CoulombSinusoidal { b: f64 },
}

/// A root system instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaeProblem {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub flavor: Flavor,
    /// When built from a model, converged roots are additionally checked
    /// against that model's admissible coordinate range.
    pub model: Option<ModelKind>,
}

/// Converged (or externally produced) roots with solver metadata,
/// canonically sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

impl RootSet {
    /// Sorts and enforces pairwise distinctness.
    pub fn new(mut roots: Vec<f64>, residual_norm: f64, iterations: usize) -> Result<Self> {
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let sep = min_separation(&roots);
        let scale = roots.iter().fold(0.0f64, |m, z| m.max(z.abs()));
        if roots.len() > 1 && sep <= 1e-10 * (1.0 + scale) {
            return Err(Error::SingularRoots { separation: sep });
        }
        Ok(RootSet {
            roots,
            residual_norm,
            iterations,
        })
    }

    pub fn empty() -> Self {
        RootSet {
            roots: Vec::new(),
            residual_norm: 0.0,
            iterations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

fn min_separation(sorted: &[f64]) -> f64 {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// How to seed the Newton iteration.
#[derive(Debug, Clone)]
pub enum SeedStrategy {
    /// Heuristic seed, then the homotopy ladder as fallback.
    Auto,
    /// Grow the configuration one root at a time.
    Homotopy,
    /// Caller-provided starting roots.
    Explicit(Vec<f64>),
}

impl BaeProblem {
    /// Exact flavor in the generic `(λ, A, B)` parameterization.
    pub fn exact(lambda: f64, a: f64, b: f64, n: usize) -> Result<Self> {
        let nf = n as f64;
        if a + nf == 0.0 || (n >= 1 && a + nf - 1.0 == 0.0) {
            return Err(Error::Numerical(format!(
                "exact system needs A+N and A+N-1 nonzero (A = {a}, N = {n})"
            )));
        }
        Ok(BaeProblem {
            lambda,
            a,
            b,
            n,
            flavor: Flavor::Exact,
            model: None,
        })
    }

    /// Exact system for a model's level `N`, in the model's sign convention.
    pub fn for_model(model: &Model, n: usize) -> Result<Self> {
        let raw = model.raw();
        let mut problem = BaeProblem::exact(raw.lambda, raw.a, raw.b, n)?;
        problem.model = Some(model.kind());
        Ok(problem)
    }

    pub fn general(lambda: f64, a1: f64, a0: f64, n: usize) -> Self {
        BaeProblem {
            lambda,
            a: f64::NAN,
            b: f64::NAN,
            n,
            flavor: Flavor::GeneralQes { a1, a0 },
            model: None,
        }
    }

    pub fn coulomb_sinusoidal(a: f64, b: f64, n: usize) -> Result<Self> {
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::Numerical(format!(
                "sinusoidal Coulomb system needs A > 0 and b > 0 (A = {a}, b = {b})"
            )));
        }
        Ok(BaeProblem {
            lambda: 0.0,
            a,
            b: f64::NAN,
            n,
            flavor: Flavor::CoulombSinusoidal { b },
            model: None,
        })
    }

    /// Sinusoidal-coordinate system matching a Coulomb model's level `N`
    /// (`b = B/(A+N)`).
    pub fn coulomb_sinusoidal_for(model: &Model, n: usize) -> Result<Self> {
        if model.kind() != ModelKind::Coulomb {
            return Err(Error::Numerical(
                "sinusoidal coordinate path is Coulomb-only".into(),
            ));
        }
        let p = model.params();
        BaeProblem::coulomb_sinusoidal(p.a, p.b / (p.a + n as f64), n)
    }

    /// Linear coefficients of the one-root part of the residual: the
    /// component `k` is `pair terms + c1·z_k + c0` (exact/general flavors).
    fn linear_coefficients(&self) -> (f64, f64) {
        let nf = self.n as f64;
        match self.flavor {
            Flavor::Exact => (-(self.a + nf - 1.0), self.b / (self.a + nf)),
            Flavor::GeneralQes { a1, a0 } => (a1 + 1.0, a0),
            Flavor::CoulombSinusoidal { .. } => unreachable!("handled separately"),
        }
    }

    /// Residual vector of the system at `roots` (one component per root).
    pub fn residual(&self, roots: &[f64]) -> Result<Vec<f64>> {
        debug_assert_eq!(roots.len(), self.n);
        check_distinct(roots)?;
        match self.flavor {
            Flavor::Exact | Flavor::GeneralQes { .. } => {
                let (c1, c0) = self.linear_coefficients();
                let mut out = Vec::with_capacity(roots.len());
                for (k, &zk) in roots.iter().enumerate() {
                    let mut sum = 0.0;
                    for (l, &zl) in roots.iter().enumerate() {
                        if l != k {
                            sum += (zk * zk - self.lambda) / (zk - zl);
                        }
                    }
                    out.push(sum + c1 * zk + c0);
                }
                Ok(out)
            }
            Flavor::CoulombSinusoidal { b } => {
                if roots.iter().any(|&x| x <= 0.0) {
                    return Err(Error::Numerical(
                        "sinusoidal Coulomb roots must be positive".into(),
                    ));
                }
                let mut out = Vec::with_capacity(roots.len());
                for (k, &xk) in roots.iter().enumerate() {
                    let mut sum = 0.0;
                    for (l, &xl) in roots.iter().enumerate() {
                        if l != k {
                            sum += 1.0 / (xk - xl);
                        }
                    }
                    out.push(sum + self.a / xk - b);
                }
                Ok(out)
            }
        }
    }

    pub fn residual_norm(&self, roots: &[f64]) -> Result<f64> {
        Ok(self
            .residual(roots)?
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs())))
    }

    /// Analytic Jacobian of the residual.
    pub fn jacobian(&self, roots: &[f64]) -> Result<Vec<Vec<f64>>> {
        check_distinct(roots)?;
        let n = roots.len();
        let mut jac = vec![vec![0.0; n]; n];
        match self.flavor {
            Flavor::Exact | Flavor::GeneralQes { .. } => {
                let (c1, _) = self.linear_coefficients();
                for (k, &zk) in roots.iter().enumerate() {
                    let mut diag = c1;
                    for (l, &zl) in roots.iter().enumerate() {
                        if l != k {
                            let d = zk - zl;
                            diag += (2.0 * zk * d - (zk * zk - self.lambda)) / (d * d);
                            jac[k][l] = (zk * zk - self.lambda) / (d * d);
                        }
                    }
                    jac[k][k] = diag;
                }
            }
            Flavor::CoulombSinusoidal { .. } => {
                for (k, &xk) in roots.iter().enumerate() {
                    let mut diag = -self.a / (xk * xk);
                    for (l, &xl) in roots.iter().enumerate() {
                        if l != k {
                            let d = xk - xl;
                            diag -= 1.0 / (d * d);
                            jac[k][l] = 1.0 / (d * d);
                        }
                    }
                    jac[k][k] = diag;
                }
            }
        }
        Ok(jac)
    }

    /// Deterministic starting roots: a closed form for `N = 1`, otherwise a
    /// model-aware spread matched to the known root sum.
    pub fn seed(&self) -> Vec<f64> {
        match self.n {
            0 => Vec::new(),
            1 => vec![self.single_root()],
            _ => self.spread_seed(),
        }
    }

    fn single_root(&self) -> f64 {
        match self.flavor {
            Flavor::Exact | Flavor::GeneralQes { .. } => {
                let (c1, c0) = self.linear_coefficients();
                if c1 == 0.0 {
                    0.0
                } else {
                    -c0 / c1
                }
            }
            Flavor::CoulombSinusoidal { b } => self.a / b,
        }
    }

    /// Root sum of the converged configuration, from summing the system
    /// over k (pair terms cancel antisymmetrically).
    fn root_sum(&self) -> f64 {
        let nf = self.n as f64;
        match self.flavor {
            Flavor::Exact | Flavor::GeneralQes { .. } => {
                let (c1, c0) = self.linear_coefficients();
                let denom = nf - 1.0 + c1;
                if denom == 0.0 {
                    0.0
                } else {
                    -nf * c0 / denom
                }
            }
            Flavor::CoulombSinusoidal { .. } => f64::NAN,
        }
    }

    fn spread_seed(&self) -> Vec<f64> {
        let n = self.n;
        let nf = n as f64;
        match self.flavor {
            Flavor::CoulombSinusoidal { b } => {
                // x_k = c·k with c chosen so the sum rule Σ 1/x_k = bN/A holds.
                let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
                let c = self.a * harmonic / (b * nf);
                (1..=n).map(|k| c * k as f64).collect()
            }
            Flavor::Exact | Flavor::GeneralQes { .. } => {
                let mean = self.root_sum() / nf;
                if self.lambda == 1.0 && mean.abs() < 1.0 {
                    // Rosen-Morse II type: roots confined to (−1, 1).
                    let spread = 0.85 * (1.0 - mean.abs());
                    (0..n)
                        .map(|k| {
                            let t = std::f64::consts::PI * (2.0 * (n - k) as f64 - 1.0)
                                / (2.0 * nf);
                            mean + spread * t.cos()
                        })
                        .collect()
                } else if self.lambda == 1.0 && mean > 1.0 {
                    // Eckart type: roots in (1, ∞), linear spread about the mean.
                    (1..=n)
                        .map(|k| 1.0 + (mean - 1.0) * 2.0 * k as f64 / (nf + 1.0))
                        .collect()
                } else if self.lambda == -1.0 {
                    // Rosen-Morse I type: cot of equally spaced nodes, recentered.
                    let mut seed: Vec<f64> = (1..=n)
                        .map(|k| {
                            let x = std::f64::consts::PI * k as f64 / (nf + 1.0);
                            x.cos() / x.sin()
                        })
                        .collect();
                    seed.sort_by(|p, q| p.partial_cmp(q).unwrap());
                    let shift = mean - seed.iter().sum::<f64>() / nf;
                    seed.iter().map(|z| z + shift).collect()
                } else {
                    // Coulomb type (λ = 0): positive linear spread about the mean.
                    (1..=n)
                        .map(|k| mean * 2.0 * k as f64 / (nf + 1.0))
                        .collect()
                }
            }
        }
    }

    /// Solve the system to [`RESIDUAL_TOL`].  `N = 0` returns the empty set
    /// immediately.  Deterministic for a given strategy.
    pub fn solve(&self, seed: SeedStrategy) -> Result<RootSet> {
        if self.n == 0 {
            return Ok(RootSet::empty());
        }
        let attempt = match seed {
            SeedStrategy::Explicit(z0) => newton(self, z0),
            SeedStrategy::Homotopy => self.homotopy(),
            SeedStrategy::Auto => {
                let mut z0 = self.seed();
                relax(self, &mut z0);
                newton(self, z0).or_else(|_| self.homotopy())
            }
        };
        let (roots, residual_norm, iterations) = attempt?;
        let set = RootSet::new(roots, residual_norm, iterations)?;
        if let Some(kind) = self.model {
            // Converged but unphysical configurations count as failures.
            if admissibility_violation(kind, &set.roots).is_some() {
                return Err(Error::ConvergenceFailure {
                    iterations,
                    residual: residual_norm,
                    best: set.roots,
                });
            }
        }
        Ok(set)
    }

    /// Grow from one root to N, re-converging after each insertion.  The
    /// intermediate stages share the final stage's linear coefficients, so
    /// the last stage is exactly the target system.
    fn homotopy(&self) -> Result<(Vec<f64>, f64, usize)> {
        let stage = |m: usize| -> BaeProblem {
            let mut p = *self;
            p.n = m;
            if let Flavor::Exact = self.flavor {
                // Freeze the target coefficients while the root count grows.
                let (c1, c0) = self.linear_coefficients();
                p.flavor = Flavor::GeneralQes { a1: c1 - 1.0, a0: c0 };
            }
            p
        };
        let mut z = vec![stage(1).single_root()];
        let mut total_iters = 0usize;
        for m in 2..=self.n {
            let problem = stage(m);
            let span = z.last().unwrap() - z.first().unwrap();
            let gap = 0.5 * (1.0 + span / m as f64);
            let mut candidates: Vec<f64> = vec![z.last().unwrap() + gap, z.first().unwrap() - gap];
            for w in z.windows(2) {
                candidates.push(0.5 * (w[0] + w[1]));
            }
            let mut solved = None;
            for cand in candidates {
                let mut trial = z.clone();
                trial.push(cand);
                trial.sort_by(|p, q| p.partial_cmp(q).unwrap());
                if let Ok((roots, _, iters)) = newton(&problem, trial) {
                    total_iters += iters;
                    solved = Some(roots);
                    break;
                }
            }
            z = solved.ok_or_else(|| Error::ConvergenceFailure {
                iterations: total_iters,
                residual: f64::INFINITY,
                best: z.clone(),
            })?;
        }
        // Final polish against the target flavor itself.
        let (roots, norm, iters) = newton(self, z)?;
        Ok((roots, norm, total_iters + iters))
    }
}

fn check_distinct(roots: &[f64]) -> Result<()> {
    let scale = roots.iter().fold(0.0f64, |m, z| m.max(z.abs()));
    for (k, &zk) in roots.iter().enumerate() {
        for &zl in roots.iter().skip(k + 1) {
            if (zk - zl).abs() <= 1e-14 * (1.0 + scale) {
                return Err(Error::SingularRoots {
                    separation: (zk - zl).abs(),
                });
            }
        }
    }
    Ok(())
}

/// Physical coordinate range of the roots for each model; returns the size
/// of the worst violation, if any.
fn admissibility_violation(kind: ModelKind, roots: &[f64]) -> Option<f64> {
    let mut worst = f64::NEG_INFINITY;
    for &z in roots {
        let v = match kind {
            ModelKind::Coulomb => -z,              // need z > 0
            ModelKind::Eckart => 1.0 - z,          // need z > 1
            ModelKind::RosenMorseII => z.abs() - 1.0, // need |z| < 1
            ModelKind::RosenMorseI => {
                if z.is_finite() {
                    -1.0
                } else {
                    1.0
                }
            }
        };
        worst = worst.max(v);
    }
    (worst >= 0.0).then_some(worst)
}

/// A few sweeps of coordinate-wise 1-D Newton, keeping the ordering intact.
/// Cheap preconditioning that pulls crude seeds into the Newton basin.
fn relax(problem: &BaeProblem, z: &mut [f64]) {
    let n = z.len();
    if n < 2 {
        return;
    }
    for _ in 0..3 {
        for k in 0..n {
            for _ in 0..4 {
                let r = match problem.residual(z) {
                    Ok(r) => r,
                    Err(_) => return,
                };
                let jac = match problem.jacobian(z) {
                    Ok(j) => j,
                    Err(_) => return,
                };
                if jac[k][k] == 0.0 {
                    break;
                }
                let mut step = -r[k] / jac[k][k];
                // Stay strictly between the neighbours.
                let lo = if k > 0 { z[k - 1] } else { f64::NEG_INFINITY };
                let hi = if k + 1 < n { z[k + 1] } else { f64::INFINITY };
                let margin = 0.2;
                let max_up = if hi.is_finite() { margin * (hi - z[k]) } else { f64::INFINITY };
                let max_down = if lo.is_finite() { margin * (z[k] - lo) } else { f64::INFINITY };
                step = step.clamp(-max_down.max(0.0), max_up.max(0.0));
                if !step.is_finite() || step.abs() < 1e-14 * (1.0 + z[k].abs()) {
                    break;
                }
                z[k] += step;
            }
        }
    }
}

/// Damped Newton with step-halving line search and a coincidence guard.
fn newton(problem: &BaeProblem, mut z: Vec<f64>) -> Result<(Vec<f64>, f64, usize)> {
    let mut norm = match problem.residual_norm(&z) {
        Ok(v) => v,
        Err(_) => f64::INFINITY,
    };
    let mut best = (z.clone(), norm);
    let mut perturb_events = 0usize;

    for iter in 1..=MAX_ITER {
        if norm < RESIDUAL_TOL {
            return Ok((z, norm, iter - 1));
        }
        let residual = problem.residual(&z)?;
        let jac = problem.jacobian(&z)?;
        let rhs: Vec<f64> = residual.iter().map(|r| -r).collect();
        let step = solve_linear(jac, rhs)?;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = z.iter().zip(&step).map(|(zi, si)| zi + t * si).collect();
            let scale = trial.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mut sorted = trial.clone();
            sorted.sort_by(|p, q| p.partial_cmp(q).unwrap());
            if sorted.len() > 1 && min_separation(&sorted) <= 1e-12 * (1.0 + scale) {
                // Two roots collapsing: perturb and restart the step.
                perturb_events += 1;
                if perturb_events > MAX_PERTURB_EVENTS {
                    return Err(Error::SingularRoots {
                        separation: min_separation(&sorted),
                    });
                }
                for (i, v) in z.iter_mut().enumerate() {
                    *v += 1e-8 * (i as f64 + 1.0) * (1.0 + scale);
                }
                accepted = true;
                norm = problem.residual_norm(&z).unwrap_or(f64::INFINITY);
                break;
            }
            match problem.residual_norm(&trial) {
                Ok(new_norm) if new_norm.is_finite() && new_norm < norm => {
                    z = trial;
                    norm = new_norm;
                    accepted = true;
                    break;
                }
                _ => t *= 0.5,
            }
        }
        if norm < best.1 {
            best = (z.clone(), norm);
        }
        if !accepted {
            return Err(Error::ConvergenceFailure {
                iterations: iter,
                residual: best.1,
                best: best.0,
            });
        }
    }
    if norm < RESIDUAL_TOL {
        return Ok((z, norm, MAX_ITER));
    }
    Err(Error::ConvergenceFailure {
        iterations: MAX_ITER,
        residual: best.1,
        best: best.0,
    })
}

/// Gaussian elimination with partial pivoting; the systems are N ≤ ~20.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot_row][col].abs() < 1e-300 {
            return Err(Error::Numerical("singular Jacobian".into()));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut sum = b[row];
        for k in row + 1..n {
            sum -= a[row][k] * x[k];
        }
        x[row] = sum / a[row][row];
    }
    Ok(x)
}
