//! Laguerre and Jacobi polynomials and their roots.
//!
//! The bound-state root systems reduce to classical orthogonal polynomials:
//!
//! * Coulomb: scaled roots of `L_N^{γ-1}(y)` with `γ = 2A`, mapped through
//!   `x = (A+N) y / (2B)` and `z = 1/x`;
//! * Eckart / Rosen-Morse II: roots of `P_N^{(α,β)}(z)` directly in `z`;
//! * Rosen-Morse I: roots of a complex-parameter Jacobi polynomial with
//!   `β = conj(α)` in the rotated variable `y = iz`.
//!
//! Evaluation uses the standard three-term recurrences in the
//! hypergeometric normalization (the normalization is irrelevant here —
//! only roots are consumed).  Roots come from the companion matrix of the
//! monic polynomial, diagonalized by a shifted QR iteration for complex
//! Hessenberg matrices, then polished by Newton to ~1e−14.  Complex
//! arithmetic is confined to this module.

use num_complex::Complex64;

use crate::bae::{BaeProblem, RootSet};
use crate::error::{Error, Result};
use crate::models::{Model, ModelKind};

/// Degree and upper index of a generalized Laguerre polynomial `L_n^a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    pub n: usize,
    pub a: f64,
}

/// Degree and (possibly complex) indices of a Jacobi polynomial `P_n^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: usize,
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// `L_n^a(y)` by the three-term recurrence.
pub fn laguerre_eval(p: &LaguerreParams, y: f64) -> f64 {
    if p.n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + p.a - y;
    for k in 1..p.n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + p.a - y) * cur - (kf + p.a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dy L_n^a(y) = −L_{n−1}^{a+1}(y)`.
pub fn laguerre_deriv(p: &LaguerreParams, y: f64) -> f64 {
    if p.n == 0 {
        return 0.0;
    }
    -laguerre_eval(
        &LaguerreParams {
            n: p.n - 1,
            a: p.a + 1.0,
        },
        y,
    )
}

/// `P_n^{(α,β)}(z)` by the three-term recurrence, in complex arithmetic.
pub fn jacobi_eval(p: &JacobiParams, z: Complex64) -> Complex64 {
    let (alpha, beta) = (p.alpha, p.beta);
    if p.n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = (alpha + 1.0) + (alpha + beta + 2.0) * (z - 1.0) * 0.5;
    for k in 2..=p.n {
        let kf = k as f64;
        let n2ab = 2.0 * kf + alpha + beta;
        let denom = 2.0 * kf * (kf + alpha + beta) * (n2ab - 2.0);
        let c1 = (n2ab - 1.0) * ((n2ab) * (n2ab - 2.0) * z + alpha * alpha - beta * beta);
        let c2 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * n2ab;
        let next = (c1 * cur - c2 * prev) / denom;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dz P_n^{(α,β)}(z) = (n+α+β+1)/2 · P_{n−1}^{(α+1,β+1)}(z)`.
pub fn jacobi_deriv(p: &JacobiParams, z: Complex64) -> Complex64 {
    if p.n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let shifted = JacobiParams {
        n: p.n - 1,
        alpha: p.alpha + 1.0,
        beta: p.beta + 1.0,
    };
    (p.n as f64 + p.alpha + p.beta + 1.0) * 0.5 * jacobi_eval(&shifted, z)
}

/// Ascending real roots of `L_n^a` (classical range `a > −1`).
pub fn laguerre_roots(p: &LaguerreParams) -> Result<Vec<f64>> {
    if p.n == 0 {
        return Ok(Vec::new());
    }
    if p.a <= -1.0 {
        return Err(Error::Numerical(format!(
            "Laguerre index a = {} must exceed -1 for real simple roots",
            p.a
        )));
    }
    let coeffs = laguerre_coefficients(p);
    let raw = roots_from_coefficients(&coeffs)?;
    let mut out = Vec::with_capacity(p.n);
    for r in raw {
        let scale = 1.0 + r.norm();
        if r.im.abs() > 1e-8 * scale {
            return Err(Error::Numerical(format!(
                "Laguerre companion produced a complex root {r}"
            )));
        }
        // Real Newton polish.
        let mut y = r.re;
        for _ in 0..40 {
            let f = laguerre_eval(p, y);
            let df = laguerre_deriv(p, y);
            if df == 0.0 {
                break;
            }
            let step = f / df;
            y -= step;
            if step.abs() <= 1e-15 * (1.0 + y.abs()) {
                break;
            }
        }
        out.push(y);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// Roots of `P_n^{(α,β)}`, sorted by real part then imaginary part.
pub fn jacobi_roots(p: &JacobiParams) -> Result<Vec<Complex64>> {
    if p.n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = jacobi_coefficients(p)?;
    let raw = roots_from_coefficients(&coeffs)?;
    let mut out = Vec::with_capacity(p.n);
    for r in raw {
        let mut z = r;
        for _ in 0..40 {
            let f = jacobi_eval(p, z);
            let df = jacobi_deriv(p, z);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        out.push(z);
    }
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(out)
}

/// Bethe-ansatz roots of a model level computed through the classical
/// polynomial reductions — the independent check on [`BaeProblem::solve`].
pub fn bae_roots_via_polynomials(model: &Model, n: usize) -> Result<RootSet> {
    if n == 0 {
        return Ok(RootSet::empty());
    }
    let level = model.spectral_level(n)?;
    let params = model.params();
    let roots: Vec<f64> = match model.kind() {
        ModelKind::Coulomb => {
            let gamma = level.laguerre_gamma.expect("Coulomb level carries gamma");
            let y = laguerre_roots(&LaguerreParams { n, a: gamma - 1.0 })?;
            let scale = (params.a + n as f64) / (2.0 * params.b);
            y.iter().map(|y| 1.0 / (scale * y)).collect()
        }
        ModelKind::Eckart | ModelKind::RosenMorseII => {
            let jp = jacobi_from_level(n, level.jacobi_alpha, level.jacobi_beta);
            let roots = jacobi_roots(&jp)?;
            realize(&roots, |r| (r.re, r.im))?
        }
        ModelKind::RosenMorseI => {
            // Roots live at y = iz; z = −i·y must come out real.
            let jp = jacobi_from_level(n, level.jacobi_alpha, level.jacobi_beta);
            let roots = jacobi_roots(&jp)?;
            realize(&roots, |r| (r.im, r.re))?
        }
    };
    // Residual of the exact system at these roots doubles as metadata.
    let problem = BaeProblem::for_model(model, n)?;
    let set = RootSet::new(roots, 0.0, 0)?;
    let residual_norm = problem.residual_norm(&set.roots)?;
    Ok(RootSet {
        residual_norm,
        ..set
    })
}

fn jacobi_from_level(
    n: usize,
    alpha: Option<(f64, f64)>,
    beta: Option<(f64, f64)>,
) -> JacobiParams {
    let (ar, ai) = alpha.expect("level carries Jacobi alpha");
    let (br, bi) = beta.expect("level carries Jacobi beta");
    JacobiParams {
        n,
        alpha: Complex64::new(ar, ai),
        beta: Complex64::new(br, bi),
    }
}

/// Splits each root into (wanted real part, residual imaginary part) and
/// insists the latter is negligible.
fn realize(roots: &[Complex64], split: impl Fn(&Complex64) -> (f64, f64)) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let (re, im) = split(r);
        if im.abs() > 1e-10 * (1.0 + r.norm()) {
            return Err(Error::Numerical(format!(
                "polynomial root {r} is not real within tolerance"
            )));
        }
        out.push(re);
    }
    Ok(out)
}

/// Monic coefficients (constant first, excluding the leading 1) of `L_n^a`.
fn laguerre_coefficients(p: &LaguerreParams) -> Vec<Complex64> {
    // Recurrence on coefficient vectors in y.
    let n = p.n;
    let mut prev = vec![1.0]; // L_0
    let mut cur = vec![1.0 + p.a, -1.0]; // L_1
    if n == 1 {
        return monicize_real(&cur);
    }
    for k in 1..n {
        let kf = k as f64;
        let mut next = vec![0.0; k + 2];
        // (2k+1+a−y)·cur
        for (i, &coef) in cur.iter().enumerate() {
            next[i] += (2.0 * kf + 1.0 + p.a) * coef;
            next[i + 1] -= coef;
        }
        // −(k+a)·prev
        for (i, &coef) in prev.iter().enumerate() {
            next[i] -= (kf + p.a) * coef;
        }
        for coef in next.iter_mut() {
            *coef /= kf + 1.0;
        }
        prev = cur;
        cur = next;
    }
    monicize_real(&cur)
}

fn monicize_real(coeffs: &[f64]) -> Vec<Complex64> {
    let lead = *coeffs.last().unwrap();
    coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| Complex64::new(c / lead, 0.0))
        .collect()
}

/// Monic coefficients (constant first, excluding the leading 1) of `P_n^{(α,β)}`.
fn jacobi_coefficients(p: &JacobiParams) -> Result<Vec<Complex64>> {
    let (alpha, beta) = (p.alpha, p.beta);
    let one = Complex64::new(1.0, 0.0);
    let mut prev = vec![one]; // P_0
    let mut cur = vec![
        (alpha + 1.0) - (alpha + beta + 2.0) * 0.5,
        (alpha + beta + 2.0) * 0.5,
    ]; // P_1
    if p.n == 1 {
        let lead = cur[1];
        return Ok(vec![cur[0] / lead]);
    }
    for k in 2..=p.n {
        let kf = k as f64;
        let n2ab = 2.0 * kf + alpha + beta;
        let denom = 2.0 * kf * (kf + alpha + beta) * (n2ab - 2.0);
        if denom.norm() < 1e-12 {
            return Err(Error::Numerical(format!(
                "degenerate Jacobi recurrence at degree {k} (α+β = {})",
                alpha + beta
            )));
        }
        let az = (n2ab - 1.0) * n2ab * (n2ab - 2.0); // coefficient of z·P_{k-1}
        let a0 = (n2ab - 1.0) * (alpha * alpha - beta * beta);
        let c2 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * n2ab;
        let mut next = vec![Complex64::new(0.0, 0.0); k + 1];
        for (i, &coef) in cur.iter().enumerate() {
            next[i] += a0 * coef;
            next[i + 1] += az * coef;
        }
        for (i, &coef) in prev.iter().enumerate() {
            next[i] -= c2 * coef;
        }
        for coef in next.iter_mut() {
            *coef /= denom;
        }
        prev = cur;
        cur = next;
    }
    let lead = *cur.last().unwrap();
    if lead.norm() == 0.0 {
        return Err(Error::Numerical(
            "Jacobi polynomial has vanishing leading coefficient".into(),
        ));
    }
    Ok(cur[..cur.len() - 1].iter().map(|c| c / lead).collect())
}

/// Roots of the monic polynomial `z^n + c_{n−1} z^{n−1} + … + c_0` via the
/// eigenvalues of its companion matrix.
fn roots_from_coefficients(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut h = vec![vec![zero; n]; n];
    for i in 1..n {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for (i, &c) in coeffs.iter().enumerate() {
        h[i][n - 1] = -c;
    }
    hessenberg_eigenvalues(h)
}

/// Eigenvalues of a complex upper-Hessenberg matrix by explicitly shifted
/// QR with Givens rotations and deflation.
fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut stalled = 0usize;
    let mut total = 0usize;
    let max_total = 80 * n + 200;

    loop {
        // Find the active block: walk up until a negligible subdiagonal.
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[lo][lo - 1].norm() <= f64::EPSILON * s {
                h[lo][lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            // 1×1 block deflates to an eigenvalue.
            eigs.push(h[hi][hi]);
            stalled = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }

        total += 1;
        stalled += 1;
        if total > max_total {
            return Err(Error::Numerical(
                "companion-matrix QR iteration did not converge".into(),
            ));
        }
        let shift = if stalled % 16 == 0 {
            // Exceptional shift to break rare cycling.
            h[hi][hi] + Complex64::new(1.5 * h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(eigs)
}

/// Eigenvalue of the trailing 2×2 block closest to the corner entry.
fn wilkinson_shift(h: &[Vec<Complex64>], hi: usize) -> Complex64 {
    let a = h[hi - 1][hi - 1];
    let b = h[hi - 1][hi];
    let c = h[hi][hi - 1];
    let d = h[hi][hi];
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One explicit QR iteration `H ← R Q + σI` on the active block `lo..=hi`.
fn qr_step(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[i][i] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let f = h[k][k];
        let g = h[k + 1][k];
        let (c, s) = givens(f, g);
        for col in k..=hi {
            let a = h[k][col];
            let b = h[k + 1][col];
            h[k][col] = c * a + s * b;
            h[k + 1][col] = -s.conj() * a + c * b;
        }
        rotations.push((k, c, s));
    }
    for &(k, c, s) in &rotations {
        let bottom = (k + 2).min(hi);
        for row in lo..=bottom {
            let a = h[row][k];
            let b = h[row][k + 1];
            h[row][k] = c * a + s.conj() * b;
            h[row][k + 1] = -s * a + c * b;
        }
    }
    for i in lo..=hi {
        h[i][i] += shift;
    }
}

/// Complex Givens rotation with real cosine: zeroes `g` against `f`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let fa = f.norm();
    let r = (fa * fa + g.norm_sqr()).sqrt();
    let c = fa / r;
    let s = (f / fa) * g.conj() / r;
    (c, s)
}
