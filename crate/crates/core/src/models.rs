//! The four exactly solvable models on non-sinusoidal coordinates.
//!
//! Each model is defined by a coordinate map `z(x)` with `z'(x) = λ − z²`:
//!
//! | model          | z(x)    | λ  | domain of x | potential V(x)            |
//! |----------------|---------|----|-------------|---------------------------|
//! | Coulomb        | 1/x     | 0  | (0, ∞)      | A(A−1)z² − 2Bz            |
//! | Eckart         | coth x  | 1  | (0, ∞)      | A(A−1)z² − 2Bz            |
//! | Rosen-Morse II | tanh x  | 1  | (−∞, ∞)     | A(A+1)z² + 2Bz            |
//! | Rosen-Morse I  | cot x   | −1 | (0, π)      | A(A−1)z² + 2Bz            |
//!
//! with closed-form eigenvalues (units `ħ = 2m = 1`, scale factor 1):
//!
//! | model          | E_N                                  |
//! |----------------|--------------------------------------|
//! | Coulomb        | −B²/(A+N)²                           |
//! | Eckart         | −B²/(A+N)² − A(2N+1) − N²            |
//! | Rosen-Morse II | −B²/(A−N)² + A(2N+1) − N²            |
//! | Rosen-Morse I  | −B²/(A+N)² + A(2N+1) + N²            |
//!
//! The Rosen-Morse couplings follow the usual SUSY-literature sign
//! convention; internally they map onto one generic parameterization (see
//! [`RawParams`]) so that every model shares a single set of formulas.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the four models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    Coulomb,
    Eckart,
    RosenMorseII,
    RosenMorseI,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Coulomb,
        ModelKind::Eckart,
        ModelKind::RosenMorseII,
        ModelKind::RosenMorseI,
    ];

    /// λ in `z' = λ − z²`.
    pub fn lambda(self) -> f64 {
        match self {
            ModelKind::Coulomb => 0.0,
            ModelKind::Eckart | ModelKind::RosenMorseII => 1.0,
            ModelKind::RosenMorseI => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Coulomb => "coulomb",
            ModelKind::Eckart => "eckart",
            ModelKind::RosenMorseII => "rm2",
            ModelKind::RosenMorseI => "rm1",
        }
    }

    /// Open interval on which the model lives: `(lower, upper)`.
    pub fn domain(self) -> (f64, f64) {
        match self {
            ModelKind::Coulomb | ModelKind::Eckart => (0.0, f64::INFINITY),
            ModelKind::RosenMorseII => (f64::NEG_INFINITY, f64::INFINITY),
            ModelKind::RosenMorseI => (0.0, PI),
        }
    }

    pub fn domain_description(self) -> String {
        let (lo, hi) = self.domain();
        format!("({lo}, {hi})")
    }

    /// Strict interior test; the endpoints themselves are excluded.
    pub fn contains(self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        x.is_finite() && x > lo && x < hi
    }
}

/// Real couplings `A`, `B` of a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
}

impl ModelParams {
    pub fn new(a: f64, b: f64) -> Self {
        ModelParams { a, b }
    }
}

/// Generic parameterization shared by all four models: the residual systems,
/// prepotentials and the generic energy formula are written in terms of
/// `(λ, a, b)` with
///
/// * Coulomb, Eckart: `a = A`, `b = B`
/// * Rosen-Morse II:  `a = −A`, `b = −B`
/// * Rosen-Morse I:   `a = A`, `b = −B`
///
/// so the user-facing couplings stay in the conventional signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
}

impl RawParams {
    /// First-order prepotential coefficient `A₁ = −(a+N)`.
    pub fn a1(&self, n: usize) -> f64 {
        -(self.a + n as f64)
    }

    /// Zeroth-order prepotential coefficient `A₀ = b/(a+N)`.
    pub fn a0(&self, n: usize) -> f64 {
        self.b / (self.a + n as f64)
    }

    /// Generic closed-form eigenvalue `E_N = −b²/(a+N)² − λ[a(2N+1) + N²]`.
    pub fn energy(&self, n: usize) -> f64 {
        let nf = n as f64;
        let an = self.a + nf;
        -self.b * self.b / (an * an) - self.lambda * (self.a * (2.0 * nf + 1.0) + nf * nf)
    }
}

/// Number of bound states admitted by a validated parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundStates {
    Finite(usize),
    Infinite,
}

impl BoundStates {
    pub fn admits(&self, n: usize) -> bool {
        match self {
            BoundStates::Finite(count) => n < *count,
            BoundStates::Infinite => true,
        }
    }

    pub fn count_up_to(&self, cap: usize) -> usize {
        match self {
            BoundStates::Finite(count) => (*count).min(cap),
            BoundStates::Infinite => cap,
        }
    }
}

/// One bound level: quantum number, energy and the orthogonal-polynomial
/// parameters of its polynomial factor.  Complex values are stored as
/// `(re, im)` pairs; complex arithmetic itself lives in [`crate::orthopoly`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLevel {
    pub n: usize,
    pub energy: f64,
    /// Jacobi α (Eckart, Rosen-Morse II: real; Rosen-Morse I: complex).
    pub jacobi_alpha: Option<(f64, f64)>,
    /// Jacobi β; the complex conjugate of α for Rosen-Morse I.
    pub jacobi_beta: Option<(f64, f64)>,
    /// Laguerre exponent γ = 2A (Coulomb only); the polynomial index is γ−1.
    pub laguerre_gamma: Option<f64>,
}

/// Coulomb couplings expressed through the orbital quantum number `l` and
/// the squared charge: `A = l + 1`, `B = e²/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenMapping {
    pub l: u32,
    pub e_squared: f64,
}

impl HydrogenMapping {
    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.l as f64 + 1.0, self.e_squared / 2.0)
    }

    /// γ = 2(l+1), the Laguerre exponent of the radial polynomial.
    pub fn gamma(&self) -> f64 {
        2.0 * (self.l as f64 + 1.0)
    }

    /// Scaled radial variable `y = e²x/(N+l+1)`.
    pub fn scaled_y(&self, x: f64, n: usize) -> f64 {
        self.e_squared * x / (n as f64 + self.l as f64 + 1.0)
    }

    /// Textbook hydrogenic energy `−e⁴ / 4(N+l+1)²`.
    pub fn energy(&self, n: usize) -> f64 {
        let m = n as f64 + self.l as f64 + 1.0;
        -self.e_squared * self.e_squared / (4.0 * m * m)
    }
}

/// Violated parameter inequalities; empty when the couplings are valid.
pub fn violations(kind: ModelKind, params: &ModelParams) -> Vec<String> {
    let (a, b) = (params.a, params.b);
    let mut out = Vec::new();
    if !a.is_finite() || !b.is_finite() {
        out.push("A and B must be finite".to_string());
        return out;
    }
    match kind {
        ModelKind::Coulomb => {
            if a <= 0.0 {
                out.push("A > 0".to_string());
            }
            if b <= 0.0 {
                out.push("B > 0".to_string());
            }
        }
        ModelKind::Eckart => {
            if a <= 0.0 {
                out.push("A > 0".to_string());
            }
            if b <= a * a {
                out.push("B > A^2".to_string());
            }
        }
        ModelKind::RosenMorseII => {
            if a <= 0.0 {
                out.push("A > 0".to_string());
            }
            if b.abs() >= a * a {
                out.push("|B| < A^2".to_string());
            }
        }
        ModelKind::RosenMorseI => {
            if a <= 0.0 {
                out.push("A > 0".to_string());
            }
        }
    }
    out
}

/// `Ok(())` iff the couplings satisfy the model's bound-state inequalities.
pub fn validate(kind: ModelKind, params: &ModelParams) -> Result<()> {
    let violations = violations(kind, params);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            model: kind.name(),
            violations,
        })
    }
}

/// The coordinate map `z(x)` (1/x, coth x, tanh x or cot x).
pub fn coordinate(kind: ModelKind, x: f64) -> Result<f64> {
    if !kind.contains(x) {
        return Err(Error::DomainViolation {
            model: kind.name(),
            x,
            domain: kind.domain_description(),
        });
    }
    Ok(match kind {
        ModelKind::Coulomb => 1.0 / x,
        ModelKind::Eckart => 1.0 / x.tanh(),
        ModelKind::RosenMorseII => x.tanh(),
        ModelKind::RosenMorseI => x.cos() / x.sin(),
    })
}

/// `z' = λ − z²`, expressed through `z` itself.
pub fn coordinate_derivative(kind: ModelKind, z: f64) -> f64 {
    kind.lambda() - z * z
}

/// Preimage `x` with `z(x) = z`, for admissible `z`.
pub fn coordinate_inverse(kind: ModelKind, z: f64) -> Result<f64> {
    let err = || Error::Numerical(format!("z = {z} has no preimage in the {} domain", kind.name()));
    match kind {
        ModelKind::Coulomb => {
            if z > 0.0 {
                Ok(1.0 / z)
            } else {
                Err(err())
            }
        }
        ModelKind::Eckart => {
            if z > 1.0 {
                Ok((1.0 / z).atanh())
            } else {
                Err(err())
            }
        }
        ModelKind::RosenMorseII => {
            if z.abs() < 1.0 {
                Ok(z.atanh())
            } else {
                Err(err())
            }
        }
        ModelKind::RosenMorseI => {
            if z.is_finite() {
                Ok(PI / 2.0 - z.atan())
            } else {
                Err(err())
            }
        }
    }
}

/// Antiderivative `∫ z dx` (ln x, ln sinh x, ln cosh x or ln sin x), in a
/// form that stays accurate for large |x|.
pub fn coordinate_antiderivative(kind: ModelKind, x: f64) -> Result<f64> {
    if !kind.contains(x) {
        return Err(Error::DomainViolation {
            model: kind.name(),
            x,
            domain: kind.domain_description(),
        });
    }
    Ok(match kind {
        ModelKind::Coulomb => x.ln(),
        ModelKind::Eckart => ln_sinh(x),
        ModelKind::RosenMorseII => ln_cosh(x),
        ModelKind::RosenMorseI => x.sin().ln(),
    })
}

/// ln sinh x for x > 0 without overflowing sinh.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// ln cosh x for any real x.
fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax - std::f64::consts::LN_2 + (-2.0 * ax).exp().ln_1p()
}

/// A model kind paired with validated couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Model {
    kind: ModelKind,
    params: ModelParams,
}

impl Model {
    /// Validates the couplings; construction is the single validation gate.
    pub fn new(kind: ModelKind, params: ModelParams) -> Result<Self> {
        validate(kind, &params)?;
        Ok(Model { kind, params })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    /// Generic `(λ, a, b)` form of the couplings.
    pub fn raw(&self) -> RawParams {
        let ModelParams { a, b } = self.params;
        let lambda = self.kind.lambda();
        match self.kind {
            ModelKind::Coulomb | ModelKind::Eckart => RawParams { lambda, a, b },
            ModelKind::RosenMorseII => RawParams { lambda, a: -a, b: -b },
            ModelKind::RosenMorseI => RawParams { lambda, a, b: -b },
        }
    }

    pub fn coordinate(&self, x: f64) -> Result<f64> {
        coordinate(self.kind, x)
    }

    /// `V(x)` in the user-facing sign convention.
    pub fn potential(&self, x: f64) -> Result<f64> {
        let z = coordinate(self.kind, x)?;
        Ok(self.potential_of_z(z))
    }

    /// `V` as a function of the coordinate `z`.
    pub fn potential_of_z(&self, z: f64) -> f64 {
        let raw = self.raw();
        raw.a * (raw.a - 1.0) * z * z - 2.0 * raw.b * z
    }

    /// Closed-form `E_N`.
    pub fn eigenvalue(&self, n: usize) -> Result<f64> {
        let bound = self.bound_states();
        if !bound.admits(n) {
            let count = match bound {
                BoundStates::Finite(c) => c,
                BoundStates::Infinite => unreachable!(),
            };
            return Err(Error::LevelOutOfRange {
                n,
                reason: format!(
                    "{} with A = {}, B = {} admits {count} bound state(s)",
                    self.kind.name(),
                    self.params.a,
                    self.params.b
                ),
            });
        }
        Ok(self.raw().energy(n))
    }

    /// How many bound levels the couplings admit.
    ///
    /// Eckart requires `B > (A+N)²` and Rosen-Morse II requires `N < A`
    /// together with `|B| < (A−N)²`; both are enforced by direct enumeration.
    pub fn bound_states(&self) -> BoundStates {
        let ModelParams { a, b } = self.params;
        match self.kind {
            ModelKind::Coulomb | ModelKind::RosenMorseI => BoundStates::Infinite,
            ModelKind::Eckart => {
                let mut n = 0usize;
                while b > (a + n as f64) * (a + n as f64) {
                    n += 1;
                }
                BoundStates::Finite(n)
            }
            ModelKind::RosenMorseII => {
                let mut n = 0usize;
                while (n as f64) < a && b.abs() < (a - n as f64) * (a - n as f64) {
                    n += 1;
                }
                BoundStates::Finite(n)
            }
        }
    }

    /// Ground-state energy, i.e. the constant subtracted in the SUSY
    /// convention where `E₀ = 0`.
    pub fn susy_shift(&self) -> f64 {
        self.raw().energy(0)
    }

    /// `E_N − E₀`; exactly zero for `N = 0`.
    pub fn susy_eigenvalue(&self, n: usize) -> Result<f64> {
        Ok(self.eigenvalue(n)? - self.susy_shift())
    }

    /// Energy where the continuum starts, if the model has one.
    pub fn continuum_threshold(&self) -> Option<f64> {
        let ModelParams { a, b } = self.params;
        match self.kind {
            ModelKind::Coulomb => Some(0.0),
            // V(∞) with coth → 1.
            ModelKind::Eckart => Some(a * (a - 1.0) - 2.0 * b),
            // min of the two asymptotes V(±∞) = A(A+1) ± 2B.
            ModelKind::RosenMorseII => Some(a * (a + 1.0) - 2.0 * b.abs()),
            ModelKind::RosenMorseI => None,
        }
    }

    /// Level data including the orthogonal-polynomial parameters.
    pub fn spectral_level(&self, n: usize) -> Result<SpectralLevel> {
        let energy = self.eigenvalue(n)?;
        let ModelParams { a, b } = self.params;
        let nf = n as f64;
        let (alpha, beta, gamma) = match self.kind {
            ModelKind::Coulomb => (None, None, Some(2.0 * a)),
            ModelKind::Eckart => {
                let s = -a - nf;
                let t = b / (a + nf);
                (Some((s + t, 0.0)), Some((s - t, 0.0)), None)
            }
            ModelKind::RosenMorseII => {
                let s = a - nf;
                let t = b / (a - nf);
                (Some((s + t, 0.0)), Some((s - t, 0.0)), None)
            }
            ModelKind::RosenMorseI => {
                let re = -a - nf;
                let im = b / (a + nf);
                // β = conj(α)
                (Some((re, -im)), Some((re, im)), None)
            }
        };
        Ok(SpectralLevel {
            n,
            energy,
            jacobi_alpha: alpha,
            jacobi_beta: beta,
            laguerre_gamma: gamma,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(kind: ModelKind, a: f64, b: f64) -> Model {
        Model::new(kind, ModelParams::new(a, b)).unwrap()
    }

    #[test]
    fn coordinate_values() {
        assert_eq!(coordinate(ModelKind::Coulomb, 2.0).unwrap(), 0.5);
        assert_eq!(coordinate(ModelKind::RosenMorseII, 0.0).unwrap(), 0.0);
        let coth1 = 1.0 / 1f64.tanh();
        assert!((coordinate(ModelKind::Eckart, 1.0).unwrap() - coth1).abs() < 1e-15);
        assert!((coth1 - 1.3130).abs() < 1e-4);
    }

    #[test]
    fn coordinate_domain_errors() {
        assert!(coordinate(ModelKind::Coulomb, 0.0).is_err());
        assert!(coordinate(ModelKind::Coulomb, -1.0).is_err());
        assert!(coordinate(ModelKind::Eckart, 0.0).is_err());
        assert!(coordinate(ModelKind::RosenMorseI, PI).is_err());
        assert!(coordinate(ModelKind::RosenMorseII, f64::INFINITY).is_err());
    }

    #[test]
    fn coordinate_derivative_values() {
        assert_eq!(coordinate_derivative(ModelKind::Coulomb, 3.0), -9.0);
        assert_eq!(coordinate_derivative(ModelKind::Eckart, 1.0), 0.0);
        assert_eq!(coordinate_derivative(ModelKind::RosenMorseI, 2.0), -5.0);
    }

    #[test]
    fn coordinate_inverse_round_trip() {
        for (kind, xs) in [
            (ModelKind::Coulomb, vec![0.3, 1.0, 7.5]),
            (ModelKind::Eckart, vec![0.2, 1.0, 4.0]),
            (ModelKind::RosenMorseII, vec![-2.0, 0.1, 3.0]),
            (ModelKind::RosenMorseI, vec![0.3, PI / 2.0, 2.8]),
        ] {
            for x in xs {
                let z = coordinate(kind, x).unwrap();
                let back = coordinate_inverse(kind, z).unwrap();
                assert!((back - x).abs() < 1e-12, "{kind:?} x = {x}");
            }
        }
    }

    /// Central finite differences of z(x) converge (by step halving) onto
    /// λ − z², for random points in each domain.
    #[test]
    fn coordinate_derivative_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for kind in ModelKind::ALL {
            for _ in 0..1000 {
                let x = match kind {
                    ModelKind::Coulomb | ModelKind::Eckart => rng.gen_range(0.2..8.0),
                    ModelKind::RosenMorseII => rng.gen_range(-6.0..6.0),
                    ModelKind::RosenMorseI => rng.gen_range(0.2..PI - 0.2),
                };
                let z = coordinate(kind, x).unwrap();
                let expected = coordinate_derivative(kind, z);
                // Step-halving until two FD estimates agree.
                let mut h = 1e-3;
                let mut prev = f64::NAN;
                let mut best = f64::NAN;
                for _ in 0..8 {
                    let fd = (coordinate(kind, x + h).unwrap()
                        - coordinate(kind, x - h).unwrap())
                        / (2.0 * h);
                    if (fd - prev).abs() < 1e-9 * (1.0 + fd.abs()) {
                        best = fd;
                        break;
                    }
                    prev = fd;
                    best = fd;
                    h *= 0.5;
                }
                assert!(
                    (best - expected).abs() < 1e-8 * (1.0 + expected.abs()),
                    "{kind:?} at x = {x}: fd = {best}, analytic = {expected}"
                );
            }
        }
    }

    #[test]
    fn potential_values() {
        let m = model(ModelKind::Coulomb, 1.0, 1.0);
        assert!((m.potential(2.0).unwrap() + 1.0).abs() < 1e-15);

        let m = model(ModelKind::RosenMorseII, 2.0, 1.0);
        assert_eq!(m.potential(0.0).unwrap(), 0.0);

        let m = model(ModelKind::Eckart, 2.0, 16.0);
        let c = 1.0 / 1f64.tanh();
        let expected = 2.0 * c * c - 32.0 * c;
        assert!((m.potential(1.0).unwrap() - expected).abs() < 1e-12);
        assert!((expected - (-38.57)).abs() < 2e-2);
    }

    #[test]
    fn eigenvalue_values() {
        assert_eq!(model(ModelKind::Coulomb, 1.0, 1.0).eigenvalue(0).unwrap(), -1.0);
        assert_eq!(model(ModelKind::Eckart, 2.0, 16.0).eigenvalue(0).unwrap(), -66.0);
        assert_eq!(
            model(ModelKind::RosenMorseII, 2.0, 1.0).eigenvalue(0).unwrap(),
            1.75
        );
        assert_eq!(model(ModelKind::RosenMorseI, 1.0, 0.0).eigenvalue(1).unwrap(), 4.0);
        let eckart1 = model(ModelKind::Eckart, 2.0, 16.0).eigenvalue(1).unwrap();
        assert!((eckart1 - (-256.0 / 9.0 - 7.0)).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_out_of_range() {
        let m = model(ModelKind::Eckart, 2.0, 16.0);
        assert!(m.eigenvalue(1).is_ok());
        assert!(matches!(m.eigenvalue(2), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn bound_state_counts() {
        assert_eq!(
            model(ModelKind::Eckart, 2.0, 16.0).bound_states(),
            BoundStates::Finite(2)
        );
        // B <= A^2 admits nothing; construct without the validation gate.
        let below = Model {
            kind: ModelKind::Eckart,
            params: ModelParams::new(2.0, 3.0),
        };
        assert_eq!(below.bound_states(), BoundStates::Finite(0));
        assert_eq!(
            model(ModelKind::Coulomb, 1.0, 1.0).bound_states(),
            BoundStates::Infinite
        );
        assert_eq!(
            model(ModelKind::RosenMorseII, 5.0, 3.0).bound_states(),
            BoundStates::Finite(4)
        );
        assert_eq!(
            model(ModelKind::RosenMorseI, 1.5, 2.0).bound_states(),
            BoundStates::Infinite
        );
    }

    #[test]
    fn susy_convention() {
        let m = model(ModelKind::Coulomb, 1.0, 1.0);
        assert_eq!(m.susy_eigenvalue(0).unwrap(), 0.0);
        assert!((m.susy_eigenvalue(1).unwrap() - 0.75).abs() < 1e-15);

        let e = model(ModelKind::Eckart, 2.0, 16.0);
        assert!((e.susy_eigenvalue(1).unwrap() - 275.0 / 9.0).abs() < 1e-12);
        assert!((275.0_f64 / 9.0 - 30.56).abs() < 1e-2);

        for kind in ModelKind::ALL {
            let m = match kind {
                ModelKind::Coulomb => model(kind, 2.5, 3.0),
                ModelKind::Eckart => model(kind, 2.0, 16.0),
                ModelKind::RosenMorseII => model(kind, 5.0, 3.0),
                ModelKind::RosenMorseI => model(kind, 1.5, 2.0),
            };
            assert_eq!(m.susy_eigenvalue(0).unwrap(), 0.0, "{kind:?}");
        }
    }

    #[test]
    fn validation_diagnostics() {
        let v = violations(ModelKind::Coulomb, &ModelParams::new(-1.0, 1.0));
        assert_eq!(v, vec!["A > 0".to_string()]);
        assert!(validate(ModelKind::Eckart, &ModelParams::new(2.0, 16.0)).is_ok());
        let v = violations(ModelKind::RosenMorseII, &ModelParams::new(2.0, 5.0));
        assert_eq!(v, vec!["|B| < A^2".to_string()]);
        assert!(Model::new(ModelKind::Coulomb, ModelParams::new(1.0, -2.0)).is_err());
    }

    /// E_N is strictly increasing in N over the valid range.
    #[test]
    fn eigenvalues_increase_with_n() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for kind in ModelKind::ALL {
            for _ in 0..50 {
                let m = loop {
                    let a = rng.gen_range(0.5..6.0);
                    let b = match kind {
                        ModelKind::Coulomb => rng.gen_range(0.1..8.0),
                        ModelKind::Eckart => rng.gen_range(1.0..2.5) * (a + 1.0) * (a + 1.0),
                        ModelKind::RosenMorseII => rng.gen_range(-0.9..0.9) * a * a,
                        ModelKind::RosenMorseI => rng.gen_range(-5.0..5.0),
                    };
                    if let Ok(m) = Model::new(kind, ModelParams::new(a, b)) {
                        break m;
                    }
                };
                let levels = m.bound_states().count_up_to(9);
                let mut prev = f64::NEG_INFINITY;
                for n in 0..levels {
                    let e = m.eigenvalue(n).unwrap();
                    assert!(e > prev, "{kind:?} {:?} N = {n}: {e} <= {prev}", m.params());
                    prev = e;
                }
            }
        }
    }

    /// E_N depends on B only through B², so the two Rosen-Morse II models
    /// with ±B have identical spectra.
    #[test]
    fn rm2_spectrum_is_even_in_b() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = rng.gen_range(1.0..8.0);
            let b = rng.gen_range(-0.95..0.95) * a * a;
            let plus = model(ModelKind::RosenMorseII, a, b);
            let minus = model(ModelKind::RosenMorseII, a, -b);
            assert_eq!(plus.bound_states(), minus.bound_states());
            for n in 0..plus.bound_states().count_up_to(8) {
                assert_eq!(
                    plus.eigenvalue(n).unwrap(),
                    minus.eigenvalue(n).unwrap(),
                    "A = {a}, B = {b}, N = {n}"
                );
            }
        }
    }

    #[test]
    fn hydrogen_mapping_energies() {
        for l in 0..4u32 {
            for e2 in [0.7, 2.0, 3.0] {
                let map = HydrogenMapping { l, e_squared: e2 };
                let m = Model::new(ModelKind::Coulomb, map.params()).unwrap();
                assert_eq!(map.gamma(), 2.0 * (l as f64 + 1.0));
                for n in 0..5 {
                    let closed = m.eigenvalue(n).unwrap();
                    assert!(
                        (closed - map.energy(n)).abs() < 1e-14 * closed.abs(),
                        "l = {l}, e² = {e2}, N = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn spectral_level_parameters() {
        // Eckart: α = −A−N+B/(A+N), β = −A−N−B/(A+N).
        let level = model(ModelKind::Eckart, 2.0, 16.0).spectral_level(1).unwrap();
        let (ar, ai) = level.jacobi_alpha.unwrap();
        let (br, bi) = level.jacobi_beta.unwrap();
        assert!((ar - (-3.0 + 16.0 / 3.0)).abs() < 1e-14);
        assert!((br - (-3.0 - 16.0 / 3.0)).abs() < 1e-14);
        assert_eq!((ai, bi), (0.0, 0.0));

        // Rosen-Morse I: β = conj(α).
        let level = model(ModelKind::RosenMorseI, 1.5, 2.0).spectral_level(2).unwrap();
        let (ar, ai) = level.jacobi_alpha.unwrap();
        let (br, bi) = level.jacobi_beta.unwrap();
        assert_eq!((ar, ai), (br, -bi));
        assert!((ar - (-3.5)).abs() < 1e-14);
        assert!((ai - (-2.0 / 3.5)).abs() < 1e-14);

        // Coulomb: Laguerre γ = 2A.
        let level = model(ModelKind::Coulomb, 2.5, 3.0).spectral_level(0).unwrap();
        assert_eq!(level.laguerre_gamma, Some(5.0));
        assert!(level.jacobi_alpha.is_none());
    }

    #[test]
    fn antiderivative_is_stable_at_large_x() {
        // ln sinh and ln cosh approach x − ln 2.
        let x = 400.0;
        let ls = coordinate_antiderivative(ModelKind::Eckart, x).unwrap();
        let lc = coordinate_antiderivative(ModelKind::RosenMorseII, x).unwrap();
        assert!((ls - (x - std::f64::consts::LN_2)).abs() < 1e-12);
        assert!((lc - (x - std::f64::consts::LN_2)).abs() < 1e-12);
        // And match the naive formula where sinh does not overflow.
        let x = 3.0;
        assert!(
            (coordinate_antiderivative(ModelKind::Eckart, x).unwrap() - x.sinh().ln()).abs()
                < 1e-14
        );
    }
}
