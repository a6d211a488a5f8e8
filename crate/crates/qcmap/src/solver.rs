//! Principal solutions of the Beltrami equation `∂̄f = μ ∂f`.
//!
//! The solver runs the classical fixed-point iteration for the density
//! `ω = ∂̄f`:
//!
//! ```text
//! ω ← μ·S[ω] + μ,      f = z + C[ω],
//! ```
//!
//! with the spectral Beurling and Cauchy transforms of
//! [`crate::transforms`]. For `sup|μ| = k < 1` the increments contract
//! geometrically in grid ℓ² (the Beurling multiplier has unit modulus),
//! and the iteration stops when the sup-norm step falls below
//! [`STEP_TOLERANCE`] or fails after [`MAX_ITERATIONS`].

use crate::error::{QcError, Result};
use crate::grid::{GridField, GridSpec};
use crate::map::DiscreteMap;
use crate::transforms::SpectralEngine;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Iteration cap for the Neumann fixed point.
pub const MAX_ITERATIONS: usize = 200;
/// Sup-norm step size below which the iteration is declared converged.
pub const STEP_TOLERANCE: f64 = 1e-10;

/// A Beltrami coefficient sampled on a grid: `sup|μ| < 1` and support
/// inside the closed unit disk.
#[derive(Debug, Clone)]
pub struct BeltramiField {
    pub field: GridField,
    /// Maximum modulus over the grid.
    pub sup: f64,
}

impl BeltramiField {
    /// Validating constructor: rejects `sup|μ| ≥ 1` and any sample of
    /// modulus above `1e-13` outside the closed unit disk.
    pub fn new(field: GridField) -> Result<Self> {
        let mut sup = 0.0f64;
        let n = field.spec.n;
        for j in 0..n {
            for k in 0..n {
                let v = field.at(j, k).norm();
                if !v.is_finite() {
                    return Err(QcError::Parameter("coefficient has a non-finite sample".into()));
                }
                sup = sup.max(v);
                if v > 1e-13 && field.spec.node(j, k).norm() > 1.0 {
                    return Err(QcError::Parameter(format!(
                        "coefficient supported outside the closed unit disk at {} (modulus {v:.3e})",
                        field.spec.node(j, k)
                    )));
                }
            }
        }
        if sup >= 1.0 {
            return Err(QcError::Parameter(format!(
                "coefficient must satisfy sup|μ| < 1, got {sup}"
            )));
        }
        Ok(Self { field, sup })
    }

    /// Constructor for noisy estimated coefficients: samples outside the
    /// closed disk are zeroed, moduli above `cap` are scaled down to it.
    /// Returns the field and how many samples were clamped.
    pub fn with_clamp(mut field: GridField, cap: f64) -> Result<(Self, usize)> {
        if !(0.0..1.0).contains(&cap) {
            return Err(QcError::Parameter(format!("clamp cap must be in [0,1), got {cap}")));
        }
        let n = field.spec.n;
        let mut clamped = 0usize;
        for j in 0..n {
            for k in 0..n {
                let z = field.spec.node(j, k);
                let v = field.at_mut(j, k);
                if z.norm() > 1.0 {
                    *v = Complex64::new(0.0, 0.0);
                } else {
                    let m = v.norm();
                    if !m.is_finite() {
                        *v = Complex64::new(0.0, 0.0);
                        clamped += 1;
                    } else if m > cap {
                        *v *= cap / m;
                        clamped += 1;
                    }
                }
            }
        }
        Ok((Self::new(field)?, clamped))
    }
}

/// Diagnostics from one principal-solution run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Fixed-point iterations performed.
    pub iterations: usize,
    /// Sup norm of the last ω update.
    pub final_step: f64,
    /// ℓ² norms of successive increments, each divided by its
    /// predecessor; bounded by `sup|μ|` up to discretization slack.
    pub l2_ratios: Vec<f64>,
    /// Set when the coefficient reaches the margin of the periodic box.
    pub support_warning: Option<String>,
}

impl SolveReport {
    /// Report for a map that required no iteration (e.g. a hand-built
    /// grid correction in tests).
    pub fn trivial() -> Self {
        Self { iterations: 0, final_step: 0.0, l2_ratios: Vec::new(), support_warning: None }
    }
}

/// Solve `∂̄f = μ ∂f` for the principal solution `f(z) = z + O(1/z)`,
/// constructing a fresh spectral engine for the coefficient's grid.
pub fn principal_solution(mu: &BeltramiField) -> Result<DiscreteMap> {
    let engine = SpectralEngine::new(mu.field.spec);
    principal_solution_with(&engine, mu)
}

/// Same as [`principal_solution`] but reusing a prepared engine (the
/// engine's grid must match the coefficient's).
pub fn principal_solution_with(engine: &SpectralEngine, mu: &BeltramiField) -> Result<DiscreteMap> {
    if engine.spec != mu.field.spec {
        return Err(QcError::Parameter(format!(
            "engine grid {:?} does not match coefficient grid {:?}",
            engine.spec, mu.field.spec
        )));
    }
    let support_warning = engine.support_warning(&mu.field);
    let len = mu.field.spec.len();

    let mut omega = mu.field.clone();
    let mut prev_inc_l2: Option<f64> = None;
    let mut l2_ratios = Vec::new();
    let mut final_step = f64::INFINITY;
    let mut iterations = 0usize;
    let mut converged = false;

    for it in 1..=MAX_ITERATIONS {
        iterations = it;
        let s = engine.beurling(&omega);
        let mut step_sup = 0.0f64;
        let mut inc_l2 = 0.0f64;
        let mut next = Vec::with_capacity(len);
        for idx in 0..len {
            let v = mu.field.values[idx] * (s.values[idx] + 1.0);
            let d = v - omega.values[idx];
            step_sup = step_sup.max(d.norm());
            inc_l2 += d.norm_sqr();
            next.push(v);
        }
        let inc_l2 = inc_l2.sqrt();
        if let Some(p) = prev_inc_l2 {
            if p > 0.0 {
                l2_ratios.push(inc_l2 / p);
            }
        }
        prev_inc_l2 = Some(inc_l2);
        omega.values = next;
        final_step = step_sup;
        if step_sup < STEP_TOLERANCE {
            converged = true;
            break;
        }
    }

    if !converged {
        return Err(QcError::NoConvergence { iterations, last_step: final_step });
    }

    let correction = engine.cauchy(&omega);
    Ok(DiscreteMap::Grid {
        correction,
        report: SolveReport { iterations, final_step, l2_ratios, support_warning },
    })
}

/// Principal solution along the holomorphic disk of coefficients
/// `μ_λ = λ · (K+1)/(K-1) · μ`. At `λ = (K-1)/(K+1)` this recovers `μ`
/// itself, so the flow interpolates the given map from the identity.
pub fn flow_map(
    engine: &SpectralEngine,
    mu: &BeltramiField,
    lambda: Complex64,
    k: f64,
) -> Result<DiscreteMap> {
    if !(k.is_finite() && k > 1.0) {
        return Err(QcError::Parameter(format!("flow normalization needs K > 1, got {k}")));
    }
    let scale = lambda * ((k + 1.0) / (k - 1.0));
    let sup = scale.norm() * mu.sup;
    if sup >= 1.0 {
        return Err(QcError::Parameter(format!(
            "flow coefficient sup |λ|(K+1)/(K-1)·sup|μ| = {sup} is not below 1"
        )));
    }
    let mut field = mu.field.clone();
    for v in field.values.iter_mut() {
        *v *= scale;
    }
    principal_solution_with(engine, &BeltramiField::new(field)?)
}

/// Finite-difference estimate of a map's Beltrami coefficient on a grid.
#[derive(Debug, Clone)]
pub struct BeltramiEstimate {
    /// Estimated `μ = f_z̄ / f_z` at interior nodes (zero on the border
    /// ring and at flagged samples).
    pub field: GridField,
    /// Samples where `|f_z| ≤ 1e-8` made the quotient meaningless.
    pub flagged: usize,
}

/// Estimate `μ_f` by central differences of `f` over grid neighbors.
pub fn estimate_beltrami(f: impl Fn(Complex64) -> Complex64, spec: GridSpec) -> BeltramiEstimate {
    let n = spec.n;
    let values = GridField::from_fn(spec, f);
    let mut mu = GridField::zeros(spec);
    let mut flagged = 0usize;
    let two_h = 2.0 * spec.h();
    let i = Complex64::new(0.0, 1.0);
    for j in 1..n - 1 {
        for k in 1..n - 1 {
            let fx = (values.at(j + 1, k) - values.at(j - 1, k)) / two_h;
            let fy = (values.at(j, k + 1) - values.at(j, k - 1)) / two_h;
            let fz = 0.5 * (fx - i * fy);
            let fzbar = 0.5 * (fx + i * fy);
            if fz.norm() <= 1e-8 {
                flagged += 1;
            } else {
                *mu.at_mut(j, k) = fzbar / fz;
            }
        }
    }
    BeltramiEstimate { field: mu, flagged }
}

/// Deterministic random smooth coefficient: a trigonometric sum with
/// Gaussian coefficients over modes `|m₁|,|m₂| ≤ modes`, multiplied by a
/// C^∞ taper that is 1 for `r ≤ 0.8` and 0 for `r ≥ 0.95`, rescaled so
/// the grid sup is exactly `k_inf`.
pub fn random_beltrami(
    seed: u64,
    k_inf: f64,
    modes: usize,
    spec: GridSpec,
) -> Result<BeltramiField> {
    if !(0.0..1.0).contains(&k_inf) {
        return Err(QcError::Parameter(format!("k_inf must be in [0,1), got {k_inf}")));
    }
    if modes == 0 || modes > 16 {
        return Err(QcError::Parameter(format!("modes must be in 1..=16, got {modes}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss_pair = move || -> Complex64 {
        // Box–Muller; u1 shifted into (0,1] so the log is finite.
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * t.cos(), r * t.sin())
    };

    // Fixed draw order: m1 outer, m2 inner, (0,0) skipped.
    let m = modes as isize;
    let mut terms: Vec<(f64, f64, Complex64)> = Vec::new();
    for m1 in -m..=m {
        for m2 in -m..=m {
            if m1 == 0 && m2 == 0 {
                continue;
            }
            terms.push((m1 as f64, m2 as f64, gauss_pair()));
        }
    }

    let mut field = GridField::zeros(spec);
    let n = spec.n;
    for j in 0..n {
        for k in 0..n {
            let z = spec.node(j, k);
            let r = z.norm();
            if r >= 0.95 {
                continue;
            }
            let t = taper(r);
            let mut acc = Complex64::new(0.0, 0.0);
            for &(m1, m2, c) in &terms {
                let phase = std::f64::consts::PI * (m1 * z.re + m2 * z.im);
                acc += c * Complex64::from_polar(1.0, phase);
            }
            *field.at_mut(j, k) = t * acc;
        }
    }

    let sup = field.max_abs_where(|_| true);
    if sup > 0.0 {
        let scale = k_inf / sup;
        for v in field.values.iter_mut() {
            *v *= scale;
        }
    }
    BeltramiField::new(field)
}

fn bump(u: f64) -> f64 {
    if u > 0.0 { (-1.0 / u).exp() } else { 0.0 }
}

/// C^∞ taper in the radius: 1 for `r ≤ 0.8`, 0 for `r ≥ 0.95`.
fn taper(r: f64) -> f64 {
    let s = (0.95 - r) / 0.15;
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let a = bump(s);
        a / (a + bump(1.0 - s))
    }
}
