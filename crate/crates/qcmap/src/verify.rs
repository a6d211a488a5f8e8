//! Verification instruments for the sharp Hölder bound.
//!
//! A K-quasiconformal self-map of the unit disk with identity boundary
//! values (and likewise a principal map conformal outside the disk)
//! satisfies
//!
//! ```text
//! |f(z) - f(w)| ≤ 4^{1-1/K} |z - w|^{1/K}   for z, w in the disk,
//! ```
//!
//! and the constant cannot be lowered. This module estimates Hölder
//! constants by deterministic sup-quotient search, checks maps against
//! the bound, probes the Koebe and Harnack steps of the argument through
//! holomorphic flows, tabulates the comparison constants, and measures
//! dilatations and equation residuals on grids.

use crate::error::{QcError, Result};
use crate::geometry::ExtremalParams;
use crate::grid::{GridField, GridSpec};
use crate::map::DiscreteMap;
use crate::solver::{flow_map, BeltramiField};
use crate::transforms::SpectralEngine;
use num_complex::Complex64;
use rayon::prelude::*;

/// Pairs are sampled up to this radius; the sup over the open disk is
/// approached at the boundary but the quotient is evaluated strictly
/// inside.
pub const BOUNDARY_RADIUS: f64 = 1.0 - 1e-6;
/// Minimum pair separation: below round-off scale the quotient is noise.
pub const MIN_SEPARATION: f64 = 1e-9;
/// Relative tolerance for violation flags on closed-form maps.
pub const CLOSED_FORM_TOL: f64 = 1e-6;
/// Relative tolerance for violation flags on solver-backed maps
/// (dominated by grid interpolation).
pub const SOLVER_TOL: f64 = 5e-3;

/// The sharp constant `4^{1-1/K}`.
pub fn sharp_bound(k: f64) -> f64 {
    4.0f64.powf(1.0 - 1.0 / k)
}

/// Search effort for [`estimate_holder_constant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Radii in the coarse polar grid.
    pub radii: usize,
    /// Angles in the coarse polar grid.
    pub angles: usize,
    /// Coarse pairs kept as refinement seeds.
    pub top_seeds: usize,
    /// Pattern-search rounds per seed (each round either moves or halves
    /// the steps).
    pub refine_rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { radii: 64, angles: 128, top_seeds: 10, refine_rounds: 40 }
    }
}

impl SearchBudget {
    fn validate(&self) -> Result<()> {
        if self.radii == 0 || self.angles == 0 || self.top_seeds == 0 {
            return Err(QcError::Parameter(
                "search budget needs at least one radius, angle, and seed".into(),
            ));
        }
        if self.radii > 4096 || self.angles > 4096 {
            return Err(QcError::Parameter("search grid larger than 4096 per axis".into()));
        }
        Ok(())
    }
}

/// Result of a Hölder-constant estimation or bound check.
#[derive(Debug, Clone)]
pub struct HolderReport {
    pub k: f64,
    /// Family parameter when the map is an extremal-family member.
    pub r: Option<f64>,
    /// Largest quotient found: a certified lower bound for the supremum.
    pub estimate: f64,
    /// The sharp constant `4^{1-1/K}`.
    pub bound: f64,
    pub witness_z: Complex64,
    pub witness_w: Complex64,
    /// `estimate > bound·(1 + tol)`.
    pub violated: bool,
    /// Relative tolerance used for the flag.
    pub tol: f64,
    pub budget: SearchBudget,
}

impl HolderReport {
    pub fn ratio(&self) -> f64 {
        self.estimate / self.bound
    }
}

/// The Hölder quotient `|f(z) - f(w)| / |z - w|^{1/K}`.
pub fn holder_quotient(
    f: &DiscreteMap,
    z: Complex64,
    w: Complex64,
    k: f64,
) -> Result<f64> {
    if !(k.is_finite() && k >= 1.0) {
        return Err(QcError::Parameter(format!("quotient exponent needs K >= 1, got {k}")));
    }
    if z.norm() > 1.0 + 1e-12 || w.norm() > 1.0 + 1e-12 {
        return Err(QcError::Domain(format!("points must lie in the closed disk: {z}, {w}")));
    }
    let sep = (z - w).norm();
    if sep < MIN_SEPARATION {
        return Err(QcError::Domain(format!(
            "pair separation {sep:.3e} is below the minimum {MIN_SEPARATION:.0e}"
        )));
    }
    Ok((f.eval(z) - f.eval(w)).norm() / sep.powf(1.0 / k))
}

/// Log-scale search objective; monotone in the quotient.
fn objective(fz: Complex64, fw: Complex64, z: Complex64, w: Complex64, k: f64) -> f64 {
    (fz - fw).norm().ln() - (z - w).norm().ln() / k
}

fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(r, theta)
}

/// Estimate the Hölder constant of exponent `1/K` by scanning all pairs
/// from a polar grid (boundary radius included) and refining the best
/// seeds with a deterministic pattern search. The result is a certified
/// lower bound: the quotient recomputed at the reported witness pair.
pub fn estimate_holder_constant(
    f: &DiscreteMap,
    k: f64,
    budget: &SearchBudget,
) -> Result<HolderReport> {
    if !(k.is_finite() && k >= 1.0) {
        return Err(QcError::Parameter(format!("Hölder exponent needs K >= 1, got {k}")));
    }
    budget.validate()?;

    // Candidate points: polar grid plus, for extremal-family maps, the
    // analytic slit-endpoint pair where the supremum sits asymptotically.
    let mut points: Vec<Complex64> =
        Vec::with_capacity(budget.radii * budget.angles + 2);
    for i in 0..budget.radii {
        let r = (i + 1) as f64 / budget.radii as f64 * BOUNDARY_RADIUS;
        for j in 0..budget.angles {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / budget.angles as f64;
            points.push(polar(r, theta));
        }
    }
    if let DiscreteMap::Extremal(p) = f {
        let x0 = p.slit_endpoint();
        points.push(Complex64::new(x0, 0.0));
        points.push(Complex64::new(-x0, 0.0));
    }

    let values: Vec<Complex64> = points.iter().map(|&z| f.eval(z)).collect();

    // Best partner for each first index; deterministic regardless of the
    // parallel schedule because entry i depends only on i.
    struct Candidate {
        s: f64,
        i: usize,
        j: usize,
    }
    let mut candidates: Vec<Candidate> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let mut best = Candidate { s: f64::NEG_INFINITY, i, j: i };
            for j in (i + 1)..points.len() {
                if (points[i] - points[j]).norm() < MIN_SEPARATION {
                    continue;
                }
                let s = objective(values[i], values[j], points[i], points[j], k);
                if s > best.s {
                    best = Candidate { s, i, j };
                }
            }
            best
        })
        .collect();
    candidates.retain(|c| c.j != c.i);
    if candidates.is_empty() {
        return Err(QcError::Parameter("search grid produced no valid pairs".into()));
    }
    candidates.sort_by(|a, b| {
        b.s.total_cmp(&a.s).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j))
    });
    candidates.truncate(budget.top_seeds);

    // Pattern search over (r1, θ1, r2, θ2) around each seed.
    let eval_pair = |z: Complex64, w: Complex64| -> f64 {
        if (z - w).norm() < MIN_SEPARATION {
            f64::NEG_INFINITY
        } else {
            objective(f.eval(z), f.eval(w), z, w, k)
        }
    };
    let mut best_s = f64::NEG_INFINITY;
    let mut best_pair = (points[candidates[0].i], points[candidates[0].j]);
    for c in &candidates {
        let (mut r1, mut t1) = points[c.i].to_polar();
        let (mut r2, mut t2) = points[c.j].to_polar();
        let mut s = c.s;
        let mut dr = BOUNDARY_RADIUS / budget.radii as f64;
        let mut dt = 2.0 * std::f64::consts::PI / budget.angles as f64;
        for _ in 0..budget.refine_rounds {
            let mut moved = false;
            let mut trial_best = s;
            let mut trial_coords = (r1, t1, r2, t2);
            let proposals = [
                ((r1 + dr).min(BOUNDARY_RADIUS), t1, r2, t2),
                ((r1 - dr).max(0.0), t1, r2, t2),
                (r1, t1 + dt, r2, t2),
                (r1, t1 - dt, r2, t2),
                (r1, t1, (r2 + dr).min(BOUNDARY_RADIUS), t2),
                (r1, t1, (r2 - dr).max(0.0), t2),
                (r1, t1, r2, t2 + dt),
                (r1, t1, r2, t2 - dt),
            ];
            for &(pr1, pt1, pr2, pt2) in &proposals {
                let sv = eval_pair(polar(pr1, pt1), polar(pr2, pt2));
                if sv > trial_best {
                    trial_best = sv;
                    trial_coords = (pr1, pt1, pr2, pt2);
                    moved = true;
                }
            }
            if moved {
                s = trial_best;
                (r1, t1, r2, t2) = trial_coords;
            } else {
                dr *= 0.5;
                dt *= 0.5;
            }
        }
        if s > best_s {
            best_s = s;
            best_pair = (polar(r1, t1), polar(r2, t2));
        }
    }

    let estimate = holder_quotient(f, best_pair.0, best_pair.1, k)?;
    let bound = sharp_bound(k);
    let tol = if f.is_closed_form() { CLOSED_FORM_TOL } else { SOLVER_TOL };
    let r = match f {
        DiscreteMap::Extremal(p) => Some(p.r),
        _ => None,
    };
    Ok(HolderReport {
        k,
        r,
        estimate,
        bound,
        witness_z: best_pair.0,
        witness_w: best_pair.1,
        violated: estimate > bound * (1.0 + tol),
        tol,
        budget: *budget,
    })
}

/// Run the default-budget search and flag the result against the sharp
/// bound, with the tolerance class chosen by the map's provenance.
pub fn check_bound(f: &DiscreteMap, k: f64) -> Result<HolderReport> {
    estimate_holder_constant(f, k, &SearchBudget::default())
}

/// Maximum of `|f^λ(z)|` over the flow parameters in `lambdas` and over
/// grid nodes inside the unit disk. The flow argument bounds this by 2.
pub fn koebe_check(mu: &BeltramiField, k: f64, lambdas: &[Complex64]) -> Result<f64> {
    let spec = mu.field.spec;
    let engine = SpectralEngine::new(spec);
    let mut overall = 0.0f64;
    for &lambda in lambdas {
        if lambda.norm() == 0.0 {
            // Identity flow: the largest node radius inside the disk.
            overall = overall.max(max_over_disk_nodes(spec, |z, _| z.norm(), None));
            continue;
        }
        let map = flow_map(&engine, mu, lambda, k)?;
        if let DiscreteMap::Grid { correction, .. } = &map {
            overall = overall.max(max_over_disk_nodes(spec, |z, c| (z + c).norm(), Some(correction)));
        }
    }
    Ok(overall)
}

fn max_over_disk_nodes(
    spec: GridSpec,
    quantity: impl Fn(Complex64, Complex64) -> f64,
    field: Option<&GridField>,
) -> f64 {
    let n = spec.n;
    let mut m = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let z = spec.node(j, k);
            if z.norm() < 1.0 {
                let c = field.map_or(Complex64::new(0.0, 0.0), |f| f.at(j, k));
                m = m.max(quantity(z, c));
            }
        }
    }
    m
}

/// Harnack probe along the flow `λ ↦ f^λ` with coefficient
/// `λ·(K+1)/(K-1)·μ`, through `u(λ) = log(|f^λ(z) - f^λ(w)| / 4)`.
#[derive(Debug, Clone, Copy)]
pub struct HarnackProbe {
    /// `u(0) = log(|z - w|/4)`; negative since the disk has diameter 2.
    pub u0: f64,
    /// `u` at the real parameter `(K-1)/(K+1)`, where the flow
    /// coefficient equals `μ`.
    pub uk: f64,
    /// `|u(0) - mean of u over 16 points of |λ| = 0.3|`: a mean-value
    /// probe of the harmonicity of `u`.
    pub mean_value_defect: f64,
}

/// Evaluate the Harnack step `u((K-1)/(K+1)) ≤ u(0)/K` for one pair.
pub fn harnack_probe(
    mu: &BeltramiField,
    z: Complex64,
    w: Complex64,
    k: f64,
) -> Result<HarnackProbe> {
    if !(k.is_finite() && k > 1.0) {
        return Err(QcError::Parameter(format!("Harnack probe needs K > 1, got {k}")));
    }
    if z.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(QcError::Domain("probe points must lie in the open disk".into()));
    }
    if (z - w).norm() < MIN_SEPARATION {
        return Err(QcError::Domain("probe points must be separated".into()));
    }

    let engine = SpectralEngine::new(mu.field.spec);
    let u_at = |lambda: Complex64| -> Result<f64> {
        let map = flow_map(&engine, mu, lambda, k)?;
        Ok(((map.eval(z) - map.eval(w)).norm() / 4.0).ln())
    };

    let u0 = ((z - w).norm() / 4.0).ln();
    let uk = u_at(Complex64::new((k - 1.0) / (k + 1.0), 0.0))?;

    let mut mean = 0.0f64;
    let samples = 16;
    for s in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
        mean += u_at(Complex64::from_polar(0.3, theta))?;
    }
    mean /= samples as f64;

    Ok(HarnackProbe { u0, uk, mean_value_defect: (u0 - mean).abs() })
}

/// Closed-form Harnack slack `uk - u0/K` for the extremal family at the
/// slit-endpoint pair: `ln((1+t)^{1/K} / (1 + t^{1/K}))` with `t = R⁻²`.
/// Always negative, shrinking to 0 as `R → ∞` (where the quotient
/// attains the sharp constant).
pub fn harnack_endpoint_slack(p: &ExtremalParams) -> f64 {
    let t = p.r.powi(-2);
    ((1.0 + t).powf(1.0 / p.k) / (1.0 + t.powf(1.0 / p.k))).ln()
}

/// The comparison constants at one K.
#[derive(Debug, Clone, Copy)]
pub struct ConstantsTable {
    pub k: f64,
    /// The classical constant 16.
    pub mori: f64,
    /// The conjectured improvement `16^{1-1/K}`.
    pub conjecture: f64,
    /// The sharp constant `4^{1-1/K}`.
    pub sharp: f64,
    /// The Vuorinen–Zhang planar value
    /// `4^{1-1/K}·2^{1-1/K}·K^{1/(2K)}·(K/(K-1))^{(1-1/K)/2}` (its K→1
    /// limit, 1, at K = 1).
    pub vz: f64,
}

/// Tabulate the four comparison constants.
pub fn constants(k: f64) -> Result<ConstantsTable> {
    if !(k.is_finite() && k >= 1.0) {
        return Err(QcError::Parameter(format!("constants table needs K >= 1, got {k}")));
    }
    let e = 1.0 - 1.0 / k;
    let sharp = 4.0f64.powf(e);
    let conjecture = 16.0f64.powf(e);
    let vz = if k == 1.0 {
        1.0
    } else {
        sharp * 2.0f64.powf(e) * k.powf(1.0 / (2.0 * k)) * (k / (k - 1.0)).powf(e / 2.0)
    };
    Ok(ConstantsTable { k, mori: 16.0, conjecture, sharp, vz })
}

/// Regions excluded from derivative-based grid measurements: disks plus
/// strips around real-axis segments `[-a, a]` (closed under the given
/// half-width). Derivative singularities of the closed forms (stretch
/// origin, extremal slit) live inside these sets.
#[derive(Debug, Clone, Default)]
pub struct ExclusionSet {
    /// (center, radius) disks.
    pub disks: Vec<(Complex64, f64)>,
    /// (half_length, half_width) strips around `[-a, a] ⊂ ℝ`.
    pub real_segments: Vec<(f64, f64)>,
}

impl ExclusionSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn origin_disk(radius: f64) -> Self {
        Self { disks: vec![(Complex64::new(0.0, 0.0), radius)], real_segments: Vec::new() }
    }

    /// Strip around the extremal map's slit segment (the real interval
    /// `[-x0, x0]` where the map is not differentiable), of the given
    /// half-width floored at 0.02.
    pub fn slit_strip(p: &ExtremalParams, half_width: f64) -> Self {
        let half_width = half_width.max(0.02);
        Self { disks: Vec::new(), real_segments: vec![(p.slit_endpoint(), half_width)] }
    }

    pub fn merged(mut self, other: ExclusionSet) -> Self {
        self.disks.extend(other.disks);
        self.real_segments.extend(other.real_segments);
        self
    }

    pub fn excludes(&self, z: Complex64) -> bool {
        self.disks.iter().any(|&(c, r)| (z - c).norm() <= r)
            || self
                .real_segments
                .iter()
                .any(|&(a, w)| z.im.abs() <= w && z.re.abs() <= a + w)
    }
}

/// Outcome of a grid dilatation measurement.
#[derive(Debug, Clone, Copy)]
pub struct DilatationReport {
    /// Max of `(|f_z| + |f_z̄|)/(|f_z| - |f_z̄|)` over admitted samples.
    pub max_dilatation: f64,
    /// Samples skipped for `|f_z| ≤ 1e-8` or `|f_z| ≤ |f_z̄|`
    /// (degenerate or orientation-violating finite differences).
    pub flagged: usize,
    /// Samples that entered the maximum.
    pub samples: usize,
}

/// Estimate the maximal dilatation of `f` by central differences over
/// interior nodes with `|z| ≤ 0.95`, skipping the exclusion set.
pub fn dilatation_estimate(
    f: &DiscreteMap,
    spec: GridSpec,
    exclude: &ExclusionSet,
) -> DilatationReport {
    let n = spec.n;
    let values = GridField::from_fn(spec, |z| f.eval(z));
    let two_h = 2.0 * spec.h();
    let i = Complex64::new(0.0, 1.0);
    let mut max_dilatation = 1.0f64;
    let mut flagged = 0usize;
    let mut samples = 0usize;
    for j in 1..n - 1 {
        for kk in 1..n - 1 {
            let z = spec.node(j, kk);
            if z.norm() > 0.95 || exclude.excludes(z) {
                continue;
            }
            let fx = (values.at(j + 1, kk) - values.at(j - 1, kk)) / two_h;
            let fy = (values.at(j, kk + 1) - values.at(j, kk - 1)) / two_h;
            let fz = 0.5 * (fx - i * fy);
            let fzb = 0.5 * (fx + i * fy);
            let (a, b) = (fz.norm(), fzb.norm());
            if a <= 1e-8 || a <= b {
                flagged += 1;
                continue;
            }
            samples += 1;
            max_dilatation = max_dilatation.max((a + b) / (a - b));
        }
    }
    DilatationReport { max_dilatation, flagged, samples }
}

/// Max equation residual `|f_z̄ - μ f_z|` of a solved map over interior
/// nodes (`|z| ≤ 0.9`) outside the exclusion set.
///
/// Derivatives come from fourth-order central differences, so the
/// probe's own truncation stays below the residuals under test (a
/// second-order stencil misreads a coefficient mode of frequency πm by
/// ~(πmh)²/6, already at the 5e-3 scale for moderate m). The pointwise
/// residual field is then passed through one 3×3 binomial average
/// before taking the max: coefficient discontinuities (the jump at
/// |z| = 1, a phase singularity at the origin) radiate sinc-kernel
/// tails along the grid axes that alternate sign node-to-node — an
/// artifact of trigonometric interpolation at the unresolved scale,
/// not a defect of the resolved solution. The average cancels the
/// alternation while leaving any systematic violation (wrong
/// multiplier, sign, or normalization gives a smooth residual field)
/// at full strength.
pub fn equation_residual(
    f: &DiscreteMap,
    mu: &BeltramiField,
    exclude: &ExclusionSet,
) -> Result<f64> {
    let correction = match f {
        DiscreteMap::Grid { correction, .. } => correction,
        _ => {
            return Err(QcError::Parameter(
                "equation residual needs a solver-produced grid map".into(),
            ))
        }
    };
    if correction.spec != mu.field.spec {
        return Err(QcError::Parameter("map and coefficient grids differ".into()));
    }
    let spec = correction.spec;
    let n = spec.n;
    let twelve_h = 12.0 * spec.h();
    let i = Complex64::new(0.0, 1.0);
    let diff = |a: Complex64, b: Complex64, c: Complex64, d: Complex64| {
        // (-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / (12h)
        (-d + 8.0 * c - 8.0 * b + a) / twelve_h
    };
    // Pointwise residual field on all stencil-complete interior nodes.
    let mut rho = GridField::zeros(spec);
    for j in 2..n - 2 {
        for kk in 2..n - 2 {
            // f = z + c: f_z = 1 + c_z, f_z̄ = c_z̄.
            let cx = diff(
                correction.at(j - 2, kk),
                correction.at(j - 1, kk),
                correction.at(j + 1, kk),
                correction.at(j + 2, kk),
            );
            let cy = diff(
                correction.at(j, kk - 2),
                correction.at(j, kk - 1),
                correction.at(j, kk + 1),
                correction.at(j, kk + 2),
            );
            let cz = 0.5 * (cx - i * cy);
            let czb = 0.5 * (cx + i * cy);
            *rho.at_mut(j, kk) = czb - mu.field.at(j, kk) * (cz + 1.0);
        }
    }
    let mut worst = 0.0f64;
    for j in 3..n - 3 {
        for kk in 3..n - 3 {
            let z = spec.node(j, kk);
            if z.norm() > 0.9 || exclude.excludes(z) {
                continue;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (dj, wj) in [(0usize, 1.0), (1, 2.0), (2, 1.0)] {
                for (dk, wk) in [(0usize, 1.0), (1, 2.0), (2, 1.0)] {
                    acc += wj * wk * rho.at(j + dj - 1, kk + dk - 1);
                }
            }
            worst = worst.max((acc / 16.0).norm());
        }
    }
    Ok(worst)
}

/// Fit the decay constant in `|f(z) - z| ≤ C/|z|` over sample circles
/// with radii in `[3, half_width - 1]`; the principal normalization
/// keeps C small (tested against 2).
pub fn normalization_fit(f: &DiscreteMap, half_width: f64) -> f64 {
    let hi = (half_width - 1.0).max(3.0);
    let radii = [3.0, 0.5 * (3.0 + hi), hi];
    let mut c = 0.0f64;
    for &r in &radii {
        for a in 0..64 {
            let theta = 2.0 * std::f64::consts::PI * a as f64 / 64.0;
            let z = Complex64::from_polar(r, theta);
            c = c.max((f.eval(z) - z).norm() * r);
        }
    }
    c
}
