//! Spectral Cauchy and Beurling transforms on the periodic box.
//!
//! Both operators are Fourier multipliers for the mode `e^{i(ω₁x + ω₂y)}`,
//! written through `ζ = ω₁ + iω₂`:
//!
//! * `∂̄` has multiplier `iζ/2`, `∂` has `iζ̄/2`;
//! * the Cauchy transform `C` (solid inverse of `∂̄`) has `-2i/ζ`;
//! * the Beurling transform `S = ∂∘C` has `ζ̄/ζ`, an ℓ²-isometry off the
//!   zero mode.
//!
//! The zero mode needs care. Plain periodization with the zero multiplier
//! set to 0 solves `∂̄u = h - mean(h)`, which for a source of nonzero mass
//! contaminates `C[h]` with a term `-mean(h)·z̄` that does not shrink as the
//! grid refines. The operators here therefore split off the mass first:
//! with a fixed Gaussian reference density `g(z) = e^{-|z|²}` whose free
//! transforms are known in closed form,
//!
//! ```text
//! C[h] = C_per[h - s·g] + s·(1 - e^{-|z|²})/z,   s = Σh / Σg,
//! ```
//!
//! and similarly for `S` with the derivative of the closed form. The
//! subtracted field has exactly zero grid mass, so the periodic transform
//! of the remainder carries no zero-mode ambiguity and its periodization
//! error comes only from rapidly cancelling image tails.

use crate::error::Result;
use crate::grid::{GridField, GridSpec};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Margin (absolute distance from the box edge) inside which a nonzero
/// sample triggers the support warning.
const SUPPORT_MARGIN: f64 = 0.5;

/// Reusable spectral machinery for one grid: FFT plans, multiplier tables,
/// and the sampled reference density with its closed-form transforms.
pub struct SpectralEngine {
    pub spec: GridSpec,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    mult_c: Vec<Complex64>,
    mult_s: Vec<Complex64>,
    mult_dbar: Vec<Complex64>,
    mult_d: Vec<Complex64>,
    gref: Vec<f64>,
    cref: Vec<Complex64>,
    sref: Vec<Complex64>,
    gref_sum: f64,
}

impl SpectralEngine {
    pub fn new(spec: GridSpec) -> Self {
        let n = spec.n;
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);

        let freq: Vec<f64> = (0..n)
            .map(|j| {
                let signed = if j < n / 2 { j as isize } else { j as isize - n as isize };
                std::f64::consts::PI / spec.half_width * signed as f64
            })
            .collect();

        let len = spec.len();
        let mut mult_c = vec![Complex64::new(0.0, 0.0); len];
        let mut mult_s = vec![Complex64::new(0.0, 0.0); len];
        let mut mult_dbar = vec![Complex64::new(0.0, 0.0); len];
        let mut mult_d = vec![Complex64::new(0.0, 0.0); len];
        let i = Complex64::new(0.0, 1.0);
        for j in 0..n {
            for k in 0..n {
                let zeta = Complex64::new(freq[j], freq[k]);
                let idx = j * n + k;
                mult_dbar[idx] = 0.5 * i * zeta;
                mult_d[idx] = 0.5 * i * zeta.conj();
                if j != 0 || k != 0 {
                    mult_c[idx] = -2.0 * i / zeta;
                    mult_s[idx] = zeta.conj() / zeta;
                }
            }
        }

        let mut gref = Vec::with_capacity(len);
        let mut cref = Vec::with_capacity(len);
        let mut sref = Vec::with_capacity(len);
        for j in 0..n {
            for k in 0..n {
                let z = spec.node(j, k);
                let r2 = z.norm_sqr();
                let e = (-r2).exp();
                gref.push(e);
                if r2 == 0.0 {
                    cref.push(Complex64::new(0.0, 0.0));
                    sref.push(Complex64::new(0.0, 0.0));
                } else {
                    cref.push((1.0 - e) / z);
                    sref.push(z.conj() * e / z - (1.0 - e) / (z * z));
                }
            }
        }
        let gref_sum = gref.iter().sum();

        Self { spec, fwd, inv, mult_c, mult_s, mult_dbar, mult_d, gref, cref, sref, gref_sum }
    }

    fn transpose(data: &mut [Complex64], n: usize) {
        for j in 0..n {
            for k in (j + 1)..n {
                data.swap(j * n + k, k * n + j);
            }
        }
    }

    fn fft2(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.spec.n;
        let plan = if inverse { &self.inv } else { &self.fwd };
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for row in data.chunks_exact_mut(n) {
            plan.process_with_scratch(row, &mut scratch);
        }
        Self::transpose(data, n);
        for row in data.chunks_exact_mut(n) {
            plan.process_with_scratch(row, &mut scratch);
        }
        Self::transpose(data, n);
        if inverse {
            let scale = 1.0 / (n * n) as f64;
            for v in data.iter_mut() {
                *v *= scale;
            }
        }
    }

    fn apply_multiplier(&self, h: &GridField, mult: &[Complex64]) -> Vec<Complex64> {
        let mut buf = h.values.clone();
        self.fft2(&mut buf, false);
        for (b, m) in buf.iter_mut().zip(mult) {
            *b *= *m;
        }
        self.fft2(&mut buf, true);
        buf
    }

    fn split_apply(
        &self,
        h: &GridField,
        mult: &[Complex64],
        reference: &[Complex64],
    ) -> GridField {
        debug_assert_eq!(h.spec, self.spec);
        let s = h.sum() / self.gref_sum;
        let mut buf: Vec<Complex64> = h
            .values
            .iter()
            .zip(&self.gref)
            .map(|(v, g)| v - s * g)
            .collect();
        self.fft2(&mut buf, false);
        for (b, m) in buf.iter_mut().zip(mult) {
            *b *= *m;
        }
        self.fft2(&mut buf, true);
        for (b, r) in buf.iter_mut().zip(reference) {
            *b += s * r;
        }
        GridField { spec: self.spec, values: buf }
    }

    /// Cauchy transform: `∂̄ C[h] = h` with `C[h](z) → 0` as `z → ∞`.
    pub fn cauchy(&self, h: &GridField) -> GridField {
        self.split_apply(h, &self.mult_c, &self.cref)
    }

    /// Beurling transform: `S[h] = ∂ C[h]`.
    pub fn beurling(&self, h: &GridField) -> GridField {
        self.split_apply(h, &self.mult_s, &self.sref)
    }

    /// Spectral `∂̄` (periodic; no mass split, derivatives kill constants).
    pub fn dbar(&self, h: &GridField) -> GridField {
        GridField { spec: self.spec, values: self.apply_multiplier(h, &self.mult_dbar) }
    }

    /// Spectral `∂`.
    pub fn d(&self, h: &GridField) -> GridField {
        GridField { spec: self.spec, values: self.apply_multiplier(h, &self.mult_d) }
    }

    /// Warns when `h` has samples above 1e-13 within [`SUPPORT_MARGIN`] of
    /// the box edge, where periodization error is no longer controlled.
    pub fn support_warning(&self, h: &GridField) -> Option<String> {
        let edge = self.spec.half_width - SUPPORT_MARGIN;
        let n = self.spec.n;
        let mut count = 0usize;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let z = self.spec.node(j, k);
                if z.re.abs() > edge || z.im.abs() > edge {
                    let m = h.values[j * n + k].norm();
                    if m > 1e-13 {
                        count += 1;
                        worst = worst.max(m);
                    }
                }
            }
        }
        if count > 0 {
            Some(format!(
                "support touches the box margin: {count} samples within {SUPPORT_MARGIN} of the edge, max modulus {worst:.3e}"
            ))
        } else {
            None
        }
    }
}

/// One-shot Cauchy transform; the second component carries the support
/// warning when the field reaches the box margin.
pub fn cauchy_transform(h: &GridField) -> Result<(GridField, Option<String>)> {
    let engine = SpectralEngine::new(h.spec);
    let warn = engine.support_warning(h);
    Ok((engine.cauchy(h), warn))
}

/// One-shot Beurling transform, with the same warning convention.
pub fn beurling_transform(h: &GridField) -> Result<(GridField, Option<String>)> {
    let engine = SpectralEngine::new(h.spec);
    let warn = engine.support_warning(h);
    Ok((engine.beurling(h), warn))
}
