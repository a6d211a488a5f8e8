//! Closed-form construction of the extremal disk maps.
//!
//! The construction runs through a confocal ellipse family. For `R > 1`,
//! `E_R` is the ellipse `|w - 2| + |w + 2| < 2(R + 1/R)` with foci ±2 and
//! semi-axes `R + 1/R`, `R - 1/R`. The Joukowski map `φ(z) = z + 1/z`
//! carries the circle `|z| = R` onto `∂E_R` and the unit circle onto the
//! slit `[-2, 2]`, so conjugating the radial stretch `ρ(z) = z|z|^{1/K-1}`
//! through `φ` gives a K-quasiconformal deformation `g = φ∘ρ∘φ⁻¹` of `E_R`
//! onto `E_{R'}`, `R' = R^{1/K}`, which is the identity on the slit and
//! fixes the foci. Affine normalization on both sides produces the disk
//! self-map `f = α_{R'}⁻¹ ∘ g ∘ α_R` with identity boundary values.
//!
//! `f` maps the segment `α_R⁻¹([-2,2])` of length `4/(R + 1/R)` onto the
//! longer segment `α_{R'}⁻¹([-2,2])`, and the Hölder quotient of that pair
//! of endpoints, [`extremal_quotient`], increases to `4^{1-1/K}` as `R`
//! grows. That limit is what makes the family extremal.

use crate::error::{QcError, Result};
use num_complex::Complex64;

/// Semi-major axis of `E_R`.
pub fn semi_major(r: f64) -> f64 {
    r + 1.0 / r
}

/// Semi-minor axis of `E_R`.
pub fn semi_minor(r: f64) -> f64 {
    r - 1.0 / r
}

/// The pair (K, R) fixing one extremal map, with `R' = R^{1/K}` cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalParams {
    pub k: f64,
    pub r: f64,
    pub rprime: f64,
}

impl ExtremalParams {
    /// Validates `K ≥ 1`, `R > 1`; both finite.
    pub fn new(k: f64, r: f64) -> Result<Self> {
        if !k.is_finite() || k < 1.0 {
            return Err(QcError::Parameter(format!("K must be finite and >= 1, got {k}")));
        }
        if !r.is_finite() || r <= 1.0 {
            return Err(QcError::Parameter(format!("R must be finite and > 1, got {r}")));
        }
        Ok(Self { k, r, rprime: r.powf(1.0 / k) })
    }

    /// Endpoint of the slit preimage on the real axis: `2 / (R + 1/R)`.
    pub fn slit_endpoint(&self) -> f64 {
        2.0 / semi_major(self.r)
    }

    /// Endpoint of the slit image: `2 / (R' + 1/R')`.
    pub fn slit_endpoint_image(&self) -> f64 {
        2.0 / semi_major(self.rprime)
    }
}

/// The open ellipse region `|w - 2| + |w + 2| < 2(R + 1/R)`.
#[derive(Debug, Clone, Copy)]
pub struct EllipseRegion {
    pub r: f64,
}

impl EllipseRegion {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 1.0 {
            return Err(QcError::Parameter(format!("R must be finite and > 1, got {r}")));
        }
        Ok(Self { r })
    }

    /// Sum of focal distances, the quantity compared against `2(R + 1/R)`.
    pub fn focal_sum(&self, w: Complex64) -> f64 {
        let two = Complex64::new(2.0, 0.0);
        (w - two).norm() + (w + two).norm()
    }

    pub fn contains(&self, w: Complex64) -> bool {
        self.focal_sum(w) < 2.0 * semi_major(self.r)
    }

    /// Point of `∂E_R` at parameter θ: `a cos θ + i b sin θ`.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        Complex64::new(semi_major(self.r) * theta.cos(), semi_minor(self.r) * theta.sin())
    }
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(QcError::Domain(format!("{what} is not finite: {z}")))
    }
}

/// The Joukowski map `φ(z) = z + 1/z`.
pub fn joukowski(z: Complex64) -> Result<Complex64> {
    check_finite(z, "joukowski input")?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(QcError::Domain("joukowski is undefined at 0".into()));
    }
    Ok(z + 1.0 / z)
}

/// Exterior branch of the Joukowski inverse: the solution of `z + 1/z = w`
/// with `|z| ≥ 1`.
///
/// For `w` on the open slit (-2, 2) both solutions lie on the unit circle;
/// the branch with `Im z ≥ 0` is returned. At `w = ±2` the double root ±1
/// comes out exactly. Total on the plane.
///
/// Stability: the larger root of `z² - wz + 1 = 0` is computed first (the
/// sign of the square root is flipped when it would cancel against `w`),
/// so no subtraction of nearly equal quantities occurs; the other root is
/// its reciprocal.
pub fn joukowski_inv(w: Complex64) -> Complex64 {
    // Flush -0.0 imaginary parts: the principal square root jumps across
    // the negative real axis, and the slit convention needs the +0.0 side.
    let w = Complex64::new(w.re, w.im + 0.0);
    let disc = w * w - 4.0;
    let mut s = disc.sqrt();
    if (w.conj() * s).re < 0.0 {
        s = -s;
    }
    (w + s) / 2.0
}

/// Radial stretch `ρ(z) = z |z|^{1/K - 1}`, extended by `ρ(0) = 0`.
///
/// Carries the circle of radius `r` to the circle of radius `r^{1/K}` and
/// fixes the unit circle pointwise. Its Beltrami coefficient is
/// `((α-1)/(α+1))·z/z̄` with `α = 1/K`, of constant modulus `(K-1)/(K+1)`.
pub fn radial_stretch(z: Complex64, k: f64) -> Result<Complex64> {
    if !k.is_finite() || k < 1.0 {
        return Err(QcError::Parameter(format!("stretch exponent needs K >= 1, got {k}")));
    }
    check_finite(z, "radial_stretch input")?;
    Ok(radial_stretch_unchecked(z, k))
}

pub(crate) fn radial_stretch_unchecked(z: Complex64, k: f64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    z * r.powf(1.0 / k - 1.0)
}

/// Beltrami coefficient of the radial stretch: `((1-K)/(1+K))·z/z̄`, and 0
/// at the origin where the phase has no limit.
pub fn radial_stretch_beltrami(z: Complex64, k: f64) -> Complex64 {
    if z.norm_sqr() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    ((1.0 - k) / (1.0 + k)) * z / z.conj()
}

/// Affine map of the unit disk onto `E_R`: `x + iy ↦ a x + i b y` with
/// `a = R + 1/R`, `b = R - 1/R`. Equivalently `α_R(z) = R z + z̄/R`.
pub fn affine_to_ellipse(z: Complex64, r: f64) -> Result<Complex64> {
    if !r.is_finite() || r <= 1.0 {
        return Err(QcError::Parameter(format!("affine map needs R > 1, got {r}")));
    }
    check_finite(z, "affine_to_ellipse input")?;
    Ok(Complex64::new(semi_major(r) * z.re, semi_minor(r) * z.im))
}

/// Inverse of [`affine_to_ellipse`].
pub fn affine_from_ellipse(w: Complex64, r: f64) -> Result<Complex64> {
    if !r.is_finite() || r <= 1.0 {
        return Err(QcError::Parameter(format!("affine map needs R > 1, got {r}")));
    }
    check_finite(w, "affine_from_ellipse input")?;
    Ok(Complex64::new(w.re / semi_major(r), w.im / semi_minor(r)))
}

/// `g = φ ∘ ρ ∘ φ⁻¹` on the closed ellipse `E_R`: the K-quasiconformal
/// deformation of `E_R` onto `E_{R'}` that is the identity on the slit
/// `[-2, 2]` and fixes the foci.
///
/// The slit values do not depend on the branch convention of `φ⁻¹`: both
/// preimages of a slit point sit on the unit circle, which `ρ` fixes.
pub fn ellipse_deformation(w: Complex64, params: &ExtremalParams) -> Result<Complex64> {
    check_finite(w, "ellipse_deformation input")?;
    let region = EllipseRegion { r: params.r };
    // Closure membership with a relative cushion for boundary round-off.
    if region.focal_sum(w) > 2.0 * semi_major(params.r) * (1.0 + 1e-12) {
        return Err(QcError::Domain(format!(
            "{w} lies outside the closed ellipse with parameter R = {}",
            params.r
        )));
    }
    Ok(ellipse_deformation_unchecked(w, params))
}

pub(crate) fn ellipse_deformation_unchecked(w: Complex64, params: &ExtremalParams) -> Complex64 {
    let zeta = joukowski_inv(w);
    let xi = radial_stretch_unchecked(zeta, params.k);
    xi + 1.0 / xi
}

/// The extremal disk self-map `f = α_{R'}⁻¹ ∘ g ∘ α_R`.
///
/// Identity on `|z| = 1` (returned exactly, short-circuiting the
/// composition so boundary values survive round-off bit-for-bit), fixes 0,
/// maps the closed disk into itself. `K = 1` returns `z` outright.
pub fn extremal_disk_map(z: Complex64, params: &ExtremalParams) -> Result<Complex64> {
    check_finite(z, "extremal_disk_map input")?;
    let n = z.norm();
    if n > 1.0 + 1e-12 {
        return Err(QcError::Domain(format!("{z} lies outside the closed unit disk")));
    }
    if n >= 1.0 || params.k == 1.0 {
        return Ok(z);
    }
    Ok(extremal_disk_map_inner(z, params))
}

pub(crate) fn extremal_disk_map_inner(z: Complex64, params: &ExtremalParams) -> Complex64 {
    let e = Complex64::new(semi_major(params.r) * z.re, semi_minor(params.r) * z.im);
    let g = ellipse_deformation_unchecked(e, params);
    Complex64::new(g.re / semi_major(params.rprime), g.im / semi_minor(params.rprime))
}

/// Beltrami coefficient of the extremal disk map, zero outside the open
/// disk (the map extends by the identity there).
///
/// Derivation: write `α_R(z) = Az + Bz̄` with `A = R`, `B = 1/R`, and
/// `α_{R'}⁻¹(w) = Pw + Qw̄` with `P = (1/a' + 1/b')/2`, `Q = (1/a' - 1/b')/2`
/// built from the image semi-axes. With `ζ = φ⁻¹(α_R(z))`, `ξ = ρ(ζ)`,
/// the Wirtinger derivatives of `g` at `α_R(z)` give
/// `∂̄g/∂g = σ`, where `σ = ((α-1)/(α+1))·(ζ/ζ̄)·(φ'(ζ)/φ'(ζ)̄)`, `α = 1/K`,
/// and the conformal distortion of the outer `φ` contributes
/// `τ = (φ'(ξ)̄/φ'(ξ))·(φ'(ζ)/φ'(ζ)̄)`. Chaining the two affine maps yields
///
/// ```text
/// μ_f = [P(B + Aσ) + Qτ(A + Bσ̄)] / [P(A + Bσ) + Qτ(B + Aσ̄)]
/// ```
///
/// At the crease endpoints (`ζ = ±1`, where `φ' = 0`) the coefficient has
/// no limit; those two points return 0.
pub fn extremal_beltrami(z: Complex64, params: &ExtremalParams) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    if params.k == 1.0 || z.norm() >= 1.0 {
        return zero;
    }
    let alpha = 1.0 / params.k;
    let (a, b) = (params.r, 1.0 / params.r);
    let ap = semi_major(params.rprime);
    let bp = semi_minor(params.rprime);
    let p = 0.5 * (1.0 / ap + 1.0 / bp);
    let q = 0.5 * (1.0 / ap - 1.0 / bp);

    let w = Complex64::new(semi_major(params.r) * z.re, semi_minor(params.r) * z.im);
    let zeta = joukowski_inv(w);
    let xi = radial_stretch_unchecked(zeta, params.k);
    let dphi_zeta = 1.0 - 1.0 / (zeta * zeta);
    let dphi_xi = 1.0 - 1.0 / (xi * xi);
    if dphi_zeta.norm() < 1e-14 || dphi_xi.norm() < 1e-14 {
        return zero;
    }
    let qp = dphi_zeta / dphi_zeta.conj();
    let sigma = ((alpha - 1.0) / (alpha + 1.0)) * (zeta / zeta.conj()) * qp;
    let tau = (dphi_xi.conj() / dphi_xi) * qp;

    let num = p * (b + a * sigma) + q * tau * (a + b * sigma.conj());
    let den = p * (a + b * sigma) + q * tau * (b + a * sigma.conj());
    num / den
}

/// Hölder quotient of the extremal map at the endpoints of the slit
/// preimage: `q(R, K) = (4/(R' + 1/R')) / (4/(R + 1/R))^{1/K}`.
///
/// Strictly increasing in `R` with limit `4^{1-1/K}`; equivalently
/// `q = 4^{1-1/K} (1+t)^{1/K} / (1 + t^{1/K})` with `t = R^{-2}`.
pub fn extremal_quotient(params: &ExtremalParams) -> f64 {
    if params.k == 1.0 {
        return 1.0;
    }
    let short = 4.0 / semi_major(params.r);
    let long = 4.0 / semi_major(params.rprime);
    long / short.powf(1.0 / params.k)
}

/// Upper bound `K·κ(R)·κ(R')` for the maximal dilatation of the extremal
/// map, where `κ(R) = (R² + 1)/(R² - 1)` is the dilatation of `α_R`.
/// Tends to `K` as `R → ∞`.
pub fn analytic_dilatation_bound(params: &ExtremalParams) -> f64 {
    let kappa = |r: f64| (r * r + 1.0) / (r * r - 1.0);
    params.k * kappa(params.r) * kappa(params.rprime)
}

/// Default K values for parameter sweeps.
pub const DEFAULT_K_GRID: [f64; 5] = [1.0, 1.5, 2.0, 4.0, 10.0];

/// Default R values for parameter sweeps.
pub const DEFAULT_R_GRID: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn joukowski_fixed_and_zero_points() {
        assert_eq!(joukowski(c(1.0, 0.0)).unwrap(), c(2.0, 0.0));
        let at_i = joukowski(c(0.0, 1.0)).unwrap();
        assert!(at_i.norm() < 1e-15);
        assert!(joukowski(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn joukowski_polar_form() {
        // R e^{iθ} ↦ (R + 1/R) cos θ + i (R - 1/R) sin θ at R = 2, θ = π/3.
        let z = Complex64::from_polar(2.0, std::f64::consts::FRAC_PI_3);
        let w = joukowski(z).unwrap();
        assert!((w.re - 1.25).abs() < 1e-14);
        assert!((w.im - 1.299_038_105_676_658).abs() < 1e-16);
    }

    #[test]
    fn joukowski_inverse_branches() {
        assert_eq!(joukowski_inv(c(2.0, 0.0)), c(1.0, 0.0));
        let z = joukowski_inv(c(2.5, 0.0));
        assert!((z - c(2.0, 0.0)).norm() < 1e-14);
        // Slit convention: w = 0 has roots ±i, take Im ≥ 0.
        let s = joukowski_inv(c(0.0, 0.0));
        assert!((s - c(0.0, 1.0)).norm() < 1e-15);
        // A -0.0 imaginary part must not flip the slit branch.
        let s2 = joukowski_inv(c(0.3, -0.0));
        assert!(s2.im > 0.0);
    }

    #[test]
    fn joukowski_round_trip_outside() {
        for &re in &[-7.0, -2.0, -0.3, 0.0, 1.7, 2.0, 9.5] {
            for &im in &[-4.0, -0.2, 0.0, 0.9, 6.0] {
                let w = c(re, im);
                let z = joukowski_inv(w);
                assert!(z.norm() >= 1.0 - 1e-12, "branch |z| >= 1 violated at {w}");
                let back = joukowski(z).unwrap();
                let scale = w.norm().max(1.0);
                assert!((back - w).norm() <= 1e-12 * scale, "round trip failed at {w}");
            }
        }
    }

    #[test]
    fn stretch_basics() {
        let th = 0.7f64;
        let on_circle = Complex64::from_polar(1.0, th);
        assert!((radial_stretch(on_circle, 3.0).unwrap() - on_circle).norm() < 1e-15);
        assert!((radial_stretch(c(4.0, 0.0), 2.0).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        assert_eq!(radial_stretch(c(0.0, 0.0), 5.0).unwrap(), c(0.0, 0.0));
        assert!(radial_stretch(c(1.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn stretch_coefficient_modulus() {
        // K = 3 at z = 1 + i: μ = ((α-1)/(α+1)) z/z̄ = -i/2, |μ| = 1/2.
        let mu = radial_stretch_beltrami(c(1.0, 1.0), 3.0);
        assert!((mu - c(0.0, -0.5)).norm() < 1e-15);
        assert!((mu.norm() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn affine_vertices() {
        assert_eq!(affine_to_ellipse(c(0.0, 0.0), 2.0).unwrap(), c(0.0, 0.0));
        let a = affine_to_ellipse(c(1.0, 0.0), 2.0).unwrap();
        assert!((a - c(2.5, 0.0)).norm() < 1e-15);
        // Defining property at the vertex: |a-2| + |a+2| = 2(R + 1/R).
        let reg = EllipseRegion::new(2.0).unwrap();
        assert!((reg.focal_sum(a) - 5.0).abs() < 1e-14);
        let b = affine_to_ellipse(c(0.0, 1.0), 2.0).unwrap();
        assert!((b - c(0.0, 1.5)).norm() < 1e-15);
        assert!(affine_to_ellipse(c(0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn affine_round_trip() {
        for &r in &[1.5, 2.0, 10.0] {
            for &z in &[c(0.3, -0.8), c(-0.99, 0.01), c(0.0, 0.5)] {
                let back = affine_from_ellipse(affine_to_ellipse(z, r).unwrap(), r).unwrap();
                assert!((back - z).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn ellipse_boundary_parametrization() {
        let reg = EllipseRegion::new(3.0).unwrap();
        for i in 0..32 {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / 32.0;
            let p = reg.boundary_point(th);
            let target = 2.0 * semi_major(3.0);
            assert!((reg.focal_sum(p) - target).abs() < 1e-12 * target);
        }
        assert!(reg.contains(c(2.0, 0.0)) && reg.contains(c(-2.0, 0.0)));
    }

    #[test]
    fn deformation_fixes_foci_and_slit() {
        let params = ExtremalParams::new(2.0, 4.0).unwrap();
        for &w in &[c(2.0, 0.0), c(-2.0, 0.0), c(1.3, 0.0), c(-0.4, 0.0), c(0.0, 0.0)] {
            let g = ellipse_deformation(w, &params).unwrap();
            assert!((g - w).norm() <= 1e-12, "slit point {w} moved to {g}");
        }
        assert!(ellipse_deformation(c(50.0, 0.0), &params).is_err());
    }

    #[test]
    fn deformation_slit_branch_independence() {
        // Composing through the other root 1/ζ must give the same slit values.
        let params = ExtremalParams::new(3.0, 2.0).unwrap();
        for i in 0..50 {
            let x = -2.0 + 4.0 * (i as f64 + 0.5) / 50.0;
            let w = c(x, 0.0);
            let upper = joukowski_inv(w);
            let lower = 1.0 / upper;
            let via_upper = joukowski(radial_stretch_unchecked(upper, params.k)).unwrap();
            let via_lower = joukowski(radial_stretch_unchecked(lower, params.k)).unwrap();
            assert!((via_upper - w).norm() <= 1e-12);
            assert!((via_lower - w).norm() <= 1e-12);
        }
    }

    #[test]
    fn deformation_moves_boundary_theta_point() {
        // ∂E_R at parameter θ goes to ∂E_{R'} at the same θ.
        let params = ExtremalParams::new(2.0, 4.0).unwrap();
        let th = std::f64::consts::FRAC_PI_4;
        let p = EllipseRegion::new(4.0).unwrap().boundary_point(th);
        let image = ellipse_deformation(p, &params).unwrap();
        let expect = EllipseRegion::new(2.0).unwrap().boundary_point(th);
        assert!((image - expect).norm() < 1e-12);
    }

    #[test]
    fn disk_map_basics() {
        let params = ExtremalParams::new(2.0, 100.0).unwrap();
        assert_eq!(extremal_disk_map(c(0.0, 0.0), &params).unwrap(), c(0.0, 0.0));
        let bd = Complex64::from_polar(1.0, 1.1);
        assert_eq!(extremal_disk_map(bd, &params).unwrap(), bd);
        assert!(extremal_disk_map(c(1.5, 0.0), &params).is_err());

        // Slit endpoint maps to the image slit endpoint.
        let x0 = params.slit_endpoint();
        let fx = extremal_disk_map(c(x0, 0.0), &params).unwrap();
        let expect = params.slit_endpoint_image();
        assert!((fx - c(expect, 0.0)).norm() < 1e-13, "got {fx}, want {expect}");
        assert!((expect - 2.0 / 10.1).abs() < 1e-15);
    }

    #[test]
    fn disk_map_boundary_composition_without_shortcircuit() {
        // The full composition itself is the identity on |z| = 1; the
        // short-circuit only protects it from round-off.
        let params = ExtremalParams::new(2.0, 10.0).unwrap();
        let mut worst = 0.0f64;
        for i in 0..1000 {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / 1000.0;
            let z = Complex64::from_polar(1.0, th);
            let f = extremal_disk_map_inner(z, &params);
            worst = worst.max((f - z).norm());
        }
        assert!(worst <= 1e-10, "boundary identity defect {worst}");
    }

    #[test]
    fn disk_map_frozen_point() {
        let params = ExtremalParams::new(2.0, 10.0).unwrap();
        let f = extremal_disk_map(c(0.3, 0.4), &params).unwrap();
        assert!((f - c(0.446_920_985_196_083_9, 0.516_869_342_718_605_5)).norm() < 1e-13);
    }

    #[test]
    fn disk_map_k1_is_identity() {
        let params = ExtremalParams::new(1.0, 50.0).unwrap();
        for &z in &[c(0.2, 0.3), c(-0.7, 0.1), c(0.0, -0.9)] {
            assert_eq!(extremal_disk_map(z, &params).unwrap(), z);
        }
    }

    #[test]
    fn beltrami_frozen_point_and_cap() {
        let params = ExtremalParams::new(2.0, 10.0).unwrap();
        let mu = extremal_beltrami(c(0.5, 0.3), &params);
        assert!((mu - c(-0.205_245_246_939_682_2, -0.286_690_826_567_430_1)).norm() < 1e-13);

        // Modulus stays below the cap implied by the dilatation bound.
        let kb = analytic_dilatation_bound(&params);
        let cap = (kb - 1.0) / (kb + 1.0);
        assert!((cap - 0.427_561_837_455_830_3).abs() < 1e-14);
        for i in 0..400 {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / 400.0;
            for &rad in &[0.1, 0.35, 0.6, 0.85, 0.97] {
                let m = extremal_beltrami(Complex64::from_polar(rad, th), &params).norm();
                assert!(m <= cap + 1e-12, "|mu| = {m} exceeds cap {cap}");
            }
        }
    }

    #[test]
    fn beltrami_vanishes_for_k1_and_outside() {
        let params = ExtremalParams::new(1.0, 10.0).unwrap();
        assert_eq!(extremal_beltrami(c(0.4, 0.1), &params), c(0.0, 0.0));
        let params2 = ExtremalParams::new(2.0, 10.0).unwrap();
        assert_eq!(extremal_beltrami(c(1.2, 0.1), &params2), c(0.0, 0.0));
    }

    #[test]
    fn quotient_frozen_values() {
        let q = |k, r| extremal_quotient(&ExtremalParams::new(k, r).unwrap());
        assert_eq!(q(1.0, 77.0), 1.0);
        assert!((q(2.0, 100.0) - 1.980_297_027_227_846_6).abs() < 1e-14);
        assert!((q(2.0, 10.0) - 1.827_250_112_931_071).abs() < 1e-14);
        assert!((q(2.0, 1e4) - 1.999_800_029_997).abs() < 1e-12);
        assert!((q(1.5, 1e4) - 1.587_393_694_522_026).abs() < 1e-14);
        assert!((q(4.0, 1e4) - 2.800_422_902_789_364_3).abs() < 1e-14);
    }

    #[test]
    fn quotient_direct_measurement_agrees() {
        // q(R,K) must equal the measured quotient |f(x0) - f(-x0)| / |2x0|^{1/K}.
        let params = ExtremalParams::new(2.0, 100.0).unwrap();
        let x0 = params.slit_endpoint();
        let fa = extremal_disk_map(c(x0, 0.0), &params).unwrap();
        let fb = extremal_disk_map(c(-x0, 0.0), &params).unwrap();
        let measured = (fa - fb).norm() / (2.0 * x0).powf(0.5);
        assert!((measured - extremal_quotient(&params)).abs() < 1e-12);
    }

    #[test]
    fn quotient_monotone_with_limit() {
        for &k in &[1.5, 2.0, 4.0, 10.0] {
            let limit = 4.0f64.powf(1.0 - 1.0 / k);
            let mut prev = 0.0;
            for &r in &DEFAULT_R_GRID {
                let q = extremal_quotient(&ExtremalParams::new(k, r).unwrap());
                assert!(q > prev, "q not increasing at K={k}, R={r}");
                assert!(q < limit, "q reached the limit prematurely at K={k}, R={r}");
                prev = q;
            }
        }
    }

    #[test]
    fn dilatation_bound_values() {
        let b = analytic_dilatation_bound(&ExtremalParams::new(2.0, 100.0).unwrap());
        assert!((b - 2.040_812_162_024_283).abs() < 1e-14);
        // Single affine factor at R = √3 has dilatation exactly 2.
        let kappa = (3.0f64 + 1.0) / (3.0 - 1.0);
        assert_eq!(kappa, 2.0);
        // Bound tends to K at rate 2K·R^(-2/K): 4e-6 at K=2, R=1e6.
        let b_large = analytic_dilatation_bound(&ExtremalParams::new(2.0, 1e6).unwrap());
        assert!((b_large - 2.0).abs() < 5e-6);
        assert!(b_large > 2.0);
    }

    #[test]
    fn params_validation() {
        assert!(ExtremalParams::new(0.9, 10.0).is_err());
        assert!(ExtremalParams::new(2.0, 1.0).is_err());
        assert!(ExtremalParams::new(f64::NAN, 10.0).is_err());
        let p = ExtremalParams::new(2.0, 100.0).unwrap();
        assert!((p.rprime - 10.0).abs() < 1e-12);
        // Foci identity: a² - b² = 4 exactly in exact arithmetic.
        let (a, b) = (semi_major(7.3), semi_minor(7.3));
        assert!((a * a - b * b - 4.0).abs() < 1e-12);
    }
}
