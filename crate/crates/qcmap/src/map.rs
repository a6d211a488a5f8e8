//! A common handle for the maps the toolkit produces.
//!
//! Closed-form families (identity, the extremal disk maps, radial
//! stretches, barrel maps, affine shears) evaluate pointwise from their
//! parameters; solver output is the identity plus a grid-sampled
//! correction, evaluated by bilinear interpolation.

use crate::error::{QcError, Result};
use crate::geometry::{self, ExtremalParams};
use crate::grid::{GridField, GridSpec};
use crate::solver::SolveReport;
use num_complex::Complex64;

/// A quasiconformal map the toolkit can evaluate everywhere.
#[derive(Debug, Clone)]
pub enum DiscreteMap {
    /// `f(z) = z`.
    Identity,
    /// The extremal self-map of the disk for its parameters; the identity
    /// outside the open disk.
    Extremal(ExtremalParams),
    /// `f(z) = z|z|^{1/K - 1}`.
    RadialStretch { k: f64 },
    /// `f(z) = z|z|^{β-1}` with `β = (1-λ)/(1+λ)`; the radial stretch
    /// continued to complex parameter, with coefficient `-λ z/z̄`.
    Barrel { lambda: Complex64 },
    /// `f(z) = z + μ z̄`, the map with constant coefficient `μ`.
    Affine { mu: Complex64 },
    /// `f(z) = z + c(z)` with `c` sampled on a grid.
    Grid { correction: GridField, report: SolveReport },
}

impl DiscreteMap {
    pub fn radial_stretch(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 1.0 {
            return Err(QcError::Parameter(format!("stretch exponent needs K >= 1, got {k}")));
        }
        Ok(DiscreteMap::RadialStretch { k })
    }

    pub fn barrel(lambda: Complex64) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() || lambda.norm() >= 1.0 {
            return Err(QcError::Parameter(format!(
                "barrel parameter must lie in the open unit disk, got {lambda}"
            )));
        }
        Ok(DiscreteMap::Barrel { lambda })
    }

    pub fn affine(mu: Complex64) -> Result<Self> {
        if !mu.re.is_finite() || !mu.im.is_finite() || mu.norm() >= 1.0 {
            return Err(QcError::Parameter(format!(
                "affine coefficient must lie in the open unit disk, got {mu}"
            )));
        }
        Ok(DiscreteMap::Affine { mu })
    }

    /// Evaluate the map. Total: every variant is defined on the whole
    /// plane (grid corrections clamp to the box edge).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            DiscreteMap::Identity => z,
            DiscreteMap::Extremal(p) => {
                if z.norm() >= 1.0 {
                    z
                } else {
                    geometry::extremal_disk_map(z, p).expect("interior point is in the domain")
                }
            }
            DiscreteMap::RadialStretch { k } => geometry::radial_stretch_unchecked(z, *k),
            DiscreteMap::Barrel { lambda } => {
                if z.re == 0.0 && z.im == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let l = *lambda;
                let beta = (1.0 - l) / (1.0 + l);
                z * ((beta - 1.0) * z.norm().ln()).exp()
            }
            DiscreteMap::Affine { mu } => z + *mu * z.conj(),
            DiscreteMap::Grid { correction, .. } => z + correction.bilinear(z),
        }
    }

    /// Whether evaluation goes through a closed form rather than grid
    /// interpolation.
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, DiscreteMap::Grid { .. })
    }

    /// Grid geometry for solver-produced maps.
    pub fn spec(&self) -> Option<GridSpec> {
        match self {
            DiscreteMap::Grid { correction, .. } => Some(correction.spec),
            _ => None,
        }
    }

    /// Solve diagnostics for solver-produced maps.
    pub fn report(&self) -> Option<&SolveReport> {
        match self {
            DiscreteMap::Grid { report, .. } => Some(report),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_variant_matches_the_closed_form() {
        let p = ExtremalParams::new(2.0, 10.0).unwrap();
        let map = DiscreteMap::Extremal(p);
        let z = Complex64::new(0.3, 0.4);
        let direct = geometry::extremal_disk_map(z, &p).unwrap();
        assert_eq!(map.eval(z), direct);
        assert!(
            (map.eval(z) - Complex64::new(0.4469209851960839, 0.5168693427186055)).norm() < 1e-15
        );
        // Identity outside the open disk.
        let w = Complex64::new(0.8, 0.9);
        assert_eq!(map.eval(w), w);
    }

    #[test]
    fn barrel_at_real_parameter_is_the_radial_stretch() {
        let k = 2.0;
        let lambda = Complex64::new((k - 1.0) / (k + 1.0), 0.0);
        let barrel = DiscreteMap::barrel(lambda).unwrap();
        let stretch = DiscreteMap::radial_stretch(k).unwrap();
        for &(x, y) in &[(0.3, 0.4), (-0.7, 0.1), (0.0, 0.9), (0.25, 0.0)] {
            let z = Complex64::new(x, y);
            assert!((barrel.eval(z) - stretch.eval(z)).norm() < 1e-14, "at {z}");
        }
    }

    #[test]
    fn barrel_frozen_value_and_origin() {
        // λ = 0.2 gives β = 2/3, so f(0.25) = 0.25^{2/3}.
        let barrel = DiscreteMap::barrel(Complex64::new(0.2, 0.0)).unwrap();
        let got = barrel.eval(Complex64::new(0.25, 0.0));
        assert!((got.re - 0.3968502629920499).abs() < 1e-15 && got.im.abs() < 1e-15);
        assert_eq!(barrel.eval(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn affine_variant_is_exact() {
        let mu = Complex64::new(0.2, -0.1);
        let map = DiscreteMap::affine(mu).unwrap();
        let z = Complex64::new(1.5, -2.25);
        assert_eq!(map.eval(z), z + mu * z.conj());
    }

    #[test]
    fn parameter_validation_rejects_bad_inputs() {
        assert!(DiscreteMap::radial_stretch(0.5).is_err());
        assert!(DiscreteMap::barrel(Complex64::new(1.0, 0.0)).is_err());
        assert!(DiscreteMap::affine(Complex64::new(0.8, 0.8)).is_err());
    }

    #[test]
    fn grid_variant_adds_the_interpolated_correction() {
        let spec = GridSpec::new(64, 4.0).unwrap();
        let c = Complex64::new(0.125, -0.5);
        let correction = GridField::from_fn(spec, |_| c);
        let map = DiscreteMap::Grid { correction, report: SolveReport::trivial() };
        let z = Complex64::new(0.33, -0.41);
        assert!((map.eval(z) - (z + c)).norm() < 1e-14);
        assert!(!map.is_closed_form());
        assert_eq!(map.spec(), Some(spec));
    }
}
