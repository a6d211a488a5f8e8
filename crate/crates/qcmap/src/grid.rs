//! Uniform square grids over `[-L, L]²` and complex fields sampled on them.

use crate::error::{QcError, Result};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

/// Grid geometry: `n` samples per axis on the box `[-L, L]²`.
///
/// The node with index `(j, k)` sits at `(-L + j·h, -L + k·h)`, `h = 2L/n`;
/// the right and top box edges are not sampled (periodic layout).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub half_width: f64,
}

impl GridSpec {
    /// `n` must be a power of two ≥ 64; `L ≥ 2` keeps the unit disk well
    /// inside the box.
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if !n.is_power_of_two() || n < 64 {
            return Err(QcError::Parameter(format!(
                "grid size must be a power of two >= 64, got {n}"
            )));
        }
        if !half_width.is_finite() || half_width < 2.0 {
            return Err(QcError::Parameter(format!(
                "grid half-width must be finite and >= 2, got {half_width}"
            )));
        }
        Ok(Self { n, half_width })
    }

    pub fn h(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn node(&self, j: usize, k: usize) -> Complex64 {
        let h = self.h();
        Complex64::new(-self.half_width + j as f64 * h, -self.half_width + k as f64 * h)
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A complex field on a [`GridSpec`], row-major with the x-index outermost:
/// `values[j * n + k]` is the sample at `node(j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
}

impl GridField {
    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, values: vec![Complex64::new(0.0, 0.0); spec.len()] }
    }

    /// Samples `f` at every node.
    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        let n = spec.n;
        let mut values = Vec::with_capacity(spec.len());
        for j in 0..n {
            for k in 0..n {
                values.push(f(spec.node(j, k)));
            }
        }
        Self { spec, values }
    }

    #[inline]
    pub fn at(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.spec.n + k]
    }

    #[inline]
    pub fn at_mut(&mut self, j: usize, k: usize) -> &mut Complex64 {
        &mut self.values[j * self.spec.n + k]
    }

    /// Grid sum (used for the mass split in the transforms).
    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// Max modulus over nodes selected by `pred` (on the node position).
    pub fn max_abs_where(&self, mut pred: impl FnMut(Complex64) -> bool) -> f64 {
        let n = self.spec.n;
        let mut best = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                if pred(self.spec.node(j, k)) {
                    best = best.max(self.values[j * n + k].norm());
                }
            }
        }
        best
    }

    /// Bilinear interpolation at `z`, clamped to the sampled box.
    pub fn bilinear(&self, z: Complex64) -> Complex64 {
        let n = self.spec.n;
        let h = self.spec.h();
        let fx = ((z.re + self.spec.half_width) / h).clamp(0.0, (n - 1) as f64);
        let fy = ((z.im + self.spec.half_width) / h).clamp(0.0, (n - 1) as f64);
        let j = (fx as usize).min(n - 2);
        let k = (fy as usize).min(n - 2);
        let tx = fx - j as f64;
        let ty = fy - k as f64;
        let v00 = self.at(j, k);
        let v10 = self.at(j + 1, k);
        let v01 = self.at(j, k + 1);
        let v11 = self.at(j + 1, k + 1);
        v00 * (1.0 - tx) * (1.0 - ty)
            + v10 * tx * (1.0 - ty)
            + v01 * (1.0 - tx) * ty
            + v11 * tx * ty
    }

    /// Serializes to `path`: a one-line JSON header (n, half-width, layout,
    /// encoding) followed by the raw samples as little-endian f64 pairs
    /// (re, im) in row-major order. Round-trips bit-exactly.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut out = Vec::with_capacity(16 * self.values.len() + 128);
        let header = format!(
            "{{\"format\":\"qcmap-gridfield\",\"version\":1,\"n\":{},\"half_width\":{},\"order\":\"row-major-x-outer\",\"encoding\":\"f64-le-re-im\"}}\n",
            self.spec.n, self.spec.half_width
        );
        out.extend_from_slice(header.as_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.re.to_le_bytes());
            out.extend_from_slice(&v.im.to_le_bytes());
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(&out)?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        let nl = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| QcError::Format("missing header line".into()))?;
        let header = std::str::from_utf8(&bytes[..nl])
            .map_err(|_| QcError::Format("header is not UTF-8".into()))?;
        if !header.contains("\"format\":\"qcmap-gridfield\"") {
            return Err(QcError::Format("not a qcmap-gridfield file".into()));
        }
        let n = header_number(header, "\"n\":")? as usize;
        let half_width = header_number(header, "\"half_width\":")?;
        let spec = GridSpec::new(n, half_width)?;
        let payload = &bytes[nl + 1..];
        if payload.len() != 16 * spec.len() {
            return Err(QcError::Format(format!(
                "payload holds {} bytes, expected {}",
                payload.len(),
                16 * spec.len()
            )));
        }
        let mut values = Vec::with_capacity(spec.len());
        for chunk in payload.chunks_exact(16) {
            let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
            let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
            values.push(Complex64::new(re, im));
        }
        Ok(Self { spec, values })
    }
}

fn header_number(header: &str, key: &str) -> Result<f64> {
    let start = header
        .find(key)
        .ok_or_else(|| QcError::Format(format!("header key {key} missing")))?
        + key.len();
    let rest = &header[start..];
    let end = rest
        .find(|c| c == ',' || c == '}')
        .ok_or_else(|| QcError::Format("unterminated header value".into()))?;
    rest[..end]
        .trim()
        .parse::<f64>()
        .map_err(|_| QcError::Format(format!("bad numeric value for {key}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(100, 4.0).is_err());
        assert!(GridSpec::new(32, 4.0).is_err());
        assert!(GridSpec::new(64, 1.5).is_err());
        let s = GridSpec::new(128, 4.0).unwrap();
        assert!((s.h() - 0.0625).abs() < 1e-15);
        assert_eq!(s.node(0, 0), Complex64::new(-4.0, -4.0));
        assert_eq!(s.node(64, 64), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bilinear_exact_on_affine() {
        // Bilinear interpolation reproduces z ↦ a z + b z̄ exactly.
        let spec = GridSpec::new(64, 4.0).unwrap();
        let a = Complex64::new(0.7, 0.2);
        let b = Complex64::new(-0.1, 0.4);
        let field = GridField::from_fn(spec, |z| a * z + b * z.conj());
        for &(x, y) in &[(0.37, -1.21), (2.05, 0.66), (-3.3, 3.1)] {
            let z = Complex64::new(x, y);
            let want = a * z + b * z.conj();
            assert!((field.bilinear(z) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn dump_round_trip_is_bit_exact() {
        let spec = GridSpec::new(64, 2.0).unwrap();
        // Include awkward bit patterns: signed zeros, subnormals, exact halves.
        let field = GridField::from_fn(spec, |z| {
            Complex64::new(
                if z.re > 0.0 { z.re * 1e-310 } else { -0.0 },
                z.im + 0.5,
            )
        });
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.qcgrid");
        field.write_to(&path).unwrap();
        let back = GridField::read_from(&path).unwrap();
        assert_eq!(back.spec, field.spec);
        assert_eq!(back.values.len(), field.values.len());
        for (a, b) in field.values.iter().zip(back.values.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn dump_rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.qcgrid");
        std::fs::write(&path, b"{\"format\":\"qcmap-gridfield\",\"version\":1,\"n\":64,\"half_width\":2}\nshort").unwrap();
        assert!(GridField::read_from(&path).is_err());
        std::fs::write(&path, b"not a header at all").unwrap();
        assert!(GridField::read_from(&path).is_err());
    }
}
