//! Acceptance gate: nine numbered checks covering the full toolkit.
//! Every check runs regardless of earlier outcomes; one PASS/FAIL line
//! prints per criterion (visible with `--nocapture`) and the test
//! asserts only after the report is complete.

use qcmap::geometry::{
    self, ExtremalParams, DEFAULT_K_GRID, DEFAULT_R_GRID,
};
use qcmap::grid::{GridField, GridSpec};
use qcmap::map::DiscreteMap;
use qcmap::solver::{self, BeltramiField};
use qcmap::transforms::SpectralEngine;
use qcmap::verify::{self, ExclusionSet};
use qcmap::Complex64;
use std::time::Instant;

struct Outcome {
    criterion: usize,
    pass: bool,
    detail: String,
}

fn record(out: &mut Vec<Outcome>, criterion: usize, result: Result<(bool, String), String>) {
    let (pass, detail) = match result {
        Ok((pass, detail)) => (pass, detail),
        Err(e) => (false, format!("errored: {e}")),
    };
    out.push(Outcome { criterion, pass, detail });
}

/// Deterministic probe points: golden-angle spiral over an annulus.
fn annulus_points(r_min: f64, r_max: f64, count: usize) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..count)
        .map(|i| {
            let t = (i as f64 + 0.5) / count as f64;
            let r = r_min + (r_max - r_min) * t;
            Complex64::from_polar(r, golden * i as f64)
        })
        .collect()
}

fn max_err(map: &DiscreteMap, exact: impl Fn(Complex64) -> Complex64, pts: &[Complex64]) -> f64 {
    pts.iter().map(|&z| (map.eval(z) - exact(z)).norm()).fold(0.0, f64::max)
}

#[test]
fn acceptance_criteria() {
    let mut outcomes: Vec<Outcome> = Vec::new();
    let spec512 = GridSpec::new(512, 4.0).unwrap();
    let spec1024 = GridSpec::new(1024, 4.0).unwrap();
    let engine512 = SpectralEngine::new(spec512);

    // ------------------------------------------------------------------
    // 1. The closed-form quotient approaches the sharp constant:
    //    relative gap at R = 1e4 within 2·R^(-2/K) for K ∈ {1.5, 2, 4}.
    record(&mut outcomes, 1, (|| {
        let r = 1e4;
        let mut worst: Option<(f64, f64, f64)> = None;
        for &k in &[1.5, 2.0, 4.0] {
            let p = ExtremalParams::new(k, r).map_err(|e| e.to_string())?;
            let bound = verify::sharp_bound(k);
            let gap = (bound - geometry::extremal_quotient(&p)) / bound;
            let cap = 2.0 * r.powf(-2.0 / k);
            if gap <= 0.0 || gap > cap {
                return Ok((false, format!("K={k}: relative gap {gap:.3e} outside (0, {cap:.3e}]")));
            }
            if worst.map_or(true, |(_, g, c)| gap / cap > g / c) {
                worst = Some((k, gap, cap));
            }
        }
        let (k, gap, cap) = worst.unwrap();
        Ok((true, format!("worst K={k}: relative gap {gap:.3e} <= {cap:.3e}")))
    })());

    // ------------------------------------------------------------------
    // 2. No bound violations: the extremal family over the default
    //    parameter grids, plus twenty seeded random-coefficient solves
    //    at 512² (K = 2), all inside the sharp constant.
    record(&mut outcomes, 2, (|| {
        for &k in DEFAULT_K_GRID.iter() {
            for &r in DEFAULT_R_GRID.iter() {
                let p = ExtremalParams::new(k, r).map_err(|e| e.to_string())?;
                let rep = verify::check_bound(&DiscreteMap::Extremal(p), k)
                    .map_err(|e| e.to_string())?;
                if rep.violated {
                    return Ok((false, format!("extremal K={k} R={r}: estimate {} > bound {}", rep.estimate, rep.bound)));
                }
            }
        }
        let started = Instant::now();
        let mut max_ratio = 0.0f64;
        for seed in 0..20u64 {
            let mu = solver::random_beltrami(seed, 1.0 / 3.0, 4, spec512)
                .map_err(|e| e.to_string())?;
            let map = solver::principal_solution_with(&engine512, &mu)
                .map_err(|e| format!("seed {seed}: {e}"))?;
            let rep = verify::check_bound(&map, 2.0).map_err(|e| e.to_string())?;
            if rep.violated {
                return Ok((false, format!("random seed {seed}: estimate {} > bound {}", rep.estimate, rep.bound)));
            }
            max_ratio = max_ratio.max(rep.ratio());
        }
        let secs = started.elapsed().as_secs_f64();
        let budget_ok = secs < 300.0;
        Ok((budget_ok, format!(
            "20 extremal + 20 random maps all under the bound; random batch {secs:.0}s (< 300s), max ratio {max_ratio:.4}"
        )))
    })());

    // ------------------------------------------------------------------
    // 3. Solver accuracy against closed forms at 512², improving at
    //    least 2× at 1024², measured away from the coefficient jump at
    //    |z| = 1 (and away from the stretch map's singular origin).
    let mut const_map_512: Option<DiscreteMap> = None;
    let mut stretch_map_512: Option<DiscreteMap> = None;
    record(&mut outcomes, 3, (|| {
        let c = Complex64::new(0.3, 0.0);
        let inside = annulus_points(0.0, 0.9, 3000);
        let inside_stretch = annulus_points(0.1, 0.9, 3000);
        let outside = annulus_points(1.1, 3.0, 3000);

        let const_exact = |z: Complex64| {
            if z.norm() < 1.0 { z + c * z.conj() } else { z + c / z }
        };
        let stretch_exact = |z: Complex64| {
            if z.norm() < 1.0 { geometry::radial_stretch(z, 2.0).unwrap() } else { z }
        };

        let mut details = Vec::new();
        for (name, exact, inner) in [
            ("const", &const_exact as &dyn Fn(Complex64) -> Complex64, &inside),
            ("stretch", &stretch_exact as &dyn Fn(Complex64) -> Complex64, &inside_stretch),
        ] {
            let build = |spec: GridSpec| -> Result<DiscreteMap, String> {
                let field = GridField::from_fn(spec, |z| {
                    if z.norm() >= 1.0 {
                        Complex64::new(0.0, 0.0)
                    } else if name == "const" {
                        c
                    } else {
                        geometry::radial_stretch_beltrami(z, 2.0)
                    }
                });
                let mu = BeltramiField::new(field).map_err(|e| e.to_string())?;
                solver::principal_solution(&mu).map_err(|e| e.to_string())
            };
            let coarse = build(spec512)?;
            let fine = build(spec1024)?;
            let e512 = max_err(&coarse, exact, inner).max(max_err(&coarse, exact, &outside));
            let e1024 = max_err(&fine, exact, inner).max(max_err(&fine, exact, &outside));
            if name == "const" {
                const_map_512 = Some(coarse);
            } else {
                stretch_map_512 = Some(coarse);
            }
            if e512 > 1e-2 {
                return Ok((false, format!("{name}: 512² error {e512:.3e} > 1e-2")));
            }
            if e1024 > e512 / 2.0 {
                return Ok((false, format!("{name}: 1024² error {e1024:.3e} not 2x better than {e512:.3e}")));
            }
            details.push(format!("{name} 512²={e512:.2e}, 1024²={e1024:.2e} ({:.1}x)", e512 / e1024));
        }
        Ok((true, details.join("; ")))
    })());

    // ------------------------------------------------------------------
    // 4. Beltrami-equation residuals of solved maps stay below 5e-3 on
    //    the measurement region r ≤ 0.9 (minus documented exclusions).
    record(&mut outcomes, 4, (|| {
        let mut details = Vec::new();

        let const_map = match &const_map_512 {
            Some(m) => m.clone(),
            None => {
                let field = GridField::from_fn(spec512, |z| {
                    if z.norm() < 1.0 { Complex64::new(0.3, 0.0) } else { Complex64::new(0.0, 0.0) }
                });
                solver::principal_solution_with(
                    &engine512,
                    &BeltramiField::new(field).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?
            }
        };
        let const_mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            if z.norm() < 1.0 { Complex64::new(0.3, 0.0) } else { Complex64::new(0.0, 0.0) }
        }))
        .map_err(|e| e.to_string())?;
        let r_const = verify::equation_residual(&const_map, &const_mu, &ExclusionSet::none())
            .map_err(|e| e.to_string())?;
        details.push(format!("const {r_const:.2e}"));

        let stretch_mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            if z.norm() < 1.0 {
                geometry::radial_stretch_beltrami(z, 2.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
        .map_err(|e| e.to_string())?;
        let stretch_map = match &stretch_map_512 {
            Some(m) => m.clone(),
            None => solver::principal_solution_with(&engine512, &stretch_mu)
                .map_err(|e| e.to_string())?,
        };
        let r_stretch =
            verify::equation_residual(&stretch_map, &stretch_mu, &ExclusionSet::origin_disk(0.3))
                .map_err(|e| e.to_string())?;
        details.push(format!("stretch {r_stretch:.2e}"));

        let random_mu =
            solver::random_beltrami(0, 1.0 / 3.0, 4, spec512).map_err(|e| e.to_string())?;
        let random_map = solver::principal_solution_with(&engine512, &random_mu)
            .map_err(|e| e.to_string())?;
        let r_random = verify::equation_residual(&random_map, &random_mu, &ExclusionSet::none())
            .map_err(|e| e.to_string())?;
        details.push(format!("random {r_random:.2e}"));

        let p = ExtremalParams::new(2.0, 10.0).map_err(|e| e.to_string())?;
        let ext_mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            geometry::extremal_beltrami(z, &p)
        }))
        .map_err(|e| e.to_string())?;
        let ext_map = solver::principal_solution_with(&engine512, &ext_mu)
            .map_err(|e| e.to_string())?;
        let r_ext = verify::equation_residual(
            &ext_map,
            &ext_mu,
            &ExclusionSet::slit_strip(&p, 0.2),
        )
        .map_err(|e| e.to_string())?;
        details.push(format!("extremal {r_ext:.2e}"));

        let worst = [r_const, r_stretch, r_random, r_ext].into_iter().fold(0.0, f64::max);
        Ok((worst <= 5e-3, format!("{} (cap 5e-3)", details.join(", "))))
    })());

    // ------------------------------------------------------------------
    // 5. Koebe-style image control along the flow of the extremal
    //    coefficient: max |f^λ| over eight samples on |λ| = 1/3 stays
    //    below 2.
    record(&mut outcomes, 5, (|| {
        let p = ExtremalParams::new(2.0, 10.0).map_err(|e| e.to_string())?;
        let mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            geometry::extremal_beltrami(z, &p)
        }))
        .map_err(|e| e.to_string())?;
        let lambdas: Vec<Complex64> = (0..8)
            .map(|j| Complex64::from_polar(1.0 / 3.0, 2.0 * std::f64::consts::PI * j as f64 / 8.0))
            .collect();
        let max = verify::koebe_check(&mu, 2.0, &lambdas).map_err(|e| e.to_string())?;
        Ok((max < 2.0, format!("max flow image modulus {max:.4} < 2")))
    })());

    // ------------------------------------------------------------------
    // 6. Harnack comparison: u_K ≤ u_0/K + 5e-3 for stretch, random,
    //    and extremal coefficients; 16-point mean-value defect ≤ 1e-3
    //    for the closed-form coefficients; the endpoint slack of the
    //    extremal family is negative and rises toward 0 with R.
    record(&mut outcomes, 6, (|| {
        let k = 2.0;
        let mut details = Vec::new();

        let stretch_mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            if z.norm() < 1.0 {
                geometry::radial_stretch_beltrami(z, k)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
        .map_err(|e| e.to_string())?;
        let p10 = ExtremalParams::new(k, 10.0).map_err(|e| e.to_string())?;
        let ext_mu = BeltramiField::new(GridField::from_fn(spec512, |z| {
            geometry::extremal_beltrami(z, &p10)
        }))
        .map_err(|e| e.to_string())?;
        let random_mu =
            solver::random_beltrami(7, 1.0 / 3.0, 4, spec512).map_err(|e| e.to_string())?;

        let pairs = [
            Complex64::new(0.25, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        for (name, mu, closed_form) in [
            ("stretch", &stretch_mu, true),
            ("extremal", &ext_mu, true),
            ("random", &random_mu, false),
        ] {
            for &z in &pairs {
                let probe = verify::harnack_probe(mu, z, -z, k).map_err(|e| e.to_string())?;
                let slack = probe.uk - probe.u0 / k;
                if slack > 5e-3 {
                    return Ok((false, format!("{name} at ±{z}: u_K - u_0/K = {slack:.3e} > 5e-3")));
                }
                if closed_form && probe.mean_value_defect > 1e-3 {
                    return Ok((false, format!(
                        "{name} at ±{z}: mean-value defect {:.3e} > 1e-3",
                        probe.mean_value_defect
                    )));
                }
            }
            details.push(name.to_string());
        }

        let mut prev = f64::NEG_INFINITY;
        for &r in &[10.0, 100.0, 1000.0] {
            let p = ExtremalParams::new(k, r).map_err(|e| e.to_string())?;
            let slack = verify::harnack_endpoint_slack(&p);
            if slack >= 0.0 {
                return Ok((false, format!("endpoint slack not negative at R={r}: {slack}")));
            }
            if slack <= prev {
                return Ok((false, format!("endpoint slack not rising toward 0 at R={r}")));
            }
            prev = slack;
        }
        Ok((true, format!(
            "probes ({}) satisfy u_K <= u_0/K + 5e-3; endpoint slack rises {prev:.2e} -> 0",
            details.join(", ")
        )))
    })());

    // ------------------------------------------------------------------
    // 7. Constants table: exact values at K = 2 and the strict
    //    sharp < vz comparison across fifty log-spaced K in (1, 100].
    record(&mut outcomes, 7, (|| {
        let t = verify::constants(2.0).map_err(|e| e.to_string())?;
        for (name, got, want) in [
            ("mori", t.mori, 16.0),
            ("conjecture", t.conjecture, 4.0),
            ("sharp", t.sharp, 2.0),
            ("vz", t.vz, 4.0),
        ] {
            if (got - want).abs() > 1e-12 {
                return Ok((false, format!("{name}(2) = {got}, want {want}")));
            }
        }
        for i in 0..50 {
            let k = 10f64.powf(2.0 * (i as f64 + 1.0) / 50.0);
            let t = verify::constants(k).map_err(|e| e.to_string())?;
            if t.sharp >= t.vz {
                return Ok((false, format!("sharp {} !< vz {} at K={k}", t.sharp, t.vz)));
            }
        }
        Ok((true, "K=2 table exact to 1e-12; sharp < vz on 50 log-spaced K in (1,100]".into()))
    })());

    // ------------------------------------------------------------------
    // 8. Measured dilatation of every default-grid extremal map stays
    //    within 2e-2 of its analytic cap, and the cap itself hugs K for
    //    moderate K at R = 1e4.
    record(&mut outcomes, 8, (|| {
        let mut worst_excess = f64::NEG_INFINITY;
        for &k in DEFAULT_K_GRID.iter() {
            for &r in DEFAULT_R_GRID.iter() {
                let p = ExtremalParams::new(k, r).map_err(|e| e.to_string())?;
                let cap = geometry::analytic_dilatation_bound(&p);
                let exclude = ExclusionSet::slit_strip(&p, 2.0 * spec512.h());
                let rep = verify::dilatation_estimate(&DiscreteMap::Extremal(p), spec512, &exclude);
                let excess = rep.max_dilatation - cap;
                worst_excess = worst_excess.max(excess);
                if excess > 2e-2 {
                    return Ok((false, format!(
                        "K={k} R={r}: measured {:.4} exceeds cap {cap:.4} by {excess:.3e}",
                        rep.max_dilatation
                    )));
                }
                if rep.samples == 0 {
                    return Ok((false, format!("K={k} R={r}: no admissible samples")));
                }
            }
        }
        // The analytic cap settles onto K as R grows.
        for &k in &[1.5, 2.0, 4.0, 10.0] {
            let mut prev = f64::INFINITY;
            for &r in DEFAULT_R_GRID.iter() {
                let p = ExtremalParams::new(k, r).map_err(|e| e.to_string())?;
                let ratio = geometry::analytic_dilatation_bound(&p) / k;
                if ratio >= prev {
                    return Ok((false, format!("cap/K not decreasing at K={k}, R={r}")));
                }
                prev = ratio;
            }
        }
        for &k in &[1.5, 2.0] {
            let p = ExtremalParams::new(k, 1e4).map_err(|e| e.to_string())?;
            let ratio = geometry::analytic_dilatation_bound(&p) / k;
            if ratio > 1.005 {
                return Ok((false, format!("cap/K = {ratio:.4} > 1.005 at K={k}, R=1e4")));
            }
        }
        Ok((true, format!("all 20 maps within 2e-2 of the cap (worst excess {worst_excess:.2e}); cap/K <= 1.005 at R=1e4 for K<=2")))
    })());

    // ------------------------------------------------------------------
    // 9. The sweep artifact is byte-stable across runs.
    record(&mut outcomes, 9, (|| {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let run = |name: &str| -> Result<Vec<u8>, String> {
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_qcmap"))
                .args(["sweep", "--out", name])
                .current_dir(dir.path())
                .env_remove("QCMAP_OUT_DIR")
                .output()
                .map_err(|e| e.to_string())?;
            if out.status.code() != Some(0) {
                return Err(format!("sweep exited {:?}", out.status.code()));
            }
            std::fs::read(dir.path().join(name)).map_err(|e| e.to_string())
        };
        let a = run("a.csv")?;
        let b = run("b.csv")?;
        let rows = a.iter().filter(|&&c| c == b'\n').count().saturating_sub(1);
        Ok((a == b, format!("two runs byte-identical ({rows} rows)")))
    })());

    // ------------------------------------------------------------------
    // Write through the raw stream so the report shows even under the
    // harness's output capture (println! would only surface on failure
    // or with --nocapture).
    use std::io::Write;
    let mut report = String::new();
    let mut all_pass = true;
    for o in &outcomes {
        report.push_str(&format!(
            "criterion {} {}: {}\n",
            o.criterion,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        ));
        all_pass &= o.pass;
    }
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(report.as_bytes());
    let _ = stdout.flush();
    assert!(all_pass, "acceptance criteria failed:\n{report}");
}

