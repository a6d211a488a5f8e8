//! Command-line front end.
//!
//! Subcommands map onto the library: `extremal` (closed-form family),
//! `solve` (principal solution for a coefficient), `flow` (Koebe and
//! Harnack probes along a holomorphic flow), `verify` (Hölder bound
//! check), `sweep` ((K,R) table of quotient/bound ratios), and
//! `constants` (comparison-constants table).
//!
//! Contract: artifacts are byte-identical for identical configuration;
//! exit 0 on success, 2 for configuration errors, 3 for solver
//! non-convergence, 4 when a bound check reports a violation, 5 for
//! file I/O errors. Settings resolve flag → config file (`--config`,
//! flat `key=value` lines) → built-in default, and relative output
//! paths land in `$QCMAP_OUT_DIR` when set.

use crate::emit::{self, JsonObj};
use crate::error::{QcError, Result};
use crate::geometry::{self, ExtremalParams, DEFAULT_K_GRID, DEFAULT_R_GRID};
use crate::grid::{GridField, GridSpec};
use crate::map::DiscreteMap;
use crate::solver::{self, BeltramiField};
use crate::verify::{self, ExclusionSet, HolderReport, SearchBudget};
use clap::{Arg, ArgAction, ArgMatches, Command};
use num_complex::Complex64;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

/// Entry point returning the process exit code.
pub fn main_entry() -> i32 {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &QcError) -> i32 {
    match e {
        QcError::Parameter(_) | QcError::Domain(_) | QcError::Format(_) => 2,
        QcError::NoConvergence { .. } => 3,
        QcError::Io(_) => 5,
    }
}

fn flag(name: &'static str) -> Arg {
    Arg::new(name).long(name).action(ArgAction::Set)
}

fn build_command() -> Command {
    Command::new("qcmap")
        .about(
            "Extremal quasiconformal disk maps, a spectral Beltrami solver, \
             and sharp Holder-constant verification",
        )
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(flag("config").global(true).value_name("FILE").help("flat key=value settings file"))
        .arg(flag("out").global(true).value_name("PATH").help("artifact path (default <command>.<format>)"))
        .arg(flag("format").global(true).value_name("csv|json").help("artifact format"))
        .subcommand(
            Command::new("constants")
                .about("comparison-constants table at one K")
                .arg(flag("K").value_name("REAL").help("quasiconformality constant (default 2)")),
        )
        .subcommand(
            Command::new("extremal")
                .about("extremal family member: quotient and dilatation bound")
                .arg(flag("K").value_name("REAL").help("quasiconformality constant (default 2)"))
                .arg(flag("R").value_name("REAL").help("family parameter > 1 (default 10)"))
                .arg(flag("grid-n").value_name("N").help("grid resolution (default 512)"))
                .arg(flag("grid-l").value_name("L").help("grid half-width (default 4)"))
                .arg(flag("dump").value_name("PATH").help("write the map sampled on the grid")),
        )
        .subcommand(
            Command::new("solve")
                .about("principal solution for a Beltrami coefficient")
                .arg(flag("mu").value_name("SPEC").help(
                    "const:<re>[,<im>] | stretch:<K> | extremal (uses --K/--R) | random \
                     (uses --seed/--kinf/--modes) | path to a grid dump",
                ))
                .arg(flag("K").value_name("REAL").help("quasiconformality constant (default 2)"))
                .arg(flag("R").value_name("REAL").help("family parameter for --mu extremal (default 10)"))
                .arg(flag("grid-n").value_name("N").help("grid resolution (default 512)"))
                .arg(flag("grid-l").value_name("L").help("grid half-width (default 4)"))
                .arg(flag("seed").value_name("U64").help("random coefficient seed (default 0)"))
                .arg(flag("kinf").value_name("REAL").help("random coefficient sup modulus (default 1/3)"))
                .arg(flag("modes").value_name("N").help("random coefficient Fourier modes (default 4)"))
                .arg(flag("dump").value_name("PATH").help("write the solved correction field")),
        )
        .subcommand(
            Command::new("flow")
                .about("Koebe and Harnack probes along the holomorphic flow of a coefficient")
                .arg(flag("mu").value_name("SPEC").help("coefficient, as for solve"))
                .arg(flag("K").value_name("REAL").help("quasiconformality constant > 1 (default 2)"))
                .arg(flag("R").value_name("REAL").help("family parameter for --mu extremal (default 10)"))
                .arg(flag("grid-n").value_name("N").help("grid resolution (default 512)"))
                .arg(flag("grid-l").value_name("L").help("grid half-width (default 4)"))
                .arg(flag("seed").value_name("U64").help("random coefficient seed (default 0)"))
                .arg(flag("kinf").value_name("REAL").help("random coefficient sup modulus (default 1/3)"))
                .arg(flag("modes").value_name("N").help("random coefficient Fourier modes (default 4)"))
                .arg(flag("lambdas").value_name("N").help("samples on the flow circle (default 8)")),
        )
        .subcommand(
            Command::new("verify")
                .about("Hölder-constant estimate checked against the sharp bound")
                .arg(flag("map").value_name("identity|extremal|stretch|random").help("map under test (default extremal)"))
                .arg(flag("K").value_name("REAL").help("quasiconformality constant (default 2)"))
                .arg(flag("R").value_name("REAL").help("family parameter for --map extremal (default 10)"))
                .arg(flag("grid-n").value_name("N").help("grid resolution (default 512)"))
                .arg(flag("grid-l").value_name("L").help("grid half-width (default 4)"))
                .arg(flag("seed").value_name("U64").help("random map seed (default 0)"))
                .arg(flag("kinf").value_name("REAL").help("random map sup modulus (default (K-1)/(K+1))"))
                .arg(flag("modes").value_name("N").help("random map Fourier modes (default 4)"))
                .arg(flag("tol").value_name("REAL").help("violation tolerance override")),
        )
        .subcommand(
            Command::new("sweep")
                .about("(K,R) table of extremal quotient/bound ratios")
                .arg(flag("K").value_name("LIST").help("comma-separated K values (built-in grid by default)"))
                .arg(flag("R").value_name("LIST").help("comma-separated R values (built-in grid by default)")),
        )
}

fn run() -> Result<i32> {
    let matches = match build_command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(0);
            }
            eprint!("{e}");
            return Ok(2);
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let ctx = Ctx::new(sub)?;
    match name {
        "constants" => cmd_constants(&ctx),
        "extremal" => cmd_extremal(&ctx),
        "solve" => cmd_solve(&ctx),
        "flow" => cmd_flow(&ctx),
        "verify" => cmd_verify(&ctx),
        "sweep" => cmd_sweep(&ctx),
        other => Err(QcError::Parameter(format!("unknown command {other}"))),
    }
}

/// Settings resolution: flag → config file → default.
struct Ctx<'a> {
    m: &'a ArgMatches,
    file: HashMap<String, String>,
}

impl<'a> Ctx<'a> {
    fn new(m: &'a ArgMatches) -> Result<Self> {
        let file = match m.get_one::<String>("config") {
            Some(path) => load_config(Path::new(path))?,
            None => HashMap::new(),
        };
        Ok(Self { m, file })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        if let Ok(Some(v)) = self.m.try_get_one::<String>(key) {
            return Some(v.as_str());
        }
        self.file.get(key).map(|s| s.as_str())
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| QcError::Parameter(format!("{key}: expected a number, got {s:?}"))),
        }
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| QcError::Parameter(format!("{key}: expected an integer, got {s:?}"))),
        }
    }

    fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .trim()
                .parse::<u64>()
                .map_err(|_| QcError::Parameter(format!("{key}: expected an integer, got {s:?}"))),
        }
    }

    fn list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(s) => s
                .split(',')
                .map(|part| {
                    part.trim().parse::<f64>().map_err(|_| {
                        QcError::Parameter(format!("{key}: expected a comma list of numbers, got {s:?}"))
                    })
                })
                .collect(),
        }
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.raw(key)
            .ok_or_else(|| QcError::Parameter(format!("missing required setting --{key}")))
    }

    fn format_or(&self, default: &str) -> Result<String> {
        let f = self.raw("format").unwrap_or(default).to_string();
        if f == "csv" || f == "json" {
            Ok(f)
        } else {
            Err(QcError::Parameter(format!("format must be csv or json, got {f:?}")))
        }
    }

    fn grid(&self) -> Result<GridSpec> {
        let n = self.usize_or("grid-n", 512)?;
        let l = self.f64_or("grid-l", 4.0)?;
        GridSpec::new(n, l)
    }

    fn out_path(&self, command: &str, format: &str) -> PathBuf {
        match self.raw("out") {
            Some(p) => PathBuf::from(p),
            None => PathBuf::from(format!("{command}.{format}")),
        }
    }
}

fn load_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            QcError::Format(format!(
                "config {}:{}: expected key=value, got {line:?}",
                path.display(),
                idx + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn emit_artifact(ctx: &Ctx, command: &str, format: &str, content: &str) -> Result<()> {
    let out = ctx.out_path(command, format);
    emit::write_artifact(&out, content)?;
    print!("{content}");
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || QcError::Parameter(format!("expected <re>[,<im>], got {s:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(re.trim().parse::<f64>().map_err(|_| bad())?, 0.0)),
        [re, im] => Ok(Complex64::new(
            re.trim().parse::<f64>().map_err(|_| bad())?,
            im.trim().parse::<f64>().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

/// Build the coefficient named by `--mu`. Returns the field, a short
/// description for reports, and the grid actually used (a file dump
/// carries its own grid).
fn parse_mu(ctx: &Ctx) -> Result<(BeltramiField, String, GridSpec)> {
    let spec_str = ctx.require("mu")?.to_string();
    if let Some(rest) = spec_str.strip_prefix("const:") {
        let c = parse_complex(rest)?;
        if c.norm() >= 1.0 {
            return Err(QcError::Parameter(format!(
                "constant coefficient must have modulus < 1, got {c}"
            )));
        }
        let grid = ctx.grid()?;
        let field = GridField::from_fn(grid, |z| {
            if z.norm() < 1.0 { c } else { Complex64::new(0.0, 0.0) }
        });
        return Ok((BeltramiField::new(field)?, spec_str, grid));
    }
    if let Some(rest) = spec_str.strip_prefix("stretch:") {
        let k = rest.trim().parse::<f64>().map_err(|_| {
            QcError::Parameter(format!("stretch coefficient needs a K value, got {rest:?}"))
        })?;
        if !(k.is_finite() && k >= 1.0) {
            return Err(QcError::Parameter(format!("stretch needs K >= 1, got {k}")));
        }
        let grid = ctx.grid()?;
        let field = GridField::from_fn(grid, |z| {
            if z.norm() < 1.0 {
                geometry::radial_stretch_beltrami(z, k)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        return Ok((BeltramiField::new(field)?, spec_str, grid));
    }
    if spec_str == "extremal" {
        let k = ctx.f64_or("K", 2.0)?;
        let r = ctx.f64_or("R", 10.0)?;
        let p = ExtremalParams::new(k, r)?;
        let grid = ctx.grid()?;
        let field = GridField::from_fn(grid, |z| geometry::extremal_beltrami(z, &p));
        return Ok((BeltramiField::new(field)?, format!("extremal K={k} R={r}"), grid));
    }
    if spec_str == "random" {
        let grid = ctx.grid()?;
        let seed = ctx.u64_or("seed", 0)?;
        let kinf = ctx.f64_or("kinf", 1.0 / 3.0)?;
        let modes = ctx.usize_or("modes", 4)?;
        let mu = solver::random_beltrami(seed, kinf, modes, grid)?;
        return Ok((mu, format!("random seed={seed} kinf={kinf} modes={modes}"), grid));
    }
    // Anything else is a path to a grid dump of coefficient samples.
    let field = GridField::read_from(Path::new(&spec_str))?;
    let grid = field.spec;
    Ok((BeltramiField::new(field)?, spec_str, grid))
}

fn cmd_constants(ctx: &Ctx) -> Result<i32> {
    let k = ctx.f64_or("K", 2.0)?;
    let table = verify::constants(k)?;
    let format = ctx.format_or("json")?;
    let content = if format == "json" {
        emit::constants_json(&table)
    } else {
        emit::constants_csv(&table)
    };
    emit_artifact(ctx, "constants", &format, &content)?;
    Ok(0)
}

fn cmd_extremal(ctx: &Ctx) -> Result<i32> {
    let k = ctx.f64_or("K", 2.0)?;
    let r = ctx.f64_or("R", 10.0)?;
    let p = ExtremalParams::new(k, r)?;
    let quotient = geometry::extremal_quotient(&p);
    let cap = geometry::analytic_dilatation_bound(&p);

    if let Some(dump) = ctx.raw("dump") {
        let grid = ctx.grid()?;
        let map = DiscreteMap::Extremal(p);
        let field = GridField::from_fn(grid, |z| map.eval(z));
        field.write_to(&emit::resolve_artifact_path(Path::new(dump)))?;
    }

    let format = ctx.format_or("json")?;
    let content = if format == "json" {
        JsonObj::new()
            .num("K", k)
            .num("R", r)
            .num("quotient", quotient)
            .num("dilatation_bound", cap)
            .finish()
    } else {
        format!(
            "K,R,quotient,dilatation_bound\n{},{},{},{}\n",
            emit::fmt_f64(k),
            emit::fmt_f64(r),
            emit::fmt_f64(quotient),
            emit::fmt_f64(cap)
        )
    };
    emit_artifact(ctx, "extremal", &format, &content)?;
    Ok(0)
}

fn cmd_solve(ctx: &Ctx) -> Result<i32> {
    let (mu, desc, grid) = parse_mu(ctx)?;
    let map = solver::principal_solution(&mu)?;
    let residual = verify::equation_residual(&map, &mu, &ExclusionSet::none())?;
    let report = map.report().expect("solver maps carry a report").clone();

    if let Some(dump) = ctx.raw("dump") {
        if let DiscreteMap::Grid { correction, .. } = &map {
            correction.write_to(&emit::resolve_artifact_path(Path::new(dump)))?;
        }
    }

    let format = ctx.format_or("json")?;
    let content = if format == "json" {
        JsonObj::new()
            .text("mu", &desc)
            .int("grid_n", grid.n)
            .num("grid_l", grid.half_width)
            .num("sup_mu", mu.sup)
            .int("iterations", report.iterations)
            .num("final_step", report.final_step)
            .num("residual", residual)
            .opt_text("support_warning", report.support_warning.as_deref())
            .finish()
    } else {
        format!(
            "mu,grid_n,grid_l,sup_mu,iterations,final_step,residual\n{},{},{},{},{},{},{}\n",
            desc,
            grid.n,
            emit::fmt_f64(grid.half_width),
            emit::fmt_f64(mu.sup),
            report.iterations,
            emit::fmt_f64(report.final_step),
            emit::fmt_f64(residual)
        )
    };
    emit_artifact(ctx, "solve", &format, &content)?;
    Ok(0)
}

fn cmd_flow(ctx: &Ctx) -> Result<i32> {
    let k = ctx.f64_or("K", 2.0)?;
    if !(k.is_finite() && k > 1.0) {
        return Err(QcError::Parameter(format!("flow probes need K > 1, got {k}")));
    }
    let (mu, desc, _grid) = parse_mu(ctx)?;
    let count = ctx.usize_or("lambdas", 8)?;
    if count == 0 {
        return Err(QcError::Parameter("--lambdas must be at least 1".into()));
    }
    let radius = (k - 1.0) / (k + 1.0);
    let lambdas: Vec<Complex64> = (0..count)
        .map(|j| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / count as f64))
        .collect();
    let koebe_max = verify::koebe_check(&mu, k, &lambdas)?;

    let z = Complex64::new(0.25, 0.0);
    let probe = verify::harnack_probe(&mu, z, -z, k)?;
    let slack = probe.uk - probe.u0 / k;

    let format = ctx.format_or("json")?;
    let content = if format == "json" {
        JsonObj::new()
            .text("mu", &desc)
            .num("K", k)
            .int("lambda_samples", count)
            .num("koebe_max", koebe_max)
            .num("u0", probe.u0)
            .num("uk", probe.uk)
            .num("harnack_slack", slack)
            .num("mean_value_defect", probe.mean_value_defect)
            .finish()
    } else {
        format!(
            "mu,K,lambda_samples,koebe_max,u0,uk,harnack_slack,mean_value_defect\n{},{},{},{},{},{},{},{}\n",
            desc,
            emit::fmt_f64(k),
            count,
            emit::fmt_f64(koebe_max),
            emit::fmt_f64(probe.u0),
            emit::fmt_f64(probe.uk),
            emit::fmt_f64(slack),
            emit::fmt_f64(probe.mean_value_defect)
        )
    };
    emit_artifact(ctx, "flow", &format, &content)?;
    Ok(0)
}

fn cmd_verify(ctx: &Ctx) -> Result<i32> {
    let kind = ctx.raw("map").unwrap_or("extremal").to_string();
    let k = ctx.f64_or("K", 2.0)?;
    let map = match kind.as_str() {
        "identity" => DiscreteMap::Identity,
        "extremal" => {
            let r = ctx.f64_or("R", 10.0)?;
            DiscreteMap::Extremal(ExtremalParams::new(k, r)?)
        }
        "stretch" => DiscreteMap::radial_stretch(k)?,
        "random" => {
            let grid = ctx.grid()?;
            let seed = ctx.u64_or("seed", 0)?;
            let default_kinf = if k > 1.0 { (k - 1.0) / (k + 1.0) } else { 0.0 };
            let kinf = ctx.f64_or("kinf", default_kinf)?;
            let modes = ctx.usize_or("modes", 4)?;
            let mu = solver::random_beltrami(seed, kinf, modes, grid)?;
            solver::principal_solution(&mu)?
        }
        other => {
            return Err(QcError::Parameter(format!(
                "--map must be identity, extremal, stretch, or random; got {other:?}"
            )))
        }
    };
    let mut report = verify::check_bound(&map, k)?;
    if let Some(tol_raw) = ctx.raw("tol") {
        let tol = tol_raw
            .trim()
            .parse::<f64>()
            .map_err(|_| QcError::Parameter(format!("tol: expected a number, got {tol_raw:?}")))?;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(QcError::Parameter(format!("tol must be nonnegative, got {tol}")));
        }
        report.tol = tol;
        report.violated = report.estimate > report.bound * (1.0 + tol);
    }

    let format = ctx.format_or("json")?;
    let content = if format == "json" {
        emit::holder_json(&report)
    } else {
        emit::holder_csv(std::slice::from_ref(&report))
    };
    emit_artifact(ctx, "verify", &format, &content)?;
    Ok(if report.violated { 4 } else { 0 })
}

fn cmd_sweep(ctx: &Ctx) -> Result<i32> {
    let ks = ctx.list_or("K", &DEFAULT_K_GRID)?;
    let rs = ctx.list_or("R", &DEFAULT_R_GRID)?;
    let mut reports = Vec::with_capacity(ks.len() * rs.len());
    for &k in &ks {
        for &r in &rs {
            let p = ExtremalParams::new(k, r)?;
            let q = geometry::extremal_quotient(&p);
            let bound = verify::sharp_bound(k);
            let x0 = p.slit_endpoint();
            reports.push(HolderReport {
                k,
                r: Some(r),
                estimate: q,
                bound,
                witness_z: Complex64::new(x0, 0.0),
                witness_w: Complex64::new(-x0, 0.0),
                violated: q > bound * (1.0 + verify::CLOSED_FORM_TOL),
                tol: verify::CLOSED_FORM_TOL,
                budget: SearchBudget::default(),
            });
        }
    }

    let format = ctx.format_or("csv")?;
    let content = if format == "json" {
        let mut out = String::from("[");
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let obj = emit::holder_json(r);
            out.push_str(obj.trim_end());
        }
        out.push_str("]\n");
        out
    } else {
        emit::holder_csv(&reports)
    };
    emit_artifact(ctx, "sweep", &format, &content)?;
    Ok(if reports.iter().any(|r| r.violated) { 4 } else { 0 })
}
