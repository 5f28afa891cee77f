//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use serde_json::json;

use crate::bohr::{BohrParams, CoefficientClass, FunctionalId};
use crate::error::{Error, Result};
use crate::extremals::{
    self, closed_form_value, sharpness_witness, ExtremalSpec, Family, DEFAULT_ORDER,
};
use crate::harness::{self, Config, SweepSource, VerifyConfig};
use crate::quaternion::Quaternion;
use crate::radii;
use crate::series::QSeries;
use crate::theorem::TheoremId;

#[derive(Debug, Parser)]
#[command(
    name = "slice-bohr",
    version,
    about = "Bohr-type inequalities for slice regular quaternionic power series"
)]
pub struct Cli {
    /// Seed for sampled coefficients and boundary units.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation order K.
    #[arg(long, global = true, value_name = "K", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Write machine-readable output to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a sweep table as CSV to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sharp radius of a theorem.
    Radius {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        m: Option<f64>,
        /// Recompute R_m from the infimum characterisation.
        #[arg(long)]
        via_infimum: bool,
    },
    /// Admissibility constants c_k, M_m and L(d).
    Constants {
        /// Range `a..b` (inclusive) or a single index.
        #[arg(long, default_value = "1..5")]
        ck: String,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, value_delimiter = ',')]
        d: Vec<f64>,
    },
    /// Evaluate a functional on one series.
    Sum {
        #[command(flatten)]
        source: SeriesArgs,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "bohr")]
        functional: FunctionalId,
        #[command(flatten)]
        params: ParamArgs,
        /// Bound the truncation tail assuming this class.
        #[arg(long)]
        class: Option<CoefficientClass>,
    },
    /// Tabulate a functional over a radius grid.
    Sweep {
        #[command(flatten)]
        source: SeriesArgs,
        #[arg(long, conflicts_with_all = ["series", "config", "family"])]
        class: Option<CoefficientClass>,
        #[arg(long, default_value = "bohr")]
        functional: FunctionalId,
        /// `lo:hi:step` (inclusive) or a comma-separated list.
        #[arg(long)]
        r_grid: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Certify theorems; without --theorem the default suite runs.
    Verify {
        #[arg(long)]
        theorem: Option<TheoremId>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 32)]
        radii: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Inspect an extremal family member or find a sharpness witness.
    Extremal {
        #[arg(long, required_unless_present = "witness")]
        family: Option<Family>,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, value_parser = parse_quaternion, default_value = "1,0,0,0")]
        u: Quaternion,
        #[arg(long)]
        functional: Option<FunctionalId>,
        #[arg(long)]
        r: Option<f64>,
        /// Search a witness for --theorem at --r.
        #[arg(long, requires_all = ["theorem", "r"])]
        witness: bool,
        #[arg(long)]
        theorem: Option<TheoremId>,
        #[command(flatten)]
        params: ParamArgs,
        /// Number of coefficients to print.
        #[arg(long, default_value_t = 6)]
        show: usize,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Series literal `[[x0,x1,x2,x3], ...]` or a file holding one.
    #[arg(long)]
    series: Option<String>,
    /// JSON config file with a `series` entry.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["series", "config"])]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    a: Option<f64>,
    #[arg(long, value_parser = parse_quaternion, requires = "family")]
    u: Option<Quaternion>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    m: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<f64>>,
}

fn parse_quaternion(s: &str) -> std::result::Result<Quaternion, String> {
    let parts: Vec<f64> = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    <[f64; 4]>::try_from(parts)
        .map(Quaternion::from)
        .map_err(|p| format!("expected 4 components, got {}", p.len()))
}

fn parse_ck_range(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidArgument(format!("bad --ck range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<u32>().map_err(|_| bad())?,
            b.trim()
                .trim_start_matches('=')
                .parse::<u32>()
                .map_err(|_| bad())?,
        ),
        None => {
            let k = s.trim().parse::<u32>().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo < 1 || hi < lo {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

/// Parses `lo:hi:step` (inclusive of `hi`) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |e: String| Error::InvalidGrid(format!("{s:?}: {e}"));
    let nums = |sep: char| -> Result<Vec<f64>> {
        s.split(sep)
            .map(|p| p.trim().parse::<f64>().map_err(|e| bad(e.to_string())))
            .collect()
    };
    if s.contains(':') {
        let v = nums(':')?;
        let [lo, hi, step] =
            <[f64; 3]>::try_from(v).map_err(|_| bad("expected lo:hi:step".into()))?;
        if !(step > 0.0) || hi < lo {
            return Err(bad("need step > 0 and hi >= lo".into()));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| lo + step * i as f64).collect())
    } else {
        nums(',')
    }
}

fn read_series(arg: &str) -> Result<QSeries> {
    let t = arg.trim();
    if t.starts_with('[') {
        QSeries::from_json(t)
    } else {
        QSeries::from_json(&std::fs::read_to_string(t)?)
    }
}

impl SeriesArgs {
    fn resolve(&self, order: usize) -> Result<Option<(QSeries, Option<ExtremalSpec>)>> {
        if let Some(s) = &self.series {
            return Ok(Some((read_series(s)?, None)));
        }
        if let Some(path) = &self.config {
            let cfg = Config::load(path)?;
            let series = cfg
                .series
                .ok_or_else(|| Error::InvalidArgument("config has no series".into()))?;
            return Ok(Some((series.resolve()?, None)));
        }
        if let Some(family) = self.family {
            let spec = ExtremalSpec::new(
                family,
                self.a.unwrap_or(0.5),
                self.u.unwrap_or(Quaternion::ONE),
                order,
            );
            return Ok(Some((extremals::build(&spec)?, Some(spec))));
        }
        Ok(None)
    }
}

impl ParamArgs {
    fn params(&self) -> Result<BohrParams> {
        BohrParams::new(self.m.unwrap_or(1.0), self.d.clone().unwrap_or_default())
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 if a verification is
/// violated, 2 on usage or input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(Error::Io(msg)) if msg.to_ascii_lowercase().contains("broken pipe") => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.csv.is_some() && !matches!(cli.command, Command::Sweep { .. }) {
        return Err(Error::InvalidArgument("--csv applies to sweep only".into()));
    }
    match &cli.command {
        Command::Radius {
            theorem,
            m,
            via_infimum,
        } => {
            let params = BohrParams::with_m(m.unwrap_or(1.0));
            let res = match (theorem, via_infimum) {
                (_, true) if theorem.uses_m() => radii::radius_rm_via_infimum(params.m)?,
                (_, true) => {
                    return Err(Error::InvalidArgument(
                        "--via-infimum applies to theorems 1.4-1.6".into(),
                    ))
                }
                (TheoremId::B, _) => radii::radius_classical(),
                (TheoremId::T1_1 | TheoremId::T1_3, _) => radii::radius_starlike(),
                (TheoremId::T1_2, _) => radii::radius_deriv_starlike(),
                (TheoremId::T1_7, _) => radii::radius_rstar(),
                (t, _) => {
                    t.radius(&params)?;
                    radii::radius_rm(params.m)?
                }
            };
            writeln!(out, "theorem {theorem}")?;
            if theorem.uses_m() {
                writeln!(out, "m {}", params.m)?;
            }
            writeln!(out, "radius {}", res.value)?;
            writeln!(out, "residual {:e}", res.residual)?;
            writeln!(
                out,
                "method {}",
                serde_json::to_value(res.method)?.as_str().unwrap_or("")
            )?;
            if let Some(path) = &cli.json {
                write_json(
                    path,
                    &json!({ "theorem": theorem, "m": theorem.uses_m().then_some(params.m), "radius": res }),
                )?;
            }
            Ok(0)
        }
        Command::Constants { ck, m, d } => {
            let mut cks = Vec::new();
            for k in parse_ck_range(ck)? {
                let c = radii::c_k_detailed(k)?;
                writeln!(out, "c{k} {}  (argmax {})", c.value, c.argmax)?;
                cks.push(json!({ "k": k, "value": c.value, "argmax": c.argmax }));
            }
            let mm = radii::m_m(*m)?;
            writeln!(out, "M_m {mm}  (m = {m})")?;
            let l = if d.is_empty() {
                None
            } else {
                let l = radii::l_condition(d, *m)?;
                writeln!(out, "L(d) {}  admissible {}", l.value, l.admissible)?;
                Some(l)
            };
            if let Some(path) = &cli.json {
                write_json(
                    path,
                    &json!({ "c_k": cks, "m": m, "m_m": mm, "d": d, "l": l }),
                )?;
            }
            Ok(0)
        }
        Command::Sum {
            source,
            r,
            functional,
            params,
            class,
        } => {
            let (f, _) = source.resolve(cli.order)?.ok_or_else(|| {
                Error::InvalidArgument("sum needs --series, --config or --family".into())
            })?;
            let params = params.params()?;
            let (value, tail) = match class {
                Some(c) => {
                    let (v, t) = functional.evaluate_with_tail(&f, *r, &params, *c)?;
                    (v, Some(t.value))
                }
                None => (functional.evaluate(&f, *r, &params)?, None),
            };
            writeln!(out, "{functional} {value}")?;
            if let Some(t) = tail {
                writeln!(out, "tail {t:e}")?;
            }
            if let Some(path) = &cli.json {
                write_json(
                    path,
                    &json!({ "functional": functional, "r": r, "value": value, "tail": tail }),
                )?;
            }
            Ok(0)
        }
        Command::Sweep {
            source,
            class,
            functional,
            r_grid,
            params,
        } => {
            let src = match (class, source.resolve(cli.order)?) {
                (Some(c), _) => SweepSource::Class(*c),
                (None, Some((_, Some(spec)))) => SweepSource::Extremal(spec),
                (None, Some((f, None))) => SweepSource::Series(f, None),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "sweep needs --class, --series, --config or --family".into(),
                    ))
                }
            };
            let grid = parse_grid(r_grid)?;
            let table = harness::sweep(&src, *functional, &params.params()?, &grid)?;
            match &cli.csv {
                Some(path) => table.write_csv(std::fs::File::create(path)?)?,
                None => out.write_all(table.to_csv_string().as_bytes())?,
            }
            if let Some(path) = &cli.json {
                write_json(path, &serde_json::to_value(&table)?)?;
            }
            Ok(0)
        }
        Command::Verify {
            theorem,
            params,
            n,
            samples,
            radii: radii_count,
            config,
        } => {
            let mut cfg = match config {
                Some(p) => Config::load(p)?,
                None => Config::default(),
            };
            if theorem.is_some() {
                cfg.theorem = *theorem;
            }
            if params.m.is_some() {
                cfg.m = params.m;
            }
            if params.d.is_some() {
                cfg.d = params.d.clone();
            }
            if n.is_some() {
                cfg.n = *n;
            }
            let vcfg = VerifyConfig {
                seed: cli.seed,
                samples: *samples,
                radii: *radii_count,
                order: cli.order,
            };
            let suite = match cfg.theorem {
                Some(t) => vec![(t, cfg.params()?)],
                None if cfg.m.is_some() || cfg.d.is_some() || cfg.n.is_some() => {
                    return Err(Error::InvalidArgument(
                        "--m, --n and --d need --theorem".into(),
                    ))
                }
                None => harness::default_suite()?,
            };
            let reports = harness::verify_suite(&suite, &vcfg)?;
            for r in &reports {
                writeln!(out, "{}", r.summary())?;
                if r.verdict != harness::Verdict::Certified {
                    writeln!(out, "     {}", r.explanation)?;
                }
            }
            if let Some(path) = &cli.json {
                harness::write_reports_json(path, &reports)?;
            }
            Ok(harness::exit_code(&reports))
        }
        Command::Extremal {
            family,
            a,
            u,
            functional,
            r,
            witness,
            theorem,
            params,
            show,
        } => {
            let params = params.params()?;
            if *witness {
                let (t, r) = (theorem.expect("clap requires"), r.expect("clap requires"));
                let w = sharpness_witness(t, r, &params)?;
                writeln!(out, "theorem {t}  r {r}")?;
                writeln!(out, "family {}  a {}", w.spec.family, w.spec.a)?;
                writeln!(out, "value {}", w.value)?;
                if let Some(path) = &cli.json {
                    write_json(path, &serde_json::to_value(w)?)?;
                }
                return Ok(0);
            }
            let family = family.expect("clap requires");
            let spec = ExtremalSpec::new(family, *a, *u, cli.order);
            let f = extremals::build(&spec)?;
            writeln!(out, "family {family}  a {a}  u {u}  order {}", cli.order)?;
            for (k, c) in f.coeffs().iter().take(*show).enumerate() {
                writeln!(out, "p{k} {c}")?;
            }
            let mut values = serde_json::Map::new();
            if let (Some(fun), Some(r)) = (functional, r) {
                let closed = closed_form_value(family, *fun, *r, *a, &params)?;
                writeln!(out, "{fun} closed form {closed}")?;
                values.insert("closed_form".into(), json!(closed));
                match fun.evaluate(&f, *r, &params) {
                    Ok(v) => {
                        writeln!(out, "{fun} truncated {v}")?;
                        values.insert("truncated".into(), json!(v));
                    }
                    Err(e) => writeln!(out, "{fun} truncated: {e}")?,
                }
            }
            if let Some(path) = &cli.json {
                write_json(
                    path,
                    &json!({ "spec": spec, "series": f, "r": r, "functional": functional, "values": values }),
                )?;
            }
            Ok(0)
        }
    }
}
