//! Command-line surface. The binary is a thin wrapper around [`run_from_args`]
//! so every command can be exercised in-process.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 out of scope (`decide`),
//! 3 numerical divergence.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::dynamics::{
    integrate, largest_lyapunov, DynamicsError, Flow, IntegratorConfig, LyapunovConfig, DEFAULT_DIVERGENCE_BOUND,
    DEFAULT_RENORMALIZATION_INTERVAL,
};
use crate::equiv::{computed_quintic, decide, obstruction, verify_factorization, Verdict};
use crate::exact::Rational;
use crate::systems::{charpoly_at, equilibria, ChenParams, EquilibriumLabel, ParamSystem, SystemKind, SystemParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OUT_OF_SCOPE: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chenlorenz", version, about = "Exact Chen/Lorenz smooth-equivalence obstruction")]
pub struct Cli {
    /// Emit JSON (the only structured format; accepted for explicitness).
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ChenArgs {
    #[arg(allow_hyphen_values = true, value_parser = Rational::from_str)]
    pub a: Rational,
    #[arg(allow_hyphen_values = true, value_parser = Rational::from_str)]
    pub b: Rational,
    #[arg(allow_hyphen_values = true, value_parser = Rational::from_str)]
    pub c: Rational,
}

impl ChenArgs {
    fn params(&self) -> ChenParams {
        ChenParams { a: self.a.clone(), b: self.b.clone(), c: self.c.clone() }
    }
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(value_parser = SystemKind::from_str)]
    pub system: SystemKind,
    #[command(flatten)]
    pub params: ChenArgs,
}

impl SystemArgs {
    fn params(&self) -> SystemParams {
        SystemParams::new(self.system, self.params.a.clone(), self.params.b.clone(), self.params.c.clone())
    }
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Integration end time.
    #[arg(long = "t")]
    pub t_end: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Initial state.
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
    /// Abort once any component exceeds this magnitude.
    #[arg(long, default_value_t = DEFAULT_DIVERGENCE_BOUND)]
    pub bound: f64,
}

impl NumericArgs {
    fn config(&self, default_t: f64) -> IntegratorConfig {
        let x0 = self.x0.as_deref().map_or([1.0, 1.0, 1.0], |v| [v[0], v[1], v[2]]);
        let mut cfg = IntegratorConfig::new(self.dt, self.t_end.unwrap_or(default_t), x0);
        cfg.divergence_bound = self.bound;
        cfg
    }
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Decide whether a Chen system can be smoothly equivalent to a Lorenz system.
    Decide(ChenArgs),
    /// Exact resultant obstruction M0 for a Chen system.
    M0(ChenArgs),
    /// Exact equilibria of a Lorenz or Chen system.
    Equilibria(SystemArgs),
    /// Characteristic polynomials at the equilibria.
    Charpoly {
        #[command(flatten)]
        system: SystemArgs,
        /// P1..P3 (Lorenz) or Q1..Q3 (Chen); all existing points if omitted.
        #[arg(long)]
        at: Option<String>,
    },
    /// Peel the surface factors off the symbolic M0 and compare the quotient
    /// with the printed quintic.
    VerifyFactorization,
    /// Evaluate M0 on a rational grid of Chen parameters and write CSV.
    Scan(ScanArgs),
    /// Integrate a trajectory with RK4 and write CSV.
    Simulate {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Benettin estimate of the largest Lyapunov exponent.
    Lyapunov {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        numeric: NumericArgs,
        #[arg(long, default_value_t = 50.0)]
        transient: f64,
        #[arg(long, default_value_t = DEFAULT_RENORMALIZATION_INTERVAL)]
        renorm: f64,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// a' range as MIN:MAX:STEP (rationals or decimals).
    #[arg(long = "a", allow_hyphen_values = true, value_parser = AxisRange::from_str)]
    pub a: AxisRange,
    #[arg(long = "b", allow_hyphen_values = true, value_parser = AxisRange::from_str)]
    pub b: AxisRange,
    #[arg(long = "c", allow_hyphen_values = true, value_parser = AxisRange::from_str)]
    pub c: AxisRange,
    /// Append the exact M0 value as a column.
    #[arg(long)]
    pub exact_values: bool,
    /// Append an on_quintic column (exact evaluation of the quintic factor).
    #[arg(long)]
    pub classify: bool,
    /// Worker threads; output is identical for every value.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Inclusive exact range `min, min + step, ... <= max`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisRange {
    pub min: Rational,
    pub max: Rational,
    pub step: Rational,
}

impl FromStr for AxisRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, step] = parts.as_slice() else {
            return Err(format!("expected MIN:MAX:STEP, got {s:?}"));
        };
        let parse = |v: &str| v.parse::<Rational>().map_err(|e| e.to_string());
        let range = AxisRange { min: parse(min)?, max: parse(max)?, step: parse(step)? };
        if !range.step.is_positive() {
            return Err(format!("step must be positive in {s:?}"));
        }
        if range.min > range.max {
            return Err(format!("empty range {s:?}: min > max"));
        }
        Ok(range)
    }
}

impl AxisRange {
    pub fn values(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = self.min.clone();
        while v <= self.max {
            out.push(v.clone());
            v = &v + &self.step;
        }
        out
    }
}

/// Grid points in lexicographic `(a', b', c')` order.
pub fn scan_grid(a: &AxisRange, b: &AxisRange, c: &AxisRange) -> Vec<ChenParams> {
    let (bs, cs) = (b.values(), c.values());
    let mut grid = Vec::new();
    for x in a.values() {
        for y in &bs {
            for z in &cs {
                grid.push(ChenParams { a: x.clone(), b: y.clone(), c: z.clone() });
            }
        }
    }
    grid
}

/// One scan row, before formatting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub point: ChenParams,
    pub m0: Rational,
    pub on_b0: bool,
    pub on_a2c: bool,
    pub on_c1: bool,
    pub has3eq: bool,
    pub on_quintic: Option<bool>,
}

pub fn scan_point(p: &ChenParams, classify: bool) -> ScanRow {
    let two = Rational::from(2);
    ScanRow {
        m0: obstruction(p).m0,
        on_b0: p.b.is_zero(),
        on_a2c: p.a == &two * &p.c,
        on_c1: p.c == -1,
        has3eq: p.existence_product().is_positive(),
        on_quintic: classify.then(|| computed_quintic().eval(&[p.a.clone(), p.b.clone(), p.c.clone()]).is_zero()),
        point: p.clone(),
    }
}

impl ScanRow {
    fn csv(&self, exact_values: bool) -> String {
        let flag = |b: bool| if b { "1" } else { "0" };
        let mut line = format!(
            "{},{},{},{},{},{},{},{}",
            self.point.a,
            self.point.b,
            self.point.c,
            self.m0.signum(),
            flag(self.on_b0),
            flag(self.on_a2c),
            flag(self.on_c1),
            flag(self.has3eq)
        );
        if let Some(q) = self.on_quintic {
            line.push(',');
            line.push_str(flag(q));
        }
        if exact_values {
            line.push(',');
            line.push_str(&self.m0.to_string());
        }
        line
    }
}

pub fn scan_header(classify: bool, exact_values: bool) -> String {
    let mut h = "a,b,c,m0_sign,on_b0,on_a2c,on_c1,has3eq".to_string();
    if classify {
        h.push_str(",on_quintic");
    }
    if exact_values {
        h.push_str(",m0");
    }
    h
}

/// Evaluates the grid on `threads` workers; row order never depends on it.
pub fn run_scan(args: &ScanArgs) -> Result<Vec<ScanRow>, String> {
    let grid = scan_grid(&args.a, &args.b, &args.c);
    if args.classify {
        computed_quintic();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads.max(1)).build().map_err(|e| e.to_string())?;
    Ok(pool.install(|| grid.par_iter().map(|p| scan_point(p, args.classify)).collect()))
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p)?))),
        None => Ok(Box::new(stdout)),
    }
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let _ = write!(stderr, "{e}");
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            }
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut out = match open_output(&cli.output, stdout) {
        Ok(w) => w,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot open output: {e}");
            return EXIT_USAGE;
        }
    };
    let result = execute(&cli.command, &mut *out, stderr).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    match cmd {
        Command::Decide(args) => {
            let cert = decide(&args.params());
            emit_json(&cert, out)?;
            Ok(if cert.verdict == Verdict::OutOfScope { EXIT_OUT_OF_SCOPE } else { EXIT_OK })
        }
        Command::M0(args) => {
            let p = args.params();
            let ob = obstruction(&p);
            emit_json(
                &json!({
                    "chen": p,
                    "m0": ob.m0,
                    "m0_approx": ob.m0.to_f64(),
                    "degenerate_flags": ob.flags,
                }),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Equilibria(args) => {
            let set = equilibria(&args.params());
            let radicand = (set.count == 3).then(|| set.existence_product.clone());
            emit_json(
                &json!({
                    "system": set.system,
                    "params": args.params(),
                    "count": set.count,
                    "radicand": radicand,
                    "existence_product": set.existence_product,
                    "degenerate_merge": set.degenerate_merge,
                    "points": set.points,
                }),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Charpoly { system, at } => {
            let params = system.params();
            let labels = match at {
                Some(l) => match EquilibriumLabel::parse_for(l, system.system) {
                    Ok(label) => vec![label],
                    Err(e) => {
                        writeln!(stderr, "error: {e}")?;
                        return Ok(EXIT_USAGE);
                    }
                },
                None => equilibria(&params).points.iter().map(|e| e.which).collect(),
            };
            let mut records = Vec::new();
            for label in labels {
                match charpoly_at(&params, label) {
                    Ok(cp) => records.push(json!({
                        "label": label.name(system.system),
                        "c2": cp.c2,
                        "c1": cp.c1,
                        "c0": cp.c0,
                        "approx": [cp.c2.to_f64(), cp.c1.to_f64(), cp.c0.to_f64()],
                    })),
                    Err(e) => {
                        writeln!(stderr, "error: {e}")?;
                        return Ok(EXIT_USAGE);
                    }
                }
            }
            if at.is_some() {
                emit_json(&records[0], out)?;
            } else {
                emit_json(&records, out)?;
            }
            Ok(EXIT_OK)
        }
        Command::VerifyFactorization => {
            emit_json(&verify_factorization(), out)?;
            Ok(EXIT_OK)
        }
        Command::Scan(args) => {
            let rows = match run_scan(args) {
                Ok(rows) => rows,
                Err(e) => {
                    writeln!(stderr, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
            };
            writeln!(out, "{}", scan_header(args.classify, args.exact_values))?;
            for row in &rows {
                writeln!(out, "{}", row.csv(args.exact_values))?;
            }
            Ok(EXIT_OK)
        }
        Command::Simulate { system, numeric } => {
            let flow = Flow::from_params(&system.params());
            match integrate(&flow, &numeric.config(50.0)) {
                Ok(traj) => {
                    traj.write_csv(out)?;
                    Ok(EXIT_OK)
                }
                Err(DynamicsError::Divergence { t, reason, partial }) => {
                    partial.write_csv(out)?;
                    writeln!(stderr, "error: diverged at t = {t}: {reason}")?;
                    Ok(EXIT_DIVERGENCE)
                }
                Err(e) => {
                    writeln!(stderr, "error: {e}")?;
                    Ok(EXIT_USAGE)
                }
            }
        }
        Command::Lyapunov { system, numeric, transient, renorm } => {
            let params = system.params();
            let flow = Flow::from_params(&params);
            let cfg = LyapunovConfig {
                integrator: numeric.config(300.0),
                transient: *transient,
                renormalization_interval: *renorm,
            };
            match largest_lyapunov(&flow, &cfg) {
                Ok(est) => {
                    emit_json(
                        &json!({
                            "system": system.system,
                            "params": params,
                            "lambda_max": est.lambda_max,
                            "label": est.label,
                            "averaging_time": est.averaging_time,
                            "config": {
                                "method": IntegratorConfig::METHOD,
                                "dt": cfg.integrator.dt,
                                "t_end": cfg.integrator.t_end,
                                "initial_state": cfg.integrator.initial_state,
                                "transient": cfg.transient,
                                "renormalization_interval": est.renormalization_interval,
                                "divergence_bound": cfg.integrator.divergence_bound,
                            },
                        }),
                        out,
                    )?;
                    Ok(EXIT_OK)
                }
                Err(DynamicsError::Divergence { t, reason, .. }) => {
                    writeln!(stderr, "error: diverged at t = {t}: {reason}")?;
                    Ok(EXIT_DIVERGENCE)
                }
                Err(e) => {
                    writeln!(stderr, "error: {e}")?;
                    Ok(EXIT_USAGE)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_ranges() {
        let r: AxisRange = "-2:2:1".parse().unwrap();
        assert_eq!(r.values().len(), 5);
        let r: AxisRange = "0:1:1/3".parse().unwrap();
        assert_eq!(r.values().last().unwrap(), &Rational::from(1));
        assert!("3:1:1".parse::<AxisRange>().is_err());
        assert!("0:1:0".parse::<AxisRange>().is_err());
        assert!("0:1".parse::<AxisRange>().is_err());
    }

    #[test]
    fn grid_is_lexicographic() {
        let r: AxisRange = "0:1:1".parse().unwrap();
        let g = scan_grid(&r, &r, &r);
        let keys: Vec<_> = g.iter().map(|p| (p.a.clone(), p.b.clone(), p.c.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(g.len(), 8);
    }
}
