//! `legint` command-line front end: `eval`, `table`, `trace`, `verify`.
//!
//! Data goes to standard output (or `--out PATH`); diagnostics go to
//! standard error. Exit status is 0 on success, 1 when a computation or
//! verification fails, 2 on bad usage.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::oracles::{exact_double_integral, gauss_legendre_rule, quad_double_integral, QuadForm};
use crate::pipeline::{closed_form, derive, inner_integral, inner_integral_oracle, IntegralSpec};
use crate::Rational;

/// Relative tolerance for quadrature against exact values (scaled absolute
/// when the exact value is zero).
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "legint",
    version,
    about = "Exact double integrals of Legendre polynomials"
)]
struct Cli {
    /// Write data output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate I(b, l).
    Eval {
        b: u32,
        l: u32,
        #[arg(long, value_enum, default_value_t = Source::Closed)]
        source: Source,
        /// Quadrature nodes per dimension (default b + l + 4).
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Tabulate I(b, l) for 0 <= b <= B_MAX and 0 <= l <= b.
    Table {
        b_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Extend each row to l <= 2b.
        #[arg(long)]
        include_zeros: bool,
    },
    /// Show every derivation stage for I(b, l).
    Trace { b: u32, l: u32 },
    /// Check all routes against each other over a grid.
    Verify {
        #[arg(long, default_value_t = 6)]
        b_max: u32,
        /// Check l up to 2b + L_EXTRA.
        #[arg(long, default_value_t = 8)]
        l_extra: u32,
        /// Quadrature nodes per dimension (default b + l + 4 per case).
        #[arg(long)]
        quad_nodes: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Closed,
    Pipeline,
    Oracle,
    Quadrature,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Closed => "closed",
            Source::Pipeline => "pipeline",
            Source::Oracle => "oracle",
            Source::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

/// One evaluated `I(b, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub b: u32,
    pub l: u32,
    /// Exact value; `None` for quadrature.
    pub value: Option<Rational>,
    pub float_value: f64,
    pub source: Source,
}

impl OutputRecord {
    pub fn exact(spec: IntegralSpec, value: Rational, source: Source) -> Self {
        let float_value = value.to_f64().unwrap_or(f64::NAN);
        Self {
            b: spec.b,
            l: spec.l,
            value: Some(value),
            float_value,
            source,
        }
    }

    pub fn render(&self) -> String {
        let value = match &self.value {
            Some(v) => v.to_string(),
            None => format!("{:.16e}", self.float_value),
        };
        format!(
            "b={} l={} I={} approx={:.16e} source={}",
            self.b,
            self.l,
            value,
            self.float_value,
            self.source.name()
        )
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut file;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file = io::BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return 1;
            }
        },
        None => stdout,
    };
    let result = match cli.command {
        Command::Eval {
            b,
            l,
            source,
            nodes,
        } => cmd_eval(IntegralSpec::new(b, l), source, nodes, out, stderr),
        Command::Table {
            b_max,
            format,
            include_zeros,
        } => cmd_table(b_max, format, include_zeros, out),
        Command::Trace { b, l } => cmd_trace(IntegralSpec::new(b, l), out, stderr),
        Command::Verify {
            b_max,
            l_extra,
            quad_nodes,
            jobs,
        } => cmd_verify(
            &VerifyOptions {
                b_max,
                l_extra,
                quad_nodes,
                jobs,
            },
            out,
            stderr,
        ),
    };
    match result.and_then(|code| out.flush().map(|_| code)) {
        Ok(code) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn cmd_eval(
    spec: IntegralSpec,
    source: Source,
    nodes: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let record = match source {
        Source::Closed => OutputRecord::exact(spec, closed_form(&spec), source),
        Source::Oracle => OutputRecord::exact(spec, exact_double_integral(&spec), source),
        Source::Pipeline => {
            let trace = match derive(&spec) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(1);
                }
            };
            if let Err(e) = trace.check() {
                writeln!(err, "error: {e}")?;
                return Ok(1);
            }
            OutputRecord::exact(spec, trace.final_value, source)
        }
        Source::Quadrature => {
            let n = nodes.unwrap_or((spec.b + spec.l + 4) as usize);
            let rule = match gauss_legendre_rule::<f64>(n) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(1);
                }
            };
            let q = quad_double_integral(&spec, &rule, QuadForm::Xy);
            if q.insufficient_nodes {
                writeln!(err, "warning: {n} nodes do not integrate {spec} exactly")?;
            }
            OutputRecord {
                b: spec.b,
                l: spec.l,
                value: None,
                float_value: q.value,
                source,
            }
        }
    };
    writeln!(out, "{}", record.render())?;
    Ok(0)
}

fn cmd_table(
    b_max: u32,
    format: Format,
    include_zeros: bool,
    out: &mut dyn Write,
) -> io::Result<i32> {
    match format {
        Format::Csv => writeln!(out, "b,l,numerator,denominator")?,
        Format::Text | Format::JsonLines => {}
    }
    for b in 0..=b_max {
        let l_max = if include_zeros { 2 * b } else { b };
        for l in 0..=l_max {
            let v = closed_form(&IntegralSpec::new(b, l));
            let (num, den) = (v.numer(), v.denom());
            match format {
                Format::Text => writeln!(out, "b={b} l={l} I={v}")?,
                Format::Csv => writeln!(out, "{b},{l},{num},{den}")?,
                Format::JsonLines => {
                    writeln!(out, "{{\"b\":{b},\"l\":{l},\"num\":{num},\"den\":{den}}}")?
                }
            }
        }
    }
    Ok(0)
}

fn cmd_trace(spec: IntegralSpec, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let trace = match derive(&spec) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(1);
        }
    };
    writeln!(out, "{spec}")?;
    if trace.inner.is_zero() {
        writeln!(out, "inner(y) = 0 (zero polynomial)")?;
    } else {
        writeln!(out, "inner(y) = {}", trace.inner)?;
    }
    for (stage, value) in &trace.stage_values {
        writeln!(out, "{:<16} {value}", stage.label())?;
    }
    match trace.check() {
        Ok(()) => {
            writeln!(out, "CONSISTENT")?;
            Ok(0)
        }
        Err(e) => {
            writeln!(out, "MISMATCH")?;
            writeln!(err, "{e}")?;
            Ok(1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub b_max: u32,
    pub l_extra: u32,
    pub quad_nodes: Option<usize>,
    pub jobs: usize,
}

/// Outcome of every check for one `(b, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub spec: IntegralSpec,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: Vec<CaseReport>,
    /// `(b, failure)` for the per-b sum rule.
    pub sum_rule_failures: Vec<(u32, String)>,
    pub sum_rule_checks: usize,
}

impl VerifyReport {
    pub fn total_checks(&self) -> usize {
        self.cases.iter().map(|c| c.checks).sum::<usize>() + self.sum_rule_checks
    }

    pub fn total_failures(&self) -> usize {
        self.cases.iter().map(|c| c.failures.len()).sum::<usize>() + self.sum_rule_failures.len()
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }
}

/// Runs the verification grid `0 ≤ b ≤ b_max`, `0 ≤ l ≤ 2b + l_extra`.
pub fn verify_grid(opts: &VerifyOptions) -> VerifyReport {
    let specs: Vec<IntegralSpec> = (0..=opts.b_max)
        .flat_map(|b| (0..=2 * b + opts.l_extra).map(move |l| IntegralSpec::new(b, l)))
        .collect();
    let run = || -> (Vec<CaseReport>, Vec<Option<String>>) {
        let cases = specs
            .par_iter()
            .map(|s| check_case(s, opts.quad_nodes))
            .collect();
        let sums = (0..=opts.b_max)
            .into_par_iter()
            .map(check_sum_rule)
            .collect();
        (cases, sums)
    };
    let (cases, sums) = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let sum_rule_checks = sums.len();
    let sum_rule_failures = sums
        .into_iter()
        .enumerate()
        .filter_map(|(b, f)| f.map(|msg| (b as u32, msg)))
        .collect();
    VerifyReport {
        cases,
        sum_rule_failures,
        sum_rule_checks,
    }
}

fn check_case(spec: &IntegralSpec, quad_nodes: Option<usize>) -> CaseReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool, detail: String| {
        checks += 1;
        if !ok {
            failures.push(format!("{name}: {detail}"));
        }
    };
    let closed = closed_form(spec);
    let inner = inner_integral(spec);
    let inner_oracle = inner_integral_oracle(spec);
    check(
        "inner integral",
        inner == inner_oracle,
        format!("series route {inner} vs binomial route {inner_oracle}"),
    );
    match derive(spec) {
        Ok(trace) => {
            let detail = trace
                .check()
                .err()
                .map(|e| e.to_string())
                .unwrap_or_default();
            check("stage equality", trace.is_consistent(), detail);
        }
        Err(e) => check("stage equality", false, e.to_string()),
    }
    let exact = exact_double_integral(spec);
    check(
        "oracle",
        exact == closed,
        format!("oracle {exact} vs closed form {closed}"),
    );
    if spec.l > 2 * spec.b {
        check(
            "vanishing",
            inner.is_zero(),
            format!("inner integral {inner} is not zero"),
        );
    }
    if spec.b < spec.l {
        check(
            "vanishing",
            closed.is_zero(),
            format!("closed form {closed} is not zero"),
        );
    } else {
        let expected_negative = spec.l % 2 == 1;
        let ok = !closed.is_zero() && closed.is_negative() == expected_negative;
        check(
            "sign",
            ok,
            format!("closed form {closed} has the wrong sign"),
        );
    }
    let n = quad_nodes.unwrap_or((spec.b + spec.l + 4) as usize);
    match gauss_legendre_rule::<f64>(n) {
        Ok(rule) => {
            let exact_f = exact.to_f64().unwrap_or(f64::NAN);
            let xy = quad_double_integral(spec, &rule, QuadForm::Xy);
            let theta = quad_double_integral(spec, &rule, QuadForm::Theta);
            for (label, q) in [("quadrature xy", xy), ("quadrature theta", theta)] {
                let e = q.scaled_error(exact_f);
                check(
                    label,
                    e <= QUADRATURE_TOLERANCE,
                    format!(
                        "{} vs exact {exact_f:e} (scaled error {e:e}, n={n})",
                        q.value
                    ),
                );
            }
        }
        Err(e) => check("quadrature", false, e.to_string()),
    }
    CaseReport {
        spec: *spec,
        checks,
        failures,
    }
}

/// `Σ_{l=0}^{b} (2l+1) I(b, l)` is 4 for `b = 0` and 0 otherwise.
fn check_sum_rule(b: u32) -> Option<String> {
    let total: Rational = (0..=b)
        .map(|l| closed_form(&IntegralSpec::new(b, l)) * Rational::from_integer((2 * l + 1).into()))
        .sum();
    let expected = Rational::from_integer(if b == 0 { 4 } else { 0 }.into());
    (total != expected).then(|| format!("sum rule for b={b}: got {total}, expected {expected}"))
}

fn cmd_verify(opts: &VerifyOptions, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let report = verify_grid(opts);
    for case in &report.cases {
        for f in &case.failures {
            writeln!(err, "FAIL {}: {f}", case.spec)?;
        }
    }
    for (_, f) in &report.sum_rule_failures {
        writeln!(err, "FAIL {f}")?;
    }
    let total = report.total_checks();
    let failed = report.total_failures();
    writeln!(
        out,
        "verified {} cases (b <= {}, l <= 2b + {}): {} checks, {} passed, {} failed",
        report.cases.len(),
        opts.b_max,
        opts.l_extra,
        total,
        total - failed,
        failed
    )?;
    if report.passed() {
        writeln!(out, "all checks passed")?;
        Ok(0)
    } else {
        writeln!(out, "verification FAILED")?;
        Ok(1)
    }
}
