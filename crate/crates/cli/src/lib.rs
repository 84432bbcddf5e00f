//! `weingarten` command line: solve, verify, mesh, and classify rotational
//! linear Weingarten surfaces.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weingarten_core::curvature::{classify_patch, Grid, Orientation};
use weingarten_core::mesh::{build_mesh, fmt_f64};
use weingarten_core::rotational::{revolve, AxisKind, LineProfile, Profile, ScaledProfile};
use weingarten_core::solver::{closed_form, integrate_profile, ClosedFormCase, GeneratingCurve, StepControl, WeingartenProblem};
use weingarten_core::verify::weingarten_residual;
use weingarten_core::{Error, Sign};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "weingarten", version, about = "Rotational linear Weingarten surfaces aH + bK = c in Minkowski 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a generating curve and write it as CSV (u,z,zprime,first_integral_value).
    Solve(CommonArgs),
    /// Revolve a profile and report |aH + bK - c| over a grid.
    Verify(CommonArgs),
    /// Revolve a profile and write the surface as OBJ or CSV.
    Mesh(CommonArgs),
    /// Report the causal character of a revolved profile.
    Classify(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Timelike,
    SpacelikeI,
    SpacelikeIi,
    Lightlike,
}

impl From<AxisArg> for AxisKind {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Timelike => AxisKind::TimelikeAxis,
            AxisArg::SpacelikeI => AxisKind::SpacelikeAxisI,
            AxisArg::SpacelikeIi => AxisKind::SpacelikeAxisII,
            AxisArg::Lightlike => AxisKind::LightlikeAxis,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Obj,
    Csv,
    Report,
}

#[derive(Clone, Debug, PartialEq)]
enum ProfileSpec {
    Numeric,
    /// First applicable closed form, or a named one.
    Closed(Option<ClosedFormCase>),
    Line { slope: f64, intercept: f64 },
}

fn parse_profile(s: &str) -> Result<ProfileSpec, String> {
    if s == "numeric" {
        return Ok(ProfileSpec::Numeric);
    }
    if s == "closed" {
        return Ok(ProfileSpec::Closed(None));
    }
    if let Some(name) = s.strip_prefix("closed:") {
        return ClosedFormCase::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .map(|c| ProfileSpec::Closed(Some(c)))
            .ok_or_else(|| format!("unknown closed form `{name}`"));
    }
    if let Some(rest) = s.strip_prefix("line:") {
        let (m, q) = rest.split_once(':').ok_or("expected line:SLOPE:INTERCEPT")?;
        let slope = m.parse::<f64>().map_err(|e| e.to_string())?;
        let intercept = q.parse::<f64>().map_err(|e| e.to_string())?;
        return Ok(ProfileSpec::Line { slope, intercept });
    }
    Err(format!("unknown profile `{s}` (expected numeric, closed, closed:CASE, line:M:Q)"))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse::<f64>().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.trim().parse::<f64>().map_err(|e| format!("bad upper bound: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("range {lo}:{hi} must satisfy lo < hi"));
    }
    Ok((lo, hi))
}

fn parse_epsilon(s: &str) -> Result<Sign, String> {
    match s {
        "1" | "+1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err("epsilon must be 1 or -1".into()),
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err("expected an integer >= 2".into()),
    }
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, value_enum)]
    axis: AxisArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
    /// 1 for spacelike surfaces, -1 for timelike ones.
    #[arg(long, default_value = "1", value_parser = parse_epsilon, allow_hyphen_values = true)]
    epsilon: Sign,
    /// Constant of the first integral.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Translation constant.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, value_enum, default_value = "plus")]
    branch: SignArg,
    /// Sign of z' where only z'^2 is determined (spacelike axes).
    #[arg(long, value_enum, default_value = "plus")]
    slope_sign: SignArg,
    /// Height at the start of the u-range for numerical profiles (default: mu).
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<f64>,
    /// Profile source: numeric, closed, closed:CASE, or line:M:Q.
    #[arg(long, default_value = "numeric", value_parser = parse_profile)]
    profile: ProfileSpec,
    /// Multiply the profile height by this factor (sensitivity checks).
    #[arg(long, allow_hyphen_values = true)]
    z_scale: Option<f64>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    u_range: (f64, f64),
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    v_range: Option<(f64, f64)>,
    #[arg(long, value_parser = parse_count)]
    samples: Option<usize>,
    #[arg(long, value_parser = parse_count)]
    v_samples: Option<usize>,
    /// Pass threshold for the maximum residual.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidProblem(_) | Error::InvalidDomain(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<u8, Failure>;

impl CommonArgs {
    fn axis(&self) -> AxisKind {
        self.axis.into()
    }

    fn problem(&self) -> Result<WeingartenProblem, Failure> {
        let p = WeingartenProblem::new(self.axis(), self.a, self.b, self.c, self.epsilon, self.lambda)
            .with_branch(self.branch.into())
            .with_mu(self.mu)
            .with_slope_sign(self.slope_sign.into());
        p.validate()?;
        Ok(p)
    }

    fn samples(&self) -> usize {
        self.samples.unwrap_or(200)
    }

    fn v_samples(&self) -> usize {
        self.v_samples.unwrap_or(if self.axis() == AxisKind::TimelikeAxis { 64 } else { 48 })
    }

    fn step_control(&self) -> StepControl {
        let mut ctl = StepControl::default().with_samples(self.samples());
        ctl.z_start = self.z0;
        ctl
    }

    fn format(&self, allowed: &[Format], default: Format) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            return Err(Failure::Usage(format!("--format {f:?} is not supported by this command").to_lowercase()));
        }
        Ok(f)
    }

    fn integrate(&self) -> Result<GeneratingCurve, Failure> {
        let p = self.problem()?;
        Ok(integrate_profile(&p, self.u_range.0, self.u_range.1, &self.step_control())?)
    }

    /// The profile to revolve, and a note on how it was obtained.
    fn profile(&self, log: &mut dyn Write) -> Result<Box<dyn Profile>, Failure> {
        let profile: Box<dyn Profile> = match &self.profile {
            ProfileSpec::Numeric => {
                let curve = self.integrate()?;
                writeln!(log, "{}", curve_summary(&curve))?;
                if curve.samples.len() < 2 {
                    return Err(Failure::Domain(format!("integration stopped immediately: {}", curve.stop)));
                }
                Box::new(curve)
            }
            ProfileSpec::Closed(case) => {
                let p = self.problem()?;
                let candidates: Vec<ClosedFormCase> = match case {
                    Some(c) => vec![*c],
                    None => ClosedFormCase::ALL.into_iter().filter(|c| c.axis() == p.axis).collect(),
                };
                let mut last = None;
                let mut found = None;
                for c in candidates {
                    match closed_form(c, &p, self.u_range) {
                        Ok(cf) => {
                            found = Some(cf);
                            break;
                        }
                        Err(e) => last = Some(e),
                    }
                }
                let cf = match (found, last) {
                    (Some(cf), _) => cf,
                    (None, Some(e)) => return Err(e.into()),
                    (None, None) => return Err(Failure::Domain("no closed form applies".into())),
                };
                writeln!(log, "profile=closed case={} constant={}", cf.case().map(|c| c.name()).unwrap_or("-"), fmt_f64(cf.constant))?;
                Box::new(cf)
            }
            ProfileSpec::Line { slope, intercept } => {
                Box::new(LineProfile { slope: *slope, intercept: *intercept, interval: self.u_range })
            }
        };
        Ok(match self.z_scale {
            Some(factor) => Box::new(ScaledProfile { inner: profile, factor }),
            None => profile,
        })
    }

    fn v_range(&self) -> (f64, f64) {
        self.v_range.unwrap_or(self.axis().default_v_range())
    }

    fn open_output<'a>(&self, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(stdout),
        })
    }
}

fn curve_summary(curve: &GeneratingCurve) -> String {
    let p = &curve.problem;
    format!(
        "record=run axis={} a={} b={} c={} epsilon={} lambda={} mu={} branch={} samples={} u_start={} u_end={} validity_start={} validity_end={} stop_reason={} conservation_error={}",
        p.axis,
        fmt_f64(p.a),
        fmt_f64(p.b),
        fmt_f64(p.c),
        p.epsilon.value() as i32,
        fmt_f64(p.lambda),
        fmt_f64(p.mu),
        p.branch,
        curve.samples.len(),
        fmt_f64(curve.requested.0),
        fmt_f64(curve.requested.1),
        fmt_f64(curve.validity.0),
        fmt_f64(curve.validity.1),
        curve.stop.name(),
        fmt_f64(curve.conservation_error()),
    )
}

fn cmd_solve(args: &CommonArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    let format = args.format(&[Format::Csv, Format::Report], Format::Csv)?;
    let curve = args.integrate()?;
    let summary = curve_summary(&curve);
    writeln!(log, "{summary}")?;
    let mut w = args.open_output(out)?;
    match format {
        Format::Csv => {
            writeln!(w, "u,z,zprime,first_integral_value")?;
            for s in &curve.samples {
                writeln!(w, "{},{},{},{}", fmt_f64(s.u), fmt_f64(s.z), fmt_f64(s.zp), fmt_f64(s.first_integral))?;
            }
        }
        _ => writeln!(w, "{summary}")?,
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &CommonArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    args.format(&[Format::Report], Format::Report)?;
    let profile = args.profile(log)?;
    let patch = revolve(args.axis(), profile)?.with_v_range(args.v_range());
    let grid = Grid::new(args.samples.unwrap_or(30), args.v_samples.unwrap_or(15));
    let report = weingarten_residual(&patch, (args.a, args.b, args.c), grid, Orientation::Generator)?;
    let pass = report.max_residual <= args.tol;
    let mut w = args.open_output(out)?;
    write!(w, "{}", report.to_report())?;
    writeln!(w, "record=verdict tol={} pass={pass}", fmt_f64(args.tol))?;
    w.flush()?;
    Ok(if pass { EXIT_OK } else { EXIT_DOMAIN })
}

fn cmd_mesh(args: &CommonArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    let format = args.format(&[Format::Obj, Format::Csv], Format::Obj)?;
    let profile = args.profile(log)?;
    let patch = revolve(args.axis(), profile)?.with_v_range(args.v_range());
    let mesh = build_mesh(&patch, Grid::new(args.samples(), args.v_samples()), Orientation::Generator)?;
    let mut w = args.open_output(out)?;
    match format {
        Format::Obj => mesh.write_obj(&mut w)?,
        _ => mesh.write_csv(&mut w)?,
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_classify(args: &CommonArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    args.format(&[Format::Report], Format::Report)?;
    let profile = args.profile(log)?;
    let patch = revolve(args.axis(), profile)?.with_v_range(args.v_range());
    let grid = Grid::new(args.samples.unwrap_or(30), args.v_samples.unwrap_or(15));
    let (class, min_w, max_w, code) = match classify_patch(&patch, grid) {
        Ok(s) => (s.character.to_string(), s.min_w, s.max_w, EXIT_OK),
        Err(Error::MixedCausality { min_w, max_w }) => {
            // A sign change is a genuine mixed surface; W ≈ 0 throughout is degenerate.
            let t = 1e-10 * min_w.abs().max(max_w.abs()).max(1.0);
            if min_w < -t && max_w > t {
                ("Mixed".to_string(), min_w, max_w, EXIT_OK)
            } else {
                ("Degenerate".to_string(), min_w, max_w, EXIT_DOMAIN)
            }
        }
        Err(e) => return Err(e.into()),
    };
    let mut w = args.open_output(out)?;
    writeln!(w, "record=classify axis={} causal_class={class} min_w={} max_w={}", args.axis(), fmt_f64(min_w), fmt_f64(max_w))?;
    w.flush()?;
    Ok(code)
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Mesh(a) => cmd_mesh(a, stdout, stderr),
        Command::Classify(a) => cmd_classify(a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3:-0.5"), Ok((-3.0, -0.5)));
        assert!(parse_range("2:1").is_err());
        assert!(parse_range("1").is_err());
        assert!(parse_range("a:1").is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(parse_profile("numeric"), Ok(ProfileSpec::Numeric));
        assert_eq!(parse_profile("closed"), Ok(ProfileSpec::Closed(None)));
        assert_eq!(
            parse_profile("closed:lightlike-lambda-zero"),
            Ok(ProfileSpec::Closed(Some(ClosedFormCase::LightlikeLambdaZero)))
        );
        assert_eq!(parse_profile("line:-1:2.5"), Ok(ProfileSpec::Line { slope: -1.0, intercept: 2.5 }));
        assert!(parse_profile("closed:nope").is_err());
        assert!(parse_profile("spline").is_err());
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(parse_epsilon("1"), Ok(Sign::Plus));
        assert_eq!(parse_epsilon("-1"), Ok(Sign::Minus));
        assert!(parse_epsilon("0").is_err());
    }

    #[test]
    fn exit_codes_in_process() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["weingarten", "classify", "--axis", "timelike", "--u-range", "1:2"], &mut out, &mut err), EXIT_USAGE);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["weingarten", "classify", "--axis", "timelike", "--profile", "line:0.5:1", "--u-range", "1:2"], &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("causal_class=Spacelike"));
    }
}
