//! Command-line front end: file formats, commands, plot emission.
//!
//! Matrix files:
//!
//! ```text
//! # comments and blank lines are ignored
//! dimension 2
//! parity odd-q
//! 1 1
//! 0 1
//! ```
//!
//! Diagram files describe a surgery presentation of the ambient manifold
//! and the curves of a link in it:
//!
//! ```text
//! surgery 1
//! 4
//! curve m lk 1 framing 0
//! link m n 1/2
//! ```
//!
//! `surgery k` is followed by `k` rows of the integer linking matrix.
//! Each `curve` gives its linking numbers with the surgery components and
//! its framing; `link a b x` sets the `S³` linking number of two curves.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::arith::{fmt_rational, parse_rational, root_of_unity_tangent, CirclePoint, Rational};
use crate::herm::DEFAULT_PRECISION_CEILING;
use crate::linkclass::{independent_family_with, FamilyOptions, LinkClass};
use crate::matrix::RationalMatrix;
use crate::seifert::{
    branched_signature_with_ceiling, reduced_turn, sigma_at, Angle, Parity, SeifertMatrix, SignatureFunction,
};
use crate::surgery::{
    admits_type, framing_for_type, induced_linking_matrix, lk_sigma, realize_linking_matrix, CurveClass,
    FramedLinkDiagram, TypeVector,
};
use crate::Error;

/// Environment variable holding the precision ceiling, in bits, for sign
/// determination at roots of unity.
pub const PRECISION_ENV: &str = "QSIG_PRECISION_CEILING";

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for InputError {}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Math(m) => f.write_str(m),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPrimes(_)
            | Error::ZeroTypeEntry(_)
            | Error::TypeNotCoprime
            | Error::DimensionMismatch(_)
            | Error::NotSquare(..)
            | Error::ZeroComplexity
            | Error::Unrepresentable(_) => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Meaningful lines with their 1-based numbers and the column of each token.
fn tokenized(src: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        toks.push((body[..s].chars().count() + 1, &body[s..j]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> InputError {
    InputError { line, col, msg: msg.into() }
}

fn rational_token(line: usize, (col, t): (usize, &str)) -> Result<Rational, InputError> {
    parse_rational(t).ok_or_else(|| err(line, col, format!("invalid rational {t:?}")))
}

fn integer_token<T: std::str::FromStr>(line: usize, (col, t): (usize, &str)) -> Result<T, InputError> {
    t.parse().map_err(|_| err(line, col, format!("invalid integer {t:?}")))
}

fn keyword<'a>(
    lines: &mut impl Iterator<Item = &'a (usize, Vec<(usize, &'a str)>)>,
    key: &str,
    last: usize,
) -> Result<(usize, (usize, &'a str)), InputError> {
    let (ln, toks) = lines.next().ok_or_else(|| err(last + 1, 1, format!("expected `{key}`")))?;
    if toks[0].1 != key || toks.len() != 2 {
        return Err(err(*ln, toks[0].0, format!("expected `{key} <value>`")));
    }
    Ok((*ln, toks[1]))
}

/// Parses a matrix file.
pub fn parse_matrix_file(src: &str) -> Result<SeifertMatrix, InputError> {
    let lines = tokenized(src);
    let mut it = lines.iter();
    let (ln, tok) = keyword(&mut it, "dimension", 0)?;
    let n: usize = integer_token(ln, tok)?;
    let (ln, (col, p)) = keyword(&mut it, "parity", ln)?;
    let parity = match p {
        "odd-q" => Parity::Odd,
        "even-q" => Parity::Even,
        _ => return Err(err(ln, col, format!("parity must be odd-q or even-q, not {p:?}"))),
    };
    let mut rows = Vec::with_capacity(n);
    let mut last = ln;
    for (ln, toks) in it.by_ref() {
        last = *ln;
        if rows.len() == n {
            return Err(err(*ln, toks[0].0, format!("more than {n} rows")));
        }
        if toks.len() != n {
            return Err(err(*ln, toks[0].0, format!("row has {} entries, expected {n}", toks.len())));
        }
        rows.push(toks.iter().map(|&t| rational_token(*ln, t)).collect::<Result<Vec<_>, _>>()?);
    }
    if rows.len() != n {
        return Err(err(last + 1, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    let m = RationalMatrix::from_fn(n, n, |i, j| rows[i][j].clone());
    SeifertMatrix::new(m, parity).map_err(|e| err(1, 1, e.to_string()))
}

/// The canonical text of a matrix file.
pub fn render_matrix_file(a: &SeifertMatrix) -> String {
    let mut s = format!(
        "dimension {}\nparity {}\n",
        a.dim(),
        match a.parity() {
            Parity::Odd => "odd-q",
            Parity::Even => "even-q",
        }
    );
    for i in 0..a.dim() {
        let row: Vec<String> = (0..a.dim()).map(|j| fmt_rational(a.entry(i, j))).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// A parsed diagram file.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub surgery: FramedLinkDiagram,
    pub names: Vec<String>,
    pub curves: Vec<CurveClass>,
    /// `S³` linking numbers of the curves, framings on the diagonal.
    pub s3_lk: RationalMatrix,
}

/// Parses a diagram file.
pub fn parse_diagram_file(src: &str) -> Result<Diagram, InputError> {
    let lines = tokenized(src);
    let mut it = lines.iter();
    let (ln, tok) = keyword(&mut it, "surgery", 0)?;
    let k: usize = integer_token(ln, tok)?;
    let mut lk = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, toks) = it.next().ok_or_else(|| err(ln + 1, 1, format!("expected {k} surgery rows")))?;
        if toks.len() != k {
            return Err(err(*ln, toks[0].0, format!("row has {} entries, expected {k}", toks.len())));
        }
        lk.push(toks.iter().map(|&t| integer_token::<i64>(*ln, t)).collect::<Result<Vec<_>, _>>()?);
    }
    let surgery = FramedLinkDiagram::new(lk).map_err(|e| err(ln, 1, e.to_string()))?;
    let mut names: Vec<String> = Vec::new();
    let mut curves = Vec::new();
    let mut framings = Vec::new();
    let mut links = Vec::new();
    for (ln, toks) in it {
        let ln = *ln;
        match toks[0].1 {
            "curve" => {
                let bad = || err(ln, toks[0].0, format!("expected `curve <name> lk <{k} integers> framing <rational>`"));
                if toks.len() != k + 5 || toks[2].1 != "lk" || toks[k + 3].1 != "framing" {
                    return Err(bad());
                }
                let name = toks[1].1.to_string();
                if names.contains(&name) {
                    return Err(err(ln, toks[1].0, format!("curve {name:?} defined twice")));
                }
                let v = toks[3..k + 3].iter().map(|&t| integer_token::<i64>(ln, t)).collect::<Result<Vec<_>, _>>()?;
                framings.push(rational_token(ln, toks[k + 4])?);
                curves.push(CurveClass::new(v));
                names.push(name);
            }
            "link" => {
                if toks.len() != 4 {
                    return Err(err(ln, toks[0].0, "expected `link <name> <name> <rational>`"));
                }
                links.push((ln, toks[1], toks[2], rational_token(ln, toks[3])?));
            }
            w => return Err(err(ln, toks[0].0, format!("unknown record {w:?}"))),
        }
    }
    let n = names.len();
    let mut s3 = RationalMatrix::from_fn(n, n, |i, j| if i == j { framings[i].clone() } else { Rational::zero() });
    for (ln, a, b, x) in links {
        let idx = |(col, t): (usize, &str)| {
            names.iter().position(|m| m == t).ok_or_else(|| err(ln, col, format!("unknown curve {t:?}")))
        };
        let (i, j) = (idx(a)?, idx(b)?);
        if i == j {
            return Err(err(ln, b.0, "a curve's self-linking is its framing"));
        }
        s3.set(i, j, x.clone());
        s3.set(j, i, x);
    }
    Ok(Diagram { surgery, names, curves, s3_lk: s3 })
}

/// `aπ/b` when the point is a rational multiple of `π`, otherwise
/// `2·atan(u)` with `u` given by a defining polynomial and interval.
pub fn render_point(p: &CirclePoint) -> String {
    match point_as_pi_multiple(p) {
        Some(r) => Angle::pi_multiple(r).to_string(),
        None => p.to_string(),
    }
}

/// The profile table of `σ_A` over `[0, 2π)`.
pub fn profile_table(f: &SignatureFunction) -> CliResult<String> {
    let prof = f.profile();
    let mut s = String::from("breakpoint\tleft\tright\tjump\tvalue\n");
    let values = f.point_values()?;
    for (p, v) in prof.breakpoints().iter().zip(values) {
        let (l, r) = (prof.value_left_of(p), prof.value_right_of(p));
        writeln!(s, "{}\t{l}\t{r}\t{}\t{v}", render_point(p), r - l).expect("string write");
    }
    if prof.is_constant() {
        writeln!(s, "# constant {}", prof.arc_values().first().copied().unwrap_or(0)).expect("string write");
    }
    Ok(s)
}

/// A step plot of `σ_A` over `[0, 2π)`: one `arc` element per arc of the
/// profile and one dashed `breakpoint` line per breakpoint.
pub fn profile_svg(f: &SignatureFunction) -> String {
    let prof = f.profile();
    let (w, h, pad) = (640.0, 240.0, 20.0);
    let vals = prof.arc_values();
    let lo = vals.iter().copied().min().unwrap_or(0).min(0) as f64 - 1.0;
    let hi = vals.iter().copied().max().unwrap_or(0).max(0) as f64 + 1.0;
    let tau = 2.0 * std::f64::consts::PI;
    let x = |t: f64| pad + (w - 2.0 * pad) * t / tau;
    let y = |v: i64| pad + (h - 2.0 * pad) * (hi - v as f64) / (hi - lo);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    writeln!(s, "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\"/>", x(0.0), y(0), x(tau), y(0))
        .expect("string write");
    let bps: Vec<f64> = prof.breakpoints().iter().map(|p| p.theta_f64()).collect();
    if bps.is_empty() {
        let v = vals.first().copied().unwrap_or(0);
        writeln!(s, "<path class=\"arc\" d=\"M {:.2} {:.2} H {:.2}\" stroke=\"black\"/>", x(0.0), y(v), x(tau)).expect("string write");
    }
    for (i, &t0) in bps.iter().enumerate() {
        let v = vals[i];
        let d = match bps.get(i + 1) {
            Some(&t1) => format!("M {:.2} {:.2} H {:.2}", x(t0), y(v), x(t1)),
            // The last arc wraps through 0.
            None if bps[0] > 0.0 => format!("M {:.2} {:.2} H {:.2} M {:.2} {:.2} H {:.2}", x(t0), y(v), x(tau), x(0.0), y(v), x(bps[0])),
            None => format!("M {:.2} {:.2} H {:.2}", x(t0), y(v), x(tau)),
        };
        writeln!(s, "<path class=\"arc\" d=\"{d}\" stroke=\"black\"/>").expect("string write");
    }
    for (p, t) in prof.breakpoints().iter().zip(&bps) {
        writeln!(
            s,
            "<line class=\"breakpoint\" x1=\"{:.2}\" y1=\"{pad}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#c00\" stroke-dasharray=\"4 3\"><title>{}</title></line>",
            x(*t),
            x(*t),
            h - pad,
            render_point(p)
        )
        .expect("string write");
    }
    s.push_str("</svg>\n");
    s
}

/// Precision ceiling from the environment, or the default.
pub fn precision_ceiling() -> CliResult<u32> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{PRECISION_ENV} must be a positive integer, not {v:?}"))),
        Err(_) => Ok(DEFAULT_PRECISION_CEILING),
    }
}

#[derive(Parser, Debug)]
#[command(name = "qsig", about = "Exact signature jump functions of links in rational homology spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Breakpoints of the signature function of a matrix file.
    Profile {
        file: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The jump at an angle, optionally for a link of given complexity and type.
    Delta {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        complexity: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tau: Option<Vec<i64>>,
    },
    /// The signature at an angle.
    Sigma {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Linking computations in a surgery diagram.
    Surgery {
        file: PathBuf,
        action: SurgeryAction,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tau: Option<Vec<i64>>,
    },
    /// Verify the independence claims for a family of knots.
    Family {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Use eight copies of the even base matrix.
        #[arg(long)]
        eightfold: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SurgeryAction {
    Lk,
    Matrix,
    Admits,
    Framing,
    Realize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &PathBuf) -> CliResult<SeifertMatrix> {
    parse_matrix_file(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn render_rational_matrix(m: &RationalMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(fmt_rational).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn q_of(p: Parity) -> u32 {
    match p {
        Parity::Odd => 1,
        Parity::Even => 2,
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Profile { file, plot, out: path } => {
            let a = load_matrix(&file)?;
            let f = SignatureFunction::new(&a);
            let table = profile_table(&f)?;
            match path {
                Some(p) => std::fs::write(&p, &table)?,
                None => out.write_all(table.as_bytes())?,
            }
            if let Some(p) = plot {
                std::fs::write(&p, profile_svg(&f))?;
            }
        }
        Command::Delta { file, theta, complexity, tau } => {
            let a = load_matrix(&file)?;
            let theta: Angle = theta.parse()?;
            let tau = match tau {
                Some(t) => TypeVector::new(t)?,
                None => TypeVector::ones(1),
            };
            let q = q_of(a.parity());
            let l = LinkClass::new(tau, complexity, a, q)?;
            writeln!(out, "{}", l.delta(&theta)?)?;
        }
        Command::Sigma { file, theta } => {
            let a = load_matrix(&file)?;
            let theta: Angle = theta.parse()?;
            let r = theta.as_rational_pi().expect("parsed angles are rational");
            let (k, d) = reduced_turn(r);
            let v = if d == 1 {
                sigma_at(&a, &theta)?
            } else {
                branched_signature_with_ceiling(&a, k, d, precision_ceiling()?)?
            };
            writeln!(out, "{v}")?;
        }
        Command::Surgery { file, action, tau } => {
            let d = parse_diagram_file(&read(&file)?).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let tau = || -> CliResult<TypeVector> {
                let t = tau.clone().ok_or_else(|| CliError::Input("--tau is required".into()))?;
                Ok(TypeVector::new(t)?)
            };
            match action {
                SurgeryAction::Lk => {
                    for i in 0..d.curves.len() {
                        for j in i..d.curves.len() {
                            let v = lk_sigma(&d.surgery, &d.curves[i], &d.curves[j], d.s3_lk.get(i, j))?;
                            writeln!(out, "lk({},{}) = {}", d.names[i], d.names[j], fmt_rational(&v))?;
                        }
                    }
                }
                SurgeryAction::Matrix => {
                    let m = induced_linking_matrix(&d.surgery, &d.curves, &d.s3_lk)?;
                    out.write_all(render_rational_matrix(&m).as_bytes())?;
                }
                SurgeryAction::Admits => {
                    let m = induced_linking_matrix(&d.surgery, &d.curves, &d.s3_lk)?;
                    writeln!(out, "{}", if admits_type(&m, &tau()?)? { "yes" } else { "no" })?;
                }
                SurgeryAction::Framing => {
                    let m = induced_linking_matrix(&d.surgery, &d.curves, &d.s3_lk)?;
                    match framing_for_type(&m, &tau()?)? {
                        Some(f) => {
                            let f: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                            writeln!(out, "D = diag({})", f.join(","))?;
                        }
                        None => {
                            writeln!(out, "no integral framing admits this type")?;
                            return Ok(1);
                        }
                    }
                }
                SurgeryAction::Realize => {
                    let m = induced_linking_matrix(&d.surgery, &d.curves, &d.s3_lk)?;
                    let (b, v) = realize_linking_matrix(&m)?;
                    write!(out, "B =\n{}V =\n{}", render_rational_matrix(&b), render_rational_matrix(&v))?;
                }
            }
        }
        Command::Family { parity, primes, eightfold } => {
            let parity = match parity {
                ParityArg::Odd => Parity::Odd,
                ParityArg::Even => Parity::Even,
            };
            let (_, report) = independent_family_with(parity, &primes, FamilyOptions { eightfold })?;
            let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
            for r in &report.rows {
                let t = Angle::pi_multiple(r.theta.clone());
                writeln!(
                    out,
                    "p={} θ={t} δ={} {}",
                    r.prime,
                    r.value,
                    verdict(r.nonvanishing.unwrap_or(true))
                )?;
                writeln!(out, "p={} θ={t}+2π δ={} {}-vanish", r.prime, r.shifted_value, verdict(r.vanishing))?;
            }
            if !report.all_pass() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// The rational `r` with `p = e^{irπ}`, `0 <= r < 2`, when there is one
/// with denominator at most 720. Candidates are guessed in floating point
/// and confirmed exactly.
pub fn point_as_pi_multiple(p: &CirclePoint) -> Option<Rational> {
    match p {
        CirclePoint::Pi => Some(Rational::from_integer(1.into())),
        _ if p.is_zero_angle() => Some(Rational::zero()),
        _ => {
            let x = p.theta_f64() / std::f64::consts::PI;
            (1..=720i64).find_map(|b| {
                let a = (x * b as f64).round() as i64;
                ((x - a as f64 / b as f64).abs() <= 1e-9 && root_of_unity_tangent(a, 2 * b as u64) == *p)
                    .then(|| Rational::new(a.into(), b.into()))
            })
        }
    }
}
