//! The `affine-lines` command line: table files, subcommand dispatch and
//! certificate documents.
//!
//! A table file is line oriented, `#` starts a comment:
//!
//! ```text
//! ring zmod 5
//! arity 2
//! codomain scalar
//! map 0 0 -> 0
//! map 0 1 -> 3
//! ...
//! ```
//!
//! Instead of `map` rows, a `poly` line followed by `term <coef> <vars...>`
//! rows gives a multi-affine polynomial (variables 1-based, none for the
//! constant). Over the rationals only the `poly` body is accepted. A
//! `codomain vector <e>` header turns `map` rows into `map x.. -> y1 .. ye`.
//!
//! Every document is a sequence of `key: value` lines ending with `version`
//! and `digest` (SHA-256 of the arguments and input files). Exit codes: 0 for
//! an affirmative answer, 1 for usage, parse and precondition errors, 2 for a
//! negative certificate, 3 when a required cancellation is unavailable.

use std::collections::HashMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::bh_sets::{
    construct_geometric, construct_primes, search_bh, verify_bh, verify_properties, BhCandidate, BhReport, BhVerdict,
    DifferenceVerdict,
};
use crate::error::{Error, Result};
use crate::multiaffine::{
    line_affine_check, mask_string, psi_extract, FunctionOracle, Line, LineCheck, MultiAffinePoly, Point, TableOracle,
};
use crate::recovery::{
    moment_directions, recover, unit_family, Certificate, ConstraintMode, DirectionSet, NonAffineWitness,
    RecoverOptions,
};
use crate::ring::{Ring, RingElem};
use crate::sharpness::{
    certify_directions, lower_bound_witness, minimal_direction_count, Certification, SharpnessWitness,
};
use crate::vonstaudt::{check_hypotheses, recover_semilinear, SemilinearCert, VectorMapTable, Violation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_CANNOT_CANCEL: i32 = 3;

/// A parsed table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableFile {
    Scalar(FunctionOracle),
    Vector(VectorMapTable),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

enum Body {
    Map(Vec<(usize, Vec<RingElem>, Vec<RingElem>)>),
    Poly(Vec<(usize, RingElem, u32)>),
}

/// Parses a table file into an oracle.
pub fn parse_function_table(text: &str) -> Result<TableFile> {
    let mut ring: Option<Ring> = None;
    let mut arity: Option<usize> = None;
    let mut codomain: Option<usize> = None;
    let mut body: Option<Body> = None;

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let header_done = body.is_some();
        match word {
            "ring" | "arity" | "codomain" if header_done => {
                return Err(parse_err(no, format!("`{word}` must come before the table body")));
            }
            "ring" => {
                let r: Ring = rest.parse().map_err(|e: Error| parse_err(no, e.to_string()))?;
                ring = Some(r);
            }
            "arity" => {
                let n: usize = rest.parse().map_err(|_| parse_err(no, format!("bad arity `{rest}`")))?;
                arity = Some(n);
            }
            "codomain" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                codomain = match words.as_slice() {
                    ["scalar"] => None,
                    ["vector", e] => Some(e.parse().map_err(|_| parse_err(no, format!("bad dimension `{e}`")))?),
                    _ => return Err(parse_err(no, format!("bad codomain `{rest}`"))),
                };
            }
            "map" => {
                let (ring, n) = header(&ring, &arity, no)?;
                let rows = match body.get_or_insert_with(|| Body::Map(Vec::new())) {
                    Body::Map(rows) => rows,
                    Body::Poly(_) => return Err(parse_err(no, "`map` row inside a `poly` body")),
                };
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| parse_err(no, "expected `->`"))?;
                let elems = |s: &str| -> Result<Vec<RingElem>> {
                    s.split_whitespace().map(|w| ring.parse_elem(w).map_err(|e| parse_err(no, e.to_string()))).collect()
                };
                let x = elems(lhs)?;
                let y = elems(rhs)?;
                if x.len() != n {
                    return Err(parse_err(no, format!("point has {} coordinates, arity is {n}", x.len())));
                }
                if y.len() != codomain.unwrap_or(1) {
                    return Err(parse_err(
                        no,
                        format!("value has {} coordinates, codomain needs {}", y.len(), codomain.unwrap_or(1)),
                    ));
                }
                rows.push((no, x, y));
            }
            "poly" => {
                header(&ring, &arity, no)?;
                if body.is_some() {
                    return Err(parse_err(no, "second table body"));
                }
                if !rest.is_empty() {
                    return Err(parse_err(no, "`poly` takes no arguments"));
                }
                body = Some(Body::Poly(Vec::new()));
            }
            "term" => {
                let (ring, n) = header(&ring, &arity, no)?;
                let Some(Body::Poly(terms)) = body.as_mut() else {
                    return Err(parse_err(no, "`term` outside a `poly` body"));
                };
                let mut words = rest.split_whitespace();
                let c = words.next().ok_or_else(|| parse_err(no, "`term` needs a coefficient"))?;
                let c = ring.parse_elem(c).map_err(|e| parse_err(no, e.to_string()))?;
                let mut mask = 0u32;
                for w in words {
                    let j: usize = w.parse().map_err(|_| parse_err(no, format!("bad variable index `{w}`")))?;
                    if j == 0 || j > n {
                        return Err(parse_err(no, format!("variable {j} outside 1..={n}")));
                    }
                    if mask >> (j - 1) & 1 == 1 {
                        return Err(parse_err(no, format!("variable {j} repeated")));
                    }
                    mask |= 1 << (j - 1);
                }
                terms.push((no, c, mask));
            }
            _ => return Err(parse_err(no, format!("unknown keyword `{word}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let (ring, n) = header(&ring, &arity, last)?;
    match (body, codomain) {
        (None, _) => Err(parse_err(last, "no table body")),
        (Some(Body::Poly(_)), Some(_)) => Err(parse_err(last, "vector codomains need `map` rows")),
        (Some(Body::Poly(terms)), None) => {
            let mut p = MultiAffinePoly::new(&ring, n).map_err(|e| parse_err(last, e.to_string()))?;
            for (no, c, mask) in terms {
                p.add_term(mask, &c).map_err(|e| parse_err(no, e.to_string()))?;
            }
            Ok(TableFile::Scalar(FunctionOracle::Poly(p)))
        }
        (Some(Body::Map(rows)), codomain) => {
            if !ring.is_finite() {
                return Err(parse_err(last, format!("{ring} tables need a `poly` body")));
            }
            let mut seen: HashMap<&[RingElem], usize> = HashMap::new();
            for (no, x, _) in &rows {
                if let Some(first) = seen.insert(x, *no) {
                    return Err(parse_err(
                        *no,
                        format!("duplicate point {} (first on line {first})", Point(x.clone())),
                    ));
                }
            }
            let points = rows.iter().map(|(_, x, y)| (Point(x.clone()), y.clone()));
            match codomain {
                None => {
                    let t = TableOracle::from_entries(&ring, n, points.map(|(x, y)| (x, y[0].clone())))?;
                    Ok(TableFile::Scalar(FunctionOracle::Table(t)))
                }
                Some(e) => Ok(TableFile::Vector(VectorMapTable::from_entries(
                    &ring,
                    n,
                    e,
                    points.map(|(x, y)| (x, Point(y))),
                )?)),
            }
        }
    }
}

fn header(ring: &Option<Ring>, arity: &Option<usize>, no: usize) -> Result<(Ring, usize)> {
    let ring = ring.clone().ok_or_else(|| parse_err(no, "missing `ring` header"))?;
    let n = arity.ok_or_else(|| parse_err(no, "missing `arity` header"))?;
    Ok((ring, n))
}

/// Writes a table file that [`parse_function_table`] reads back unchanged.
pub fn write_function_table(table: &TableFile) -> String {
    let mut out = String::new();
    match table {
        TableFile::Scalar(FunctionOracle::Table(t)) => {
            let _ = writeln!(out, "ring {}\narity {}\ncodomain scalar", t.ring(), t.arity());
            for (x, v) in t.entries() {
                let _ = writeln!(out, "map {} -> {v}", x.coords().iter().join(" "));
            }
        }
        TableFile::Scalar(FunctionOracle::Poly(p)) => {
            let _ = writeln!(out, "ring {}\narity {}\ncodomain scalar\npoly", p.ring(), p.arity());
            for (m, c) in p.terms() {
                let vars = crate::multiaffine::mask_vars(m);
                let _ = writeln!(out, "term {c}{}", vars.iter().map(|j| format!(" {j}")).join(""));
            }
        }
        TableFile::Vector(t) => {
            let _ = writeln!(out, "ring {}\narity {}\ncodomain vector {}", t.field(), t.domain_dim(), t.codomain_dim());
            for (x, y) in t.entries() {
                let _ = writeln!(out, "map {} -> {}", x.coords().iter().join(" "), y.coords().iter().join(" "));
            }
        }
    }
    out
}

/// An ordered list of `key: value` fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    fields: Vec<(String, String)>,
}

impl Document {
    pub fn new(status: &str) -> Document {
        Document { fields: vec![("status".into(), status.into())] }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Document {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn to_text(&self) -> String {
        self.fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> =
            self.fields.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
        let mut s = serde_json::to_string_pretty(&map).expect("string map serializes");
        s.push('\n');
        s
    }
}

fn join_elems(xs: &[RingElem]) -> String {
    xs.iter().join(" ")
}

fn join_points(ps: &[Point]) -> String {
    ps.iter().join(";")
}

fn line_witness(line: &Line, params: &[RingElem; 3], values: &[RingElem; 3]) -> String {
    format!("line {line} at r = {} gives {}", params.iter().join(","), values.iter().join(","))
}

/// Renders a recovery certificate with its exit code.
pub fn emit_certificate(cert: &Certificate) -> (Document, i32) {
    match cert {
        Certificate::Affine { constant, linear } => {
            let coeffs = std::iter::once(constant).chain(linear).join(" ");
            (Document::new("affine").with("coeffs", coeffs), EXIT_OK)
        }
        Certificate::NonAffine(NonAffineWitness::Line { line, params, values }) => {
            (Document::new("non-affine").with("witness", line_witness(line, params, values)), EXIT_NEGATIVE)
        }
        Certificate::NonAffine(NonAffineWitness::Coefficient { degree, mask, value }) => (
            Document::new("non-affine")
                .with("witness", format!("coefficient a_{} = {value}", mask_string(*mask)))
                .with("degree", degree),
            EXIT_NEGATIVE,
        ),
        Certificate::CannotCancel { degree, det } => {
            (Document::new("cannot-cancel").with("degree", degree).with("det", det), EXIT_CANNOT_CANCEL)
        }
        Certificate::HypothesisViolation(why) => {
            (Document::new("hypothesis-violation").with("witness", why), EXIT_NEGATIVE)
        }
    }
}

pub fn emit_bh_verdict(v: &BhVerdict) -> (Document, i32) {
    match v {
        BhVerdict::Ok => (Document::new("ok"), EXIT_OK),
        BhVerdict::Collision { left, right, product } => (
            Document::new("collision")
                .with("left", join_elems(left))
                .with("right", join_elems(right))
                .with("product", product),
            EXIT_NEGATIVE,
        ),
    }
}

pub fn emit_bh_report(r: &BhReport) -> (Document, i32) {
    if let Some((h, v)) = r.per_h.iter().find(|(_, v)| !v.is_ok()) {
        let (doc, code) = emit_bh_verdict(v);
        return (doc.with("degree", h), code);
    }
    if let Some(e) = &r.irregular_element {
        return (Document::new("violation").with("witness", format!("element {e} is not regular")), EXIT_NEGATIVE);
    }
    if let DifferenceVerdict::NonRegularDifference { h, left, right, value } = &r.differences {
        return (
            Document::new("violation")
                .with(
                    "witness",
                    format!(
                        "prod({}) - prod({}) = {value} is not regular",
                        left.iter().join(" "),
                        right.iter().join(" ")
                    ),
                )
                .with("degree", h),
            EXIT_NEGATIVE,
        );
    }
    (Document::new("ok"), EXIT_OK)
}

pub fn emit_semilinear(c: &SemilinearCert) -> (Document, i32) {
    (
        Document::new("semilinear")
            .with("tau", format!("frobenius^{}", c.frobenius))
            .with("offset", &c.offset)
            .with("basis_images", join_points(&c.basis_images)),
        EXIT_OK,
    )
}

pub fn emit_witness(w: &SharpnessWitness) -> (Document, i32) {
    (Document::new("witness").with("degree", w.degree).with("witness", &w.poly), EXIT_NEGATIVE)
}

pub fn emit_violation(v: &Violation) -> (Document, i32) {
    let witness = match v {
        Violation::NotALine { line, image } => format!("image of {line} is {{{}}}, not a line", image.iter().join(";")),
        Violation::NotSeparated { line, point } => format!("f({point}) lies in the image of {line}"),
    };
    (Document::new("violation").with("witness", witness), EXIT_NEGATIVE)
}

#[derive(Parser, Debug)]
#[command(
    name = "affine-lines",
    version,
    about = "Decide, certify and refute affine-linearity from restrictions to lines"
)]
struct Cli {
    /// Print the document as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one line `base + R dir` of a scalar table.
    CheckLine {
        #[arg(long)]
        input: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        dir: String,
    },
    /// Finite-difference coefficients at a base point (origin by default).
    Psi {
        #[arg(long)]
        input: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Run the recovery pipeline on a scalar table.
    Recover {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        dirs: DirChoice,
        /// Number of moment directions (defaults to the minimal count).
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
    },
    /// Print a direction set.
    Directions {
        #[arg(long)]
        ring: String,
        /// Arity, needed with --family.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        dirs: DirChoice,
        /// Number of moment directions (defaults to the minimal count).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Multiplicative B_h sets.
    Bh {
        #[command(subcommand)]
        command: BhCommand,
    },
    /// Direction counts, lower-bound witnesses and certification.
    Sharpness {
        #[command(subcommand)]
        command: SharpnessCommand,
    },
    /// Maps sending lines onto lines.
    Vonstaudt {
        #[command(subcommand)]
        command: VonStaudtCommand,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DirChoice {
    /// Explicit directions, `1,1;1,2,4`.
    #[arg(long)]
    dirs: Option<String>,
    /// Moment directions from the set `s1,..,sn`.
    #[arg(long)]
    set: Option<String>,
    /// The unit family `sum_{j in J} e_j`, `|J| >= 2`.
    #[arg(long)]
    family: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    IntegerNodes,
}

#[derive(Subcommand, Debug)]
enum BhCommand {
    /// Check one `h`, or every property when `--h` is omitted.
    Verify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        h: Option<usize>,
    },
    /// Search `n`-subsets of a finite ring.
    Search {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// `{1, g, g^2, g^4, ...}`.
    Geometric {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
    },
    /// The first `n` primes over the rationals.
    Primes {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SharpnessCommand {
    /// Minimal number of moment directions.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// A polynomial that too few directions cannot detect.
    Witness {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        /// Directions, `1,1,1;1,2,4`; none when omitted.
        #[arg(long, default_value = "")]
        dirs: String,
    },
    /// Certify the moment directions of a set.
    Certify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand, Debug)]
enum VonStaudtCommand {
    /// Look for a line whose image is not a line, or a line missing a point
    Check {
        #[arg(long)]
        input: String,
    },
    /// Recover `f(x) = A tau(x) + b` with `tau` a Frobenius power
    Recover {
        #[arg(long)]
        input: String,
    },
}

/// Exit code and output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("affine-lines".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut inputs = Vec::new();
    match dispatch(&cli.command, &mut inputs) {
        Ok((doc, code)) => {
            let doc = doc.with("version", env!("CARGO_PKG_VERSION")).with("digest", digest(&args, &inputs));
            let stdout = if cli.json { doc.to_json() } else { doc.to_text() };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn digest(args: &[String], inputs: &[String]) -> String {
    let mut h = Sha256::new();
    for a in args.iter().filter(|a| *a != "--json") {
        h.update(a.as_bytes());
        h.update([0x1f]);
    }
    for text in inputs {
        h.update([0x1e]);
        h.update(text.as_bytes());
    }
    hex::encode(h.finalize())
}

fn read_input(path: &str, inputs: &mut Vec<String>) -> Result<TableFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))?;
    let table = parse_function_table(&text)?;
    inputs.push(text);
    Ok(table)
}

fn scalar_input(path: &str, inputs: &mut Vec<String>) -> Result<FunctionOracle> {
    match read_input(path, inputs)? {
        TableFile::Scalar(f) => Ok(f),
        TableFile::Vector(_) => Err(Error::Precondition(format!("{path} has a vector codomain"))),
    }
}

fn vector_input(path: &str, inputs: &mut Vec<String>) -> Result<VectorMapTable> {
    match read_input(path, inputs)? {
        TableFile::Vector(t) => Ok(t),
        TableFile::Scalar(_) => Err(Error::Precondition(format!("{path} needs `codomain vector <e>`"))),
    }
}

fn parse_ring(s: &str) -> Result<Ring> {
    s.parse()
}

/// `a,b,c` as ring elements.
pub fn parse_vector(ring: &Ring, s: &str) -> Result<Vec<RingElem>> {
    s.split(',').map(|w| ring.parse_elem(w)).collect()
}

/// `1,1;1,2,4` as points; the empty string gives no points.
pub fn parse_points(ring: &Ring, s: &str) -> Result<Vec<Point>> {
    s.split(';').map(str::trim).filter(|w| !w.is_empty()).map(|w| parse_vector(ring, w).map(Point)).collect()
}

fn direction_set(ring: &Ring, n: Option<usize>, choice: &DirChoice, count: Option<usize>) -> Result<DirectionSet> {
    if let Some(d) = &choice.dirs {
        let points = parse_points(ring, d)?;
        let n = n.or(points.first().map(Point::arity)).unwrap_or(0);
        return DirectionSet::custom(ring, n, points);
    }
    if let Some(s) = &choice.set {
        let s = parse_vector(ring, s)?;
        let count = match count {
            Some(c) => c,
            None => minimal_direction_count(s.len())?,
        };
        return moment_directions(ring, &s, count);
    }
    let n = n.ok_or_else(|| Error::Precondition("--family needs the arity".into()))?;
    unit_family(ring, n)
}

fn dispatch(cmd: &Command, inputs: &mut Vec<String>) -> Result<(Document, i32)> {
    match cmd {
        Command::CheckLine { input, base, dir } => {
            let f = scalar_input(input, inputs)?;
            let ring = f.ring().clone();
            let line = Line::new(&ring, Point(parse_vector(&ring, base)?), Point(parse_vector(&ring, dir)?))?;
            Ok(match line_affine_check(&f, &line)? {
                LineCheck::Affine { slope } => {
                    (Document::new("affine").with("coeffs", format!("{} {slope}", f.eval(line.base())?)), EXIT_OK)
                }
                LineCheck::Witness { params, values } => {
                    (Document::new("non-affine").with("witness", line_witness(&line, &params, &values)), EXIT_NEGATIVE)
                }
            })
        }
        Command::Psi { input, at } => {
            let f = scalar_input(input, inputs)?;
            let ring = f.ring().clone();
            let m0 = match at {
                Some(p) => Point(parse_vector(&ring, p)?),
                None => Point::zero(&ring, f.arity()),
            };
            let psi = psi_extract(&f, &m0)?;
            Ok((Document::new("psi").with("coeffs", &psi).with("degree", psi.degree()), EXIT_OK))
        }
        Command::Recover { input, dirs, count, mode } => {
            let f = scalar_input(input, inputs)?;
            let set = direction_set(f.ring(), Some(f.arity()), dirs, *count)?;
            let mode = match mode {
                Mode::Exhaustive => ConstraintMode::Exhaustive,
                Mode::IntegerNodes => ConstraintMode::IntegerNodes,
            };
            Ok(emit_certificate(&recover(&f, &set, RecoverOptions { mode })?))
        }
        Command::Directions { ring, n, dirs, count } => {
            let ring = parse_ring(ring)?;
            let set = direction_set(&ring, *n, dirs, *count)?;
            Ok((Document::new("directions").with("N", set.len()).with("dirs", join_points(set.dirs())), EXIT_OK))
        }
        Command::Bh { command } => bh(command),
        Command::Sharpness { command } => sharpness(command),
        Command::Vonstaudt { command } => match command {
            VonStaudtCommand::Check { input } => {
                let t = vector_input(input, inputs)?;
                Ok(match check_hypotheses(&t)? {
                    None => (Document::new("ok"), EXIT_OK),
                    Some(v) => emit_violation(&v),
                })
            }
            VonStaudtCommand::Recover { input } => {
                let t = vector_input(input, inputs)?;
                if let Some(v) = check_hypotheses(&t)? {
                    return Ok(emit_violation(&v));
                }
                Ok(emit_semilinear(&recover_semilinear(&t)?))
            }
        },
    }
}

fn bh(cmd: &BhCommand) -> Result<(Document, i32)> {
    let set_doc = |s: &BhCandidate| Document::new("ok").with("set", join_elems(s.elements()));
    match cmd {
        BhCommand::Verify { ring, set, h } => {
            let ring = parse_ring(ring)?;
            let s = BhCandidate::new(&ring, parse_vector(&ring, set)?)?;
            match h {
                Some(h) => Ok(emit_bh_verdict(&verify_bh(&s, *h)?)),
                None => Ok(emit_bh_report(&verify_properties(&s)?)),
            }
        }
        BhCommand::Search { ring, n, budget } => {
            let ring = parse_ring(ring)?;
            Ok(match search_bh(&ring, *n, *budget)? {
                Some(s) => (set_doc(&s), EXIT_OK),
                None => (Document::new("none"), EXIT_NEGATIVE),
            })
        }
        BhCommand::Geometric { ring, g, n } => {
            let ring = parse_ring(ring)?;
            let s = construct_geometric(&ring.parse_elem(g)?, *n, &ring)?;
            Ok((set_doc(&s), EXIT_OK))
        }
        BhCommand::Primes { n } => Ok((set_doc(&construct_primes(*n)?), EXIT_OK)),
    }
}

fn sharpness(cmd: &SharpnessCommand) -> Result<(Document, i32)> {
    match cmd {
        SharpnessCommand::Bound { n } => Ok((Document::new("ok").with("N", minimal_direction_count(*n)?), EXIT_OK)),
        SharpnessCommand::Witness { ring, n, dirs } => {
            let ring = parse_ring(ring)?;
            let set = DirectionSet::custom(&ring, *n, parse_points(&ring, dirs)?)?;
            Ok(emit_witness(&lower_bound_witness(*n, &set, &ring)?))
        }
        SharpnessCommand::Certify { ring, set } => {
            let ring = parse_ring(ring)?;
            let s = BhCandidate::new(&ring, parse_vector(&ring, set)?)?;
            Ok(match certify_directions(s.len(), &s)? {
                Certification::Ok { dets } => (
                    Document::new("ok")
                        .with("N", minimal_direction_count(s.len().max(2))?)
                        .with("det", join_elems(&dets)),
                    EXIT_OK,
                ),
                Certification::Failure { degree, det } => {
                    (Document::new("failure").with("degree", degree).with("det", det), EXIT_NEGATIVE)
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AFFINE_Z5: &str = "ring zmod 5\narity 1\nmap 0 -> 1\nmap 1 -> 3\nmap 2 -> 0\nmap 3 -> 2\nmap 4 -> 4\n";

    #[test]
    fn parses_map_table() {
        let TableFile::Scalar(FunctionOracle::Table(t)) = parse_function_table(AFFINE_Z5).unwrap() else { panic!() };
        let z5 = Ring::zmod(5).unwrap();
        assert_eq!(t.get(&Point::from_ints(&z5, &[2])).unwrap(), z5.zero());
    }

    #[test]
    fn parses_rational_poly() {
        let text = "ring rational\narity 2\npoly\nterm 3/1 1\nterm 1/1 1 2  # xy\nterm -1/2\n";
        let TableFile::Scalar(FunctionOracle::Poly(p)) = parse_function_table(text).unwrap() else { panic!() };
        assert_eq!(p.to_string(), "-1/2 + 3*x1 + x1*x2");
    }

    #[test]
    fn missing_and_duplicate_points() {
        let missing = AFFINE_Z5.replace("map 3 -> 2\n", "");
        assert_eq!(parse_function_table(&missing).unwrap_err(), Error::MissingPoint("3".into()));
        let dup = format!("{AFFINE_Z5}map 1 -> 3\n");
        assert!(matches!(parse_function_table(&dup).unwrap_err(), Error::Parse { line: 8, .. }));
        let bad = AFFINE_Z5.replace("map 2 -> 0", "map 2 -> 7");
        assert!(matches!(parse_function_table(&bad).unwrap_err(), Error::Parse { line: 5, .. }));
        let rat = "ring rational\narity 1\nmap 0 -> 1\n";
        assert!(parse_function_table(rat).is_err());
    }

    #[test]
    fn roundtrip() {
        let t = parse_function_table(AFFINE_Z5).unwrap();
        assert_eq!(parse_function_table(&write_function_table(&t)).unwrap(), t);
    }

    #[test]
    fn certificate_rendering() {
        let z7 = Ring::zmod(7).unwrap();
        let cert = Certificate::Affine { constant: z7.one(), linear: vec![z7.from_int(3), z7.from_int(2)] };
        assert_eq!(emit_certificate(&cert).0.to_text(), "status: affine\ncoeffs: 1 3 2\n");
        let q = Ring::rationals();
        let v = BhVerdict::Collision {
            left: vec![q.one(), q.from_int(6)],
            right: vec![q.from_int(2), q.from_int(3)],
            product: q.from_int(6),
        };
        assert_eq!(
            emit_bh_verdict(&v),
            (Document::new("collision").with("left", "1 6").with("right", "2 3").with("product", "6"), 2)
        );
    }

    #[test]
    fn bound_subcommand() {
        let out = run(["sharpness", "bound", "--n", "4"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("status: ok\nN: 6\nversion: "), "{}", out.stdout);
        let out = run(["frobnicate"]);
        assert_eq!(out.code, 1);
        assert!(!out.stderr.is_empty());
    }
}
