//! Command-line front end for `bd-whittaker`.
//!
//! Exit codes: 0 success, 2 malformed input, 3 violated mathematical
//! constraint, 4 parameter not in general position.

pub mod document;
pub mod output;

use std::fmt;
use std::path::{Path, PathBuf};

use bd_whittaker::cover::{self, CoverSpec};
use bd_whittaker::parahoric::{self, ApartmentPoint};
use bd_whittaker::whittaker::{self, GLrCharacter, YxRhoSolver};
use bd_whittaker::{BigInt, Error};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub use document::CoverDocument;
pub use output::OutputRecord;

#[derive(Debug, Parser)]
#[command(name = "bdwh", version, about = "Whittaker-dimension invariants of depth-zero representations of covering groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forms, central index and squeeze bounds of a cover file.
    Info { file: PathBuf },
    /// Residual extension data at a point of the apartment.
    Residual {
        file: PathBuf,
        /// Comma-separated rationals, e.g. "1/2,-1/2".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Dimension for a Coxeter-torus character of a GL_r cover.
    Whittaker {
        #[command(flatten)]
        glr: GlrArgs,
        #[arg(long)]
        a: u64,
        /// Also run the brute-force scan and the lattice computation.
        #[arg(long)]
        oracle: bool,
    },
    /// Dimensions over all general-position classes of a GL_r cover.
    Table {
        #[command(flatten)]
        glr: GlrArgs,
    },
}

#[derive(Debug, Clone, Copy, clap::Args)]
pub struct GlrArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: u64,
    /// 𝐩 = Q(e_i).
    #[arg(long, allow_hyphen_values = true)]
    pub pp: i64,
    /// 𝐪 = B_Q(e_i, e_j), i ≠ j.
    #[arg(long, allow_hyphen_values = true)]
    pub qq: i64,
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Constraint(String),
    NotGeneralPosition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Constraint(_) => 3,
            CliError::NotGeneralPosition(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Constraint(m) => write!(f, "constraint violated: {m}"),
            CliError::NotGeneralPosition(m) => write!(f, "not in general position: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_malformed_input() {
            CliError::Malformed(e.to_string())
        } else if e == Error::NotGeneralPosition {
            CliError::NotGeneralPosition(e.to_string())
        } else {
            CliError::Constraint(e.to_string())
        }
    }
}

pub fn load_cover(path: &Path) -> Result<CoverSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    let doc: CoverDocument =
        serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    Ok(doc.to_cover()?)
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int_value(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn cover_inputs(record: &mut OutputRecord, file: &Path, c: &CoverSpec) {
    record.input("file", file.display().to_string());
    record.input("n", c.n());
    record.input("q", c.q());
}

pub fn cmd_info(file: &Path) -> Result<OutputRecord, CliError> {
    let c = load_cover(file)?;
    let mut rec = OutputRecord::new("info");
    cover_inputs(&mut rec, file, &c);
    rec.result("rank", c.rank());
    rec.result("semisimple_rank", c.datum().semisimple_rank());
    if let Some(inv) = c.glr_invariants() {
        let r = c.rank();
        rec.result("family", cover::classify_glr_family(inv.bold_p, inv.bold_q).to_string());
        rec.result("bold_p", inv.bold_p);
        rec.result("bold_q", inv.bold_q);
        rec.result("q_of_e0", cover::q_of_e0(r, inv.bold_p, inv.bold_q));
        rec.result("m_qr", cover::m_qr(r, inv.bold_p, inv.bold_q));
    }
    rec.result("q_of_coroot", cover::q_of_coroot(c.form(), c.datum()));
    rec.result("central_index", int_value(&cover::central_index(&c)));
    let (lower, upper) = whittaker::squeeze_bounds(&c);
    rec.result("squeeze_lower", int_value(&lower));
    rec.result("squeeze_upper", int_value(&upper));
    Ok(rec)
}

pub fn cmd_residual(file: &Path, point: &str) -> Result<OutputRecord, CliError> {
    let c = load_cover(file)?;
    let rd = c.datum();
    let x = ApartmentPoint::parse(rd, point)?;
    let mut rec = OutputRecord::new("residual");
    cover_inputs(&mut rec, file, &c);
    rec.input("point", x.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    let res = parahoric::residual_extension(&c, &x);
    let phi: Vec<Value> = res.phi_x.iter().map(|&i| json!(rd.roots()[i])).collect();
    rec.result("phi_x", phi);
    let iota: Vec<Value> = res
        .phi_x
        .iter()
        .zip(&res.iota)
        .map(|(&i, v)| json!({ "coroot": rd.coroots()[i], "iota": v.iter().map(int_value).collect::<Vec<_>>() }))
        .collect();
    rec.result("iota", iota);
    rec.result("hyperspecial", parahoric::is_hyperspecial(rd, &x));
    rec.result("vertex", parahoric::is_vertex(rd, &x));
    rec.result("derived_simply_connected", parahoric::residual_derived_simply_connected(&c, &x));
    rec.result("splits", parahoric::residual_splits(&c, &x));
    Ok(rec)
}

fn glr_inputs(rec: &mut OutputRecord, g: &GlrArgs) {
    rec.input("r", g.r);
    rec.input("q", g.q);
    rec.input("n", g.n);
    rec.input("pp", g.pp);
    rec.input("qq", g.qq);
}

pub fn cmd_whittaker(g: &GlrArgs, a: u64, oracle: bool) -> Result<OutputRecord, CliError> {
    let c = cover::glr_cover(g.r, g.pp, g.qq, g.n, g.q)?;
    let ch = GLrCharacter::new(g.r, g.q, a)?;
    if !ch.is_general_position() {
        return Err(CliError::NotGeneralPosition(format!("a = {a} is fixed by a nontrivial power of Frobenius")));
    }
    let mut rec = OutputRecord::new("whittaker");
    glr_inputs(&mut rec, g);
    rec.input("a", a);
    let m = cover::m_qr(g.r, g.pp, g.qq);
    rec.result("general_position", true);
    rec.result("family", cover::classify_glr_family(g.pp, g.qq).to_string());
    rec.result("m_qr", m);
    rec.result("bound", whittaker::glr_dimension_bound(g.n, m));
    let dim = whittaker::wh_dim_glr_closed(g.r, g.q, g.n, g.pp, g.qq, a)?;
    rec.result("dimension", dim);
    if oracle {
        let brute = whittaker::wh_dim_oracle(g.r, g.q, g.n, g.pp, g.qq, a)?;
        let mut solver = YxRhoSolver::new(&c)?;
        let lattice = whittaker::wh_dim_via_lattice(&mut solver, a)?;
        rec.result("oracle_dimension", brute);
        rec.result("lattice_index", int_value(&lattice));
        rec.result("agree", brute == dim && lattice == BigInt::from(dim));
    }
    Ok(rec)
}

pub fn cmd_table(g: &GlrArgs) -> Result<OutputRecord, CliError> {
    let table = whittaker::enumerate_glr_table(g.r, g.q, g.n, g.pp, g.qq)?;
    let mut rec = OutputRecord::new("table");
    glr_inputs(&mut rec, g);
    rec.result("classes", table.rows.len());
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| json!({ "representative": r.representative, "class_size": r.class_size, "dimension": r.dimension }))
        .collect();
    rec.result("rows", rows);
    let hist: serde_json::Map<String, Value> =
        table.histogram.iter().map(|(d, count)| (d.to_string(), Value::from(*count))).collect();
    rec.result("histogram", hist);
    Ok(rec)
}

pub fn run(cli: &Cli) -> Result<OutputRecord, CliError> {
    match &cli.command {
        Command::Info { file } => cmd_info(file),
        Command::Residual { file, point } => cmd_residual(file, point),
        Command::Whittaker { glr, a, oracle } => cmd_whittaker(glr, *a, *oracle),
        Command::Table { glr } => cmd_table(glr),
    }
}

pub fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => record.to_json(),
        Format::Text => record.to_text(),
    }
}
