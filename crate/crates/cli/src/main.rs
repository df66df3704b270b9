//! `babel`: JSON front end for babel-core.
//!
//! Every data argument is JSON text, `@path` for a file, or `-` for standard
//! input. Output is JSON; `--json` prints it on one line.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "babel", version, about = "Exact arithmetic for Babel apartments and SL2 over 2-dimensional local fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Residue characteristic of the finite field.
    #[arg(long, global = true, default_value_t = 5)]
    pub q: u32,
    /// Precision `P1,P2`: coefficients per level and number of levels.
    #[arg(long, global = true, env = "BABEL_PRECISION", default_value = "12,6")]
    pub prec: String,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Sample count override for suites and sampled checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value = "A1")]
    pub phi: String,
    /// Level of the apartment.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Ordered ring ℚ[ω₂..ω_n].
    Lex {
        #[command(subcommand)]
        op: LexOp,
    },
    /// Level-n affine Weyl groups.
    Weyl {
        #[command(subcommand)]
        op: WeylOp,
    },
    /// Babel apartments.
    Apartment {
        #[command(subcommand)]
        op: ApartmentOp,
    },
    /// The field F_q((t1))((t2)).
    Field {
        #[command(subcommand)]
        op: FieldOp,
    },
    /// SL2 decompositions and their geometry.
    Sl2 {
        #[command(subcommand)]
        op: Sl2Op,
    },
    /// SVG pictures.
    Render {
        #[command(subcommand)]
        op: RenderOp,
    },
    /// Seeded property suites.
    Suite {
        #[command(subcommand)]
        op: SuiteOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum LexOp {
    /// Compare two values (LinLex or LexPoly).
    Cmp { a: String, b: String },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    /// Sign of √a + √b − √c for LexPoly radicands.
    Sqrtcmp { a: String, b: String, c: String },
}

#[derive(Subcommand, Debug)]
pub enum WeylOp {
    /// Normal form of a word such as "s w1 w2 s".
    Nf {
        #[arg(long)]
        word: String,
    },
    /// The defining relations of W_2(A1).
    Relations,
    /// Image of a point under a word.
    Act {
        #[arg(long)]
        word: String,
        point: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ApartmentOp {
    /// Chamber element and alcove representative of a point.
    Locate { point: String },
    Dist { p: String, q: String },
    /// Retraction centred at the chamber of a word.
    Retract {
        #[arg(long, default_value = "e")]
        chamber: String,
        point: String,
    },
    /// Is `z` in the enclosure of the points `omega`.
    Enclosure { omega: String, z: String },
    /// Is `z` in the i-level sector at `apex`.
    Sector {
        #[arg(long)]
        level: usize,
        apex: String,
        z: String,
    },
    Circumcenter { points: String },
}

#[derive(Subcommand, Debug)]
pub enum FieldOp {
    Val { x: String },
    Inv { x: String },
    /// Image in F_q((t1)) of an element of the discrete valuation ring.
    Residue { x: String },
    /// Membership in the rank-2 and the discrete valuation rings.
    Member { x: String },
}

#[derive(Subcommand, Debug)]
pub enum Sl2Op {
    Bruhat { g: String },
    Cartan { g: String },
    Kapranov {
        #[arg(long, default_value = "0,1")]
        pair: String,
        g: String,
    },
    /// Bruhat cell label and its apartment point.
    Cell { g: String },
    /// Sampled products of two copies of C(w2).
    Cellprod,
    /// Building distance between g·o and h·o.
    Dist { g: String, h: String },
    /// Retraction onto the standard apartment; with `h`, checks that it shortens.
    Rho { g: String, h: Option<String> },
    Residue { g: String },
    /// Sampled fixer product check; valuations as [[j,i],...] (default: the worked instance).
    Fixer { points: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum RenderOp {
    Apartment {
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Enclosure shading in Σ(2, A2); points default to the worked parallelogram.
    Enclosure {
        #[arg(long)]
        out: std::path::PathBuf,
        omega: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteOp {
    Run {
        name: String,
        /// Include wall-clock timings (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let compact = cli.global.json;
    let (value, code) = match commands::run(&cli) {
        Ok(Outcome { value, ok }) => (value, if ok { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            (serde_json::json!({"error": e.to_string()}), e.code())
        }
    };
    let text = if compact { serde_json::to_string(&value) } else { serde_json::to_string_pretty(&value) };
    println!("{}", text.expect("JSON values serialize"));
    ExitCode::from(code)
}
