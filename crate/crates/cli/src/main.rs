//! `seminorm`: seminormality and weak-normality computations for
//! monomial ideals, numerical semigroups, affine monoids, plane curve
//! germs, and element-level certificates.
//!
//! Input is a single JSON document (via `--input` or stdin); the
//! subcommand selects the operation. Reports are printed as JSON by
//! default, with exit code 0 for ok, 2 for an inconclusive
//! (bound-exhausted) answer, and 1 for errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use seminorm_cli::execute::{execute, Report};
use seminorm_cli::request::{parse_input, Request};

#[derive(Parser)]
#[command(name = "seminorm", version, about = "seminormality computations for monomial objects")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Input document (JSON); defaults to stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Field characteristic: 0 or a prime. Overrides the document.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Search box, comma separated, e.g. 8,8.
    #[arg(long = "box", global = true, value_delimiter = ',')]
    search_box: Option<Vec<i64>>,
    /// Frobenius exponent bound for characteristic-p closures.
    #[arg(long = "m-max", global = true)]
    m_max: Option<u32>,
    /// Chain length for the Ratliff-Rush approximation.
    #[arg(long, global = true)]
    horizon: Option<u64>,
    /// Certificate search bound.
    #[arg(long = "q-max", global = true)]
    q_max: Option<u32>,
    /// Curve base point a,b (translated to the origin).
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    point: Option<Vec<i64>>,
    /// JSON report output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Plain-text report output.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
}

#[derive(Subcommand)]
enum Group {
    /// Monomial ideal computations.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Numerical semigroup computations.
    Semigroup {
        #[command(subcommand)]
        op: SemigroupOp,
    },
    /// Affine monoid computations.
    Monoid {
        #[command(subcommand)]
        op: MonoidOp,
    },
    /// Plane curve germs at the origin.
    Curve {
        #[command(subcommand)]
        op: CurveOp,
    },
    /// Element-level certificates.
    Element {
        #[command(subcommand)]
        op: ElementOp,
    },
}

#[derive(Subcommand)]
enum IdealOp {
    /// Integral closure via the Newton polyhedron.
    IntegralClosure,
    /// Weak subintegral closure (face groups in characteristic 0,
    /// Frobenius powers in characteristic p).
    WeakClosure,
    /// Rees valuations from the positive-offset facets.
    Rees,
    /// Asymptotic Samuel value of an exponent.
    Samuel,
    /// The ideal of exponents with Samuel value above one.
    IGreater,
    /// Ratliff-Rush approximation up to a horizon.
    RatliffRush,
}

#[derive(Subcommand)]
enum SemigroupOp {
    /// Seminormalization of a gcd-one semigroup inside N.
    Seminormalize,
    /// Relative weak normalization inside an ambient semigroup.
    WeakNormalize,
    /// Relative seminormalization inside an ambient semigroup.
    Relative,
}

#[derive(Subcommand)]
enum MonoidOp {
    /// Exact membership of a lattice point.
    Member,
    /// Box-bounded seminormality check with witnesses.
    Seminormal,
}

#[derive(Subcommand)]
enum CurveOp {
    /// Multiplicity, tangent cone, and the ordinary-point verdict.
    Check,
}

#[derive(Subcommand)]
enum ElementOp {
    /// Verify a system of subintegrality on its finite window.
    VerifySosi,
    /// Verify structured equations over an algebra or a monomial ideal.
    VerifyWsi,
    /// Build the monic characteristic polynomial of a certificate, or
    /// search one from high powers over an ideal.
    #[command(name = "derive-F")]
    DeriveF,
    /// Check that an element is a root of a monic polynomial and its
    /// first half derivatives.
    DerivativeCheck,
    /// Extract the square-cube root, or exhibit the escaping witness.
    Swan,
    /// Build the rank-one projection matrix of an element.
    Schanuel,
}

impl Cli {
    fn command_path(&self) -> String {
        match &self.group {
            Group::Ideal { op } => format!(
                "ideal/{}",
                match op {
                    IdealOp::IntegralClosure => "integral-closure",
                    IdealOp::WeakClosure => "weak-closure",
                    IdealOp::Rees => "rees",
                    IdealOp::Samuel => "samuel",
                    IdealOp::IGreater => "i-greater",
                    IdealOp::RatliffRush => "ratliff-rush",
                }
            ),
            Group::Semigroup { op } => format!(
                "semigroup/{}",
                match op {
                    SemigroupOp::Seminormalize => "seminormalize",
                    SemigroupOp::WeakNormalize => "weak-normalize",
                    SemigroupOp::Relative => "relative",
                }
            ),
            Group::Monoid { op } => format!(
                "monoid/{}",
                match op {
                    MonoidOp::Member => "member",
                    MonoidOp::Seminormal => "seminormal",
                }
            ),
            Group::Curve { op } => format!(
                "curve/{}",
                match op {
                    CurveOp::Check => "check",
                }
            ),
            Group::Element { op } => format!(
                "element/{}",
                match op {
                    ElementOp::VerifySosi => "verify-sosi",
                    ElementOp::VerifyWsi => "verify-wsi",
                    ElementOp::DeriveF => "derive-F",
                    ElementOp::DerivativeCheck => "derivative-check",
                    ElementOp::Swan => "swan",
                    ElementOp::Schanuel => "schanuel",
                }
            ),
        }
    }

    /// Fold command-line flags into the raw document; flags win.
    fn apply_overrides(&self, doc: &mut Value) {
        let Value::Object(map) = doc else { return };
        if let Some(c) = self.characteristic {
            map.insert("char".into(), c.into());
        }
        let options = map
            .entry("options")
            .or_insert_with(|| Value::Object(Default::default()));
        let Value::Object(options) = options else { return };
        if let Some(b) = &self.search_box {
            options.insert("box".into(), b.clone().into());
        }
        if let Some(m) = self.m_max {
            options.insert("m_max".into(), m.into());
        }
        if let Some(h) = self.horizon {
            options.insert("horizon".into(), h.into());
        }
        if let Some(q) = self.q_max {
            options.insert("q_max".into(), q.into());
        }
        if let Some(p) = &self.point {
            options.insert("point".into(), p.clone().into());
        }
        if options.is_empty() {
            map.remove("options");
        }
    }
}

fn read_document(cli: &Cli) -> std::io::Result<String> {
    match &cli.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn skeleton(command: &str) -> Request {
    serde_json::from_value(serde_json::json!({
        "command": command,
        "kind": command.split('/').next().unwrap_or(""),
    }))
    .expect("skeleton request")
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!(
        "status: {}\n",
        serde_json::to_value(report.status)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    ));
    for e in &report.errors {
        out.push_str(&format!("error: {e}\n"));
    }
    if let Some(Value::Object(result)) = &report.result {
        for (k, v) in result {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    for (k, v) in &report.flags {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command_path();
    let report = match read_document(&cli) {
        Ok(text) => {
            let patched = match serde_json::from_str::<Value>(&text) {
                Ok(mut doc) => {
                    cli.apply_overrides(&mut doc);
                    doc.to_string()
                }
                Err(_) => text, // let parse_input report the JSON error
            };
            match parse_input(&patched, Some(&command)) {
                Ok(req) => execute(&req),
                Err(errors) => Report::error(skeleton(&command), errors),
            }
        }
        Err(e) => Report::error(skeleton(&command), vec![format!("cannot read input: {e}")]),
    };
    if cli.text {
        print!("{}", render_text(&report));
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    }
    ExitCode::from(report.exit_code() as u8)
}
