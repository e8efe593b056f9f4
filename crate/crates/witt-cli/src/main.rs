//! `witt` — Witt-group invariants, residues, Smith normal forms, and the
//! Gersten–Witt complex of Hirzebruch surfaces, from the command line.
//!
//! Forms, matrices, and complexes are read as JSON from a file argument or
//! stdin (`-`). `--format json` emits the documented machine-readable
//! schemas; the default text mode prints the same numbers as tables.
//!
//! Exit codes: 0 success, 2 invalid input, 3 domain error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::process::ExitCode;
use witt_core::json::{
    complex_from_json, diag_q_to_json, form_from_json, gw_complex_to_json, mat_z_from_json,
    snf_to_json, witt_fp_to_json, witt_q_from_json, witt_q_to_json, AnyForm, JsonFormError,
};
use witt_core::{
    complex_cohomology, decompose_q, diagonalize, gw_complex, integer_lift, lift_residues,
    residue, smith_normal_form, witt_fp_structure, FpStructure, MatF2, MatZ, QDiagonal,
    ResidueIndex, WittFp, WittFpRepr, WittQ,
};
use witt_core::hirzebruch::{DIVISOR_BASIS_LABELS, GENERATOR_LABELS, POINT_LABELS};

#[derive(Parser)]
#[command(name = "witt", version, about = "Witt groups, residues, and toric complexes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Gersten–Witt complex of the Hirzebruch surface H_n.
    Hirzebruch {
        /// Twist parameter; sign is irrelevant (H_n ≅ H_{-n}).
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Witt-class invariants of a nonsingular form over Q.
    ClassifyQ {
        /// Form JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Group structure of W(F_p).
    FpStructure {
        /// An odd prime.
        #[arg(long)]
        p: u64,
    },
    /// Residue of a Q-form at an odd prime.
    Residue {
        /// An odd prime.
        #[arg(long)]
        p: u64,
        /// Parity convention: 1 (first) or 2 (second).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        i: u8,
        /// Form JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Smith normal form D = U·A·V of an integer matrix.
    Snf {
        /// Matrix JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Cohomology of a chain complex over F2.
    ComplexCohomology {
        /// Complex JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Construct a Q-form realizing prescribed Witt invariants.
    Lift {
        /// Target invariants JSON file, or - for stdin.
        #[arg(long)]
        spec: String,
    },
}

enum CliError {
    /// Unreadable or malformed input: exit 2.
    Invalid(String),
    /// Well-formed input outside the mathematical domain: exit 3.
    Domain(String),
}

impl From<witt_core::json::JsonError> for CliError {
    fn from(e: witt_core::json::JsonError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<JsonFormError> for CliError {
    fn from(e: JsonFormError) -> Self {
        match e {
            JsonFormError::Json(j) => CliError::Invalid(j.to_string()),
            JsonFormError::Form(f) => CliError::Domain(f.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // A closed pipe downstream is not our error.
            if let Err(e) = writeln!(std::io::stdout(), "{out}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Hirzebruch { n } => cmd_hirzebruch(*n, cli.format),
        Command::ClassifyQ { file } => cmd_classify_q(file, cli.format),
        Command::FpStructure { p } => cmd_fp_structure(*p, cli.format),
        Command::Residue { p, i, file } => cmd_residue(*p, *i, file, cli.format),
        Command::Snf { file } => cmd_snf(file, cli.format),
        Command::ComplexCohomology { file } => cmd_complex_cohomology(file, cli.format),
        Command::Lift { spec } => cmd_lift(spec, cli.format),
    }
}

fn read_input(path: &str) -> Result<Value, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Invalid(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("bad JSON: {e}")))
}

/// Parse a form over ℚ and diagonalize it, rejecting singular input.
fn read_q_diagonal(path: &str) -> Result<QDiagonal, CliError> {
    match form_from_json(&read_input(path)?)? {
        AnyForm::QDiag(d) => Ok(d),
        AnyForm::QGram(g) => {
            if !g.is_nonsingular() {
                return Err(CliError::Domain("form is singular".into()));
            }
            Ok(diagonalize(&g).0)
        }
        _ => Err(CliError::Invalid("expected a form over Q".into())),
    }
}

fn cmd_hirzebruch(n: i64, format: Format) -> Result<String, CliError> {
    let complex = gw_complex(n).map_err(|e| CliError::Domain(e.to_string()))?;
    let snf_d0 = smith_normal_form(&integer_lift(&complex.d0));
    let snf_d1 = smith_normal_form(&integer_lift(&complex.d1));
    if format == Format::Json {
        let mut v = gw_complex_to_json(&complex);
        v["snf"] = json!({"d0": snf_to_json(&snf_d0), "d1": snf_to_json(&snf_d1)});
        return Ok(v.to_string());
    }
    let parity = if complex.n % 2 == 0 { "even" } else { "odd" };
    let [h0, h1, h2] = complex.cohomology;
    Ok(format!(
        "H_{} ({} case)\n\n\
         d^0: divisor basis x generators\n{}\n\
         d^1: fixed points x divisor basis\n{}\n\
         SNF d^0: {}\nSNF d^1: {}\n\n\
         H^0 = {h0}\nH^1 = {h1}\nH^2 = {h2}",
        complex.n,
        parity,
        bit_table(&DIVISOR_BASIS_LABELS, &GENERATOR_LABELS, &complex.d0),
        bit_table(&POINT_LABELS, &DIVISOR_BASIS_LABELS, &complex.d1),
        diag_text(&snf_d0.d),
        diag_text(&snf_d1.d),
    ))
}

fn cmd_classify_q(file: &str, format: Format) -> Result<String, CliError> {
    let class = decompose_q(&read_q_diagonal(file)?);
    if format == Format::Json {
        return Ok(witt_q_to_json(&class).to_string());
    }
    Ok(witt_q_text(&class))
}

fn cmd_fp_structure(p: u64, format: Format) -> Result<String, CliError> {
    let s = witt_fp_structure(p).map_err(|e| CliError::Invalid(e.to_string()))?;
    let kind = match s {
        FpStructure::KleinFour => "klein",
        FpStructure::Cyclic4 => "cyclic",
    };
    if format == Format::Json {
        return Ok(json!({"p": p, "structure": kind, "order": 4}).to_string());
    }
    Ok(match s {
        FpStructure::KleinFour => format!("W(F_{p}) = Z/2 x Z/2 (Klein four-group)"),
        FpStructure::Cyclic4 => format!("W(F_{p}) = Z/4 (cyclic of order 4)"),
    })
}

fn cmd_residue(p: u64, i: u8, file: &str, format: Format) -> Result<String, CliError> {
    let index = if i == 1 { ResidueIndex::First } else { ResidueIndex::Second };
    let d = read_q_diagonal(file)?;
    let class = residue(&d, p, index).map_err(|e| CliError::Invalid(e.to_string()))?;
    if format == Format::Json {
        return Ok(witt_fp_to_json(&class).to_string());
    }
    Ok(format!("residue at {p} (i = {i}): {}", witt_fp_text(&class)))
}

fn cmd_snf(file: &str, format: Format) -> Result<String, CliError> {
    let a = mat_z_from_json(&read_input(file)?)?;
    let r = smith_normal_form(&a);
    let product = r.u.mul(&a).mul(&r.v);
    if product != r.d {
        return Err(CliError::Domain("verification D = U*A*V failed".into()));
    }
    if format == Format::Json {
        return Ok(snf_to_json(&r).to_string());
    }
    Ok(format!(
        "D = {}\n\nU =\n{}D =\n{}V =\n{}",
        diag_text(&r.d),
        z_table(&r.u),
        z_table(&r.d),
        z_table(&r.v),
    ))
}

fn cmd_complex_cohomology(file: &str, format: Format) -> Result<String, CliError> {
    let c = complex_from_json(&read_input(file)?)?;
    let h = complex_cohomology(&c).map_err(|e| CliError::Domain(e.to_string()))?;
    if format == Format::Json {
        return Ok(json!({ "cohomology": h }).to_string());
    }
    Ok(h.iter()
        .enumerate()
        .map(|(i, d)| format!("H^{i} = {d}"))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn cmd_lift(spec: &str, format: Format) -> Result<String, CliError> {
    let target: WittQ = witt_q_from_json(&read_input(spec)?)?;
    let form = lift_residues(&target);
    if format == Format::Json {
        return Ok(diag_q_to_json(&form).to_string());
    }
    let entries: Vec<String> = form.entries.iter().map(rational_text).collect();
    Ok(format!("diag({})", entries.join(", ")))
}

fn rational_text(r: &witt_core::Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn witt_fp_text(w: &WittFp) -> String {
    match w.repr {
        WittFpRepr::Klein { rank, disc } => format!("klein(rank = {rank}, disc = {disc})"),
        WittFpRepr::Cyclic(k) => format!("cyclic({k})"),
    }
}

fn witt_q_text(w: &WittQ) -> String {
    let mut out = format!("signature = {}\ndyadic = {}\nresidues:", w.signature, w.dyadic);
    if w.residues.is_empty() {
        out.push_str(" (none)");
    }
    for (p, c) in &w.residues {
        out.push_str(&format!("\n  {p}: {}", witt_fp_text(c)));
    }
    out
}

fn diag_text(d: &MatZ) -> String {
    let entries: Vec<String> = d.diagonal().iter().map(|e| e.to_string()).collect();
    format!("diag({})", entries.join(", "))
}

fn bit_table(row_labels: &[&str], col_labels: &[&str], m: &MatF2) -> String {
    let row_w = row_labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut out = format!("{:row_w$}", "");
    for label in col_labels {
        out.push_str(&format!("  {label}"));
    }
    out.push('\n');
    for (i, row_label) in row_labels.iter().enumerate() {
        out.push_str(&format!("{row_label:>row_w$}"));
        for (j, label) in col_labels.iter().enumerate() {
            out.push_str(&format!("  {:>w$}", m.get(i, j), w = label.len()));
        }
        out.push('\n');
    }
    out
}

fn z_table(m: &MatZ) -> String {
    let cells: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect();
    let mut widths = vec![1; m.cols()];
    for row in &cells {
        for (j, s) in row.iter().enumerate() {
            widths[j] = widths[j].max(s.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        out.push(' ');
        for (j, s) in row.iter().enumerate() {
            out.push_str(&format!(" {:>w$}", s, w = widths[j]));
        }
        out.push('\n');
    }
    out
}
