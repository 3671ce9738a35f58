//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O or parse error,
//! 3 numeric overflow. Every JSON document written to stdout has sorted
//! keys, so identical inputs give byte-identical output.

pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::category::ObjectExpr;
use crate::circuit::{
    bitstring, elaborate, k0_of_circuit, k0_layer_product, parse_bitstring, register_category,
    Circuit, Diagnostic,
};
use crate::functor::{apply_to_morphism, apply_to_object};
use crate::linalg::Tolerance;
use crate::topo::{bulk_report, run_script};
use crate::SemisimpleCategory;

use self::format::{
    cat_diagnostic, to_canonical_json, CircuitFile, MorphismFile, ScriptFile, StateFile,
};

#[derive(Debug, Parser)]
#[command(name = "catcomp", version, about = "Categorical circuits over categorical bits")]
pub struct Cli {
    /// Emit diagnostics and reports as JSON
    #[arg(long, global = true)]
    pub json: bool,

    /// Magnitudes at or below this are printed as zero in morphism output
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    pub eps: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a circuit file
    Validate { path: PathBuf },
    /// Run a circuit on an object and optionally a morphism
    #[command(group(ArgGroup::new("input").required(true).multiple(true).args(["object", "basis", "morphism"])))]
    Run {
        path: PathBuf,
        /// Multiplicity vector over the 2^n register simples, e.g. [1,0,0,2]
        #[arg(long, conflicts_with = "basis")]
        object: Option<String>,
        /// Basis object given by its wire bits, wire 0 first, e.g. 01
        #[arg(long)]
        basis: Option<String>,
        /// Morphism file to transport through the circuit
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
    /// Print the K_0 matrix of a circuit
    K0 { path: PathBuf },
    /// Report on Fun(vect^n, vect^n)
    Funcat { n: u64 },
    /// Fuse a defect script onto a boundary state
    Fuse { state: PathBuf, script: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Success = 0,
    Validation = 1,
    Io = 2,
    Overflow = 3,
}

impl ExitKind {
    fn of(diag: &Diagnostic) -> Self {
        match diag.code.as_str() {
            "io" | "parse" => ExitKind::Io,
            "overflow" => ExitKind::Overflow,
            _ => ExitKind::Validation,
        }
    }
}

/// What a command produced; the binary writes the streams and exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(Vec<Diagnostic>);

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure(vec![d])
    }
}

type CmdResult = Result<String, Failure>;

pub fn execute(cli: &Cli) -> Output {
    let result = match Tolerance::new(cli.eps) {
        Err(e) => Err(Failure::from(Diagnostic::new("invalid", e.to_string(), "--eps"))),
        Ok(tol) => match &cli.command {
            Command::Validate { path } => cmd_validate(path, cli.json),
            Command::Run {
                path,
                object,
                basis,
                morphism,
            } => cmd_run(path, object.as_deref(), basis.as_deref(), morphism.as_deref(), tol),
            Command::K0 { path } => cmd_k0(path),
            Command::Funcat { n } => cmd_funcat(*n, cli.json),
            Command::Fuse { state, script } => cmd_fuse(state, script),
        },
    };
    match result {
        Ok(stdout) => Output {
            exit: ExitKind::Success as i32,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(diags)) => {
            // the first diagnostic is primary and decides the exit code
            let exit = diags.first().map_or(ExitKind::Validation, ExitKind::of) as i32;
            let stderr = if cli.json {
                let mut s = to_canonical_json(&json!({ "valid": false, "diagnostics": diags }));
                s.push('\n');
                s
            } else {
                diags
                    .iter()
                    .map(|d| format!("error[{}] {}: {}\n", d.code, d.location, d.message))
                    .collect()
            };
            Output {
                exit,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Diagnostic::new("io", format!("cannot read {}: {e}", path.display()), "$")
    })?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::from(Diagnostic::new(
            "parse",
            format!("{}: {e}", path.display()),
            format!("$ (line {}, column {})", e.line(), e.column()),
        ))
    })
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let file: CircuitFile = read_json(path)?;
    file.to_circuit().map_err(Failure)
}

fn line<T: Serialize>(value: &T) -> String {
    let mut s = to_canonical_json(value);
    s.push('\n');
    s
}

fn cmd_validate(path: &Path, as_json: bool) -> CmdResult {
    let c = load_circuit(path)?;
    if as_json {
        Ok(line(&json!({
            "valid": true,
            "catbits": c.n_catbits(),
            "gates": c.gates().len(),
            "layers": c.layers().len(),
        })))
    } else {
        Ok(format!(
            "ok: {} categorical bits, {} gates, {} layers\n",
            c.n_catbits(),
            c.gates().len(),
            c.layers().len()
        ))
    }
}

fn parse_object(
    register: &SemisimpleCategory,
    n: usize,
    object: Option<&str>,
    basis: Option<&str>,
) -> Result<Option<ObjectExpr>, Failure> {
    if let Some(text) = object {
        let mult: Vec<u64> = serde_json::from_str(text).map_err(|e| {
            Diagnostic::new("parse", format!("--object is not a JSON array of non-negative integers: {e}"), "--object")
        })?;
        return ObjectExpr::new(register, mult)
            .map(Some)
            .map_err(|e| cat_diagnostic(&e, "--object").into());
    }
    if let Some(bits) = basis {
        if bits.len() != n {
            return Err(Diagnostic::new(
                "shape",
                format!("--basis needs {n} bits, got {:?}", bits),
                "--basis",
            )
            .into());
        }
        let x = parse_bitstring(bits).ok_or_else(|| {
            Diagnostic::new("parse", format!("--basis {bits:?} is not a bitstring"), "--basis")
        })?;
        return ObjectExpr::simple(register, x)
            .map(Some)
            .map_err(|e| cat_diagnostic(&e, "--basis").into());
    }
    Ok(None)
}

fn cmd_run(
    path: &Path,
    object: Option<&str>,
    basis: Option<&str>,
    morphism: Option<&Path>,
    tol: Tolerance,
) -> CmdResult {
    let c = load_circuit(path)?;
    let n = c.n_catbits();
    let register = register_category(n).map_err(|e| cat_diagnostic(&e, "$.catbits"))?;
    let input = parse_object(&register, n, object, basis)?;
    let functor = elaborate(&c).map_err(circuit_failure)?;

    let mut out = serde_json::Map::new();
    if let Some(a) = input {
        let image = apply_to_object(&functor, &a).map_err(|e| cat_diagnostic(&e, "--object"))?;
        out.insert("object".into(), json!(image.mult()));
        if let Some(x) = single_simple(&image) {
            out.insert("basis".into(), json!(bitstring(x, n)));
        }
    }
    if let Some(mpath) = morphism {
        let raw: MorphismFile = read_json(mpath)?;
        let f = raw.to_morphism(&register)?;
        let image = apply_to_morphism(&functor, &f).map_err(|e| cat_diagnostic(&e, "$"))?;
        out.insert(
            "morphism".into(),
            serde_json::to_value(MorphismFile::from_morphism(&image, tol.eps()))
                .expect("serializable morphism"),
        );
    }
    Ok(line(&out))
}

/// Index of the simple when `a` is exactly one simple object.
fn single_simple(a: &ObjectExpr) -> Option<usize> {
    let mut hits = a.mult().iter().enumerate().filter(|(_, &m)| m != 0);
    match (hits.next(), hits.next()) {
        (Some((i, 1)), None) => Some(i),
        _ => None,
    }
}

fn circuit_failure(e: crate::circuit::CircuitError) -> Failure {
    match e {
        crate::circuit::CircuitError::Invalid(d) => Failure(d),
        crate::circuit::CircuitError::Cat(e) => Failure::from(cat_diagnostic(&e, "$")),
    }
}

fn cmd_k0(path: &Path) -> CmdResult {
    let c = load_circuit(path)?;
    let k = k0_of_circuit(&c).map_err(circuit_failure)?;
    debug_assert_eq!(Some(&k), k0_layer_product(&c).ok().as_ref());
    Ok(line(&k.to_rows()))
}

fn cmd_funcat(n: u64, as_json: bool) -> CmdResult {
    let n = usize::try_from(n)
        .ok()
        .filter(|n| n.checked_mul(*n).is_some())
        .ok_or_else(|| Diagnostic::new("overflow", "n is too large", "n"))?;
    let x = SemisimpleCategory::vect(n);
    let report = bulk_report(&x);
    if as_json {
        return Ok(line(&report));
    }
    let verdict = if report.stability.degenerate {
        "degenerate (unstable)"
    } else if report.stable {
        "stable (fusion)"
    } else {
        "unstable (multi-fusion)"
    };
    let mut s = format!(
        "Fun(vect^{n}, vect^{n}): {} simples\nEnd(id) dimension: {}\nverdict: {verdict}\n",
        report.bulk_simples, report.end_identity_dim
    );
    if let Some(c) = &report.caveat {
        s.push_str(&format!("caveat: {c}\n"));
    }
    Ok(s)
}

fn cmd_fuse(state_path: &Path, script_path: &Path) -> CmdResult {
    let state_file: StateFile = read_json(state_path)?;
    let script_file: ScriptFile = read_json(script_path)?;
    let state = state_file.to_state()?;
    let script = script_file.to_script(state.category().simple_count())?;
    let end = run_script(&script, &state).map_err(|e| cat_diagnostic(&e, "$.defects"))?;
    Ok(line(&StateFile::from_state(&end)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_simple_detection() {
        let x = SemisimpleCategory::vect(3);
        assert_eq!(single_simple(&ObjectExpr::new(&x, vec![0, 1, 0]).unwrap()), Some(1));
        assert_eq!(single_simple(&ObjectExpr::new(&x, vec![0, 2, 0]).unwrap()), None);
        assert_eq!(single_simple(&ObjectExpr::new(&x, vec![1, 1, 0]).unwrap()), None);
        assert_eq!(single_simple(&ObjectExpr::zero(&x)), None);
    }

    #[test]
    fn funcat_text_report() {
        let out = cmd_funcat(2, false).ok().unwrap();
        assert!(out.contains("4 simples"));
        assert!(out.contains("End(id) dimension: 2"));
        assert!(out.contains("unstable"));
        let out = cmd_funcat(1, false).ok().unwrap();
        assert!(out.contains("stable (fusion)"));
        assert!(!out.contains("caveat"));
        let out = cmd_funcat(0, false).ok().unwrap();
        assert!(out.contains("degenerate"));
    }

    #[test]
    fn exit_kinds() {
        assert_eq!(ExitKind::of(&Diagnostic::new("parse", "", "$")), ExitKind::Io);
        assert_eq!(ExitKind::of(&Diagnostic::new("overflow", "", "$")), ExitKind::Overflow);
        assert_eq!(ExitKind::of(&Diagnostic::new("wire-clash", "", "$")), ExitKind::Validation);
    }
}
