//! Subcommands of the `filiform` tool.
//!
//! Every command returns a [`CommandResult`]; `main` only prints it. JSON
//! goes to standard output, human-readable text to standard error whenever a
//! JSON payload is present (to standard output otherwise).

use std::ffi::OsString;
use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use filiform::deformation::{decompose_z, deform, deform_unchecked, is_infinitesimal, is_integrable, solve_subspace_c};
use filiform::families::{example_poincare, example_so23_adjoint, phi1, phi13, phi3, psi_k, psi_t, closed_basis_c, FamilyName};
use filiform::filiform::{model, order_nilindex};
use filiform::graded::{verify_jacobi, Report};
use filiform::json::{algebra_from_json, algebra_to_json, deformation_from_json, deformation_to_value, Meta};
use filiform::sl2::dim_c_by_weights;
use filiform::{Error, OrderFAlgebra};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub report: String,
    pub json: Option<String>,
}

impl CommandResult {
    fn ok(report: impl Into<String>, json: Option<String>) -> Self {
        Self { status: EXIT_OK, report: report.into(), json }
    }

    fn failed(report: impl Into<String>) -> Self {
        Self { status: EXIT_FAILED, report: report.into(), json: None }
    }

    fn usage(report: impl Into<String>) -> Self {
        Self { status: EXIT_USAGE, report: report.into(), json: None }
    }
}

#[derive(Debug, Parser)]
#[command(name = "filiform", version, about = "Exact computations for filiform Lie algebras of order 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimMethod {
    Weights,
    Kernel,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisSource {
    /// The closed-form list (m = 3, odd n).
    Closed,
    /// Kernel vectors of the linear system.
    Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Poincare,
    So23,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Phi1,
    Phi3,
    Phi13,
    PsiK,
    PsiT,
}

impl From<FamilyArg> for FamilyName {
    fn from(value: FamilyArg) -> Self {
        match value {
            FamilyArg::Phi1 => FamilyName::Phi1,
            FamilyArg::Phi3 => FamilyName::Phi3,
            FamilyArg::Phi13 => FamilyName::Phi13,
            FamilyArg::PsiK => FamilyName::PsiK,
            FamilyArg::PsiT => FamilyName::PsiT,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the model algebra.
    Model {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
    },
    /// Check every identity of an algebra file (`-` reads standard input).
    Verify { path: String },
    /// Print the order-nilindex of an algebra file.
    Nilindex { path: String },
    /// Dimension of the cubic part of the cocycle space.
    DimC {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = DimMethod::Both)]
        method: DimMethod,
    },
    /// Emit a basis of the cubic part of the cocycle space.
    BasisC {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Defaults to `closed` when available.
        #[arg(long, value_enum)]
        source: Option<BasisSource>,
    },
    /// Emit a named deformation.
    Family {
        #[arg(long, value_enum)]
        name: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Defaults to 3.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        param: usize,
    },
    /// Emit an example algebra.
    Example {
        #[arg(long, value_enum)]
        name: ExampleName,
        /// Space-time dimension for the Poincaré example.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Add a deformation file to the model and emit the result.
    Deform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Deformation file (`-` reads standard input).
        #[arg(long)]
        psi: String,
        /// Emit the sum even if the checks fail.
        #[arg(long)]
        force: bool,
    },
    /// Compare the split and the full cocycle systems.
    DecomposeZ {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            CommandResult { status, report: e.render().to_string(), json: None }
        }
    }
}

pub fn run(command: Command) -> CommandResult {
    match command {
        Command::Model { n, m, p } => cmd_model(n, m, p),
        Command::Verify { path } => cmd_verify(&path),
        Command::Nilindex { path } => cmd_nilindex(&path),
        Command::DimC { n, m, method } => cmd_dim_c(n, m, method),
        Command::BasisC { n, m, source } => cmd_basis_c(n, m, source),
        Command::Family { name, n, m, param } => cmd_family(name.into(), n, m.unwrap_or(3), param),
        Command::Example { name, dim } => cmd_example(name, dim),
        Command::Deform { n, m, psi, force } => cmd_deform(n, m, &psi, force),
        Command::DecomposeZ { n, m } => cmd_decompose_z(n, m),
    }
}

fn positive(pairs: &[(&str, usize)]) -> Option<CommandResult> {
    pairs
        .iter()
        .find(|(_, v)| *v == 0)
        .map(|(name, _)| CommandResult::usage(format!("error: --{name} must be at least 1")))
}

fn read_input(path: &str) -> Result<String, CommandResult> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        fs::read_to_string(path)
    };
    text.map_err(|e| CommandResult::usage(format!("error: cannot read {path}: {e}")))
}

fn load_algebra(path: &str) -> Result<OrderFAlgebra, CommandResult> {
    let text = read_input(path)?;
    algebra_from_json(&text)
        .map(|(alg, _)| alg)
        .map_err(|e| CommandResult::usage(format!("error: {path}: {e}")))
}

fn describe(report: &Report) -> String {
    if report.is_ok() {
        return format!("ok: all {} identity tuples hold", report.checked);
    }
    let mut lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    lines.push(format!("{} violations in {} checked tuples", report.violations.len(), report.checked));
    lines.join("\n")
}

pub fn cmd_model(n: usize, m: usize, p: usize) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m)]) {
        return err;
    }
    match model(n, m, p) {
        Ok(alg) => CommandResult::ok(format!("model n={n} m={m} p={p}"), Some(algebra_to_json(&alg, &Meta::new()))),
        Err(e) => CommandResult::usage(format!("error: {e}")),
    }
}

pub fn cmd_verify(path: &str) -> CommandResult {
    let alg = match load_algebra(path) {
        Ok(alg) => alg,
        Err(e) => return e,
    };
    let report = verify_jacobi(&alg);
    let text = describe(&report);
    if report.is_ok() {
        CommandResult::ok(text, None)
    } else {
        CommandResult::failed(text)
    }
}

pub fn cmd_nilindex(path: &str) -> CommandResult {
    let alg = match load_algebra(path) {
        Ok(alg) => alg,
        Err(e) => return e,
    };
    match order_nilindex(&alg) {
        Ok(nil) => CommandResult::ok(nil.to_string(), None),
        Err(e @ Error::NotNilpotent { .. }) => CommandResult::failed(format!("{e}")),
        Err(e) => CommandResult::usage(format!("error: {e}")),
    }
}

pub fn cmd_dim_c(n: usize, m: usize, method: DimMethod) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m)]) {
        return err;
    }
    let weights = || dim_c_by_weights(n, m).expect("sizes validated");
    let kernel = || solve_subspace_c(n, m).expect("sizes validated").len();
    match method {
        DimMethod::Weights => CommandResult::ok(weights().to_string(), None),
        DimMethod::Kernel => CommandResult::ok(kernel().to_string(), None),
        DimMethod::Both => {
            let (w, k) = (weights(), kernel());
            let text = format!("weights={w} kernel={k}");
            if w == k {
                CommandResult::ok(text, None)
            } else {
                CommandResult::failed(format!("{text}\nmismatch between the two methods"))
            }
        }
    }
}

pub fn cmd_basis_c(n: usize, m: usize, source: Option<BasisSource>) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m)]) {
        return err;
    }
    let closed_available = m == 3 && n % 2 == 1;
    let source = source.unwrap_or(if closed_available { BasisSource::Closed } else { BasisSource::Kernel });
    let elements: Vec<serde_json::Value> = match source {
        BasisSource::Closed if !closed_available => {
            return CommandResult::usage("error: the closed-form basis needs m = 3 and odd n");
        }
        BasisSource::Closed => closed_basis_c(n)
            .expect("odd n")
            .into_iter()
            .map(|b| json!({"name": b.label(), "deformation": deformation_to_value(&b.deformation, &Meta::new())}))
            .collect(),
        BasisSource::Kernel => solve_subspace_c(n, m)
            .expect("sizes validated")
            .deformations()
            .iter()
            .enumerate()
            .map(|(i, psi)| json!({"name": format!("kernel[{i}]"), "deformation": deformation_to_value(psi, &Meta::new())}))
            .collect(),
    };
    let source_name = match source {
        BasisSource::Closed => "closed",
        BasisSource::Kernel => "kernel",
    };
    let count = elements.len();
    let doc = json!({"n": n, "m": m, "source": source_name, "basis": elements});
    CommandResult::ok(
        format!("{count} basis elements ({source_name})"),
        Some(serde_json::to_string_pretty(&doc).expect("plain data")),
    )
}

pub fn cmd_family(name: FamilyName, n: usize, m: usize, param: usize) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m), ("param", param)]) {
        return err;
    }
    let built = match name {
        FamilyName::Phi1 | FamilyName::Phi3 | FamilyName::Phi13 if m != 3 => {
            return CommandResult::usage(format!("error: {name} is defined for m = 3 only"));
        }
        FamilyName::Phi1 => phi1(n, param),
        FamilyName::Phi3 => phi3(n, param),
        FamilyName::Phi13 => phi13(n, param),
        FamilyName::PsiK => psi_k(n, m, param),
        FamilyName::PsiT => psi_t(n, m, param),
    };
    match built {
        Ok(named) => {
            let mut meta = Meta::new();
            meta.insert("name".into(), named.label());
            let text = serde_json::to_string_pretty(&deformation_to_value(&named.deformation, &meta)).expect("plain data");
            CommandResult::ok(named.label(), Some(text))
        }
        Err(e) => CommandResult::usage(format!("error: {e}")),
    }
}

pub fn cmd_example(name: ExampleName, dim: Option<usize>) -> CommandResult {
    let mut meta = Meta::new();
    let alg = match name {
        ExampleName::Poincare => {
            let d = dim.unwrap_or(4);
            match example_poincare(d) {
                Ok(alg) => {
                    meta.insert(
                        "basis".into(),
                        format!(
                            "grade 0: L_(mu,nu) for mu<nu in lexicographic order at positions 0..{}, then P_mu; grade 1: V_mu at position mu+1; metric diag(1,-1,...,-1)",
                            d * (d - 1) / 2 - 1
                        ),
                    );
                    alg
                }
                Err(e) => return CommandResult::usage(format!("error: {e}")),
            }
        }
        ExampleName::So23 => {
            if dim.is_some() {
                return CommandResult::usage("error: --dim applies to the poincare example only");
            }
            meta.insert(
                "basis".into(),
                "grade 0: J_ab = g_b E_ab - g_a E_ba for a<b in lexicographic order, g = diag(1,1,-1,-1,-1); grade 1: A_a = ad(J_a)".into(),
            );
            meta.insert("trace".into(), "Killing form Tr(ad J_a ad J_b)".into());
            example_so23_adjoint()
        }
    };
    CommandResult::ok(format!("{name:?} example"), Some(algebra_to_json(&alg, &meta)))
}

pub fn cmd_deform(n: usize, m: usize, psi_path: &str, force: bool) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m)]) {
        return err;
    }
    let text = match read_input(psi_path) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let psi = match deformation_from_json(&text) {
        Ok((psi, _)) => psi,
        Err(e) => return CommandResult::usage(format!("error: {psi_path}: {e}")),
    };
    if (psi.n(), psi.m()) != (n, m) {
        return CommandResult::usage(format!(
            "error: deformation has n={}, m={} but the model has n={n}, m={m}",
            psi.n(),
            psi.m()
        ));
    }
    let mu0 = model(n, m, 0).expect("sizes validated");
    match deform(&mu0, &psi) {
        Ok(alg) => CommandResult::ok("deformation accepted", Some(algebra_to_json(&alg, &Meta::new()))),
        Err(e @ (Error::NotInfinitesimal(_) | Error::NotIntegrable(_))) if force => {
            let alg = deform_unchecked(&mu0, &psi).expect("sizes validated");
            let mut meta = Meta::new();
            meta.insert("warning".into(), format!("forced: {e}; the result is not a Lie algebra of order 3"));
            CommandResult::ok(format!("WARNING: {e}"), Some(algebra_to_json(&alg, &meta)))
        }
        Err(e @ (Error::NotInfinitesimal(_) | Error::NotIntegrable(_))) => {
            let mut lines = vec![format!("refused: {e}")];
            let cocycle = is_infinitesimal(&mu0, &psi).expect("sizes validated");
            let integrable = is_integrable(&psi);
            lines.push(format!(
                "cocycle violations: {}, integrability violations: {}",
                cocycle.violations.len(),
                integrable.violations.len()
            ));
            CommandResult::failed(lines.join("\n"))
        }
        Err(e) => CommandResult::usage(format!("error: {e}")),
    }
}

pub fn cmd_decompose_z(n: usize, m: usize) -> CommandResult {
    if let Some(err) = positive(&[("n", n), ("m", m)]) {
        return err;
    }
    let z = decompose_z(n, m).expect("sizes validated");
    let doc = json!({
        "n": n,
        "m": m,
        "dim_a": z.a.len(),
        "dim_b": z.b.len(),
        "dim_c": z.c.len(),
        "full_kernel_dim": z.full_dimension,
        "direct_sum": z.is_direct_sum(),
    });
    let text = format!(
        "A={} B={} C={} full={}",
        z.a.len(),
        z.b.len(),
        z.c.len(),
        z.full_dimension
    );
    let json = Some(serde_json::to_string_pretty(&doc).expect("plain data"));
    if z.is_direct_sum() {
        CommandResult { status: EXIT_OK, report: text, json }
    } else {
        CommandResult { status: EXIT_FAILED, report: format!("{text}\nsum of parts differs from the full kernel"), json }
    }
}
