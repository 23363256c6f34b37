// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Every command prints one JSON report (schema 1)
//! and maps its outcome to an exit code: 0 when all asserted properties
//! hold, 1 when a violation is found, 2 on invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::autotopism::{
    admissible_indices, ansatz_exhaustive_oracle, construct_antidiagonal, construct_diagonal,
    enumerate_group_with, family_size, structure_report, verify_autotopism, GroupInventory,
    VerifyPolicy,
};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::linmap::Form;
use crate::nuclei::{solve_nucleus, Side};
use crate::par::{self, Exec};
use crate::semifield::{
    check_s3, gk_multiply_variant, GkParams, GroupCase, ParamsConfig, Presemifield, S3Policy,
    SpreadSet,
};

pub const SCHEMA: u32 = 1;

/// Overrides the directory of relative `--out` paths.
pub const OUT_DIR_ENV: &str = "GKSF_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "gksf", version, about = "Commutative presemifields, nuclei and autotopism groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Run on the sequential code path.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Seed for every sampling policy.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ParamsArgs {
    /// Named parameter set, e.g. gk-3-6-2.
    #[arg(long, conflicts_with_all = ["params", "p", "m", "k", "a", "b"])]
    pub fixture: Option<String>,
    /// JSON parameter file as written by `export`.
    #[arg(long, conflicts_with_all = ["p", "m", "k", "a", "b"])]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// `auto` or `g^n` [default: auto].
    #[arg(long = "A")]
    pub a: Option<String>,
    /// `g^n` [default: g^1].
    #[arg(long = "B")]
    pub b: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Full,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Diagonal,
    Antidiagonal,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Diagonal => Form::Diagonal,
            FormArg::Antidiagonal => Form::Antidiagonal,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate parameters and print the derived constants.
    Validate(ParamsArgs),
    /// Presemifield axioms: S3 on the spread set, commutativity, and the
    /// alternative second coordinate for comparison.
    Check {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        s3: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Middle and right nuclei by linear algebra.
    Nuclei(ParamsArgs),
    /// Autotopism group.
    Aut {
        #[command(subcommand)]
        command: AutCommand,
    },
    /// Write the spread-set basis as JSON.
    Export(ParamsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InventoryArgs {
    #[command(flatten)]
    pub params: ParamsArgs,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub verify: Mode,
    #[arg(long, default_value_t = 10_000)]
    pub per_family: usize,
}

#[derive(Debug, Subcommand)]
pub enum AutCommand {
    /// Enumerate every admissible family and verify per policy.
    Enumerate {
        #[command(flatten)]
        inv: InventoryArgs,
        /// Also write the inventory as JSON lines.
        #[arg(long)]
        jsonl: Option<PathBuf>,
        /// Include both matrices in each JSON line.
        #[arg(long)]
        matrices: bool,
    },
    /// Construct one element and verify it against the spread set.
    Verify {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum)]
        form: FormArg,
        /// `d_2` or `c_2` as `g^n`.
        #[arg(long, default_value = "g^0")]
        free: String,
        #[arg(long, default_value = "g^0")]
        gamma: String,
        #[arg(long, default_value = "g^0")]
        epsilon: String,
        /// Root `α`; defaults to the first admissible one.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Group structure of the enumerated inventory.
    Structure {
        #[command(flatten)]
        inv: InventoryArgs,
    },
    /// Exhaustive monomial search for one index and form.
    Oracle {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum)]
        form: FormArg,
    },
}

/// Outcome of a command: the report body and whether every asserted
/// property held.
pub struct Outcome {
    pub params: Option<ParamsConfig>,
    pub result: Value,
    pub ok: bool,
}

/// Parses `g^n`.
pub fn parse_power(s: &str) -> Result<i128> {
    let body = s
        .trim()
        .strip_prefix("g^")
        .ok_or_else(|| Error::Parse(format!("expected g^n, got {s:?}")))?;
    body.parse::<i128>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

pub fn load_params(args: &ParamsArgs) -> Result<GkParams> {
    if let Some(name) = &args.fixture {
        return GkParams::fixture(name);
    }
    if let Some(path) = &args.params {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        // accept a bare parameter record or any report that embeds one
        let record = value.get("params").cloned().unwrap_or(value);
        let cfg: ParamsConfig = serde_json::from_value(record).map_err(|e| Error::Parse(e.to_string()))?;
        return GkParams::from_config(&cfg);
    }
    let (Some(p), Some(m), Some(k)) = (args.p, args.m, args.k) else {
        return Err(Error::Parse("give --fixture, --params, or all of --p --m --k".into()));
    };
    let a = match args.a.as_deref().map(str::trim) {
        None | Some("auto") => None,
        Some(other) => Some(parse_power(other)?),
    };
    let b = args.b.as_deref().map_or(Ok(1), parse_power)?;
    GkParams::from_exponents(p, m, k, a, b)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn exec_of(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn cmd_validate(args: &ParamsArgs) -> Result<Outcome> {
    let params = load_params(args)?;
    let t = params.tower();
    let result = json!({
        "q": t.q().to_string(),
        "r": t.r().to_string(),
        "Q": t.big_q().to_string(),
        "e": t.e(),
        "d": t.d(),
        "n": params.n(),
        "case": params.case().label(),
        "A_square_is_r_minus_1_power": params.case() == GroupCase::Two,
    });
    Ok(Outcome { params: Some(params.config()), result, ok: true })
}

fn cmd_check(cli: &Cli, args: &ParamsArgs, mode: Mode, samples: u64) -> Result<Outcome> {
    let params = load_params(args)?;
    let exec = exec_of(cli);
    let set = SpreadSet::build(&params)?;
    let policy = match mode {
        Mode::Auto => S3Policy::default_for(&params, samples, cli.seed),
        Mode::Full => S3Policy::Full,
        Mode::Sampled => S3Policy::Sampled { samples, seed: cli.seed },
    };
    let s3 = check_s3(&set, policy, exec);
    let commutative = Presemifield::from_gk(&params).is_commutative();
    let variant = match SpreadSet::build_with(&params, gk_multiply_variant) {
        Ok(vset) => {
            let vrep = check_s3(&vset, S3Policy::Sampled { samples: samples.min(10_000), seed: cli.seed }, exec);
            let left = Presemifield::from_mul(&params, gk_multiply_variant);
            json!({ "s3_sampled_holds": vrep.holds(), "singular_count": vrep.singular_count, "commutative": left.is_commutative() })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    let ok = s3.holds() && commutative;
    let result = json!({ "s3": to_value(&s3), "s3_holds": s3.holds(), "commutative": commutative, "variant": variant });
    Ok(Outcome { params: Some(params.config()), result, ok })
}

fn cmd_nuclei(cli: &Cli, args: &ParamsArgs) -> Result<Outcome> {
    let params = load_params(args)?;
    let set = SpreadSet::build(&params)?;
    let exec = exec_of(cli);
    let right = solve_nucleus(&set, Side::Right, exec).report(&params)?;
    let middle = solve_nucleus(&set, Side::Middle, exec).report(&params)?;
    let ok = [&right, &middle].iter().all(|r| r.is_field && r.matches);
    let result = json!({ "right": to_value(&right), "middle": to_value(&middle) });
    Ok(Outcome { params: Some(params.config()), result, ok })
}

fn policy_of(params: &GkParams, args: &InventoryArgs, seed: u64) -> VerifyPolicy {
    match args.verify {
        Mode::Auto => VerifyPolicy::default_for(params, seed),
        Mode::Full => VerifyPolicy::Full,
        Mode::Sampled => VerifyPolicy::Sampled { per_family: args.per_family, seed },
    }
}

/// Group order predicted from the case split: `(p^m-1)(p^e-1)` in case 1,
/// `2 (p^m-1)(p^e-1) m / i0` in case 2.
pub fn predicted_order(params: &GkParams, i0: Option<usize>) -> Option<u128> {
    let base = family_size(params);
    match params.case() {
        GroupCase::One => Some(base),
        GroupCase::Two => i0.map(|i| 2 * base * (params.tower().m() / i) as u128),
    }
}

fn build_inventory(cli: &Cli, args: &InventoryArgs) -> Result<(GkParams, GroupInventory)> {
    let params = load_params(&args.params)?;
    let set = SpreadSet::build(&params)?;
    let inv = enumerate_group_with(&set, policy_of(&params, args, cli.seed), exec_of(cli))?;
    Ok((params, inv))
}

fn cmd_enumerate(cli: &Cli, args: &InventoryArgs, jsonl: Option<&Path>, matrices: bool) -> Result<Outcome> {
    let (params, inv) = build_inventory(cli, args)?;
    if let Some(path) = jsonl {
        let mut file = fs::File::create(resolve_out(path)).map_err(|e| Error::Parse(e.to_string()))?;
        inv.write_jsonl(&mut file, matrices)?;
    }
    let summary = inv.summary();
    let predicted = predicted_order(&params, summary.i0);
    let order_matches = predicted == Some(summary.order);
    let ok = summary.failed == 0 && summary.counts_ok && summary.duplicates == 0 && order_matches;
    let mut result = to_value(&summary);
    result["case"] = json!(params.case().label());
    result["predicted_order"] = json!(predicted);
    result["order_matches"] = json!(order_matches);
    Ok(Outcome { params: Some(params.config()), result, ok })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    args: &ParamsArgs,
    i: usize,
    form: Form,
    free: &str,
    gamma: &str,
    epsilon: &str,
    alpha: Option<&str>,
) -> Result<Outcome> {
    let params = load_params(args)?;
    let t = params.tower();
    let alpha = match alpha {
        Some(s) => t.gen_pow(parse_power(s)?),
        None => admissible_indices(&params, form)
            .into_iter()
            .find(|a| a.i == i)
            .map(|a| a.alpha)
            .ok_or(Error::NonAdmissible { i, form: form.name() })?,
    };
    let (free, gamma, epsilon) =
        (t.gen_pow(parse_power(free)?), t.gen_pow(parse_power(gamma)?), t.gen_pow(parse_power(epsilon)?));
    let a = match form {
        Form::Diagonal => construct_diagonal(&params, i, &alpha, &free, &gamma, &epsilon)?,
        Form::Antidiagonal => construct_antidiagonal(&params, i, &alpha, &free, &gamma, &epsilon)?,
    };
    let set = SpreadSet::build(&params)?;
    let (x, y) = a.matrices(t);
    let v = verify_autotopism(&set, &x, &y);
    let log = |e: &FieldElem| t.dlog(e).map(|n| n.to_string()).unwrap_or_default();
    let result = json!({
        "i": i,
        "form": form,
        "scalars": a.scalars().iter().map(log).collect::<Vec<_>>(),
        "verified": v.verified,
        "witness": v.witness,
    });
    Ok(Outcome { params: Some(params.config()), result, ok: v.verified })
}

fn cmd_structure(cli: &Cli, args: &InventoryArgs) -> Result<Outcome> {
    let (params, inv) = build_inventory(cli, args)?;
    let rep = structure_report(&inv, exec_of(cli))?;
    let shape_ok = match params.case() {
        GroupCase::One => rep.abelian && rep.invariants_match && rep.indices == vec![0],
        GroupCase::Two => {
            !rep.abelian
                && rep.index_zero_normal
                && rep.quotient_cyclic
                && rep.indices_are_multiples
                && rep.quotient_order == rep.expected_quotient_order
        }
    };
    let ok = rep.closed
        && rep.solvable
        && rep.x_semilinear_over_d
        && rep.y_semilinear_over_e
        && rep.common_monomial
        && inv.summary().failed == 0
        && shape_ok;
    let mut result = to_value(&rep);
    result["case"] = json!(params.case().label());
    result["shape_matches_case"] = json!(shape_ok);
    Ok(Outcome { params: Some(params.config()), result, ok })
}

fn cmd_oracle(cli: &Cli, args: &ParamsArgs, i: usize, form: Form) -> Result<Outcome> {
    let params = load_params(args)?;
    let exec = exec_of(cli);
    let set = SpreadSet::build(&params)?;
    let (found, rep) = ansatz_exhaustive_oracle(&set, i, form, exec)?;
    let constructed = match admissible_indices(&params, form).into_iter().find(|a| a.i == i) {
        Some(adm) => crate::autotopism::enumerate_family(&params, &adm, exec).0,
        None => Vec::new(),
    };
    let set_equal = found == constructed;
    let mut result = to_value(&rep);
    result["constructed"] = json!(constructed.len());
    result["setequal"] = json!(set_equal);
    Ok(Outcome { params: Some(params.config()), result, ok: set_equal })
}

fn cmd_export(args: &ParamsArgs) -> Result<Outcome> {
    let params = load_params(args)?;
    let set = SpreadSet::build(&params)?;
    let result = to_value(&set.export());
    Ok(Outcome { params: Some(params.config()), result, ok: true })
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn dispatch(cli: &Cli) -> Result<(&'static str, Outcome)> {
    Ok(match &cli.command {
        Command::Validate(p) => ("validate", cmd_validate(p)?),
        Command::Check { params, s3, samples } => ("check", cmd_check(cli, params, *s3, *samples)?),
        Command::Nuclei(p) => ("nuclei", cmd_nuclei(cli, p)?),
        Command::Export(p) => ("export", cmd_export(p)?),
        Command::Aut { command } => match command {
            AutCommand::Enumerate { inv, jsonl, matrices } => {
                ("aut enumerate", cmd_enumerate(cli, inv, jsonl.as_deref(), *matrices)?)
            }
            AutCommand::Verify { params, i, form, free, gamma, epsilon, alpha } => (
                "aut verify",
                cmd_verify(params, *i, (*form).into(), free, gamma, epsilon, alpha.as_deref())?,
            ),
            AutCommand::Structure { inv } => ("aut structure", cmd_structure(cli, inv)?),
            AutCommand::Oracle { params, i, form } => ("aut oracle", cmd_oracle(cli, params, *i, (*form).into())?),
        },
    })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let outcome = par::with_threads(cli.threads, || dispatch(cli));
    let (name, outcome) = match outcome {
        Ok(v) => v,
        Err(e) => {
            let report = json!({ "schema": SCHEMA, "error": e.to_string() });
            eprintln!("{report}");
            return 2;
        }
    };
    let mut report = json!({
        "schema": SCHEMA,
        "command": name,
        "seed": cli.seed,
        "params": outcome.params,
        "ok": outcome.ok,
        "result": outcome.result,
    });
    if cli.timing {
        report["wall_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let text = serde_json::to_string_pretty(&report).expect("json") + "\n";
    match &cli.out {
        Some(path) => {
            let path = resolve_out(path);
            if let Err(e) = fs::write(&path, text) {
                eprintln!("{}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if outcome.ok {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gksf").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn power_parsing() {
        assert_eq!(parse_power("g^27").unwrap(), 27);
        assert_eq!(parse_power("g^-1").unwrap(), -1);
        assert!(parse_power("27").is_err());
        assert!(parse_power("g^x").is_err());
    }

    #[test]
    fn inline_parameters() {
        let cli = parse(&["validate", "--p", "3", "--m", "6", "--k", "2", "--B", "g^1", "--A", "auto"]);
        let Command::Validate(args) = &cli.command else { panic!() };
        let params = load_params(args).unwrap();
        assert_eq!(params.case(), GroupCase::Two);
        assert_eq!(params.a(), params.tower().gen_pow(-1));
        let bad = parse(&["validate", "--p", "3", "--m", "2", "--k", "1"]);
        let Command::Validate(args) = &bad.command else { panic!() };
        assert!(matches!(load_params(args), Err(Error::TowerInvalid(_)) | Err(Error::QuotientNotOdd { .. })));
        let mixed = ["validate", "--fixture", "gk-3-6-2", "--B", "g^3"];
        assert!(Cli::try_parse_from(std::iter::once("gksf").chain(mixed)).is_err());
    }

    #[test]
    fn predicted_orders() {
        let p3 = GkParams::fixture("gk-3-6-2").unwrap();
        assert_eq!(predicted_order(&p3, Some(1)), Some(69_888));
        assert_eq!(predicted_order(&p3, Some(3)), Some(23_296));
        let p5 = GkParams::fixture("gk-5-6-2").unwrap();
        assert_eq!(predicted_order(&p5, Some(3)), Some(374_976));
    }
}
