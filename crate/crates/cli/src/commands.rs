use serde_json::{json, Value};

use river_banks::boij_soderberg::decompose as bs_decompose;
use river_banks::bounds::{
    check_sharpness as sharpness, check_tensor_bounds, tensor_homogeneous, unobstructed_criterion, BoundReport,
};
use river_banks::exterior::{random_trials, run_trial, TwoForm, DEFAULT_SEED};
use river_banks::{golden, CohomologyTable, ColRange, Error, Execution, GenPartition};

use crate::{load_table, CliError, EXIT_OK, EXIT_UNDECIDABLE, EXIT_VIOLATION};

pub const SEED_VAR: &str = "RIVER_BANKS_SEED";

/// What a command prints on stdout and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn json(v: &Value, code: i32) -> Self {
        Output { stdout: format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")), code }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Json,
}

/// `lo:hi`
pub fn parse_window(s: &str) -> Result<ColRange, CliError> {
    let bad = || CliError::Usage(format!("window '{s}' is not of the form lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("window '{s}' is empty")));
    }
    Ok(ColRange::new(lo, hi))
}

/// Explicit `--seed`, then `RIVER_BANKS_SEED`, then the built-in default.
pub fn resolve_seed(explicit: Option<u64>, env: Option<String>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match env {
        Some(v) => {
            v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_VAR}='{v}' is not an unsigned integer")))
        }
        None => Ok(DEFAULT_SEED),
    }
}

fn render(t: &CohomologyTable, window: Option<ColRange>, format: Format) -> Result<Output, CliError> {
    let range = match window {
        Some(w) => w,
        None => t.natural_range()?,
    };
    Ok(match format {
        Format::Ascii => Output { stdout: t.render_ascii(range)?, code: EXIT_OK },
        Format::Json => Output::json(&t.to_json(range)?, EXIT_OK),
    })
}

pub fn table(input: &str, window: Option<ColRange>, format: Format) -> Result<Output, CliError> {
    render(&load_table(input)?, window, format)
}

pub fn indices(input: &str) -> Result<Output, CliError> {
    let profile = load_table(input)?.regularity_profile()?;
    let limited = profile.reg.iter().chain(&profile.coreg).any(|v| v.window_limited);
    let v = serde_json::to_value(&profile).expect("serializable");
    Ok(Output::json(&v, if limited { EXIT_UNDECIDABLE } else { EXIT_OK }))
}

pub fn tensor(f: &str, g: &str, window: Option<ColRange>, format: Format) -> Result<Output, CliError> {
    let (tf, tg) = (load_table(f)?, load_table(g)?);
    let product = tensor_homogeneous(&tf, &tg).map_err(|e| match e {
        Error::NotHomogeneous => CliError::Usage(
            "tensor needs homogeneous operands (S[..], O(..) and their duals, twists, sums); \
             for Künneth or literal tables supply the product table as a file to check-bounds"
                .into(),
        ),
        other => other.into(),
    })?;
    render(&product, window, format)
}

fn bounds_code(reports: &[&BoundReport]) -> i32 {
    if reports.iter().any(|r| r.certified_violation()) {
        EXIT_VIOLATION
    } else if reports.iter().any(|r| !r.all_satisfied()) {
        EXIT_UNDECIDABLE
    } else {
        EXIT_OK
    }
}

pub fn check_bounds(f: &str, g: &str, fg: &str) -> Result<Output, CliError> {
    let (reg, coreg) = check_tensor_bounds(&load_table(f)?, &load_table(g)?, &load_table(fg)?)?;
    let v = json!({ "reg": reg, "coreg": coreg });
    Ok(Output::json(&v, bounds_code(&[&reg, &coreg])))
}

fn partition_arg(s: &str, n: usize) -> Result<GenPartition, CliError> {
    let p: GenPartition = s.parse()?;
    if p.n() != n {
        return Err(CliError::Usage(format!("partition '{s}' has {} parts, expected {n}", p.n())));
    }
    Ok(p)
}

pub fn check_sharpness(lambda: &str, mu: &str, n: usize) -> Result<Output, CliError> {
    let report = sharpness(&partition_arg(lambda, n)?, &partition_arg(mu, n)?)?;
    let code = if report.all_equal() { EXIT_OK } else { EXIT_VIOLATION };
    let v = json!({ "equal": report.all_equal(), "report": report });
    Ok(Output::json(&v, code))
}

pub fn decompose(input: &str) -> Result<Output, CliError> {
    let d = bs_decompose(&load_table(input)?)?;
    let code = if d.residual_zero && d.chain_certified { EXIT_OK } else { EXIT_UNDECIDABLE };
    Ok(Output::json(&serde_json::to_value(&d).expect("serializable"), code))
}

pub fn unobstructed(input: &str) -> Result<Output, CliError> {
    let r = unobstructed_criterion(&load_table(input)?)?;
    let code = if r.window_limited { EXIT_UNDECIDABLE } else { EXIT_OK };
    Ok(Output::json(&serde_json::to_value(&r).expect("serializable"), code))
}

pub enum WedgeInput {
    Random { trials: usize, seed: u64 },
    Pair { eta1: String, eta2: String },
}

pub fn wedge_kernel(input: WedgeInput) -> Result<Output, CliError> {
    let parse = |s: &str| s.parse::<TwoForm>().map_err(CliError::from);
    let (trials, seed) = match input {
        WedgeInput::Random { trials, seed } => (random_trials(seed, trials, Execution::default()), Some(seed)),
        WedgeInput::Pair { eta1, eta2 } => (vec![run_trial(parse(&eta1)?, parse(&eta2)?, 0)], None),
    };
    let min = trials.iter().map(|t| t.kernel_dim).min();
    let all_checked = trials.iter().all(|t| t.modular_check);
    let v = json!({
        "seed": seed,
        "trials": trials,
        "min_kernel_dim": min,
        "modular_check": all_checked,
    });
    let code = if min == Some(0) { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Output::json(&v, code))
}

pub fn golden_verify() -> Result<Output, CliError> {
    let checks = golden::verify()?;
    let passed = checks.iter().all(|c| c.passed);
    let v = json!({ "passed": passed, "checks": checks });
    Ok(Output::json(&v, if passed { EXIT_OK } else { EXIT_VIOLATION }))
}

/// Prints the embedded tables, e.g. to seed files for `indices`.
pub fn golden_export(name: &str, format: Format) -> Result<Output, CliError> {
    let (_, text) = golden::TABLES.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        let names: Vec<&str> = golden::TABLES.iter().map(|(n, _)| *n).collect();
        CliError::Usage(format!("unknown table '{name}' (one of {})", names.join(", ")))
    })?;
    let t = golden::parse(text);
    render(&t, t.window(), format)
}
