//! `trislice`: exports slice and two-point coefficient tables, kernel
//! entries and oracle comparisons, and runs the verification suite.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trislice::algebra::int;
use trislice::closedform::{expand_general, expand_simple, lambda_of_big_g, lambda_of_g};
use trislice::io::{
    encode_coefficients, encode_comparison, encode_kernel, encode_report, family_rows, kernel_rows, CoefRow,
    ComparisonRow, Format,
};
use trislice::kernel::{theta_c_param, KernelTable};
use trislice::oracle::{oracle_two_point, OracleConfig};
use trislice::pipeline::{run_general, run_simple};
use trislice::slices::{limits, Family};
use trislice::verify::{first_failure, run_checks, VerifyConfig};
use trislice::Error;

#[derive(Parser)]
#[command(name = "trislice", version, about = "Exact two-point function of planar triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slice and two-point coefficients from the recursion.
    Series(SeriesArgs),
    /// The same families expanded from their closed forms.
    ClosedForm(SeriesArgs),
    /// Kernel entries psi_{m,n} for m, n <= order.
    Kernel(KernelArgs),
    /// Brute-force enumeration against the two-point series.
    Oracle(OracleArgs),
    /// Every residual and cross-route check, as a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilySel {
    General,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum, default_value = "general")]
    family: FamilySel,
    #[arg(long, default_value_t = 5)]
    kmax: usize,
    /// Truncation order in g (general) or G (simple).
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest face count; must be even.
    #[arg(long, default_value_t = 4)]
    fmax: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, default_value_t = 5)]
    kmax: usize,
    #[arg(long, default_value_t = 4)]
    fmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true, value_parser = parse_pair)]
    corrupt_psi: Option<(usize, usize)>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(',').ok_or("expected m,n")?;
    let m = m.trim().parse().map_err(|_| format!("bad index {m:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad index {n:?}"))?;
    Ok((m, n))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) | CliError::Core(Error::Inconsistent { .. }) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source });
    };
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn coefficient_rows(families: &[&Family]) -> Vec<CoefRow> {
    families.iter().flat_map(|f| family_rows(f)).collect()
}

fn cmd_series(args: &SeriesArgs) -> CliResult<()> {
    let rows = match args.family {
        FamilySel::General => {
            let run = run_general(args.kmax, args.order)?;
            let f = &run.families;
            coefficient_rows(&[&f.r.up_to(args.kmax), &f.s.up_to(args.kmax), &f.t.up_to(args.kmax), &run.gk])
        }
        FamilySel::Simple => {
            let run = run_simple(args.kmax, args.order)?;
            coefficient_rows(&[&run.families.r, &run.families.t])
        }
    };
    emit(&encode_coefficients(&rows, args.output.format.into())?, args.output.out.as_deref())
}

/// Closed forms lose a little precision to reversion and division, so they
/// are expanded with headroom and trimmed to `n <= order`. `G_0` has no
/// closed form and is omitted.
fn cmd_closed_form(args: &SeriesArgs) -> CliResult<()> {
    let order = args.order + 2;
    let rows = match args.family {
        FamilySel::General => {
            let lam = lambda_of_g(&limits(order)?)?;
            let e = expand_general(&lam, args.kmax)?;
            coefficient_rows(&[&e.r, &e.s, &e.gk])
        }
        FamilySel::Simple => {
            let param = theta_c_param(order.div_ceil(2))?;
            let lam = lambda_of_big_g(&param.theta_of_x, order)?;
            let e = expand_simple(&lam, args.kmax)?;
            coefficient_rows(&[&e.r, &e.t])
        }
    };
    let rows: Vec<CoefRow> = rows.into_iter().filter(|r| r.n <= args.order).collect();
    emit(&encode_coefficients(&rows, args.output.format.into())?, args.output.out.as_deref())
}

fn cmd_kernel(args: &KernelArgs) -> CliResult<()> {
    let rows = kernel_rows(&KernelTable::by_recurrence(args.order, args.order));
    emit(&encode_kernel(&rows, args.output.format.into())?, args.output.out.as_deref())
}

fn cmd_oracle(args: &OracleArgs) -> CliResult<()> {
    let table = oracle_two_point(args.fmax, &OracleConfig::default())?;
    let k_max = args.fmax / 2 + 2;
    let run = run_general(k_max, args.fmax)?;
    if let Some((f, k, _)) = table.rows().find(|&(_, k, c)| k > k_max && c > 0) {
        return Err(CliError::Verification(format!("oracle reaches distance {k} at F = {f}, beyond k = {k_max}")));
    }
    let mut rows = Vec::new();
    for f in (2..=args.fmax).step_by(2) {
        for (k, s) in run.gk.iter() {
            let oracle_count = table.get(f, k);
            let series = &s.coeffs()[f];
            if oracle_count == 0 && *series == int(0) {
                continue;
            }
            rows.push(ComparisonRow {
                f,
                k,
                oracle_count,
                series_count: series.to_string(),
                matches: *series == int(oracle_count as i64),
            });
        }
    }
    emit(&encode_comparison(&rows, args.output.format.into())?, args.output.out.as_deref())?;
    match rows.iter().find(|r| !r.matches) {
        Some(r) => Err(CliError::Verification(format!(
            "F = {}, k = {}: oracle {} vs series {}",
            r.f, r.k, r.oracle_count, r.series_count
        ))),
        None => Ok(()),
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let cfg = VerifyConfig {
        order: args.order,
        k_max: args.kmax,
        oracle_f_max: args.fmax,
        corrupt_psi: args.corrupt_psi,
        ..VerifyConfig::default()
    };
    let report = run_checks(&cfg);
    emit(&encode_report(&report)?, args.out.as_deref())?;
    match first_failure(&report) {
        Some(r) => Err(CliError::Verification(format!("{}: {}", r.check, r.detail))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Series(a) => cmd_series(a),
        Command::ClosedForm(a) => cmd_closed_form(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trislice: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
