use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use prl_core::analysis::CompensatedSum;
use prl_core::density::{
    bad_interval_density, delta_log, delta_prime, delta_star, race_prime_densities, titchmarsh_check_records,
    write_interval_csv, Partition,
};
use prl_core::dist::{delta_bias, sample_y, RandomRaceVariable};
use prl_core::explicit::{
    e_m_truncated, e_pi_truncated, e_z_truncated, lambda_alpha_partial, symmetric_difference_bound,
};
use prl_core::primes::{prime_count, prime_stream, DEFAULT_SEGMENT};
use prl_core::races::{self, positive_intervals, scan, KindSet, RaceKind, RaceState, ScanConfig};
use prl_core::zeros::ZeroTable;

use crate::args::{
    DeltaArgs, DensityArgs, DistRace, EstimatorArg, ExplicitArgs, Formula, IntervalsArgs, ScanArgs, SetArg,
    SymdiffArgs, ValidateArgs,
};
use crate::output::{
    create, csv_preamble, write_json, write_scan_row, DensityOutput, Envelope, ExplicitOutput, IntervalsOutput,
    ScanOutput, SCAN_HEADER,
};
use crate::validate::validate_file;

/// Whether every invariant the command asserts held. Module errors are
/// returned as `Err` instead.
pub type Passed = bool;

/// The parent directory of an output path must exist before work starts.
fn check_output(path: Option<&Path>) -> Result<()> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        ensure!(parent.is_dir(), "output directory {} does not exist", parent.display());
        ensure!(!p.is_dir(), "output path {} is a directory", p.display());
    }
    Ok(())
}

fn load_table(path: Option<&Path>) -> Result<ZeroTable> {
    match path {
        Some(p) => ZeroTable::load(p).with_context(|| format!("loading zero table {}", p.display())),
        None => Ok(ZeroTable::bundled()),
    }
}

pub fn run_scan(args: &ScanArgs) -> Result<Passed> {
    ensure!(args.limit >= 3, "--limit must be at least 3");
    check_output(args.out.as_deref())?;
    check_output(args.summary.as_deref())?;
    check_output(args.checkpoint.as_deref())?;
    let kinds: Vec<RaceKind> = args.race.iter().map(|&r| r.into()).collect();

    let mut state = match &args.checkpoint {
        Some(p) if p.exists() => RaceState::load(p).with_context(|| format!("loading checkpoint {}", p.display()))?,
        _ => RaceState::new(),
    };
    let resumed_from = state.x_reached();
    let config = ScanConfig {
        kinds: KindSet::from_kinds(&kinds),
        emit_every: args.emit_every,
        emit_exceptional: true,
        checkpoint: args.checkpoint.clone(),
        checkpoint_every: args.checkpoint_every.max(1),
        segment_size: DEFAULT_SEGMENT,
    };

    let no_op = resumed_from > args.limit;
    let mut csv: Option<Box<dyn Write>> = match (&args.out, no_op) {
        (Some(p), false) if resumed_from > 2 && p.exists() => {
            let f = OpenOptions::new().append(true).open(p).with_context(|| format!("opening {}", p.display()))?;
            Some(Box::new(BufWriter::new(f)))
        }
        (Some(p), false) => {
            let mut w = create(p)?;
            w.write_all(csv_preamble("scan", args)?.as_bytes())?;
            writeln!(w, "{SCAN_HEADER}")?;
            Some(Box::new(w))
        }
        _ => None,
    };

    let mut rows = 0u64;
    let mut io_error = None;
    let summary = scan(&mut state, args.limit, &config, |p| {
        if let Some(w) = csv.as_mut() {
            if io_error.is_none() {
                match write_scan_row(w, p) {
                    Ok(()) => rows += 1,
                    Err(e) => io_error = Some(e),
                }
            }
        }
    })?;
    if let Some(e) = io_error {
        return Err(e).context("writing scan CSV");
    }
    if let Some(mut w) = csv {
        w.flush()?;
    }
    let out = ScanOutput { summary, resumed_from, rows_written: rows, no_op };
    write_json(args.summary.as_deref(), &Envelope::new("scan", args, out)?)?;
    Ok(true)
}

pub fn run_delta(args: &DeltaArgs) -> Result<Passed> {
    check_output(args.out.as_deref())?;
    let mut table = load_table(args.zeros.as_deref())?;
    if let Some(n) = args.zeros_count {
        ensure!(n as usize <= table.len(), "--zeros-count {n} exceeds the {} zeros in the table", table.len());
        table = table.truncated(n as usize);
    }
    let var = match args.race {
        DistRace::Zhang => RandomRaceVariable::zhang(&table),
        DistRace::Pi => RandomRaceVariable::pi(&table),
    }?;
    let mut result = delta_bias(&var, args.t_max, args.grid_step)?;
    if let Some(n) = args.monte_carlo {
        ensure!(n >= 1, "--monte-carlo needs at least one draw");
        result.monte_carlo = Some(sample_y(&var, n as usize, args.seed));
    }
    write_json(args.out.as_deref(), &Envelope::new("delta", args, result)?)?;
    Ok(true)
}

pub fn run_density(args: &DensityArgs) -> Result<Passed> {
    check_output(args.out.as_deref())?;
    let x = args.limit as f64;
    let (estimate, indeterminate) = match (args.set, args.estimator) {
        (SetArg::All, EstimatorArg::Star) => (delta_star(|_| true, x)?, 0),
        (SetArg::All, EstimatorArg::Prime) => (delta_prime(|_| true, x)?, 0),
        (SetArg::All, EstimatorArg::Log) => (delta_log(&[(1.0, x)], x)?, 0),
        (SetArg::None, EstimatorArg::Star) => (delta_star(|_| false, x)?, 0),
        (SetArg::None, EstimatorArg::Prime) => (delta_prime(|_| false, x)?, 0),
        (SetArg::None, EstimatorArg::Log) => (delta_log(&[], x)?, 0),
        (set, estimator) => {
            let kind = match set {
                SetArg::Pi => RaceKind::Pi,
                SetArg::Mertens => RaceKind::Mertens,
                _ => RaceKind::Zhang,
            };
            match estimator {
                EstimatorArg::Log => (delta_log(&positive_intervals(kind, x)?, x)?, 0),
                EstimatorArg::Star => {
                    let (star, _, ind) = race_prime_densities(kind, x)?;
                    (star, ind)
                }
                EstimatorArg::Prime => {
                    let (_, prime, ind) = race_prime_densities(kind, x)?;
                    (prime, ind)
                }
            }
        }
    };
    write_json(args.out.as_deref(), &Envelope::new("density", args, DensityOutput { estimate, indeterminate })?)?;
    Ok(true)
}

pub fn run_intervals(args: &IntervalsArgs) -> Result<Passed> {
    check_output(args.out.as_deref())?;
    check_output(args.summary.as_deref())?;
    ensure!(!args.eps.is_empty(), "at least one --eps is required");
    let x = args.limit as f64;
    let mut count = 0;
    if let Some(p) = &args.out {
        let mut w = create(p)?;
        w.write_all(csv_preamble("intervals", args)?.as_bytes())?;
        count = write_interval_csv(&mut w, Partition::new(x, args.exponent)?, &args.eps)?;
        w.flush()?;
    }
    let titchmarsh = titchmarsh_check_records(Partition::new(x, args.exponent)?.inspect(|_| {
        if args.out.is_none() {
            count += 1;
        }
    }));
    let bad_intervals = args
        .eps
        .iter()
        .map(|&e| bad_interval_density(e, x, args.exponent))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = titchmarsh.passed;
    let out = IntervalsOutput { intervals: count, bad_intervals, titchmarsh };
    write_json(args.summary.as_deref(), &Envelope::new("intervals", args, out)?)?;
    Ok(passed)
}

/// `Σ_{n≤x} Λ(n)/n^α` by enumeration.
fn lambda_sum(x: f64, alpha: f64) -> Result<f64> {
    let n = x.floor() as u64;
    let mut s = CompensatedSum::new();
    for p in prime_stream(n, DEFAULT_SEGMENT)? {
        let l = (p as f64).ln();
        let mut q = p;
        loop {
            s.add(l / (q as f64).powf(alpha));
            match q.checked_mul(p) {
                Some(r) if r <= n => q = r,
                _ => break,
            }
        }
    }
    Ok(s.value())
}

pub fn run_explicit(args: &ExplicitArgs) -> Result<Passed> {
    check_output(args.out.as_deref())?;
    let table = load_table(args.zeros.as_deref())?;
    let t = match (args.t, args.t_index) {
        (Some(t), None) => t,
        (None, Some(n)) => {
            ensure!(n >= 1 && n as usize <= table.len(), "--T-index {n} is outside 1..={}", table.len());
            table.gammas()[n as usize - 1]
        }
        _ => bail!("exactly one of --T and --T-index is required"),
    };
    let x = args.x;
    let formula = match args.race {
        Formula::Zhang => e_z_truncated(x, t, &table),
        Formula::Mertens => e_m_truncated(x, t, &table),
        Formula::Pi => e_pi_truncated(x, t, &table),
        Formula::Lambda => lambda_alpha_partial(x, args.alpha, t, &table),
    }?;
    let direct = if args.no_direct {
        None
    } else {
        ensure!(x < 1e12, "direct computation sieves to x; use --no-direct above 1e12");
        Some(match args.race {
            Formula::Lambda => lambda_sum(x, args.alpha)?,
            Formula::Pi => races::e_pi(x, prime_count(x.floor() as u64)?)?.value,
            race => {
                let mut st = RaceState::new();
                st.advance_to(x.ceil() as u64)?;
                if race == Formula::Zhang {
                    races::e_z(x, &st)?.value
                } else {
                    races::e_m(x, &st)?.value
                }
            }
        })
    };
    let residual = direct.map(|d| (d - formula.value).abs());
    let within_envelope = residual.map(|r| r <= formula.error_envelope);
    let out = ExplicitOutput { formula, zero_digest: table.digest().to_string(), direct, residual, within_envelope };
    write_json(args.out.as_deref(), &Envelope::new("explicit", args, out)?)?;
    Ok(within_envelope.unwrap_or(true))
}

pub fn run_symdiff(args: &SymdiffArgs) -> Result<Passed> {
    check_output(args.out.as_deref())?;
    ensure!(args.pilot_lo < args.pilot_hi && args.range_lo < args.range_hi, "empty pilot or range");
    let report = symmetric_difference_bound((args.pilot_lo, args.pilot_hi), (args.range_lo, args.range_hi))?;
    let passed = report.passed;
    write_json(args.out.as_deref(), &Envelope::new("symdiff", args, report)?)?;
    Ok(passed)
}

pub fn run_validate(args: &ValidateArgs) -> Result<Passed> {
    let mut passed = true;
    for f in &args.files {
        match validate_file(f) {
            Ok(kind) => println!("ok {}: {kind}", f.display()),
            Err(e) => {
                passed = false;
                println!("invalid {}: {e:#}", f.display());
            }
        }
    }
    if passed {
        Ok(true)
    } else {
        Err(anyhow!("validation failed"))
    }
}
