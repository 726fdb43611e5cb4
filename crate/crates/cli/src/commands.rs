use std::path::{Path, PathBuf};

use zfdpc_core::{
    rho, s_opt_finite, sbar_opt, throughput_mc_with, zfbf_throughput_mc, zfbf_throughput_mc_with,
    AsymptoticParams, McOptions, SystemConfig,
};

use crate::grid::{parse_grid, parse_int_grid};
use crate::output::{fmt_f64, summaries_json, write_text, CsvTable, RunSummary};
use crate::svg::{line_plot, Series};
use crate::{CliError, Scheme, Units};

const LN_2: f64 = std::f64::consts::LN_2;

fn in_units(bits: f64, units: Units) -> f64 {
    match units {
        Units::Bits => bits,
        Units::Nats => bits * LN_2,
    }
}

pub fn run_asym(p: f64, sbar: f64, rbar: f64, units: Units, tol: f64) -> Result<(), CliError> {
    let params = AsymptoticParams::new(p, sbar, rbar)?;
    let v = rho(&params, tol)?;
    println!("{}", fmt_f64(in_units(v, units)));
    Ok(())
}

pub fn run_sweep(
    p: Option<String>,
    p_db: Option<String>,
    rbar_spec: &str,
    sbar_spec: &str,
    out: Option<&Path>,
    svg: Option<&Path>,
    tol: f64,
) -> Result<(), CliError> {
    let powers: Vec<f64> = match (&p, &p_db) {
        (Some(spec), None) => parse_grid(spec)?,
        (None, Some(spec)) => parse_grid(spec)?
            .into_iter()
            .map(crate::grid::db_to_linear)
            .collect(),
        _ => return Err(CliError::usage("give exactly one of --p and --p-db")),
    };
    let rbars = parse_grid(rbar_spec)?;
    let optimize = sbar_spec.trim() == "opt";
    let sbars = if optimize {
        Vec::new()
    } else {
        parse_grid(sbar_spec)?
    };
    let mut table = CsvTable::new(&["P", "rbar", "sbar", "rho_bits"]);
    // one plotted series per rbar value
    let mut series: Vec<Series> = rbars
        .iter()
        .map(|rb| Series {
            label: format!("rbar = {rb}"),
            points: Vec::new(),
        })
        .collect();
    let log_axis = powers.iter().all(|&p| p > 0.0);
    for &p in &powers {
        for (ri, &rb) in rbars.iter().enumerate() {
            let x = if log_axis { 10.0 * p.log10() } else { p };
            if optimize {
                let (sb, val) = sbar_opt(p, rb, 1e-4)?;
                table.push(vec![fmt_f64(p), fmt_f64(rb), fmt_f64(sb), fmt_f64(val)]);
                series[ri].points.push((x, sb));
            } else {
                for &sb in &sbars {
                    let val = rho(&AsymptoticParams::new(p, sb, rb)?, tol)?;
                    table.push(vec![fmt_f64(p), fmt_f64(rb), fmt_f64(sb), fmt_f64(val)]);
                    series[ri].points.push((x, val));
                }
            }
        }
    }
    write_text(out, &table.render())?;
    if let Some(svg_path) = svg {
        let (title, ylabel) = if optimize {
            ("optimal user fraction", "sbar_opt")
        } else {
            ("asymptotic throughput", "rho [bits/use/antenna]")
        };
        let xlabel = if log_axis { "P [dB]" } else { "P (linear)" };
        write_text(Some(svg_path), &line_plot(title, xlabel, ylabel, &series))?;
    }
    Ok(())
}

pub struct SimulateSpec {
    pub users: usize,
    pub feedback_bits: usize,
    pub active_grid: String,
    pub power: f64,
    pub trials: usize,
    pub inner: usize,
    pub seed: u64,
    pub scheme: Scheme,
    pub perfect_csit: bool,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

pub fn run_simulate(spec: SimulateSpec) -> Result<(), CliError> {
    let actives = parse_int_grid(&spec.active_grid, spec.users)?;
    let mut table = CsvTable::new(&[
        "scheme",
        "K",
        "r",
        "s",
        "P",
        "perfect_csit",
        "trials",
        "inner",
        "seed",
        "mean_bits",
        "stderr_bits",
        "zf_residual_max",
    ]);
    let mut summaries = Vec::new();
    let mut points = Vec::new();
    for &s in &actives {
        let cfg = SystemConfig::new(spec.users, spec.power, s, spec.feedback_bits)?;
        let opts = McOptions {
            trials: spec.trials,
            inner: spec.inner,
            seed: spec.seed,
            perfect_csit: spec.perfect_csit,
        };
        let est = match spec.scheme {
            Scheme::Zfdpc => throughput_mc_with(&cfg, &opts)?,
            Scheme::Zfbf => zfbf_throughput_mc_with(&cfg, &opts)?,
        };
        table.push(vec![
            spec.scheme.name().to_string(),
            spec.users.to_string(),
            spec.feedback_bits.to_string(),
            s.to_string(),
            fmt_f64(spec.power),
            spec.perfect_csit.to_string(),
            spec.trials.to_string(),
            spec.inner.to_string(),
            spec.seed.to_string(),
            fmt_f64(est.mean),
            fmt_f64(est.std_err),
            fmt_f64(est.zf_residual),
        ]);
        points.push((s as f64, est.mean));
        summaries.push(RunSummary::new(
            &cfg,
            spec.scheme.name(),
            spec.perfect_csit,
            spec.trials,
            spec.inner,
            &est,
        ));
    }
    write_text(spec.out.as_deref(), &table.render())?;
    if let Some(json_path) = &spec.json {
        write_text(Some(json_path), &summaries_json(&summaries)?)?;
    }
    if let Some(svg_path) = &spec.svg {
        let series = [Series {
            label: format!("{} throughput", spec.scheme.name()),
            points,
        }];
        write_text(
            Some(svg_path),
            &line_plot(
                "throughput vs active users",
                "s",
                "throughput [bits/use/antenna]",
                &series,
            ),
        )?;
    }
    Ok(())
}

/// Below this many bits per use per antenna a throughput is treated as
/// zero for comparison purposes.
const NEGLIGIBLE_THROUGHPUT: f64 = 0.05;

/// A comparison row is flagged (NaN columns) when the zero-forcing
/// reference is statistically indistinguishable from zero or both schemes
/// are in the vanishing-power regime, so the percentage would be
/// meaningless.
pub fn run_compare(
    k: usize,
    rbar: f64,
    p_db_spec: &str,
    trials: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if rbar.is_nan() || rbar < 0.0 {
        return Err(CliError::usage("rbar must be >= 0"));
    }
    let db_values = parse_grid(p_db_spec)?;
    let r = (rbar * k as f64).round() as usize;
    let mut table = CsvTable::new(&["P_dB", "impr_pct", "stderr"]);
    for &db in &db_values {
        let p = crate::grid::db_to_linear(db);
        // dirty-paper side: the asymptotic optimum
        let (_, rho_dpc) = sbar_opt(p, rbar, 1e-4)?;
        // zero-forcing side: Monte Carlo at this K, best s by grid
        let mut best = (f64::NEG_INFINITY, 0.0);
        for s in 1..=k {
            let cfg = SystemConfig::new(k, p, s, r)?;
            let est = zfbf_throughput_mc(&cfg, trials, seed)?;
            if est.mean > best.0 {
                best = (est.mean, est.std_err);
            }
        }
        let (bf_mean, bf_se) = best;
        let degenerate = bf_mean <= 3.0 * bf_se
            || (bf_mean < NEGLIGIBLE_THROUGHPUT && rho_dpc < NEGLIGIBLE_THROUGHPUT);
        if degenerate {
            table.push(vec![fmt_f64(db), fmt_f64(f64::NAN), fmt_f64(f64::NAN)]);
            continue;
        }
        let impr = 100.0 * (rho_dpc - bf_mean) / bf_mean;
        let stderr = 100.0 * rho_dpc / (bf_mean * bf_mean) * bf_se;
        table.push(vec![fmt_f64(db), fmt_f64(impr), fmt_f64(stderr)]);
    }
    write_text(out, &table.render())
}

pub fn run_optimize(
    p: f64,
    rbar: Option<f64>,
    k: Option<usize>,
    r: Option<usize>,
    tol: f64,
    units: Units,
) -> Result<(), CliError> {
    let rbar = match (rbar, k, r) {
        (Some(rb), _, _) => rb,
        (None, Some(k), Some(r)) if k > 0 => r as f64 / k as f64,
        _ => {
            return Err(CliError::usage(
                "give --rbar, or both --k and --r to derive it",
            ))
        }
    };
    let (sb, val) = sbar_opt(p, rbar, tol)?;
    println!("sbar_opt = {}", fmt_f64(sb));
    match units {
        Units::Bits => println!("rho_opt_bits = {}", fmt_f64(val)),
        Units::Nats => println!("rho_opt_nats = {}", fmt_f64(val * LN_2)),
    }
    if let Some(k) = k {
        let r = match r {
            Some(r) => r,
            None => (rbar * k as f64).round() as usize,
        };
        println!("s_opt = {}", s_opt_finite(k, r, p)?);
    }
    Ok(())
}
