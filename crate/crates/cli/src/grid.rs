//! Parsing of sweep-grid specifications: a single value, a comma list, or
//! an inclusive `start:stop:step` range. Grids are sorted ascending and
//! deduplicated so output row order is deterministic.

use crate::CliError;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(CliError::usage("empty grid specification"));
    }
    let mut values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::usage(format!(
                "range grid must be start:stop:step, got `{spec}`"
            )));
        }
        let start = parse_f64(parts[0])?;
        let stop = parse_f64(parts[1])?;
        let step = parse_f64(parts[2])?;
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(CliError::usage(format!(
                "range grid needs stop >= start and step > 0, got `{spec}`"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=count).map(|j| start + j as f64 * step).collect()
    } else {
        spec.split(',')
            .map(parse_f64)
            .collect::<Result<Vec<_>, _>>()?
    };
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

/// Integer grid for user counts; `all` expands to 1..=max.
pub fn parse_int_grid(spec: &str, max: usize) -> Result<Vec<usize>, CliError> {
    if spec.trim() == "all" {
        return Ok((1..=max).collect());
    }
    let values = parse_grid(spec)?;
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let i = v.round();
        if (v - i).abs() > 1e-9 || i < 1.0 {
            return Err(CliError::usage(format!(
                "expected positive integers in grid, got {v}"
            )));
        }
        out.push(i as usize);
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::usage(format!("not a number: `{s}`")))
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
