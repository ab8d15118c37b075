use crate::CliError;

/// Upper limit on the number of grid points accepted from the command line.
pub const MAX_POINTS: usize = 10_000_000;

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or a
/// comma-separated list of points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    let points = if spec.contains(':') {
        parse_range(spec)?
    } else {
        spec.split(',')
            .map(|s| parse_number(s, "grid point"))
            .collect::<Result<Vec<_>, _>>()?
    };
    if points.is_empty() {
        return Err(CliError::Usage(
            "grid must contain at least one point".into(),
        ));
    }
    Ok(points)
}

fn parse_number(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid {what} `{}`", s.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{what} must be finite (got {v})")))
    }
}

fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(CliError::Usage(format!(
            "grid range must be start:stop:step (got `{spec}`)"
        )));
    };
    let start = parse_number(start, "grid start")?;
    let stop = parse_number(stop, "grid stop")?;
    let step = parse_number(step, "grid step")?;
    if !(step > 0.0) {
        return Err(CliError::Usage(format!(
            "grid step > 0 required (got {step})"
        )));
    }
    if stop < start {
        return Err(CliError::Usage(format!(
            "grid stop ≥ start required (got {start}:{stop})"
        )));
    }
    let span = (stop - start) / step;
    if !(span < MAX_POINTS as f64) {
        return Err(CliError::Usage(format!(
            "grid has more than {MAX_POINTS} points"
        )));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| snap(start + i as f64 * step, step))
        .collect())
}

/// Removes the representation noise of `start + i·step`, so `0.05:0.95:0.05`
/// yields `0.15` rather than `0.15000000000000002`.
fn snap(v: f64, step: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if (r - v).abs() <= 1e-9 * step {
        r
    } else {
        v
    }
}

/// `n` sorted, distinct points drawn uniformly from `(lo, hi)`.
pub fn sample_grid(n: usize, seed: u64, lo: f64, hi: f64) -> Result<Vec<f64>, CliError> {
    use rand::{Rng, SeedableRng};
    if n == 0 || n > MAX_POINTS {
        return Err(CliError::Usage(format!(
            "--samples must be between 1 and {MAX_POINTS} (got {n})"
        )));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<f64> = (0..n)
        .map(|_| loop {
            let x = rng.gen_range(lo..hi);
            if x > lo {
                break x;
            }
        })
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}
