//! Riblet profile generation and normalization.
//!
//! Profiles are 1-periodic, sampled on a uniform grid of `n + 1` points
//! (first and last sample coincide). The normalization makes the mean
//! square of the cell slopes `(psi[j+1] - psi[j]) * n` equal to one, which
//! is exact quadrature of `int |Psi'|^2` for piecewise-linear `Psi`. The
//! nodal derivative samples are central differences; the boundary datum
//! seen by the cell solvers is their piecewise-linear interpolant.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RibletKind {
    /// Symmetric triangle wave, peak 1/2: the unique triangle with unit
    /// slope-energy.
    VShape,
    /// Circular-arc scallops meeting at cusps (half-angle
    /// [`USHAPE_HALF_ANGLE`]).
    UShape,
    /// Thin fin of width [`BLADE_WIDTH`] with C^1 smoothed shoulders of
    /// radius [`BLADE_SMOOTHING`].
    Blade,
    Custom,
}

/// Arc half-angle of the U-shape scallop, radians.
pub const USHAPE_HALF_ANGLE: f64 = 1.46;
/// Total fin width of the blade profile (fraction of the period).
pub const BLADE_WIDTH: f64 = 0.05;
/// C^1 smoothing radius of the blade shoulders.
pub const BLADE_SMOOTHING: f64 = 0.01;

/// Default sample counts reproducing the reference cell energies.
pub fn default_samples(kind: RibletKind) -> usize {
    match kind {
        RibletKind::VShape => 34,
        RibletKind::UShape => 192,
        RibletKind::Blade => 192,
        RibletKind::Custom => 128,
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RibletError {
    #[error("not_normalizable: profile has zero slope energy")]
    NotNormalizable,
    #[error("sample count {0} below the minimum of 16")]
    TooFewSamples(usize),
    #[error("profile is not periodic: psi(0) = {0}, psi(1) = {1}")]
    NotPeriodic(f64, f64),
    #[error("custom profile: {0}")]
    BadInput(String),
}

/// Sampled normalized riblet profile.
#[derive(Debug, Clone, PartialEq)]
pub struct RibletProfile {
    pub kind: RibletKind,
    /// n + 1 values of Psi on the uniform grid over one period.
    pub samples: Vec<f64>,
    /// Central-difference values of Psi'.
    pub dsamples: Vec<f64>,
    /// Quadrature of int |Psi'|^2 after normalization (cell-slope rule).
    pub norm: f64,
}

impl RibletProfile {
    pub fn sample_count(&self) -> usize {
        self.samples.len() - 1
    }

    /// Piecewise-linear interpolant of the nodal derivative at `z` (period 1).
    pub fn dpsi(&self, z: f64) -> f64 {
        let n = self.sample_count() as f64;
        let zz = z.rem_euclid(1.0);
        let t = zz * n;
        let j = (t.floor() as usize).min(self.sample_count() - 1);
        let frac = t - j as f64;
        self.dsamples[j] * (1.0 - frac) + self.dsamples[j + 1] * frac
    }

    /// Piecewise-linear interpolant of Psi at `z`.
    pub fn psi(&self, z: f64) -> f64 {
        let n = self.sample_count() as f64;
        let zz = z.rem_euclid(1.0);
        let t = zz * n;
        let j = (t.floor() as usize).min(self.sample_count() - 1);
        let frac = t - j as f64;
        self.samples[j] * (1.0 - frac) + self.samples[j + 1] * frac
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, &v| m.max(v))
    }
}

fn central_differences(samples: &[f64]) -> Vec<f64> {
    let n = samples.len() - 1;
    let dz = 1.0 / n as f64;
    (0..=n)
        .map(|j| {
            let jp = if j >= n { 1 } else { j + 1 };
            let jm = if j == 0 { n - 1 } else { j - 1 };
            (samples[jp] - samples[jm]) / (2.0 * dz)
        })
        .collect()
}

fn slope_energy(samples: &[f64]) -> f64 {
    let n = samples.len() - 1;
    let nf = n as f64;
    samples
        .windows(2)
        .map(|w| {
            let s = (w[1] - w[0]) * nf;
            s * s
        })
        .sum::<f64>()
        / nf
}

fn finalize(kind: RibletKind, mut samples: Vec<f64>) -> Result<RibletProfile, RibletError> {
    let energy = slope_energy(&samples);
    if energy <= 0.0 || !energy.is_finite() {
        return Err(RibletError::NotNormalizable);
    }
    let scale = 1.0 / energy.sqrt();
    let min = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    for v in samples.iter_mut() {
        *v = (*v - min) * scale;
    }
    let norm = slope_energy(&samples);
    let dsamples = central_differences(&samples);
    Ok(RibletProfile { kind, samples, dsamples, norm })
}

/// Build one of the named profiles with `n + 1` samples (n >= 16).
pub fn make_riblet(kind: RibletKind, n: usize) -> Result<RibletProfile, RibletError> {
    if n < 16 {
        return Err(RibletError::TooFewSamples(n));
    }
    let z = |j: usize| j as f64 / n as f64;
    let samples: Vec<f64> = match kind {
        RibletKind::VShape => (0..=n)
            .map(|j| {
                let x = z(j);
                if x <= 0.5 { x } else { 1.0 - x }
            })
            .collect(),
        RibletKind::UShape => {
            let r = 0.5 / USHAPE_HALF_ANGLE.sin();
            (0..=n)
                .map(|j| {
                    let t = ((z(j) - 0.5) / r).asin();
                    r * (1.0 - t.cos())
                })
                .collect()
        }
        RibletKind::Blade => {
            let lo = 0.5 - BLADE_WIDTH / 2.0;
            let hi = 0.5 + BLADE_WIDTH / 2.0;
            let edge = |x: f64| {
                let t = (x / BLADE_SMOOTHING).clamp(0.0, 1.0);
                t * t * (3.0 - 2.0 * t)
            };
            (0..=n)
                .map(|j| {
                    let x = z(j);
                    edge(x - (lo - BLADE_SMOOTHING)) * edge((hi + BLADE_SMOOTHING) - x)
                })
                .collect()
        }
        RibletKind::Custom => return Err(RibletError::BadInput(
            "custom profiles come from samples; use from_samples or parse_custom".into(),
        )),
    };
    finalize(kind, samples)
}

/// Normalize caller-provided samples (n + 1 values, periodic).
pub fn from_samples(samples: Vec<f64>) -> Result<RibletProfile, RibletError> {
    if samples.len() < 17 {
        return Err(RibletError::TooFewSamples(samples.len().saturating_sub(1)));
    }
    let (first, last) = (samples[0], samples[samples.len() - 1]);
    if (first - last).abs() > 1e-9 * (1.0 + first.abs().max(last.abs())) {
        return Err(RibletError::NotPeriodic(first, last));
    }
    finalize(RibletKind::Custom, samples)
}

/// Parse the two-column custom profile format: `z1  Psi` per line on a
/// uniform grid, `#` comments and blank lines allowed.
pub fn parse_custom(text: &str) -> Result<RibletProfile, RibletError> {
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut it = s.split_whitespace();
        let z: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| RibletError::BadInput(format!("line {}: bad z1", i + 1)))?;
        let v: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| RibletError::BadInput(format!("line {}: bad Psi", i + 1)))?;
        if it.next().is_some() {
            return Err(RibletError::BadInput(format!("line {}: extra column", i + 1)));
        }
        rows.push((z, v));
    }
    if rows.len() < 17 {
        return Err(RibletError::TooFewSamples(rows.len().saturating_sub(1)));
    }
    let n = rows.len() - 1;
    for (j, &(z, _)) in rows.iter().enumerate() {
        let want = j as f64 / n as f64;
        if (z - want).abs() > 1e-9 {
            return Err(RibletError::BadInput(format!(
                "grid must be uniform on [0,1]: row {} has z1 = {z}, expected {want}",
                j + 1
            )));
        }
    }
    from_samples(rows.into_iter().map(|(_, v)| v).collect())
}
