//! Quasi-static squeeze-film bearing driven by the roughness-corrected
//! flow factor.
//!
//! The gap evolves by `eps'(t) = -chi Theta_{lambda(eps)} eps^3` with the
//! roughness amplitude locked to the gap through `lambda = sqrt(kappa eps)`
//! (so the cell energy seen by the flow factor is `E_lambda = kappa eps E`).
//! Time integration is explicit midpoint (second-order Runge-Kutta);
//! the half-life `T_half` is the first time the gap falls below half its
//! initial value, located by linear interpolation between the bracketing
//! steps.

use crate::asympt::{series_set, SeriesError, SeriesSet};
use crate::coeffs::{theta_with, CoeffsError, Formulation, Regime};
use crate::csvout::{fmt_f64, CsvDoc};
use crate::params::{derive, validate, DerivedParams, FluidWallParams};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BearingError {
    #[error(transparent)]
    Coeffs(#[from] CoeffsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("non_monotone: gap increased at t = {t} (eps = {eps}); Theta went negative")]
    NonMonotone { t: f64, eps: f64 },
    #[error("step_unstable: |d eps| = {deps} exceeds eps/2 = {} at t = {t}", eps / 2.0)]
    StepUnstable { t: f64, eps: f64, deps: f64 },
    #[error("initial gap {eps0} exceeds eps_max {eps_max}")]
    BadInitialGap { eps0: f64, eps_max: f64 },
}

/// Simulation configuration.
#[derive(Debug, Clone)]
pub struct BearingConfig {
    /// Roughness intensity kappa = Lambda^2 / M^3 (>= 0).
    pub kappa: f64,
    /// Load constant chi = 12 T0 V0 W / (L h) (> 0).
    pub chi: f64,
    /// Cap on the initial gap.
    pub eps_max: f64,
    /// Fixed step; `None` resolves the fastest initial timescale with
    /// ~1e3 steps: dt = 1e-3 / (chi Theta0 eps0^2).
    pub dt: Option<f64>,
    /// Horizon; `None` means 1e5 default steps.
    pub t_max: Option<f64>,
    /// Normalized roughness energy of the riblet pattern.
    pub e: f64,
    pub params: FluidWallParams,
    /// Flow-factor variant driving the ODE.
    pub formulation: Formulation,
}

impl BearingConfig {
    pub fn new(params: FluidWallParams, e: f64) -> Self {
        Self {
            kappa: 1.0,
            chi: 1.0,
            eps_max: 0.1,
            dt: None,
            t_max: None,
            e,
            params,
            formulation: Formulation::Tabulated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub eps: f64,
    pub lambda: f64,
    pub theta: f64,
}

#[derive(Debug, Clone)]
pub struct BearingTrajectory {
    pub rows: Vec<TrajectoryRow>,
    /// First time eps < eps0/2, linearly interpolated; `None` if the
    /// horizon was hit first.
    pub t_half: Option<f64>,
    /// True when eps decreased at every accepted step.
    pub monotone: bool,
    pub eps0: f64,
    pub dt: f64,
}

/// Initial gap: eps0 = min(Theta0 / (kappa Cj E Theta1), eps_max); the
/// first argument is the positivity bound of the small-roughness
/// development. Unbounded (kappa = 0, E = 0 or Theta1 <= 0) falls back to
/// eps_max.
pub fn init_eps0(series: &SeriesSet, kappa: f64, eps_max: f64) -> f64 {
    if kappa <= 0.0 || series.e <= 0.0 || series.theta1 <= 0.0 {
        return eps_max;
    }
    let bound = series.theta0 / (kappa * series.cj * series.e * series.theta1);
    bound.min(eps_max)
}

fn regime_for(dp: &DerivedParams) -> Regime {
    if dp.is_alpha_one() {
        Regime::CriticalAlphaOne
    } else {
        Regime::CriticalGeneral
    }
}

fn theta_of_eps(
    dp: &DerivedParams,
    cfg: &BearingConfig,
    eps: f64,
) -> Result<f64, CoeffsError> {
    theta_with(dp, regime_for(dp), cfg.kappa * eps * cfg.e, cfg.formulation)
}

/// Integrate the gap ODE from `eps0`.
///
/// Terminates at `t_max` or once the gap drops below `eps0/4` (the
/// half-life bracketing needs margin below `eps0/2`).
pub fn simulate(cfg: &BearingConfig, eps0: f64) -> Result<BearingTrajectory, BearingError> {
    if eps0 > cfg.eps_max * (1.0 + 1e-12) {
        return Err(BearingError::BadInitialGap { eps0, eps_max: cfg.eps_max });
    }
    let dp = derive(&cfg.params);
    let grid = [0.0];
    let series = series_set(&dp, cfg.e, &grid, cfg.formulation)?;
    let dt = cfg
        .dt
        .unwrap_or_else(|| 1e-3 / (cfg.chi * series.theta0.max(1e-12) * eps0 * eps0));
    let t_max = cfg.t_max.unwrap_or(1e5 * dt);
    let max_steps = (t_max / dt).ceil() as usize;
    let record_every = (max_steps / 4000).max(1);

    let f = |eps: f64| -> Result<f64, CoeffsError> {
        Ok(-cfg.chi * theta_of_eps(&dp, cfg, eps)? * eps * eps * eps)
    };

    let mut rows = Vec::new();
    let mut eps = eps0;
    let mut t = 0.0;
    let mut t_half = None;
    let target = eps0 / 2.0;
    let floor = eps0 / 4.0;
    // non-monotone steps abort with an error, so a returned trajectory is
    // monotone by construction
    let monotone = true;

    rows.push(TrajectoryRow {
        t,
        eps,
        lambda: (cfg.kappa * eps).sqrt(),
        theta: theta_of_eps(&dp, cfg, eps)?,
    });

    for step in 1..=max_steps {
        let k1 = f(eps)?;
        let mid = eps + 0.5 * dt * k1;
        let k2 = f(mid)?;
        let new = eps + dt * k2;
        let t_new = t + dt;
        if new >= eps {
            return Err(BearingError::NonMonotone { t: t_new, eps: new });
        }
        if (new - eps).abs() > 0.5 * eps {
            return Err(BearingError::StepUnstable {
                t: t_new,
                eps,
                deps: (new - eps).abs(),
            });
        }
        if t_half.is_none() && new < target {
            let frac = (eps - target) / (eps - new);
            t_half = Some(t + frac * dt);
        }
        eps = new;
        t = t_new;
        if step % record_every == 0 || eps < floor || step == max_steps {
            rows.push(TrajectoryRow {
                t,
                eps,
                lambda: (cfg.kappa * eps).sqrt(),
                theta: theta_of_eps(&dp, cfg, eps)?,
            });
        }
        if eps < floor {
            break;
        }
    }

    Ok(BearingTrajectory { rows, t_half, monotone, eps0, dt })
}

/// Interpretation factors (Cj E Theta1/Theta0, Theta1/Theta0).
pub fn interpretation_factor(series: &SeriesSet) -> Result<(f64, f64), SeriesError> {
    if series.theta0.abs() < 1e-14 {
        return Err(SeriesError::Theta0Zero(series.theta0.abs()));
    }
    let ratio = series.theta1 / series.theta0;
    Ok((series.cj * series.e * ratio, ratio))
}

/// Parameter grid of a sweep. Every combination of the lists is run;
/// `n_list` must contain 0 (the normalization point).
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub n_list: Vec<f64>,
    pub rc_list: Vec<f64>,
    pub nu_b_bar_list: Vec<f64>,
    pub delta_slip_list: Vec<f64>,
    pub e_list: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub n: f64,
    pub rc: f64,
    pub nu_b_bar: f64,
    pub delta_slip: f64,
    pub e: f64,
    pub kappa: f64,
    pub eps0: f64,
    pub t_half: Option<f64>,
    pub t_half_normalized: Option<f64>,
    pub flags: String,
}

fn sweep_params(n: f64, rc: f64, nu_b_bar: f64, delta_slip: f64, h: f64) -> FluidWallParams {
    if n == 0.0 {
        // wall parameters drop out of the Newtonian flow factor; pick a
        // placeholder alpha inside the gamma window so validation stays clean
        FluidWallParams::new(0.0, rc, 4.0 * h / rc.sqrt(), 1.0, h)
    } else {
        FluidWallParams::from_nu_b_bar(n, rc, nu_b_bar, 1.0, h).with_delta_slip(delta_slip)
    }
}

/// Half-life sweep over the parameter grid, normalized per curve family by
/// the N = 0 value.
///
/// One shared eps0 per (Rc, nu_b_bar, delta_slip, E) family: the minimum
/// over the N-grid of the per-point bound from [`init_eps0`]. The family's
/// curves are then comparable and the development stays positive along
/// each trajectory start.
pub fn sweep(grid: &SweepGrid, cfg: &BearingConfig) -> Vec<SweepRow> {
    assert!(
        grid.n_list.contains(&0.0),
        "N-list must contain the normalization point 0"
    );
    let mut families = Vec::new();
    for &rc in &grid.rc_list {
        for &nub in &grid.nu_b_bar_list {
            for &dslip in &grid.delta_slip_list {
                for &e in &grid.e_list {
                    families.push((rc, nub, dslip, e));
                }
            }
        }
    }
    let results: Vec<Vec<SweepRow>> = families
        .par_iter()
        .map(|&(rc, nub, dslip, e)| {
            let h = cfg.params.h;
            // shared initial gap for the family
            let mut eps0 = cfg.eps_max;
            for &n in &grid.n_list {
                let p = sweep_params(n, rc, nub, dslip, h);
                let dp = derive(&p);
                if let Ok(series) = series_set(&dp, e, &[0.0], cfg.formulation) {
                    eps0 = eps0.min(init_eps0(&series, cfg.kappa, cfg.eps_max));
                }
            }
            let mut rows: Vec<SweepRow> = grid
                .n_list
                .iter()
                .map(|&n| {
                    let p = sweep_params(n, rc, nub, dslip, h);
                    let report = validate(&p);
                    let mut flags: Vec<String> =
                        report.flags.iter().map(|f| f.to_string()).collect();
                    flags.extend(report.violations.iter().map(|v| format!("violated: {v}")));
                    let mut local = cfg.clone();
                    local.params = p;
                    local.e = e;
                    let t_half = match simulate(&local, eps0) {
                        Ok(tr) => tr.t_half,
                        Err(err) => {
                            flags.push(format!("sim: {err}"));
                            None
                        }
                    };
                    SweepRow {
                        n,
                        rc,
                        nu_b_bar: nub,
                        delta_slip: dslip,
                        e,
                        kappa: cfg.kappa,
                        eps0,
                        t_half,
                        t_half_normalized: None,
                        flags: flags.join("; "),
                    }
                })
                .collect();
            let base = rows
                .iter()
                .find(|r| r.n == 0.0)
                .and_then(|r| r.t_half)
                .filter(|t| *t > 0.0);
            if let Some(base) = base {
                for r in rows.iter_mut() {
                    r.t_half_normalized = r.t_half.map(|t| t / base);
                }
            }
            rows
        })
        .collect();
    results.into_iter().flatten().collect()
}

/// Render sweep rows in the stable CSV schema.
pub fn sweep_csv(rows: &[SweepRow], doc: &mut CsvDoc) {
    doc.header(&[
        "N",
        "Rc",
        "nu_b_bar",
        "delta_slip",
        "E",
        "kappa",
        "eps0",
        "T_half",
        "T_half_normalized",
        "flags",
    ]);
    for r in rows {
        let t = r.t_half.map(fmt_f64).unwrap_or_else(|| "not_reached".into());
        let tn = r
            .t_half_normalized
            .map(fmt_f64)
            .unwrap_or_else(|| "not_reached".into());
        doc.row(&[
            fmt_f64(r.n),
            fmt_f64(r.rc),
            fmt_f64(r.nu_b_bar),
            fmt_f64(r.delta_slip),
            fmt_f64(r.e),
            fmt_f64(r.kappa),
            fmt_f64(r.eps0),
            t,
            tn,
            format!("\"{}\"", r.flags),
        ]);
    }
}
