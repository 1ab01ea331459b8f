//! Small-roughness developments of the flow factor and profiles.
//!
//! For `E_lambda = lambda^2 E -> 0` the flow factor develops as
//! `Theta_lambda = Theta_0 - C_j E lambda^2 Theta_1 + O(lambda^4)` with
//! `j = alpha` off the alpha = 1 branch and `j = N` on it. The ladder
//! constants (A_i, B_i, L_i) are the expansion of the coefficient pair;
//! they are shared by both formulations. `Theta_1` (and the first-order
//! profile corrections) differ per formulation, mirroring `coeffs`.

use crate::coeffs::{
    profile_fn, theta_b_weight, CoeffsError, Formulation, Modes, Regime,
};
use crate::kernels::{coshm1c, sinhc, sinhm1c};
use crate::params::DerivedParams;
use thiserror::Error;

/// Expansion constants of the coefficient pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ladder {
    General { a0: f64, a1: f64, b0: f64, b1: f64, l0: f64, l1: f64 },
    AlphaOne { a0: f64, a1: f64, b0: f64, b1: f64, l0: f64, l1: f64 },
    /// N = 0: the ladder degenerates; only the closed-form limits remain.
    Newtonian,
}

/// Leading and first-order development data on a y3-grid.
#[derive(Debug, Clone)]
pub struct SeriesSet {
    pub theta0: f64,
    pub theta1: f64,
    /// C_alpha off the alpha = 1 branch, C_N on it, h at N = 0.
    pub cj: f64,
    /// Normalized roughness energy the development was built for.
    pub e: f64,
    pub ladder: Ladder,
    pub grid: Vec<f64>,
    pub v0: Vec<f64>,
    pub v1: Vec<f64>,
    pub varpi0: Vec<f64>,
    pub varpi1: Vec<f64>,
    pub formulation: Formulation,
}

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error(transparent)]
    Coeffs(#[from] CoeffsError),
    #[error("negative roughness energy E = {0}")]
    NegativeEnergy(f64),
    #[error("theta0_zero: |Theta_0| = {0} below 1e-14")]
    Theta0Zero(f64),
}

struct GeneralLadder {
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
    l0: f64,
    l1: f64,
    t_a: f64,
    t_b: f64,
    dt_a: f64,
    dt_b: f64,
    e_a_tab: f64,
}

fn general_ladder(dp: &DerivedParams) -> GeneralLadder {
    let p = &dp.params;
    let n2 = p.n * p.n;
    let h = p.h;
    let om = dp.om();
    let (k, kh, ch, sh, chm1, rb) = (dp.k, dp.kh, dp.ch, dp.sh, dp.chm1, dp.rb);
    let ga = dp.gamma_alpha.expect("general branch");
    let ga2 = 0.5 * ga;
    let r2 = p.rc / (2.0 * om); // 2 N^2/k^2
    let t2sh = 2.0 * n2 * h * sinhc(kh); // (2 N^2/k) sh

    let q0 = -4.0 * n2 * n2 * chm1 + rb * k * k;
    let gs = ga * kh + 2.0 * n2 * sh;
    let a0 = h * q0 - k * sh * (rb - 2.0 * n2 * h * h);
    let a1 = -h * (-4.0 * n2 * n2 * chm1 + 0.5 * rb * k * k)
        - 2.0 * n2 * h * h * k * sh
        + chm1 * n2 * rb / h;
    let b0 = 2.0 * n2 * h * gs + k * (rb - 2.0 * n2 * h * h) * (ch + ga2);
    let b1 = -ga2 * k * (2.0 * n2 * h * h + rb) - sh * (4.0 * n2 * n2 * h + rb * n2 / h)
        + 2.0 * n2 * h * h * k * ch;
    let l0 = 1.0 / ((ga2 + ch) * q0 + 2.0 * n2 * sh * gs);
    let l1 = -4.0 * n2 * n2 * chm1 * (ga + ch + n2 / kh * sh)
        + rb * k * k * (ga2 + n2 / kh * sh)
        + 2.0 * n2 * (sh + n2 / kh * chm1) * gs;

    let t_a = r2 * chm1 - h * t2sh - ga2 * h * h;
    let t_b = theta_b_weight(dp);
    let dt_a = 0.5 * h * t2sh + ga2 * h * h;
    // (2N^2/k) h ch - (1+ch) h N^2/k = N^2 k h^3 coshm1c(kh)
    let dt_b = n2 * k * h * h * h * coshm1c(kh);
    let e_a_tab = -t2sh * (1.0 - h) - ga * h * (1.0 - h);

    GeneralLadder { a0, a1, b0, b1, l0, l1, t_a, t_b, dt_a, dt_b, e_a_tab }
}

struct AlphaOneLadder {
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
    l0: f64,
    l1: f64,
    s_b: f64,
    c_a: f64,
    c_b: f64,
}

fn alpha_one_ladder(dp: &DerivedParams) -> AlphaOneLadder {
    let p = &dp.params;
    let n2 = p.n * p.n;
    let h = p.h;
    let om = dp.om();
    let (k, kh, ch, sh, chm1, rb) = (dp.k, dp.kh, dp.ch, dp.sh, dp.chm1, dp.rb);
    let coth = ch / sh;
    let r2 = p.rc / (2.0 * om);
    let t2sh = 2.0 * n2 * h * sinhc(kh);

    let q0 = -4.0 * n2 * n2 * chm1 + rb * k * k;
    let a0 = h * q0 - k * sh * (rb - 2.0 * n2 * h * h);
    let a1 = h * (-4.0 * n2 * n2 * chm1 + 2.0 * n2 * h * k * sh)
        + rb * k * coth * (-chm1 + k * k * h * h / (2.0 * n2));
    let b0 = 2.0 * n2 * h * h + rb;
    let b1 = 2.0 * n2 * h * h + coth * kh / n2 * rb;
    let l0 = 1.0 / (q0 + 4.0 * n2 * kh * sh);
    let l1 = -4.0 * n2 * n2 * chm1 + coth * k * k * kh / n2 * rb + 4.0 * kh * n2 * sh;

    // sh/k - h ch, stable near k = 0
    let s_b = k * k * h * h * h * (sinhm1c(kh) - coshm1c(kh));
    let g = h * t2sh - r2 * chm1;
    let h_w = -2.0 * n2 * k * h * h * h * (sinhm1c(kh) - coshm1c(kh));
    let c_a = h * h / (2.0 * om) - g / (2.0 * om * ch);
    let c_b = h_w - g * sh / ch;

    AlphaOneLadder { a0, a1, b0, b1, l0, l1, s_b, c_a, c_b }
}

/// Leading/first-order development at the given roughness energy scale.
///
/// `e` is the normalized cell energy; the development variable is
/// `eps = C_j E lambda^2`. `v0`, `varpi0` are the zero-roughness profiles,
/// `v1`, `varpi1` the first-order shape corrections.
pub fn series_set(
    dp: &DerivedParams,
    e: f64,
    grid: &[f64],
    formulation: Formulation,
) -> Result<SeriesSet, SeriesError> {
    if e < 0.0 {
        return Err(SeriesError::NegativeEnergy(e));
    }
    let p = &dp.params;
    let h = p.h;
    let om = dp.om();

    if p.n == 0.0 {
        let theta0 = h * h * h / 3.0;
        let theta1 = match formulation {
            Formulation::WallExact => h * h * h / 4.0,
            Formulation::Tabulated => 3.0 * h * h * h / 4.0,
        };
        let v0: Vec<f64> = grid.iter().map(|&y| 0.5 * (y * y - h * h)).collect();
        let v1: Vec<f64> = match formulation {
            Formulation::WallExact => grid.iter().map(|&y| 0.5 * h * (h - y)).collect(),
            Formulation::Tabulated => grid.iter().map(|&y| 0.5 * (y * h + h * h)).collect(),
        };
        let varpi0 = vec![0.0; grid.len()];
        let varpi1: Vec<f64> = match formulation {
            Formulation::WallExact => vec![0.0; grid.len()],
            Formulation::Tabulated => vec![0.25 * h; grid.len()],
        };
        return Ok(SeriesSet {
            theta0,
            theta1,
            cj: h,
            e,
            ladder: Ladder::Newtonian,
            grid: grid.to_vec(),
            v0,
            v1,
            varpi0,
            varpi1,
            formulation,
        });
    }

    let regime = if dp.is_alpha_one() {
        Regime::CriticalAlphaOne
    } else {
        Regime::CriticalGeneral
    };
    // zero-roughness profiles are shared by both formulations
    let base = profile_fn(dp, regime, 0.0, Formulation::WallExact)?;
    let v0: Vec<f64> = grid.iter().map(|&y| base.u(y)).collect();
    let varpi0: Vec<f64> = grid.iter().map(|&y| base.w(y)).collect();

    if dp.is_alpha_one() {
        let lad = alpha_one_ladder(dp);
        let (a0, a1, b0, b1, l0, l1) = (lad.a0, lad.a1, lad.b0, lad.b1, lad.l0, lad.l1);
        let n2 = p.n * p.n;
        let k = dp.k;
        let theta0 = h * h * h / (3.0 * om) - h * h / (2.0 * om) * l0 * a0
            + n2 / om * lad.s_b * l0 * b0;
        let da_p = -l0 * (a1 - l0 * l1 * a0);
        let db = -k / (2.0 * om) * l0 * (b1 - l0 * l1 * b0);
        let theta1 = match formulation {
            Formulation::WallExact => {
                lad.c_a * l0 * (a1 - l0 * l1 * a0)
                    + lad.c_b * k / (2.0 * om) * l0 * (b1 - l0 * l1 * b0)
            }
            Formulation::Tabulated => {
                let (ch, sh, chm1) = (dp.ch, dp.sh, dp.chm1);
                -h * h / om * (0.5 * h - chm1 / (k * sh))
                    + h * h / (2.0 * om) * l0 * (a1 - l0 * l1 * a0)
                    + h / om * (h - chm1 / (k * sh)) * l0 * a0
                    - n2 / om * lad.s_b * l0 * (b1 - l0 * l1 * b0)
                    - n2 / om * (-h * ch + h + chm1 * chm1 / (k * sh)) * l0 * b0
            }
        };
        let (v1, varpi1) = match formulation {
            Formulation::WallExact => {
                let da = -(db * dp.sh + da_p / (2.0 * om)) / dp.ch;
                let m = Modes::derivative_from_ab(dp, da, db);
                (
                    grid.iter().map(|&y| m.u(y, false)).collect(),
                    grid.iter().map(|&y| m.w(y, false)).collect(),
                )
            }
            Formulation::Tabulated => tabulated_alpha_one_series(dp, da_p, db, grid),
        };
        return Ok(SeriesSet {
            theta0,
            theta1,
            cj: dp.c_n,
            e,
            ladder: Ladder::AlphaOne { a0, a1, b0, b1, l0, l1 },
            grid: grid.to_vec(),
            v0,
            v1,
            varpi0,
            varpi1,
            formulation,
        });
    }

    let lad = general_ladder(dp);
    let (a0, a1, b0, b1, l0, l1) = (lad.a0, lad.a1, lad.b0, lad.b1, lad.l0, lad.l1);
    let theta0 = h * h * h / (3.0 * om)
        + (lad.t_a * l0 * a0 + lad.t_b * l0 * b0) / (2.0 * om);
    let la1 = l0 * (a1 + l0 * l1 * a0);
    let lb1 = l0 * (b1 + l0 * l1 * b0);
    let theta1 = match formulation {
        Formulation::WallExact => {
            h * h * h / (4.0 * om)
                - (lad.t_a * la1 + lad.t_b * lb1 + lad.dt_a * l0 * a0 + lad.dt_b * l0 * b0)
                    / (2.0 * om)
        }
        Formulation::Tabulated => {
            3.0 * h * h * h / (4.0 * om)
                - (lad.t_a * la1
                    + lad.e_a_tab * l0 * a0
                    + lad.t_b * lb1
                    + lad.dt_b * l0 * b0)
                    / (2.0 * om)
        }
    };
    let da = -la1 / (2.0 * om);
    let db = -lb1 / (2.0 * om);
    let (v1, varpi1) = match formulation {
        Formulation::WallExact => {
            let m = Modes::derivative_from_ab(dp, da, db);
            (
                grid.iter().map(|&y| m.u(y, false)).collect(),
                grid.iter().map(|&y| m.w(y, false)).collect(),
            )
        }
        Formulation::Tabulated => {
            tabulated_general_series(dp, -l0 * a0 / (2.0 * om), -l0 * b0 / (2.0 * om), da, db, grid)
        }
    };
    Ok(SeriesSet {
        theta0,
        theta1,
        cj: dp.c_alpha.expect("general branch"),
        e,
        ladder: Ladder::General { a0, a1, b0, b1, l0, l1 },
        grid: grid.to_vec(),
        v0,
        v1,
        varpi0,
        varpi1,
        formulation,
    })
}

/// d/d(eps) of the tabulated grouped profiles, alpha != 1 branch.
fn tabulated_general_series(
    dp: &DerivedParams,
    a_of_0: f64,
    b_of_0: f64,
    da: f64,
    db: f64,
    grid: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let p = &dp.params;
    let n2 = p.n * p.n;
    let h = p.h;
    let om = dp.om();
    let (k, kh, ch, sh, chm1) = (dp.k, dp.kh, dp.ch, dp.sh, dp.chm1);
    let ga = dp.gamma_alpha.expect("general branch");
    let ga2 = 0.5 * ga;
    let t2sh = 2.0 * n2 * h * sinhc(kh);
    let dt2s = (h - 1.0) * (t2sh / h + ga);
    let dw_a = -(ga2 + n2 / kh * sh);
    let dw_b = -chm1 * n2 / kh;
    let mut v1 = Vec::with_capacity(grid.len());
    let mut w1 = Vec::with_capacity(grid.len());
    for &y in grid {
        let ky = k * y;
        let t2s0 = (2.0 * n2 / k) * (ky.sinh() - sh) + ga * (y - h);
        let t2c0 = (2.0 * n2 / k) * (ky.cosh() - ch);
        let dt2c = (2.0 * n2 / k) * chm1 * (1.0 - y / h);
        v1.push(
            dt2s * a_of_0 + t2s0 * da + dt2c * b_of_0 + t2c0 * db
                + (y * h + h * h) / (2.0 * om),
        );
        w1.push(
            dw_a * a_of_0 + (ky.cosh() + ga2) * da + dw_b * b_of_0 + ky.sinh() * db
                + h / (4.0 * om),
        );
    }
    (v1, w1)
}

/// d/d(eps) of the tabulated grouped profiles, alpha = 1 branch.
fn tabulated_alpha_one_series(
    dp: &DerivedParams,
    da_p: f64,
    db_p: f64,
    grid: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let p = &dp.params;
    let n2 = p.n * p.n;
    let h = p.h;
    let om = dp.om();
    let (k, ch, sh, chm1) = (dp.k, dp.ch, dp.sh, dp.chm1);
    let lad = alpha_one_ladder(dp);
    let a_p0 = -lad.l0 * lad.a0;
    let b_p0 = -k / (2.0 * om) * lad.l0 * lad.b0;
    let _ = ch;
    let mut v1 = Vec::with_capacity(grid.len());
    let mut w1 = Vec::with_capacity(grid.len());
    for &y in grid {
        let ky = k * y;
        let shr = ky.sinh() / sh;
        let chr = ky.cosh() / sh;
        let d_tb = -(2.0 * n2 / k) * chm1 * (1.0 - shr);
        let tb0 = (2.0 * n2 / k) * (ky.cosh() - dp.ch);
        let d_poly = -h * h / (2.0 * om) + h * h / om * shr;
        let d_ta = h / om * (shr - 1.0);
        let ta0 = (y - h) / om;
        v1.push(d_tb * b_p0 + tb0 * db_p + d_poly + d_ta * a_p0 + ta0 * da_p);

        let d_sb = chm1 * chr;
        let sb0 = ky.sinh();
        let c_mid = k * h * h / (2.0 * n2 * om) * chr;
        let d_sa = k * h / (2.0 * n2 * om) * chr;
        let sa0 = 1.0 / (2.0 * om);
        w1.push(d_sb * b_p0 + sb0 * db_p + c_mid + d_sa * a_p0 + sa0 * da_p);
    }
    (v1, w1)
}

/// Quadratic pressure profile c * y1 (1 - y1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPressure {
    pub coeff: f64,
}

impl QuadraticPressure {
    pub fn eval(&self, y1: f64) -> f64 {
        self.coeff * y1 * (1.0 - y1)
    }

    /// int_0^1 p dy1 = coeff / 6.
    pub fn integral(&self) -> f64 {
        self.coeff / 6.0
    }
}

/// Leading and first-order pressure split of the development.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureSeries {
    pub p0: QuadraticPressure,
    pub p1: QuadraticPressure,
    /// Development variable C_j E lambda^2 used for composition.
    pub eps: f64,
}

impl PressureSeries {
    /// Composed pressure p0 + eps * p1 at y1.
    pub fn eval(&self, y1: f64) -> f64 {
        self.p0.eval(y1) + self.eps * self.p1.eval(y1)
    }
}

/// Pressure split: p0(y1) = S y1(1-y1)/(2 Theta0), p1 = (Theta1/Theta0) p0.
pub fn pressure_series(
    theta0: f64,
    theta1: f64,
    cj: f64,
    e: f64,
    lambda: f64,
    s: f64,
) -> Result<PressureSeries, SeriesError> {
    if theta0.abs() < 1e-14 {
        return Err(SeriesError::Theta0Zero(theta0.abs()));
    }
    let c0 = s / (2.0 * theta0);
    Ok(PressureSeries {
        p0: QuadraticPressure { coeff: c0 },
        p1: QuadraticPressure { coeff: theta1 / theta0 * c0 },
        eps: cj * e * lambda * lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{profiles_with, theta_with};
    use crate::params::{derive, FluidWallParams};
    use approx::assert_relative_eq;

    fn desk_general() -> DerivedParams {
        derive(&FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0))
    }

    fn desk_alpha_one() -> DerivedParams {
        derive(&FluidWallParams::new(0.3, 0.1, 1.0, 0.1 / 0.18, 1.0))
    }

    fn grid(n: usize, h: f64) -> Vec<f64> {
        (0..=n).map(|i| h * i as f64 / n as f64).collect()
    }

    // Frozen reference values from the 50-digit ladder evaluation.
    #[test]
    fn benchmark_table_values() {
        let e = 10.0;
        let g = grid(8, 1.0);
        let s = series_set(&desk_general(), e, &g, Formulation::Tabulated).unwrap();
        assert_relative_eq!(s.theta0, 0.334279366152, max_relative = 1e-11);
        assert_relative_eq!(s.theta1, 0.798933688650, max_relative = 1e-11);
        assert_relative_eq!(-2.0 * s.cj * e * s.theta1, -17.7345719898, max_relative = 1e-10);

        let s1 = series_set(&desk_alpha_one(), e, &g, Formulation::Tabulated).unwrap();
        assert_relative_eq!(s1.theta0, 0.228308873644, max_relative = 1e-11);
        assert_relative_eq!(s1.theta1, 0.914359248013, max_relative = 1e-11);
        assert_relative_eq!(-2.0 * s1.cj * e * s1.theta1, -2.97109280734, max_relative = 1e-10);
    }

    #[test]
    fn wall_exact_series_values() {
        let g = grid(8, 1.0);
        let s = series_set(&desk_general(), 10.0, &g, Formulation::WallExact).unwrap();
        assert_relative_eq!(s.theta0, 0.334279366152, max_relative = 1e-11);
        assert_relative_eq!(s.theta1, 0.226259855372, max_relative = 1e-10);
        let s1 = series_set(&desk_alpha_one(), 10.0, &g, Formulation::WallExact).unwrap();
        assert_relative_eq!(s1.theta1, 0.696179404511, max_relative = 1e-10);
    }

    #[test]
    fn central_second_difference_matches_minus_2cje_theta1() {
        // reproduces the benchmark-table comparison methodology with step 1e-3
        let e = 10.0;
        let g = grid(4, 1.0);
        let step = 1e-3;
        for (dp, regime) in [
            (desk_general(), Regime::CriticalGeneral),
            (desk_alpha_one(), Regime::CriticalAlphaOne),
        ] {
            for f in [Formulation::WallExact, Formulation::Tabulated] {
                let s = series_set(&dp, e, &g, f).unwrap();
                let th = |lam: f64| theta_with(&dp, regime, lam * lam * e, f).unwrap();
                let d2 = (th(step) - 2.0 * th(0.0) + th(-step)) / (step * step);
                let want = -2.0 * s.cj * e * s.theta1;
                assert_relative_eq!(d2, want, max_relative = 1e-3);
            }
        }
    }

    #[test]
    fn remainder_is_fourth_order() {
        // |Theta_lambda - Theta0 + Cj E lambda^2 Theta1| ~ lambda^4
        let e = 10.0;
        let g = grid(4, 1.0);
        for (dp, regime) in [
            (desk_general(), Regime::CriticalGeneral),
            (desk_alpha_one(), Regime::CriticalAlphaOne),
        ] {
            for f in [Formulation::WallExact, Formulation::Tabulated] {
                let s = series_set(&dp, e, &g, f).unwrap();
                let mut pts = Vec::new();
                for lam in [1e-3, 3e-3, 1e-2, 3e-2, 1e-1] {
                    let th = theta_with(&dp, regime, lam * lam * e, f).unwrap();
                    let rem = (th - s.theta0 + s.cj * e * lam * lam * s.theta1).abs();
                    pts.push((lam.ln(), rem.ln()));
                }
                let m = pts.len() as f64;
                let sx: f64 = pts.iter().map(|p| p.0).sum();
                let sy: f64 = pts.iter().map(|p| p.1).sum();
                let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
                let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
                let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
                assert!(
                    (slope - 4.0).abs() <= 0.2,
                    "{f:?}: remainder slope {slope} not within 4.0 +- 0.2"
                );
            }
        }
    }

    #[test]
    fn zero_energy_makes_the_development_constant() {
        let g = grid(4, 1.0);
        let s = series_set(&desk_general(), 0.0, &g, Formulation::WallExact).unwrap();
        // E = 0: Theta_lambda == Theta0 for all lambda in the development
        for lam in [0.0, 0.3, 1.0] {
            let approx = s.theta0 - s.cj * 0.0 * lam * lam * s.theta1;
            assert_eq!(approx, s.theta0);
        }
    }

    #[test]
    fn leading_profiles_match_zero_roughness_closed_form() {
        let dp = desk_general();
        let g = grid(16, 1.0);
        for f in [Formulation::WallExact, Formulation::Tabulated] {
            let s = series_set(&dp, 10.0, &g, f).unwrap();
            let prof = profiles_with(&dp, Regime::CriticalGeneral, 0.0, &g, f).unwrap();
            for (i, p) in prof.iter().enumerate() {
                assert_relative_eq!(s.v0[i], p.u1_over_dp, max_relative = 1e-12, epsilon = 1e-14);
                assert_relative_eq!(
                    s.varpi0[i],
                    p.w2_over_dp,
                    max_relative = 1e-12,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn profile_series_remainder_is_second_order() {
        // (u(lambda)(1 + eps Theta1/Theta0) - v0)/eps -> v1 + v0 Theta1/Theta0
        // with eps = Cj E lambda^2, remainder O(lambda^2)
        let e = 10.0;
        let g = grid(12, 1.0);
        for (dp, regime) in [
            (desk_general(), Regime::CriticalGeneral),
            (desk_alpha_one(), Regime::CriticalAlphaOne),
        ] {
            for f in [Formulation::WallExact, Formulation::Tabulated] {
                let s = series_set(&dp, e, &g, f).unwrap();
                let ratio = s.theta1 / s.theta0;
                let limit: Vec<f64> = (0..g.len())
                    .map(|i| s.v1[i] + s.v0[i] * ratio)
                    .collect();
                let limit_w: Vec<f64> = (0..g.len())
                    .map(|i| s.varpi1[i] + s.varpi0[i] * ratio)
                    .collect();
                let dev = |lam: f64| -> (f64, f64) {
                    let eps = s.cj * e * lam * lam;
                    let prof = profiles_with(&dp, regime, lam * lam * e, &g, f).unwrap();
                    let mut du = 0.0f64;
                    let mut dw = 0.0f64;
                    for (i, p) in prof.iter().enumerate() {
                        let fu = (p.u1_over_dp * (1.0 + eps * ratio) - s.v0[i]) / eps;
                        let fw = (p.w2_over_dp * (1.0 + eps * ratio) - s.varpi0[i]) / eps;
                        du = du.max((fu - limit[i]).abs());
                        dw = dw.max((fw - limit_w[i]).abs());
                    }
                    (du, dw)
                };
                let (u1, w1) = dev(0.02);
                let (u2, w2) = dev(0.04);
                // halving lambda divides the remainder by ~4
                assert!(u2 / u1 > 2.5 && u2 / u1 < 5.5, "{f:?} u ratio {}", u2 / u1);
                assert!(w2 / w1 > 2.5 && w2 / w1 < 5.5, "{f:?} w ratio {}", w2 / w1);
            }
        }
    }

    #[test]
    fn pressure_split_identities() {
        // S = 0 -> both components vanish
        let z = pressure_series(1.0 / 12.0, 1.0, 1.0, 1.0, 0.1, 0.0).unwrap();
        assert_eq!(z.p0.coeff, 0.0);
        assert_eq!(z.p1.coeff, 0.0);
        // Theta0 = 1/12, S = 1 -> int p0 = 1
        let p = pressure_series(1.0 / 12.0, 1.0, 1.0, 1.0, 0.1, 1.0).unwrap();
        assert_relative_eq!(p.p0.integral(), 1.0, max_relative = 1e-15);
        // p1 Theta0 - p0 Theta1 = 0 pointwise
        let (t0, t1) = (0.37, 0.82);
        let p = pressure_series(t0, t1, 1.1, 10.0, 0.05, 2.3).unwrap();
        for y in [0.0, 0.25, 0.5, 0.9] {
            let r = p.p1.eval(y) * t0 - p.p0.eval(y) * t1;
            assert!(r.abs() <= 1e-14);
        }
        assert!(matches!(
            pressure_series(0.0, 1.0, 1.0, 1.0, 0.1, 1.0),
            Err(SeriesError::Theta0Zero(_))
        ));
    }

    #[test]
    fn newtonian_series_limits() {
        let dp = derive(&FluidWallParams::new(0.0, 0.1, 2.0, 1.0, 1.0));
        let g = grid(4, 1.0);
        let s = series_set(&dp, 10.0, &g, Formulation::WallExact).unwrap();
        assert_relative_eq!(s.theta0, 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(s.theta1, 0.25, max_relative = 1e-15);
        assert_eq!(s.cj, 1.0);
        let st = series_set(&dp, 10.0, &g, Formulation::Tabulated).unwrap();
        assert_relative_eq!(st.theta1, 0.75, max_relative = 1e-15);
    }
}
