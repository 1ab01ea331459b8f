//! Independent finite-difference solver for the coupled two-point
//! boundary-value problem behind the closed forms.
//!
//! Per unit pressure gradient the shapes satisfy
//!
//! ```text
//!   -u'' + 2 N^2 w' = -1
//!   -R_c w'' + 4 N^2 w - 2 N^2 u' = 0        on (0, h)
//! ```
//!
//! with `u(h) = w(h) = 0` and, at the wall, either the critical Robin pair
//! `u'(0) = (2/alpha) w(0) + E u(0)`, `R_c w'(0) = -2 N^2 beta u(0)` or the
//! super-critical pair `u(0) = 0`, `w'(0) = 0`. Everything is second-order:
//! central differences inside, ghost-node elimination of the Robin data,
//! one-sided second-order `u'(0)` where a ghost is unavailable.
//!
//! This module is the ground truth the closed forms are checked against;
//! no code is shared with `coeffs`.

use crate::banded::{BandMatrix, SingularSystem};
use crate::coeffs::Regime;
use crate::params::DerivedParams;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("singular_system: {0}")]
    Singular(#[from] SingularSystem),
    #[error("node count must be an even integer >= 64, got {0}")]
    BadGrid(usize),
}

/// Nodal solution of the wall-law BVP on a uniform grid.
#[derive(Debug, Clone)]
pub struct BvpSolution {
    pub grid: Vec<f64>,
    pub u1: Vec<f64>,
    pub w2: Vec<f64>,
    /// -int_0^h u1 dy3 by composite Simpson.
    pub theta_numeric: f64,
}

/// Solve the BVP with `n` intervals (even, >= 64).
pub fn bvp_solve(
    dp: &DerivedParams,
    regime: Regime,
    e_lambda: f64,
    n: usize,
) -> Result<BvpSolution, OracleError> {
    if n < 64 || n % 2 != 0 {
        return Err(OracleError::BadGrid(n));
    }
    let p = &dp.params;
    let n2 = p.n * p.n;
    let h = p.h;
    let d = h / n as f64;
    let el = if regime == Regime::SubCritical { 0.0 } else { e_lambda };
    let sup = regime == Regime::SuperCritical;

    let iu = |i: usize| 2 * i;
    let iw = |i: usize| 2 * i + 1;
    let m = 2 * (n + 1);
    let mut mat = BandMatrix::new(m, 3, 3);
    let mut rhs = vec![0.0; m];

    // interior rows
    for i in 1..n {
        // -u'' + 2 N^2 w' = -1
        mat.add(iu(i), iu(i - 1), -1.0 / (d * d));
        mat.add(iu(i), iu(i), 2.0 / (d * d));
        mat.add(iu(i), iu(i + 1), -1.0 / (d * d));
        mat.add(iu(i), iw(i + 1), n2 / d);
        mat.add(iu(i), iw(i - 1), -n2 / d);
        rhs[iu(i)] = -1.0;
        // -Rc w'' + 4 N^2 w - 2 N^2 u' = 0
        mat.add(iw(i), iw(i - 1), -p.rc / (d * d));
        mat.add(iw(i), iw(i), 2.0 * p.rc / (d * d) + 4.0 * n2);
        mat.add(iw(i), iw(i + 1), -p.rc / (d * d));
        mat.add(iw(i), iu(i + 1), -n2 / d);
        mat.add(iw(i), iu(i - 1), n2 / d);
    }

    // top Dirichlet
    mat.set(iu(n), iu(n), 1.0);
    mat.set(iw(n), iw(n), 1.0);

    if sup {
        // u(0) = 0
        mat.set(iu(0), iu(0), 1.0);
        // w-equation at the wall with w_{-1} = w_1 (from w'(0) = 0) and a
        // second-order one-sided u'(0)
        mat.add(iw(0), iw(1), -2.0 * p.rc / (d * d));
        mat.add(iw(0), iw(0), 2.0 * p.rc / (d * d) + 4.0 * n2);
        mat.add(iw(0), iu(0), -2.0 * n2 * (-3.0) / (2.0 * d));
        mat.add(iw(0), iu(1), -2.0 * n2 * 4.0 / (2.0 * d));
        mat.add(iw(0), iu(2), -2.0 * n2 * (-1.0) / (2.0 * d));
    } else {
        // ghost values from the two Robin conditions:
        //   u_{-1} = u_1 - 2 d ((2/alpha) w_0 + E u_0)
        //   w_{-1} = w_1 + c_w u_0 with c_w = 4 N^2 beta d / R_c
        let cw = 4.0 * n2 * p.beta * d / p.rc;
        // u-equation at the wall
        mat.add(iu(0), iu(1), -2.0 / (d * d));
        mat.add(iu(0), iu(0), 2.0 / (d * d));
        mat.add(iu(0), iw(0), (2.0 / d) * (2.0 / p.alpha));
        mat.add(iu(0), iu(0), (2.0 / d) * el);
        mat.add(iu(0), iu(0), -n2 * cw / d);
        rhs[iu(0)] = -1.0;
        // w-equation at the wall
        mat.add(iw(0), iw(1), -2.0 * p.rc / (d * d));
        mat.add(iw(0), iw(0), 2.0 * p.rc / (d * d) + 4.0 * n2);
        mat.add(iw(0), iu(0), -p.rc * cw / (d * d));
        mat.add(iw(0), iw(0), -4.0 * n2 / p.alpha);
        mat.add(iw(0), iu(0), -2.0 * n2 * el);
    }

    let lu = mat.factor()?;
    lu.solve(&mut rhs);

    let grid: Vec<f64> = (0..=n).map(|i| h * i as f64 / n as f64).collect();
    let u1: Vec<f64> = (0..=n).map(|i| rhs[iu(i)]).collect();
    let w2: Vec<f64> = (0..=n).map(|i| rhs[iw(i)]).collect();

    // composite Simpson for -int u
    let mut s = u1[0] + u1[n];
    for (i, &v) in u1.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    let theta_numeric = -s * d / 3.0;

    Ok(BvpSolution { grid, u1, w2, theta_numeric })
}

/// Richardson pair: solve at `n` and `n/2`, return the extrapolated flow
/// factor and the error estimate of the fine solve.
pub fn richardson(
    dp: &DerivedParams,
    regime: Regime,
    e_lambda: f64,
    n: usize,
) -> Result<(f64, f64), OracleError> {
    let fine = bvp_solve(dp, regime, e_lambda, n)?;
    let coarse = bvp_solve(dp, regime, e_lambda, n / 2)?;
    let diff = fine.theta_numeric - coarse.theta_numeric;
    Ok((fine.theta_numeric + diff / 3.0, (diff / 3.0).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{profiles, theta};
    use crate::params::{derive, FluidWallParams};
    use approx::assert_relative_eq;

    fn desk() -> DerivedParams {
        derive(&FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0))
    }

    #[test]
    fn matches_wall_exact_closed_form() {
        let dp = desk();
        for (regime, el) in [
            (Regime::CriticalGeneral, 0.7),
            (Regime::CriticalGeneral, 0.0),
            (Regime::SuperCritical, 0.0),
        ] {
            let sol = bvp_solve(&dp, regime, el, 4096).unwrap();
            let th = theta(&dp, regime, el).unwrap();
            assert_relative_eq!(sol.theta_numeric, th, max_relative = 1e-6);
            let cf = profiles(&dp, regime, el, &sol.grid).unwrap();
            let sup_ref = cf
                .iter()
                .map(|s| s.u1_over_dp.abs().max(s.w2_over_dp.abs()))
                .fold(0.0f64, f64::max);
            let mut err = 0.0f64;
            for (i, s) in cf.iter().enumerate() {
                err = err
                    .max((s.u1_over_dp - sol.u1[i]).abs())
                    .max((s.w2_over_dp - sol.w2[i]).abs());
            }
            assert!(err / sup_ref <= 1e-6, "{regime:?} el={el}: {}", err / sup_ref);
        }
    }

    #[test]
    fn alpha_one_branch_matches() {
        let dp = derive(&FluidWallParams::new(0.3, 0.1, 1.0, 0.1 / 0.18, 1.0));
        let sol = bvp_solve(&dp, Regime::CriticalAlphaOne, 0.5, 4096).unwrap();
        let th = theta(&dp, Regime::CriticalAlphaOne, 0.5).unwrap();
        assert_relative_eq!(sol.theta_numeric, th, max_relative = 1e-6);
    }

    #[test]
    fn grid_convergence_is_second_order() {
        let dp = desk();
        let reference = bvp_solve(&dp, Regime::CriticalGeneral, 0.7, 8192)
            .unwrap()
            .theta_numeric;
        let mut errs = Vec::new();
        for n in [128usize, 256, 512, 1024] {
            let th = bvp_solve(&dp, Regime::CriticalGeneral, 0.7, n)
                .unwrap()
                .theta_numeric;
            errs.push(((n as f64).ln(), (th - reference).abs().ln()));
        }
        // least-squares slope of ln err vs ln n
        let m = errs.len() as f64;
        let sx: f64 = errs.iter().map(|e| e.0).sum();
        let sy: f64 = errs.iter().map(|e| e.1).sum();
        let sxx: f64 = errs.iter().map(|e| e.0 * e.0).sum();
        let sxy: f64 = errs.iter().map(|e| e.0 * e.1).sum();
        let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        assert!(
            (-slope - 2.0).abs() <= 0.2,
            "convergence slope {} not within 2.0 +- 0.2",
            -slope
        );
    }

    #[test]
    fn newtonian_continuity_at_fixed_wall_parameters() {
        // N -> 0 with (alpha, beta) fixed: w decouples and u goes Newtonian
        let tiny = derive(&FluidWallParams::new(1e-6, 0.1, 2.0, 1.5, 1.0));
        let zero = derive(&FluidWallParams::new(0.0, 0.1, 2.0, 1.5, 1.0));
        let el = 0.8;
        let sol = bvp_solve(&tiny, Regime::CriticalGeneral, el, 1024).unwrap();
        let nf = profiles(&zero, Regime::CriticalGeneral, el, &sol.grid).unwrap();
        let mut err = 0.0f64;
        for (i, s) in nf.iter().enumerate() {
            err = err.max((s.u1_over_dp - sol.u1[i]).abs());
        }
        assert!(err < 1e-5, "u mismatch {err}");
        let wmax = sol.w2.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        assert!(wmax < 1e-5, "w should decouple, got {wmax}");
        let th0 = theta(&zero, Regime::CriticalGeneral, el).unwrap();
        let th1 = theta(&tiny, Regime::CriticalGeneral, el).unwrap();
        assert_relative_eq!(th0, th1, max_relative = 1e-8);
    }

    #[test]
    fn richardson_reports_consistent_estimate() {
        let dp = desk();
        let (extrap, est) = richardson(&dp, Regime::CriticalGeneral, 0.7, 1024).unwrap();
        let truth = theta(&dp, Regime::CriticalGeneral, 0.7).unwrap();
        assert!((extrap - truth).abs() <= 10.0 * est.max(1e-12));
    }

    #[test]
    fn rejects_bad_grids() {
        let dp = desk();
        assert!(bvp_solve(&dp, Regime::CriticalGeneral, 0.0, 63).is_err());
        assert!(bvp_solve(&dp, Regime::CriticalGeneral, 0.0, 65).is_err());
    }
}
