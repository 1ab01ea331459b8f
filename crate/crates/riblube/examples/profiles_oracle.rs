//! Closed-form profiles against the finite-difference ground truth.
//!
//! Solves the wall-law boundary-value problem numerically, compares the
//! wall-exact closed form pointwise, and prints the wall/interior
//! residuals of both formulations.

use riblube::coeffs::{profiles, theta, wall_residuals, Formulation, Regime};
use riblube::oracle::bvp_solve;
use riblube::params::{derive, FluidWallParams};

fn main() {
    let p = FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0);
    let dp = derive(&p);
    let el = 0.7;

    for regime in [Regime::CriticalGeneral, Regime::SuperCritical] {
        let sol = bvp_solve(&dp, regime, el, 2048).unwrap();
        let cf = profiles(&dp, regime, el, &sol.grid).unwrap();
        let mut sup = 0.0f64;
        let mut err = 0.0f64;
        for (i, s) in cf.iter().enumerate() {
            sup = sup.max(s.u1_over_dp.abs()).max(s.w2_over_dp.abs());
            err = err
                .max((s.u1_over_dp - sol.u1[i]).abs())
                .max((s.w2_over_dp - sol.w2[i]).abs());
        }
        let th = theta(&dp, regime, el).unwrap();
        println!(
            "{regime:?}: sup rel err (closed vs FD) = {:.2e}; theta closed {th:.9} vs FD {:.9}",
            err / sup,
            sol.theta_numeric
        );
        for f in [Formulation::WallExact, Formulation::Tabulated] {
            let r = wall_residuals(&dp, regime, el, f).unwrap();
            println!(
                "  {f:?}: top ({:.1e}, {:.1e}) wall ({:.1e}, {:.1e}) ode {:.1e}  [scale {:.2}]",
                r.top_u, r.top_w, r.wall_u, r.wall_w, r.ode_max, r.scale
            );
        }
    }
}
