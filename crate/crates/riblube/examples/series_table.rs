//! The second-derivative consistency table of the small-roughness
//! development: central difference of the tabulated flow-factor family at
//! zero amplitude against the closed-form -2 Cj E Theta1, for both wall
//! viscosities.

use riblube::asympt::series_set;
use riblube::coeffs::{theta_with, Formulation, Regime};
use riblube::params::{derive, FluidWallParams};

fn main() {
    let e = 10.0;
    println!("nu_b_bar |  d2/dlambda2 (exact)  |  -2 Cj E Theta1");
    for nub in [0.1, 1.0] {
        let p = FluidWallParams::from_nu_b_bar(0.3, 0.1, nub, 1.0, 1.0).with_delta_slip(1.0);
        let dp = derive(&p);
        let regime = if dp.is_alpha_one() { Regime::CriticalAlphaOne } else { Regime::CriticalGeneral };
        let s = series_set(&dp, e, &[0.0], Formulation::Tabulated).unwrap();
        let step = 1e-3;
        let th = |lam: f64| theta_with(&dp, regime, lam * lam * e, Formulation::Tabulated).unwrap();
        let d2 = (th(step) - 2.0 * th(0.0) + th(-step)) / (step * step);
        println!("{nub:8} | {d2:21.6} | {:15.6}", -2.0 * s.cj * e * s.theta1);
    }
    println!();
    println!("wall-exact family for comparison:");
    for nub in [0.1, 1.0] {
        let p = FluidWallParams::from_nu_b_bar(0.3, 0.1, nub, 1.0, 1.0).with_delta_slip(1.0);
        let dp = derive(&p);
        let regime = if dp.is_alpha_one() { Regime::CriticalAlphaOne } else { Regime::CriticalGeneral };
        let s = series_set(&dp, e, &[0.0], Formulation::WallExact).unwrap();
        let step = 1e-3;
        let th = |lam: f64| theta_with(&dp, regime, lam * lam * e, Formulation::WallExact).unwrap();
        let d2 = (th(step) - 2.0 * th(0.0) + th(-step)) / (step * step);
        println!("{nub:8} | {d2:21.6} | {:15.6}", -2.0 * s.cj * e * s.theta1);
    }
}
