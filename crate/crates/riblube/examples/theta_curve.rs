//! Flow factor against the roughness amplitude, both formulations.
//!
//! Writes `theta_curve.csv` with the wall-exact and tabulated families and
//! the small-roughness development, for the two wall-viscosity cases.

use riblube::asympt::series_set;
use riblube::coeffs::{theta_with, Formulation, Regime};
use riblube::csvout::CsvDoc;
use riblube::params::{derive, FluidWallParams};

fn main() {
    let e = 10.0;
    // the alpha = 1 attenuation has a pole at C_N E lambda^2 = 1
    // (lambda ~ 0.78 here), so that case sweeps a shorter range
    let cases = [
        ("general", 1.5, FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0)),
        ("alpha_one", 0.7, FluidWallParams::from_nu_b_bar(0.3, 0.1, 1.0, 1.0, 1.0).with_delta_slip(1.0)),
    ];
    let mut doc = CsvDoc::new();
    doc.comment("flow factor vs roughness amplitude, E = 10");
    doc.header(&["case", "lambda", "theta_wall_exact", "theta_tabulated", "development"]);
    for (name, lam_max, p) in cases {
        let dp = derive(&p);
        let regime = if dp.is_alpha_one() { Regime::CriticalAlphaOne } else { Regime::CriticalGeneral };
        let s = series_set(&dp, e, &[0.0], Formulation::Tabulated).unwrap();
        for i in 0..=60 {
            let lam = lam_max * i as f64 / 60.0;
            let el = lam * lam * e;
            let t_we = theta_with(&dp, regime, el, Formulation::WallExact).unwrap();
            let t_tab = theta_with(&dp, regime, el, Formulation::Tabulated).unwrap();
            let dev = s.theta0 - s.cj * e * lam * lam * s.theta1;
            doc.row(&[
                name.to_string(),
                format!("{lam}"),
                format!("{t_we}"),
                format!("{t_tab}"),
                format!("{dev}"),
            ]);
        }
    }
    let path = std::path::Path::new("theta_curve.csv");
    doc.write_atomic(path).unwrap();
    println!("wrote {}", path.display());
}
