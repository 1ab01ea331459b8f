//! Single squeeze-film run: gap trajectory, half-life, analytic check.

use riblube::asympt::series_set;
use riblube::bearing::{init_eps0, simulate, BearingConfig};
use riblube::coeffs::Formulation;
use riblube::params::{derive, FluidWallParams};

fn main() {
    // smooth wall first: the separable solution gives an exact half-life
    let p = FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0);
    let mut cfg = BearingConfig::new(p, 0.0);
    cfg.formulation = Formulation::WallExact;
    let dp = derive(&cfg.params);
    let s = series_set(&dp, 0.0, &[0.0], cfg.formulation).unwrap();
    let eps0 = init_eps0(&s, cfg.kappa, cfg.eps_max);
    let tr = simulate(&cfg, eps0).unwrap();
    let exact = 3.0 / (2.0 * cfg.chi * s.theta0 * eps0 * eps0);
    println!(
        "E = 0: T_half = {:?} (analytic {exact:.6}), {} rows, monotone = {}",
        tr.t_half,
        tr.rows.len(),
        tr.monotone
    );

    // ribbed wall: the roughness feeds back through lambda = sqrt(kappa eps)
    let mut cfg = BearingConfig::new(
        FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0).with_delta_slip(1.0),
        10.0,
    );
    cfg.formulation = Formulation::Tabulated;
    let dp = derive(&cfg.params);
    let s = series_set(&dp, cfg.e, &[0.0], cfg.formulation).unwrap();
    let eps0 = init_eps0(&s, cfg.kappa, cfg.eps_max);
    let tr = simulate(&cfg, eps0).unwrap();
    println!(
        "E = 10: eps0 = {eps0:.6}, T_half = {:?}, theta(start) = {:.6}, theta(end) = {:.6}",
        tr.t_half,
        tr.rows.first().unwrap().theta,
        tr.rows.last().unwrap().theta
    );
}
