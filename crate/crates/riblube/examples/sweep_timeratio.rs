//! Half-life sweep families: T_half(N) normalized by the Newtonian value.
//!
//! Reproduces the qualitative behavior of the reference figure families:
//! strong sensitivity to the microrotation scale Rc at E = 10, near
//! insensitivity to the relative boundary viscosity at E = 0.

use riblube::bearing::{sweep, sweep_csv, BearingConfig, SweepGrid};
use riblube::csvout::CsvDoc;
use riblube::params::FluidWallParams;

fn main() {
    let grid = SweepGrid {
        n_list: (0..=14).map(|i| 0.05 * i as f64).collect(),
        rc_list: vec![0.025, 0.05, 0.1, 0.2],
        nu_b_bar_list: vec![0.1],
        delta_slip_list: vec![1.0],
        e_list: vec![10.0],
    };
    let cfg = BearingConfig::new(FluidWallParams::new(0.0, 0.1, 1.0, 1.0, 1.0), 10.0);
    let rows = sweep(&grid, &cfg);
    let mut doc = CsvDoc::new();
    doc.comment("half-life sweep, E = 10, nu_b_bar = 0.1, delta_slip = 1");
    sweep_csv(&rows, &mut doc);
    let path = std::path::Path::new("sweep_timeratio.csv");
    doc.write_atomic(path).unwrap();
    println!("wrote {}", path.display());

    for rc in [0.025, 0.2] {
        let last = rows
            .iter()
            .filter(|r| r.rc == rc)
            .max_by(|a, b| a.n.partial_cmp(&b.n).unwrap())
            .unwrap();
        println!(
            "Rc = {rc}: T_half(0.7)/T_half(0) = {:?}",
            last.t_half_normalized
        );
    }
}
