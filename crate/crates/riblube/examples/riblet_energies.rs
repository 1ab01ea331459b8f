//! Cell energies of the three built-in riblet profiles.
//!
//! Solves the Stokes cell problem on a refinement ladder for each profile
//! and prints the energy per level next to the spectral reference, then
//! the Laplace energy F for the V-shape.

use riblube::cell::{
    default_samples, make_riblet, reference_energies, solve_laplace_cell, solve_stokes_cell,
    RibletKind, DEFAULT_M_TRUNC,
};

fn main() {
    let specs = [
        (RibletKind::VShape, 3usize),
        (RibletKind::UShape, 1),
        (RibletKind::Blade, 1),
    ];
    for (kind, refine) in specs {
        let n = default_samples(kind);
        let p = make_riblet(kind, n).unwrap();
        let t0 = std::time::Instant::now();
        match solve_stokes_cell(&p, 1.0, DEFAULT_M_TRUNC, refine) {
            Ok(sol) => {
                let (e_ref, _) = reference_energies(&p, 1.0);
                println!(
                    "{kind:?}: n={n} peak={:.4} levels={:?} E={:.4} (spectral {:.4}) dofs={} [{:.1?}]",
                    p.peak(),
                    sol.convergence,
                    sol.e_lambda.unwrap(),
                    e_ref,
                    sol.mesh_stats.dofs,
                    t0.elapsed()
                );
            }
            Err(e) => println!("{kind:?}: {e}"),
        }
    }
    let v = make_riblet(RibletKind::VShape, default_samples(RibletKind::VShape)).unwrap();
    let f = solve_laplace_cell(&v, 1.0, DEFAULT_M_TRUNC, 2).unwrap();
    let (_, f_ref) = reference_energies(&v, 1.0);
    println!(
        "VShape Laplace: F={:.4} (spectral {:.4}, 2E/3={:.4})",
        f.f_lambda.unwrap(),
        f_ref,
        2.0 / 3.0 * reference_energies(&v, 1.0).0
    );
}
