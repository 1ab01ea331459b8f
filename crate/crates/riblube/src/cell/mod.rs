//! Homogenization cell problems on the periodic half-strip.
//!
//! The riblet texture enters the effective wall law through two scalar
//! energies: `E_lambda` from a Stokes problem and `F_lambda` from a
//! Laplace problem, both driven by the boundary datum `lambda Psi'(z1)`
//! on the wall of the (truncated) strip `(0,1) x (0, M)`. Profiles only
//! vary in `z1`, so the 2D reduction is exact and the spanwise component
//! never couples (it is not discretized).
//!
//! Two independent routes compute the energies: a Taylor-Hood / P2 finite
//! element solve ([`solve_stokes_cell`], [`solve_laplace_cell`]) and the
//! spectral mode sum ([`fourier::reference_energies`]) that is exact for
//! the piecewise-linear boundary data.

pub mod fem;
pub mod fourier;
pub mod mesh;
pub mod riblet;

pub use fourier::reference_energies;
pub use riblet::{
    default_samples, from_samples, make_riblet, parse_custom, RibletError, RibletKind,
    RibletProfile,
};

use mesh::Mesh;
use thiserror::Error;

/// Default truncation height of the half-strip. The boundary layer decays
/// like `exp(-2 pi z3)`, so the truncation error is far below every other
/// error source.
pub const DEFAULT_M_TRUNC: f64 = 6.0;

#[derive(Debug, Error)]
pub enum CellError {
    #[error(transparent)]
    Riblet(#[from] RibletError),
    #[error(transparent)]
    Solver(#[from] fem::SolverFailure),
    #[error("not_converged: finest levels give {prev} and {last} (diff {diff_pct:.2}%)")]
    NotConverged { prev: f64, last: f64, diff_pct: f64 },
    #[error("m_trunc must be >= 4 (got {0})")]
    TruncationTooShallow(f64),
    #[error("refine must be >= 1")]
    NoRefinement,
}

#[derive(Debug, Clone)]
pub struct MeshStats {
    pub m_trunc: f64,
    pub nx: usize,
    pub nz: usize,
    pub elements: usize,
    pub max_diameter: f64,
    pub dofs: usize,
}

/// Result of a cell solve; exactly one of the two energies is present.
#[derive(Debug, Clone)]
pub struct CellSolution {
    pub e_lambda: Option<f64>,
    pub f_lambda: Option<f64>,
    pub lambda: f64,
    pub mesh_stats: MeshStats,
    /// Energy per refinement level, coarsest first.
    pub convergence: Vec<f64>,
    /// Two independent evaluations of the final energy (quadrature of the
    /// discrete gradient vs stiffness quadratic form).
    pub energy_quadrature: f64,
    pub energy_matrix: f64,
    /// Stokes only: discrete divergence residual.
    pub div_residual: Option<f64>,
    /// (z1, z3, phi1, phi3, q) samples at the vertices of the final mesh.
    pub export: Vec<(f64, f64, f64, f64, f64)>,
}

fn level_mesh(profile: &RibletProfile, m_trunc: f64, level: usize) -> Mesh {
    // base resolution ties the mesh to the data scale; each level doubles
    let n = profile.sample_count();
    let nx0 = n.max(32);
    let nx = nx0 << (level - 1);
    let nz = (nx / 2).max(16);
    Mesh::new(nx, nz, m_trunc)
}

fn check_inputs(m_trunc: f64, refine: usize) -> Result<(), CellError> {
    if m_trunc < 4.0 {
        return Err(CellError::TruncationTooShallow(m_trunc));
    }
    if refine == 0 {
        return Err(CellError::NoRefinement);
    }
    Ok(())
}

/// Solve the Stokes cell problem on a refinement ladder; the returned
/// energy is the finest level's. Errors with `not_converged` when the two
/// finest levels differ by more than 1%.
pub fn solve_stokes_cell(
    profile: &RibletProfile,
    lambda: f64,
    m_trunc: f64,
    refine: usize,
) -> Result<CellSolution, CellError> {
    check_inputs(m_trunc, refine)?;
    let mut convergence = Vec::with_capacity(refine);
    let mut last: Option<(fem::StokesResult, Mesh)> = None;
    for level in 1..=refine {
        let mesh = level_mesh(profile, m_trunc, level);
        let res = fem::solve_stokes(&mesh, profile, lambda)?;
        convergence.push(res.energy_quadrature);
        last = Some((res, mesh));
    }
    let (res, mesh) = last.expect("refine >= 1");
    if convergence.len() >= 2 {
        let prev = convergence[convergence.len() - 2];
        let lastv = convergence[convergence.len() - 1];
        let denom = lastv.abs().max(1e-300);
        let diff_pct = 100.0 * (lastv - prev).abs() / denom;
        if diff_pct > 1.0 {
            return Err(CellError::NotConverged { prev, last: lastv, diff_pct });
        }
    }
    Ok(CellSolution {
        e_lambda: Some(res.energy_quadrature),
        f_lambda: None,
        lambda,
        mesh_stats: MeshStats {
            m_trunc,
            nx: mesh.nx,
            nz: mesh.nz,
            elements: mesh.tris.len(),
            max_diameter: mesh.max_diameter(),
            dofs: res.dofs,
        },
        convergence,
        energy_quadrature: res.energy_quadrature,
        energy_matrix: res.energy_matrix,
        div_residual: Some(res.div_residual),
        export: res.export,
    })
}

/// Solve the Laplace cell problem on a refinement ladder (energy `F`).
pub fn solve_laplace_cell(
    profile: &RibletProfile,
    lambda: f64,
    m_trunc: f64,
    refine: usize,
) -> Result<CellSolution, CellError> {
    check_inputs(m_trunc, refine)?;
    let mut convergence = Vec::with_capacity(refine);
    let mut last: Option<(fem::LaplaceResult, Mesh)> = None;
    for level in 1..=refine {
        let mesh = level_mesh(profile, m_trunc, level);
        let res = fem::solve_laplace(&mesh, profile, lambda)?;
        convergence.push(res.energy_quadrature);
        last = Some((res, mesh));
    }
    let (res, mesh) = last.expect("refine >= 1");
    if convergence.len() >= 2 {
        let prev = convergence[convergence.len() - 2];
        let lastv = convergence[convergence.len() - 1];
        let diff_pct = 100.0 * (lastv - prev).abs() / lastv.abs().max(1e-300);
        if diff_pct > 1.0 {
            return Err(CellError::NotConverged { prev, last: lastv, diff_pct });
        }
    }
    Ok(CellSolution {
        e_lambda: None,
        f_lambda: Some(res.energy_quadrature),
        lambda,
        mesh_stats: MeshStats {
            m_trunc,
            nx: mesh.nx,
            nz: mesh.nz,
            elements: mesh.tris.len(),
            max_diameter: mesh.max_diameter(),
            dofs: res.dofs,
        },
        convergence,
        energy_quadrature: res.energy_quadrature,
        energy_matrix: res.energy_matrix,
        div_residual: None,
        export: res.export,
    })
}
