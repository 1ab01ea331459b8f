//! Taylor-Hood Stokes and P2 Laplace solves on the truncated cell strip.
//!
//! Stokes: find (phi1, phi3, q) with
//!   a(phi, v) + b(v, q) = 0, b(phi, r) = 0,
//! a the componentwise gradient form, b(v, r) = -int r div v; Dirichlet
//! phi3 = lambda Psi'(z1) at the wall, phi1 natural there, both components
//! zero at the truncation height; periodic in z1 through node
//! identification.
//!
//! The pressure gauge is fixed by pinning one pressure node during the
//! solve and shifting to the zero-mean representative afterwards. The
//! constant mode is invisible to every velocity test function (they all
//! have zero boundary flux), so the velocity field and the energy are
//! unaffected; a mean-zero multiplier column would instead couple every
//! pressure unknown and ruins the sparse LU fill-in.
//!
//! The sparse saddle-point system goes to a direct LU factorization.

use super::mesh::{bary_gradients, p2_grad, Mesh, TRI_QUAD};
use super::riblet::RibletProfile;
use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Lu, SymbolicLu};
use faer::sparse::{SparseColMat, Triplet};

pub struct StokesResult {
    /// Dirichlet energy by direct quadrature of the discrete gradient.
    pub energy_quadrature: f64,
    /// The same energy as the stiffness quadratic form u^T K u.
    pub energy_matrix: f64,
    /// max_r |b(phi, r) + mu (1, r)|: discrete divergence residual.
    pub div_residual: f64,
    pub dofs: usize,
    /// (z1, z3, phi1, phi3, q) at the pressure vertices.
    pub export: Vec<(f64, f64, f64, f64, f64)>,
}

pub struct LaplaceResult {
    pub energy_quadrature: f64,
    pub energy_matrix: f64,
    pub dofs: usize,
    pub export: Vec<(f64, f64, f64, f64, f64)>,
}

#[derive(Debug, thiserror::Error)]
#[error("solver_failure: {0}")]
pub struct SolverFailure(pub String);

enum Dof {
    Free(usize),
    Fixed(f64),
}

struct DofMap {
    map: Vec<Dof>,
    n_free: usize,
}

impl DofMap {
    fn new(total: usize) -> Self {
        Self { map: (0..total).map(|_| Dof::Fixed(f64::NAN)).collect(), n_free: 0 }
    }

    fn build(total: usize, fixed: impl Fn(usize) -> Option<f64>) -> Self {
        let mut dm = DofMap::new(total);
        let mut free = 0;
        for i in 0..total {
            dm.map[i] = match fixed(i) {
                Some(v) => Dof::Fixed(v),
                None => {
                    let id = free;
                    free += 1;
                    Dof::Free(id)
                }
            };
        }
        dm.n_free = free;
        dm
    }
}

fn wall_datum(profile: &RibletProfile, lambda: f64, x: f64) -> f64 {
    lambda * profile.dpsi(x)
}

/// Solve the Stokes cell problem on the given mesh.
pub fn solve_stokes(
    mesh: &Mesh,
    profile: &RibletProfile,
    lambda: f64,
) -> Result<StokesResult, SolverFailure> {
    let np2 = mesh.n_p2();
    let np1 = mesh.n_p1();
    let w = 2 * mesh.nx;
    let top: Vec<usize> = mesh.top_p2();

    // global unknown layout: [u1 (P2), u3 (P2), p (P1)]
    let total = 2 * np2 + np1;
    let u1_of = |n: usize| n;
    let u3_of = |n: usize| np2 + n;
    let p_of = |n: usize| 2 * np2 + n;
    // gauge: pin the pressure at the last vertex (top row, away from the wall)
    let pinned_p = p_of(np1 - 1);

    let top_start = top[0];
    let dm = DofMap::build(total, |ix| {
        if ix < np2 {
            // u1: zero at the truncation boundary, natural at the wall
            if ix >= top_start {
                Some(0.0)
            } else {
                None
            }
        } else if ix < 2 * np2 {
            let n = ix - np2;
            if n >= top_start {
                Some(0.0)
            } else if n < w {
                // wall: Dirichlet normal datum
                Some(wall_datum(profile, lambda, mesh.p2_xy[n].0))
            } else {
                None
            }
        } else if ix == pinned_p {
            Some(0.0)
        } else {
            None
        }
    });

    let nf = dm.n_free;
    let mut trips: Vec<Triplet<usize, usize, f64>> = Vec::new();
    let mut rhs = vec![0.0f64; nf];

    let push = |dm: &DofMap, rhs: &mut Vec<f64>, trips: &mut Vec<Triplet<usize, usize, f64>>, gi: usize, gj: usize, v: f64| {
        if v == 0.0 {
            return;
        }
        match (&dm.map[gi], &dm.map[gj]) {
            (Dof::Free(i), Dof::Free(j)) => trips.push(Triplet::new(*i, *j, v)),
            (Dof::Free(i), Dof::Fixed(g)) => rhs[*i] -= v * g,
            _ => {}
        }
    };

    for tri in &mesh.tris {
        let (gl, area) = bary_gradients(tri.verts);
        // stiffness (6x6) and divergence coupling (3 x 6 per component)
        let mut k_loc = [[0.0f64; 6]; 6];
        let mut bx = [[0.0f64; 6]; 3];
        let mut bz = [[0.0f64; 6]; 3];
        for (l, wq) in TRI_QUAD {
            let grads = p2_grad(l, gl);
            let wgt = wq * area;
            for i in 0..6 {
                for j in 0..6 {
                    k_loc[i][j] += wgt * (grads[i].0 * grads[j].0 + grads[i].1 * grads[j].1);
                }
            }
            // P1 basis values are the barycentric coords
            for r in 0..3 {
                for j in 0..6 {
                    bx[r][j] -= wgt * l[r] * grads[j].0;
                    bz[r][j] -= wgt * l[r] * grads[j].1;
                }
            }
        }
        for i in 0..6 {
            let gi1 = u1_of(tri.p2[i]);
            let gi3 = u3_of(tri.p2[i]);
            for j in 0..6 {
                push(&dm, &mut rhs, &mut trips, gi1, u1_of(tri.p2[j]), k_loc[i][j]);
                push(&dm, &mut rhs, &mut trips, gi3, u3_of(tri.p2[j]), k_loc[i][j]);
            }
            for r in 0..3 {
                let gp = p_of(tri.p1[r]);
                // b(v, q) in the momentum rows, b(u, r) in the constraint rows
                push(&dm, &mut rhs, &mut trips, gi1, gp, bx[r][i]);
                push(&dm, &mut rhs, &mut trips, gi3, gp, bz[r][i]);
                push(&dm, &mut rhs, &mut trips, gp, gi1, bx[r][i]);
                push(&dm, &mut rhs, &mut trips, gp, gi3, bz[r][i]);
            }
        }
    }

    let x = sparse_solve(nf, &trips, &rhs)?;

    // reassemble full nodal vectors (free + boundary values)
    let full = |ix: usize| -> f64 {
        match &dm.map[ix] {
            Dof::Free(i) => x[*i],
            Dof::Fixed(g) => *g,
        }
    };
    let u1: Vec<f64> = (0..np2).map(|n| full(u1_of(n))).collect();
    let u3: Vec<f64> = (0..np2).map(|n| full(u3_of(n))).collect();
    let mut p: Vec<f64> = (0..np1).map(|n| full(p_of(n))).collect();

    // energy two ways + divergence residual
    let mut e_quad = 0.0f64;
    let mut e_mat = 0.0f64;
    let mut div_r = vec![0.0f64; np1];
    for tri in &mesh.tris {
        let (gl, area) = bary_gradients(tri.verts);
        let mut k_loc = [[0.0f64; 6]; 6];
        for (l, wq) in TRI_QUAD {
            let grads = p2_grad(l, gl);
            let wgt = wq * area;
            let mut g1 = (0.0, 0.0);
            let mut g3 = (0.0, 0.0);
            for i in 0..6 {
                let c1 = u1[tri.p2[i]];
                let c3 = u3[tri.p2[i]];
                g1.0 += c1 * grads[i].0;
                g1.1 += c1 * grads[i].1;
                g3.0 += c3 * grads[i].0;
                g3.1 += c3 * grads[i].1;
            }
            e_quad += wgt * (g1.0 * g1.0 + g1.1 * g1.1 + g3.0 * g3.0 + g3.1 * g3.1);
            let div = g1.0 + g3.1;
            for r in 0..3 {
                div_r[tri.p1[r]] += wgt * l[r] * div;
            }
            for i in 0..6 {
                for j in 0..6 {
                    k_loc[i][j] += wgt * (grads[i].0 * grads[j].0 + grads[i].1 * grads[j].1);
                }
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                e_mat += k_loc[i][j]
                    * (u1[tri.p2[i]] * u1[tri.p2[j]] + u3[tri.p2[i]] * u3[tri.p2[j]]);
            }
        }
    }
    // shift the pressure to its zero-mean representative
    let mut mass = vec![0.0f64; np1];
    for tri in &mesh.tris {
        let (_, area) = bary_gradients(tri.verts);
        for r in 0..3 {
            mass[tri.p1[r]] += area / 3.0;
        }
    }
    let total_mass: f64 = mass.iter().sum();
    let p_mean: f64 = p.iter().zip(&mass).map(|(pv, m)| pv * m).sum::<f64>() / total_mass;
    for pv in p.iter_mut() {
        *pv -= p_mean;
    }
    // the pinned row replaces one divergence equation; its residual is the
    // compatibility defect of the datum and belongs in the report
    let mut div_residual = 0.0f64;
    for n in 0..np1 {
        div_residual = div_residual.max(div_r[n].abs());
    }

    let export: Vec<(f64, f64, f64, f64, f64)> = (0..np1)
        .map(|n| {
            let (x1, z3) = mesh.p1_xy[n];
            let j = n / mesh.nx;
            let i = n % mesh.nx;
            let p2n = (2 * j) * w + 2 * i;
            (x1, z3, u1[p2n], u3[p2n], p[n])
        })
        .collect();

    Ok(StokesResult {
        energy_quadrature: e_quad,
        energy_matrix: e_mat,
        div_residual,
        dofs: nf,
        export,
    })
}

/// Solve the scalar Laplace cell problem (harmonic extension of the wall
/// datum) and return its Dirichlet energy.
pub fn solve_laplace(
    mesh: &Mesh,
    profile: &RibletProfile,
    lambda: f64,
) -> Result<LaplaceResult, SolverFailure> {
    let np2 = mesh.n_p2();
    let w = 2 * mesh.nx;
    let top_start = mesh.top_p2()[0];
    let dm = DofMap::build(np2, |n| {
        if n >= top_start {
            Some(0.0)
        } else if n < w {
            Some(wall_datum(profile, lambda, mesh.p2_xy[n].0))
        } else {
            None
        }
    });
    let nf = dm.n_free;
    let mut trips: Vec<Triplet<usize, usize, f64>> = Vec::new();
    let mut rhs = vec![0.0f64; nf];

    for tri in &mesh.tris {
        let (gl, area) = bary_gradients(tri.verts);
        let mut k_loc = [[0.0f64; 6]; 6];
        for (l, wq) in TRI_QUAD {
            let grads = p2_grad(l, gl);
            let wgt = wq * area;
            for i in 0..6 {
                for j in 0..6 {
                    k_loc[i][j] += wgt * (grads[i].0 * grads[j].0 + grads[i].1 * grads[j].1);
                }
            }
        }
        for i in 0..6 {
            match dm.map[tri.p2[i]] {
                Dof::Free(fi) => {
                    for j in 0..6 {
                        match dm.map[tri.p2[j]] {
                            Dof::Free(fj) => trips.push(Triplet::new(fi, fj, k_loc[i][j])),
                            Dof::Fixed(g) => rhs[fi] -= k_loc[i][j] * g,
                        }
                    }
                }
                Dof::Fixed(_) => {}
            }
        }
    }

    let x = sparse_solve(nf, &trips, &rhs)?;
    let full = |n: usize| -> f64 {
        match &dm.map[n] {
            Dof::Free(i) => x[*i],
            Dof::Fixed(g) => *g,
        }
    };
    let phi: Vec<f64> = (0..np2).map(full).collect();

    let mut e_quad = 0.0f64;
    let mut e_mat = 0.0f64;
    for tri in &mesh.tris {
        let (gl, area) = bary_gradients(tri.verts);
        let mut k_loc = [[0.0f64; 6]; 6];
        for (l, wq) in TRI_QUAD {
            let grads = p2_grad(l, gl);
            let wgt = wq * area;
            let mut g = (0.0, 0.0);
            for i in 0..6 {
                g.0 += phi[tri.p2[i]] * grads[i].0;
                g.1 += phi[tri.p2[i]] * grads[i].1;
            }
            e_quad += wgt * (g.0 * g.0 + g.1 * g.1);
            for i in 0..6 {
                for j in 0..6 {
                    k_loc[i][j] += wgt * (grads[i].0 * grads[j].0 + grads[i].1 * grads[j].1);
                }
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                e_mat += k_loc[i][j] * phi[tri.p2[i]] * phi[tri.p2[j]];
            }
        }
    }

    let export: Vec<(f64, f64, f64, f64, f64)> = (0..mesh.n_p1())
        .map(|n| {
            let (x1, z3) = mesh.p1_xy[n];
            let j = n / mesh.nx;
            let i = n % mesh.nx;
            let p2n = (2 * j) * w + 2 * i;
            (x1, z3, 0.0, phi[p2n], 0.0)
        })
        .collect();

    Ok(LaplaceResult { energy_quadrature: e_quad, energy_matrix: e_mat, dofs: nf, export })
}

fn sparse_solve(
    n: usize,
    trips: &[Triplet<usize, usize, f64>],
    rhs: &[f64],
) -> Result<Vec<f64>, SolverFailure> {
    let timing = std::env::var_os("RIBLUBE_TIMING").is_some();
    let t0 = std::time::Instant::now();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, trips)
        .map_err(|e| SolverFailure(format!("assembly: {e:?}")))?;
    let t1 = std::time::Instant::now();
    let sym = SymbolicLu::try_new(mat.symbolic())
        .map_err(|e| SolverFailure(format!("symbolic: {e:?}")))?;
    let t2 = std::time::Instant::now();
    let lu = Lu::try_new_with_symbolic(sym, mat.as_ref())
        .map_err(|e| SolverFailure(format!("numeric: {e:?}")))?;
    let t3 = std::time::Instant::now();
    let b = faer::Mat::<f64>::from_fn(n, 1, |i, _| rhs[i]);
    let x = lu.solve(&b);
    if timing {
        eprintln!(
            "sparse_solve n={n} nnz={} triplets: build {:?} symbolic {:?} numeric {:?} solve {:?}",
            trips.len(), t1 - t0, t2 - t1, t3 - t2, t3.elapsed()
        );
    }
    let out: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(SolverFailure("non-finite solution".into()));
    }
    Ok(out)
}
