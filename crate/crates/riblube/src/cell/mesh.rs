//! Structured periodic Taylor-Hood mesh on the truncated half-strip
//! `(0,1) x (0, M)`.
//!
//! `nx` uniform columns (periodic), `nz` rows graded quadratically toward
//! the wall (`z_j = M (j/nz)^2`), each rectangle split into two triangles.
//! Velocity nodes (P2) live on the doubled grid; the mid z-levels are the
//! geometric midpoints so the affine P2 element sees true edge midpoints.
//! Pressure nodes (P1) are the rectangle corners.

/// One triangle: P2 node ids (vertices a, b, c then midpoints ab, bc,
/// ca), P1 node ids, and the unwrapped physical vertex coordinates (the
/// periodic seam element needs x = 1 rather than the wrapped node's 0).
pub struct Tri {
    pub p2: [usize; 6],
    pub p1: [usize; 3],
    pub verts: [(f64, f64); 3],
}

pub struct Mesh {
    pub nx: usize,
    pub nz: usize,
    pub m_trunc: f64,
    /// Fine z-levels, 2 nz + 1 values.
    pub zf: Vec<f64>,
    pub tris: Vec<Tri>,
    /// Physical coordinates of P2 nodes.
    pub p2_xy: Vec<(f64, f64)>,
    /// Physical coordinates of P1 nodes.
    pub p1_xy: Vec<(f64, f64)>,
}

impl Mesh {
    pub fn n_p2(&self) -> usize {
        2 * self.nx * (2 * self.nz + 1)
    }

    pub fn n_p1(&self) -> usize {
        self.nx * (self.nz + 1)
    }

    /// Largest element diameter.
    pub fn max_diameter(&self) -> f64 {
        let dx = 1.0 / self.nx as f64;
        let mut worst = 0.0f64;
        for j in 0..self.nz {
            let dz = self.zf[2 * j + 2] - self.zf[2 * j];
            worst = worst.max((dx * dx + dz * dz).sqrt());
        }
        worst
    }

    fn p2_id(&self, fx: usize, fz: usize) -> usize {
        let w = 2 * self.nx;
        fz * w + (fx % w)
    }

    fn p1_id(&self, i: usize, j: usize) -> usize {
        j * self.nx + (i % self.nx)
    }

    pub fn new(nx: usize, nz: usize, m_trunc: f64) -> Self {
        let mut zf = Vec::with_capacity(2 * nz + 1);
        let zl: Vec<f64> = (0..=nz)
            .map(|j| m_trunc * (j as f64 / nz as f64).powi(2))
            .collect();
        for j in 0..nz {
            zf.push(zl[j]);
            zf.push(0.5 * (zl[j] + zl[j + 1]));
        }
        zf.push(zl[nz]);

        let mut mesh = Mesh {
            nx,
            nz,
            m_trunc,
            zf,
            tris: Vec::with_capacity(2 * nx * nz),
            p2_xy: Vec::new(),
            p1_xy: Vec::new(),
        };
        let w = 2 * nx;
        mesh.p2_xy = (0..w * (2 * nz + 1))
            .map(|id| {
                let fz = id / w;
                let fx = id % w;
                (fx as f64 / w as f64, mesh.zf[fz])
            })
            .collect();
        mesh.p1_xy = (0..nx * (nz + 1))
            .map(|id| {
                let j = id / nx;
                let i = id % nx;
                (i as f64 / nx as f64, mesh.zf[2 * j])
            })
            .collect();

        let dx = 1.0 / nx as f64;
        for j in 0..nz {
            for i in 0..nx {
                let (x0, x2) = (2 * i, 2 * i + 2);
                let (z0, z2) = (2 * j, 2 * j + 2);
                let (xl, xr) = (i as f64 * dx, (i + 1) as f64 * dx);
                let (zb, zt) = (mesh.zf[z0], mesh.zf[z2]);
                // lower-right triangle: (i,j) (i+1,j) (i+1,j+1)
                mesh.tris.push(Tri {
                    p2: [
                        mesh.p2_id(x0, z0),
                        mesh.p2_id(x2, z0),
                        mesh.p2_id(x2, z2),
                        mesh.p2_id(x0 + 1, z0),
                        mesh.p2_id(x2, z0 + 1),
                        mesh.p2_id(x0 + 1, z0 + 1),
                    ],
                    p1: [mesh.p1_id(i, j), mesh.p1_id(i + 1, j), mesh.p1_id(i + 1, j + 1)],
                    verts: [(xl, zb), (xr, zb), (xr, zt)],
                });
                // upper-left triangle: (i,j) (i+1,j+1) (i,j+1)
                mesh.tris.push(Tri {
                    p2: [
                        mesh.p2_id(x0, z0),
                        mesh.p2_id(x2, z2),
                        mesh.p2_id(x0, z2),
                        mesh.p2_id(x0 + 1, z0 + 1),
                        mesh.p2_id(x0 + 1, z2),
                        mesh.p2_id(x0, z0 + 1),
                    ],
                    p1: [mesh.p1_id(i, j), mesh.p1_id(i + 1, j + 1), mesh.p1_id(i, j + 1)],
                    verts: [(xl, zb), (xr, zt), (xl, zt)],
                });
            }
        }
        mesh
    }

    /// P2 node ids on the wall (z = 0) with their x-coordinates.
    pub fn bottom_p2(&self) -> Vec<(usize, f64)> {
        let w = 2 * self.nx;
        (0..w).map(|fx| (fx, fx as f64 / w as f64)).collect()
    }

    /// P2 node ids on the truncation boundary (z = M).
    pub fn top_p2(&self) -> Vec<usize> {
        let w = 2 * self.nx;
        let fz = 2 * self.nz;
        (0..w).map(|fx| fz * w + fx).collect()
    }
}

/// Degree-5 (7-point) triangle quadrature in barycentric coordinates,
/// weights summing to 1 (multiply by the triangle area).
pub const TRI_QUAD: [([f64; 3], f64); 7] = {
    const A1: f64 = 0.059_715_871_789_77; // (6 - sqrt(15))/21
    const B1: f64 = 0.470_142_064_105_115;
    const A2: f64 = 0.797_426_985_353_087; // (6 + sqrt(15))/... dominant
    const B2: f64 = 0.101_286_507_323_456;
    const W1: f64 = 0.132_394_152_788_506; // (155 + sqrt(15))/1200
    const W2: f64 = 0.125_939_180_544_827; // (155 - sqrt(15))/1200
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
        ([A1, B1, B1], W1),
        ([B1, A1, B1], W1),
        ([B1, B1, A1], W1),
        ([A2, B2, B2], W2),
        ([B2, A2, B2], W2),
        ([B2, B2, A2], W2),
    ]
};

/// P2 shape gradients w.r.t. barycentric coordinates, contracted with the
/// physical gradients of (l0, l1, l2) to give physical gradients.
pub fn p2_grad(l: [f64; 3], gl: [(f64, f64); 3]) -> [(f64, f64); 6] {
    let d = |i: usize| 4.0 * l[i] - 1.0;
    let g = |i: usize| gl[i];
    let mid = |i: usize, j: usize| {
        (
            4.0 * (l[i] * g(j).0 + l[j] * g(i).0),
            4.0 * (l[i] * g(j).1 + l[j] * g(i).1),
        )
    };
    [
        (d(0) * g(0).0, d(0) * g(0).1),
        (d(1) * g(1).0, d(1) * g(1).1),
        (d(2) * g(2).0, d(2) * g(2).1),
        mid(0, 1),
        mid(1, 2),
        mid(2, 0),
    ]
}

/// Gradients of the barycentric coordinates of a triangle with vertices
/// `v` (counterclockwise or clockwise; signs handled via the area), plus
/// the absolute area.
pub fn bary_gradients(v: [(f64, f64); 3]) -> ([(f64, f64); 3], f64) {
    let (x1, y1) = v[0];
    let (x2, y2) = v[1];
    let (x3, y3) = v[2];
    let det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
    let area = 0.5 * det.abs();
    let inv = 1.0 / det;
    let gl = [
        ((y2 - y3) * inv, (x3 - x2) * inv),
        ((y3 - y1) * inv, (x1 - x3) * inv),
        ((y1 - y2) * inv, (x2 - x1) * inv),
    ];
    (gl, area)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_periodic_wrap() {
        let m = Mesh::new(8, 4, 6.0);
        assert_eq!(m.tris.len(), 2 * 8 * 4);
        assert_eq!(m.n_p2(), 16 * 9);
        assert_eq!(m.n_p1(), 8 * 5);
        // last column wraps to the first
        assert_eq!(m.p2_id(16, 0), m.p2_id(0, 0));
        assert_eq!(m.p1_id(8, 1), m.p1_id(0, 1));
    }

    #[test]
    fn areas_sum_to_domain() {
        let m = Mesh::new(6, 5, 4.0);
        let mut total = 0.0;
        for tri in &m.tris {
            let (_, area) = bary_gradients(tri.verts);
            total += area;
        }
        assert!((total - 4.0).abs() < 1e-12, "total area {total}");
    }

    #[test]
    fn quadrature_integrates_quartics_exactly() {
        // int over reference triangle of l0^4 = 2 area / 30 = ... use the
        // exact formula int l0^a l1^b l2^c = 2A a! b! c!/(a+b+c+2)!
        let v = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
        let (_, area) = bary_gradients(v);
        let exact = 2.0 * area * 24.0 / 720.0; // a=4: 4!/(6)! * 2A
        let mut got = 0.0;
        for (l, w) in TRI_QUAD {
            got += w * area * l[0].powi(4);
        }
        assert!((got - exact).abs() < 1e-15, "{got} vs {exact}");
    }

    #[test]
    fn grading_refines_toward_wall() {
        let m = Mesh::new(4, 10, 6.0);
        let dz_first = m.zf[2] - m.zf[0];
        let dz_last = m.zf[20] - m.zf[18];
        assert!(dz_first < dz_last / 10.0);
        assert_eq!(m.zf[0], 0.0);
        assert!((m.zf[20] - 6.0).abs() < 1e-12);
    }
}
