//! Compact banded LU with partial pivoting.
//!
//! Storage is the classic compact band layout: row `i` of the band array
//! holds the matrix entries `A[i, i-m1 .. i+m2]`. Pivoting may spill into
//! the extra `m1` columns kept on the right of the factor.

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    m1: usize,
    m2: usize,
    a: Vec<f64>, // n x (m1 + m2 + 1)
}

#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    m1: usize,
    mm: usize,
    au: Vec<f64>, // n x (m1 + m2 + 1), upper factor after pivoting
    al: Vec<f64>, // n x m1, multipliers
    indx: Vec<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("singular banded system (zero pivot at row {0})")]
pub struct SingularSystem(pub usize);

impl BandMatrix {
    pub fn new(n: usize, m1: usize, m2: usize) -> Self {
        Self { n, m1, m2, a: vec![0.0; n * (m1 + m2 + 1)] }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        let off = j as isize - i as isize + self.m1 as isize;
        debug_assert!(
            off >= 0 && off <= (self.m1 + self.m2) as isize,
            "entry ({i},{j}) outside band"
        );
        i * (self.m1 + self.m2 + 1) + off as usize
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.a[s] += v;
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.a[s] = v;
    }

    /// LU-factor in place with partial pivoting.
    pub fn factor(self) -> Result<BandLu, SingularSystem> {
        let (n, m1, m2) = (self.n, self.m1, self.m2);
        let mm = m1 + m2 + 1;
        let mut au = self.a;
        let mut al = vec![0.0; n * m1];
        let mut indx = vec![0usize; n];

        // left-justify the first m1 rows
        let mut l = m1;
        for i in 0..m1 {
            for j in (m1 - i)..mm {
                au[i * mm + j - l] = au[i * mm + j];
            }
            l -= 1;
            for j in (mm - l - 1)..mm {
                au[i * mm + j] = 0.0;
            }
        }

        let mut l = m1;
        for k in 0..n {
            if l < n {
                l += 1;
            }
            // pivot search in column k
            let mut piv = au[k * mm].abs();
            let mut ipiv = k;
            for i in (k + 1)..l.min(n) {
                if au[i * mm].abs() > piv {
                    piv = au[i * mm].abs();
                    ipiv = i;
                }
            }
            indx[k] = ipiv;
            if piv == 0.0 {
                return Err(SingularSystem(k));
            }
            if ipiv != k {
                for j in 0..mm {
                    au.swap(k * mm + j, ipiv * mm + j);
                }
            }
            for i in (k + 1)..l.min(n) {
                let dum = au[i * mm] / au[k * mm];
                al[k * m1 + (i - k - 1)] = dum;
                for j in 1..mm {
                    au[i * mm + j - 1] = au[i * mm + j] - dum * au[k * mm + j];
                }
                au[i * mm + mm - 1] = 0.0;
            }
        }
        Ok(BandLu { n, m1, mm, au, al, indx })
    }
}

impl BandLu {
    /// Solve A x = b in place.
    pub fn solve(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n);
        let (n, m1, mm) = (self.n, self.m1, self.mm);
        let mut l = m1;
        for k in 0..n {
            let ip = self.indx[k];
            if ip != k {
                b.swap(k, ip);
            }
            if l < n {
                l += 1;
            }
            for i in (k + 1)..l.min(n) {
                b[i] -= self.al[k * m1 + (i - k - 1)] * b[k];
            }
        }
        let mut l = 1usize;
        for k in (0..n).rev() {
            let mut dum = b[k];
            for j in 1..l {
                dum -= self.au[k * mm + j] * b[k + j];
            }
            b[k] = dum / self.au[k * mm];
            if l < mm {
                l += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_reference_system() {
        // pentadiagonal test matrix vs direct computation of A x
        let n = 40;
        let (m1, m2) = (2, 2);
        let mut a = BandMatrix::new(n, m1, m2);
        let entry = |i: usize, j: usize| -> f64 {
            let d = j as isize - i as isize;
            match d {
                -2 => 0.7,
                -1 => -1.3 - (i as f64) * 0.01,
                0 => 4.0 + (i as f64) * 0.1,
                1 => -0.9,
                2 => 0.4 + (j as f64) * 0.02,
                _ => 0.0,
            }
        };
        for i in 0..n {
            for j in i.saturating_sub(m1)..(i + m2 + 1).min(n) {
                a.set(i, j, entry(i, j));
            }
        }
        let x_true: Vec<f64> = (0..n).map(|i| ((i * 7 % 11) as f64) - 3.0).collect();
        let mut b = vec![0.0; n];
        for i in 0..n {
            for j in i.saturating_sub(m1)..(i + m2 + 1).min(n) {
                b[i] += entry(i, j) * x_true[j];
            }
        }
        let lu = a.factor().unwrap();
        lu.solve(&mut b);
        for i in 0..n {
            assert!((b[i] - x_true[i]).abs() < 1e-11, "i={i}: {} vs {}", b[i], x_true[i]);
        }
    }

    #[test]
    fn reports_singularity() {
        let mut a = BandMatrix::new(3, 1, 1);
        a.set(0, 0, 1.0);
        a.set(1, 1, 0.0);
        a.set(2, 2, 1.0);
        assert!(a.factor().is_err());
    }
}
