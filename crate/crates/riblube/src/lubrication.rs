//! One-dimensional generalized Reynolds problem with Dirichlet pressure.
//!
//! For constant flow factor Theta the pressure is explicit:
//! `p(y1) = S y1 (1 - y1) / (2 Theta)` with load `S / (12 Theta)`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LubricationError {
    #[error("theta_zero: |Theta| = {0} below 1e-14")]
    ThetaZero(f64),
}

/// Closed-form pressure field of the squeeze problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureField {
    pub theta: f64,
    pub s: f64,
    /// Coefficient of y1 (1 - y1).
    pub coeff: f64,
    /// int_0^1 p dy1 = S / (12 Theta).
    pub load: f64,
}

impl PressureField {
    pub fn eval(&self, y1: f64) -> f64 {
        self.coeff * y1 * (1.0 - y1)
    }

    pub fn sample(&self, n: usize) -> Vec<f64> {
        (0..=n).map(|i| self.eval(i as f64 / n as f64)).collect()
    }
}

/// Solve the constant-coefficient Reynolds problem.
pub fn solve_pressure(theta: f64, s: f64) -> Result<PressureField, LubricationError> {
    if theta.abs() < 1e-14 {
        return Err(LubricationError::ThetaZero(theta.abs()));
    }
    Ok(PressureField {
        theta,
        s,
        coeff: s / (2.0 * theta),
        load: s / (12.0 * theta),
    })
}

/// Maximum weak-form residual of sampled pressure values against hat test
/// functions on the uniform grid: for each interior node,
/// `Theta (2 p_i - p_{i-1} - p_{i+1})/dy - S dy`.
pub fn weak_residual_samples(p: &[f64], theta: f64, s: f64) -> f64 {
    assert!(p.len() >= 11, "test grid needs at least 11 points");
    let n = p.len() - 1;
    let dy = 1.0 / n as f64;
    let mut worst = 0.0f64;
    for i in 1..n {
        let r = theta * (2.0 * p[i] - p[i - 1] - p[i + 1]) / dy - s * dy;
        worst = worst.max(r.abs());
    }
    worst
}

/// Weak residual of the closed form itself on an (n+1)-point grid.
pub fn weak_residual(field: &PressureField, n: usize) -> f64 {
    weak_residual_samples(&field.sample(n), field.theta, field.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn closed_form_values() {
        // S = 0 -> zero field
        let z = solve_pressure(0.5, 0.0).unwrap();
        assert_eq!(z.load, 0.0);
        assert_eq!(z.eval(0.3), 0.0);
        // Theta = 1/12, S = 1 -> load 1, p(1/2) = 3/2
        let p = solve_pressure(1.0 / 12.0, 1.0).unwrap();
        assert_relative_eq!(p.load, 1.0, max_relative = 1e-15);
        assert_relative_eq!(p.eval(0.5), 1.5, max_relative = 1e-15);
        // negative Theta propagates sign, is not rejected
        let m = solve_pressure(-0.25, 1.0).unwrap();
        assert!(m.load < 0.0);
        assert!(m.eval(0.5) < 0.0);
        // endpoints vanish
        assert_eq!(p.eval(0.0), 0.0);
        assert_eq!(p.eval(1.0), 0.0);
        // pole guard
        assert!(matches!(
            solve_pressure(1e-15, 1.0),
            Err(LubricationError::ThetaZero(_))
        ));
    }

    #[test]
    fn load_times_12_theta_is_s() {
        for (theta, s) in [(0.334, 1.0), (0.05, -2.0), (-0.7, 3.0)] {
            let p = solve_pressure(theta, s).unwrap();
            assert_relative_eq!(p.load * 12.0 * theta, s, max_relative = 1e-15);
        }
    }

    #[test]
    fn weak_residual_of_closed_form_is_tiny() {
        let p = solve_pressure(0.334, 1.0).unwrap();
        // exact second difference of a parabola: residual at rounding level,
        // comfortably below the 1e-4 * S quadrature bound
        assert!(weak_residual(&p, 100) <= 1e-4 * p.s.abs());
        // zero forcing -> exactly zero residual
        let z = solve_pressure(0.334, 0.0).unwrap();
        assert_eq!(weak_residual(&z, 100), 0.0);
    }

    #[test]
    fn weak_residual_detects_wrong_pressure() {
        let p = solve_pressure(0.334, 1.0).unwrap();
        let n = 100usize;
        let bad: Vec<f64> = (0..=n)
            .map(|i| {
                let y = i as f64 / n as f64;
                p.eval(y) + 0.1 * (std::f64::consts::PI * y).sin()
            })
            .collect();
        let r = weak_residual_samples(&bad, p.theta, p.s);
        // perturbation of size 0.1 sin(pi y): residual ~ Theta pi^2 0.1 dy
        assert!(r > 1e-4, "residual {r} failed to flag the perturbation");
    }

    proptest! {
        #[test]
        fn linearity_and_symmetry(
            theta in prop::sample::select(vec![0.05f64, 0.334, 1.7, -0.4]),
            s in -3.0f64..3.0,
            c in 0.25f64..4.0,
        ) {
            prop_assume!(s.abs() > 1e-6);
            let p = solve_pressure(theta, s).unwrap();
            let pc = solve_pressure(theta, c * s).unwrap();
            // exact linearity of the coefficient
            prop_assert!((pc.coeff - c * p.coeff).abs() <= 1e-12 * pc.coeff.abs());
            // symmetry p(y) = p(1-y)
            for y in [0.1, 0.33, 0.49] {
                prop_assert!((p.eval(y) - p.eval(1.0 - y)).abs() <= 1e-15 * p.coeff.abs());
            }
        }
    }
}
