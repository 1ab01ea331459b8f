//! Numerically stable hyperbolic kernels.
//!
//! The flow-factor formulas are built from `sinh(kh)/k`, `(cosh(kh)-1)/k^2`
//! and `(sinh(kh)-kh)/k^3`. The coupling wavenumber `k` vanishes with the
//! coupling number N, so naive evaluation loses every digit near the
//! Newtonian limit. All call sites go through the dimensionless kernels
//! below in `x = kh` and scale by powers of `h`.

/// Threshold below which the truncated series is used.
///
/// `g3` suffers the worst cancellation: `sinh(x)-x ~ x^3/6`, so direct
/// evaluation loses ~`eps*x^2/6` relative accuracy. The series through
/// `x^8` keeps the switch point error under 1e-15.
const SERIES_CUTOFF: f64 = 0.25;

/// sinh(x)/x, equal to 1 at x = 0.
pub fn sinhc(x: f64) -> f64 {
    let x2 = x * x;
    if x.abs() < 1e-3 {
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0)
    } else {
        x.sinh() / x
    }
}

/// (cosh(x) - 1)/x^2, equal to 1/2 at x = 0.
///
/// Uses cosh(x) - 1 = 2 sinh^2(x/2), cancellation-free for all x.
pub fn coshm1c(x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let s = (0.5 * x).sinh();
    2.0 * s * s / (x * x)
}

/// cosh(x) - 1, cancellation-free.
pub fn cosh_m1(x: f64) -> f64 {
    let s = (0.5 * x).sinh();
    2.0 * s * s
}

/// (sinh(x) - x)/x^3, equal to 1/6 at x = 0.
pub fn sinhm1c(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        let x2 = x * x;
        // 1/6 + x^2/120 + x^4/5040 + x^6/362880 + x^8/39916800
        1.0 / 6.0
            + x2 * (1.0 / 120.0
                + x2 * (1.0 / 5040.0 + x2 * (1.0 / 362_880.0 + x2 / 39_916_800.0)))
    } else {
        (x.sinh() - x) / (x * x * x)
    }
}
