//! Spectral half-strip solution of the cell problems.
//!
//! Both cell problems decouple over Fourier modes of the boundary datum
//! `g = lambda Psi'` (periodic, zero mean). Each mode admits an explicit
//! decaying solution, and the Dirichlet energies sum to
//!
//! ```text
//!   E = 3 pi lambda^2 sum_{m != 0} |m| |c_m|^2     (Stokes)
//!   F = 2 pi lambda^2 sum_{m != 0} |m| |c_m|^2     (Laplace)
//! ```
//!
//! where `c_m` are the Fourier coefficients of `Psi'`. For the
//! piecewise-linear interpolant of the nodal samples the spectrum is the
//! DFT of the nodal values times `sinc^2(pi m / n)`, so the sums are
//! computable to high accuracy. This double route is the reference the
//! finite-element solver is tested against; note it forces F = (2/3) E.

use super::riblet::RibletProfile;

/// sum_{m != 0} |m| |c_m|^2 for the PL interpolant of the nodal samples.
fn weighted_spectrum_sum(dsamples: &[f64]) -> f64 {
    let n = dsamples.len() - 1;
    let nf = n as f64;
    // direct DFT of the n distinct nodal values (real input)
    let mut re = vec![0.0f64; n];
    let mut im = vec![0.0f64; n];
    for j in 0..n {
        let wj = -2.0 * std::f64::consts::PI * j as f64 / nf;
        for (r, v) in dsamples.iter().take(n).enumerate() {
            let ang = wj * r as f64;
            re[j] += v * ang.cos();
            im[j] += v * ang.sin();
        }
    }
    let mut power = vec![0.0f64; n];
    for j in 0..n {
        power[j] = (re[j] * re[j] + im[j] * im[j]) / (nf * nf);
    }
    let mmax = 400 * n;
    let mut total = 0.0;
    for m in 1..=mmax {
        let x = std::f64::consts::PI * m as f64 / nf;
        let sinc = x.sin() / x;
        let s2 = sinc * sinc;
        total += 2.0 * m as f64 * power[m % n] * s2 * s2;
    }
    total
}

/// Reference Stokes and Laplace cell energies `(E_lambda, F_lambda)`.
pub fn reference_energies(profile: &RibletProfile, lambda: f64) -> (f64, f64) {
    let s = weighted_spectrum_sum(&profile.dsamples);
    let l2 = lambda * lambda;
    (3.0 * std::f64::consts::PI * l2 * s, 2.0 * std::f64::consts::PI * l2 * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::riblet::{from_samples, make_riblet, RibletKind};
    use approx::assert_relative_eq;

    #[test]
    fn matches_frozen_reference_values() {
        // values frozen from the independent high-precision evaluation
        let v = make_riblet(RibletKind::VShape, 34).unwrap();
        let (e, f) = reference_energies(&v, 1.0);
        assert_relative_eq!(e, 12.172, max_relative = 2e-3);
        assert_relative_eq!(f, 2.0 / 3.0 * e, max_relative = 1e-14);

        let u = make_riblet(RibletKind::UShape, 192).unwrap();
        let (eu, _) = reference_energies(&u, 1.0);
        assert_relative_eq!(eu, 68.04, max_relative = 5e-3);

        let b = make_riblet(RibletKind::Blade, 192).unwrap();
        let (eb, _) = reference_energies(&b, 1.0);
        assert_relative_eq!(eb, 123.3, max_relative = 5e-3);

        assert!(e < eu && eu < eb, "ordering {e} < {eu} < {eb}");
    }

    #[test]
    fn single_mode_energy_is_three_pi() {
        // Psi = sin(2 pi z)/(sqrt(2) pi) has Psi' = sqrt(2) cos(2 pi z),
        // unit slope energy, and sum |m||c_m|^2 = 1
        let n = 256usize;
        let samples: Vec<f64> = (0..=n)
            .map(|j| {
                let z = j as f64 / n as f64;
                (2.0 * std::f64::consts::PI * z).sin()
            })
            .collect();
        let p = from_samples(samples).unwrap();
        let (e, f) = reference_energies(&p, 1.0);
        // PL sampling at n = 256 keeps the mode-1 content within 0.1%
        assert_relative_eq!(e, 3.0 * std::f64::consts::PI, max_relative = 1e-3);
        assert_relative_eq!(f, 2.0 * std::f64::consts::PI, max_relative = 1e-3);
    }

    #[test]
    fn quadratic_lambda_scaling_is_exact() {
        let v = make_riblet(RibletKind::VShape, 34).unwrap();
        let (e1, f1) = reference_energies(&v, 1.0);
        let (e2, f2) = reference_energies(&v, 2.0);
        assert_relative_eq!(e2, 4.0 * e1, max_relative = 1e-14);
        assert_relative_eq!(f2, 4.0 * f1, max_relative = 1e-14);
    }
}
