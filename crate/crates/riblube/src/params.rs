//! Physical and dimensionless parameters of the micropolar film model.
//!
//! Inputs are the coupling number `N`, the microrotation scale `R_c`, the
//! wall interaction parameters (`alpha` or the relative boundary viscosity
//! `nu_b_bar`), the wall friction (`beta` or the slip parameter
//! `delta_slip`) and the dimensionless gap height `h`. Everything the
//! closed-form flow factors need is precomputed in [`DerivedParams`].

use crate::kernels::{cosh_m1, sinhc};
use thiserror::Error;

/// Inputs with `|alpha - 1|` at or below this go through the dedicated
/// `alpha = 1` coefficient branch everywhere downstream. `gamma_alpha` has
/// a `1/(alpha-1)` pole, and a separate closed form exists at the pole.
pub const ALPHA_BRANCH_TOL: f64 = 1e-8;

/// Physical inputs of the wall-fluid model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidWallParams {
    /// Coupling number N (N = 0 is the Newtonian fluid).
    pub n: f64,
    /// Microrotation scale R_c > 0.
    pub rc: f64,
    /// Boundary viscosity ratio alpha > 0.
    pub alpha: f64,
    /// Wall friction coefficient beta > 0.
    pub beta: f64,
    /// Dimensionless gap height h > 0.
    pub h: f64,
}

/// Hard constraints checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// N^2 <= 1/2.
    CouplingBound,
    /// alpha > 0.
    AlphaPositive,
    /// 1/alpha >= N^2.
    AlphaCoupling,
    /// gamma^2 < R_c (1 - 2 N^2) / h^2 with gamma = 1/alpha - N^2 - N^2 beta.
    GammaWindow,
    /// R_c > 0, beta > 0, h > 0 and all fields finite.
    PositiveScales,
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Constraint::CouplingBound => "N^2 <= 1/2",
            Constraint::AlphaPositive => "alpha > 0",
            Constraint::AlphaCoupling => "1/alpha >= N^2",
            Constraint::GammaWindow => "gamma^2 < Rc (1 - 2 N^2) / h^2",
            Constraint::PositiveScales => "Rc, beta, h > 0 and finite",
        };
        f.write_str(s)
    }
}

/// Soft conditions: recorded, never fatal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    /// gamma = 1/alpha - N^2 - N^2 beta < 0. The existence theory asks for
    /// gamma >= 0 but the sweeps vary beta freely across the sign change.
    GammaNegative,
    /// N = 0: the beta <-> delta_slip conversion is undefined.
    SlipUndefined,
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Flag::GammaNegative => "gamma < 0",
            Flag::SlipUndefined => "delta_slip undefined at N = 0",
        };
        f.write_str(s)
    }
}

/// Outcome of [`validate`]: violations are data, not failures.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Constraint>,
    pub flags: Vec<Flag>,
}

impl ValidationReport {
    /// True when no hard constraint is violated (flags may be present).
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Derived scalars used by every closed form.
#[derive(Debug, Clone, Copy)]
pub struct DerivedParams {
    pub params: FluidWallParams,
    /// Decay wavenumber k = 2N sqrt((1-N^2)/R_c); zero iff N = 0.
    pub k: f64,
    /// gamma_alpha = 2(1 - alpha N^2)/(alpha - 1); undefined on the
    /// alpha = 1 branch.
    pub gamma_alpha: Option<f64>,
    /// C_alpha = alpha h / (alpha - 1); undefined on the alpha = 1 branch.
    pub c_alpha: Option<f64>,
    /// C_N = N^2/(1-N^2) * sinh(kh)/k.
    pub c_n: f64,
    /// Relative boundary viscosity (1 - alpha N^2)/(1 - N^2).
    pub nu_b_bar: f64,
    /// Slip parameter R_c/(2 N^2 beta); undefined at N = 0.
    pub delta_slip: Option<f64>,
    /// gamma = 1/alpha - N^2 - N^2 beta.
    pub gamma: f64,
    // cached hyperbolics of kh
    pub kh: f64,
    pub ch: f64,
    pub sh: f64,
    /// cosh(kh) - 1, cancellation-free.
    pub chm1: f64,
    /// R_c / beta.
    pub rb: f64,
}

impl FluidWallParams {
    pub fn new(n: f64, rc: f64, alpha: f64, beta: f64, h: f64) -> Self {
        Self { n, rc, alpha, beta, h }
    }

    /// Construct from the relative boundary viscosity instead of alpha:
    /// alpha = (1 - nu_b_bar (1 - N^2)) / N^2. Requires N > 0.
    pub fn from_nu_b_bar(n: f64, rc: f64, nu_b_bar: f64, beta: f64, h: f64) -> Self {
        let n2 = n * n;
        let alpha = (1.0 - nu_b_bar * (1.0 - n2)) / n2;
        Self { n, rc, alpha, beta, h }
    }

    /// Replace beta by the slip parameter: beta = R_c/(2 N^2 delta_slip).
    /// Requires N > 0.
    pub fn with_delta_slip(mut self, delta_slip: f64) -> Self {
        self.beta = self.rc / (2.0 * self.n * self.n * delta_slip);
        self
    }

    pub fn nu_b_bar(&self) -> f64 {
        let n2 = self.n * self.n;
        (1.0 - self.alpha * n2) / (1.0 - n2)
    }

    pub fn delta_slip(&self) -> Option<f64> {
        if self.n == 0.0 {
            None
        } else {
            Some(self.rc / (2.0 * self.n * self.n * self.beta))
        }
    }

    pub fn gamma(&self) -> f64 {
        let n2 = self.n * self.n;
        1.0 / self.alpha - n2 - n2 * self.beta
    }
}

/// Check the admissibility constraints. Violations are listed, not thrown.
pub fn validate(p: &FluidWallParams) -> ValidationReport {
    let mut report = ValidationReport::default();
    let finite = p.n.is_finite()
        && p.rc.is_finite()
        && p.alpha.is_finite()
        && p.beta.is_finite()
        && p.h.is_finite();
    if !finite || p.rc <= 0.0 || p.beta <= 0.0 || p.h <= 0.0 || p.n < 0.0 {
        report.violations.push(Constraint::PositiveScales);
        return report;
    }
    let n2 = p.n * p.n;
    if n2 > 0.5 {
        report.violations.push(Constraint::CouplingBound);
    }
    if p.alpha <= 0.0 {
        report.violations.push(Constraint::AlphaPositive);
    }
    if p.alpha > 0.0 && 1.0 / p.alpha < n2 {
        report.violations.push(Constraint::AlphaCoupling);
    }
    if p.alpha > 0.0 {
        let gamma = p.gamma();
        if gamma * gamma >= p.rc * (1.0 - 2.0 * n2) / (p.h * p.h) {
            report.violations.push(Constraint::GammaWindow);
        }
        if gamma < 0.0 {
            report.flags.push(Flag::GammaNegative);
        }
    }
    if p.n == 0.0 {
        report.flags.push(Flag::SlipUndefined);
    }
    report
}

/// Compute every derived scalar. Pure and deterministic.
pub fn derive(p: &FluidWallParams) -> DerivedParams {
    let n2 = p.n * p.n;
    let om = 1.0 - n2;
    let k = 2.0 * p.n * (om / p.rc).sqrt();
    let kh = k * p.h;
    let on_alpha_one = (p.alpha - 1.0).abs() <= ALPHA_BRANCH_TOL;
    let (gamma_alpha, c_alpha) = if on_alpha_one {
        (None, None)
    } else {
        (
            Some(2.0 * (1.0 - p.alpha * n2) / (p.alpha - 1.0)),
            Some(p.alpha * p.h / (p.alpha - 1.0)),
        )
    };
    // C_N = N^2/(1-N^2) * sinh(kh)/k = N^2/(1-N^2) * h * sinhc(kh)
    let c_n = n2 / om * p.h * sinhc(kh);
    DerivedParams {
        params: *p,
        k,
        gamma_alpha,
        c_alpha,
        c_n,
        nu_b_bar: p.nu_b_bar(),
        delta_slip: p.delta_slip(),
        gamma: p.gamma(),
        kh,
        ch: kh.cosh(),
        sh: kh.sinh(),
        chm1: cosh_m1(kh),
        rb: p.rc / p.beta,
    }
}

impl DerivedParams {
    /// True when the parameters sit on the alpha = 1 branch.
    pub fn is_alpha_one(&self) -> bool {
        self.gamma_alpha.is_none()
    }

    /// 1 - N^2, everywhere-positive in the admissible region.
    pub fn om(&self) -> f64 {
        1.0 - self.params.n * self.params.n
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad number for `{key}`: {text}")]
    BadNumber { line: usize, key: String, text: String },
    #[error("both `{a}` and `{b}` given; they are alternatives")]
    Conflict { a: &'static str, b: &'static str },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("`{0}` requires N > 0")]
    NeedsCoupling(&'static str),
    #[error("io: {0}")]
    Io(String),
}

/// Parse the line-oriented `key = value` configuration format.
///
/// Keys: `N`, `Rc`, `alpha` or `nu_b_bar`, `beta` or `delta_slip`, `h`.
/// Blank lines and lines starting with `#` are ignored; unknown keys are
/// an error.
pub fn parse_config(text: &str) -> Result<FluidWallParams, ConfigError> {
    let mut n = None;
    let mut rc = None;
    let mut alpha = None;
    let mut nu_b_bar = None;
    let mut beta = None;
    let mut delta_slip = None;
    let mut h = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (key, value) = s.split_once('=').ok_or_else(|| ConfigError::Malformed {
            line,
            text: s.to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parsed: f64 = value.parse().map_err(|_| ConfigError::BadNumber {
            line,
            key: key.to_string(),
            text: value.to_string(),
        })?;
        match key {
            "N" => n = Some(parsed),
            "Rc" => rc = Some(parsed),
            "alpha" => alpha = Some(parsed),
            "nu_b_bar" => nu_b_bar = Some(parsed),
            "beta" => beta = Some(parsed),
            "delta_slip" => delta_slip = Some(parsed),
            "h" => h = Some(parsed),
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    if alpha.is_some() && nu_b_bar.is_some() {
        return Err(ConfigError::Conflict { a: "alpha", b: "nu_b_bar" });
    }
    if beta.is_some() && delta_slip.is_some() {
        return Err(ConfigError::Conflict { a: "beta", b: "delta_slip" });
    }
    let n = n.ok_or(ConfigError::Missing("N"))?;
    let rc = rc.ok_or(ConfigError::Missing("Rc"))?;
    let h = h.ok_or(ConfigError::Missing("h"))?;
    let alpha = match (alpha, nu_b_bar) {
        (Some(a), None) => a,
        (None, Some(nb)) => {
            if n == 0.0 {
                return Err(ConfigError::NeedsCoupling("nu_b_bar"));
            }
            (1.0 - nb * (1.0 - n * n)) / (n * n)
        }
        (None, None) => return Err(ConfigError::Missing("alpha or nu_b_bar")),
        _ => unreachable!(),
    };
    let beta = match (beta, delta_slip) {
        (Some(b), None) => b,
        (None, Some(d)) => {
            if n == 0.0 {
                return Err(ConfigError::NeedsCoupling("delta_slip"));
            }
            rc / (2.0 * n * n * d)
        }
        (None, None) => return Err(ConfigError::Missing("beta or delta_slip")),
        _ => unreachable!(),
    };
    Ok(FluidWallParams { n, rc, alpha, beta, h })
}

/// Read a parameter file from disk.
pub fn read_config(path: &std::path::Path) -> Result<FluidWallParams, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn desk() -> FluidWallParams {
        FluidWallParams::new(0.3, 0.1, 10.1, 0.1 / (2.0 * 0.09), 1.0)
    }

    #[test]
    fn desk_parameters_have_no_violations() {
        // gamma < 0 here, which is a flag, not a violation
        let r = validate(&desk());
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.flags, vec![Flag::GammaNegative]);
    }

    #[test]
    fn coupling_bound_violation() {
        let mut p = desk();
        p.n = 0.8; // N^2 = 0.64 > 0.5
        let r = validate(&p);
        assert!(r.violations.contains(&Constraint::CouplingBound));
    }

    #[test]
    fn alpha_zero_violation() {
        let mut p = desk();
        p.alpha = 0.0;
        let r = validate(&p);
        assert!(r.violations.contains(&Constraint::AlphaPositive));
    }

    #[test]
    fn desk_wavenumber() {
        let d = derive(&desk());
        // k = 0.6 sqrt(0.91/0.1)
        assert_relative_eq!(d.k, 1.809972375479802730, max_relative = 1e-15);
    }

    #[test]
    fn nu_b_bar_inversion() {
        // nu_b_bar = 0.1, N = 0.3 -> alpha = (1 - 0.1*0.91)/0.09 = 10.1
        let p = FluidWallParams::from_nu_b_bar(0.3, 0.1, 0.1, 1.0, 1.0);
        assert_relative_eq!(p.alpha, 10.1, max_relative = 1e-14);
        // round-trip error bounded by the conditioning of 1 - alpha N^2
        let cond = (1.0 + p.alpha * 0.09) / (0.1 * 0.91);
        assert!((p.nu_b_bar() - 0.1).abs() <= 2.0 * f64::EPSILON * cond * 0.1);
    }

    #[test]
    fn alpha_one_marks_gamma_alpha_undefined() {
        let p = FluidWallParams::new(0.3, 0.1, 1.0, 1.0, 1.0);
        let d = derive(&p);
        assert!(d.is_alpha_one());
        assert_relative_eq!(d.nu_b_bar, 1.0, max_relative = 1e-15);
        assert!(d.gamma_alpha.is_none());
    }

    #[test]
    fn coupling_decay_monotone_as_n_vanishes() {
        let mut last_k = f64::INFINITY;
        let mut last_cn = f64::INFINITY;
        for i in 0..30 {
            let n = 0.6 * 0.7f64.powi(i);
            let d = derive(&FluidWallParams::new(n, 0.1, 2.0, 1.0, 1.0));
            assert!(d.k < last_k);
            assert!(d.c_n < last_cn);
            last_k = d.k;
            last_cn = d.c_n;
        }
        let d0 = derive(&FluidWallParams::new(0.0, 0.1, 2.0, 1.0, 1.0));
        assert_eq!(d0.k, 0.0);
        assert_eq!(d0.c_n, 0.0);
        assert!(d0.delta_slip.is_none());
    }

    #[test]
    fn n_zero_is_accepted_with_flag() {
        // alpha chosen inside the gamma window (gamma = 1/alpha at N = 0)
        let r = validate(&FluidWallParams::new(0.0, 0.1, 8.0, 1.0, 1.0));
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(r.flags.contains(&Flag::SlipUndefined));
    }

    #[test]
    fn config_round_trip_and_aliases() {
        let p = parse_config(
            "# comment\nN = 0.3\nRc = 0.1\nnu_b_bar = 0.1\ndelta_slip = 1\nh = 1\n",
        )
        .unwrap();
        assert_relative_eq!(p.alpha, 10.1, max_relative = 1e-14);
        assert_relative_eq!(p.beta, 0.1 / 0.18, max_relative = 1e-14);

        let err = parse_config("N=0.3\nRc=0.1\nalpha=2\nbeta=1\nh=1\nbogus=3\n");
        assert!(matches!(err, Err(ConfigError::UnknownKey { .. })));

        let err = parse_config("N=0.3\nRc=0.1\nalpha=2\nnu_b_bar=0.5\nbeta=1\nh=1\n");
        assert!(matches!(err, Err(ConfigError::Conflict { .. })));
    }

    #[test]
    fn derive_is_deterministic() {
        let a = derive(&desk());
        let b = derive(&desk());
        assert_eq!(a.k.to_bits(), b.k.to_bits());
        assert_eq!(a.c_n.to_bits(), b.c_n.to_bits());
        assert_eq!(a.sh.to_bits(), b.sh.to_bits());
    }

    proptest! {
        #[test]
        fn wall_parameter_round_trips(
            n in 0.05f64..0.7,
            rc in 0.02f64..0.5,
            nub in 0.05f64..1.0,
            dslip in 0.2f64..10.0,
        ) {
            let p = FluidWallParams::from_nu_b_bar(n, rc, nub, 1.0, 1.0)
                .with_delta_slip(dslip);
            // beta -> delta_slip -> beta is multiplicative: ulp-exact
            let d = p.delta_slip().unwrap();
            prop_assert!((d - dslip).abs() <= 4.0 * f64::EPSILON * dslip.abs());
            // alpha -> nu_b_bar -> alpha goes through 1 - alpha N^2, whose
            // conditioning is 1/(nub (1-N^2)); bound the forward error
            // accordingly (ulp-exact when well-conditioned)
            let cond = (1.0 + p.alpha * n * n) / (nub * (1.0 - n * n));
            prop_assert!(
                (p.nu_b_bar() - nub).abs() <= 2.0 * f64::EPSILON * cond * nub.abs()
            );
        }
    }
}
