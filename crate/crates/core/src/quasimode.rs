//! Approximate eigenfunctions of the cusp Laplacian on `L^p`.
//!
//! For a point `z(s)` on the boundary of `P_p` the test functions
//! `f_n(x, y) = c_n(y) e^{(2R/p + is) y}` with `c_n(y) = ψ(y / r_n)` satisfy
//!
//! ```text
//! Δ f_n − z f_n = (−c_n'' + (b − 2is) c_n') e^{(2R/p + is) y},   b = 2R(1 − 2/p)
//! ```
//!
//! and the weight `e^{−2Ry}` of the cusp volume form cancels the modulus
//! `|e^{(2R/p + is) y}|^p`. Every `L^p` norm over the Siegel set therefore
//! reduces to a one-dimensional integral of the profile, up to a common
//! transversal constant that drops out of the ratio
//! `‖Δ f_n − z f_n‖_p / ‖f_n‖_p`. The ratio decays like `C₄/r_n + C₅/r_n²`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::region::{conjugate_coefficients, ParabolicRegion};
use crate::root_datum::RestrictedRootDatum;

/// Which derivative of the bump to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    Value,
    First,
    Second,
}

/// Canonical bump `ψ(u) = exp(−1/((u − 1)(2 − u)))` on `(1, 2)` and its
/// first two derivatives in closed form.
pub fn bump_eval(u: f64, order: Derivative) -> f64 {
    let q = (u - 1.0) * (2.0 - u);
    if q <= 0.0 || !q.is_finite() {
        return 0.0;
    }
    let psi = (-1.0 / q).exp();
    if psi == 0.0 {
        return 0.0;
    }
    let dq = 3.0 - 2.0 * u;
    match order {
        Derivative::Value => psi,
        Derivative::First => psi * dq / (q * q),
        Derivative::Second => {
            let q2 = q * q;
            psi * (dq * dq / (q2 * q2) - 2.0 / q2 - 2.0 * dq * dq / (q2 * q))
        }
    }
}

/// Parameters of the quasimode construction.
#[derive(Debug, Clone)]
pub struct QuasimodeConfig {
    p: f64,
    s: f64,
    datum: RestrictedRootDatum,
    r_schedule: Vec<f64>,
    siegel_floor: f64,
}

impl QuasimodeConfig {
    /// `siegel_floor` is `log t / ‖α‖`; profiles must vanish below it.
    pub fn new(
        p: f64,
        s: f64,
        datum: RestrictedRootDatum,
        r_schedule: Vec<f64>,
        siegel_floor: f64,
    ) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::Config(format!(
                "exponent p must lie in [1, inf), got {p}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::Config(format!(
                "spectral parameter s must be finite, got {s}"
            )));
        }
        if !siegel_floor.is_finite() {
            return Err(Error::Config("siegel floor must be finite".into()));
        }
        if r_schedule.is_empty() {
            return Err(Error::Config("empty r_n schedule".into()));
        }
        if r_schedule.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::Config(
                "every r_n must be positive and finite".into(),
            ));
        }
        if r_schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "the r_n schedule must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            p,
            s,
            datum,
            r_schedule,
            siegel_floor,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn rho(&self) -> f64 {
        self.datum.rho_norm()
    }

    pub fn r_schedule(&self) -> &[f64] {
        &self.r_schedule
    }

    pub fn siegel_floor(&self) -> f64 {
        self.siegel_floor
    }

    /// The boundary point `z(s)` of `P_p` the quasimodes approximate.
    pub fn spectral_point(&self) -> Complex64 {
        ParabolicRegion::new(self.p, self.rho())
            .expect("validated exponent and positive rho")
            .boundary_point(self.s)
    }

    /// `b − 2is`, the coefficient of `c_n'` in the residual.
    pub fn drift_coefficient(&self) -> Complex64 {
        let (tilt, _) = conjugate_coefficients(self.rho(), self.p);
        Complex64::new(tilt, -2.0 * self.s)
    }

    fn scale(&self, n: usize) -> Result<f64> {
        let r = *self.r_schedule.get(n).ok_or_else(|| {
            Error::Config(format!("index {n} is past the end of the r_n schedule"))
        })?;
        if r <= self.siegel_floor {
            return Err(Error::Config(format!(
                "r_{n} = {r} does not exceed the Siegel floor {}; supp(c_n) would leave the Siegel set",
                self.siegel_floor
            )));
        }
        Ok(r)
    }

    /// `c_n(y) = ψ(y / r_n)`.
    pub fn profile(&self, n: usize, y: f64) -> Result<f64> {
        self.profile_derivative(n, y, Derivative::Value)
    }

    /// Derivatives of `c_n` with respect to `y`.
    pub fn profile_derivative(&self, n: usize, y: f64, order: Derivative) -> Result<f64> {
        let r = self.scale(n)?;
        Ok(scaled_bump(r, y, order))
    }

    /// `−c_n''(y) + (b − 2is) c_n'(y)`.
    pub fn residual_profile(&self, n: usize, y: f64) -> Result<Complex64> {
        let r = self.scale(n)?;
        Ok(residual_at(r, self.drift_coefficient(), y))
    }

    /// The quasimode itself along the cusp direction, `c_n(y) e^{(2R/p + is) y}`.
    pub fn quasimode_value(&self, n: usize, y: f64) -> Result<Complex64> {
        let c = self.profile(n, y)?;
        let exponent = Complex64::new(2.0 * self.rho() / self.p, self.s) * y;
        Ok(c * exponent.exp())
    }

    /// Left-over-right quotients of the three scaling identities
    /// `∫|c_n^{(k)}|^p = r_n^{1−kp} ∫|ψ^{(k)}|^p`, `k = 0, 1, 2`.
    pub fn scaling_check(&self, n: usize) -> Result<[f64; 3]> {
        let r = self.scale(n)?;
        let p = self.p;
        let mut out = [0.0; 3];
        for (k, order) in [Derivative::Value, Derivative::First, Derivative::Second]
            .into_iter()
            .enumerate()
        {
            let lhs = power_integral(|y| scaled_bump(r, y, order).into(), (r, 2.0 * r), p)?;
            let rhs = r.powf(1.0 - k as f64 * p)
                * power_integral(|u| bump_eval(u, order).into(), (1.0, 2.0), p)?;
            out[k] = lhs / rhs;
        }
        Ok(out)
    }

    /// `‖Δ f_n − z f_n‖_p / ‖f_n‖_p`, computed from the one-dimensional profiles.
    pub fn quasimode_ratio(&self, n: usize) -> Result<f64> {
        let r = self.scale(n)?;
        let drift = self.drift_coefficient();
        let support = (r, 2.0 * r);
        let numerator = profile_lp_norm(|y| residual_at(r, drift, y), support, self.p)?;
        let denominator = profile_lp_norm(
            |y| scaled_bump(r, y, Derivative::Value).into(),
            support,
            self.p,
        )?;
        if denominator == 0.0 {
            return Err(Error::Config("the profile c_n vanishes identically".into()));
        }
        Ok(numerator / denominator)
    }

    /// `(‖c_n''‖_p + |b − 2is| ‖c_n'‖_p) / ‖c_n‖_p`, the triangle-inequality
    /// bound on [`Self::quasimode_ratio`].
    pub fn triangle_bound(&self, n: usize) -> Result<f64> {
        let r = self.scale(n)?;
        let support = (r, 2.0 * r);
        let norm = |order| profile_lp_norm(|y| scaled_bump(r, y, order).into(), support, self.p);
        let c0 = norm(Derivative::Value)?;
        let c1 = norm(Derivative::First)?;
        let c2 = norm(Derivative::Second)?;
        Ok((c2 + self.drift_coefficient().norm() * c1) / c0)
    }

    /// Constants `(C₄, C₅)` with `ratio(n) ≤ C₄/r_n + C₅/r_n²` for this bump:
    /// `C₄ = |b − 2is| ‖ψ'‖_p / ‖ψ‖_p` and `C₅ = ‖ψ''‖_p / ‖ψ‖_p`.
    pub fn decay_constants(&self) -> Result<(f64, f64)> {
        let norm = |order| profile_lp_norm(|u| bump_eval(u, order).into(), (1.0, 2.0), self.p);
        let psi = norm(Derivative::Value)?;
        let c4 = self.drift_coefficient().norm() * norm(Derivative::First)? / psi;
        let c5 = norm(Derivative::Second)? / psi;
        Ok((c4, c5))
    }
}

fn scaled_bump(r: f64, y: f64, order: Derivative) -> f64 {
    let u = y / r;
    match order {
        Derivative::Value => bump_eval(u, order),
        Derivative::First => bump_eval(u, order) / r,
        Derivative::Second => bump_eval(u, order) / (r * r),
    }
}

fn residual_at(r: f64, drift: Complex64, y: f64) -> Complex64 {
    -scaled_bump(r, y, Derivative::Second) + drift * scaled_bump(r, y, Derivative::First)
}

// |g|^p is non-negative, so a relative target is meaningful even for the
// minute integrals of c_n'' at large r_n; the absolute floor only stops the
// loop on identically vanishing integrands.
fn quadrature_options() -> QuadratureOptions {
    QuadratureOptions {
        abs_tol: f64::MIN_POSITIVE,
        rel_tol: 1e-13,
        max_intervals: 4000,
    }
}

fn power_integral<G: Fn(f64) -> Complex64>(g: G, support: (f64, f64), p: f64) -> Result<f64> {
    Ok(integrate(
        |y| g(y).norm().powf(p),
        support.0,
        support.1,
        quadrature_options(),
    )?
    .value)
}

/// `(∫ |g|^p dy)^{1/p}` over the support interval of `g`, by adaptive quadrature.
pub fn profile_lp_norm<G: Fn(f64) -> Complex64>(g: G, support: (f64, f64), p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::Input(format!(
            "exponent p must lie in [1, inf), got {p}"
        )));
    }
    let integral = power_integral(g, support, p)?;
    Ok(integral.powf(1.0 / p))
}

/// Least-squares slope of `log ratio` against `log r`.
pub fn decay_fit(ratios: &[f64], r_schedule: &[f64]) -> Result<f64> {
    if ratios.len() != r_schedule.len() {
        return Err(Error::Input(format!(
            "{} ratios for {} scales",
            ratios.len(),
            r_schedule.len()
        )));
    }
    if ratios.len() < 4 {
        return Err(Error::Input(format!(
            "need at least 4 points for a decay fit, got {}",
            ratios.len()
        )));
    }
    if ratios
        .iter()
        .chain(r_schedule)
        .any(|v| !(v.is_finite() && *v > 0.0))
    {
        return Err(Error::Numerical(
            "log-log fit needs positive finite data".into(),
        ));
    }
    let xs: Vec<f64> = r_schedule.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = ratios.iter().map(|q| q.ln()).collect();
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let (sxy, sxx) = xs.iter().zip(&ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (
            sxy + (x - mean_x) * (y - mean_y),
            sxx + (x - mean_x) * (x - mean_x),
        )
    });
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasimodeRow {
    pub r: f64,
    pub ratio: f64,
    /// `C₄/r + C₅/r²`.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct QuasimodeReport {
    pub z: Complex64,
    pub rows: Vec<QuasimodeRow>,
    /// Fitted log-log slope; `None` with fewer than four scales.
    pub slope: Option<f64>,
    /// The ratios decrease strictly over the upper half of the schedule,
    /// which marks `z` as numerically in the approximate point spectrum.
    pub approximate_point_spectral: bool,
}

/// Computes every ratio of the schedule, the decay bound and the fitted slope.
pub fn analyze(config: &QuasimodeConfig) -> Result<QuasimodeReport> {
    let (c4, c5) = config.decay_constants()?;
    let rows = (0..config.r_schedule.len())
        .into_par_iter()
        .map(|n| {
            let r = config.r_schedule[n];
            Ok(QuasimodeRow {
                r,
                ratio: config.quasimode_ratio(n)?,
                bound: c4 / r + c5 / (r * r),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let slope = if rows.len() >= 4 {
        let ratios: Vec<f64> = rows.iter().map(|row| row.ratio).collect();
        Some(decay_fit(&ratios, &config.r_schedule)?)
    } else {
        None
    };
    let tail = &rows[rows.len() / 2..];
    let approximate_point_spectral =
        rows.len() >= 2 && tail.windows(2).all(|w| w[1].ratio < w[0].ratio);
    Ok(QuasimodeReport {
        z: config.spectral_point(),
        rows,
        slope,
        approximate_point_spectral,
    })
}
