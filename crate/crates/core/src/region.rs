//! Parabolic regions `P_p` in the complex plane.
//!
//! For `p ≠ 2` the region is `{x + iy : x ≥ c + y² / b²}` with vertex
//! `c = (4R²/p)(1 − 1/p)` and tilt `b = 2R(1 − 2/p)`, where `R = ‖ρ_P‖`.
//! Its boundary is traced by `s ↦ c + s² + i b s`. For `p = 2` the tilt
//! vanishes and the region collapses onto the real ray `[R², ∞)`.

use crate::error::{Error, Result};
use crate::ComplexPoint;

/// Absolute tolerance on the imaginary part when testing membership in the
/// degenerate `p = 2` ray.
pub const P2_IMAG_TOL: f64 = 1e-12;

/// `p / (p - 1)`; the `L^p` and `L^{p'}` spectra coincide.
pub fn dual_exponent(p: f64) -> Result<f64> {
    check_open_exponent(p)?;
    Ok(p / (p - 1.0))
}

/// Half-angle `arctan(|p − 2| / (2√(p − 1)))` of the sector that contains
/// the spectrum of any submarkovian generator on `L^p`.
pub fn sector_angle(p: f64) -> Result<f64> {
    check_open_exponent(p)?;
    Ok(((p - 2.0).abs() / (2.0 * (p - 1.0).sqrt())).atan())
}

fn check_open_exponent(p: f64) -> Result<()> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Input(format!(
            "exponent p must lie in (1, inf), got {p}"
        )));
    }
    Ok(())
}

/// Drift and potential `(b, c)` produced by conjugating `-∂²_y + 2R ∂_y`
/// with `e^{(2R/p) y}`. They are the tilt and vertex of `P_p`.
pub fn conjugate_coefficients(rho: f64, p: f64) -> (f64, f64) {
    let tilt = 2.0 * rho * (1.0 - 2.0 / p);
    let vertex = 4.0 * rho * rho / p * (1.0 - 1.0 / p);
    (tilt, vertex)
}

/// The closed parabolic region `P_p` attached to `‖ρ_P‖ = rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicRegion {
    p: f64,
    rho: f64,
}

impl ParabolicRegion {
    /// Accepts `p ∈ [1, ∞)` and `rho > 0`.
    pub fn new(p: f64, rho: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::Input(format!(
                "exponent p must lie in [1, inf), got {p}"
            )));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Input(format!(
                "rho norm must be positive, got {rho}"
            )));
        }
        Ok(Self { p, rho })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn vertex(&self) -> f64 {
        conjugate_coefficients(self.rho, self.p).1
    }

    pub fn tilt(&self) -> f64 {
        conjugate_coefficients(self.rho, self.p).0
    }

    /// True when the region is the degenerate real ray of the `L²` case.
    pub fn is_degenerate(&self) -> bool {
        self.p == 2.0
    }

    /// The same region viewed through the dual exponent. Only meaningful for `p > 1`.
    pub fn dual(&self) -> Result<Self> {
        Self::new(dual_exponent(self.p)?, self.rho)
    }

    /// Exact closed-region membership.
    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.contains_with_tol(z, 0.0)
    }

    /// Membership with slack `tol` on the real part, for classifying points
    /// that sit on the boundary up to rounding.
    pub fn contains_with_tol(&self, z: ComplexPoint, tol: f64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        if self.is_degenerate() {
            return z.im.abs() <= P2_IMAG_TOL && z.re >= self.vertex() - tol;
        }
        z.re >= self.boundary_re_at(z.im) - tol
    }

    /// `c + im² / b²`: the real part of the boundary at height `im`.
    /// Not defined for `p = 2`.
    fn boundary_re_at(&self, im: f64) -> f64 {
        let b = self.tilt();
        self.vertex() + (im / b) * (im / b)
    }

    /// Signed distance of `z` to the boundary measured along the real axis,
    /// `re − (c + im²/b²)`. Non-negative exactly on the region. Only for `p ≠ 2`.
    pub fn real_margin(&self, z: ComplexPoint) -> Option<f64> {
        (!self.is_degenerate()).then(|| z.re - self.boundary_re_at(z.im))
    }

    /// `c + s² + i b s`.
    pub fn boundary_point(&self, s: f64) -> ComplexPoint {
        ComplexPoint::new(self.vertex() + s * s, self.tilt() * s)
    }

    /// `(2R/p + is)(2R − 2R/p − is)`: the factored form of the boundary curve.
    pub fn boundary_point_product(&self, s: f64) -> ComplexPoint {
        let a = 2.0 * self.rho / self.p;
        ComplexPoint::new(a, s) * ComplexPoint::new(2.0 * self.rho - a, -s)
    }

    /// `n` boundary points at equally spaced `s ∈ [−s_max, s_max]`,
    /// returned together with their parameters.
    pub fn sample_boundary(&self, s_max: f64, n: usize) -> Result<Vec<(f64, ComplexPoint)>> {
        if n < 2 {
            return Err(Error::Input(format!(
                "need at least 2 boundary samples, got {n}"
            )));
        }
        if !(s_max.is_finite() && s_max > 0.0) {
            return Err(Error::Input(format!("s_max must be positive, got {s_max}")));
        }
        let last = (n - 1) as f64;
        Ok((0..n)
            .map(|k| {
                let s = -s_max + 2.0 * s_max * (k as f64 / last);
                (s, self.boundary_point(s))
            })
            .collect())
    }

    /// Largest argument attained on the boundary and the parameter where it
    /// is attained.
    ///
    /// The argument of `c + s² + ibs` peaks at `|s| = √c` with value
    /// `arctan(|b| / (2√c))`, which simplifies to the sector half-angle for
    /// every `R`. For `p < 2` the tilt is negative and the peak sits at
    /// `s = −√c`. The degenerate `p = 2` ray returns `(0, 0)`.
    pub fn max_arg(&self) -> Result<(f64, f64)> {
        if self.is_degenerate() {
            return Ok((0.0, 0.0));
        }
        if self.p <= 1.0 {
            return Err(Error::Domain(
                "the boundary of P_1 passes through 0, its argument is unbounded".into(),
            ));
        }
        let c = self.vertex();
        let b = self.tilt();
        let s_star = c.sqrt().copysign(b);
        let angle = (b.abs() / (2.0 * c.sqrt())).atan();
        Ok((angle, s_star))
    }
}

/// Location of a point of `P_p` on the nested family of boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFamilyPoint {
    /// Exponent in `[2, p]` whose boundary passes through the point.
    pub q: f64,
    /// Curve parameter on `∂P_q`.
    pub s: f64,
}

/// Finds `q ∈ [2, p]` and `s` with `boundary_point(P_q, s) = z`.
///
/// Writing `F(q) = c(q) + im²/b(q)² − re`, both terms decrease strictly in
/// `q` on `(2, ∞)` and `F → +∞` as `q → 2⁺` whenever `im ≠ 0`, so the root
/// is unique and bracketed by `(2, p]` once `z ∈ P_p`. Real points either
/// lie on the ray `∂P_2` (`re ≥ R²`) or are vertices of some `P_q`.
pub fn boundary_family_parameter(z: ComplexPoint, p: f64, rho: f64) -> Result<BoundaryFamilyPoint> {
    if !(p.is_finite() && p >= 2.0) {
        return Err(Error::Input(format!(
            "the boundary family is indexed by q in [2, p]; need p >= 2, got {p}"
        )));
    }
    let region = ParabolicRegion::new(p, rho)?;
    if !region.contains(z) {
        return Err(Error::Domain(format!("{z} is not in P_{p} (rho = {rho})")));
    }
    let vertex_at = |q: f64| conjugate_coefficients(rho, q).1;
    let tilt_at = |q: f64| conjugate_coefficients(rho, q).0;

    if z.im == 0.0 {
        let ray_start = rho * rho;
        if z.re >= ray_start {
            return Ok(BoundaryFamilyPoint {
                q: 2.0,
                s: (z.re - ray_start).sqrt(),
            });
        }
        // z is the vertex of exactly one P_q; c(q) decreases on [2, p]
        let q = bisect_decreasing(|q| vertex_at(q) - z.re, 2.0, p);
        return Ok(BoundaryFamilyPoint { q, s: 0.0 });
    }

    let residual = |q: f64| {
        let b = tilt_at(q);
        vertex_at(q) + (z.im / b) * (z.im / b) - z.re
    };
    let q = bisect_decreasing(residual, 2.0, p);
    Ok(BoundaryFamilyPoint {
        q,
        s: z.im / tilt_at(q),
    })
}

/// Root of a strictly decreasing function on `[lo, hi]` with `f(hi) ≤ 0`.
/// Evaluations at the endpoint `lo` are never made, so `f` may blow up there.
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if f(hi) >= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
