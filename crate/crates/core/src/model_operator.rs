//! Discretised model cusp operator.
//!
//! Conjugating the cusp direction `−∂²_y + 2R ∂_y` of the Laplacian by
//! `e^{(2R/p) y}` turns the weighted `L^p` problem into the constant
//! coefficient operator `−d²/dy² + b d/dy + c` on an unweighted line, with
//! `(b, c)` the tilt and vertex of `P_p`. Its Fourier symbol `ξ² + ibξ + c`
//! runs exactly along `∂P_p`. Second-order central differences on a uniform
//! grid give a tridiagonal matrix, circulant under periodic wrap-around.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smallest_singular_value, BandMatrix, SigmaMinOptions};
use crate::region::{conjugate_coefficients, ParabolicRegion};
use crate::ComplexPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub y_min: f64,
    pub y_max: f64,
    /// Number of unknowns.
    pub n: usize,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        (self.y_max - self.y_min) / self.n as f64
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            y_min: 0.0,
            y_max: 40.0,
            n: 1024,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModelOperator1D {
    rho: f64,
    p: f64,
    grid: Grid,
    bc: BoundaryCondition,
}

/// Rectangle `[re_min, re_max] × [im_min, im_max]` in the spectral plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BoundingBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite())
            && re_min < re_max
            && im_min < im_max;
        if !ok {
            return Err(Error::Input(format!(
                "bounding box needs finite re_min < re_max and im_min < im_max, got [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }
}

/// `σ_min(A − z)` sampled on a regular grid of the spectral plane, row-major
/// with the real part varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudospectrumField {
    pub bbox: BoundingBox,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl PseudospectrumField {
    /// Grid node `(i, j)`; coordinates of nodes shared by a refined grid
    /// are bitwise identical.
    pub fn point(&self, i: usize, j: usize) -> ComplexPoint {
        grid_point(&self.bbox, self.nx, self.ny, i, j)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// `(z, σ_min)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (ComplexPoint, f64)> + '_ {
        (0..self.ny)
            .flat_map(move |j| (0..self.nx).map(move |i| (i, j)))
            .map(|(i, j)| (self.point(i, j), self.value(i, j)))
    }
}

fn grid_point(bbox: &BoundingBox, nx: usize, ny: usize, i: usize, j: usize) -> ComplexPoint {
    let tx = i as f64 / (nx - 1) as f64;
    let ty = j as f64 / (ny - 1) as f64;
    ComplexPoint::new(
        bbox.re_min + (bbox.re_max - bbox.re_min) * tx,
        bbox.im_min + (bbox.im_max - bbox.im_min) * ty,
    )
}

impl ModelOperator1D {
    pub fn new(rho: f64, p: f64, grid: Grid, bc: BoundaryCondition) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Input(format!(
                "rho norm must be positive, got {rho}"
            )));
        }
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::Input(format!(
                "exponent p must lie in (1, inf), got {p}"
            )));
        }
        if grid.n < 8 {
            return Err(Error::Input(format!(
                "need at least 8 grid points, got {}",
                grid.n
            )));
        }
        let h = grid.spacing();
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Input(format!(
                "grid interval [{}, {}] is empty",
                grid.y_min, grid.y_max
            )));
        }
        Ok(Self { rho, p, grid, bc })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn boundary_condition(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn spacing(&self) -> f64 {
        self.grid.spacing()
    }

    /// Drift `b` and potential `c`.
    pub fn coefficients(&self) -> (f64, f64) {
        conjugate_coefficients(self.rho, self.p)
    }

    pub fn region(&self) -> ParabolicRegion {
        ParabolicRegion::new(self.p, self.rho).expect("validated p > 1 and rho > 0")
    }

    /// `ξ² + i b ξ + c`.
    pub fn continuous_symbol(&self, xi: f64) -> ComplexPoint {
        let (b, c) = self.coefficients();
        ComplexPoint::new(xi * xi + c, b * xi)
    }

    /// Entries `(sub, diag, super)` of the central-difference stencil.
    pub fn stencil(&self) -> (f64, f64, f64) {
        let h = self.spacing();
        let (b, c) = self.coefficients();
        let second = 1.0 / (h * h);
        let drift = b / (2.0 * h);
        (-second - drift, 2.0 * second + c, -second + drift)
    }

    /// Dense `N × N` matrix of the discretisation.
    pub fn assemble_matrix(&self) -> DMatrix<Complex64> {
        let n = self.grid.n;
        let (sub, diag, sup) = self.stencil();
        let mut a = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for j in 0..n {
            a[(j, j)] = diag.into();
            if j + 1 < n {
                a[(j, j + 1)] = sup.into();
                a[(j + 1, j)] = sub.into();
            }
        }
        if self.bc == BoundaryCondition::Periodic {
            a[(0, n - 1)] = sub.into();
            a[(n - 1, 0)] = sup.into();
        }
        a
    }

    /// `(2 − 2cos θ_k)/h² + i b sin θ_k / h + c` at `θ_k = 2πk/N`, in order
    /// `k = 0..N`.
    pub fn discrete_spectrum_periodic(&self) -> Result<Vec<ComplexPoint>> {
        if self.bc != BoundaryCondition::Periodic {
            return Err(Error::Input(
                "the closed-form spectrum exists only for periodic boundary conditions".into(),
            ));
        }
        let n = self.grid.n;
        Ok((0..n)
            .map(|k| self.circulant_eigenvalue(2.0 * PI * k as f64 / n as f64))
            .collect())
    }

    fn circulant_eigenvalue(&self, theta: f64) -> ComplexPoint {
        let h = self.spacing();
        let (b, c) = self.coefficients();
        ComplexPoint::new((2.0 - 2.0 * theta.cos()) / (h * h) + c, b * theta.sin() / h)
    }

    /// Frequency `ξ_k = 2πk/(N h)` carried by the `k`-th periodic eigenvector,
    /// with `k` folded into `(−N/2, N/2]`.
    pub fn frequency(&self, k: usize) -> f64 {
        let n = self.grid.n as isize;
        let mut signed = k as isize % n;
        if signed > n / 2 {
            signed -= n;
        }
        2.0 * PI * signed as f64 / (self.grid.y_max - self.grid.y_min)
    }

    /// `A − zI` in band storage. The periodic ring is renumbered
    /// `0, N−1, 1, N−2, …` so that the wrap-around couplings fall within
    /// two diagonals; this symmetric permutation leaves singular values intact.
    pub fn shifted_band(&self, z: ComplexPoint) -> BandMatrix {
        let n = self.grid.n;
        let (sub, diag, sup) = self.stencil();
        match self.bc {
            BoundaryCondition::Dirichlet => {
                let mut m = BandMatrix::zeros(n, 1, 1);
                for j in 0..n {
                    m.set(j, j, Complex64::from(diag) - z);
                    if j + 1 < n {
                        m.set(j, j + 1, sup.into());
                        m.set(j + 1, j, sub.into());
                    }
                }
                m
            }
            BoundaryCondition::Periodic => {
                let position = interleaved_positions(n);
                let mut m = BandMatrix::zeros(n, 2, 2);
                for j in 0..n {
                    let (row, next, prev) = (
                        position[j],
                        position[(j + 1) % n],
                        position[(j + n - 1) % n],
                    );
                    m.set(row, row, Complex64::from(diag) - z);
                    m.set(row, next, sup.into());
                    m.set(row, prev, sub.into());
                }
                m
            }
        }
    }

    /// Smallest singular value of `A − zI`.
    pub fn sigma_min(&self, z: ComplexPoint) -> Result<f64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Input(format!("non-finite spectral point {z}")));
        }
        smallest_singular_value(&self.shifted_band(z), SigmaMinOptions::default())
    }

    /// `σ_min(A − z)` on an `nx × ny` grid over `bbox`. Nodes are evaluated
    /// in parallel; each evaluation is seeded identically so the field does
    /// not depend on scheduling.
    pub fn pseudospectrum_grid(
        &self,
        bbox: BoundingBox,
        nx: usize,
        ny: usize,
    ) -> Result<PseudospectrumField> {
        if nx < 2 || ny < 2 {
            return Err(Error::Input(format!(
                "pseudospectrum grid needs nx, ny >= 2, got {nx} x {ny}"
            )));
        }
        let values = (0..nx * ny)
            .into_par_iter()
            .map(|idx| self.sigma_min(grid_point(&bbox, nx, ny, idx % nx, idx / nx)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(PseudospectrumField {
            bbox,
            nx,
            ny,
            values,
        })
    }
}

/// `position[old]` under the ordering `0, N−1, 1, N−2, 2, …`.
fn interleaved_positions(n: usize) -> Vec<usize> {
    let mut position = vec![0; n];
    for (new, slot) in (0..n)
        .map(|k| if k % 2 == 0 { k / 2 } else { n - 1 - k / 2 })
        .enumerate()
    {
        position[slot] = new;
    }
    position
}
