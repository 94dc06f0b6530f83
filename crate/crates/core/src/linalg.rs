//! Banded complex LU with partial pivoting and a smallest-singular-value
//! solver built on it.
//!
//! `σ_min(M)` is obtained as `1/√μ` where `μ` is the largest eigenvalue of
//! `(M^H M)^{-1}`, found by block inverse iteration with a Rayleigh–Ritz
//! step. Each application of `(M^H M)^{-1}` costs two banded solves, one
//! with `M` and one with `M^H`, so a probe costs `O(n · bandwidth)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square matrix stored by its `kl` sub- and `ku` super-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    // row i keeps columns i - kl ..= i + ku
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self {
            n,
            kl,
            ku,
            data: vec![ZERO; n * (kl + ku + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let offset = j as isize - i as isize + self.kl as isize;
        (i < self.n && j < self.n && offset >= 0 && offset <= (self.kl + self.ku) as isize)
            .then(|| i * (self.kl + self.ku + 1) + offset as usize)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(ZERO, |k| self.data[k])
    }

    /// Panics if `(i, j)` lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        let k = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("entry ({i}, {j}) is outside the band"));
        self.data[k] = value;
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.n, self.ku, self.kl);
        for i in 0..self.n {
            for j in i.saturating_sub(self.kl)..=(i + self.ku).min(self.n - 1) {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                (i.saturating_sub(self.kl)..=(i + self.ku).min(self.n - 1))
                    .map(|j| self.get(i, j) * x[j])
                    .sum()
            })
            .collect()
    }
}

/// The factorisation hit an exactly zero pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular {
    pub column: usize,
}

/// `PA = LU` for a band matrix; row interchanges widen the upper band to `kl + ku`.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    width: usize,
    data: Vec<Complex64>,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn factor(a: &BandMatrix) -> std::result::Result<Self, Singular> {
        let (n, kl) = (a.n, a.kl);
        let upper = a.kl + a.ku;
        let width = kl + upper + 1;
        let mut data = vec![ZERO; n * width];
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + a.ku).min(n - 1) {
                data[i * width + j + kl - i] = a.get(i, j);
            }
        }
        let at = |i: usize, j: usize| i * width + j + kl - i;
        let mut pivots = vec![0; n];

        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + upper).min(n - 1);
            let mut pivot = k;
            let mut best = data[at(k, k)].norm();
            for i in k + 1..=last_row {
                let mag = data[at(i, k)].norm();
                if mag > best {
                    best = mag;
                    pivot = i;
                }
            }
            if best == 0.0 {
                return Err(Singular { column: k });
            }
            pivots[k] = pivot;
            if pivot != k {
                for j in k..=last_col {
                    data.swap(at(k, j), at(pivot, j));
                }
            }
            let diag = data[at(k, k)];
            for i in k + 1..=last_row {
                let l = data[at(i, k)] / diag;
                data[at(i, k)] = l;
                if l != ZERO {
                    for j in k + 1..=last_col {
                        let u = data[at(k, j)];
                        data[at(i, j)] -= l * u;
                    }
                }
            }
        }
        Ok(Self {
            n,
            kl,
            width,
            data,
            pivots,
        })
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.width + j + self.kl - i]
    }

    /// Overwrites `b` with the solution of `A x = b`.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        let upper = self.width - 1 - self.kl;
        for k in 0..n {
            b.swap(k, self.pivots[k]);
            let bk = b[k];
            for i in k + 1..=(k + self.kl).min(n - 1) {
                b[i] -= self.at(i, k) * bk;
            }
        }
        for k in (0..n).rev() {
            let mut acc = b[k];
            for j in k + 1..=(k + upper).min(n - 1) {
                acc -= self.at(k, j) * b[j];
            }
            b[k] = acc / self.at(k, k);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SigmaMinOptions {
    pub max_iter: usize,
    /// Stop once successive estimates agree to this relative tolerance.
    pub rel_tol: f64,
    /// Number of simultaneously iterated vectors.
    pub block: usize,
    pub seed: u64,
}

impl Default for SigmaMinOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            rel_tol: 1e-10,
            block: 8,
            seed: 42,
        }
    }
}

/// Smallest singular value of a band matrix. An exactly singular matrix
/// returns `0`.
pub fn smallest_singular_value(m: &BandMatrix, opts: SigmaMinOptions) -> Result<f64> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    let (lu, lu_h) = match (BandLu::factor(m), BandLu::factor(&m.conj_transpose())) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(0.0),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let block = opts.block.clamp(1, n);
    let mut basis: Vec<Vec<Complex64>> = (0..block).map(|_| random_vector(&mut rng, n)).collect();
    orthonormalize(&mut basis, &mut rng);

    let mut previous = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let images: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|q| {
                let mut y = q.clone();
                lu.solve_in_place(&mut y);
                y
            })
            .collect();
        // Rayleigh–Ritz for (M^H M)^{-1} on span(basis): Y^H Y with Y = M^{-1} Q
        let gram = DMatrix::from_fn(block, block, |i, j| dot(&images[i], &images[j]));
        let mu = SymmetricEigen::new(gram).eigenvalues.max();
        if mu.is_infinite() {
            return Ok(0.0);
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::Numerical(format!(
                "inverse iteration produced Ritz value {mu}"
            )));
        }
        let sigma = 1.0 / mu.sqrt();
        if (sigma - previous).abs() <= opts.rel_tol * sigma {
            return Ok(sigma);
        }
        previous = sigma;

        basis = images
            .into_iter()
            .map(|mut y| {
                lu_h.solve_in_place(&mut y);
                y
            })
            .collect();
        orthonormalize(&mut basis, &mut rng);
    }
    Err(Error::Numerical(format!(
        "inverse iteration did not reach relative tolerance {} in {} steps",
        opts.rel_tol, opts.max_iter
    )))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// `a^H b`.
fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn scale(v: &mut [Complex64], factor: f64) {
    v.iter_mut().for_each(|x| *x *= factor);
}

/// Modified Gram–Schmidt with one re-orthogonalisation pass. Columns that
/// collapse numerically are replaced by fresh random vectors.
fn orthonormalize(basis: &mut [Vec<Complex64>], rng: &mut ChaCha8Rng) {
    let n = basis[0].len();
    for k in 0..basis.len() {
        let initial = norm(&basis[k]);
        if initial.is_finite() && initial > 0.0 {
            scale(&mut basis[k], 1.0 / initial);
        }
        let (done, rest) = basis.split_at_mut(k);
        let v = &mut rest[0];
        let mut attempts = 0;
        loop {
            for _ in 0..2 {
                for q in done.iter() {
                    let proj = dot(q, v);
                    v.iter_mut().zip(q).for_each(|(x, qi)| *x -= proj * qi);
                }
            }
            let len = norm(v);
            if len.is_finite() && len > 1e-8 {
                scale(v, 1.0 / len);
                break;
            }
            attempts += 1;
            assert!(attempts < 16, "cannot extend an orthonormal basis of C^{n}");
            *v = random_vector(rng, n);
            let fresh = norm(v);
            scale(v, 1.0 / fresh);
        }
    }
}
