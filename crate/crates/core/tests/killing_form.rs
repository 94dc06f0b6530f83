//! Independent check of the root-datum formulas: build so(n,1), su(n,1) and
//! sp(n,1) as matrix algebras, compute ad(H) in a basis and read off the
//! Killing norm, the root values and their multiplicities directly.

use cusp_spectra::root_datum::KnownSpace;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

#[derive(Clone, Copy)]
enum Field {
    Real,
    Complex,
    Quaternion,
}

struct Algebra {
    /// Size of the complex matrices.
    m: usize,
    /// Orthonormal columns spanning the algebra inside gl(m, C) = R^{2m²}.
    basis: DMatrix<f64>,
}

fn to_matrix(m: usize, v: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(m, m, |i, j| {
        Complex64::new(v[2 * (i * m + j)], v[2 * (i * m + j) + 1])
    })
}

fn to_vector(x: &DMatrix<Complex64>) -> DVector<f64> {
    let m = x.nrows();
    let mut v = DVector::zeros(2 * m * m);
    for i in 0..m {
        for j in 0..m {
            v[2 * (i * m + j)] = x[(i, j)].re;
            v[2 * (i * m + j) + 1] = x[(i, j)].im;
        }
    }
    v
}

/// The Hermitian form of signature (n, 1), doubled for the quaternionic
/// model where an n+1 quaternionic matrix is a 2(n+1) complex one.
fn form(n: usize, field: Field) -> DMatrix<Complex64> {
    let k = n + 1;
    let sign = |i: usize| if i % k == n { -1.0 } else { 1.0 };
    let m = if matches!(field, Field::Quaternion) {
        2 * k
    } else {
        k
    };
    DMatrix::from_fn(
        m,
        m,
        |i, j| if i == j { sign(i).into() } else { 0.0.into() },
    )
}

fn omega(k: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(2 * k, 2 * k, |i, j| {
        if i + k == j {
            (-1.0).into()
        } else if j + k == i {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

/// `{X : X^H J + J X = 0}` intersected with the field and trace constraints.
fn isometry_algebra(n: usize, field: Field) -> Algebra {
    let j = form(n, field);
    let m = j.nrows();
    let dim = 2 * m * m;
    let mut rows: Vec<DVector<f64>> = Vec::new();
    let images: Vec<DMatrix<Complex64>> = (0..dim)
        .map(|e| {
            let mut v = vec![0.0; dim];
            v[e] = 1.0;
            to_matrix(m, &v)
        })
        .collect();
    let mut constrain = |map: &dyn Fn(&DMatrix<Complex64>) -> DVector<f64>| {
        let columns: Vec<DVector<f64>> = images.iter().map(map).collect();
        for r in 0..columns[0].len() {
            rows.push(DVector::from_iterator(dim, columns.iter().map(|c| c[r])));
        }
    };
    constrain(&|x| to_vector(&(x.adjoint() * &j + &j * x)));
    match field {
        Field::Real => constrain(&|x| DVector::from_iterator(m * m, x.iter().map(|z| z.im))),
        Field::Complex => constrain(&|x| {
            let t = x.trace();
            DVector::from_vec(vec![t.re, t.im])
        }),
        Field::Quaternion => {
            let w = omega(n + 1);
            constrain(&|x| to_vector(&(x * &w - &w * x.map(|z| z.conj()))));
        }
    }
    let c = DMatrix::from_fn(rows.len(), dim, |r, col| rows[r][col]);
    let svd = c.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let null: Vec<DVector<f64>> = (0..dim)
        .filter(|&k| k >= svd.singular_values.len() || svd.singular_values[k] < 1e-10)
        .map(|k| v_t.row(k).transpose())
        .collect();
    Algebra {
        m,
        basis: DMatrix::from_columns(&null),
    }
}

/// Boost in the (0, n) plane, which spans a maximal split abelian subalgebra.
fn boost(n: usize, field: Field) -> DMatrix<Complex64> {
    let m = form(n, field).nrows();
    let k = n + 1;
    DMatrix::from_fn(m, m, |i, j| {
        let (bi, bj) = (i / k, j / k);
        let (li, lj) = (i % k, j % k);
        if bi == bj && ((li == 0 && lj == n) || (li == n && lj == 0)) {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

struct RootData {
    dim_g: usize,
    alpha: f64,
    m_alpha: usize,
    m_2alpha: usize,
}

fn restricted_roots(n: usize, field: Field) -> RootData {
    let alg = isometry_algebra(n, field);
    let h = boost(n, field);
    let d = alg.basis.ncols();
    let h_vec = to_vector(&h);
    let h_coords = alg.basis.transpose() * &h_vec;
    assert!(
        (&alg.basis * &h_coords - &h_vec).norm() < 1e-10,
        "H must lie in the algebra"
    );

    let mut ad = DMatrix::<f64>::zeros(d, d);
    for col in 0..d {
        let x = to_matrix(alg.m, alg.basis.column(col).as_slice());
        let bracket = &h * &x - &x * &h;
        ad.set_column(col, &(alg.basis.transpose() * to_vector(&bracket)));
    }
    let killing = (&ad * &ad).trace();
    assert!(killing > 0.0);
    let ad = ad / killing.sqrt();
    assert!(((&ad * &ad).trace() - 1.0).abs() < 1e-12);

    let mut positive: Vec<f64> = ad
        .complex_eigenvalues()
        .iter()
        .inspect(|z| assert!(z.im.abs() < 1e-8, "ad H must have real spectrum"))
        .map(|z| z.re)
        .filter(|&x| x > 1e-8)
        .collect();
    positive.sort_by(f64::total_cmp);
    let alpha = positive[0];
    let count = |target: f64| {
        positive
            .iter()
            .filter(|&&x| (x - target).abs() < 1e-7)
            .count()
    };
    let (m_alpha, m_2alpha) = (count(alpha), count(2.0 * alpha));
    assert_eq!(
        m_alpha + m_2alpha,
        positive.len(),
        "only alpha and 2 alpha occur"
    );
    RootData {
        dim_g: d,
        alpha,
        m_alpha,
        m_2alpha,
    }
}

fn check(space: KnownSpace, n: usize, field: Field, dim_g: usize) {
    let roots = restricted_roots(n, field);
    let datum = space.datum();
    assert_eq!(roots.dim_g, dim_g, "{space}");
    assert_eq!(
        (roots.m_alpha as u32, roots.m_2alpha as u32),
        space.multiplicities(),
        "{space}"
    );
    assert!(
        (roots.alpha - datum.alpha_of_h()).abs() < 1e-10,
        "{space}: alpha(H)"
    );
    let rho =
        0.5 * (roots.m_alpha as f64 * roots.alpha + roots.m_2alpha as f64 * 2.0 * roots.alpha);
    assert!(
        (rho - datum.rho_norm()).abs() < 1e-10,
        "{space}: rho norm {rho} vs {}",
        datum.rho_norm()
    );
    assert_eq!(
        datum.nilpotent_dim() as usize,
        roots.m_alpha + roots.m_2alpha
    );
}

#[test]
fn sl2_is_so21() {
    check(KnownSpace::RealHyperbolic(2), 2, Field::Real, 3);
}

#[test]
fn real_hyperbolic() {
    for n in 3..=5 {
        check(
            KnownSpace::RealHyperbolic(n as u32),
            n,
            Field::Real,
            n * (n + 1) / 2,
        );
    }
}

#[test]
fn complex_hyperbolic() {
    check(KnownSpace::ComplexHyperbolic(2), 2, Field::Complex, 8);
    check(KnownSpace::ComplexHyperbolic(3), 3, Field::Complex, 15);
}

#[test]
fn quaternionic_hyperbolic() {
    check(
        KnownSpace::QuaternionicHyperbolic(2),
        2,
        Field::Quaternion,
        21,
    );
}
