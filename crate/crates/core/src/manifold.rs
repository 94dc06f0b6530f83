//! Predicted `L^p` spectra of manifolds with rank-one cusps.
//!
//! Each cusp contributes the parabolic region of its own `‖ρ_P‖`; together
//! with the discrete eigenvalues (supplied by the caller) they make up the
//! predicted spectrum. Only the inclusion of the regions in the spectrum is
//! established; whether nothing else occurs is open, so every prediction
//! carries [`Completeness::Conjectural`].

use std::fmt;

use crate::error::{Error, Result};
use crate::region::ParabolicRegion;
use crate::root_datum::RestrictedRootDatum;
use crate::ComplexPoint;

/// Tolerance for identifying two cusps by their `‖ρ_P‖`.
pub const RHO_DEDUP_TOL: f64 = 1e-12;

/// Tolerance for matching a point against a discrete eigenvalue.
pub const EIGENVALUE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ManifoldMode {
    /// A `Q`-rank one locally symmetric space: all cusps share one `‖ρ_P‖`.
    LocallySymmetric,
    /// Arbitrary rank-one cusps glued to a compact core.
    #[default]
    RankOneCusps,
}

impl fmt::Display for ManifoldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ManifoldMode::LocallySymmetric => "locally-symmetric",
            ManifoldMode::RankOneCusps => "rank-one-cusps",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuspManifoldDescriptor {
    cusps: Vec<RestrictedRootDatum>,
    eigenvalues: Vec<f64>,
    mode: ManifoldMode,
}

impl CuspManifoldDescriptor {
    /// Eigenvalues are sorted and `0` is added when missing: finite volume
    /// makes the constants eigenfunctions.
    pub fn new(
        cusps: Vec<RestrictedRootDatum>,
        eigenvalues: Vec<f64>,
        mode: ManifoldMode,
    ) -> Result<Self> {
        if cusps.is_empty() {
            return Err(Error::Input(
                "a cusp manifold needs at least one cusp".into(),
            ));
        }
        if let Some((k, bad)) = eigenvalues
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::Input(format!(
                "eigenvalues[{k}] = {bad}: discrete eigenvalues must be finite and non-negative"
            )));
        }
        if mode == ManifoldMode::LocallySymmetric {
            let first = cusps[0].rho_norm();
            if let Some((k, c)) = cusps
                .iter()
                .enumerate()
                .find(|(_, c)| (c.rho_norm() - first).abs() > RHO_DEDUP_TOL)
            {
                return Err(Error::Input(format!(
                    "cusps[{k}] ({}) has rho norm {} but a locally symmetric space needs all cusps at {first}",
                    c.label,
                    c.rho_norm()
                )));
            }
        }
        let mut eigenvalues = eigenvalues;
        if !eigenvalues.contains(&0.0) {
            eigenvalues.push(0.0);
        }
        eigenvalues.sort_by(f64::total_cmp);
        eigenvalues.dedup();
        Ok(Self {
            cusps,
            eigenvalues,
            mode,
        })
    }

    pub fn cusps(&self) -> &[RestrictedRootDatum] {
        &self.cusps
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn mode(&self) -> ManifoldMode {
        self.mode
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// The union is known to lie in the spectrum; equality is not proved.
    Conjectural,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("conjectural")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPrediction {
    pub p: f64,
    pub eigenvalues: Vec<f64>,
    /// Distinct regions ordered by increasing `‖ρ_P‖`.
    pub regions: Vec<ParabolicRegion>,
    pub completeness: Completeness,
}

/// `{eigenvalues} ∪ ⋃_j P_p(‖ρ_{P_j}‖)`.
pub fn predicted_spectrum(
    descriptor: &CuspManifoldDescriptor,
    p: f64,
) -> Result<SpectrumPrediction> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Input(format!(
            "exponent p must lie in (1, inf), got {p}"
        )));
    }
    let mut rhos: Vec<f64> = descriptor
        .cusps
        .iter()
        .map(RestrictedRootDatum::rho_norm)
        .collect();
    rhos.sort_by(f64::total_cmp);
    let mut distinct: Vec<f64> = Vec::with_capacity(rhos.len());
    for rho in rhos {
        if distinct
            .last()
            .is_none_or(|last| rho - last > RHO_DEDUP_TOL)
        {
            distinct.push(rho);
        }
    }
    if p == 2.0 {
        // the rays [R_j², ∞) are nested; the smallest R covers them all
        distinct.truncate(1);
    }
    let regions = distinct
        .into_iter()
        .map(|rho| ParabolicRegion::new(p, rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumPrediction {
        p,
        eigenvalues: descriptor.eigenvalues.clone(),
        regions,
        completeness: Completeness::Conjectural,
    })
}

impl SpectrumPrediction {
    pub fn union_contains(&self, z: ComplexPoint) -> bool {
        self.eigenvalues
            .iter()
            .any(|&lambda| (z - lambda).norm() <= EIGENVALUE_TOL)
            || self.in_regions(z)
    }

    fn in_regions(&self, z: ComplexPoint) -> bool {
        self.regions.iter().any(|r| r.contains(z))
    }

    /// Number of distinct parabolic regions. For `p ≠ 2` this is a heuristic
    /// lower bound on the number of cusps, not a theorem; for `p = 2` it is
    /// always one.
    pub fn distinct_region_count(&self) -> usize {
        self.regions.len()
    }

    /// Recovers the common cusp constant `c` (the shared `‖ρ_P‖`, volume
    /// form `e^{−2cy}`) from the vertex of a single parabola.
    pub fn infer_cusp_constant(&self) -> Result<f64> {
        if self.p == 2.0 {
            return Err(Error::Domain(
                "for p = 2 all cusps collapse onto one ray; the cusp constant is not determined"
                    .into(),
            ));
        }
        match self.regions.as_slice() {
            [region] => {
                let p = self.p;
                Ok((region.vertex() * p / (4.0 * (1.0 - 1.0 / p))).sqrt())
            }
            regions => Err(Error::Domain(format!(
                "{} distinct parabolic regions; a common cusp constant needs exactly one",
                regions.len()
            ))),
        }
    }

    /// Flags each eigenvalue by membership in the union of regions. An
    /// eigenvalue outside every region has its `L²` eigenfunctions in `L^p`.
    pub fn eigenvalue_region_overlap(&self) -> Vec<(f64, bool)> {
        self.eigenvalues
            .iter()
            .map(|&lambda| (lambda, self.in_regions(lambda.into())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cusp(m1: u32, m2: u32) -> RestrictedRootDatum {
        RestrictedRootDatum::new(format!("({m1},{m2})"), m1, m2).unwrap()
    }

    fn manifold(cusps: &[(u32, u32)]) -> CuspManifoldDescriptor {
        let cusps = cusps.iter().map(|&(a, b)| cusp(a, b)).collect();
        CuspManifoldDescriptor::new(cusps, vec![], ManifoldMode::RankOneCusps).unwrap()
    }

    #[test]
    fn zero_is_always_an_eigenvalue() {
        let d = CuspManifoldDescriptor::new(
            vec![cusp(2, 0)],
            vec![0.1, 0.05],
            ManifoldMode::RankOneCusps,
        )
        .unwrap();
        assert_eq!(d.eigenvalues(), &[0.0, 0.05, 0.1]);
    }

    #[test]
    fn descriptor_validation() {
        assert!(CuspManifoldDescriptor::new(vec![], vec![], ManifoldMode::RankOneCusps).is_err());
        let err = CuspManifoldDescriptor::new(
            vec![cusp(1, 0)],
            vec![0.1, -1.0],
            ManifoldMode::RankOneCusps,
        )
        .unwrap_err();
        assert!(err.to_string().contains("eigenvalues[1]"), "{err}");
        assert!(CuspManifoldDescriptor::new(
            vec![cusp(1, 0), cusp(2, 0)],
            vec![],
            ManifoldMode::LocallySymmetric
        )
        .is_err());
        assert!(CuspManifoldDescriptor::new(
            vec![cusp(2, 0), cusp(2, 0)],
            vec![],
            ManifoldMode::LocallySymmetric
        )
        .is_ok());
    }

    #[test]
    fn single_cusp_l2_prediction() {
        let pred = predicted_spectrum(&manifold(&[(2, 0)]), 2.0).unwrap();
        assert_eq!(pred.eigenvalues, vec![0.0]);
        assert_eq!(pred.regions.len(), 1);
        assert_relative_eq!(pred.regions[0].vertex(), 0.25, epsilon = 1e-15);
        assert_eq!(pred.completeness, Completeness::Conjectural);
    }

    #[test]
    fn identical_cusps_deduplicate() {
        for p in [1.5, 2.0, 4.0] {
            assert_eq!(
                predicted_spectrum(&manifold(&[(1, 0), (1, 0)]), p)
                    .unwrap()
                    .distinct_region_count(),
                1
            );
        }
    }

    #[test]
    fn two_distinct_cusps() {
        let pred = predicted_spectrum(&manifold(&[(1, 0), (2, 1)]), 4.0).unwrap();
        assert_eq!(pred.distinct_region_count(), 2);
        let vertices: Vec<f64> = pred.regions.iter().map(ParabolicRegion::vertex).collect();
        for (v, rho) in vertices
            .iter()
            .zip([1.0 / (2.0 * 2f64.sqrt()), 4.0 / (2.0 * 12f64.sqrt())])
        {
            assert_relative_eq!(*v, rho * rho * 0.75, epsilon = 1e-14);
        }
        assert!((pred.regions[1].rho() - 0.57735).abs() < 1e-5);
        assert_eq!(
            predicted_spectrum(&manifold(&[(1, 0), (2, 1)]), 2.0)
                .unwrap()
                .distinct_region_count(),
            1
        );
    }

    #[test]
    fn region_count_heuristic() {
        let pred = predicted_spectrum(&manifold(&[(1, 0), (1, 0), (2, 0)]), 3.0).unwrap();
        assert_eq!(pred.distinct_region_count(), 2);
        let p2 = predicted_spectrum(&manifold(&[(1, 0), (1, 0), (2, 0)]), 2.0).unwrap();
        assert_eq!(p2.distinct_region_count(), 1);
        assert_relative_eq!(p2.regions[0].vertex(), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn union_membership() {
        let pred = predicted_spectrum(&manifold(&[(1, 0), (2, 1)]), 4.0).unwrap();
        assert!(pred.union_contains(ComplexPoint::new(0.0, 0.0)));
        assert!(!pred.union_contains(ComplexPoint::new(0.05, 0.0)));
        let larger = pred.regions[1];
        assert!(pred.union_contains(larger.boundary_point(2.5)));
        assert!(pred.union_contains(larger.boundary_point(-0.4)));
    }

    #[test]
    fn cusp_constant_inference() {
        let pred = predicted_spectrum(&manifold(&[(2, 0)]), 4.0).unwrap();
        assert_relative_eq!(pred.regions[0].vertex(), 0.1875, epsilon = 1e-15);
        assert_relative_eq!(pred.infer_cusp_constant().unwrap(), 0.5, epsilon = 1e-12);
        assert!(matches!(
            predicted_spectrum(&manifold(&[(2, 0)]), 2.0)
                .unwrap()
                .infer_cusp_constant(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            predicted_spectrum(&manifold(&[(1, 0), (2, 0)]), 4.0)
                .unwrap()
                .infer_cusp_constant(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn overlap_flags() {
        let d = CuspManifoldDescriptor::new(
            vec![cusp(2, 0)],
            vec![0.1875, 0.2],
            ManifoldMode::RankOneCusps,
        )
        .unwrap();
        let pred = predicted_spectrum(&d, 4.0).unwrap();
        assert_eq!(
            pred.eigenvalue_region_overlap(),
            vec![(0.0, false), (0.1875, true), (0.2, true)]
        );
        let l2 = predicted_spectrum(&d, 2.0).unwrap();
        assert_eq!(
            l2.eigenvalue_region_overlap(),
            vec![(0.0, false), (0.1875, false), (0.2, false)]
        );
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(predicted_spectrum(&manifold(&[(2, 0)]), 1.0).is_err());
        assert!(predicted_spectrum(&manifold(&[(2, 0)]), f64::NAN).is_err());
    }
}
