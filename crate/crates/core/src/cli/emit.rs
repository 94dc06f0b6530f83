//! Text and CSV artifacts.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::manifold::{CuspManifoldDescriptor, SpectrumPrediction};
use crate::model_operator::PseudospectrumField;
use crate::quasimode::QuasimodeReport;
use crate::root_datum::RestrictedRootDatum;
use crate::ComplexPoint;

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub(super) fn rho_text(datum: &RestrictedRootDatum) -> String {
    let mut out = String::new();
    writeln!(out, "label = {}", datum.label).unwrap();
    writeln!(out, "m_alpha = {}", datum.m_alpha()).unwrap();
    writeln!(out, "m_2alpha = {}", datum.m_2alpha()).unwrap();
    writeln!(out, "alpha_of_H = {}", format_float(datum.alpha_of_h())).unwrap();
    writeln!(out, "rho_norm = {}", format_float(datum.rho_norm())).unwrap();
    writeln!(out, "nilpotent_dim = {}", datum.nilpotent_dim()).unwrap();
    out
}

pub(super) fn region_csv(points: &[(f64, ComplexPoint)]) -> String {
    let mut out = String::from("s,re,im\n");
    for (s, z) in points {
        writeln!(
            out,
            "{},{},{}",
            format_float(*s),
            format_float(z.re),
            format_float(z.im)
        )
        .unwrap();
    }
    out
}

pub(super) fn quasimode_csv(report: &QuasimodeReport, bounds: bool) -> String {
    let mut out = String::from(if bounds {
        "r_n,ratio,bound\n"
    } else {
        "r_n,ratio\n"
    });
    for row in &report.rows {
        write!(out, "{},{}", format_float(row.r), format_float(row.ratio)).unwrap();
        if bounds {
            write!(out, ",{}", format_float(row.bound)).unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "# z={}{:+.16e}i",
        format_float(report.z.re),
        report.z.im
    )
    .unwrap();
    writeln!(
        out,
        "# approximate_point_spectral={}",
        report.approximate_point_spectral
    )
    .unwrap();
    match report.slope {
        Some(slope) => writeln!(out, "# slope={}", format_float(slope)).unwrap(),
        None => writeln!(out, "# slope=NA (fewer than 4 scales)").unwrap(),
    }
    out
}

pub(super) fn pseudospectrum_csv(field: &PseudospectrumField) -> String {
    let mut out = String::from("re,im,sigma_min\n");
    for (z, sigma) in field.iter() {
        writeln!(
            out,
            "{},{},{}",
            format_float(z.re),
            format_float(z.im),
            format_float(sigma)
        )
        .unwrap();
    }
    out
}

pub(super) fn prediction_text(
    descriptor: &CuspManifoldDescriptor,
    prediction: &SpectrumPrediction,
) -> String {
    let mut out = String::new();
    writeln!(out, "p = {}", format_float(prediction.p)).unwrap();
    writeln!(out, "mode: {}", descriptor.mode()).unwrap();
    writeln!(out, "completeness: {}", prediction.completeness).unwrap();
    writeln!(out, "cusps: {}", descriptor.cusps().len()).unwrap();
    for cusp in descriptor.cusps() {
        writeln!(
            out,
            "cusp {} m_alpha={} m_2alpha={} rho={}",
            cusp.label,
            cusp.m_alpha(),
            cusp.m_2alpha(),
            format_float(cusp.rho_norm())
        )
        .unwrap();
    }
    writeln!(out, "eigenvalues: {}", prediction.eigenvalues.len()).unwrap();
    for (lambda, inside) in prediction.eigenvalue_region_overlap() {
        writeln!(
            out,
            "eigenvalue {} in_region={inside}",
            format_float(lambda)
        )
        .unwrap();
    }
    writeln!(out, "regions: {}", prediction.regions.len()).unwrap();
    for region in &prediction.regions {
        writeln!(
            out,
            "region p={} rho={} vertex={} tilt={}",
            format_float(region.p()),
            format_float(region.rho()),
            format_float(region.vertex()),
            format_float(region.tilt())
        )
        .unwrap();
    }
    out
}

/// Writes `bytes` to `path`, or to stdout when no path is given.
pub(super) fn write_output(path: Option<&Path>, bytes: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, bytes).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
