//! Rank-one restricted root data.
//!
//! A rank-one root system has a single simple root `α` and possibly the
//! doubled root `2α`, with multiplicities `m_α = dim g_α` and
//! `m_2α = dim g_2α`. The metric is normalised by the Killing form, so the
//! generator `H` of the one-dimensional `a_P` satisfies
//!
//! ```text
//! B(H, H) = 2 (m_α α(H)² + m_2α (2 α(H))²) = 1
//! ```
//!
//! which pins `α(H) = 1 / √(2 (m_α + 4 m_2α))`. The half sum of the positive
//! roots evaluated on `H` is `‖ρ_P‖ = ½ (m_α + 2 m_2α) α(H)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplicities of a rank-one restricted root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRootDatum {
    pub label: String,
    m_alpha: u32,
    m_2alpha: u32,
}

impl RestrictedRootDatum {
    pub fn new(label: impl Into<String>, m_alpha: u32, m_2alpha: u32) -> Result<Self> {
        if m_alpha == 0 {
            return Err(Error::Input(
                "m_alpha must be at least 1 (the simple root space is nonzero)".into(),
            ));
        }
        Ok(Self {
            label: label.into(),
            m_alpha,
            m_2alpha,
        })
    }

    pub fn m_alpha(&self) -> u32 {
        self.m_alpha
    }

    pub fn m_2alpha(&self) -> u32 {
        self.m_2alpha
    }

    /// `α(H)` for the unit Killing-norm generator `H` of `a_P`.
    pub fn alpha_of_h(&self) -> f64 {
        let weighted = f64::from(self.m_alpha) + 4.0 * f64::from(self.m_2alpha);
        1.0 / (2.0 * weighted).sqrt()
    }

    /// `‖ρ_P‖`, the exponential rate of the cusp volume form `e^{-2‖ρ_P‖ y}`.
    pub fn rho_norm(&self) -> f64 {
        let a = self.alpha_of_h();
        0.5 * (f64::from(self.m_alpha) * a + f64::from(self.m_2alpha) * 2.0 * a)
    }

    /// Dimension of the nilpotent radical `n_P`, i.e. the number of
    /// horocyclic `x`-coordinates.
    pub fn nilpotent_dim(&self) -> u32 {
        self.m_alpha + self.m_2alpha
    }

    /// Dimension of the rank-one symmetric space carrying this root datum.
    pub fn symmetric_space_dim(&self) -> u32 {
        self.nilpotent_dim() + 1
    }
}

/// The four families of rank-one symmetric spaces of non-compact type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownSpace {
    /// `H^n_R`, real dimension `n`.
    RealHyperbolic(u32),
    /// `H^n_C`, real dimension `2n`.
    ComplexHyperbolic(u32),
    /// `H^n_H`, real dimension `4n`.
    QuaternionicHyperbolic(u32),
    /// `H^2_O`, real dimension 16.
    OctonionicPlane,
}

impl KnownSpace {
    pub fn multiplicities(self) -> (u32, u32) {
        match self {
            KnownSpace::RealHyperbolic(n) => (n - 1, 0),
            KnownSpace::ComplexHyperbolic(n) => (2 * (n - 1), 1),
            KnownSpace::QuaternionicHyperbolic(n) => (4 * (n - 1), 3),
            KnownSpace::OctonionicPlane => (8, 7),
        }
    }

    /// Real dimension of the symmetric space.
    pub fn dimension(self) -> u32 {
        match self {
            KnownSpace::RealHyperbolic(n) => n,
            KnownSpace::ComplexHyperbolic(n) => 2 * n,
            KnownSpace::QuaternionicHyperbolic(n) => 4 * n,
            KnownSpace::OctonionicPlane => 16,
        }
    }

    pub fn datum(self) -> RestrictedRootDatum {
        let (m_alpha, m_2alpha) = self.multiplicities();
        RestrictedRootDatum {
            label: self.to_string(),
            m_alpha,
            m_2alpha,
        }
    }
}

impl fmt::Display for KnownSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownSpace::RealHyperbolic(n) => write!(f, "real-hyperbolic({n})"),
            KnownSpace::ComplexHyperbolic(n) => write!(f, "complex-hyperbolic({n})"),
            KnownSpace::QuaternionicHyperbolic(n) => write!(f, "quaternionic-hyperbolic({n})"),
            KnownSpace::OctonionicPlane => f.write_str("octonionic-plane"),
        }
    }
}

impl FromStr for KnownSpace {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "octonionic-plane" {
            return Ok(KnownSpace::OctonionicPlane);
        }
        let unknown = || Error::Input(format!("unknown symmetric space `{name}`"));
        let (family, rest) = name.split_once('(').ok_or_else(unknown)?;
        let n: u32 = rest
            .strip_suffix(')')
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(unknown)?;
        if n < 2 {
            return Err(Error::Input(format!(
                "`{name}`: the hyperbolic families need n >= 2"
            )));
        }
        match family {
            "real-hyperbolic" => Ok(KnownSpace::RealHyperbolic(n)),
            "complex-hyperbolic" => Ok(KnownSpace::ComplexHyperbolic(n)),
            "quaternionic-hyperbolic" => Ok(KnownSpace::QuaternionicHyperbolic(n)),
            _ => Err(unknown()),
        }
    }
}

/// Looks up the root datum of a named rank-one space, e.g. `complex-hyperbolic(2)`.
pub fn known_space(name: &str) -> Result<RestrictedRootDatum> {
    name.parse::<KnownSpace>().map(KnownSpace::datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn datum(m1: u32, m2: u32) -> RestrictedRootDatum {
        RestrictedRootDatum::new("t", m1, m2).unwrap()
    }

    #[test]
    fn alpha_of_h_examples() {
        assert_relative_eq!(datum(1, 0).alpha_of_h(), 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(
            datum(2, 1).alpha_of_h(),
            1.0 / 12f64.sqrt(),
            epsilon = 1e-15
        );
        assert_relative_eq!(datum(2, 0).alpha_of_h(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn rho_norm_examples() {
        assert_relative_eq!(
            datum(1, 0).rho_norm(),
            0.353_553_390_593_273_8,
            epsilon = 1e-15
        );
        assert_relative_eq!(datum(2, 0).rho_norm(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(
            datum(8, 7).rho_norm(),
            22.0 / (2.0 * 72f64.sqrt()),
            epsilon = 1e-15
        );
        assert!((datum(8, 7).rho_norm() - 1.296_362).abs() < 1e-6);
    }

    #[test]
    fn nilpotent_dims() {
        assert_eq!(datum(1, 0).nilpotent_dim(), 1);
        assert_eq!(datum(2, 1).nilpotent_dim(), 3);
        assert_eq!(datum(8, 7).nilpotent_dim(), 15);
    }

    #[test]
    fn killing_norm_of_h_is_one() {
        for (m1, m2) in [(1, 0), (2, 1), (4, 3), (8, 7), (13, 5)] {
            let d = datum(m1, m2);
            let a = d.alpha_of_h();
            let b = 2.0 * (f64::from(m1) * a * a + f64::from(m2) * (2.0 * a).powi(2));
            assert_relative_eq!(b, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_zero_simple_multiplicity() {
        assert!(matches!(
            RestrictedRootDatum::new("bad", 0, 1),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn known_space_lookup() {
        let r3 = known_space("real-hyperbolic(3)").unwrap();
        assert_eq!((r3.m_alpha(), r3.m_2alpha()), (2, 0));
        let c2 = known_space("complex-hyperbolic(2)").unwrap();
        assert_eq!((c2.m_alpha(), c2.m_2alpha()), (2, 1));
        let o = known_space("octonionic-plane").unwrap();
        assert_eq!((o.m_alpha(), o.m_2alpha()), (8, 7));
        assert_eq!(o.label, "octonionic-plane");
    }

    #[test]
    fn known_space_dimension_oracle() {
        for n in 2..12 {
            for space in [
                KnownSpace::RealHyperbolic(n),
                KnownSpace::ComplexHyperbolic(n),
                KnownSpace::QuaternionicHyperbolic(n),
            ] {
                assert_eq!(
                    space.datum().symmetric_space_dim(),
                    space.dimension(),
                    "{space}"
                );
            }
        }
        let o = KnownSpace::OctonionicPlane;
        assert_eq!(o.datum().symmetric_space_dim(), o.dimension());
    }

    #[test]
    fn known_space_rejects_garbage() {
        for name in [
            "",
            "hyperbolic(3)",
            "real-hyperbolic(1)",
            "real-hyperbolic(x)",
            "octonionic",
        ] {
            assert!(matches!(known_space(name), Err(Error::Input(_))), "{name}");
        }
    }
}
