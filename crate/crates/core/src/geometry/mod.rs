//! Numerical surface geometry on rank-one lattices and cyclic quotient
//! singularities. All arithmetic is exact.

mod quotient;
mod reider;
mod resolution;

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

pub use quotient::{quotient_invariants, quotient_preset, QuotientInvariants, QuotientPreset, SingularityCount};
pub use reider::{
    genus_certificate, reider_filter, GenusCertificate, ReiderCaseId, ReiderMode, ReiderWitness, SepDData,
    SmoothnessVerdict,
};
pub use resolution::{
    half_coefficient_refutation, hirzebruch_jung, pullback_proper_transform, HalfCoefficientRefutation,
    PullbackResult, ResolutionGraph,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("1/{n}(1,{q}) is not a cyclic quotient singularity: need 0 < q < n with gcd(n, q) = 1")]
    InvalidSingularity { n: i64, q: i64 },
    #[error("L^2 = {l2} is below the threshold {min} required in {mode} mode")]
    BelowThreshold { l2: i64, min: i64, mode: &'static str },
    #[error("L^2 = {l2} does not equal degree^2 * generator^2 = {expected}")]
    InconsistentLattice { l2: i64, expected: i64 },
    #[error("generator square must be positive, got {0}")]
    BadGeneratorSquare(i64),
    #[error("degree must be at least 1, got {0}")]
    NonPositiveDegree(i64),
    #[error("incidence vector for point {point} has length {got}, chain has {expected} curves")]
    IncidenceLength { point: usize, expected: usize, got: usize },
    #[error("{graphs} resolution graphs but {incidences} incidence vectors")]
    PointCount { graphs: usize, incidences: usize },
    #[error("incidence entries must be non-negative")]
    NegativeIncidence,
    #[error("{what} = {value} is not an integer; the input data are inconsistent")]
    NonIntegral { what: &'static str, value: String },
    #[error("unknown quotient preset {0:?}; expected one of C3, C3xC3, C7, G21")]
    UnknownPreset(String),
    #[error("elliptic multiplicities must be at least 2, got ({0}, {1})")]
    BadEllipticMultiplicities(i64, i64),
}

/// Fundamental group order `gcd(a, b)` of an `(a, b)`-elliptic surface.
pub fn elliptic_pi1_datum(a: i64, b: i64) -> Result<i64, GeometryError> {
    if a < 2 || b < 2 {
        return Err(GeometryError::BadEllipticMultiplicities(a, b));
    }
    Ok(a.gcd(&b))
}

pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes rationals as `"p/q"` strings.
pub(crate) mod rat_serde {
    use num_rational::Rational64;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn one<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn vec<S: Serializer>(v: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::format_rational(r))?;
        }
        seq.end()
    }

    pub fn nested<S: Serializer>(v: &[Vec<Rational64>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(super::format_rational).collect()).collect();
        serde::Serialize::serialize(&strs, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_groups() {
        assert_eq!(elliptic_pi1_datum(2, 3).unwrap(), 1);
        assert_eq!(elliptic_pi1_datum(2, 4).unwrap(), 2);
        assert_eq!(elliptic_pi1_datum(3, 3).unwrap(), 3);
        assert!(elliptic_pi1_datum(1, 3).is_err());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&Rational64::new(-2, 7)), "-2/7");
        assert_eq!(format_rational(&Rational64::new(6, 3)), "2");
    }
}
