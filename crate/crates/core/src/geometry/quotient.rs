use num_rational::Rational64;
use serde::Serialize;

use super::{format_rational, hirzebruch_jung, rat_serde, GeometryError, ResolutionGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityCount {
    pub n: i64,
    pub q: i64,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientInvariants {
    pub group_order: i64,
    pub singularities: Vec<SingularityCount>,
    pub resolutions: Vec<ResolutionGraph>,
    #[serde(serialize_with = "rat_serde::one")]
    pub k2_quotient: Rational64,
    #[serde(serialize_with = "rat_serde::vec")]
    pub k2_corrections: Vec<Rational64>,
    pub k2_resolution: i64,
    pub euler_quotient: i64,
    pub euler_resolution: i64,
    pub chi: i64,
}

fn integral(what: &'static str, r: Rational64) -> Result<i64, GeometryError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(GeometryError::NonIntegral { what, value: format_rational(&r) })
    }
}

/// `K²`, `e` and `χ` of the minimal resolution of `X/G` for a group acting
/// freely outside isolated fixed points.
pub fn quotient_invariants(
    group_order: i64,
    singularities: &[SingularityCount],
    e_x: i64,
    k2_x: i64,
    fixed_points: i64,
) -> Result<QuotientInvariants, GeometryError> {
    let resolutions = singularities.iter().map(|s| hirzebruch_jung(s.n, s.q)).collect::<Result<Vec<_>, _>>()?;
    let k2_quotient = Rational64::new(k2_x, group_order);
    let k2_corrections: Vec<Rational64> = resolutions
        .iter()
        .zip(singularities)
        .map(|(g, s)| g.k_squared_correction() * s.count)
        .collect();
    let k2 = integral("K^2 of the resolution", k2_quotient + k2_corrections.iter().sum::<Rational64>())?;
    let euler_quotient = integral("free part of the Euler number", Rational64::new(e_x - fixed_points, group_order))?
        + singularities.iter().map(|s| s.count).sum::<i64>();
    let euler = euler_quotient
        + resolutions.iter().zip(singularities).map(|(g, s)| s.count * g.len() as i64).sum::<i64>();
    let chi = integral("chi", Rational64::new(k2 + euler, 12))?;
    Ok(QuotientInvariants {
        group_order,
        singularities: singularities.to_vec(),
        resolutions,
        k2_quotient,
        k2_corrections,
        k2_resolution: k2,
        euler_quotient,
        euler_resolution: euler,
        chi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientPreset {
    pub name: &'static str,
    pub group_order: i64,
    pub fixed_points: i64,
    pub singularities: Vec<SingularityCount>,
    pub description: &'static str,
}

/// The four group actions on a fake projective plane with isolated fixed points.
pub fn quotient_preset(name: &str) -> Result<QuotientPreset, GeometryError> {
    let s = |n, q, count| SingularityCount { n, q, count };
    let preset = match name {
        "C3" => QuotientPreset {
            name: "C3",
            group_order: 3,
            fixed_points: 3,
            singularities: vec![s(3, 2, 3)],
            description: "minimal surface of general type with p_g = 0 and K^2 = 3",
        },
        "C3xC3" | "C3^2" => QuotientPreset {
            name: "C3xC3",
            group_order: 9,
            fixed_points: 12,
            singularities: vec![s(3, 2, 4)],
            description: "numerical Godeaux surface: p_g = 0 and K^2 = 1",
        },
        "C7" => QuotientPreset {
            name: "C7",
            group_order: 7,
            fixed_points: 3,
            singularities: vec![s(7, 5, 3)],
            description: "(2,3)-, (2,4)- or (3,3)-elliptic surface",
        },
        "G21" => QuotientPreset {
            name: "G21",
            group_order: 21,
            fixed_points: 24,
            singularities: vec![s(3, 2, 3), s(7, 5, 1)],
            description: "(2,3)-, (2,4)- or (3,3)-elliptic surface",
        },
        other => return Err(GeometryError::UnknownPreset(other.into())),
    };
    Ok(preset)
}

impl QuotientPreset {
    /// Invariants for a fake projective plane: `e = 3`, `K² = 9`.
    pub fn invariants(&self) -> Result<QuotientInvariants, GeometryError> {
        quotient_invariants(self.group_order, &self.singularities, 3, 9, self.fixed_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_configurations() {
        let expect = [("C3", 3, 9), ("C3xC3", 1, 11), ("C7", 0, 12), ("G21", 0, 12)];
        for (name, k2, e) in expect {
            let q = quotient_preset(name).unwrap().invariants().unwrap();
            assert_eq!((q.k2_resolution, q.euler_resolution, q.chi), (k2, e, 1), "{name}");
        }
    }

    #[test]
    fn c7_corrections() {
        let q = quotient_preset("C7").unwrap().invariants().unwrap();
        assert_eq!(q.k2_quotient, Rational64::new(9, 7));
        assert_eq!(q.k2_corrections, vec![Rational64::new(-9, 7)]);
    }

    #[test]
    fn inconsistent_input_flagged() {
        let bad = [SingularityCount { n: 3, q: 2, count: 2 }];
        assert!(matches!(quotient_invariants(3, &bad, 3, 9, 2), Err(GeometryError::NonIntegral { .. })));
        assert!(quotient_preset("C5").is_err());
    }
}
