use serde::Serialize;

use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReiderMode {
    #[serde(rename = "basepoint")]
    Basepoint,
    #[serde(rename = "separation")]
    Separation,
}

impl ReiderMode {
    fn threshold(self) -> i64 {
        match self {
            ReiderMode::Basepoint => 5,
            ReiderMode::Separation => 9,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ReiderMode::Basepoint => "basepoint",
            ReiderMode::Separation => "separation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReiderCaseId {
    BpA,
    BpB,
    SepA,
    SepB,
    SepC,
    SepD,
}

impl ReiderCaseId {
    pub fn cases(mode: ReiderMode) -> &'static [ReiderCaseId] {
        match mode {
            ReiderMode::Basepoint => &[ReiderCaseId::BpA, ReiderCaseId::BpB],
            ReiderMode::Separation => &[ReiderCaseId::SepA, ReiderCaseId::SepB, ReiderCaseId::SepC, ReiderCaseId::SepD],
        }
    }

    pub fn constraint(self) -> &'static str {
        match self {
            ReiderCaseId::BpA => "D.L = 0, D^2 = -1",
            ReiderCaseId::BpB => "D.L = 1, D^2 = 0",
            ReiderCaseId::SepA => "D.L = 0, D^2 in {-2, -1}",
            ReiderCaseId::SepB => "D.L = 1, D^2 in {-1, 0}",
            ReiderCaseId::SepC => "D.L = 2, D^2 = 0",
            ReiderCaseId::SepD => "L^2 = 9, L = 3D numerically",
        }
    }

    fn admits(self, l2: i64, l_degree: i64, m: i64, dl: i64, d2: i64) -> bool {
        match self {
            ReiderCaseId::BpA => dl == 0 && d2 == -1,
            ReiderCaseId::BpB => dl == 1 && d2 == 0,
            ReiderCaseId::SepA => dl == 0 && (d2 == -2 || d2 == -1),
            ReiderCaseId::SepB => dl == 1 && (d2 == -1 || d2 == 0),
            ReiderCaseId::SepC => dl == 2 && d2 == 0,
            ReiderCaseId::SepD => l2 == 9 && l_degree == 3 * m,
        }
    }
}

/// Data a surviving `L ≡ 3D` case hands to the rest of the argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SepDData {
    pub d_squared: i64,
    pub k_dot_d: i64,
    pub arithmetic_genus: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReiderWitness {
    pub case: ReiderCaseId,
    pub m: i64,
    pub d_squared: i64,
    pub d_dot_l: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived: Option<SepDData>,
}

/// Feasible Reider alternatives for `K + L` on a rank-one lattice generated
/// by a class of square `generator_square`, with `L = l_degree · generator`
/// and `D = m · generator`.
pub fn reider_filter(
    l2: i64,
    generator_square: i64,
    l_degree: i64,
    mode: ReiderMode,
) -> Result<Vec<ReiderWitness>, GeometryError> {
    if generator_square < 1 {
        return Err(GeometryError::BadGeneratorSquare(generator_square));
    }
    let expected = l_degree * l_degree * generator_square;
    if l2 != expected {
        return Err(GeometryError::InconsistentLattice { l2, expected });
    }
    if l2 < mode.threshold() {
        return Err(GeometryError::BelowThreshold { l2, min: mode.threshold(), mode: mode.name() });
    }
    let mut out = Vec::new();
    for &case in ReiderCaseId::cases(mode) {
        for m in 1..=l_degree.max(1) {
            let d2 = m * m * generator_square;
            let dl = m * l_degree * generator_square;
            if case.admits(l2, l_degree, m, dl, d2) {
                let derived = (case == ReiderCaseId::SepD).then(|| {
                    let k_dot_d = 3 * m * generator_square;
                    SepDData { d_squared: d2, k_dot_d, arithmetic_genus: (d2 + k_dot_d) / 2 + 1 }
                });
                out.push(ReiderWitness { case, m, d_squared: d2, d_dot_l: dl, derived });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "verdict")]
pub enum SmoothnessVerdict {
    Smooth { genus: i64 },
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusCertificate {
    pub degree: i64,
    pub arithmetic_genus: i64,
    pub k_dot_d: i64,
    /// Lower bound on the geometric genus of the normalization.
    pub genus_lower_bound: i64,
    pub strict: bool,
    pub verdict: SmoothnessVerdict,
}

/// Adjunction against the Yau-type bound `3(2g' − 2) ≥ 2K·D`, strict when no
/// totally geodesic curves exist.
pub fn genus_certificate(degree: i64, no_geodesics: bool) -> Result<GenusCertificate, GeometryError> {
    if degree < 1 {
        return Err(GeometryError::NonPositiveDegree(degree));
    }
    let kd = 3 * degree;
    let pa = (degree * degree + kd) / 2 + 1;
    // g' > KD/3 + 1 or g' >= KD/3 + 1
    let bound = if no_geodesics { kd.div_euclid(3) + 2 } else { -((-kd).div_euclid(3)) + 1 };
    let verdict = if bound >= pa { SmoothnessVerdict::Smooth { genus: pa } } else { SmoothnessVerdict::Inconclusive };
    Ok(GenusCertificate { degree, arithmetic_genus: pa, k_dot_d: kd, genus_lower_bound: bound, strict: no_geodesics, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bicanonical_separation_leaves_only_sep_d() {
        let w = reider_filter(9, 1, 3, ReiderMode::Separation).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].case, ReiderCaseId::SepD);
        assert_eq!(w[0].m, 1);
        assert_eq!(w[0].derived, Some(SepDData { d_squared: 1, k_dot_d: 3, arithmetic_genus: 3 }));
        assert!(reider_filter(9, 1, 3, ReiderMode::Basepoint).unwrap().is_empty());
        assert!(reider_filter(16, 1, 4, ReiderMode::Separation).unwrap().is_empty());
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(matches!(reider_filter(4, 1, 2, ReiderMode::Basepoint), Err(GeometryError::BelowThreshold { .. })));
        assert!(matches!(reider_filter(4, 1, 2, ReiderMode::Separation), Err(GeometryError::BelowThreshold { .. })));
        assert!(matches!(reider_filter(10, 1, 3, ReiderMode::Separation), Err(GeometryError::InconsistentLattice { .. })));
    }

    #[test]
    fn genus_examples() {
        let c = genus_certificate(1, true).unwrap();
        assert_eq!((c.arithmetic_genus, c.genus_lower_bound), (3, 3));
        assert_eq!(c.verdict, SmoothnessVerdict::Smooth { genus: 3 });
        let c = genus_certificate(1, false).unwrap();
        assert_eq!(c.genus_lower_bound, 2);
        assert_eq!(c.verdict, SmoothnessVerdict::Inconclusive);
        let c = genus_certificate(2, true).unwrap();
        assert_eq!((c.arithmetic_genus, c.k_dot_d, c.genus_lower_bound), (6, 6, 4));
        assert_eq!(c.verdict, SmoothnessVerdict::Inconclusive);
    }
}
