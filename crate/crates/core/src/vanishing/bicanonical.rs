use std::collections::BTreeSet;

use serde::Serialize;

use super::{run_vanishing, VanishingError, VanishingReport};
use crate::abelian::GroupElement;
use crate::geometry::{reider_filter, ReiderMode, ReiderWitness};
use crate::picard::{
    torsion_restriction_nonvanishing, AutType, DivisorClass, FppDescriptor, PicAutomorphism, PicardLattice,
    RestrictionVerdict,
};

/// How the two points that `|2K|` might fail to separate sit on `D₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairCase {
    Distinct,
    InfinitelyNear1,
    InfinitelyNear2,
}

impl PairCase {
    pub const ALL: [PairCase; 3] = [PairCase::Distinct, PairCase::InfinitelyNear1, PairCase::InfinitelyNear2];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationVerdict {
    /// `Δ` restricts nontrivially to `D₁`, so the scenario is impossible.
    Contradicted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub case: PairCase,
    pub orbit: Vec<DivisorClass>,
    /// The torsion class that would have to restrict trivially to `D₁`.
    pub delta: GroupElement,
    pub restriction: RestrictionVerdict,
    pub verdict: SeparationVerdict,
}

/// The torsion difference forced by a non-separated pair on `D₁`, for the
/// orbit `[D₁, σD₁, σ²D₁]`.
pub fn separation_obstruction(
    pic: &PicardLattice,
    sigma: &PicAutomorphism,
    orbit: &[DivisorClass],
    case: PairCase,
) -> Result<SeparationCertificate, VanishingError> {
    let closed = orbit.len() == 3
        && orbit.iter().all(|d| pic.contains(d))
        && (0..3).all(|i| sigma.act(&orbit[i]).ok().as_ref() == Some(&orbit[(i + 1) % 3]));
    if !closed {
        return Err(VanishingError::OrbitNotClosed(sigma.name.clone()));
    }
    let (d1, d2, d3) = (&orbit[0], &orbit[1], &orbit[2]);
    let residual = pic.sub(&pic.canonical(), d1);
    let lhs = match case {
        PairCase::Distinct => pic.add(d2, d3),
        PairCase::InfinitelyNear1 => pic.scale(d2, 2),
        PairCase::InfinitelyNear2 => pic.scale(d3, 2),
    };
    let diff = pic.sub(&lhs, &residual);
    debug_assert_eq!(diff.degree, 0);
    let restriction = torsion_restriction_nonvanishing(d1, &diff.torsion)?;
    let verdict = match restriction {
        RestrictionVerdict::Nontrivial => SeparationVerdict::Contradicted,
        RestrictionVerdict::Trivial => SeparationVerdict::Inconclusive,
    };
    Ok(SeparationCertificate { case, orbit: orbit.to_vec(), delta: diff.torsion, restriction, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "verdict")]
pub enum BicanonicalVerdict {
    Embedding,
    /// Embeds away from at most `max_points` points fixed by `Aut`.
    EmbeddingOutsideFixedPoints { max_points: usize, possible_curves: usize },
    Undecided { reason: String },
}

impl BicanonicalVerdict {
    fn rank(&self) -> u8 {
        match self {
            BicanonicalVerdict::Embedding => 0,
            BicanonicalVerdict::EmbeddingOutsideFixedPoints { .. } => 1,
            BicanonicalVerdict::Undecided { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchVerdict {
    pub offsets: Vec<GroupElement>,
    pub verdict: BicanonicalVerdict,
    pub certificates: Vec<SeparationCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicanonicalReport {
    pub surface: String,
    /// Reider cases that survive for `L = K`, `L² = 9`.
    pub reider_cases: Vec<ReiderWitness>,
    pub vanishing: VanishingReport,
    pub branches: Vec<BranchVerdict>,
    /// The weakest verdict over all branches.
    pub verdict: BicanonicalVerdict,
}

/// Number of points of `X` fixed by an order-3 automorphism of a fake projective plane.
const FIXED_POINTS: usize = 3;

fn branch_verdict(
    desc: &FppDescriptor,
    undetermined: &[DivisorClass],
    max_effective: usize,
) -> Result<BranchVerdict, VanishingError> {
    let offsets: Vec<GroupElement> = desc.aut_generators.iter().map(|g| g.cube_root_offset.clone()).collect();
    if undetermined.is_empty() {
        return Ok(BranchVerdict { offsets, verdict: BicanonicalVerdict::Embedding, certificates: vec![] });
    }
    let pic = desc.picard();
    let auts = desc.aut_elements();
    let all_fixed = undetermined.iter().all(|d| auts.iter().all(|a| a.act(d).ok().as_ref() == Some(d)));
    if all_fixed {
        let verdict = BicanonicalVerdict::EmbeddingOutsideFixedPoints {
            max_points: FIXED_POINTS,
            possible_curves: max_effective,
        };
        return Ok(BranchVerdict { offsets, verdict, certificates: vec![] });
    }

    // The point-separation argument needs an order-3 automorphism rotating
    // the curves and another one fixing every class.
    let rotating = auts.iter().filter(|a| a.name != "1").find(|s| {
        undetermined.iter().all(|d| s.orbit(d).map(|o| o.len() == 3).unwrap_or(false))
    });
    let fixing = auts.iter().any(|a| a.name != "1" && a.torsion_action.is_identity() && a.cube_root_offset.is_zero());
    let Some(sigma) = rotating.filter(|_| fixing) else {
        let reason = "undetermined classes are neither rotated by an automorphism nor all fixed".to_string();
        return Ok(BranchVerdict { offsets, verdict: BicanonicalVerdict::Undecided { reason }, certificates: vec![] });
    };

    let mut certificates = Vec::new();
    let mut seen = BTreeSet::new();
    for d in undetermined {
        if seen.contains(d) {
            continue;
        }
        let orbit = sigma.orbit(d)?;
        seen.extend(orbit.iter().cloned());
        for case in PairCase::ALL {
            certificates.push(separation_obstruction(&pic, sigma, &orbit, case)?);
        }
    }
    let verdict = if certificates.iter().all(|c| c.verdict == SeparationVerdict::Contradicted) {
        BicanonicalVerdict::Embedding
    } else {
        BicanonicalVerdict::Undecided { reason: "some non-separation scenario is not contradicted".into() }
    };
    Ok(BranchVerdict { offsets, verdict, certificates })
}

/// Whether `|2K|` embeds the surface, from the vanishing report and the
/// separation obstructions.
pub fn bicanonical_verdict(surface: &FppDescriptor) -> Result<BicanonicalReport, VanishingError> {
    if surface.aut_type == AutType::G21 {
        return Err(VanishingError::OutOfScope { label: surface.label.clone(), aut: surface.aut_type });
    }
    let reider_cases = reider_filter(9, 1, 3, ReiderMode::Separation).expect("L^2 = 9 meets the separation threshold");
    let vanishing = run_vanishing(surface)?;
    let branches = surface
        .offset_branches()
        .iter()
        .zip(&vanishing.branches)
        .map(|(desc, b)| branch_verdict(desc, &b.undetermined, b.max_simultaneously_effective))
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = branches.iter().map(|b| &b.verdict).max_by_key(|v| v.rank()).cloned().expect("at least one branch");
    Ok(BicanonicalReport { surface: surface.label.clone(), reider_cases, vanishing, branches, verdict })
}
