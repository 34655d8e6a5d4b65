//! Pic(X) ≅ Z·L₀ ⊕ Tor for a fake projective plane with a cube root `L₀` of
//! the canonical class, and automorphisms acting on it.

pub(crate) mod registry;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianError, FinAbGroup, GroupElement, GroupEndo};

pub use registry::{
    lookup, lookup_in, normalize_label, registry, AutType, ConsistencyRule, FppDescriptor, FppRecord,
    GeneratorRecord, OrderThreeSubgroup, QuotientGroup, SubgroupConsistency, SubgroupRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error("class and automorphism live on different torsion groups")]
    GroupMismatch,
    #[error("cube-root offset {0} is not 3-torsion")]
    OffsetNotThreeTorsion(GroupElement),
    #[error("degree must be at least 1, got {0}")]
    NonPositiveDegree(i64),
    #[error("unknown surface label {label:?}{}", suggestion_text(.suggestions))]
    UnknownLabel { label: String, suggestions: Vec<String> },
    #[error("invalid registry entry {label:?}: {reason}")]
    InvalidDescriptor { label: String, reason: String },
}

fn suggestion_text(s: &[String]) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", s.join(", "))
    }
}

/// An element `a·L₀ + t` of Pic(X).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub degree: i64,
    pub torsion: GroupElement,
}

impl DivisorClass {
    pub fn new(degree: i64, torsion: GroupElement) -> Self {
        Self { degree, torsion }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.torsion)
    }
}

/// The lattice `Z ⊕ Tor` with `L₀² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardLattice {
    torsion: FinAbGroup,
}

impl PicardLattice {
    pub fn new(torsion: FinAbGroup) -> Self {
        Self { torsion }
    }

    pub fn torsion_group(&self) -> &FinAbGroup {
        &self.torsion
    }

    pub fn class(&self, degree: i64, coords: Vec<i64>) -> Result<DivisorClass, PicardError> {
        Ok(DivisorClass::new(degree, self.torsion.element(coords)?))
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::new(3, self.torsion.zero())
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.torsion.contains(&d.torsion)
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        DivisorClass::new(a.degree + b.degree, self.torsion.add(&a.torsion, &b.torsion))
    }

    pub fn sub(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        DivisorClass::new(a.degree - b.degree, self.torsion.sub(&a.torsion, &b.torsion))
    }

    pub fn scale(&self, a: &DivisorClass, k: i64) -> DivisorClass {
        DivisorClass::new(a.degree * k, self.torsion.scale(&a.torsion, k))
    }

    /// All classes of the given degree, ordered by torsion coordinates.
    pub fn classes_of_degree(&self, degree: i64) -> Vec<DivisorClass> {
        self.torsion.elements().map(|t| DivisorClass::new(degree, t)).collect()
    }
}

/// Numerical intersection on a rank-one Néron–Severi lattice generated by `L₀`.
pub fn intersection(a: &DivisorClass, b: &DivisorClass) -> i64 {
    a.degree * b.degree
}

/// `p_a(D) = (D² + K·D)/2 + 1` with `K = 3L₀`.
pub fn arithmetic_genus(d: &DivisorClass) -> Result<i64, PicardError> {
    if d.degree < 1 {
        return Err(PicardError::NonPositiveDegree(d.degree));
    }
    let twice = d.degree * d.degree + 3 * d.degree;
    assert_eq!(twice % 2, 0, "adjunction parity");
    Ok(twice / 2 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionVerdict {
    /// `τ|_D` is a nontrivial line bundle on `D`.
    Nontrivial,
    Trivial,
}

/// Torsion classes restrict injectively to any curve of positive degree.
pub fn torsion_restriction_nonvanishing(d: &DivisorClass, tau: &GroupElement) -> Result<RestrictionVerdict, PicardError> {
    if d.degree < 1 {
        return Err(PicardError::NonPositiveDegree(d.degree));
    }
    Ok(if tau.is_zero() { RestrictionVerdict::Trivial } else { RestrictionVerdict::Nontrivial })
}

/// `(a, t) ↦ (a, a·τ₃ + A t)`, the pullback along an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicAutomorphism {
    pub name: String,
    pub torsion_action: GroupEndo,
    pub cube_root_offset: GroupElement,
}

impl PicAutomorphism {
    pub fn new(name: impl Into<String>, torsion_action: GroupEndo, cube_root_offset: GroupElement) -> Result<Self, PicardError> {
        let group = torsion_action.parent();
        if !group.contains(&cube_root_offset) {
            return Err(PicardError::GroupMismatch);
        }
        if !group.scale(&cube_root_offset, 3).is_zero() {
            return Err(PicardError::OffsetNotThreeTorsion(cube_root_offset));
        }
        Ok(Self { name: name.into(), torsion_action, cube_root_offset })
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        Self { name: "1".into(), torsion_action: GroupEndo::identity(group), cube_root_offset: group.zero() }
    }

    pub fn group(&self) -> &FinAbGroup {
        self.torsion_action.parent()
    }

    pub fn act(&self, d: &DivisorClass) -> Result<DivisorClass, PicardError> {
        let g = self.group();
        if !g.contains(&d.torsion) {
            return Err(PicardError::GroupMismatch);
        }
        let shifted = g.scale(&self.cube_root_offset, d.degree);
        Ok(DivisorClass::new(d.degree, g.add(&shifted, &self.torsion_action.apply(&d.torsion))))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, PicardError> {
        if self.group() != other.group() {
            return Err(PicardError::GroupMismatch);
        }
        let g = self.group();
        let offset = g.add(&self.cube_root_offset, &self.torsion_action.apply(&other.cube_root_offset));
        Ok(Self {
            name: compose_names(&self.name, &other.name),
            torsion_action: self.torsion_action.compose(&other.torsion_action)?,
            cube_root_offset: offset,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.group());
        for _ in 0..k {
            out = self.compose(&out).expect("same group");
        }
        out.name = power_name(&self.name, k);
        out
    }

    pub fn with_offset(&self, offset: GroupElement) -> Result<Self, PicardError> {
        Self::new(self.name.clone(), self.torsion_action.clone(), offset)
    }

    /// Offsets `τ` with `3τ = 0` and `(1 + A + A²)τ = 0`, i.e. those for which
    /// the induced map on Pic still has order dividing 3.
    pub fn admissible_offsets(torsion_action: &GroupEndo) -> Vec<GroupElement> {
        let g = torsion_action.parent();
        let a2 = torsion_action.pow(2);
        g.elements()
            .filter(|t| g.scale(t, 3).is_zero())
            .filter(|t| {
                let s = g.add(&g.add(t, &torsion_action.apply(t)), &a2.apply(t));
                s.is_zero()
            })
            .collect()
    }

    /// Orbit of a class, starting at the class itself, without repeats.
    pub fn orbit(&self, d: &DivisorClass) -> Result<Vec<DivisorClass>, PicardError> {
        let mut out = vec![d.clone()];
        let mut cur = self.act(d)?;
        while cur != *d {
            out.push(cur.clone());
            cur = self.act(&cur)?;
            assert!(out.len() <= self.group().order() as usize * 3 + 1, "automorphism of infinite order");
        }
        Ok(out)
    }
}

fn compose_names(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", x) | (x, "1") => x.to_string(),
        _ => format!("{a}{b}"),
    }
}

fn power_name(name: &str, k: u32) -> String {
    match k {
        0 => "1".into(),
        1 => name.into(),
        2 => format!("{name}²"),
        _ => format!("{name}^{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::CyclicProduct;

    fn c14() -> (CyclicProduct, PicAutomorphism) {
        let p = CyclicProduct::new(&[2, 7]).unwrap();
        let s = PicAutomorphism::new("σ", p.diagonal_endo(&[1, 2]).unwrap(), p.group().zero()).unwrap();
        (p, s)
    }

    #[test]
    fn action_on_seven_torsion() {
        let g = FinAbGroup::cyclic(7);
        let sigma = PicAutomorphism::new("σ", GroupEndo::multiplication(&g, 2), g.zero()).unwrap();
        let d = DivisorClass::new(1, g.generator(0));
        assert_eq!(sigma.act(&d).unwrap(), DivisorClass::new(1, g.scale(&g.generator(0), 2)));
        let k = PicardLattice::new(g.clone()).canonical();
        assert_eq!(sigma.act(&k).unwrap(), k);
    }

    #[test]
    fn nonzero_offset_orbit_sums_to_canonical() {
        let g = FinAbGroup::cyclic(3);
        let sigma = PicAutomorphism::new("σ", GroupEndo::identity(&g), g.generator(0)).unwrap();
        let pic = PicardLattice::new(g.clone());
        for t in g.elements() {
            let d = DivisorClass::new(1, t.clone());
            let d1 = sigma.act(&d).unwrap();
            assert_eq!(d1.torsion, g.add(&g.generator(0), &t));
            let d2 = sigma.act(&d1).unwrap();
            assert_eq!(pic.add(&pic.add(&d, &d1), &d2), pic.canonical());
            assert_eq!(sigma.act(&d2).unwrap(), d);
        }
    }

    #[test]
    fn offsets_must_be_three_torsion() {
        let g = FinAbGroup::cyclic(6);
        assert!(matches!(
            PicAutomorphism::new("σ", GroupEndo::identity(&g), g.generator(0)),
            Err(PicardError::OffsetNotThreeTorsion(_))
        ));
        let offs = PicAutomorphism::admissible_offsets(&GroupEndo::identity(&g));
        assert_eq!(offs.len(), 3);
    }

    #[test]
    fn intersection_and_genus() {
        let (p, _) = c14();
        let pic = PicardLattice::new(p.group().clone());
        let k = pic.canonical();
        assert_eq!(intersection(&k, &k), 9);
        let d = DivisorClass::new(1, p.element(&[1, 3]));
        assert_eq!(intersection(&d, &d), 1);
        assert_eq!(intersection(&k, &d), 3);
        assert_eq!(intersection(&DivisorClass::new(2, p.element(&[1, 0])), &d), 2);
        assert_eq!(arithmetic_genus(&d).unwrap(), 3);
        assert_eq!(arithmetic_genus(&k).unwrap(), 10);
        assert_eq!(arithmetic_genus(&DivisorClass::new(2, p.element(&[0, 0]))).unwrap(), 6);
        assert!(arithmetic_genus(&DivisorClass::new(0, p.element(&[0, 0]))).is_err());
    }

    #[test]
    fn restriction_verdicts() {
        let (p, _) = c14();
        let d1 = DivisorClass::new(1, p.element(&[1, 1]));
        assert_eq!(torsion_restriction_nonvanishing(&d1, &p.element(&[1, 0])).unwrap(), RestrictionVerdict::Nontrivial);
        assert_eq!(torsion_restriction_nonvanishing(&d1, &p.element(&[0, 0])).unwrap(), RestrictionVerdict::Trivial);
        assert_eq!(torsion_restriction_nonvanishing(&d1, &p.element(&[1, 5])).unwrap(), RestrictionVerdict::Nontrivial);
    }

    #[test]
    fn composition_and_powers() {
        let (p, s) = c14();
        let s3 = s.pow(3);
        assert!(s3.torsion_action.is_identity());
        assert_eq!(s.pow(2).name, "σ²");
        let d = DivisorClass::new(1, p.element(&[1, 1]));
        let orbit: Vec<_> = s.orbit(&d).unwrap().into_iter().map(|c| p.coords_of(&c.torsion)).collect();
        assert_eq!(orbit, vec![vec![1, 1], vec![1, 2], vec![1, 4]]);
        let other = FinAbGroup::new(vec![2, 2]).unwrap();
        assert_eq!(s.act(&DivisorClass::new(1, other.zero())), Err(PicardError::GroupMismatch));
    }
}
