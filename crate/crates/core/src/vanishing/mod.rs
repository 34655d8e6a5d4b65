//! Effectivity bookkeeping for degree-one classes `L₀ + t`.
//!
//! Effectivity is three-valued. Named axioms supply the non-effective classes;
//! two rules propagate: pullbacks of effective divisors are effective (so an
//! orbit summing to a non-effective class has no effective member), and a sum
//! of two effective classes is effective (so a pair summing to a non-effective
//! class cannot both be effective).

mod bicanonical;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{GroupElement, GroupEndo};
use crate::picard::{AutType, DivisorClass, FppDescriptor, PicAutomorphism, PicardError, PicardLattice};

pub use bicanonical::{
    bicanonical_verdict, separation_obstruction, BicanonicalReport, BicanonicalVerdict, BranchVerdict, PairCase,
    SeparationCertificate, SeparationVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VanishingError {
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error("surface {0:?} has no cube root of the canonical class")]
    NoCubeRoot(String),
    #[error("surface {label:?} with Aut = {aut} is outside the scope of this engine")]
    OutOfScope { label: String, aut: AutType },
    #[error("automorphism {0} does not have order dividing 3 on Pic")]
    NotOrderThree(String),
    #[error("classes do not form a closed orbit [D, σD, σ²D] under {0}")]
    OrbitNotClosed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomSource {
    /// `K_X` is not effective.
    PgZero,
    /// `2L₀ + t` is not effective for `Aut`-invariant `t` when `Aut ≅ C₃²`.
    K2017,
    NegativeDegree,
    NonzeroTorsionDeg0,
    /// Proved earlier in the same run.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonEffectiveAxiom {
    pub class: DivisorClass,
    pub source: AxiomSource,
}

/// Which named axioms are in force, plus any extra non-effective classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSet {
    pub pg_zero: bool,
    pub k2017: bool,
    pub negative_degree: bool,
    pub nonzero_torsion_deg0: bool,
    pub extra: Vec<NonEffectiveAxiom>,
}

impl Default for AxiomSet {
    fn default() -> Self {
        Self { pg_zero: true, k2017: true, negative_degree: true, nonzero_torsion_deg0: true, extra: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "source")]
pub enum Effectivity {
    Effective,
    NonEffective(AxiomSource),
    Unknown,
}

/// The three-valued effectivity oracle for one surface and one choice of offsets.
#[derive(Clone, Debug)]
pub struct EffectivityOracle {
    pic: PicardLattice,
    aut_type: AutType,
    invariant_torsion: BTreeSet<GroupElement>,
    axioms: AxiomSet,
    derived: BTreeSet<DivisorClass>,
}

impl EffectivityOracle {
    pub fn new(surface: &FppDescriptor, axioms: &AxiomSet) -> Self {
        let h = &surface.h1;
        let actions: Vec<&GroupEndo> = surface.aut_generators.iter().map(|g| &g.torsion_action).collect();
        let invariant_torsion = h.elements().filter(|t| actions.iter().all(|a| a.apply(t) == *t)).collect();
        Self {
            pic: surface.picard(),
            aut_type: surface.aut_type,
            invariant_torsion,
            axioms: axioms.clone(),
            derived: BTreeSet::new(),
        }
    }

    pub fn picard(&self) -> &PicardLattice {
        &self.pic
    }

    pub fn status(&self, c: &DivisorClass) -> Effectivity {
        let a = &self.axioms;
        if c.degree == 0 && c.torsion.is_zero() {
            return Effectivity::Effective;
        }
        if a.negative_degree && c.degree < 0 {
            return Effectivity::NonEffective(AxiomSource::NegativeDegree);
        }
        if a.nonzero_torsion_deg0 && c.degree == 0 {
            return Effectivity::NonEffective(AxiomSource::NonzeroTorsionDeg0);
        }
        if a.pg_zero && *c == self.pic.canonical() {
            return Effectivity::NonEffective(AxiomSource::PgZero);
        }
        if a.k2017 && self.aut_type == AutType::C3xC3 && c.degree == 2 && self.invariant_torsion.contains(&c.torsion) {
            return Effectivity::NonEffective(AxiomSource::K2017);
        }
        if let Some(ax) = a.extra.iter().find(|ax| ax.class == *c) {
            return Effectivity::NonEffective(ax.source);
        }
        if self.derived.contains(c) {
            return Effectivity::NonEffective(AxiomSource::Derived);
        }
        Effectivity::Unknown
    }

    fn non_effective(&self, c: &DivisorClass) -> Option<AxiomSource> {
        match self.status(c) {
            Effectivity::NonEffective(s) => Some(s),
            _ => None,
        }
    }

    fn record(&mut self, c: DivisorClass) {
        self.derived.insert(c);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "rule")]
pub enum Proof {
    /// The class itself is axiomatically non-effective.
    Axiom { source: AxiomSource },
    /// `L + σ*L + σ²*L` is non-effective.
    OrbitSum { automorphism: String, orbit: Vec<DivisorClass>, sum: DivisorClass, sum_source: AxiomSource },
    /// `L + partner` is non-effective and the partner is effective, or the partner is `L` itself.
    Pairing { partner: DivisorClass, sum: DivisorClass, sum_source: AxiomSource, doubling: bool },
    /// `φ*L` was already shown non-effective.
    Pullback { automorphism: String, image: DivisorClass },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvedClass {
    pub class: DivisorClass,
    pub step: usize,
    pub proof: Proof,
}

fn is_trivial_on_pic(a: &PicAutomorphism) -> bool {
    a.torsion_action.is_identity() && a.cube_root_offset.is_zero()
}

fn check_order_three(sigma: &PicAutomorphism) -> Result<(), VanishingError> {
    let cube = sigma.pow(3);
    if is_trivial_on_pic(&cube) {
        Ok(())
    } else {
        Err(VanishingError::NotOrderThree(sigma.name.clone()))
    }
}

/// A non-effectivity proof for `l` when its σ-orbit sum is known non-effective.
pub fn orbit_sum_rule(
    l: &DivisorClass,
    sigma: &PicAutomorphism,
    oracle: &EffectivityOracle,
) -> Result<Option<Proof>, VanishingError> {
    check_order_three(sigma)?;
    let pic = oracle.picard();
    let l1 = sigma.act(l)?;
    let l2 = sigma.act(&l1)?;
    let sum = pic.add(&pic.add(l, &l1), &l2);
    Ok(oracle.non_effective(&sum).map(|sum_source| Proof::OrbitSum {
        automorphism: sigma.name.clone(),
        orbit: vec![l.clone(), l1, l2],
        sum,
        sum_source,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum PairingOutcome {
    /// Not both classes are effective.
    Exclusion { a: DivisorClass, b: DivisorClass, sum: DivisorClass, sum_source: AxiomSource },
    /// One class is non-effective outright.
    Proved { class: DivisorClass, proof: Proof },
}

/// Applies `A + B` non-effective ⇒ not both effective.
pub fn pairing_rule(a: &DivisorClass, b: &DivisorClass, oracle: &EffectivityOracle) -> Option<PairingOutcome> {
    let pic = oracle.picard();
    let sum = pic.add(a, b);
    let sum_source = oracle.non_effective(&sum)?;
    let proved = |class: &DivisorClass, partner: &DivisorClass| PairingOutcome::Proved {
        class: class.clone(),
        proof: Proof::Pairing { partner: partner.clone(), sum: sum.clone(), sum_source, doubling: class == partner },
    };
    if a == b {
        return Some(proved(a, a));
    }
    if oracle.status(a) == Effectivity::Effective {
        return Some(proved(b, a));
    }
    if oracle.status(b) == Effectivity::Effective {
        return Some(proved(a, b));
    }
    Some(PairingOutcome::Exclusion { a: a.clone(), b: b.clone(), sum, sum_source })
}

/// "Not both effective", possibly lifted along the automorphism orbits of a direct pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub a: DivisorClass,
    pub b: DivisorClass,
    /// The pair whose sum is non-effective; equal to `(a, b)` for direct exclusions.
    pub via: (DivisorClass, DivisorClass),
    pub sum: DivisorClass,
    pub sum_source: AxiomSource,
}

impl Exclusion {
    pub fn is_direct(&self) -> bool {
        (self.a == self.via.0 && self.b == self.via.1) || (self.a == self.via.1 && self.b == self.via.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    /// Cube-root offsets of the automorphism generators in this branch.
    pub offsets: Vec<GroupElement>,
    pub proved_noneffective: Vec<ProvedClass>,
    pub undetermined: Vec<DivisorClass>,
    pub exclusions: Vec<Exclusion>,
    pub undetermined_orbits: Vec<Vec<DivisorClass>>,
    pub max_simultaneously_effective: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveBoundCheck {
    pub expected_at_most: usize,
    pub undetermined: usize,
    pub max_simultaneously_effective: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub surface: String,
    pub axioms: AxiomSet,
    pub candidates: Vec<DivisorClass>,
    /// Classes proved non-effective in every branch, with the proof from the first branch.
    pub proved_noneffective: Vec<ProvedClass>,
    pub undetermined: Vec<DivisorClass>,
    /// Exclusions valid in every branch.
    pub exclusions: Vec<Exclusion>,
    pub undetermined_orbits: Vec<Vec<DivisorClass>>,
    pub max_simultaneously_effective: usize,
    pub branch_independent: bool,
    pub branches: Vec<BranchReport>,
    pub trivial_action_forced: TrivialActionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_bound: Option<CurveBoundCheck>,
    pub notes: Vec<String>,
}

impl VanishingReport {
    pub fn proof_of(&self, class: &DivisorClass) -> Option<&ProvedClass> {
        self.proved_noneffective.iter().find(|p| p.class == *class)
    }

    pub fn is_proved(&self, class: &DivisorClass) -> bool {
        self.proof_of(class).is_some()
    }

    pub fn excluded(&self, a: &DivisorClass, b: &DivisorClass) -> bool {
        self.exclusions.iter().any(|e| (e.a == *a && e.b == *b) || (e.a == *b && e.b == *a))
    }

    /// The proof chain for one class, innermost step last.
    pub fn explain(&self, class: &DivisorClass) -> Vec<String> {
        let mut lines = Vec::new();
        let mut cur = class.clone();
        let mut guard = 0;
        loop {
            guard += 1;
            let Some(p) = self.proof_of(&cur) else {
                if self.undetermined.contains(&cur) {
                    lines.push(format!("{cur}: undetermined"));
                    for e in self.exclusions.iter().filter(|e| e.a == cur || e.b == cur) {
                        let other = if e.a == cur { &e.b } else { &e.a };
                        lines.push(if e.is_direct() {
                            format!(
                                "  not both {cur} and {other} effective: their sum {} is non-effective ({:?})",
                                e.sum, e.sum_source
                            )
                        } else {
                            format!(
                                "  not both {cur} and {other} effective: the pair is an Aut-image of {} and {}, \
                                 whose sum {} is non-effective ({:?})",
                                e.via.0, e.via.1, e.sum, e.sum_source
                            )
                        });
                    }
                } else {
                    lines.push(format!("{cur}: not a degree-1 candidate of this surface"));
                }
                return lines;
            };
            match &p.proof {
                Proof::Axiom { source } => {
                    lines.push(format!("step {}: {cur} is non-effective by axiom {source:?}", p.step));
                    return lines;
                }
                Proof::OrbitSum { automorphism, orbit, sum, sum_source } => {
                    let parts: Vec<String> = orbit.iter().map(|c| c.to_string()).collect();
                    lines.push(format!(
                        "step {}: orbit under {automorphism}: {} sums to {sum}, non-effective ({sum_source:?}); \
                         an effective member would make every member effective",
                        p.step,
                        parts.join(" + ")
                    ));
                    return lines;
                }
                Proof::Pairing { partner, sum, sum_source, doubling } => {
                    if *doubling {
                        lines.push(format!(
                            "step {}: 2·{cur} = {sum} is non-effective ({sum_source:?}), so {cur} is not effective",
                            p.step
                        ));
                    } else {
                        lines.push(format!(
                            "step {}: {cur} + {partner} = {sum} is non-effective ({sum_source:?}) and {partner} is effective",
                            p.step
                        ));
                    }
                    return lines;
                }
                Proof::Pullback { automorphism, image } => {
                    lines.push(format!(
                        "step {}: {automorphism}*{cur} = {image}; an effective {cur} would make {image} effective",
                        p.step
                    ));
                    cur = image.clone();
                }
            }
            if guard > self.proved_noneffective.len() + 1 {
                lines.push("cycle in pullback chain".into());
                return lines;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialActionCheck {
    pub aut_h1_order: Option<usize>,
    /// `|Aut(H₁)|` is prime to 3, so any order-3 automorphism acts trivially.
    pub forced: bool,
    pub registered_action_trivial: bool,
}

/// Whether an order-3 group must act trivially on `H₁` for order reasons.
pub fn trivial_action_check(surface: &FppDescriptor) -> TrivialActionCheck {
    let auts = GroupEndo::all_automorphisms(&surface.h1, 1 << 16).map(|a| a.len());
    TrivialActionCheck {
        aut_h1_order: auts,
        forced: auts.is_some_and(|n| n % 3 != 0),
        registered_action_trivial: surface.aut_generators.iter().all(|g| g.torsion_action.is_identity()),
    }
}

fn aut_orbit(auts: &[PicAutomorphism], c: &DivisorClass) -> BTreeSet<DivisorClass> {
    auts.iter().map(|phi| phi.act(c).expect("class on this surface")).collect()
}

fn run_branch(branch: &FppDescriptor, axioms: &AxiomSet) -> Result<BranchReport, VanishingError> {
    let mut oracle = EffectivityOracle::new(branch, axioms);
    let candidates = oracle.picard().classes_of_degree(1);
    let auts = branch.aut_elements();
    // Every non-identity element of Aut has order 3, even when it acts trivially on Pic.
    let order_three: Vec<&PicAutomorphism> = auts.iter().filter(|a| a.name != "1").collect();

    let mut proved: Vec<ProvedClass> = Vec::new();
    let mut proved_set: BTreeSet<DivisorClass> = BTreeSet::new();
    loop {
        let mut changed = false;
        for l in &candidates {
            if proved_set.contains(l) {
                continue;
            }
            let mut proof = None;
            if let Some(src) = oracle.non_effective(l) {
                proof = Some(Proof::Axiom { source: src });
            }
            if proof.is_none() {
                for s in &order_three {
                    if let Some(p) = orbit_sum_rule(l, s, &oracle)? {
                        proof = Some(p);
                        break;
                    }
                }
            }
            if proof.is_none() {
                proof = candidates.iter().find_map(|b| match pairing_rule(l, b, &oracle) {
                    Some(PairingOutcome::Proved { class, proof }) if class == *l => Some(proof),
                    _ => None,
                });
            }
            if proof.is_none() {
                proof = auts.iter().find_map(|phi| {
                    let image = phi.act(l).expect("class on this surface");
                    (image != *l && proved_set.contains(&image))
                        .then(|| Proof::Pullback { automorphism: phi.name.clone(), image })
                });
            }
            if let Some(p) = proof {
                proved.push(ProvedClass { class: l.clone(), step: proved.len(), proof: p });
                proved_set.insert(l.clone());
                oracle.record(l.clone());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let undetermined: Vec<DivisorClass> = candidates.iter().filter(|c| !proved_set.contains(*c)).cloned().collect();
    let mut edges: BTreeMap<(DivisorClass, DivisorClass), Exclusion> = BTreeMap::new();
    for (i, a) in undetermined.iter().enumerate() {
        for b in &undetermined[i + 1..] {
            let Some(PairingOutcome::Exclusion { sum, sum_source, .. }) = pairing_rule(a, b, &oracle) else {
                continue;
            };
            for x in aut_orbit(&auts, a) {
                for y in aut_orbit(&auts, b) {
                    if x == y {
                        continue;
                    }
                    let key = if x < y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
                    let direct = (key.0 == *a && key.1 == *b) || (key.0 == *b && key.1 == *a);
                    let e = Exclusion {
                        a: key.0.clone(),
                        b: key.1.clone(),
                        via: (a.clone(), b.clone()),
                        sum: sum.clone(),
                        sum_source,
                    };
                    match edges.get(&key) {
                        Some(old) if old.is_direct() || !direct => {}
                        _ => {
                            edges.insert(key, e);
                        }
                    }
                }
            }
        }
    }
    let exclusions: Vec<Exclusion> = edges.into_values().collect();
    let orbits = orbits_of(&auts, &undetermined);
    let max_eff = max_independent_orbit_union(&orbits, &exclusions);
    Ok(BranchReport {
        offsets: branch.aut_generators.iter().map(|g| g.cube_root_offset.clone()).collect(),
        proved_noneffective: proved,
        undetermined,
        exclusions,
        undetermined_orbits: orbits,
        max_simultaneously_effective: max_eff,
    })
}

fn orbits_of(auts: &[PicAutomorphism], classes: &[DivisorClass]) -> Vec<Vec<DivisorClass>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in classes {
        if seen.contains(c) {
            continue;
        }
        let orbit = aut_orbit(auts, c);
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Largest union of whole orbits containing no excluded pair.
fn max_independent_orbit_union(orbits: &[Vec<DivisorClass>], exclusions: &[Exclusion]) -> usize {
    let k = orbits.len();
    assert!(k <= 20, "too many undetermined orbits for exhaustive search");
    let index: BTreeMap<&DivisorClass, usize> =
        orbits.iter().enumerate().flat_map(|(i, o)| o.iter().map(move |c| (c, i))).collect();
    let conflicts: Vec<(usize, usize)> = exclusions
        .iter()
        .filter_map(|e| Some((*index.get(&e.a)?, *index.get(&e.b)?)))
        .collect();
    (0u32..1 << k)
        .filter(|mask| conflicts.iter().all(|&(i, j)| mask & (1 << i) == 0 || mask & (1 << j) == 0))
        .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).map(|i| orbits[i].len()).sum())
        .max()
        .unwrap_or(0)
}

/// Runs the engine with the default axioms.
pub fn run_vanishing(surface: &FppDescriptor) -> Result<VanishingReport, VanishingError> {
    run_vanishing_with(surface, &AxiomSet::default())
}

pub fn run_vanishing_with(surface: &FppDescriptor, axioms: &AxiomSet) -> Result<VanishingReport, VanishingError> {
    if surface.aut_type == AutType::G21 {
        return Err(VanishingError::OutOfScope { label: surface.label.clone(), aut: surface.aut_type });
    }
    if !surface.lifts_to_su21 {
        return Err(VanishingError::NoCubeRoot(surface.label.clone()));
    }
    let branches = surface
        .offset_branches()
        .iter()
        .map(|b| run_branch(b, axioms))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &branches[0];
    let candidates = surface.picard().classes_of_degree(1);
    let proved: Vec<ProvedClass> = first
        .proved_noneffective
        .iter()
        .filter(|p| branches.iter().all(|b| b.proved_noneffective.iter().any(|q| q.class == p.class)))
        .cloned()
        .collect();
    let proved_classes: BTreeSet<&DivisorClass> = proved.iter().map(|p| &p.class).collect();
    let undetermined: Vec<DivisorClass> = candidates.iter().filter(|c| !proved_classes.contains(c)).cloned().collect();
    let exclusions: Vec<Exclusion> = first
        .exclusions
        .iter()
        .filter(|e| {
            branches.iter().all(|b| b.exclusions.iter().any(|f| (f.a == e.a && f.b == e.b) || (f.a == e.b && f.b == e.a)))
        })
        .cloned()
        .collect();
    let orbits = if undetermined == first.undetermined {
        first.undetermined_orbits.clone()
    } else {
        undetermined.iter().map(|c| vec![c.clone()]).collect()
    };
    let max_eff = branches.iter().map(|b| b.max_simultaneously_effective).max().unwrap_or(0);
    let branch_independent = branches.iter().all(|b| b.undetermined == first.undetermined);

    let trivial = trivial_action_check(surface);
    let curve_bound = (surface.table == 2).then_some(CurveBoundCheck {
        expected_at_most: 2,
        undetermined: undetermined.len(),
        max_simultaneously_effective: max_eff,
        consistent: undetermined.len() <= 2,
    });

    let mut notes = Vec::new();
    if branches.len() > 1 {
        notes.push(format!(
            "{} admissible cube-root offset choices examined; results {} across them",
            branches.len(),
            if branch_independent { "agree" } else { "differ" }
        ));
    }
    if trivial.forced {
        notes.push(format!(
            "|Aut(H1)| = {} is prime to 3, so every order-3 automorphism acts trivially on H1",
            trivial.aut_h1_order.unwrap_or(0)
        ));
    }
    if let Some(k) = exchanging_multiplier(surface, &orbits) {
        notes.push(format!(
            "multiplying torsion classes by {k} commutes with Aut and exchanges the two undetermined orbits; \
             after relabeling the 7-torsion generator either orbit may be taken as the surviving one"
        ));
    }
    if orbits.len() == 2 && max_eff < undetermined.len() {
        notes.push(format!(
            "the exclusion graph between the two orbits forces at most {max_eff} of the {} undetermined classes to be effective",
            undetermined.len()
        ));
    }
    if let Some(cb) = &curve_bound {
        if !cb.consistent {
            notes.push(format!(
                "expected at most {} undetermined classes, engine leaves {} with no exclusions among them",
                cb.expected_at_most, cb.undetermined
            ));
        }
    }
    Ok(VanishingReport {
        surface: surface.label.clone(),
        axioms: axioms.clone(),
        candidates,
        proved_noneffective: proved,
        undetermined,
        exclusions,
        undetermined_orbits: orbits,
        max_simultaneously_effective: max_eff,
        branch_independent,
        branches,
        trivial_action_forced: trivial,
        curve_bound,
        notes,
    })
}

/// A unit `k` such that multiplication by `k` commutes with every generator
/// and maps the first undetermined orbit onto the second.
fn exchanging_multiplier(surface: &FppDescriptor, orbits: &[Vec<DivisorClass>]) -> Option<i64> {
    if orbits.len() != 2 || orbits[0].len() != orbits[1].len() {
        return None;
    }
    let h = &surface.h1;
    let exp = h.exponent() as i64;
    let target: BTreeSet<&GroupElement> = orbits[1].iter().map(|c| &c.torsion).collect();
    (2..exp).filter(|k| num_integer::Integer::gcd(k, &exp) == 1).find(|&k| {
        let mk = GroupEndo::multiplication(h, k);
        let commutes = surface.aut_generators.iter().all(|g| {
            g.torsion_action.compose(&mk).ok() == mk.compose(&g.torsion_action).ok()
        });
        commutes && orbits[0].iter().all(|c| target.contains(&mk.apply(&c.torsion)))
    })
}

/// Re-verifies every proof in a report from scratch.
pub fn replay(report: &VanishingReport, surface: &FppDescriptor) -> Result<Vec<String>, VanishingError> {
    let mut failures = Vec::new();
    for branch_desc in surface.offset_branches() {
        let branch_offsets: Vec<GroupElement> = branch_desc.aut_generators.iter().map(|g| g.cube_root_offset.clone()).collect();
        let Some(branch) = report.branches.iter().find(|b| b.offsets == branch_offsets) else {
            failures.push(format!("branch {branch_offsets:?} missing from report"));
            continue;
        };
        let mut oracle = EffectivityOracle::new(&branch_desc, &report.axioms);
        let pic = branch_desc.picard();
        let auts = branch_desc.aut_elements();
        let mut done: BTreeSet<DivisorClass> = BTreeSet::new();
        for p in &branch.proved_noneffective {
            let ok = match &p.proof {
                Proof::Axiom { source } => oracle.non_effective(&p.class) == Some(*source),
                Proof::OrbitSum { automorphism, orbit, sum, sum_source } => {
                    auts.iter().find(|a| &a.name == automorphism).is_some_and(|s| {
                        let o1 = s.act(&p.class).expect("same surface");
                        let o2 = s.act(&o1).expect("same surface");
                        let recomputed = pic.add(&pic.add(&p.class, &o1), &o2);
                        *orbit == vec![p.class.clone(), o1, o2]
                            && recomputed == *sum
                            && oracle.non_effective(sum) == Some(*sum_source)
                    })
                }
                Proof::Pairing { partner, sum, sum_source, doubling } => {
                    pic.add(&p.class, partner) == *sum
                        && oracle.non_effective(sum) == Some(*sum_source)
                        && (*doubling == (partner == &p.class))
                        && (*doubling || oracle.status(partner) == Effectivity::Effective)
                }
                Proof::Pullback { automorphism, image } => auts
                    .iter()
                    .find(|a| &a.name == automorphism)
                    .is_some_and(|phi| phi.act(&p.class).ok().as_ref() == Some(image) && done.contains(image)),
            };
            if !ok {
                failures.push(format!("proof of {} at step {} does not replay", p.class, p.step));
            }
            done.insert(p.class.clone());
            oracle.record(p.class.clone());
        }
        for e in &branch.exclusions {
            let direct = pic.add(&e.via.0, &e.via.1) == e.sum && oracle.non_effective(&e.sum) == Some(e.sum_source);
            let lifted = aut_orbit(&auts, &e.via.0).contains(&e.a) && aut_orbit(&auts, &e.via.1).contains(&e.b)
                || aut_orbit(&auts, &e.via.0).contains(&e.b) && aut_orbit(&auts, &e.via.1).contains(&e.a);
            if !(direct && lifted) {
                failures.push(format!("exclusion {} / {} does not replay", e.a, e.b));
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests;
