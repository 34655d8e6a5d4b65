//! Invariants, coinvariants and the trace map for a cyclic group acting on a
//! finite abelian group.

use num_integer::Integer;
use serde::Serialize;

use super::lattice;
use super::{AbelianError, FinAbGroup, GroupElement, GroupEndo, GroupHom};
use crate::matrix::Matrix;
use crate::par::{self, Strategy};
use crate::snf::solve_integer;

/// Above this group order, element-by-element checks give way to generator
/// witnesses.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000;

/// `H_G = H / Σ Im(g − 1)` with its projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub group: FinAbGroup,
    pub projection: GroupHom,
    representatives: Matrix<i64>,
}

impl Coinvariants {
    pub fn project(&self, e: &GroupElement) -> GroupElement {
        self.projection.apply(e)
    }

    /// An element of `H` mapping to `q`. Not a homomorphism in general.
    pub fn representative(&self, q: &GroupElement) -> GroupElement {
        GroupElement {
            coords: lattice::apply(&self.representatives, &q.coords, self.projection.source.invariant_factors()),
        }
    }
}

/// Coinvariants of `H` under the group generated by `gens`.
pub fn coinvariants_all(h: &FinAbGroup, gens: &[&GroupEndo]) -> Result<Coinvariants, AbelianError> {
    let k = h.rank();
    let mut relations = Matrix::zeros(k, 0);
    for g in gens {
        if g.parent() != h {
            return Err(AbelianError::GroupMismatch);
        }
        relations = relations.hconcat(g.minus_identity().matrix());
    }
    let q = lattice::quotient(h.invariant_factors(), &relations);
    let group = FinAbGroup::new(q.moduli)?;
    let projection = GroupHom::new(h.clone(), group.clone(), q.forward)?;
    Ok(Coinvariants { group, projection, representatives: q.backward })
}

/// `H_g = H / Im(g − 1)`.
pub fn coinvariants(h: &FinAbGroup, g: &GroupEndo) -> Result<Coinvariants, AbelianError> {
    coinvariants_all(h, &[g])
}

/// The kernel subgroup of an endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub group: FinAbGroup,
    pub inclusion: GroupHom,
    endo: GroupEndo,
}

impl Invariants {
    /// Membership test: `g(e) = e` (or `f(e) = 0` for a kernel).
    pub fn contains(&self, e: &GroupElement) -> bool {
        self.endo.apply(e).is_zero()
    }

    /// Coordinates of an ambient element in the subgroup's own generators.
    pub fn coordinates(&self, e: &GroupElement) -> Option<GroupElement> {
        let h = &self.inclusion.target;
        let block = self.inclusion.matrix.hconcat(&Matrix::diagonal(h.invariant_factors()));
        let sol = solve_integer(&block, &e.coords)?;
        Some(self.group.element(sol[..self.group.rank()].to_vec()).expect("rank matches"))
    }
}

pub(crate) fn kernel_of(f: &GroupEndo) -> Result<Invariants, AbelianError> {
    let h = f.parent();
    let k = lattice::kernel(h.invariant_factors(), h.invariant_factors(), f.matrix());
    let group = FinAbGroup::new(k.moduli)?;
    let inclusion = GroupHom::new(group.clone(), h.clone(), k.backward)?;
    Ok(Invariants { group, inclusion, endo: f.clone() })
}

/// `H^g = Ker(g − 1)`.
pub fn invariants(h: &FinAbGroup, g: &GroupEndo) -> Result<Invariants, AbelianError> {
    if g.parent() != h {
        return Err(AbelianError::GroupMismatch);
    }
    kernel_of(&g.minus_identity())
}

/// `1 + g + … + g^(m−1)`, after checking `g^m = 1`.
pub fn trace_endo(h: &FinAbGroup, g: &GroupEndo, m: u64) -> Result<GroupEndo, AbelianError> {
    if g.parent() != h {
        return Err(AbelianError::GroupMismatch);
    }
    if m == 0 || !g.pow(m).is_identity() {
        return Err(AbelianError::OrderMismatch(m));
    }
    let mut acc = GroupEndo::multiplication(h, 0);
    let mut power = GroupEndo::identity(h);
    for _ in 0..m {
        acc = acc.add(&power)?;
        power = power.compose(g)?;
    }
    Ok(acc)
}

/// The cyclic orbit `t, g t, g² t, …` without repetition.
pub fn orbit(t: &GroupElement, g: &GroupEndo) -> Result<Vec<GroupElement>, AbelianError> {
    let limit = g.parent().order();
    let mut out = vec![t.clone()];
    let mut cur = g.apply(t);
    while cur != *t {
        if out.len() as u64 >= limit || out.contains(&cur) {
            // only a non-injective map can fail to return to t
            return Err(AbelianError::OrderMismatch(out.len() as u64));
        }
        out.push(cur.clone());
        cur = g.apply(&cur);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Enumeration,
    Witnesses,
}

/// Outcome of comparing `H_g` with `H^g` through the trace map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvInvCertificate {
    /// Whether `gcd(m, exp H) = 1`.
    pub coprime: bool,
    pub method: CheckMethod,
    /// `Im Tr = Ker(g − 1)`.
    pub trace_image_is_fixed: bool,
    /// `Im(g − 1) = Ker Tr`.
    pub difference_image_is_trace_kernel: bool,
    pub coinvariants: FinAbGroup,
    pub invariants: FinAbGroup,
    /// The map `H_g → H^g` induced by the trace, in both groups' canonical generators.
    #[serde(skip)]
    pub trace_map: GroupHom,
    pub trace_map_bijective: bool,
}

impl CoinvInvCertificate {
    pub fn passes(&self) -> bool {
        self.coprime && self.trace_image_is_fixed && self.difference_image_is_trace_kernel && self.trace_map_bijective
    }
}

/// Verifies `Im Tr = Ker(g−1)` and `Im(g−1) = Ker Tr` and builds the induced
/// isomorphism `H_g → H^g`.
///
/// Groups of order at most `bound` are checked element by element. Larger
/// groups are checked through explicit preimages of kernel generators when
/// `m` is coprime to the exponent, and by lattice containment otherwise.
/// A precondition failure is reported in `coprime`, not as an error.
pub fn coinv_inv_isomorphism_check(
    h: &FinAbGroup,
    g: &GroupEndo,
    m: u64,
    bound: u64,
    strategy: Strategy,
) -> Result<CoinvInvCertificate, AbelianError> {
    let tr = trace_endo(h, g, m)?;
    let diff = g.minus_identity();
    let coprime = m.gcd(&h.exponent()) == 1;
    let coinv = coinvariants(h, g)?;
    let inv = invariants(h, g)?;

    let (method, fixed_ok, kernel_ok) = if h.order() <= bound {
        let (a, b) = enumerate_images(h, &tr, &diff, strategy);
        (CheckMethod::Enumeration, a, b)
    } else if coprime {
        (CheckMethod::Witnesses, trace_witnesses(h, g, &tr, &diff, m)?, difference_witnesses(h, g, &tr, &diff, m)?)
    } else {
        let d = h.invariant_factors();
        let ker_diff = inv.inclusion.matrix.clone();
        let ker_tr = kernel_of(&tr)?.inclusion.matrix;
        let a = lattice::contained_in(d, tr.matrix(), &ker_diff) && lattice::contained_in(d, &ker_diff, tr.matrix());
        let b = lattice::contained_in(d, diff.matrix(), &ker_tr) && lattice::contained_in(d, &ker_tr, diff.matrix());
        (CheckMethod::Witnesses, a, b)
    };

    // trace applied to representatives of the coinvariant generators
    let cols: Vec<Vec<i64>> = (0..coinv.group.rank())
        .map(|j| {
            let rep = coinv.representative(&coinv.group.generator(j));
            inv.coordinates(&tr.apply(&rep)).expect("trace lands in the fixed subgroup").coords
        })
        .collect();
    let trace_map = GroupHom::new(
        coinv.group.clone(),
        inv.group.clone(),
        Matrix::from_columns(&cols, inv.group.rank()),
    )?;
    let bijective = coinv.group.order() == inv.group.order() && trace_map.is_injective();

    Ok(CoinvInvCertificate {
        coprime,
        method,
        trace_image_is_fixed: fixed_ok,
        difference_image_is_trace_kernel: kernel_ok,
        coinvariants: coinv.group,
        invariants: inv.group,
        trace_map,
        trace_map_bijective: bijective,
    })
}

fn enumerate_images(h: &FinAbGroup, tr: &GroupEndo, diff: &GroupEndo, strategy: Strategy) -> (bool, bool) {
    let n = h.order();
    let rows = par::map_range(strategy, n, |i| {
        let x = h.element_at(i);
        let t = tr.apply(&x);
        let d = diff.apply(&x);
        (h.index_of(&t), h.index_of(&d), d.is_zero(), t.is_zero())
    });
    let n = n as usize;
    let (mut im_tr, mut im_diff, mut ker_diff, mut ker_tr) = (vec![false; n], vec![false; n], vec![false; n], vec![false; n]);
    for (i, &(t, d, dz, tz)) in rows.iter().enumerate() {
        im_tr[t as usize] = true;
        im_diff[d as usize] = true;
        ker_diff[i] = dz;
        ker_tr[i] = tz;
    }
    (im_tr == ker_diff, im_diff == ker_tr)
}

fn inverse_mod(m: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let e = (m as i128).extended_gcd(&(n as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i128) as u64).map(|a| if a == 0 { n } else { a })
}

/// `(g−1)∘Tr = 0` and every generator `h` of `Ker(g−1)` equals `Tr(a·h)` with `a·m ≡ 1 mod |h|`.
fn trace_witnesses(h: &FinAbGroup, _g: &GroupEndo, tr: &GroupEndo, diff: &GroupEndo, m: u64) -> Result<bool, AbelianError> {
    if !diff.compose(tr)?.is_zero() {
        return Ok(false);
    }
    let fixed = kernel_of(diff)?;
    for j in 0..fixed.group.rank() {
        let x = fixed.inclusion.apply(&fixed.group.generator(j));
        let Some(a) = inverse_mod(m, h.element_order(&x)) else { return Ok(false) };
        if tr.apply(&h.scale(&x, a as i64)) != x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Tr∘(g−1) = 0` and every generator `x` of `Ker Tr` equals `(g−1)(w)` for
/// `w = Σ_{i=1}^{am−1} i·g^i(x)`.
fn difference_witnesses(h: &FinAbGroup, g: &GroupEndo, tr: &GroupEndo, diff: &GroupEndo, m: u64) -> Result<bool, AbelianError> {
    if !tr.compose(diff)?.is_zero() {
        return Ok(false);
    }
    let ker = kernel_of(tr)?;
    for j in 0..ker.group.rank() {
        let x = ker.inclusion.apply(&ker.group.generator(j));
        let Some(a) = inverse_mod(m, h.element_order(&x)) else { return Ok(false) };
        let mut w = h.zero();
        let mut gi = x.clone();
        for i in 1..a * m {
            gi = g.apply(&gi);
            w = h.add(&w, &h.scale(&gi, i as i64));
        }
        if diff.apply(&w) != x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Precondition {
    NotOrderThree,
    NineDividesOrder,
    CoinvariantsTooLarge { coinvariants: FinAbGroup },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum LittleLemmaVerdict {
    /// `t + σt + σ²t = 0` for every `t`.
    Holds { method: CheckMethod, checked: u64 },
    /// Hypotheses fail; `counterexample` is the first `t` where the identity fails, if any.
    PreconditionViolated { violations: Vec<Precondition>, counterexample: Option<GroupElement> },
    /// Hypotheses hold but the identity fails.
    Fails { counterexample: GroupElement },
}

/// Checks `t + σ(t) + σ²(t) = 0` on `F`, separating hypothesis failures from
/// failures of the identity itself.
pub fn little_lemma_check(
    f: &FinAbGroup,
    sigma: &GroupEndo,
    bound: u64,
    strategy: Strategy,
) -> Result<LittleLemmaVerdict, AbelianError> {
    if sigma.parent() != f {
        return Err(AbelianError::GroupMismatch);
    }
    let mut violations = Vec::new();
    if !sigma.pow(3).is_identity() {
        violations.push(Precondition::NotOrderThree);
    }
    if f.order().is_multiple_of(9) {
        violations.push(Precondition::NineDividesOrder);
    }
    let coinv = coinvariants(f, sigma)?.group;
    if !(coinv.is_trivial() || coinv.invariant_factors() == [3]) {
        violations.push(Precondition::CoinvariantsTooLarge { coinvariants: coinv });
    }

    let norm = GroupEndo::identity(f).add(sigma)?.add(&sigma.pow(2))?;
    let (method, checked, counterexample) = if f.order() <= bound {
        let first = par::find_first(strategy, f.order(), |i| !norm.apply(&f.element_at(i)).is_zero());
        (CheckMethod::Enumeration, f.order(), first.map(|i| f.element_at(i)))
    } else {
        // the norm map is a homomorphism, so generators decide it
        let first = (0..f.rank()).map(|i| f.generator(i)).find(|e| !norm.apply(e).is_zero());
        (CheckMethod::Witnesses, f.rank() as u64, first)
    };

    Ok(match (violations.is_empty(), counterexample) {
        (false, counterexample) => LittleLemmaVerdict::PreconditionViolated { violations, counterexample },
        (true, None) => LittleLemmaVerdict::Holds { method, checked },
        (true, Some(counterexample)) => LittleLemmaVerdict::Fails { counterexample },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::CyclicProduct;

    fn c(n: i64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn coinvariants_of_c3_times_c7() {
        let cp = CyclicProduct::new(&[3, 7]).unwrap();
        let g = cp.diagonal_endo(&[1, 2]).unwrap();
        let q = coinvariants(cp.group(), &g).unwrap();
        assert_eq!(q.group, c(3));
    }

    #[test]
    fn coinvariants_of_identity_is_whole_group() {
        let h = FinAbGroup::new(vec![2, 6]).unwrap();
        let q = coinvariants(&h, &GroupEndo::identity(&h)).unwrap();
        assert_eq!(q.group, h);
        let inv = invariants(&h, &GroupEndo::identity(&h)).unwrap();
        assert_eq!(inv.group, h);
    }

    #[test]
    fn order_three_on_klein_four() {
        let h = FinAbGroup::new(vec![2, 2]).unwrap();
        let g = GroupEndo::from_rows(h.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        // enumerate Im(g-1)
        let diff = g.minus_identity();
        let image: std::collections::BTreeSet<_> = h.elements().map(|x| diff.apply(&x)).collect();
        assert_eq!(image.len(), 4);
        assert!(coinvariants(&h, &g).unwrap().group.is_trivial());
    }

    #[test]
    fn invariants_of_c14_under_doubling_on_c7() {
        let cp = CyclicProduct::new(&[2, 7]).unwrap();
        let g = cp.diagonal_endo(&[1, 2]).unwrap();
        let inv = invariants(cp.group(), &g).unwrap();
        assert_eq!(inv.group, c(2));
        let t2 = cp.element(&[1, 0]);
        assert!(inv.contains(&t2));
        assert!(!inv.contains(&cp.element(&[0, 1])));
    }

    #[test]
    fn trace_examples() {
        let h3 = c(5);
        let tr = trace_endo(&h3, &GroupEndo::identity(&h3), 3).unwrap();
        assert_eq!(tr, GroupEndo::multiplication(&h3, 3));

        let h7 = c(7);
        let tr = trace_endo(&h7, &GroupEndo::multiplication(&h7, 2), 3).unwrap();
        assert!(tr.is_zero());

        let h6 = c(6);
        let tr = trace_endo(&h6, &GroupEndo::identity(&h6), 3).unwrap();
        assert_eq!(tr.as_hom().image(), c(2));

        assert_eq!(
            trace_endo(&h7, &GroupEndo::multiplication(&h7, 2), 2),
            Err(AbelianError::OrderMismatch(2))
        );
    }

    #[test]
    fn coprime_check_on_c2_cubed_sixth_power() {
        // C7 acting as two 3-dimensional blocks on C2^6
        let h = FinAbGroup::new(vec![2; 6]).unwrap();
        let block = [[0, 0, 1], [1, 0, 1], [0, 1, 0]];
        let m = Matrix::from_fn(6, 6, |i, j| if i / 3 == j / 3 { block[i % 3][j % 3] } else { 0 });
        let g = GroupEndo::new(h.clone(), m).unwrap();
        assert_eq!(g.order(100), Some(7));
        let cert = coinv_inv_isomorphism_check(&h, &g, 7, DEFAULT_ENUMERATION_BOUND, Strategy::default()).unwrap();
        assert!(cert.passes());
        assert!(cert.coinvariants.is_trivial() && cert.invariants.is_trivial());
    }

    #[test]
    fn non_coprime_is_flagged() {
        let h = c(3);
        let cert = coinv_inv_isomorphism_check(&h, &GroupEndo::identity(&h), 3, 100, Strategy::Sequential).unwrap();
        assert!(!cert.coprime);
        assert!(!cert.passes());
    }

    #[test]
    fn witnesses_agree_with_enumeration() {
        let cp = CyclicProduct::new(&[2, 2, 7, 13]).unwrap();
        let g = cp
            .endo(&Matrix::from_rows(vec![
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 2, 0],
                vec![0, 0, 0, 1],
            ]))
            .unwrap();
        let h = cp.group();
        let a = coinv_inv_isomorphism_check(h, &g, 3, 10_000, Strategy::Sequential).unwrap();
        let b = coinv_inv_isomorphism_check(h, &g, 3, 10, Strategy::Sequential).unwrap();
        assert_eq!(a.method, CheckMethod::Enumeration);
        assert_eq!(b.method, CheckMethod::Witnesses);
        assert!(a.passes() && b.passes());
        assert_eq!(a.coinvariants, c(13));
    }

    #[test]
    fn orbits() {
        let h = c(7);
        let g = GroupEndo::multiplication(&h, 2);
        let t = |k| h.element(vec![k]).unwrap();
        assert_eq!(orbit(&t(1), &g).unwrap(), vec![t(1), t(2), t(4)]);
        assert_eq!(orbit(&t(3), &g).unwrap(), vec![t(3), t(6), t(5)]);
        assert_eq!(orbit(&t(0), &g).unwrap(), vec![t(0)]);
        assert!(orbit(&t(1), &GroupEndo::multiplication(&h, 0)).is_err());
    }

    #[test]
    fn little_lemma_examples() {
        let cp = CyclicProduct::new(&[2, 2, 3]).unwrap();
        let sigma = cp
            .endo(&Matrix::from_rows(vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]))
            .unwrap();
        assert_eq!(
            little_lemma_check(cp.group(), &sigma, 100, Strategy::default()).unwrap(),
            LittleLemmaVerdict::Holds { method: CheckMethod::Enumeration, checked: 12 }
        );
        let triv = FinAbGroup::trivial();
        assert!(matches!(
            little_lemma_check(&triv, &GroupEndo::identity(&triv), 100, Strategy::default()).unwrap(),
            LittleLemmaVerdict::Holds { .. }
        ));
        let h7 = c(7);
        assert!(matches!(
            little_lemma_check(&h7, &GroupEndo::multiplication(&h7, 2), 0, Strategy::default()).unwrap(),
            LittleLemmaVerdict::Holds { method: CheckMethod::Witnesses, .. }
        ));
    }

    #[test]
    fn little_lemma_precondition_failures() {
        let h = c(7);
        match little_lemma_check(&h, &GroupEndo::identity(&h), 100, Strategy::Sequential).unwrap() {
            LittleLemmaVerdict::PreconditionViolated { violations, counterexample } => {
                assert_eq!(violations, vec![Precondition::CoinvariantsTooLarge { coinvariants: c(7) }]);
                assert_eq!(counterexample, Some(h.element(vec![1]).unwrap()));
            }
            other => panic!("unexpected {other:?}"),
        }
        let h9 = c(9);
        match little_lemma_check(&h9, &GroupEndo::multiplication(&h9, 4), 100, Strategy::Sequential).unwrap() {
            LittleLemmaVerdict::PreconditionViolated { violations, .. } => {
                assert!(violations.contains(&Precondition::NineDividesOrder));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
