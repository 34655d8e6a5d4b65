//! Seeded random sampling of groups and automorphisms for the brute-force checks.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::coinv::{coinvariants, coinv_inv_isomorphism_check, little_lemma_check, LittleLemmaVerdict};
use super::{FinAbGroup, GroupEndo};
use crate::matrix::Matrix;
use crate::par::{self, Strategy};

/// A uniformly random order in `1..=max_order`, then a random group of that order.
pub fn random_group<R: Rng>(rng: &mut R, max_order: u64) -> FinAbGroup {
    let n = rng.gen_range(1..=max_order);
    FinAbGroup::all_of_order(n).choose(rng).expect("at least one group").clone()
}

/// A random endomorphism: column `j` is a uniform element killed by `d_j`.
pub fn random_endo<R: Rng>(rng: &mut R, h: &FinAbGroup) -> GroupEndo {
    let d = h.invariant_factors();
    let k = d.len();
    let m = Matrix::from_fn(k, k, |i, j| {
        let step = d[i] / d[i].gcd(&d[j]);
        rng.gen_range(0..d[i] / step) * step
    });
    GroupEndo::new(h.clone(), m).expect("entries respect the orders")
}

/// A random automorphism by rejection; `None` after `tries` failures.
pub fn random_automorphism<R: Rng>(rng: &mut R, h: &FinAbGroup, tries: usize) -> Option<GroupEndo> {
    (0..tries).map(|_| random_endo(rng, h)).find(GroupEndo::is_automorphism)
}

/// An upper bound on the order of any automorphism, used as a search limit.
fn order_limit(h: &FinAbGroup) -> u64 {
    (h.order() * h.order()).max(4)
}

/// A random `(g, m)` with `g^m = 1` and `gcd(m, exp H) = 1`, preferring `m > 1`.
pub fn random_coprime_action<R: Rng>(rng: &mut R, h: &FinAbGroup) -> (GroupEndo, u64) {
    let exp = h.exponent();
    let mut fallback = None;
    for _ in 0..20 {
        let Some(g) = random_automorphism(rng, h, 50) else { continue };
        let k = g.order(order_limit(h)).expect("automorphisms have finite order");
        let mut coprime = k;
        loop {
            let common = coprime.gcd(&exp);
            if common == 1 {
                break;
            }
            coprime /= common;
        }
        let g = g.pow(k / coprime);
        if coprime > 1 {
            return (g, coprime);
        }
        fallback.get_or_insert((g, 1));
    }
    fallback.unwrap_or_else(|| (GroupEndo::identity(h), 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceOracleSummary {
    pub cases: usize,
    pub nontrivial_m: usize,
    pub failures: Vec<String>,
}

/// `Im Tr = Ker(g−1)` and `Im(g−1) = Ker Tr` by enumeration on random coprime actions.
pub fn trace_oracle_run<R: Rng>(rng: &mut R, cases: usize, max_order: u64, strategy: Strategy) -> TraceOracleSummary {
    let inputs: Vec<(FinAbGroup, GroupEndo, u64)> = (0..cases)
        .map(|_| {
            let h = random_group(rng, max_order);
            let (g, m) = random_coprime_action(rng, &h);
            (h, g, m)
        })
        .collect();
    let results = par::map(strategy, &inputs, |(h, g, m)| {
        let cert = coinv_inv_isomorphism_check(h, g, *m, max_order, Strategy::Sequential);
        match cert {
            Ok(c) if c.passes() => None,
            Ok(c) => Some(format!("H = {h}, g = {:?}, m = {m}: {c:?}", g.to_rows())),
            Err(e) => Some(format!("H = {h}, m = {m}: {e}")),
        }
    });
    TraceOracleSummary {
        cases,
        nontrivial_m: inputs.iter().filter(|(_, _, m)| *m > 1).count(),
        failures: results.into_iter().flatten().collect(),
    }
}

/// Random automorphisms of exact order 3, sampled with replacement.
///
/// Small automorphism groups are enumerated and sampled uniformly; larger
/// ones fall back to rejection sampling with a fixed budget, so the result
/// may be shorter than `count` (and is empty when none exist).
pub fn sample_order_three<R: Rng>(rng: &mut R, f: &FinAbGroup, count: usize) -> Vec<GroupEndo> {
    let order_three = |s: &GroupEndo| !s.is_identity() && s.pow(3).is_identity();
    if let Some(all) = GroupEndo::all_automorphisms(f, 4096) {
        let pool: Vec<GroupEndo> = all.into_iter().filter(order_three).collect();
        if pool.is_empty() {
            return Vec::new();
        }
        return (0..count).map(|_| pool.choose(rng).expect("non-empty").clone()).collect();
    }
    let mut out = Vec::new();
    for _ in 0..10 * count {
        if out.len() == count {
            break;
        }
        let Some(g) = random_automorphism(rng, f, 20) else { continue };
        let k = g.order(order_limit(f)).expect("finite order");
        if k % 3 == 0 {
            out.push(g.pow(k / 3));
        }
    }
    out
}

/// Whether the coinvariants of `σ` are `0` or `C₃`.
pub fn has_small_coinvariants(f: &FinAbGroup, sigma: &GroupEndo) -> bool {
    coinvariants(f, sigma).map(|c| c.group.is_trivial() || c.group.invariant_factors() == [3]).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LittleLemmaSummary {
    pub groups: usize,
    pub groups_with_order_three: usize,
    pub sampled: usize,
    /// Sampled automorphisms meeting the coinvariant hypothesis, each checked on every element.
    pub checked: usize,
    pub failures: Vec<String>,
}

/// `t + σt + σ²t = 0` on every abelian group of order at most `max_order`
/// with `9 ∤ |F|`, for sampled order-3 `σ` whose coinvariants are `0` or `C₃`.
pub fn little_lemma_run<R: Rng>(
    rng: &mut R,
    max_order: u64,
    per_group: usize,
    strategy: Strategy,
) -> LittleLemmaSummary {
    let groups: Vec<FinAbGroup> =
        (1..=max_order).filter(|n| n % 9 != 0).flat_map(FinAbGroup::all_of_order).collect();
    let seeds: Vec<(FinAbGroup, u64)> = groups.iter().map(|g| (g.clone(), rng.gen())).collect();
    let per: Vec<(usize, usize, Vec<String>)> = par::map(strategy, &seeds, |(f, seed)| {
        use rand::SeedableRng;
        let mut local = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
        let sample = sample_order_three(&mut local, f, per_group);
        let admissible: Vec<&GroupEndo> = sample.iter().filter(|s| has_small_coinvariants(f, s)).collect();
        let failures = admissible
            .iter()
            .filter_map(|s| match little_lemma_check(f, s, max_order, Strategy::Sequential) {
                Ok(LittleLemmaVerdict::Holds { .. }) => None,
                other => Some(format!("F = {f}, σ = {:?}: {other:?}", s.to_rows())),
            })
            .collect();
        (sample.len(), admissible.len(), failures)
    });
    LittleLemmaSummary {
        groups: groups.len(),
        groups_with_order_three: per.iter().filter(|(n, _, _)| *n > 0).count(),
        sampled: per.iter().map(|(n, _, _)| n).sum(),
        checked: per.iter().map(|(_, c, _)| c).sum(),
        failures: per.into_iter().flat_map(|(_, _, f)| f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn coprime_actions_have_coprime_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let h = random_group(&mut rng, 60);
            let (g, m) = random_coprime_action(&mut rng, &h);
            assert!(g.pow(m).is_identity());
            assert_eq!(m.gcd(&h.exponent()), 1);
        }
    }

    #[test]
    fn order_three_samples_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c7 = FinAbGroup::cyclic(7);
        let s = sample_order_three(&mut rng, &c7, 5);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|g| g.pow(3).is_identity() && !g.is_identity() && has_small_coinvariants(&c7, g)));
        assert!(sample_order_three(&mut rng, &FinAbGroup::cyclic(8), 5).is_empty());
    }

    #[test]
    fn small_runs_are_clean() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = trace_oracle_run(&mut rng, 40, 50, Strategy::Sequential);
        assert!(t.failures.is_empty(), "{:?}", t.failures);
        let l = little_lemma_run(&mut rng, 60, 3, Strategy::default());
        assert!(l.failures.is_empty(), "{:?}", l.failures);
        assert!(l.checked > 0);
    }
}
