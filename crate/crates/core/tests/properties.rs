use std::collections::BTreeSet;

use fpp_core::abelian::{coinvariants, invariants, FinAbGroup, GroupEndo};
use fpp_core::matrix::Matrix;
use fpp_core::picard::{registry, DivisorClass, FppDescriptor};
use fpp_core::simquot::examples::{grid_point_reflection, grid_torus, torus7};
use fpp_core::simquot::{coinvariant_surjection_check, exact_sequence_ii_check, SimplicialAction, SimplicialComplex, SurjectionVerdict};
use fpp_core::snf::smith_normal_form;
use fpp_core::vanishing::{replay, run_vanishing, run_vanishing_with, AxiomSet, AxiomSource, NonEffectiveAxiom};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn small_matrix() -> impl Strategy<Value = Matrix<i64>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-30i64..30, c), r).prop_map(move |rows| Matrix::from_rows_with_cols(rows, c))
    })
}

fn small_group() -> impl Strategy<Value = FinAbGroup> {
    (1u64..120, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let all = FinAbGroup::all_of_order(n);
        all[i.index(all.len())].clone()
    })
}

/// A group with a random endomorphism given by its matrix on canonical generators.
fn group_with_endo() -> impl Strategy<Value = GroupEndo> {
    small_group().prop_flat_map(|h| {
        let d = h.invariant_factors().to_vec();
        let k = d.len();
        prop::collection::vec(any::<u64>(), k * k).prop_map(move |raw| {
            let m = Matrix::from_fn(k, k, |i, j| {
                let step = d[i] / num_integer::gcd(d[i], d[j]);
                (raw[i * k + j] % (d[i] / step) as u64) as i64 * step
            });
            GroupEndo::new(h.clone(), m).expect("entries respect the orders")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_factorizes_and_divides(m in small_matrix()) {
        let d = smith_normal_form(&m);
        prop_assert!(d.verify(&m));
        let diag = d.diagonal();
        prop_assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), d.rank);
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(!w[0].is_negative());
        }
    }

    #[test]
    fn coinvariants_and_invariants_have_equal_order(g in group_with_endo()) {
        let h = g.parent().clone();
        let co = coinvariants(&h, &g).unwrap();
        let inv = invariants(&h, &g).unwrap();
        prop_assert_eq!(co.group.order(), inv.group.order());
        // The projection is onto and kills every (g - 1)x.
        let mut hit = BTreeSet::new();
        for x in h.elements() {
            prop_assert_eq!(co.project(&g.apply(&x)), co.project(&x));
            hit.insert(co.project(&x));
        }
        prop_assert_eq!(hit.len() as u64, co.group.order());
        let fixed = h.elements().filter(|x| g.apply(x) == *x).count() as u64;
        prop_assert_eq!(fixed, inv.group.order());
    }

    #[test]
    fn pic_action_is_additive_and_of_order_three(
        row in 0usize..10,
        a in (-4i64..5, any::<u64>()),
        b in (-4i64..5, any::<u64>()),
    ) {
        let d: &FppDescriptor = &registry()[row];
        let pic = d.picard();
        let class = |(deg, i): (i64, u64)| DivisorClass::new(deg, d.h1.element_at(i % d.h1.order()));
        let (x, y) = (class(a), class(b));
        for s in d.aut_elements() {
            let sum = pic.add(&x, &y);
            prop_assert_eq!(s.act(&sum).unwrap(), pic.add(&s.act(&x).unwrap(), &s.act(&y).unwrap()));
            prop_assert_eq!(s.act(&x).unwrap().degree, x.degree);
            prop_assert_eq!(s.pow(3).act(&x).unwrap(), x.clone());
            prop_assert_eq!(s.act(&pic.canonical()).unwrap(), pic.canonical());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn vanishing_is_monotone_and_orbit_closed(row in 0usize..10, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let d = &registry()[row];
        let Ok(base) = run_vanishing(d) else { return Ok(()) };
        let extra: Vec<NonEffectiveAxiom> = picks
            .iter()
            .map(|i| NonEffectiveAxiom { class: base.candidates[i.index(base.candidates.len())].clone(), source: AxiomSource::Derived })
            .collect();
        let more = run_vanishing_with(d, &AxiomSet { extra: extra.clone(), ..AxiomSet::default() }).unwrap();
        for p in &base.proved_noneffective {
            prop_assert!(more.is_proved(&p.class));
        }
        for e in &extra {
            prop_assert!(more.is_proved(&e.class));
        }
        prop_assert!(replay(&more, d).unwrap().is_empty());

        // Within each branch the proved and undetermined sets are Aut-stable.
        for (branch, report) in d.offset_branches().iter().zip(&more.branches) {
            let offsets: Vec<_> = branch.aut_generators.iter().map(|g| g.cube_root_offset.clone()).collect();
            prop_assert_eq!(&offsets, &report.offsets);
            let proved: BTreeSet<&DivisorClass> = report.proved_noneffective.iter().map(|p| &p.class).collect();
            for s in branch.aut_elements() {
                for c in &proved {
                    prop_assert!(proved.contains(&s.act(c).unwrap()), "{} not closed under {}", c, s.name);
                }
            }
        }
    }
}

/// The complex generated by the chosen facets, keeping every vertex.
fn sub_complex(vertices: &[u32], facets: Vec<Vec<u32>>) -> SimplicialComplex {
    SimplicialComplex::from_facets(vertices.to_vec(), facets).expect("faces of a valid complex")
}

fn facets_of(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    k.simplices_by_id().into_iter().filter(|s| s.len() == 3).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subdivision_preserves_homology(pick in subsequence(facets_of(&torus7()), 0..=14)) {
        let k = sub_complex(torus7().vertices(), pick);
        let (sd, _) = k.barycentric_subdivision();
        prop_assert_eq!(sd.h1().group, k.h1().group);
        prop_assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn stabilizers_generate_implies_surjective(pick in subsequence(facets_of(&grid_torus(4)), 0..=32)) {
        // Close the chosen facets under the point reflection, which fixes four vertices.
        let full = grid_torus(4);
        let sigma = grid_point_reflection(4);
        let mut facets: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in pick {
            let mut image: Vec<u32> = f.iter().map(|&v| sigma[v as usize] as u32).collect();
            image.sort_unstable();
            facets.insert(f);
            facets.insert(image);
        }
        let k = sub_complex(full.vertices(), facets.into_iter().collect());
        let a = SimplicialAction::new(&k, vec![sigma]).unwrap();
        let r = coinvariant_surjection_check(&k, &a).unwrap();
        prop_assert!(r.hypothesis_holds);
        prop_assert_eq!(r.verdict, SurjectionVerdict::Surjective);
        prop_assert!(r.sequence.exact && r.sequence.cokernel_matches);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn free_translation_sequence_is_exact(pick in subsequence(facets_of(&grid_torus(3)), 0..=18)) {
        // (i, j) ↦ (i + 1, j) on the 3×3 grid acts freely.
        let full = grid_torus(3);
        let shift: Vec<usize> = (0..9).map(|id| (id / 3 + 1) % 3 * 3 + id % 3).collect();
        let mut facets: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in pick {
            let mut cur = f;
            for _ in 0..3 {
                cur = cur.iter().map(|&v| shift[v as usize] as u32).collect();
                cur.sort_unstable();
                facets.insert(cur.clone());
            }
        }
        let k = sub_complex(full.vertices(), facets.into_iter().collect());
        let a = SimplicialAction::new(&k, vec![shift]).unwrap();
        let s = exact_sequence_ii_check(&k, &a).unwrap();
        prop_assert!(s.exact && s.cokernel_matches, "{:?}", s);
        prop_assert_eq!(s.stabilizer_subgroup_order, 1);
    }
}
