use super::*;
use crate::abelian::CyclicProduct;
use crate::picard::registry;

fn row(table: u8, r: u8) -> &'static FppDescriptor {
    registry().iter().find(|d| d.table == table && d.row == r).expect("registered row")
}

fn c14(t2: i64, t7: i64) -> DivisorClass {
    DivisorClass::new(1, CyclicProduct::new(&[2, 7]).unwrap().element(&[t2, t7]))
}

#[test]
fn first_six_rows_fully_determined() {
    for r in 1..=6 {
        let rep = run_vanishing(row(1, r)).unwrap();
        assert!(rep.undetermined.is_empty(), "row {r}: {:?}", rep.undetermined);
        for b in &rep.branches {
            assert!(b.undetermined.is_empty(), "row {r} branch {:?}", b.offsets);
        }
        assert_eq!(rep.proved_noneffective.len(), rep.candidates.len());
    }
}

#[test]
fn row_seven_survivors() {
    let rep = run_vanishing(row(1, 7)).unwrap();
    assert_eq!(rep.proved_noneffective.len(), 8);
    assert_eq!(rep.undetermined.len(), 6);
    let a: BTreeSet<_> = [1, 2, 4].map(|k| c14(1, k)).into_iter().collect();
    let b: BTreeSet<_> = [3, 5, 6].map(|k| c14(1, k)).into_iter().collect();
    let orbits: BTreeSet<BTreeSet<DivisorClass>> =
        rep.undetermined_orbits.iter().map(|o| o.iter().cloned().collect()).collect();
    assert_eq!(orbits, [a.clone(), b.clone()].into_iter().collect());
    for x in &a {
        for y in &b {
            assert!(rep.excluded(x, y), "{x} / {y}");
        }
    }
    assert_eq!(rep.max_simultaneously_effective, 3);
    assert!(rep.is_proved(&c14(0, 0)) && rep.is_proved(&c14(1, 0)));
    assert!((1..7).all(|k| rep.is_proved(&c14(0, k))));
    assert!(rep.notes.iter().any(|n| n.contains("exchanges")));
}

#[test]
fn orbit_sum_examples() {
    let r5 = row(1, 5);
    let oracle = EffectivityOracle::new(r5, &AxiomSet::default());
    let t = DivisorClass::new(1, r5.h1.generator(0));
    let proof = orbit_sum_rule(&t, &r5.aut_generators[0], &oracle).unwrap().unwrap();
    let Proof::OrbitSum { sum, sum_source, .. } = proof else { panic!() };
    assert_eq!(sum, DivisorClass::new(3, r5.h1.zero()));
    assert_eq!(sum_source, AxiomSource::PgZero);

    let r7 = row(1, 7);
    let oracle = EffectivityOracle::new(r7, &AxiomSet::default());
    let sigma = &r7.aut_generators[0];
    assert!(orbit_sum_rule(&c14(0, 0), sigma, &oracle).unwrap().is_some());
    assert!(orbit_sum_rule(&c14(1, 1), sigma, &oracle).unwrap().is_none());
}

#[test]
fn pairing_examples() {
    let r7 = row(1, 7);
    let oracle = EffectivityOracle::new(r7, &AxiomSet::default());
    let out = pairing_rule(&c14(1, 1), &c14(1, 6), &oracle).unwrap();
    assert!(matches!(out, PairingOutcome::Exclusion { sum_source: AxiomSource::K2017, .. }));

    let pic = oracle.picard();
    let a = c14(1, 3);
    let b = pic.sub(&pic.canonical(), &a);
    let out = pairing_rule(&a, &b, &oracle).unwrap();
    assert!(matches!(out, PairingOutcome::Exclusion { sum_source: AxiomSource::PgZero, .. }));

    let out = pairing_rule(&c14(0, 0), &c14(0, 0), &oracle).unwrap();
    let PairingOutcome::Proved { proof: Proof::Pairing { doubling, .. }, .. } = out else { panic!() };
    assert!(doubling);

    assert!(pairing_rule(&c14(1, 1), &c14(1, 2), &oracle).is_none());
}

#[test]
fn effective_partner_upgrades() {
    let r7 = row(1, 7);
    let oracle = EffectivityOracle::new(r7, &AxiomSet::default());
    let zero = DivisorClass::new(0, r7.h1.zero());
    let out = pairing_rule(&zero, &oracle.picard().canonical(), &oracle).unwrap();
    assert!(matches!(out, PairingOutcome::Proved { ref class, .. } if *class == oracle.picard().canonical()));
}

#[test]
fn row_seven_separation() {
    let r7 = row(1, 7);
    let pic = r7.picard();
    let sigma = &r7.aut_generators[0];
    let orbit = sigma.orbit(&c14(1, 1)).unwrap();
    let t = |a, b| CyclicProduct::new(&[2, 7]).unwrap().element(&[a, b]);
    let d = separation_obstruction(&pic, sigma, &orbit, PairCase::Distinct).unwrap();
    assert_eq!(d.delta, t(1, 0));
    assert_eq!(d.verdict, SeparationVerdict::Contradicted);
    let n1 = separation_obstruction(&pic, sigma, &orbit, PairCase::InfinitelyNear1).unwrap();
    let g = pic.torsion_group();
    assert!(n1.delta == t(1, 5) || n1.delta == g.neg(&t(1, 5)));
    let n2 = separation_obstruction(&pic, sigma, &orbit, PairCase::InfinitelyNear2).unwrap();
    assert!(!n2.delta.is_zero());

    let broken = vec![orbit[0].clone(), orbit[2].clone(), orbit[1].clone()];
    assert!(separation_obstruction(&pic, sigma, &broken, PairCase::Distinct).is_err());
}

#[test]
fn torsion_free_is_inconclusive() {
    let g = crate::abelian::FinAbGroup::trivial();
    let pic = PicardLattice::new(g.clone());
    let sigma = PicAutomorphism::identity(&g);
    let d = DivisorClass::new(1, g.zero());
    let c = separation_obstruction(&pic, &sigma, &[d.clone(), d.clone(), d], PairCase::Distinct).unwrap();
    assert_eq!(c.verdict, SeparationVerdict::Inconclusive);
}

#[test]
fn table_one_embeds() {
    for r in 1..=7 {
        let rep = bicanonical_verdict(row(1, r)).unwrap();
        assert_eq!(rep.verdict, BicanonicalVerdict::Embedding, "row {r}");
        assert_eq!(rep.reider_cases.len(), 1);
    }
}

#[test]
fn table_two_outside_fixed_points() {
    for r in 1..=3 {
        let s = row(2, r);
        let rep = bicanonical_verdict(s).unwrap();
        assert!(matches!(rep.verdict, BicanonicalVerdict::EmbeddingOutsideFixedPoints { max_points: 3, .. }));
        let v = &rep.vanishing;
        assert!(v.trivial_action_forced.forced && v.trivial_action_forced.registered_action_trivial);
        let cb = v.curve_bound.as_ref().unwrap();
        assert_eq!(cb.undetermined, 3);
        assert!(!cb.consistent);
    }
}

#[test]
fn replay_all_rows() {
    for s in registry() {
        let rep = run_vanishing(s).unwrap();
        assert_eq!(replay(&rep, s).unwrap(), Vec::<String>::new(), "{}", s.label);
        let mut all: Vec<DivisorClass> =
            rep.proved_noneffective.iter().map(|p| p.class.clone()).chain(rep.undetermined.iter().cloned()).collect();
        all.sort();
        assert_eq!(all, rep.candidates);
    }
}

#[test]
fn branch_independence_rows_one_to_three() {
    for r in 1..=3 {
        let rep = run_vanishing(row(1, r)).unwrap();
        assert_eq!(rep.branches.len(), 3);
        assert!(rep.branch_independent);
        let first: Vec<_> = rep.branches[0].proved_noneffective.iter().map(|p| &p.class).collect::<BTreeSet<_>>().into_iter().collect();
        for b in &rep.branches {
            let these: Vec<_> = b.proved_noneffective.iter().map(|p| &p.class).collect::<BTreeSet<_>>().into_iter().collect();
            assert_eq!(these, first);
        }
    }
}

#[test]
fn axioms_monotone() {
    let s = row(1, 7);
    let none = AxiomSet { k2017: false, ..AxiomSet::default() };
    let weak = run_vanishing_with(s, &none).unwrap();
    let strong = run_vanishing(s).unwrap();
    assert!(weak.proved_noneffective.iter().all(|p| strong.is_proved(&p.class)));
    let extra = AxiomSet {
        extra: vec![NonEffectiveAxiom { class: c14(1, 1), source: AxiomSource::Derived }],
        ..AxiomSet::default()
    };
    let more = run_vanishing_with(s, &extra).unwrap();
    assert!(more.undetermined.len() < strong.undetermined.len());
}

#[test]
fn explain_chain() {
    let rep = run_vanishing(row(1, 7)).unwrap();
    assert!(rep.explain(&c14(1, 1))[0].contains("undetermined"));
    assert!(rep.explain(&c14(0, 3))[0].starts_with("step"));
}

#[test]
fn report_json_tags() {
    let rep = run_vanishing(row(1, 7)).unwrap();
    let js = serde_json::to_string(&rep).unwrap();
    assert!(js.contains("\"ORBIT_SUM\""));
    assert!(js.contains("\"K2017\""));
}
