use super::examples::*;
use super::*;
use crate::abelian::FinAbGroup;

fn ab(free_rank: usize, torsion: &[i64]) -> AbGroup {
    AbGroup { free_rank, torsion: FinAbGroup::new(torsion.to_vec()).unwrap() }
}

#[test]
fn homology_of_standard_surfaces() {
    assert_eq!(torus7().h1().group, ab(2, &[]));
    assert_eq!(torus7().euler_characteristic(), 0);
    assert_eq!(tetrahedron_boundary().h1().group, ab(0, &[]));
    assert_eq!(rp2_6().h1().group, ab(0, &[2]));
    assert_eq!(grid_torus(4).h1().group, ab(2, &[]));
    assert_eq!(polygon(5).h1().group, ab(1, &[]));
    assert_eq!(rp2_6().h1().group.to_string(), "C2");
    assert_eq!(torus7().h1().group.to_string(), "Z^2");
}

#[test]
fn generators_are_cycles() {
    for k in [torus7(), rp2_6(), grid_torus(3)] {
        let h = k.h1();
        let d1 = k.boundary(1);
        for (j, g) in h.generators.iter().enumerate() {
            assert!(d1.mul_vec(g).iter().all(|&x| x == 0));
            let mut e = vec![0; h.moduli().len()];
            e[j] = 1;
            assert_eq!(h.coordinates(g).unwrap(), e);
        }
        let d2 = k.boundary(2);
        assert!(d1.mul(&d2).to_rows().iter().flatten().all(|&x| x == 0));
    }
}

#[test]
fn subdivision_preserves_homology() {
    for k in [torus7(), rp2_6(), tetrahedron_boundary(), polygon(4)] {
        let (sd, labels) = k.barycentric_subdivision();
        assert_eq!(sd.h1().group, k.h1().group);
        assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
        assert_eq!(labels.len(), sd.num_vertices());
    }
}

#[test]
fn validation() {
    assert!(matches!(SimplicialComplex::new(vec![0, 1, 2], vec![vec![0, 1, 2]]), Err(SimquotError::NotClosed(_))));
    assert!(SimplicialComplex::new(vec![0, 1], vec![vec![0, 1], vec![1, 0]]).is_err());
    assert!(SimplicialComplex::new(vec![0, 1], vec![vec![0, 2]]).is_err());
    assert!(SimplicialComplex::from_facets(vec![0, 1, 2, 3], vec![vec![0, 1, 2, 3]]).is_err());
    let k = polygon(4);
    assert!(matches!(SimplicialAction::new(&k, vec![vec![0, 2, 1, 3]]), Err(SimquotError::NotSimplicial { .. })));
    assert!(SimplicialAction::new(&k, vec![vec![0, 0, 1, 2]]).is_err());
}

#[test]
fn json_round_trip() {
    let k = rp2_6();
    let js = serde_json::to_string(&k).unwrap();
    let back: SimplicialComplex = serde_json::from_str(&js).unwrap();
    assert_eq!(back, k);
    let bad = r#"{"vertices":[0,1,2],"simplices":[[0,1,2]]}"#;
    assert!(serde_json::from_str::<SimplicialComplex>(bad).is_err());
    let (k, a) = hexagon_c3();
    let rec = a.to_record(&k);
    assert_eq!(SimplicialAction::from_record(&k, &rec).unwrap(), a);
}

#[test]
fn hexagon_quotient() {
    let (k, a) = hexagon_c3();
    assert_eq!(a.order(), 3);
    assert!(regularity(&k, &a).is_some());
    let q = quotient_complex(&k, &a).unwrap();
    assert_eq!(q.subdivisions, 1);
    assert_eq!(q.quotient.num_vertices(), 4);
    assert_eq!(q.quotient.simplices(1).len(), 4);
    assert_eq!(q.quotient.h1().group, ab(1, &[]));
}

#[test]
fn trivial_action_is_identity() {
    for k in [torus7(), rp2_6(), polygon(3)] {
        let q = quotient_complex(&k, &SimplicialAction::trivial(&k)).unwrap();
        assert_eq!(q.quotient, k);
        assert_eq!(q.subdivisions, 0);
        let r = coinvariant_surjection_check(&k, &SimplicialAction::trivial(&k)).unwrap();
        assert_eq!(r.verdict, SurjectionVerdict::Surjective);
        assert!(r.kernel.is_trivial());
    }
}

#[test]
fn grid_involution_sphere() {
    let (k, a) = grid_involution(4);
    let fixed = (0..k.num_vertices()).filter(|&v| a.generators()[0][v] == v).count();
    assert_eq!(fixed, 4);
    let q = quotient_complex(&k, &a).unwrap();
    assert!(q.quotient.h1().group.is_trivial());
    assert_eq!(q.quotient.euler_characteristic(), 2);
    let r = coinvariant_surjection_check(&k, &a).unwrap();
    assert!(r.hypothesis_holds);
    assert_eq!(r.verdict, SurjectionVerdict::Surjective);
    assert_eq!(r.coinvariants, ab(0, &[2, 2]));
    assert_eq!(r.kernel, ab(0, &[2, 2]));
    assert!(r.sequence.exact && r.sequence.g_mod_k_ab.is_trivial());
    assert_eq!(r.sequence.pointwise_fixed_simplices, 0);
}

#[test]
fn free_rotation_sequence() {
    let (k, a) = hexagon_c3();
    let r = coinvariant_surjection_check(&k, &a).unwrap();
    assert!(!r.hypothesis_holds);
    assert_eq!(r.verdict, SurjectionVerdict::NotSurjective);
    let s = exact_sequence_ii_check(&k, &a).unwrap();
    assert_eq!(s.coinvariants, ab(1, &[]));
    assert_eq!(s.h1_quotient, ab(1, &[]));
    assert_eq!(s.g_mod_k_ab, ab(0, &[3]));
    assert_eq!(s.cokernel, ab(0, &[3]));
    assert!(s.kernel.is_trivial());
    assert!(s.exact && s.cokernel_matches && s.functorial);
}

#[test]
fn point_with_trivial_group() {
    let (k, a) = point_c2();
    let s = exact_sequence_ii_check(&k, &a).unwrap();
    assert!(s.h1_quotient.is_trivial() && s.g_mod_k_ab.is_trivial() && s.exact);
}

#[test]
fn torus_rotation_and_translation() {
    // Translation (i, j) ↦ (i + 1, j) on the 3×3 grid: free, quotient a torus.
    let k = grid_torus(3);
    let shift: Perm = (0..9).map(|id| ((id / 3 + 1) % 3 * 3 + id % 3) as usize).collect();
    let a = SimplicialAction::new(&k, vec![shift]).unwrap();
    let s = exact_sequence_ii_check(&k, &a).unwrap();
    assert_eq!(s.h1_quotient, ab(2, &[]));
    assert_eq!(s.g_mod_k_ab, ab(0, &[3]));
    assert!(s.exact && s.cokernel_matches);
}

#[test]
fn group_cap() {
    // Full symmetric group on 7 points exceeds the cap.
    let k = SimplicialComplex::new((0..7).collect(), (0..7).map(|v| vec![v]).collect()).unwrap();
    let cycle: Perm = (0..7).map(|i| (i + 1) % 7).collect();
    let swap: Perm = vec![1, 0, 2, 3, 4, 5, 6];
    assert!(matches!(SimplicialAction::new(&k, vec![cycle, swap]), Err(SimquotError::GroupTooLarge(_))));
}
