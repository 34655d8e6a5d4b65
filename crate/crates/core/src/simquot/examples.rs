//! Small complexes and actions used in tests, benchmarks and the CLI.

use super::{Perm, SimplicialAction, SimplicialComplex};

/// The 7-vertex torus: facets `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let facets = (0..7u32).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]);
    SimplicialComplex::from_facets((0..7).collect(), facets.collect()).expect("valid torus")
}

pub fn tetrahedron_boundary() -> SimplicialComplex {
    let facets = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    SimplicialComplex::from_facets((0..4).collect(), facets).expect("valid sphere")
}

/// The 6-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    let facets = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    SimplicialComplex::from_facets((0..6).collect(), facets.iter().map(|f| f.to_vec()).collect()).expect("valid RP2")
}

/// The `n × n` grid torus, each square cut along its main diagonal.
/// Vertex `(i, j)` has id `n·i + j`.
pub fn grid_torus(n: u32) -> SimplicialComplex {
    assert!(n >= 3, "grid torus needs n >= 3");
    let v = |i: u32, j: u32| (i % n) * n + (j % n);
    let facets = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .flat_map(|(i, j)| [vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)], vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]])
        .collect();
    SimplicialComplex::from_facets((0..n * n).collect(), facets).expect("valid grid torus")
}

/// `(i, j) ↦ (−i, −j)` on [`grid_torus`].
pub fn grid_point_reflection(n: u32) -> Perm {
    (0..n * n).map(|id| (((n - id / n) % n) * n + (n - id % n) % n) as usize).collect()
}

pub fn grid_involution(n: u32) -> (SimplicialComplex, SimplicialAction) {
    let k = grid_torus(n);
    let a = SimplicialAction::new(&k, vec![grid_point_reflection(n)]).expect("simplicial involution");
    (k, a)
}

pub fn polygon(n: u32) -> SimplicialComplex {
    let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_facets((0..n).collect(), edges).expect("valid circle")
}

/// A hexagon with the free rotation `i ↦ i + 2` of order 3.
pub fn hexagon_c3() -> (SimplicialComplex, SimplicialAction) {
    let k = polygon(6);
    let a = SimplicialAction::new(&k, vec![(0..6).map(|i| (i + 2) % 6).collect()]).expect("rotation");
    (k, a)
}

/// A single point with the trivial action of a group of order 2.
pub fn point_c2() -> (SimplicialComplex, SimplicialAction) {
    let k = SimplicialComplex::new(vec![0], vec![vec![0]]).expect("point");
    let a = SimplicialAction::new(&k, vec![vec![0]]).expect("trivial");
    (k, a)
}
