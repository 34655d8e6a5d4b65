use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HomologySummary, SimquotError};
use crate::abelian::FinAbGroup;
use crate::matrix::Matrix;

/// A finite simplicial complex of dimension at most 2.
///
/// Vertices are stored sorted by id; simplices are sorted tuples of vertex
/// indices, grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    faces: [Vec<Vec<usize>>; 3],
    lookup: [HashMap<Vec<usize>, usize>; 3],
}

#[derive(Serialize, Deserialize)]
struct ComplexRecord {
    vertices: Vec<u32>,
    simplices: Vec<Vec<u32>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexRecord { vertices: self.vertices.clone(), simplices: self.simplices_by_id() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ComplexRecord::deserialize(d)?;
        SimplicialComplex::new(r.vertices, r.simplices).map_err(serde::de::Error::custom)
    }
}

impl SimplicialComplex {
    /// Validates an explicit simplex list: face-closed, no duplicates, dimension at most 2.
    pub fn new(vertices: Vec<u32>, simplices: Vec<Vec<u32>>) -> Result<Self, SimquotError> {
        Self::build(vertices, simplices, false)
    }

    /// The smallest complex containing the given simplices.
    pub fn from_facets(vertices: Vec<u32>, facets: Vec<Vec<u32>>) -> Result<Self, SimquotError> {
        Self::build(vertices, facets, true)
    }

    fn build(mut vertices: Vec<u32>, simplices: Vec<Vec<u32>>, close: bool) -> Result<Self, SimquotError> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(SimquotError::DuplicateVertex(w[0]));
        }
        let index: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sets: [BTreeSet<Vec<usize>>; 3] = Default::default();
        for i in 0..vertices.len() {
            sets[0].insert(vec![i]);
        }
        let mut given: Vec<Vec<usize>> = Vec::new();
        for s in &simplices {
            if s.is_empty() || s.len() > 3 {
                return Err(SimquotError::BadDimension(s.clone()));
            }
            let mut idx = s
                .iter()
                .map(|v| index.get(v).copied().ok_or(SimquotError::UnknownVertex(*v)))
                .collect::<Result<Vec<_>, _>>()?;
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimquotError::RepeatedVertexInSimplex(s.clone()));
            }
            let d = idx.len() - 1;
            if d > 0 && !close && !sets[d].insert(idx.clone()) {
                return Err(SimquotError::DuplicateSimplex(s.clone()));
            }
            sets[d].insert(idx.clone());
            given.push(idx);
        }
        for s in &given {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if face.len() >= 2 && !sets[face.len() - 1].contains(&face) {
                    if close {
                        sets[face.len() - 1].insert(face);
                    } else {
                        let ids = s.iter().map(|&i| vertices[i]).collect();
                        return Err(SimquotError::NotClosed(ids));
                    }
                }
            }
        }
        Ok(Self::from_index_sets(vertices, sets))
    }

    pub(crate) fn from_index_sets(vertices: Vec<u32>, sets: [BTreeSet<Vec<usize>>; 3]) -> Self {
        let faces: [Vec<Vec<usize>>; 3] = sets.map(|s| s.into_iter().collect());
        let lookup = [0, 1, 2].map(|d| faces[d].iter().enumerate().map(|(i, s)| (s.clone(), i)).collect());
        Self { vertices, faces, lookup }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.binary_search(&id).ok()
    }

    /// Simplices of dimension `d` as sorted vertex-index tuples.
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        &self.faces[d]
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn dimension(&self) -> usize {
        (0..3).rev().find(|&d| !self.faces[d].is_empty()).unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces[0].len() as i64 - self.faces[1].len() as i64 + self.faces[2].len() as i64
    }

    /// Every simplex as a sorted list of vertex ids.
    pub fn simplices_by_id(&self) -> Vec<Vec<u32>> {
        self.faces.iter().flatten().map(|s| s.iter().map(|&i| self.vertices[i]).collect()).collect()
    }

    /// `∂_d : C_d → C_{d-1}` for `d = 1, 2`.
    pub fn boundary(&self, d: usize) -> Matrix<i64> {
        assert!(d == 1 || d == 2, "boundary of dimension {d}");
        let rows = self.faces[d - 1].len();
        let mut m = Matrix::zeros(rows, self.faces[d].len());
        for (j, s) in self.faces[d].iter().enumerate() {
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let i = self.lookup[d - 1][&face];
                m[(i, j)] += if skip % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    /// The barycentric subdivision. New vertex `i` is the barycenter of the
    /// `i`-th simplex in dimension order; the second component lists them.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<(usize, usize)>) {
        let labels: Vec<(usize, usize)> =
            (0..3).flat_map(|d| (0..self.faces[d].len()).map(move |i| (d, i))).collect();
        let offset = [0, self.faces[0].len(), self.faces[0].len() + self.faces[1].len()];
        let id = |s: &[usize]| offset[s.len() - 1] + self.lookup[s.len() - 1][s];
        let mut sets: [BTreeSet<Vec<usize>>; 3] = Default::default();
        for k in 0..labels.len() {
            sets[0].insert(vec![k]);
        }
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        for e in &self.faces[1] {
            for &v in e {
                sets[1].insert(sorted(vec![id(&[v]), id(e)]));
            }
        }
        for t in &self.faces[2] {
            let tid = id(t);
            for skip in 0..3 {
                let e: Vec<usize> = (0..3).filter(|&i| i != skip).map(|i| t[i]).collect();
                let eid = id(&e);
                sets[1].insert(sorted(vec![eid, tid]));
                for &v in &e {
                    let vid = id(&[v]);
                    sets[1].insert(sorted(vec![vid, tid]));
                    sets[2].insert(sorted(vec![vid, eid, tid]));
                }
            }
        }
        let vertices = (0..labels.len() as u32).collect();
        (SimplicialComplex::from_index_sets(vertices, sets), labels)
    }

    /// First homology `ker ∂₁ / im ∂₂`.
    pub fn h1(&self) -> HomologySummary {
        HomologySummary::compute(self)
    }
}

/// A finitely generated abelian group `Z^r ⊕ T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: FinAbGroup,
}

impl AbGroup {
    /// From canonical moduli: finite factors in divisibility order, then zeros.
    pub fn from_moduli(moduli: &[i64]) -> Self {
        let finite: Vec<i64> = moduli.iter().copied().filter(|&m| m != 0).collect();
        Self {
            free_rank: moduli.len() - finite.len(),
            torsion: FinAbGroup::new(finite).expect("canonical moduli"),
        }
    }

    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: FinAbGroup::trivial() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_trivial()
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if !self.torsion.is_trivial() {
            parts.push(self.torsion.to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
