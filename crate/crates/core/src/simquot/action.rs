use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{SimplicialComplex, SimquotError};

/// Hard cap on the order of an enumerated permutation group.
pub const MAX_GROUP_ORDER: usize = 1000;

/// A permutation of vertex indices.
pub type Perm = Vec<usize>;

pub(crate) fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub(crate) fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Every product of the generators, by breadth-first search from the identity.
pub fn close_group(n: usize, generators: &[Perm]) -> Result<Vec<Perm>, SimquotError> {
    let id = identity(n);
    let mut seen: HashMap<Perm, usize> = HashMap::from([(id.clone(), 0)]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = compose(g, &p);
            if !seen.contains_key(&q) {
                if out.len() >= MAX_GROUP_ORDER {
                    return Err(SimquotError::GroupTooLarge(MAX_GROUP_ORDER));
                }
                seen.insert(q.clone(), out.len());
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(out)
}

/// A finite group acting simplicially, given by generating permutations of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAction {
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

/// JSON form: `{"generators": [[images]]}`, images of the vertex ids in the
/// order of the complex's sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub generators: Vec<Vec<u32>>,
}

impl SimplicialAction {
    pub fn new(complex: &SimplicialComplex, generators: Vec<Perm>) -> Result<Self, SimquotError> {
        let n = complex.num_vertices();
        for (gi, g) in generators.iter().enumerate() {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != n || distinct.len() != n || g.iter().any(|&x| x >= n) {
                return Err(SimquotError::NotAPermutation(gi));
            }
            for d in 1..3 {
                for s in complex.simplices(d) {
                    let mut img: Vec<usize> = s.iter().map(|&v| g[v]).collect();
                    img.sort_unstable();
                    if complex.simplex_index(&img).is_none() {
                        let ids = s.iter().map(|&v| complex.vertices()[v]).collect();
                        return Err(SimquotError::NotSimplicial { generator: gi, simplex: ids });
                    }
                }
            }
        }
        let elements = close_group(n, &generators)?;
        Ok(Self { generators, elements })
    }

    pub fn trivial(complex: &SimplicialComplex) -> Self {
        Self::new(complex, Vec::new()).expect("trivial action")
    }

    pub fn from_record(complex: &SimplicialComplex, record: &ActionRecord) -> Result<Self, SimquotError> {
        let gens = record
            .generators
            .iter()
            .map(|imgs| {
                imgs.iter()
                    .map(|&id| complex.vertex_index(id).ok_or(SimquotError::UnknownVertex(id)))
                    .collect::<Result<Perm, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(complex, gens)
    }

    pub fn to_record(&self, complex: &SimplicialComplex) -> ActionRecord {
        let ids = complex.vertices();
        ActionRecord { generators: self.generators.iter().map(|g| g.iter().map(|&i| ids[i]).collect()).collect() }
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All group elements, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn vertex_orbit(&self, v: usize) -> BTreeSet<usize> {
        self.elements.iter().map(|g| g[v]).collect()
    }

    pub fn stabilizer(&self, v: usize) -> Vec<&Perm> {
        self.elements.iter().filter(|g| g[v] == v).collect()
    }

    /// The induced action on the barycentric subdivision.
    pub fn subdivide(
        &self,
        complex: &SimplicialComplex,
        sd: &SimplicialComplex,
        labels: &[(usize, usize)],
    ) -> SimplicialAction {
        let index: HashMap<(usize, usize), usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        let lift = |g: &Perm| -> Perm {
            labels
                .iter()
                .map(|&(d, i)| {
                    let mut img: Vec<usize> = complex.simplices(d)[i].iter().map(|&v| g[v]).collect();
                    img.sort_unstable();
                    index[&(d, complex.simplex_index(&img).expect("simplicial"))]
                })
                .collect()
        };
        let generators = self.generators.iter().map(lift).collect();
        SimplicialAction::new(sd, generators).expect("induced action is simplicial")
    }

    /// Sorted image of a simplex and the orientation sign of the permutation.
    pub(crate) fn image(&self, g: &Perm, s: &[usize]) -> (Vec<usize>, i64) {
        map_simplex(s, |v| g[v])
    }
}

/// Applies a vertex map and sorts, returning the sign of the sorting permutation.
pub(crate) fn map_simplex(s: &[usize], f: impl Fn(usize) -> usize) -> (Vec<usize>, i64) {
    let mut img: Vec<usize> = s.iter().map(|&v| f(v)).collect();
    let mut sign = 1;
    for i in 0..img.len() {
        for j in 0..img.len() - 1 - i {
            if img[j] > img[j + 1] {
                img.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (img, sign)
}

/// Why an action fails to give a simplicial quotient with simplices = orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Irregularity {
    /// Two vertices of one simplex lie in a common orbit.
    VerticesIdentified { simplex: Vec<u32> },
    /// Two simplices with the same vertex orbits lie in different simplex orbits.
    SimplicesIdentified { first: Vec<u32>, second: Vec<u32> },
}

pub fn regularity(complex: &SimplicialComplex, action: &SimplicialAction) -> Option<Irregularity> {
    let n = complex.num_vertices();
    let orbit_of: Vec<usize> = (0..n).map(|v| *action.vertex_orbit(v).first().expect("orbit")).collect();
    let ids = |s: &[usize]| -> Vec<u32> { s.iter().map(|&v| complex.vertices()[v]).collect() };
    for d in 1..3 {
        let mut by_orbits: HashMap<Vec<usize>, &Vec<usize>> = HashMap::new();
        for s in complex.simplices(d) {
            let mut key: Vec<usize> = s.iter().map(|&v| orbit_of[v]).collect();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Some(Irregularity::VerticesIdentified { simplex: ids(s) });
            }
            match by_orbits.get(&key) {
                None => {
                    by_orbits.insert(key, s);
                }
                Some(&first) => {
                    let same_orbit = action.elements().iter().any(|g| action.image(g, first).0 == *s);
                    if !same_orbit {
                        return Some(Irregularity::SimplicesIdentified { first: ids(first), second: ids(s) });
                    }
                }
            }
        }
    }
    None
}

/// Quotient complex with simplices = orbits, and the simplicial quotient map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub quotient: SimplicialComplex,
    /// The complex actually divided out (the input or a subdivision of it).
    pub source: SimplicialComplex,
    #[serde(skip)]
    pub action: SimplicialAction,
    /// Source vertex index to quotient vertex index.
    pub vertex_map: Vec<usize>,
    pub subdivisions: usize,
    /// Simplices of positive dimension fixed pointwise by a non-identity element.
    pub pointwise_fixed_simplices: Vec<Vec<u32>>,
}

/// Subdivides up to twice until the action is regular, then divides out.
pub fn quotient_complex(
    complex: &SimplicialComplex,
    action: &SimplicialAction,
) -> Result<QuotientComplex, SimquotError> {
    let mut source = complex.clone();
    let mut act = action.clone();
    let mut subdivisions = 0;
    while let Some(irr) = regularity(&source, &act) {
        if subdivisions == 2 {
            return Err(SimquotError::Irregular(irr));
        }
        let (sd, labels) = source.barycentric_subdivision();
        act = act.subdivide(&source, &sd, &labels);
        source = sd;
        subdivisions += 1;
    }
    let n = source.num_vertices();
    let reps: Vec<usize> = (0..n).map(|v| *act.vertex_orbit(v).first().expect("orbit")).collect();
    let distinct: Vec<usize> = reps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let new_index: HashMap<usize, usize> = distinct.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let vertex_map: Vec<usize> = reps.iter().map(|r| new_index[r]).collect();
    let mut sets: [BTreeSet<Vec<usize>>; 3] = Default::default();
    for d in 0..3 {
        for s in source.simplices(d) {
            sets[d].insert(map_simplex(s, |v| vertex_map[v]).0);
        }
    }
    let ids: Vec<u32> = distinct.iter().map(|&r| source.vertices()[r]).collect();
    let quotient = SimplicialComplex::from_index_sets(ids, sets);
    let pointwise_fixed_simplices = (1..3)
        .flat_map(|d| source.simplices(d).iter())
        .filter(|s| act.elements().iter().skip(1).any(|g| s.iter().all(|&v| g[v] == v)))
        .map(|s| s.iter().map(|&v| source.vertices()[v]).collect())
        .collect();
    Ok(QuotientComplex { quotient, source, action: act, vertex_map, subdivisions, pointwise_fixed_simplices })
}
