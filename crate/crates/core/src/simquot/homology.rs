use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{AbGroup, SimplicialComplex};
use crate::abelian::lattice::{self, Presented};
use crate::matrix::Matrix;

/// Spanning forest of the 1-skeleton, used to read off cycle coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Forest {
    /// Vertices in BFS order, roots first within each component.
    order: Vec<usize>,
    /// Parent vertex and the edge index joining to it.
    parent: Vec<Option<(usize, usize)>>,
    /// Position of each non-tree edge among the cycle coordinates.
    cotree: Vec<Option<usize>>,
}

impl Forest {
    fn new(k: &SimplicialComplex) -> Self {
        let n = k.num_vertices();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in k.simplices(1).iter().enumerate() {
            adj[e[0]].push((e[1], i));
            adj[e[1]].push((e[0], i));
        }
        let mut seen = vec![false; n];
        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut tree = vec![false; k.simplices(1).len()];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &(w, ei) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, ei));
                        tree[ei] = true;
                        order.push(w);
                    }
                }
            }
        }
        let mut next = 0;
        let cotree = tree
            .iter()
            .map(|&t| {
                (!t).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Self { order, parent, cotree }
    }

    fn rank(&self) -> usize {
        self.cotree.iter().flatten().count()
    }

    /// The unique 1-cycle with the given values on non-tree edges.
    fn cycle(&self, k: &SimplicialComplex, values: &[i64]) -> Vec<i64> {
        let edges = k.simplices(1);
        let mut chain = vec![0i64; edges.len()];
        let mut excess = vec![0i64; k.num_vertices()];
        for (i, pos) in self.cotree.iter().enumerate() {
            if let Some(p) = pos {
                chain[i] = values[*p];
                excess[edges[i][1]] += values[*p];
                excess[edges[i][0]] -= values[*p];
            }
        }
        for &v in self.order.iter().rev() {
            if let Some((p, ei)) = self.parent[v] {
                // The tree edge must cancel the excess at `v`.
                let x = excess[v];
                let sign = if edges[ei][1] == v { -1 } else { 1 };
                chain[ei] = sign * x;
                excess[v] = 0;
                excess[p] += x;
            }
        }
        chain
    }
}

/// One unit-pivot elimination: generator `row` was solved from `relation`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Elimination {
    row: usize,
    relation: BTreeMap<usize, i64>,
}

/// `H₁` with explicit generating cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub group: AbGroup,
    /// One edge chain per canonical generator.
    pub generators: Vec<Vec<i64>>,
    #[serde(skip)]
    forest: Forest,
    #[serde(skip)]
    eliminations: Vec<Elimination>,
    #[serde(skip)]
    remaining: Vec<usize>,
    #[serde(skip)]
    presented: Presented,
    #[serde(skip)]
    boundary: Matrix<i64>,
}

impl HomologySummary {
    pub(crate) fn compute(k: &SimplicialComplex) -> Self {
        let forest = Forest::new(k);
        let m = forest.rank();
        // Triangle boundaries in cycle coordinates.
        let mut cols: Vec<BTreeMap<usize, i64>> = k
            .simplices(2)
            .iter()
            .map(|t| {
                let mut c = BTreeMap::new();
                for skip in 0..3 {
                    let e: Vec<usize> = (0..3).filter(|&i| i != skip).map(|i| t[i]).collect();
                    let ei = k.simplex_index(&e).expect("face-closed");
                    if let Some(p) = forest.cotree[ei] {
                        *c.entry(p).or_insert(0) += if skip % 2 == 0 { 1 } else { -1 };
                    }
                }
                c.retain(|_, v| *v != 0);
                c
            })
            .collect();
        let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
        for (j, c) in cols.iter().enumerate() {
            for &r in c.keys() {
                rows[r].insert(j);
            }
        }
        let mut alive = vec![true; cols.len()];
        let mut eliminated = vec![false; m];
        let mut eliminations = Vec::new();
        for j in 0..cols.len() {
            let Some((&row, &unit)) = cols[j].iter().find(|(_, v)| v.abs() == 1) else { continue };
            let pivot = std::mem::take(&mut cols[j]);
            alive[j] = false;
            for &r in pivot.keys() {
                rows[r].remove(&j);
            }
            let others: Vec<usize> = rows[row].iter().copied().collect();
            for o in others {
                let f = cols[o][&row] * unit;
                for (&r, &v) in &pivot {
                    let e = cols[o].entry(r).or_insert(0);
                    *e -= f * v;
                    if *e == 0 {
                        cols[o].remove(&r);
                        rows[r].remove(&o);
                    } else {
                        rows[r].insert(o);
                    }
                }
            }
            eliminated[row] = true;
            eliminations.push(Elimination { row, relation: pivot });
        }
        let remaining: Vec<usize> = (0..m).filter(|&r| !eliminated[r]).collect();
        let pos: BTreeMap<usize, usize> = remaining.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let dense: Vec<Vec<i64>> = cols
            .iter()
            .zip(&alive)
            .filter(|(c, &a)| a && !c.is_empty())
            .map(|(c, _)| {
                let mut v = vec![0; remaining.len()];
                for (r, x) in c {
                    v[pos[r]] = *x;
                }
                v
            })
            .collect();
        let presented = lattice::quotient(&vec![0; remaining.len()], &Matrix::from_columns(&dense, remaining.len()));
        let generators = (0..presented.moduli.len())
            .map(|c| {
                let mut values = vec![0; m];
                for (i, &r) in remaining.iter().enumerate() {
                    values[r] = presented.backward[(i, c)];
                }
                forest.cycle(k, &values)
            })
            .collect();
        Self {
            group: AbGroup::from_moduli(&presented.moduli),
            generators,
            forest,
            eliminations,
            remaining,
            presented,
            boundary: k.boundary(1),
        }
    }

    /// Canonical moduli of `H₁`.
    pub fn moduli(&self) -> &[i64] {
        &self.presented.moduli
    }

    /// Coordinates of a 1-cycle in the canonical generators; `None` if the chain is not a cycle.
    pub fn coordinates(&self, chain: &[i64]) -> Option<Vec<i64>> {
        if chain.len() != self.forest.cotree.len() || self.boundary.mul_vec(chain).iter().any(|&x| x != 0) {
            return None;
        }
        let mut v = vec![0i64; self.forest.rank()];
        for (c, pos) in chain.iter().zip(&self.forest.cotree) {
            if let Some(p) = pos {
                v[*p] = *c;
            }
        }
        for el in &self.eliminations {
            let val = std::mem::take(&mut v[el.row]);
            if val != 0 {
                let unit = el.relation[&el.row];
                for (&r, &x) in &el.relation {
                    if r != el.row {
                        v[r] -= val * unit * x;
                    }
                }
            }
        }
        let reduced: Vec<i64> = self.remaining.iter().map(|&r| v[r]).collect();
        Some(lattice::apply(&self.presented.forward, &reduced, &self.presented.moduli))
    }
}
