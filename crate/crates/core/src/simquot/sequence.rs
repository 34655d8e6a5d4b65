use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::action::{close_group, compose, map_simplex, Perm};
use super::{quotient_complex, AbGroup, HomologySummary, SimplicialAction, SimplicialComplex, SimquotError};
use crate::abelian::lattice::{self, Presented};
use crate::matrix::Matrix;

/// `(G/K)^{ab}` for a permutation group `G` and normal subgroup `K`, with
/// the projection of each element.
struct AbelianizedQuotient {
    presented: Presented,
    /// Exponent vector (in the generators) of a coset representative word.
    word_of: HashMap<Perm, Vec<i64>>,
    coset_order: usize,
}

impl AbelianizedQuotient {
    fn new(elements: &[Perm], generators: &[Perm], k: &[Perm]) -> Self {
        let r = generators.len();
        let coset_key = |g: &Perm| -> Perm { k.iter().map(|h| compose(g, h)).min().expect("K contains 1") };
        let id = elements[0].clone();
        let mut word_of_coset: HashMap<Perm, Vec<i64>> = HashMap::from([(coset_key(&id), vec![0; r])]);
        let mut order = vec![coset_key(&id)];
        let mut queue = VecDeque::from([id]);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        while let Some(p) = queue.pop_front() {
            for (i, g) in generators.iter().enumerate() {
                let q = compose(g, &p);
                let key = coset_key(&q);
                let mut w = word_of_coset[&coset_key(&p)].clone();
                w[i] += 1;
                if let Some(existing) = word_of_coset.get(&key) {
                    relations.push(w.iter().zip(existing).map(|(a, b)| a - b).collect());
                } else {
                    word_of_coset.insert(key.clone(), w);
                    order.push(key);
                    queue.push_back(q);
                }
            }
        }
        let rel = Matrix::from_columns(&relations, r);
        let presented = lattice::quotient(&vec![0; r], &rel);
        let word_of = elements.iter().map(|g| (g.clone(), word_of_coset[&coset_key(g)].clone())).collect();
        Self { presented, word_of, coset_order: order.len() }
    }

    fn project(&self, g: &Perm) -> Vec<i64> {
        lattice::apply(&self.presented.forward, &self.word_of[g], &self.presented.moduli)
    }
}

/// Matrix of an induced map between two `H₁`s, in canonical coordinates;
/// column `j` is the image of generator `j`.
fn induced_map(
    source: &HomologySummary,
    target: &HomologySummary,
    chain_map: impl Fn(&[i64]) -> Vec<i64>,
) -> Matrix<i64> {
    let cols: Vec<Vec<i64>> = source
        .generators
        .iter()
        .map(|c| target.coordinates(&chain_map(c)).expect("chain maps send cycles to cycles"))
        .collect();
    Matrix::from_columns(&cols, target.moduli().len())
}

fn edge_chain_map(src: &SimplicialComplex, tgt: &SimplicialComplex, f: impl Fn(usize) -> usize) -> impl Fn(&[i64]) -> Vec<i64> {
    let images: Vec<Option<(usize, i64)>> = src
        .simplices(1)
        .iter()
        .map(|e| {
            let (img, sign) = map_simplex(e, &f);
            if img[0] == img[1] {
                None
            } else {
                Some((tgt.simplex_index(&img).expect("simplicial map"), sign))
            }
        })
        .collect();
    let m = tgt.simplices(1).len();
    move |chain: &[i64]| {
        let mut out = vec![0; m];
        for (c, im) in chain.iter().zip(&images) {
            if let Some((j, s)) = im {
                out[*j] += s * c;
            }
        }
        out
    }
}

fn is_trivial_presented(moduli: &[i64]) -> bool {
    moduli.is_empty()
}

fn columns_generate(moduli: &[i64], gens: &Matrix<i64>) -> bool {
    is_trivial_presented(&lattice::quotient(moduli, gens).moduli)
}

/// The three terms of `H₁(X)_G → H₁(X/G) → (G/K(X))^{ab} → 0` and the maps between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub group_order: usize,
    pub subdivisions: usize,
    pub h1: AbGroup,
    pub coinvariants: AbGroup,
    pub h1_quotient: AbGroup,
    /// Order of the subgroup generated by vertex stabilizers.
    pub stabilizer_subgroup_order: usize,
    pub stabilizers_generate: bool,
    pub g_mod_k_ab: AbGroup,
    /// `H₁(X)_G → H₁(X/G)` is onto.
    pub coinvariant_map_surjective: bool,
    pub kernel: AbGroup,
    pub cokernel: AbGroup,
    pub right_map_surjective: bool,
    /// Image of the left map equals the kernel of the right map.
    pub exact_at_middle: bool,
    /// `H₁(X) → H₁(X)_G → H₁(X/G)` agrees with the map induced by the quotient map.
    pub functorial: bool,
    /// Cokernel of the left map is isomorphic to `(G/K)^{ab}`.
    pub cokernel_matches: bool,
    pub exact: bool,
    pub pointwise_fixed_simplices: usize,
}

fn analyze(complex: &SimplicialComplex, action: &SimplicialAction) -> Result<ExactSequenceReport, SimquotError> {
    let q = quotient_complex(complex, action)?;
    let x = &q.source;
    let act = &q.action;
    let y = &q.quotient;
    let hx = x.h1();
    let hy = y.h1();
    let nx = hx.moduli().len();
    let mx = hx.moduli().to_vec();
    let my = hy.moduli().to_vec();

    // Coinvariants: H / ⟨(g − 1)h⟩ over generators g.
    let mut rel_cols: Vec<Vec<i64>> = Vec::new();
    for g in act.generators() {
        let m = induced_map(&hx, &hx, edge_chain_map(x, x, |v| g[v]));
        for j in 0..nx {
            let mut c = m.column(j);
            c[j] -= 1;
            rel_cols.push(c);
        }
    }
    let hg = lattice::quotient(&mx, &Matrix::from_columns(&rel_cols, nx));

    // Quotient map on H₁ and its factorization through H_G.
    let pi = induced_map(&hx, &hy, edge_chain_map(x, y, |v| q.vertex_map[v]));
    let left = pi.mul(&hg.backward);
    let functorial = (0..nx).all(|j| {
        let e: Vec<i64> = (0..nx).map(|i| i64::from(i == j)).collect();
        let via = lattice::apply(&left, &lattice::apply(&hg.forward, &e, &hg.moduli), &my);
        via == lattice::apply(&pi, &e, &my)
    });
    let coinvariant_map_surjective = columns_generate(&my, &left);
    let kernel = lattice::kernel(&hg.moduli, &my, &left);
    let coker = lattice::quotient(&my, &left);

    // K(X): generated by vertex stabilizers.
    let n = x.num_vertices();
    let stab_gens: Vec<Perm> =
        (0..n).flat_map(|v| act.stabilizer(v).into_iter().cloned()).filter(|g| g.iter().enumerate().any(|(i, &j)| i != j)).collect();
    let kx = close_group(n, &stab_gens)?;
    let stabilizers_generate = kx.len() == act.order();
    let abq = AbelianizedQuotient::new(act.elements(), act.generators(), &kx);
    debug_assert_eq!(abq.coset_order * kx.len(), act.order());

    // Right map: lift each quotient edge from the orbit representative of its tail.
    let rep: Vec<usize> = {
        let mut r = vec![usize::MAX; y.num_vertices()];
        for v in 0..n {
            if r[q.vertex_map[v]] == usize::MAX {
                r[q.vertex_map[v]] = v;
            }
        }
        r
    };
    let qm = abq.presented.moduli.clone();
    let edge_labels: Vec<Vec<i64>> = y
        .simplices(1)
        .iter()
        .map(|e| {
            let (a, b) = (rep[e[0]], rep[e[1]]);
            let h = act
                .elements()
                .iter()
                .find(|h| {
                    let mut edge = vec![a, h[b]];
                    edge.sort_unstable();
                    x.simplex_index(&edge).is_some()
                })
                .expect("every quotient edge lifts");
            abq.project(h)
        })
        .collect();
    let right_cols: Vec<Vec<i64>> = hy
        .generators
        .iter()
        .map(|c| {
            let mut acc = vec![0i64; qm.len()];
            for (coef, label) in c.iter().zip(&edge_labels) {
                for (a, l) in acc.iter_mut().zip(label) {
                    *a += coef * l;
                }
            }
            lattice::reduce(&mut acc, &qm);
            acc
        })
        .collect();
    let right = Matrix::from_columns(&right_cols, qm.len());
    let right_map_surjective = columns_generate(&qm, &right);
    let right_kernel = lattice::kernel(&my, &qm, &right);
    let composite_zero = (0..left.ncols())
        .all(|j| lattice::apply(&right, &left.column(j), &qm).iter().all(|&v| v == 0));
    let exact_at_middle = composite_zero && lattice::contained_in(&my, &right_kernel.backward, &left);
    let cokernel = AbGroup::from_moduli(&coker.moduli);
    let g_mod_k_ab = AbGroup::from_moduli(&qm);
    let cokernel_matches = cokernel == g_mod_k_ab;
    Ok(ExactSequenceReport {
        group_order: act.order(),
        subdivisions: q.subdivisions,
        h1: hx.group.clone(),
        coinvariants: AbGroup::from_moduli(&hg.moduli),
        h1_quotient: hy.group.clone(),
        stabilizer_subgroup_order: kx.len(),
        stabilizers_generate,
        g_mod_k_ab,
        coinvariant_map_surjective,
        kernel: AbGroup::from_moduli(&kernel.moduli),
        cokernel,
        right_map_surjective,
        exact_at_middle,
        functorial,
        cokernel_matches,
        exact: right_map_surjective && exact_at_middle && functorial,
        pointwise_fixed_simplices: q.pointwise_fixed_simplices.len(),
    })
}

/// Verifies exactness of `H₁(X)_G → H₁(X/G) → (G/K(X))^{ab} → 0`.
pub fn exact_sequence_ii_check(
    complex: &SimplicialComplex,
    action: &SimplicialAction,
) -> Result<ExactSequenceReport, SimquotError> {
    analyze(complex, action)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SurjectionVerdict {
    Surjective,
    NotSurjective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvariantReport {
    /// Vertex stabilizers generate the whole group.
    pub hypothesis_holds: bool,
    pub verdict: SurjectionVerdict,
    pub coinvariants: AbGroup,
    pub h1_quotient: AbGroup,
    pub kernel: AbGroup,
    pub cokernel: AbGroup,
    /// Full sequence data; the relevant statement when the hypothesis fails.
    pub sequence: ExactSequenceReport,
}

/// Checks that `H₁(X)_G → H₁(X/G)` is onto, reporting whether stabilizers generate `G`.
pub fn coinvariant_surjection_check(
    complex: &SimplicialComplex,
    action: &SimplicialAction,
) -> Result<CoinvariantReport, SimquotError> {
    let s = analyze(complex, action)?;
    Ok(CoinvariantReport {
        hypothesis_holds: s.stabilizers_generate,
        verdict: if s.coinvariant_map_surjective {
            SurjectionVerdict::Surjective
        } else {
            SurjectionVerdict::NotSurjective
        },
        coinvariants: s.coinvariants.clone(),
        h1_quotient: s.h1_quotient.clone(),
        kernel: s.kernel.clone(),
        cokernel: s.cokernel.clone(),
        sequence: s,
    })
}
