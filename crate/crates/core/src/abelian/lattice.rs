//! Finitely generated abelian groups presented as `Z^n / diag(moduli)`,
//! where a modulus of `0` marks a free coordinate.
//!
//! Everything here reduces to Smith normal form: quotients are cokernels of
//! block relation matrices, kernels are projections of integer kernels.

use crate::matrix::Matrix;
use crate::snf::{integer_kernel, narrow, narrow_mod, smith_normal_form};

/// A group in canonical form together with maps to and from an ambient presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presented {
    /// Canonical moduli: finite factors `> 1` in divisibility order, then zeros.
    pub moduli: Vec<i64>,
    /// Ambient coordinates to canonical coordinates (rows = canonical coords).
    pub forward: Matrix<i64>,
    /// Canonical coordinates back to ambient representatives (columns = canonical coords).
    pub backward: Matrix<i64>,
}

pub fn reduce(v: &mut [i64], moduli: &[i64]) {
    for (x, &m) in v.iter_mut().zip(moduli) {
        if m != 0 {
            *x = x.rem_euclid(m);
        }
    }
}

fn diag_relations(moduli: &[i64]) -> Matrix<i64> {
    let cols: Vec<Vec<i64>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(i, &m)| {
            let mut c = vec![0; moduli.len()];
            c[i] = m;
            c
        })
        .collect();
    Matrix::from_columns(&cols, moduli.len())
}

/// The quotient of `Z^n / diag(moduli)` by the subgroup generated by the columns of `gens`.
///
/// `forward` is the projection, `backward` picks a representative for each
/// canonical generator.
pub fn quotient(moduli: &[i64], gens: &Matrix<i64>) -> Presented {
    let n = moduli.len();
    assert_eq!(gens.nrows(), n, "generator dimension mismatch");
    let relations = gens.hconcat(&diag_relations(moduli));
    let snf = smith_normal_form(&relations);
    let diag = snf.diagonal();

    let mut keep = Vec::new();
    let mut out_moduli = Vec::new();
    for i in 0..n {
        let m = if i < snf.rank { narrow(&diag[i]) } else { 0 };
        if m != 1 {
            keep.push(i);
            out_moduli.push(m);
        }
    }
    let forward = Matrix::from_fn(keep.len(), n, |r, c| narrow_mod(&snf.u[(keep[r], c)], out_moduli[r]));
    let backward = Matrix::from_fn(n, keep.len(), |r, c| narrow_mod(&snf.u_inv[(r, keep[c])], moduli[r]));
    Presented { moduli: out_moduli, forward, backward }
}

/// Applies a presentation map and reduces into the target moduli.
pub fn apply(map: &Matrix<i64>, x: &[i64], target_moduli: &[i64]) -> Vec<i64> {
    let wide: Vec<i128> = (0..map.nrows())
        .map(|i| map.row(i).iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum())
        .collect();
    wide.iter()
        .zip(target_moduli)
        .map(|(&v, &m)| if m != 0 { v.rem_euclid(m as i128) as i64 } else { v as i64 })
        .collect()
}

/// The subgroup of `Z^n / diag(moduli)` generated by the columns of `gens`,
/// in canonical form. `forward` is left empty (there is no projection);
/// `backward` is the inclusion.
pub fn subgroup(moduli: &[i64], gens: &Matrix<i64>) -> Presented {
    let n = moduli.len();
    let r = gens.ncols();
    // relation lattice {c : gens·c ∈ diag(moduli) Z^n}
    let neg_diag = diag_relations(moduli).map(|x| -x);
    let kernel = integer_kernel(&gens.hconcat(&neg_diag));
    let rel = kernel.select_rows(0..r);
    let q = quotient(&vec![0; r], &rel);
    let inclusion = gens.mul(&q.backward);
    let mut inclusion = inclusion;
    for i in 0..n {
        for j in 0..inclusion.ncols() {
            if moduli[i] != 0 {
                inclusion[(i, j)] = inclusion[(i, j)].rem_euclid(moduli[i]);
            }
        }
    }
    Presented { moduli: q.moduli, forward: Matrix::zeros(0, n), backward: inclusion }
}

/// Kernel of the homomorphism `Z^m/diag(src) → Z^n/diag(tgt)` given by `map`.
pub fn kernel(src: &[i64], tgt: &[i64], map: &Matrix<i64>) -> Presented {
    assert_eq!(map.ncols(), src.len());
    assert_eq!(map.nrows(), tgt.len());
    let neg_diag = diag_relations(tgt).map(|x| -x);
    let k = integer_kernel(&map.hconcat(&neg_diag));
    let gens = k.select_rows(0..src.len());
    subgroup(src, &gens)
}

/// Order of a canonical moduli list; `None` when there is a free part.
pub fn order(moduli: &[i64]) -> Option<u128> {
    moduli.iter().try_fold(1u128, |acc, &m| if m == 0 { None } else { Some(acc * m as u128) })
}

/// Whether every generator of `sub` (columns, ambient coordinates) lies in the
/// subgroup generated by the columns of `sup`.
pub fn contained_in(moduli: &[i64], sub: &Matrix<i64>, sup: &Matrix<i64>) -> bool {
    let q = quotient(moduli, sup);
    (0..sub.ncols()).all(|j| apply(&q.forward, &sub.column(j), &q.moduli).iter().all(|&x| x == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_free_by_multiples() {
        let gens = Matrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let q = quotient(&[0, 0], &gens);
        assert_eq!(q.moduli, vec![2, 2]);
    }

    #[test]
    fn quotient_merges_coprime_factors() {
        let q = quotient(&[2, 3], &Matrix::zeros(2, 0));
        assert_eq!(q.moduli, vec![6]);
        // projection is injective on the 6 elements
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..2 {
            for b in 0..3 {
                seen.insert(apply(&q.forward, &[a, b], &q.moduli));
            }
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn kernel_of_doubling_on_c6() {
        let k = kernel(&[6], &[6], &Matrix::from_rows(vec![vec![2]]));
        assert_eq!(k.moduli, vec![2]);
        assert_eq!(k.backward[(0, 0)], 3);
    }

    #[test]
    fn subgroup_with_free_part() {
        let s = subgroup(&[0, 4], &Matrix::from_rows(vec![vec![0, 3], vec![2, 0]]));
        assert_eq!(s.moduli, vec![2, 0]);
    }
}
