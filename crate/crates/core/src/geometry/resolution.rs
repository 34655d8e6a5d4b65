use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{rat_serde, GeometryError};
use crate::matrix::Matrix;
use crate::snf::determinant;

/// The exceptional chain of a `1/n(1,q)` singularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionGraph {
    pub n: i64,
    pub q: i64,
    pub hj: Vec<i64>,
    pub self_intersections: Vec<i64>,
    pub intersection_matrix: Matrix<i64>,
    #[serde(serialize_with = "rat_serde::vec")]
    pub discrepancies: Vec<Rational64>,
}

impl ResolutionGraph {
    pub fn len(&self) -> usize {
        self.hj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hj.is_empty()
    }

    pub fn is_du_val(&self) -> bool {
        self.hj.iter().all(|&b| b == 2)
    }

    /// `b₁ − 1/(b₂ − 1/(…))`.
    pub fn continued_fraction_value(&self) -> Rational64 {
        let mut it = self.hj.iter().rev();
        let mut x = Rational64::from_integer(*it.next().expect("non-empty chain"));
        for &b in it {
            x = Rational64::from_integer(b) - x.recip();
        }
        x
    }

    /// Signs of the leading principal minors alternate, starting negative.
    pub fn is_negative_definite(&self) -> bool {
        (1..=self.len()).all(|k| {
            let minor = self.intersection_matrix.select_rows(0..k).select_columns(&(0..k).collect::<Vec<_>>());
            let d = determinant(&minor);
            if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
    }

    /// `K·E_j` for each exceptional curve, i.e. `b_j − 2`.
    pub fn canonical_degrees(&self) -> Vec<i64> {
        self.hj.iter().map(|b| b - 2).collect()
    }

    /// Contribution `a·(b − 2)` of one such point to `K²` of the resolution.
    pub fn k_squared_correction(&self) -> Rational64 {
        self.discrepancies.iter().zip(self.canonical_degrees()).map(|(a, k)| a * k).sum()
    }
}

fn rational_matrix(m: &Matrix<i64>) -> Vec<Vec<Rational64>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Rational64::from_integer).collect()).collect()
}

/// Solves `A x = b` exactly; `None` when `A` is singular.
pub(crate) fn solve_rational(a: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c];
        for x in m[c].iter_mut() {
            *x /= pivot;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in c..=n {
                    let sub = f * m[c][k];
                    m[r][k] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

/// Hirzebruch–Jung resolution of `1/n(1,q)` with exact discrepancies.
pub fn hirzebruch_jung(n: i64, q: i64) -> Result<ResolutionGraph, GeometryError> {
    if !(0 < q && q < n) || n.gcd(&q) != 1 {
        return Err(GeometryError::InvalidSingularity { n, q });
    }
    let mut hj = Vec::new();
    let (mut a, mut b) = (n, q);
    while b != 0 {
        let c = Integer::div_ceil(&a, &b);
        hj.push(c);
        (a, b) = (b, c * b - a);
    }
    let k = hj.len();
    let intersection_matrix = Matrix::from_fn(k, k, |i, j| {
        if i == j {
            -hj[i]
        } else if i.abs_diff(j) == 1 {
            1
        } else {
            0
        }
    });
    let rhs: Vec<Rational64> = hj.iter().map(|b| Rational64::from_integer(b - 2)).collect();
    let discrepancies =
        solve_rational(&rational_matrix(&intersection_matrix), &rhs).expect("HJ intersection matrix is nonsingular");
    Ok(ResolutionGraph {
        n,
        q,
        self_intersections: hj.iter().map(|b| -b).collect(),
        hj,
        intersection_matrix,
        discrepancies,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackResult {
    /// Coefficients `c` with `τ*D̄ = D' + Σ c_i E_i`, one vector per point.
    #[serde(serialize_with = "rat_serde::nested")]
    pub coefficients: Vec<Vec<Rational64>>,
    /// `c · (D'·E)` for each point.
    #[serde(serialize_with = "rat_serde::vec")]
    pub corrections: Vec<Rational64>,
    #[serde(serialize_with = "rat_serde::one")]
    pub down_square: Rational64,
    #[serde(serialize_with = "rat_serde::one")]
    pub proper_transform_square: Rational64,
    /// `(τ*D̄)·E_ij = 0` re-checked for every exceptional curve.
    pub pullback_orthogonal: bool,
    /// Whether every point matches the pattern with a published cross-check
    /// (an `A₂` chain met once, on one end).
    pub validated: bool,
}

/// Coefficients of the pullback of a curve through cyclic quotient points
/// and the self-intersection of its proper transform.
pub fn pullback_proper_transform(
    graphs: &[ResolutionGraph],
    incidence: &[Vec<i64>],
    down_square: Rational64,
) -> Result<PullbackResult, GeometryError> {
    if graphs.len() != incidence.len() {
        return Err(GeometryError::PointCount { graphs: graphs.len(), incidences: incidence.len() });
    }
    let mut coefficients = Vec::new();
    let mut corrections = Vec::new();
    let mut orthogonal = true;
    let mut validated = true;
    for (point, (g, inc)) in graphs.iter().zip(incidence).enumerate() {
        if inc.len() != g.len() {
            return Err(GeometryError::IncidenceLength { point, expected: g.len(), got: inc.len() });
        }
        if inc.iter().any(|&x| x < 0) {
            return Err(GeometryError::NegativeIncidence);
        }
        let m = rational_matrix(&g.intersection_matrix);
        let rhs: Vec<Rational64> = inc.iter().map(|&x| Rational64::from_integer(-x)).collect();
        let c = solve_rational(&m, &rhs).expect("HJ intersection matrix is nonsingular");
        for (j, row) in m.iter().enumerate() {
            let dot: Rational64 = row.iter().zip(&c).map(|(a, b)| a * b).sum();
            orthogonal &= (dot + Rational64::from_integer(inc[j])).is_zero();
        }
        corrections.push(c.iter().zip(inc).map(|(ci, &x)| ci * x).sum());
        validated &= g.hj == [2, 2] && (inc == &[1, 0] || inc == &[0, 1]);
        coefficients.push(c);
    }
    let proper_transform_square = down_square - corrections.iter().sum::<Rational64>();
    Ok(PullbackResult {
        coefficients,
        corrections,
        down_square,
        proper_transform_square,
        pullback_orthogonal: orthogonal,
        validated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfCoefficientRefutation {
    #[serde(serialize_with = "rat_serde::vec")]
    pub claimed: Vec<Rational64>,
    /// `D'·E + M c` for the claimed coefficients; nonzero means the claim fails.
    #[serde(serialize_with = "rat_serde::vec")]
    pub claimed_residual: Vec<Rational64>,
    #[serde(serialize_with = "rat_serde::vec")]
    pub correct: Vec<Rational64>,
    pub any_half_integer: bool,
    pub refuted: bool,
}

/// Checks the variant `τ*C − E₁/2` on an `A₂` chain met once at one end
/// against the defining orthogonality, and confirms the exact coefficients
/// involve thirds only.
pub fn half_coefficient_refutation() -> HalfCoefficientRefutation {
    let g = hirzebruch_jung(3, 2).expect("valid");
    let m = rational_matrix(&g.intersection_matrix);
    let inc = [1i64, 0];
    let claimed = vec![Rational64::new(1, 2), Rational64::zero()];
    let claimed_residual: Vec<Rational64> = m
        .iter()
        .zip(inc)
        .map(|(row, x)| row.iter().zip(&claimed).map(|(a, b)| a * b).sum::<Rational64>() + Rational64::from_integer(x))
        .collect();
    let correct = pullback_proper_transform(&[g], &[inc.to_vec()], Rational64::new(1, 3))
        .expect("valid")
        .coefficients
        .remove(0);
    let any_half_integer = correct.iter().any(|c| *c.denom() == 2);
    let refuted = claimed_residual.iter().any(|r| !r.is_zero()) && !any_half_integer;
    HalfCoefficientRefutation { claimed, claimed_residual, correct, any_half_integer, refuted }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn a2_chain() {
        let g = hirzebruch_jung(3, 2).unwrap();
        assert_eq!(g.hj, vec![2, 2]);
        assert_eq!(g.self_intersections, vec![-2, -2]);
        assert_eq!(g.discrepancies, vec![r(0, 1), r(0, 1)]);
        assert!(g.is_du_val());
        assert!(g.is_negative_definite());
    }

    #[test]
    fn seven_five() {
        let g = hirzebruch_jung(7, 5).unwrap();
        assert_eq!(g.hj, vec![2, 2, 3]);
        assert_eq!(g.discrepancies, vec![r(-1, 7), r(-2, 7), r(-3, 7)]);
        assert_eq!(g.continued_fraction_value(), r(7, 5));
        assert_eq!(g.k_squared_correction(), r(-3, 7));
    }

    #[test]
    fn a1_and_errors() {
        assert_eq!(hirzebruch_jung(2, 1).unwrap().hj, vec![2]);
        assert!(hirzebruch_jung(6, 4).is_err());
        assert!(hirzebruch_jung(5, 5).is_err());
        assert!(hirzebruch_jung(5, 0).is_err());
    }

    #[test]
    fn pullback_examples() {
        let a2 = hirzebruch_jung(3, 2).unwrap();
        let p = pullback_proper_transform(&[a2.clone(), a2.clone()], &[vec![1, 0], vec![1, 0]], r(1, 3)).unwrap();
        assert_eq!(p.coefficients, vec![vec![r(2, 3), r(1, 3)]; 2]);
        assert_eq!(p.proper_transform_square, r(-1, 1));
        assert!(p.pullback_orthogonal && p.validated);

        let p = pullback_proper_transform(&[], &[], r(1, 1)).unwrap();
        assert_eq!(p.proper_transform_square, r(1, 1));

        let p = pullback_proper_transform(std::slice::from_ref(&a2), &[vec![1, 1]], r(2, 3)).unwrap();
        assert_eq!(p.coefficients, vec![vec![r(1, 1), r(1, 1)]]);
        assert_eq!(p.corrections, vec![r(2, 1)]);
        assert_eq!(p.proper_transform_square, r(-4, 3));
        assert!(!p.validated);

        assert!(pullback_proper_transform(&[a2], &[vec![1]], r(1, 3)).is_err());
    }

    #[test]
    fn half_coefficients_refuted() {
        let h = half_coefficient_refutation();
        assert!(h.refuted);
        assert_eq!(h.correct, vec![r(2, 3), r(1, 3)]);
        assert_eq!(h.claimed_residual, vec![r(0, 1), r(1, 2)]);
    }
}
