//! Smith normal form over the integers, plus the integer kernel and
//! linear-solve routines built on top of it.
//!
//! Reduction first runs in `i128` with checked arithmetic and restarts in
//! `BigInt` if any intermediate value overflows, so the decomposition is
//! exact for every input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal in divisibility-chain order.
///
/// The inverses of `U` and `V` are tracked alongside, since cokernel lifts and
/// kernel coordinates need them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: Matrix<BigInt>,
    pub u_inv: Matrix<BigInt>,
    pub s: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    pub v_inv: Matrix<BigInt>,
    pub rank: usize,
}

impl SnfDecomposition {
    /// The diagonal of `S`, `min(rows, cols)` entries, nonnegative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.nrows().min(self.s.ncols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Re-multiplies `U · M · V` and compares with `S`, and checks both
    /// transformation matrices against their tracked inverses.
    pub fn verify(&self, m: &Matrix<i64>) -> bool {
        let mb = m.map(|&x| BigInt::from(x));
        let prod = self.u.mul(&mb).mul(&self.v);
        let rows = self.u.nrows();
        let cols = self.v.nrows();
        prod == self.s
            && self.u.mul(&self.u_inv) == Matrix::identity(rows)
            && self.v.mul(&self.v_inv) == Matrix::identity(cols)
            && self.is_diagonal_chain()
    }

    fn is_diagonal_chain(&self) -> bool {
        for i in 0..self.s.nrows() {
            for j in 0..self.s.ncols() {
                if i != j && !self.s[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let d = self.diagonal();
        d.iter().all(|x| !x.is_negative())
            && d.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            })
    }
}

trait Ring: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul> Ring for T {}

struct Reduction<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

fn axpy_row<T: Ring>(m: &mut Matrix<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    for k in 0..m.ncols() {
        let add = m[(src, k)].checked_mul(c)?;
        m[(dst, k)] = m[(dst, k)].checked_add(&add)?;
    }
    Some(())
}

fn axpy_col<T: Ring>(m: &mut Matrix<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    for k in 0..m.nrows() {
        let add = m[(k, src)].checked_mul(c)?;
        m[(k, dst)] = m[(k, dst)].checked_add(&add)?;
    }
    Some(())
}

impl<T: Ring> Reduction<T> {
    fn new(a: Matrix<T>) -> Self {
        let (m, n) = (a.nrows(), a.ncols());
        Self {
            a,
            u: Matrix::identity(m),
            u_inv: Matrix::identity(m),
            v: Matrix::identity(n),
            v_inv: Matrix::identity(n),
        }
    }

    /// row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        axpy_row(&mut self.a, dst, src, c)?;
        axpy_row(&mut self.u, dst, src, c)?;
        axpy_col(&mut self.u_inv, src, dst, &-c.clone())
    }

    /// col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        axpy_col(&mut self.a, dst, src, c)?;
        axpy_col(&mut self.v, dst, src, c)?;
        axpy_row(&mut self.v_inv, src, dst, &-c.clone())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_columns(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_columns(i, j);
        self.v.swap_columns(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.ncols() {
            self.a[(i, k)] = -self.a[(i, k)].clone();
        }
        for k in 0..self.u.ncols() {
            self.u[(i, k)] = -self.u[(i, k)].clone();
        }
        for k in 0..self.u_inv.nrows() {
            self.u_inv[(k, i)] = -self.u_inv[(k, i)].clone();
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<(Self, usize)> {
        let (m, n) = (self.a.nrows(), self.a.ncols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.smallest_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                        self.add_row(i, t, &-q)?;
                        if !self.a[(i, t)].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                        self.add_col(j, t, &-q)?;
                        if !self.a[(t, j)].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // a remainder is now smaller than the pivot; bring it up
                    let mut best = (t, t);
                    for i in t + 1..m {
                        let x = &self.a[(i, t)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        let x = &self.a[(t, j)];
                        if !x.is_zero() && x.abs() < self.a[best].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = self.a[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &T::one())?,
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        Some((self, t))
    }
}

fn to_big<T: Clone + Into<BigInt>>(m: &Matrix<T>) -> Matrix<BigInt> {
    m.map(|x| x.clone().into())
}

/// Smith normal form of an integer matrix. Total: every integer matrix,
/// including empty ones, has a decomposition.
pub fn smith_normal_form(m: &Matrix<i64>) -> SnfDecomposition {
    let narrow = Reduction::new(m.map(|&x| x as i128)).run();
    let (r, rank) = match narrow {
        Some((r, rank)) => {
            return SnfDecomposition {
                u: to_big(&r.u),
                u_inv: to_big(&r.u_inv),
                s: to_big(&r.a),
                v: to_big(&r.v),
                v_inv: to_big(&r.v_inv),
                rank,
            }
        }
        None => Reduction::new(m.map(|&x| BigInt::from(x)))
            .run()
            .expect("big-integer reduction cannot overflow"),
    };
    SnfDecomposition { u: r.u, u_inv: r.u_inv, s: r.a, v: r.v, v_inv: r.v_inv, rank }
}

/// Narrows a big integer produced by a reduction back to `i64`.
///
/// Every caller reduces modulo a finite invariant factor first or works with
/// desk-scale free lattices, so overflow here means the input was out of scope.
pub(crate) fn narrow(x: &BigInt) -> i64 {
    x.to_i64().unwrap_or_else(|| panic!("integer {x} exceeds the 64-bit working range"))
}

pub(crate) fn narrow_mod(x: &BigInt, modulus: i64) -> i64 {
    if modulus == 0 {
        narrow(x)
    } else {
        narrow(&x.mod_floor(&BigInt::from(modulus)))
    }
}

/// A basis of the integer kernel `{x : B x = 0}`, as the columns of the result.
pub fn integer_kernel(b: &Matrix<i64>) -> Matrix<i64> {
    let snf = smith_normal_form(b);
    let n = b.ncols();
    let idx: Vec<usize> = (snf.rank..n).collect();
    snf.v.select_columns(&idx).map(narrow)
}

/// One integer solution of `B x = rhs`, if any exists.
pub fn solve_integer(b: &Matrix<i64>, rhs: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(b.nrows(), rhs.len(), "rhs length mismatch");
    let snf = smith_normal_form(b);
    let rhs_big: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
    let c = snf.u.mul_vec(&rhs_big);
    let mut z = vec![BigInt::zero(); b.ncols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let s = &snf.s[(i, i)];
            if !ci.is_multiple_of(s) {
                return None;
            }
            z[i] = ci / s;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z).iter().map(narrow).collect())
}

/// Determinant of a small square integer matrix by fraction-free elimination.
pub fn determinant(m: &Matrix<i64>) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    let mut a = m.map(|&x| BigInt::from(x));
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[(n - 1, n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &Matrix<i64>) -> Vec<i64> {
        smith_normal_form(m).diagonal().iter().map(narrow).collect()
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = Matrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(diag(&m), vec![1, 6]);
        assert!(smith_normal_form(&m).verify(&m));
    }

    #[test]
    fn zero_and_identity() {
        let z = Matrix::<i64>::zeros(2, 2);
        assert_eq!(diag(&z), vec![0, 0]);
        let i = Matrix::<i64>::identity(3);
        assert_eq!(diag(&i), vec![1, 1, 1]);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::<i64>::zeros(3, 0);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 0);
        assert!(snf.verify(&m));
        let m = Matrix::<i64>::zeros(0, 2);
        assert!(smith_normal_form(&m).verify(&m));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = Matrix::from_rows(vec![
            vec![big, big - 1, 7],
            vec![big - 5, big, 11],
            vec![3, big - 2, big],
        ]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(&m));
    }

    #[test]
    fn kernel_and_solve() {
        let b = Matrix::from_rows(vec![vec![2, 4, 6], vec![1, 1, 1]]);
        let k = integer_kernel(&b);
        assert_eq!(k.ncols(), 1);
        let col = k.column(0);
        assert_eq!(b.mul_vec(&col), vec![0, 0]);
        assert_eq!(col.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 2, 1]);
        let x = solve_integer(&b, &[2, 1]).unwrap();
        assert_eq!(b.mul_vec(&x), vec![2, 1]);
        assert!(solve_integer(&b, &[1, 0]).is_none());
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -3]]);
        assert_eq!(determinant(&m), BigInt::from(-7));
    }
}
