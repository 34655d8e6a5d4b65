//! Finite abelian groups in invariant-factor form, their elements and
//! homomorphisms, and the invariant/coinvariant calculus for cyclic actions.

pub mod coinv;
pub mod lattice;
pub mod poly;
pub mod sample;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::snf::solve_integer;

pub use coinv::{
    coinv_inv_isomorphism_check, coinvariants, invariants, little_lemma_check, orbit, trace_endo,
    CoinvInvCertificate, Coinvariants, Invariants, LittleLemmaVerdict, DEFAULT_ENUMERATION_BOUND,
};
pub use poly::{cyclic_action_fixed_count, factor_cyclotomic_mod_p, FixedDimReport, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("invariant factors {0:?} must each be >= 2 and divide the next")]
    BadInvariantFactors(Vec<i64>),
    #[error("group order overflows 64 bits")]
    OrderOverflow,
    #[error("element has {got} coordinates, group has {expected} invariant factors")]
    ElementLength { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape { rows: usize, cols: usize, expected: usize },
    #[error("matrix does not define a homomorphism: entry ({row},{col}) fails d_i | a_ij * d_j")]
    NotWellDefined { row: usize, col: usize },
    #[error("endomorphism raised to the {0}th power is not the identity")]
    OrderMismatch(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} exceeds the supported bound of 64")]
    DegreeTooLarge(u64),
    #[error("cyclic orders must all be positive, got {0:?}")]
    BadCyclicOrders(Vec<i64>),
    #[error("endomorphism belongs to a different group")]
    GroupMismatch,
}

/// A finite abelian group `Z/d1 × … × Z/dk` with `d1 | d2 | … | dk`, each `di >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FinAbGroup {
    factors: Vec<i64>,
}

impl TryFrom<Vec<i64>> for FinAbGroup {
    type Error = AbelianError;
    fn try_from(v: Vec<i64>) -> Result<Self, AbelianError> {
        Self::new(v)
    }
}

impl From<FinAbGroup> for Vec<i64> {
    fn from(g: FinAbGroup) -> Self {
        g.factors
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self, AbelianError> {
        if factors.iter().any(|&d| d < 2) || factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(AbelianError::BadInvariantFactors(factors));
        }
        factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
            .filter(|&o| o <= i64::MAX as u64)
            .ok_or(AbelianError::OrderOverflow)?;
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self::new(vec![n]).expect("cyclic order must be positive")
        }
    }

    /// The canonical form of `C_{n1} × … × C_{nr}` for arbitrary positive orders.
    pub fn from_cyclic_orders(orders: &[i64]) -> Result<Self, AbelianError> {
        Ok(CyclicProduct::new(orders)?.group().clone())
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().map_or(1, |&d| d as u64)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.rank() {
            return Err(AbelianError::ElementLength { expected: self.rank(), got: coords.len() });
        }
        let mut coords = coords;
        lattice::reduce(&mut coords, &self.factors);
        Ok(GroupElement { coords })
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.coords.len() == self.rank()
            && e.coords.iter().zip(&self.factors).all(|(&x, &d)| (0..d).contains(&x))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(a, -1)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as i64)
            .collect();
        GroupElement { coords }
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d / x.gcd(&d)) as u64)
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in mixed-radix order (last coordinate fastest).
    pub fn elements(&self) -> Elements<'_> {
        Elements { group: self, next: Some(self.zero()) }
    }

    /// The element with the given mixed-radix index.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (c, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (index % d as u64) as i64;
            index /= d as u64;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, e: &GroupElement) -> u64 {
        e.coords.iter().zip(&self.factors).fold(0, |acc, (&x, &d)| acc * d as u64 + x as u64)
    }

    /// Every abelian group of order `n` up to isomorphism, in a fixed order.
    pub fn all_of_order(n: u64) -> Vec<FinAbGroup> {
        assert!(n >= 1, "group order must be positive");
        let mut per_prime: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                let options = partitions(e)
                    .into_iter()
                    .map(|part| part.into_iter().map(|k| (p as i64).pow(k)).collect())
                    .collect();
                per_prime.push(options);
            }
            p += 1;
        }
        let mut out = vec![Vec::<Vec<i64>>::new()];
        for options in per_prime {
            let mut next = Vec::new();
            for prefix in &out {
                for opt in &options {
                    let mut v = prefix.clone();
                    v.push(opt.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|parts| {
                // combine prime powers sorted descending into invariant factors
                let width = parts.iter().map(Vec::len).max().unwrap_or(0);
                let mut factors = vec![1i64; width];
                for part in parts {
                    let mut sorted = part;
                    sorted.sort_unstable_by(|a, b| b.cmp(a));
                    for (i, q) in sorted.into_iter().enumerate() {
                        factors[width - 1 - i] *= q;
                    }
                }
                FinAbGroup::new(factors).expect("prime power combination is a valid chain")
            })
            .collect()
    }
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

pub struct Elements<'a> {
    group: &'a FinAbGroup,
    next: Option<GroupElement>,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;
    fn next(&mut self) -> Option<GroupElement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut carried = true;
        for (c, &d) in succ.coords.iter_mut().zip(&self.group.factors).rev() {
            *c += 1;
            if *c < d {
                carried = false;
                break;
            }
            *c = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// Coordinates of an element against its group's invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A homomorphism between two finite abelian groups, acting on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: Matrix<i64>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Matrix<i64>) -> Result<Self, AbelianError> {
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(AbelianError::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected: source.rank(),
            });
        }
        let mut matrix = matrix;
        for i in 0..target.rank() {
            let di = target.factors[i];
            for j in 0..source.rank() {
                let dj = source.factors[j];
                if (matrix[(i, j)] as i128 * dj as i128) % di as i128 != 0 {
                    return Err(AbelianError::NotWellDefined { row: i, col: j });
                }
                matrix[(i, j)] = matrix[(i, j)].rem_euclid(di);
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        GroupElement { coords: lattice::apply(&self.matrix, &e.coords, &self.target.factors) }
    }

    /// Whether the map is injective, via the order of its kernel.
    pub fn is_injective(&self) -> bool {
        lattice::kernel(&self.source.factors, &self.target.factors, &self.matrix).moduli.is_empty()
    }

    pub fn image(&self) -> FinAbGroup {
        let sub = lattice::subgroup(&self.target.factors, &self.matrix);
        FinAbGroup { factors: sub.moduli }
    }
}

/// An endomorphism of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEndo {
    parent: FinAbGroup,
    matrix: Matrix<i64>,
}

impl Serialize for GroupEndo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl GroupEndo {
    /// Validates well-definedness (`d_i | a_ij · d_j`) and reduces entries mod `d_i`.
    pub fn new(parent: FinAbGroup, matrix: Matrix<i64>) -> Result<Self, AbelianError> {
        let k = parent.rank();
        if matrix.nrows() != k || matrix.ncols() != k {
            return Err(AbelianError::MatrixShape { rows: matrix.nrows(), cols: matrix.ncols(), expected: k });
        }
        let hom = GroupHom::new(parent.clone(), parent, matrix)?;
        Ok(Self { parent: hom.source, matrix: hom.matrix })
    }

    pub fn from_rows(parent: FinAbGroup, rows: Vec<Vec<i64>>) -> Result<Self, AbelianError> {
        let k = parent.rank();
        Self::new(parent, Matrix::from_rows_with_cols(rows, k))
    }

    pub fn identity(parent: &FinAbGroup) -> Self {
        Self::multiplication(parent, 1)
    }

    pub fn multiplication(parent: &FinAbGroup, k: i64) -> Self {
        let n = parent.rank();
        let m = Matrix::from_fn(n, n, |i, j| if i == j { k.rem_euclid(parent.factors[i]) } else { 0 });
        Self { parent: parent.clone(), matrix: m }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.matrix
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.to_rows()
    }

    pub fn as_hom(&self) -> GroupHom {
        GroupHom { source: self.parent.clone(), target: self.parent.clone(), matrix: self.matrix.clone() }
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        GroupElement { coords: lattice::apply(&self.matrix, &e.coords, &self.parent.factors) }
    }

    fn reduced(&self, m: Matrix<i64>) -> Self {
        let mut m = m;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                m[(i, j)] = m[(i, j)].rem_euclid(self.parent.factors[i]);
            }
        }
        Self { parent: self.parent.clone(), matrix: m }
    }

    fn check_same(&self, other: &Self) -> Result<(), AbelianError> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(AbelianError::GroupMismatch)
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, AbelianError> {
        self.check_same(other)?;
        let wide = self.matrix.map(|&x| x as i128).mul(&other.matrix.map(|&x| x as i128));
        let m = Matrix::from_fn(wide.nrows(), wide.ncols(), |i, j| {
            wide[(i, j)].rem_euclid(self.parent.factors[i] as i128) as i64
        });
        Ok(Self { parent: self.parent.clone(), matrix: m })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AbelianError> {
        self.check_same(other)?;
        let m = Matrix::from_fn(self.matrix.nrows(), self.matrix.ncols(), |i, j| {
            self.matrix[(i, j)] + other.matrix[(i, j)]
        });
        Ok(self.reduced(m))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AbelianError> {
        self.check_same(other)?;
        let m = Matrix::from_fn(self.matrix.nrows(), self.matrix.ncols(), |i, j| {
            self.matrix[(i, j)] - other.matrix[(i, j)]
        });
        Ok(self.reduced(m))
    }

    /// `g − 1`.
    pub fn minus_identity(&self) -> Self {
        self.sub(&Self::identity(&self.parent)).expect("same parent")
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::identity(&self.parent);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base).expect("same parent");
            }
            base = base.compose(&base).expect("same parent");
            k >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.parent)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.to_rows().iter().flatten().all(|&x| x == 0)
    }

    pub fn is_automorphism(&self) -> bool {
        self.as_hom().is_injective()
    }

    /// Order as an element of `End(H)` under composition, searched up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(&self.parent);
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur == id {
                return Some(k);
            }
            cur = cur.compose(self).expect("same parent");
        }
        None
    }

    /// Every automorphism of `parent`, enumerated by generator images.
    /// `None` when more than `limit` candidate matrices would be tried.
    pub fn all_automorphisms(parent: &FinAbGroup, limit: u64) -> Option<Vec<Self>> {
        let images: Vec<Vec<GroupElement>> = parent
            .factors
            .iter()
            .map(|&d| parent.elements().filter(|e| parent.scale(e, d).is_zero()).collect())
            .collect();
        let total = images.iter().try_fold(1u64, |acc, v| acc.checked_mul(v.len() as u64))?;
        if total > limit {
            return None;
        }
        let k = parent.rank();
        let mut out = Vec::new();
        for mut idx in 0..total {
            let mut cols = Vec::with_capacity(k);
            for imgs in &images {
                let n = imgs.len() as u64;
                cols.push(imgs[(idx % n) as usize].coords.clone());
                idx /= n;
            }
            let endo = Self::new(parent.clone(), Matrix::from_columns(&cols, k)).expect("images respect orders");
            if endo.is_automorphism() {
                out.push(endo);
            }
        }
        Some(out)
    }

    /// Two-sided inverse, when the endomorphism is an automorphism.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_automorphism() {
            return None;
        }
        let k = self.parent.rank();
        let d = &self.parent.factors;
        let block = self.matrix.hconcat(&Matrix::diagonal(d));
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let mut rhs = vec![0; k];
            rhs[j] = 1;
            let sol = solve_integer(&block, &rhs)?;
            cols.push(sol[..k].to_vec());
        }
        let inv = self.reduced(Matrix::from_columns(&cols, k));
        debug_assert!(inv.compose(self).ok()?.is_identity() && self.compose(&inv).ok()?.is_identity());
        Some(inv)
    }
}

/// `C_{n1} × … × C_{nr}` with arbitrary positive orders, and the SNF-derived
/// isomorphism onto its invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicProduct {
    orders: Vec<i64>,
    group: FinAbGroup,
    to_canonical: Matrix<i64>,
    from_canonical: Matrix<i64>,
}

impl CyclicProduct {
    pub fn new(orders: &[i64]) -> Result<Self, AbelianError> {
        if orders.iter().any(|&n| n < 1) {
            return Err(AbelianError::BadCyclicOrders(orders.to_vec()));
        }
        let q = lattice::quotient(orders, &Matrix::zeros(orders.len(), 0));
        let group = FinAbGroup::new(q.moduli)?;
        Ok(Self { orders: orders.to_vec(), group, to_canonical: q.forward, from_canonical: q.backward })
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// The canonical element for product coordinates `x`.
    pub fn element(&self, x: &[i64]) -> GroupElement {
        GroupElement { coords: lattice::apply(&self.to_canonical, x, &self.group.factors) }
    }

    /// Product coordinates of a canonical element.
    pub fn coords_of(&self, e: &GroupElement) -> Vec<i64> {
        lattice::apply(&self.from_canonical, &e.coords, &self.orders)
    }

    /// Transports an endomorphism given on the product coordinates.
    pub fn endo(&self, product_matrix: &Matrix<i64>) -> Result<GroupEndo, AbelianError> {
        check_product_well_defined(&self.orders, product_matrix)?;
        let m = self.to_canonical.mul(product_matrix).mul(&self.from_canonical);
        GroupEndo::new(self.group.clone(), m)
    }

    /// Diagonal action: multiply the i-th cyclic factor by `multipliers[i]`.
    pub fn diagonal_endo(&self, multipliers: &[i64]) -> Result<GroupEndo, AbelianError> {
        self.endo(&Matrix::diagonal(multipliers))
    }
}

fn check_product_well_defined(orders: &[i64], m: &Matrix<i64>) -> Result<(), AbelianError> {
    let r = orders.len();
    if m.nrows() != r || m.ncols() != r {
        return Err(AbelianError::MatrixShape { rows: m.nrows(), cols: m.ncols(), expected: r });
    }
    for i in 0..r {
        for j in 0..r {
            if (m[(i, j)] as i128 * orders[j] as i128) % orders[i] as i128 != 0 {
                return Err(AbelianError::NotWellDefined { row: i, col: j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FinAbGroup::new(vec![2, 3]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert!(FinAbGroup::new(vec![2, 4, 8]).is_ok());
        assert!(FinAbGroup::new(vec![i64::MAX / 2, i64::MAX / 2 * 2]).is_err());
    }

    #[test]
    fn cyclic_product_canonicalises() {
        let cp = CyclicProduct::new(&[2, 2, 13]).unwrap();
        assert_eq!(cp.group().invariant_factors(), &[2, 26]);
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..13 {
                    let e = cp.element(&[x, y, z]);
                    assert_eq!(cp.coords_of(&e), vec![x, y, z]);
                }
            }
        }
        assert_eq!(FinAbGroup::from_cyclic_orders(&[3, 7]).unwrap().invariant_factors(), &[21]);
        assert!(FinAbGroup::from_cyclic_orders(&[1, 1]).unwrap().is_trivial());
    }

    #[test]
    fn transported_endo_acts_like_the_product_action() {
        let cp = CyclicProduct::new(&[3, 7]).unwrap();
        let g = cp.diagonal_endo(&[1, 2]).unwrap();
        for x in 0..3 {
            for y in 0..7 {
                let img = g.apply(&cp.element(&[x, y]));
                assert_eq!(cp.coords_of(&img), vec![x, (2 * y) % 7]);
            }
        }
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        let h = FinAbGroup::new(vec![2, 4]).unwrap();
        // sending the order-2 generator to the order-4 generator is not a homomorphism
        let bad = Matrix::from_rows(vec![vec![1, 0], vec![1, 1]]);
        assert!(matches!(GroupEndo::new(h.clone(), bad), Err(AbelianError::NotWellDefined { .. })));
        let good = Matrix::from_rows(vec![vec![1, 0], vec![2, 1]]);
        assert!(GroupEndo::new(h, good).is_ok());
    }

    #[test]
    fn element_enumeration_and_indexing() {
        let h = FinAbGroup::new(vec![2, 6]).unwrap();
        let all: Vec<_> = h.elements().collect();
        assert_eq!(all.len(), 12);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(h.index_of(e), i as u64);
            assert_eq!(&h.element_at(i as u64), e);
        }
        assert_eq!(FinAbGroup::trivial().elements().count(), 1);
    }

    #[test]
    fn groups_of_order() {
        assert_eq!(FinAbGroup::all_of_order(1), vec![FinAbGroup::trivial()]);
        let g8: Vec<String> = FinAbGroup::all_of_order(8).iter().map(|g| g.to_string()).collect();
        assert_eq!(g8, vec!["C8", "C2xC4", "C2xC2xC2"]);
        assert_eq!(FinAbGroup::all_of_order(72).len(), 6);
        assert_eq!(FinAbGroup::all_of_order(12).len(), 2);
    }

    #[test]
    fn automorphism_counts() {
        let count = |f: Vec<i64>| GroupEndo::all_automorphisms(&FinAbGroup::new(f).unwrap(), 1 << 20).unwrap().len();
        assert_eq!(count(vec![6]), 2);
        assert_eq!(count(vec![14]), 6);
        assert_eq!(count(vec![2, 2]), 6);
        assert_eq!(count(vec![2, 4]), 8);
        assert_eq!(count(vec![]), 1);
        assert!(GroupEndo::all_automorphisms(&FinAbGroup::new(vec![2; 8]).unwrap(), 1000).is_none());
    }

    #[test]
    fn inverse_of_automorphism() {
        let h = FinAbGroup::new(vec![2, 2]).unwrap();
        let g = GroupEndo::from_rows(h.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        let inv = g.inverse().unwrap();
        assert!(g.compose(&inv).unwrap().is_identity());
        assert_eq!(g.order(10), Some(3));
        let zero = GroupEndo::multiplication(&h, 0);
        assert!(zero.inverse().is_none());
    }

    #[test]
    fn json_shapes() {
        let h = FinAbGroup::new(vec![2, 14]).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), "[2,14]");
        let back: FinAbGroup = serde_json::from_str("[2,14]").unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<FinAbGroup>("[3,2]").is_err());
        let e = h.element(vec![1, 9]).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), "[1,9]");
        let g = GroupEndo::multiplication(&h, 3);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[[1,0],[0,3]]");
    }
}
