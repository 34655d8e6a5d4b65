//! Polynomials over a prime field, factorization of `x^n − 1`, and the
//! module decompositions it implies for cyclic actions on `F_p^n`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::AbelianError;

/// A polynomial over `F_p`, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(p: u64, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = p - 1;
        c[n] = 1;
        Self::new(p, c)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = inv(self.lead(), self.p);
        Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, li, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + self.p - o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let li = inv(d.lead(), self.p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], li, self.p);
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - mulmod(c, dj, self.p)) % self.p;
                }
            }
        }
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p)).collect();
        Self::new(self.p, c)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// Whether the polynomial is irreducible over `F_p` (Berlekamp rank test).
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let f = self.monic();
                f.gcd(&f.derivative()).degree() == Some(0) && berlekamp_basis(&f).len() == 1
            }
        }
    }

    /// Smallest `e` with `self | x^e − 1`, searched over divisors of `m`.
    pub fn cyclic_order(&self, m: usize) -> Option<usize> {
        (1..=m).filter(|e| m.is_multiple_of(*e)).find(|&e| Self::x_pow_minus_one(self.p, e).rem(self).is_zero())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Basis of the Berlekamp subalgebra `{v : v^p ≡ v mod f}` for squarefree monic `f`.
fn berlekamp_basis(f: &Poly) -> Vec<Poly> {
    let p = f.p;
    let n = f.deg();
    // rows of Q - I: x^{p i} mod f minus e_i
    let xp = Poly::x(p).pow_mod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = Poly::one(p);
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.coeffs.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // left nullspace of (Q - I): solve (Q - I)^T v = 0
    let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let li = inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, li, p);
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - mulmod(k, a[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][fc]) % p;
            }
            Poly::new(p, v)
        })
        .collect()
}

fn berlekamp_split(f: &Poly) -> Vec<Poly> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let basis = berlekamp_basis(f);
    let k = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
        if factors.len() == k {
            break;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.deg() <= 1 {
                next.push(h);
                continue;
            }
            let mut rest = h.clone();
            for s in 0..f.p {
                if rest.deg() == 0 {
                    break;
                }
                let g = rest.gcd(&v.sub(&Poly::new(f.p, vec![s])));
                if g.deg() > 0 && g.deg() < rest.deg() {
                    next.push(g.clone());
                    rest = rest.div_rem(&g).0.monic();
                }
            }
            if rest.deg() > 0 {
                next.push(rest);
            }
        }
        factors = next;
    }
    factors
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.p as usize;
    Poly::new(f.p, f.coeffs.iter().step_by(p).copied().collect())
}

fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0.monic();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0.monic();
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_rem(&w).0.monic();
        i += 1;
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Complete factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by degree and then coefficient pattern.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    for (part, mult) in squarefree_decomposition(&f) {
        for irr in berlekamp_split(&part) {
            match out.iter_mut().find(|(g, _)| *g == irr) {
                Some(entry) => entry.1 += mult,
                None => out.push((irr, mult)),
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.deg().cmp(&b.deg()).then_with(|| b.coeffs.iter().rev().cmp(a.coeffs.iter().rev()))
    });
    out
}

/// Factorization of `x^n − 1` over `F_p`.
pub fn factor_cyclotomic_mod_p(n: u64, p: u64) -> Result<Vec<(Poly, u32)>, AbelianError> {
    if !is_prime(p) {
        return Err(AbelianError::NotPrime(p));
    }
    if n == 0 || n > 64 {
        return Err(AbelianError::DegreeTooLarge(n));
    }
    Ok(factor(&Poly::x_pow_minus_one(p, n as usize)))
}

/// One way of writing `F_p^n` as a sum of irreducible `F_p[C_m]`-modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Multiplicity of each irreducible factor, in the report's factor order.
    pub counts: Vec<usize>,
    pub fixed_dim: usize,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleSummand {
    pub factor: Poly,
    pub degree: usize,
    /// Order of `x` modulo the factor: the order of `C_m`'s image on this summand.
    pub order: usize,
}

/// Semisimple `C_m`-actions on `F_p^n` and their fixed-subspace dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedDimReport {
    pub dimension: usize,
    pub p: u64,
    pub m: u64,
    pub summands: Vec<IrreducibleSummand>,
    pub decompositions: Vec<Decomposition>,
    pub possible_fixed_dims: BTreeSet<usize>,
    pub faithful_fixed_dims: BTreeSet<usize>,
}

impl FixedDimReport {
    /// Fixed dimensions of faithful actions whose fixed subgroup has at most
    /// `max_fixed_order` elements.
    pub fn faithful_with_fixed_order_at_most(&self, max_fixed_order: u64) -> BTreeSet<usize> {
        self.decompositions
            .iter()
            .filter(|d| d.faithful && (self.p as u128).pow(d.fixed_dim as u32) <= max_fixed_order as u128)
            .map(|d| d.fixed_dim)
            .collect()
    }

    /// The fixed dimension when the constraints leave exactly one option.
    pub fn forced_fixed_dim(&self, max_fixed_order: Option<u64>) -> Option<usize> {
        let set = match max_fixed_order {
            Some(b) => self.faithful_with_fixed_order_at_most(b),
            None => self.faithful_fixed_dims.clone(),
        };
        (set.len() == 1).then(|| *set.iter().next().expect("one element"))
    }
}

/// Enumerates the semisimple decompositions of `F_p^n` under `C_m` from the
/// factor degrees of `x^m − 1`.
pub fn cyclic_action_fixed_count(n: usize, p: u64, m: u64) -> Result<FixedDimReport, AbelianError> {
    let factors = factor_cyclotomic_mod_p(m, p)?;
    let summands: Vec<IrreducibleSummand> = factors
        .into_iter()
        .map(|(f, _)| {
            let order = f.cyclic_order(m as usize).expect("factor of x^m - 1");
            IrreducibleSummand { degree: f.deg(), factor: f, order }
        })
        .collect();
    let trivial_idx = summands.iter().position(|s| s.degree == 1 && s.order == 1);

    let mut decompositions = Vec::new();
    let mut counts = vec![0usize; summands.len()];
    enumerate_counts(&summands, 0, n, &mut counts, &mut |counts| {
        let fixed_dim = trivial_idx.map_or(0, |i| counts[i]);
        let lcm = counts
            .iter()
            .zip(&summands)
            .filter(|(&c, _)| c > 0)
            .fold(1usize, |acc, (_, s)| acc.lcm(&s.order));
        decompositions.push(Decomposition { counts: counts.to_vec(), fixed_dim, faithful: lcm as u64 == m });
    });
    let possible_fixed_dims = decompositions.iter().map(|d| d.fixed_dim).collect();
    let faithful_fixed_dims = decompositions.iter().filter(|d| d.faithful).map(|d| d.fixed_dim).collect();
    Ok(FixedDimReport { dimension: n, p, m, summands, decompositions, possible_fixed_dims, faithful_fixed_dims })
}

fn enumerate_counts(
    summands: &[IrreducibleSummand],
    i: usize,
    remaining: usize,
    counts: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if i == summands.len() {
        if remaining == 0 {
            emit(counts);
        }
        return;
    }
    let d = summands[i].degree;
    for c in 0..=remaining / d {
        counts[i] = c;
        enumerate_counts(summands, i + 1, remaining - c * d, counts, emit);
    }
    counts[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[(Poly, u32)]) -> Vec<String> {
        v.iter().map(|(f, m)| if *m == 1 { f.to_string() } else { format!("({f})^{m}") }).collect()
    }

    #[test]
    fn x7_minus_1_over_f2() {
        let f = factor_cyclotomic_mod_p(7, 2).unwrap();
        assert_eq!(names(&f), vec!["x + 1", "x^3 + x^2 + 1", "x^3 + x + 1"]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(names(&factor_cyclotomic_mod_p(1, 2).unwrap()), vec!["x + 1"]);
        assert_eq!(names(&factor_cyclotomic_mod_p(3, 2).unwrap()), vec!["x + 1", "x^2 + x + 1"]);
        assert_eq!(names(&factor_cyclotomic_mod_p(4, 2).unwrap()), vec!["(x + 1)^4"]);
        assert_eq!(names(&factor_cyclotomic_mod_p(6, 3).unwrap()), vec!["(x + 2)^3", "(x + 1)^3"]);
        assert_eq!(factor_cyclotomic_mod_p(7, 4), Err(AbelianError::NotPrime(4)));
        assert_eq!(factor_cyclotomic_mod_p(65, 2), Err(AbelianError::DegreeTooLarge(65)));
    }

    #[test]
    fn product_reconstructs() {
        for (n, p) in [(15, 2), (21, 2), (63, 2), (24, 5), (64, 3), (61, 2)] {
            let fs = factor_cyclotomic_mod_p(n, p).unwrap();
            let mut prod = Poly::one(p);
            for (f, m) in &fs {
                assert!(f.is_irreducible(), "{f} over F_{p}");
                for _ in 0..*m {
                    prod = prod.mul(f);
                }
            }
            assert_eq!(prod, Poly::x_pow_minus_one(p, n as usize));
        }
    }

    #[test]
    fn fixed_dimensions_for_c7_on_f2() {
        let r3 = cyclic_action_fixed_count(3, 2, 7).unwrap();
        assert_eq!(r3.faithful_fixed_dims, BTreeSet::from([0]));
        let r4 = cyclic_action_fixed_count(4, 2, 7).unwrap();
        assert_eq!(r4.faithful_fixed_dims, BTreeSet::from([1]));
        let r6 = cyclic_action_fixed_count(6, 2, 7).unwrap();
        assert_eq!(r6.faithful_fixed_dims, BTreeSet::from([0, 3]));
        assert_eq!(r6.forced_fixed_dim(Some(3)), Some(0));
        assert_eq!(r6.forced_fixed_dim(None), None);
        assert_eq!(r6.possible_fixed_dims, BTreeSet::from([0, 3, 6]));
    }

    #[test]
    fn irreducibility() {
        assert!(Poly::new(2, vec![1, 1, 1]).is_irreducible());
        assert!(!Poly::new(2, vec![1, 0, 1]).is_irreducible());
        assert!(!Poly::new(5, vec![4, 0, 1]).is_irreducible());
        assert!(Poly::new(5, vec![2, 0, 1]).is_irreducible());
    }
}
