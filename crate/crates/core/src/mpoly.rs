//! Exact polynomials in `x_1, ..., x_n` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::Permutation;

/// A polynomial stored as exponent vectors of length `n` mapped to nonzero coefficients.
///
/// Each variable has degree 2, so a linear form has degree 2.
#[derive(Clone)]
pub struct MultivariatePolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub type MPoly = MultivariatePolynomial;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The variable `x_j`, `1 <= j <= n`.
    pub fn var(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= n, "variable x{j} outside 1..={n}");
        let mut e = vec![0; n];
        e[j - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, BigRational::one());
        p
    }

    /// `Σ c_j x_j` from integer coefficients.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, q(c));
        }
        p
    }

    /// `x_a - x_b`.
    pub fn root(n: usize, a: usize, b: usize) -> Self {
        &Self::var(n, a) - &Self::var(n, b)
    }

    /// `x_1 + ... + x_k`.
    pub fn partial_sum(n: usize, k: usize) -> Self {
        (1..=k).fold(Self::zero(n), |acc, j| &acc + &Self::var(n, j))
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, BigRational)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn lifted(&self, n: usize) -> Self {
        if n == self.n {
            return self.clone();
        }
        assert!(n > self.n);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(n, 0);
                (e, c.clone())
            })
            .collect();
        Self { n, terms }
    }

    /// Largest total degree in the variables, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Graded degree, twice the total degree.
    pub fn degree(&self) -> Option<u32> {
        self.total_degree().map(|d| 2 * d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `w(f)` with `w(x_k) = x_{w(k)}`.
    pub fn permute(&self, w: &Permutation) -> Self {
        assert!(
            w.n() <= self.n,
            "permutation of {} letters on {} variables",
            w.n(),
            self.n
        );
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for k in 1..=w.n() {
                ne[w.apply(k) - 1] = e[k - 1];
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Exchanges `x_a` and `x_b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.swap(a - 1, b - 1);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Exact quotient by `x_a - x_b`, `None` if it does not divide.
    pub fn div_root(&self, a: usize, b: usize) -> Option<Self> {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.n && b <= self.n);
        let (a, b) = (a - 1, b - 1);
        // x_a^k m = (x_a^k - x_b^k) m + x_b^k m; the second parts must cancel.
        let mut quot = Self::zero(self.n);
        let mut rest = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[a];
            let mut base = e.clone();
            base[a] = 0;
            for j in 0..k {
                let mut qe = base.clone();
                qe[a] = k - 1 - j;
                qe[b] += j;
                quot.add_term(qe, c.clone());
            }
            let mut re = base;
            re[b] += k;
            rest.add_term(re, c.clone());
        }
        rest.is_zero().then_some(quot)
    }

    /// `terms` random monomials of total degree `d` with coefficients in `[-range, range]`.
    pub fn random_sparse<R: Rng>(n: usize, d: u32, terms: usize, range: i64, rng: &mut R) -> Self {
        let mut out = Self::zero(n);
        for _ in 0..terms {
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            out.add_term(e, q(rng.gen_range(-range..=range)));
        }
        out
    }

    /// Uniform integer coefficients in `[-range, range]` on every monomial of total degree `d`.
    pub fn random_homogeneous<R: Rng>(n: usize, d: u32, range: i64, rng: &mut R) -> Self {
        let mut out = Self::zero(n);
        for e in monomials(n, d) {
            out.add_term(e, q(rng.gen_range(-range..=range)));
        }
        out
    }
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=d).rev() {
            cur.push(k);
            rec(n, d - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        let n = self.n.max(other.n);
        self.lifted(n).terms == other.lifted(n).terms
    }
}

impl Eq for MPoly {}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let n = self.n.max(rhs.n);
        let mut out = self.lifted(n);
        for (e, c) in rhs.lifted(n).terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let n = self.n.max(rhs.n);
        let (a, b) = (self.lifted(n), rhs.lifted(n));
        let mut out = MPoly::zero(n);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for MPoly {
    /// Graded-descending terms, e.g. `x1^2 - 2*x1*x2 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(x, _), (y, _)| {
            y.iter()
                .sum::<u32>()
                .cmp(&x.iter().sum::<u32>())
                .then_with(|| y.cmp(x))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| {
                    if p == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{p}", j + 1)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn of(x: &BigInt) -> Self {
        x.to_i64()
            .map_or_else(|| Int::Big(x.to_string()), Int::Small)
    }

    fn value(&self) -> Result<BigInt, String> {
        match self {
            Int::Small(x) => Ok(BigInt::from(*x)),
            Int::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

impl Serialize for MPoly {
    /// `[[exponents, numerator, denominator], ...]`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms
                .iter()
                .map(|(e, c)| (e, Int::of(c.numer()), Int::of(c.denom()))),
        )
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(Vec<u32>, Int, Int)>::deserialize(d)?;
        let n = raw.first().map_or(0, |t| t.0.len());
        let mut out = MPoly::zero(n);
        for (e, num, den) in raw {
            if e.len() != n {
                return Err(serde::de::Error::custom(
                    "exponent vectors of different lengths",
                ));
            }
            let den = den.value().map_err(serde::de::Error::custom)?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            out.add_term(
                e,
                BigRational::new(num.value().map_err(serde::de::Error::custom)?, den),
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(j: usize) -> MPoly {
        MPoly::var(3, j)
    }

    #[test]
    fn arithmetic() {
        let f = &x(1) + &x(2);
        let g = &x(1) - &x(2);
        assert_eq!(&f * &g, &x(1).pow(2) - &x(2).pow(2));
        assert_eq!((&f - &f), MPoly::zero(3));
        assert_eq!(f.degree(), Some(2));
        assert_eq!(MPoly::one(3).degree(), Some(0));
        assert_eq!(MPoly::zero(3).degree(), None);
        assert!((&f * &g).is_homogeneous());
        assert!(!(&f + &MPoly::one(3)).is_homogeneous());
    }

    #[test]
    fn permutation_action() {
        let w = Permutation::from_one_line(vec![2, 3, 1]).unwrap();
        assert_eq!(x(1).permute(&w), x(2));
        assert_eq!(x(3).permute(&w), x(1));
        let f = &x(1).pow(2) * &x(2);
        let v = Permutation::from_one_line(vec![3, 1, 2]).unwrap();
        assert_eq!(f.permute(&w).permute(&v), f.permute(&v.compose(&w)));
        assert_eq!(f.swap_vars(1, 2), &x(2).pow(2) * &x(1));
    }

    #[test]
    fn division() {
        let f = &x(1).pow(3) - &x(3).pow(3);
        let quo = f.div_root(1, 3).unwrap();
        assert_eq!(quo, &(&x(1).pow(2) + &(&x(1) * &x(3))) + &x(3).pow(2));
        assert!(x(1).div_root(1, 2).is_none());
        assert_eq!(MPoly::zero(3).div_root(2, 3), Some(MPoly::zero(3)));
    }

    #[test]
    fn display_and_json() {
        let f = &(&x(1).pow(2) - &x(2).scale(&BigRational::new(2.into(), 1.into())))
            + &MPoly::constant(3, BigRational::new(1.into(), 2.into()));
        assert_eq!(f.to_string(), "x1^2 - 2*x2 + 1/2");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, "[[[0,0,0],1,2],[[0,1,0],-2,1],[[2,0,0],1,1]]");
        assert_eq!(serde_json::from_str::<MPoly>(&js).unwrap(), f);
        assert_eq!(serde_json::from_str::<MPoly>("[]").unwrap(), MPoly::zero(3));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(1, 5), vec![vec![5]]);
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|ts| {
            MPoly::from_terms(
                3,
                ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], q(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn root_division_round_trip(f in arb_poly(), a in 1usize..=3, b in 1usize..=3) {
            prop_assume!(a != b);
            let r = MPoly::root(3, a, b);
            prop_assert_eq!((&f * &r).div_root(a, b), Some(f.clone()));
            let anti = &f - &f.swap_vars(a, b);
            prop_assert!(anti.div_root(a, b).is_some());
        }
    }
}
