//! Exact Laurent polynomials in `v` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial `sum_k c_k v^k` stored densely from its lowest exponent.
///
/// The coefficient vector never has zero entries at either end; the zero
/// polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(c, e);
        }
        out
    }

    fn from_raw(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        let Some(first) = first else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        Self {
            low: low + first as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c v^k` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => Self {
                low: -hi,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// All coefficients are non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Part of the polynomial with exponents `<= k`.
    pub fn truncate_above(&self, k: i32) -> Self {
        Self::from_raw(
            self.low,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if self.low + j as i32 <= k {
                        c.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    }

    /// Evaluate at an integer, only meaningful when no negative exponents occur
    /// or the point is a unit; used for `v = 1` sanity checks.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact division. `None` if the quotient is not a Laurent polynomial with
    /// integer coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = &divisor.coeffs;
        let dl = d.len();
        let lead = &d[dl - 1];
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return None;
        }
        let qlen = rem.len() - dl + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let c = top / lead;
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_raw(self.low - divisor.low, q))
    }

    /// Combines `self + c * other * v^shift` in place.
    pub fn add_scaled(&mut self, other: &Self, shift: i32, c: &BigInt) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let olow = other.low + shift;
        if self.is_zero() {
            *self = Self {
                low: olow,
                coeffs: other.coeffs.iter().map(|x| x * c).collect(),
            };
            return;
        }
        let low = self.low.min(olow);
        let high = self
            .max_exp()
            .unwrap()
            .max(olow + other.coeffs.len() as i32 - 1);
        if low < self.low {
            let pad = (self.low - low) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = low;
        }
        let need = (high - self.low + 1) as usize;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        let off = (olow - self.low) as usize;
        for (j, x) in other.coeffs.iter().enumerate() {
            self.coeffs[off + j] += x * c;
        }
        let coeffs = std::mem::take(&mut self.coeffs);
        *self = Self::from_raw(self.low, coeffs);
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Normal form with descending exponents, e.g. `v^4+2v^2+1` or `-v^-1+v`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = abs.is_one();
            match e {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{abs}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{abs}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("malformed polynomial {s:?}"));
        // split into signed terms; a '-' right after '^' belongs to the exponent
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^' {
                pieces.push(&s[start..k]);
                start = k;
            }
        }
        pieces.push(&s[start..]);
        let mut out = Self::zero();
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match body.find('v') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(p) => {
                    let c = if p == 0 {
                        BigInt::one()
                    } else {
                        body[..p].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[p + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i32>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            out += &Self::monomial(if neg { -coef } else { coef }, exp);
        }
        Ok(out)
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary total order (by exponent window, then coefficients) so the type
/// can key ordered collections.
impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        self.add_scaled(rhs, 0, &BigInt::one());
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        self.add_scaled(rhs, 0, &-BigInt::one());
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] += x * y;
            }
        }
        LaurentPolynomial::from_raw(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

/// JSON form: list of `[exponent, "coefficient"]`.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(i32, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut out = Self::zero();
        for (e, c) in terms {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            out += &Self::monomial(c, e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_normal_form() {
        let f = LaurentPolynomial::from_terms([(4, 1), (2, 2), (0, 1)]);
        assert_eq!(f.to_string(), "v^4+2v^2+1");
        assert_eq!(p("v^-1-v").to_string(), "-v+v^-1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_roundtrip_examples() {
        for s in ["v^3+2v+2v^-1+v^-3", "-3v^2", "1", "v", "7v^-5+v^10"] {
            assert_eq!(p(s).to_string().parse::<LaurentPolynomial>().unwrap(), p(s));
        }
        assert!("v^".parse::<LaurentPolynomial>().is_err());
        assert!("".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn exact_division() {
        let pi = p("v^3+2v+2v^-1+v^-3");
        let f = &pi * &p("v^2-v^-1");
        assert_eq!(f.div_exact(&pi), Some(p("v^2-v^-1")));
        assert_eq!(p("v+1").div_exact(&p("v+v^-1")), None);
        assert_eq!(p("2v").div_exact(&p("3")), None);
    }

    #[test]
    fn bar_involution() {
        assert_eq!(p("v^2+3v^-1").bar(), p("v^-2+3v"));
        assert!(p("v+v^-1").is_bar_invariant());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn division_inverts_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn text_and_json_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPolynomial>().unwrap(), a.clone());
            let js = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPolynomial>(&js).unwrap(), a);
        }
    }
}
