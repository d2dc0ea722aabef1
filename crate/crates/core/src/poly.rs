//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Letters are commuting indeterminates identified by name. A [`Polynomial`] is
//! always kept in canonical form: no zero coefficients are stored and no
//! monomial stores a zero exponent. Terms iterate in graded order (ascending
//! total degree), ties broken lexicographically by letter name with the larger
//! exponent of the earlier letter first, so `x^4*y` precedes `x^3*y^2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LetterError {
    #[error("letter name is empty")]
    Empty,
    #[error("letter `{0}` must start with an alphabetic character and contain only alphanumerics or `_`")]
    Invalid(String),
}

/// A commuting indeterminate such as `x` or `y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(String);

impl Letter {
    pub fn new(name: impl Into<String>) -> Result<Self, LetterError> {
        let name = name.into();
        let mut chars = name.chars();
        match chars.next() {
            None => Err(LetterError::Empty),
            Some(c) if c.is_alphabetic() && chars.all(|c| c.is_alphanumeric() || c == '_') => {
                Ok(Letter(name))
            }
            Some(_) => Err(LetterError::Invalid(name)),
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a letter from a name known to be valid. Panics otherwise.
pub fn letter(name: &str) -> Letter {
    Letter::new(name).expect("invalid letter name")
}

/// A power product of letters. The empty monomial is the constant `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: BTreeMap<Letter, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_letter(letter: Letter) -> Self {
        Self::power(letter, 1)
    }

    pub fn power(letter: Letter, exponent: u32) -> Self {
        let mut exponents = BTreeMap::new();
        if exponent > 0 {
            exponents.insert(letter, exponent);
        }
        Monomial { exponents }
    }

    /// Builds a monomial from `(letter, exponent)` pairs; repeated letters accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (Letter, u32)>>(pairs: I) -> Self {
        let mut exponents = BTreeMap::new();
        for (l, e) in pairs {
            if e > 0 {
                *exponents.entry(l).or_insert(0) += e;
            }
        }
        Monomial { exponents }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, letter: &Letter) -> u32 {
        self.exponents.get(letter).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    /// Letters with nonzero exponent, in name order.
    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.exponents.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, u32)> {
        self.exponents.iter().map(|(l, &e)| (l, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (l, &e) in &other.exponents {
            *exponents.entry(l.clone()).or_insert(0) += e;
        }
        Monomial { exponents }
    }

    /// Lowers the exponent of `letter` by one. Returns `None` when it is absent.
    pub fn without_one(&self, letter: &Letter) -> Option<Monomial> {
        let e = self.exponent(letter);
        if e == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        if e == 1 {
            exponents.remove(letter);
        } else {
            exponents.insert(letter.clone(), e - 1);
        }
        Some(Monomial { exponents })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let letters: BTreeSet<&Letter> = self.exponents.keys().chain(other.exponents.keys()).collect();
            for l in letters {
                // larger exponent of an earlier letter sorts first
                match other.exponent(l).cmp(&self.exponent(l)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (l, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_letter(letter: Letter) -> Self {
        Self::term(1, Monomial::from_letter(letter))
    }

    pub fn term(c: impl Into<BigInt>, monomial: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.terms.keys().flat_map(|m| m.letters().cloned()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::term(1, m)
    }
}

impl From<Letter> for Polynomial {
    fn from(l: Letter) -> Self {
        Polynomial::from_letter(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        letter("x").into()
    }

    fn y() -> Polynomial {
        letter("y").into()
    }

    fn mono(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(l, e)| (letter(l), e)))
    }

    fn poly(terms: &[(i64, &[(&str, u32)])]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|&(c, m)| (mono(m), BigInt::from(c))))
    }

    #[test]
    fn letter_validation() {
        assert!(Letter::new("x").is_ok());
        assert!(Letter::new("x_2").is_ok());
        assert_eq!(Letter::new(""), Err(LetterError::Empty));
        assert!(Letter::new("2x").is_err());
        assert!(Letter::new("x-y").is_err());
    }

    #[test]
    fn add_disjoint_and_cancel() {
        assert_eq!((&x() + &y()).to_string(), "x + y");
        let p = poly(&[(1, &[("x", 1), ("y", 3)])]);
        assert!((&p + &(-&p)).is_zero());
        assert_eq!((&p - &p).to_string(), "0");
    }

    #[test]
    fn add_merges_like_terms() {
        let p = poly(&[(1, &[("x", 4), ("y", 1)]), (1, &[("x", 3), ("y", 2)])]);
        let q = poly(&[(1, &[("x", 3), ("y", 2)])]);
        assert_eq!((&p + &q).to_string(), "x^4*y + 2*x^3*y^2");
    }

    #[test]
    fn mul_examples() {
        let xy = poly(&[(1, &[("x", 1), ("y", 1)])]);
        let s = poly(&[(1, &[("x", 2)]), (1, &[("y", 2)])]);
        assert_eq!((&xy * &s).to_string(), "x^3*y + x*y^3");
        let q = poly(&[(1, &[("x", 4)]), (6, &[("x", 2), ("y", 2)]), (1, &[("y", 4)])]);
        assert_eq!((&xy * &q).to_string(), "x^5*y + 6*x^3*y^3 + x*y^5");
        assert_eq!(&Polynomial::one() * &q, q);
    }

    #[test]
    fn coefficient_lookup() {
        let p = poly(&[(1, &[("x", 4), ("y", 1)]), (2, &[("x", 3), ("y", 2)])]);
        assert_eq!(p.coefficient(&mono(&[("x", 3), ("y", 2)])), BigInt::from(2));
        assert_eq!(p.coefficient(&mono(&[("x", 1)])), BigInt::zero());
        // x(y + 3y^2 + y^3)
        let d3 = &x() * &(&(&y() + &poly(&[(3, &[("y", 2)])])) + &y().pow(3));
        assert_eq!(d3.coefficient(&mono(&[("x", 1), ("y", 2)])), BigInt::from(3));
    }

    #[test]
    fn rendering() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
        assert_eq!(poly(&[(-1, &[("x", 1)]), (3, &[])]).to_string(), "3 - x");
        assert_eq!(poly(&[(-2, &[])]).to_string(), "-2");
        assert_eq!((&x() * &y()).pow(2).to_string(), "x^2*y^2");
    }

    #[test]
    fn canonical_form_holds() {
        let p = poly(&[(2, &[("x", 0), ("y", 1)]), (-2, &[("y", 1)])]);
        assert!(p.is_zero());
        let m = mono(&[("x", 0), ("y", 2)]);
        assert_eq!(m.letters().count(), 1);
        assert_eq!(m, mono(&[("y", 2)]));
    }

    #[test]
    fn graded_order() {
        let a = mono(&[("x", 4), ("y", 1)]);
        let b = mono(&[("x", 3), ("y", 2)]);
        let c = mono(&[("x", 1)]);
        assert!(a < b);
        assert!(c < a);
        assert!(Monomial::one() < c);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = &x() + &y();
        let mut acc = Polynomial::one();
        for e in 0..6 {
            assert_eq!(p.pow(e), acc);
            acc = &acc * &p;
        }
    }
}
