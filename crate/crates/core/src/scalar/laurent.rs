use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserialize, Deserializer, MapAccess, Visitor};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::hseries::HSeries;
use super::rational::{parse_rational, rat_int, rational_to_string, Rational};

/// A finite sum `c_1 q^{a_1} + ... + c_k q^{a_k}` with rational exponents and
/// rational coefficients.
///
/// Terms are sorted by exponent, exponents are distinct and no coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: Vec<(Rational, Rational)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    /// `c q^e`.
    pub fn monomial(c: Rational, e: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: Rational) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn q_pow_int(e: i64) -> Self {
        Self::q_pow(rat_int(e))
    }

    /// `(-q)^e` for an integer exponent.
    pub fn neg_q_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(rat_int(sign), rat_int(e))
    }

    /// `q - q^{-1}`.
    pub fn q_minus_q_inv() -> Self {
        Self::from_terms(vec![(rat_int(1), rat_int(1)), (rat_int(-1), rat_int(-1))])
    }

    /// Builds a scalar from `(exponent, coefficient)` pairs in any order;
    /// repeated exponents are summed and zeros dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut v: Vec<(Rational, Rational)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every stored exponent is zero (this includes the zero scalar).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    /// Coefficient of `q^0`.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Rational::zero())
    }

    pub fn coefficient(&self, exp: &Rational) -> Rational {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(exp))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e.clone(), c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Expands `q = e^hbar` through order `hbar^order`.
    pub fn expand_hbar(&self, order: usize) -> HSeries {
        let mut out = HSeries::zero(order);
        for (e, c) in &self.terms {
            out = &out + &HSeries::exp_scaled(e, order).scale(c);
        }
        out
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sgn = |c: &Rational| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), sgn(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + sgn(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), sgn(c))));
        Self { terms: out }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.merge(rhs, false)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.merge(rhs, true)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = self.merge(rhs, true);
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        match (self.terms.len(), rhs.terms.len()) {
            (0, _) | (_, 0) => Laurent::zero(),
            (1, _) => rhs.shift(&self.terms[0].0).scale(&self.terms[0].1),
            (_, 1) => self.shift(&rhs.terms[0].0).scale(&rhs.terms[0].1),
            _ => Laurent::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(e1, c1)| rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
            ),
        }
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{}", rational_to_string(&mag))?;
                continue;
            }
            if !unit {
                write!(f, "{}*", rational_to_string(&mag))?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else {
                write!(f, "q^({})", rational_to_string(e))?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Laurent {
    fn from(c: Rational) -> Self {
        Laurent::constant(c)
    }
}

/// Serialized as a JSON object mapping exponent strings to coefficient
/// strings, in increasing exponent order.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&rational_to_string(e), &rational_to_string(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Laurent;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to coefficient strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Laurent, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let e = parse_rational(&k).map_err(de::Error::custom)?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    terms.push((e, c));
                }
                Ok(Laurent::from_terms(terms))
            }
        }
        deserializer.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(e: i64) -> Laurent {
        Laurent::q_pow_int(e)
    }

    #[test]
    fn difference_of_squares() {
        let a = &q(1) - &q(-1);
        let b = &q(1) + &q(-1);
        assert_eq!(&a * &b, &q(2) - &q(-2));
    }

    #[test]
    fn half_exponents_add() {
        let h = Laurent::q_pow(rat(1, 2));
        assert_eq!(&h * &h, q(1));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = &q(1) - &q(-1);
        let b = &q(-1) - &q(1);
        let s = &a + &b;
        assert!(s.is_zero());
        assert!(s.terms().is_empty());
    }

    #[test]
    fn zero_tests() {
        assert!(Laurent::zero().is_zero());
        assert!((&q(1) - &q(1)).is_zero());
        assert!(!Laurent::q_pow(rat(2, 3)).is_zero());
    }

    #[test]
    fn neg_q_pow_signs() {
        assert_eq!(Laurent::neg_q_pow(0), Laurent::one());
        assert_eq!(Laurent::neg_q_pow(-1), -q(-1));
        assert_eq!(Laurent::neg_q_pow(2), q(2));
    }

    #[test]
    fn display_and_json() {
        let x = Laurent::from_terms(vec![
            (rat(1, 2), rat(2, 1)),
            (rat(-1, 1), rat(-1, 1)),
            (rat(0, 1), rat(1, 3)),
        ]);
        assert_eq!(x.to_string(), "-q^(-1) + 1/3 + 2*q^(1/2)");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"-1":"-1","0":"1/3","1/2":"2"}"#);
        let back: Laurent = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn invert_q_keeps_order() {
        let x = &q(2) + &Laurent::q_pow(rat(-1, 3));
        let y = x.invert_q();
        assert_eq!(y, &q(-2) + &Laurent::q_pow(rat(1, 3)));
        assert_eq!(y.invert_q(), x);
    }
}
