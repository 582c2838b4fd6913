//! Exact integer Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Sparse map exponent → coefficient with no stored zeros. Serializes as a
/// JSON object keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// q + q⁻¹.
    pub fn loop_value() -> Self {
        Self::from_terms([(1, 1), (1, -1)])
    }

    /// From `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (c * k, e)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitutes `x ↦ x^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (c, e * k)))
    }

    /// Whether every exponent is even.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_lo, d_hi) = (divisor.min_exp()?, divisor.max_exp()?);
        let d_lead = divisor.coeff(d_lo);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let (Some(lo), Some(hi)) = (rem.min_exp(), rem.max_exp()) {
            if hi - lo < d_hi - d_lo {
                return None;
            }
            let c = rem.coeff(lo);
            if c % d_lead != 0 {
                return None;
            }
            let t = Self::monomial(c / d_lead, lo - d_lo);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Text form in variable `var`, e.g. `q^-2 + 1 + 2*q^3`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let power = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            match (mag, power.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&power),
                (_, false) => out.push_str(&format!("{mag}*{power}")),
            }
        }
        out
    }

    /// Parses the text form written by [`to_text`](Self::to_text).
    pub fn parse(text: &str, var: &str) -> Option<Self> {
        let s: String = text.split_whitespace().collect();
        if s == "0" {
            return Some(Self::zero());
        }
        // split before every sign that does not follow '^'
        let bytes = s.as_bytes();
        let mut cuts = vec![0];
        for i in 1..bytes.len() {
            if matches!(bytes[i], b'+' | b'-') && bytes[i - 1] != b'^' {
                cuts.push(i);
            }
        }
        cuts.push(bytes.len());
        let mut p = Self::zero();
        for (k, w) in cuts.windows(2).enumerate() {
            let mut term = &s[w[0]..w[1]];
            let neg = term.starts_with('-');
            if neg || (k > 0 && term.starts_with('+')) {
                term = &term[1..];
            }
            let (coeff, power) = match term.split_once('*') {
                Some((c, pw)) => (c.parse::<i64>().ok()?, Some(pw)),
                None if term.starts_with(var) => (1, Some(term)),
                None => (term.parse::<i64>().ok()?, None),
            };
            let exp = match power {
                None => 0,
                Some(pw) => {
                    let after = pw.strip_prefix(var)?;
                    if after.is_empty() {
                        1
                    } else {
                        after.strip_prefix('^')?.parse().ok()?
                    }
                }
            };
            p.add_term(if neg { -coeff } else { coeff }, exp);
        }
        Some(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("q"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i32)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[(1, -2), (1, 0), (2, 3)]).to_text("q"), "q^-2 + 1 + 2*q^3");
        assert_eq!(p(&[(-1, -1), (-3, 1)]).to_text("q"), "-q^-1 - 3*q");
        assert_eq!(LaurentPolynomial::zero().to_text("a"), "0");
        assert_eq!(p(&[(-2, 0)]).to_text("q"), "-2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["q^-2 + 1 + 2*q^3", "-q^-1 - 3*q", "0", "-2", "q^-1 + q", "a^-4 - a^4"] {
            let var = if s.contains('a') { "a" } else { "q" };
            assert_eq!(LaurentPolynomial::parse(s, var).unwrap().to_text(var), s);
        }
        assert!(LaurentPolynomial::parse("q^", "q").is_none());
    }

    #[test]
    fn json_map_form() {
        let json = serde_json::to_string(&p(&[(1, -2), (2, 3)])).unwrap();
        assert_eq!(json, r#"{"-2":1,"3":2}"#);
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(&[(1, -2), (2, 3)]));
    }

    #[test]
    fn exact_division() {
        let l = LaurentPolynomial::loop_value();
        let x = p(&[(1, 1), (1, 3), (1, 5), (-1, 9)]);
        let q = x.div_exact(&l).unwrap();
        assert_eq!(&q * &l, x);
        assert!(p(&[(1, 0)]).div_exact(&l).is_none());
        assert!(p(&[(1, 0), (1, 1)]).div_exact(&l).is_none());
        assert_eq!(LaurentPolynomial::zero().div_exact(&l), Some(LaurentPolynomial::zero()));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        proptest::collection::vec((-5i64..=5, -6i32..=6), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(LaurentPolynomial::parse(&a.to_text("q"), "q"), Some(a));
        }
    }
}
