use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponents of `(q, t, r)`.
pub type Exponents = [u32; 3];

/// Integer polynomial in `q`, `t`, `r` with checked `i64` coefficients.
///
/// Terms are kept in ascending lexicographic order of exponents and zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePoly {
    terms: BTreeMap<Exponents, i64>,
}

fn overflow() -> Error {
    Error::Overflow("polynomial coefficient")
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: i64, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::monomial(1, [1, 0, 0])
    }

    pub fn t() -> Self {
        Self::monomial(1, [0, 1, 0])
    }

    pub fn r() -> Self {
        Self::monomial(1, [0, 0, 1])
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, i64)>>(terms: I) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
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

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, e: Exponents) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&[0, 0, 0]).copied(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or_else(overflow)?;
        if *slot == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.checked_neg().ok_or_else(overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                out.add_term(e, ca.checked_mul(cb).ok_or_else(overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (e, v) in self.terms() {
            out.add_term(e, v.checked_mul(c).ok_or_else(overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Multiplies by `q^dq t^dt r^dr`.
    pub fn shift(&self, by: Exponents) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + by[0], e[1] + by[1], e[2] + by[2]], *c))
                .collect(),
        }
    }

    /// Divides by `q^dq t^dt r^dr`, failing if some term is not divisible.
    pub fn unshift(&self, by: Exponents) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            if (0..3).any(|i| e[i] < by[i]) {
                return Err(Error::InexactDivision);
            }
            terms.insert([e[0] - by[0], e[1] - by[1], e[2] - by[2]], c);
        }
        Ok(Self { terms })
    }

    /// Exact division by `divisor`, by long division in lexicographic order.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (&lead_e, &lead_c) = divisor.terms.last_key_value().ok_or(Error::InexactDivision)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&e, &c)) = rem.terms.last_key_value() {
            if (0..3).any(|i| e[i] < lead_e[i]) || c % lead_c != 0 {
                return Err(Error::InexactDivision);
            }
            let qe = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let step = Self::monomial(c / lead_c, qe);
            rem = rem.checked_sub(&step.checked_mul(divisor)?)?;
            quot.add_term(qe, c / lead_c)?;
        }
        Ok(quot)
    }

    /// Substitutes integer values for any subset of the variables.
    pub fn substitute(&self, q: Option<i64>, t: Option<i64>, r: Option<i64>) -> Result<Self> {
        let vals = [q, t, r];
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            let mut coeff = c;
            let mut rest = e;
            for i in 0..3 {
                if let Some(v) = vals[i] {
                    let p = v.checked_pow(e[i]).ok_or_else(overflow)?;
                    coeff = coeff.checked_mul(p).ok_or_else(overflow)?;
                    rest[i] = 0;
                }
            }
            out.add_term(rest, coeff)?;
        }
        Ok(out)
    }

    pub fn eval(&self, q: i64, t: i64, r: i64) -> Result<i64> {
        Ok(self
            .substitute(Some(q), Some(t), Some(r))?
            .as_constant()
            .expect("all variables substituted"))
    }
}

impl From<i64> for SparsePoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> Self {
        self.checked_scale(-1).expect("polynomial coefficient overflow")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            let constant = e == [0, 0, 0];
            if mag != 1 || constant {
                write!(f, "{mag}")?;
            }
            for (var, k) in ['q', 't', 'r'].iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SparsePoly {
    type Err = Error;

    /// Parses sums of terms such as `2qt^3 - q^2t^2 + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Self::zero();
        let chars: Vec<char> = compact.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected + or -"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if i > start {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse::<i64>()
                    .map_err(|_| bad("coefficient too large"))?
            } else {
                1
            };
            let mut e = [0u32; 3];
            let mut saw_var = false;
            while i < chars.len() && matches!(chars[i], 'q' | 't' | 'r') {
                let slot = match chars[i] {
                    'q' => 0,
                    't' => 1,
                    _ => 2,
                };
                i += 1;
                let mut k = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(bad("missing exponent"));
                    }
                    k = chars[ds..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| bad("exponent too large"))?;
                }
                e[slot] += k;
                saw_var = true;
            }
            if i == start && !saw_var {
                return Err(bad("empty term"));
            }
            coeff *= sign;
            out.add_term(e, coeff)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = poly("2qt^3 + q^2t^2");
        assert_eq!(p.coeff([1, 3, 0]), 2);
        assert_eq!(p.coeff([2, 2, 0]), 1);
        assert_eq!(p.to_string(), "2qt^3 + q^2t^2");
        assert_eq!(poly("-t + 1 - 3r^2").to_string(), "1 - 3r^2 - t");
        assert_eq!(poly("q - q"), SparsePoly::zero());
        assert!("2x".parse::<SparsePoly>().is_err());
        assert!("q^".parse::<SparsePoly>().is_err());
    }

    #[test]
    fn geometric_division() {
        let t = SparsePoly::t();
        let one = SparsePoly::one();
        for k in 0..8 {
            let num = t.checked_pow(k).unwrap() - one.clone();
            let quot = num.div_exact(&(t.clone() - one.clone())).unwrap();
            let expected = (0..k).fold(SparsePoly::zero(), |acc, j| acc + t.checked_pow(j).unwrap());
            assert_eq!(quot, expected);
        }
        assert_eq!(poly("t^2 + 1").div_exact(&poly("t - 1")), Err(Error::InexactDivision));
    }

    #[test]
    fn overflow_is_reported() {
        let big = SparsePoly::constant(i64::MAX);
        assert!(big.checked_add(&SparsePoly::one()).is_err());
        assert!(big.checked_mul(&SparsePoly::constant(2)).is_err());
    }

    #[test]
    fn substitution() {
        let p = poly("2qt^3 + q^2t^2 + r");
        assert_eq!(p.eval(1, 1, 1).unwrap(), 4);
        assert_eq!(p.substitute(Some(1), None, Some(0)).unwrap(), poly("2t^3 + t^2"));
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..5), 0..5).prop_map(|ts| {
            SparsePoly::from_terms(ts.into_iter().map(|((a, b, c), k)| ([a, b, c], k))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!((a.clone() - b.clone()) + b.clone(), a.clone());
        }

        #[test]
        fn division_undoes_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((a.clone() * b.clone()).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn display_round_trips(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<SparsePoly>().unwrap(), a);
        }
    }
}
