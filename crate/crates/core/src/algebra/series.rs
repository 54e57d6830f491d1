use std::ops::{Add, Mul, Neg, Sub};

use super::poly::SparsePoly;
use crate::error::{Error, Result};

/// Polynomial in `x` with [`SparsePoly`] coefficients; index `j` holds the coefficient of `x^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPoly(Vec<SparsePoly>);

impl XPoly {
    pub fn new(mut coeffs: Vec<SparsePoly>) -> Self {
        while coeffs.last().is_some_and(SparsePoly::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(SparsePoly::one())
    }

    pub fn constant(c: SparsePoly) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::term(SparsePoly::one(), 1)
    }

    pub fn term(c: SparsePoly, j: usize) -> Self {
        let mut coeffs = vec![SparsePoly::zero(); j];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// Sum of `c q^a t^b x^j` over `(c, a, b, j)`.
    pub fn qtx(terms: &[(i64, u32, u32, usize)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(c, a, b, j)| {
            acc + Self::term(SparsePoly::monomial(c, [a, b, 0]), j)
        })
    }

    /// Polynomial with integer coefficients `c_0 + c_1 x + ...`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| SparsePoly::constant(c)).collect())
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.0
    }

    pub fn coeff(&self, j: usize) -> SparsePoly {
        self.0.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let len = self.0.len().max(other.0.len());
        let coeffs = (0..len)
            .map(|j| self.coeff(j).checked_add(&other.coeff(j)))
            .collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_scale(&SparsePoly::constant(-1))?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![SparsePoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(Self::new(coeffs))
    }

    pub fn checked_scale(&self, c: &SparsePoly) -> Result<Self> {
        Ok(Self::new(
            self.0.iter().map(|a| a.checked_mul(c)).collect::<Result<_>>()?,
        ))
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    pub fn substitute(&self, q: Option<i64>, t: Option<i64>, r: Option<i64>) -> Result<Self> {
        Ok(Self::new(
            self.0
                .iter()
                .map(|c| c.substitute(q, t, r))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        self.checked_pow(k).expect("polynomial coefficient overflow")
    }
}

impl Add for XPoly {
    type Output = XPoly;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Sub for XPoly {
    type Output = XPoly;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Mul for XPoly {
    type Output = XPoly;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("polynomial coefficient overflow")
    }
}

impl Neg for XPoly {
    type Output = XPoly;

    fn neg(self) -> Self {
        XPoly::zero() - self
    }
}

/// Power series in `x` known up to and including `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<SparsePoly>,
}

impl TruncatedSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &SparsePoly {
        &self.coeffs[j]
    }

    /// Integer coefficients, when every coefficient is constant.
    pub fn integers(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(SparsePoly::as_constant).collect()
    }
}

/// A quotient of two [`XPoly`] values whose denominator has constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    num: XPoly,
    den: XPoly,
}

impl RationalGF {
    /// Builds `num / den`; a denominator with constant term `-1` is negated together with the numerator.
    pub fn new(num: XPoly, den: XPoly) -> Result<Self> {
        match den.coeff(0).as_constant() {
            Some(1) => Ok(Self { num, den }),
            Some(-1) => {
                let flip = SparsePoly::constant(-1);
                Ok(Self {
                    num: num.checked_scale(&flip)?,
                    den: den.checked_scale(&flip)?,
                })
            }
            _ => Err(Error::BadDenominator(den.coeff(0).to_string())),
        }
    }

    pub fn polynomial(num: XPoly) -> Self {
        Self {
            num,
            den: XPoly::one(),
        }
    }

    pub fn numerator(&self) -> &XPoly {
        &self.num
    }

    pub fn denominator(&self) -> &XPoly {
        &self.den
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> Result<bool> {
        Ok(self.num.checked_mul(&other.den)? == other.num.checked_mul(&self.den)?)
    }

    pub fn substitute(&self, q: Option<i64>, t: Option<i64>, r: Option<i64>) -> Result<Self> {
        Self::new(self.num.substitute(q, t, r)?, self.den.substitute(q, t, r)?)
    }

    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        expand_rational(self, order)
    }
}

/// Coefficients of `g` through `x^order`, from `c_j = num_j - sum_{i>=1} den_i c_{j-i}`.
pub fn expand_rational(g: &RationalGF, order: usize) -> Result<TruncatedSeries> {
    let den = g.den.coeffs();
    let mut coeffs: Vec<SparsePoly> = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let mut c = g.num.coeff(j);
        for i in 1..den.len().min(j + 1) {
            c = c.checked_sub(&den[i].checked_mul(&coeffs[j - i])?)?;
        }
        coeffs.push(c);
    }
    Ok(TruncatedSeries { coeffs })
}

/// Shorthand for the monomial `q^a t^b`.
pub(crate) fn qt(a: u32, b: u32) -> SparsePoly {
    SparsePoly::monomial(1, [a, b, 0])
}
