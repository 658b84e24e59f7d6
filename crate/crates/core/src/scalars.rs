//! Exact scalars in `Q(i)[pi]`.
//!
//! `pi` is kept as a formal variable: because it is transcendental over
//! `Q(i)`, two scalars are equal exactly when they agree degree by degree.
//! Only non-negative powers of `pi` are representable, so division is
//! restricted to monomial divisors (see [`ExactScalar::div_monomial`]).

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `re + i*im`. Components are always in lowest terms
/// with a positive denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(v)),
            BigRational::zero(),
        )
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::new(BigRational::from_integer(v), BigRational::zero())
    }

    pub fn from_rational(v: BigRational) -> Self {
        Self::new(v, BigRational::zero())
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `i^k`, reduced mod 4.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::from_integer(1),
            1 => Self::i(),
            2 => Self::from_integer(-1),
            _ => -Self::i(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// The real rational value, if the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.im.is_zero().then_some(&self.re)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    /// `3`, `-1/2·i`, `(1/2 + 3·i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => fmt_imag(f, &self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} ", self.re, sign)?;
                fmt_imag(f, &self.im.abs())?;
                write!(f, ")")
            }
        }
    }
}

fn fmt_imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im).is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{}·i", im)
    }
}

/// An element of `Q(i)[pi]`, stored sparsely by `pi`-degree with no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<u32, GaussianRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GaussianRational::one(), 0)
    }

    pub fn integer(v: i64) -> Self {
        Self::monomial(GaussianRational::from_integer(v), 0)
    }

    pub fn from_gaussian(q: GaussianRational) -> Self {
        Self::monomial(q, 0)
    }

    /// `coeff * pi^degree`.
    pub fn monomial(coeff: GaussianRational, degree: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Self { terms }
    }

    /// Builds a scalar from `(degree, coefficient)` pairs, summing repeated
    /// degrees and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, GaussianRational)>,
    {
        let mut out = Self::zero();
        for (d, c) in terms {
            out.add_term(d, &c);
        }
        out
    }

    pub fn pi_pow(k: u32) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    /// `(2*pi*i)^k`: a single term of degree `k` with coefficient `(2i)^k`.
    pub fn two_pi_i_pow(k: u32) -> Self {
        let two_i = GaussianRational::new(BigRational::zero(), BigRational::from_integer(2.into()));
        Self::monomial(two_i.pow(k), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussianRational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `pi^degree` (zero if absent).
    pub fn coefficient(&self, degree: u32) -> GaussianRational {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    /// `Some((degree, coeff))` when the scalar is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(u32, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(d, c)| (*d, c))
        } else {
            None
        }
    }

    /// The value as a Gaussian rational, if it has no positive `pi`-degree.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, degree: u32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&degree) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, sum);
        }
    }

    pub fn scale(&self, q: &GaussianRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    /// Divides by the monomial `q * pi^d`.
    ///
    /// Fails with [`Error::DegreeUnderflow`] if some term has degree below
    /// `d`, since negative powers of `pi` are not representable.
    pub fn div_monomial(&self, q: &GaussianRational, d: u32) -> Result<Self> {
        let inv = q.inv()?;
        let mut terms = BTreeMap::new();
        for (deg, c) in &self.terms {
            if *deg < d {
                return Err(Error::DegreeUnderflow {
                    found: *deg,
                    divisor: d,
                });
            }
            terms.insert(deg - d, c * &inv);
        }
        Ok(Self { terms })
    }

    /// Returns `Some(s)` with `s = ±1` when `self == s * other`. Two zeros
    /// compare with sign `+1`.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == -other {
            Some(-1)
        } else {
            None
        }
    }

    /// Approximate complex value, substituting `pi` at double precision.
    pub fn to_float(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (d, c) in &self.terms {
            let mut p = 1.0_f64;
            for _ in 0..*d {
                p *= core::f64::consts::PI;
            }
            acc += c.to_complex() * p;
        }
        acc
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (d, c) in &rhs.terms {
            self.add_term(*d, c);
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, &(ca * cb));
            }
        }
        out
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> Self {
        -&self
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl From<GaussianRational> for ExactScalar {
    fn from(q: GaussianRational) -> Self {
        Self::from_gaussian(q)
    }
}

impl fmt::Display for ExactScalar {
    /// Terms in increasing `pi`-degree, e.g. `-8·i·π^3` or `3 + 1/2·π`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *d {
                0 => write!(f, "{}", c)?,
                _ => {
                    if c.is_one() {
                        write!(f, "π")?;
                    } else if (-c).is_one() {
                        write!(f, "-π")?;
                    } else {
                        write!(f, "{}·π", c)?;
                    }
                    if *d > 1 {
                        write!(f, "^{}", d)?;
                    }
                }
            }
        }
        Ok(())
    }
}
