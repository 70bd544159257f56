//! Integer and rational polynomials in one variable `t`, exact throughout.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratlin::Rat;

/// Polynomial with arbitrary-precision integer coefficients;
/// `coeffs[d]` is the coefficient of `t^d`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (d, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(d) + other.coeff(d);
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Integer polynomial divided by a positive integer denominator, kept
/// reduced (gcd of all numerator coefficients and the denominator is 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    num: IntPolynomial,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPolynomial, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut p = RatPoly { num, den };
        p.reduce();
        p
    }

    pub fn zero() -> Self {
        RatPoly {
            num: IntPolynomial::zero(),
            den: BigInt::one(),
        }
    }

    pub fn from_int(p: IntPolynomial) -> Self {
        RatPoly {
            num: p,
            den: BigInt::one(),
        }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = self.num.neg();
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.coeffs() {
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.num = IntPolynomial::from_coeffs(
                self.num.coeffs().iter().map(|c| c / &g).collect(),
            );
            self.den /= &g;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatPoly::new(
            self.num.scale(&other.den).add(&other.num.scale(&self.den)),
            &self.den * &other.den,
        )
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        RatPoly::new(self.num.scale(c), self.den.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatPoly::new(self.num.mul(&other.num), &self.den * &other.den)
    }

    /// The underlying integer polynomial, if the denominator divides out.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.num.eval_rat(x) / Rat::from_integer(self.den.clone())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

/// Binomial coefficient polynomial `C(t, k) = t(t-1)...(t-k+1) / k!`.
pub fn binomial_poly(k: usize) -> RatPoly {
    let mut num = IntPolynomial::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num = num.mul(&IntPolynomial::from_coeffs(vec![
            -BigInt::from(i),
            BigInt::one(),
        ]));
        den *= BigInt::from(i + 1);
    }
    RatPoly::new(num, den)
}

/// Integer binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
