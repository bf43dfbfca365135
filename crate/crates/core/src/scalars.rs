//! Exact scalar arithmetic: arbitrary-precision rationals and rational
//! functions in one formal parameter `r` with integer-coefficient
//! numerator/denominator kept in a unique canonical form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number (reduced fraction, positive denominator).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at r = {0}")]
    Pole(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// Parse a plain rational literal such as `5`, `-7/2`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    Rational::from_str(s.trim()).map_err(|e| ScalarError::Parse(format!("{s:?}: {e}")))
}

/// Dense univariate polynomial over the integers in the formal parameter `r`.
///
/// Coefficients are stored in ascending degree order with no trailing zeros;
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    /// The generator `r` itself.
    pub fn generator() -> Self {
        Polynomial::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs
            .get(degree)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Non-negative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division by a polynomial known to divide `self`.
    /// Panics if the division is not exact (internal invariant).
    fn div_exact(&self, d: &Polynomial) -> Polynomial {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut rem: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let dl = Rational::from_integer(d.leading().unwrap().clone());
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "inexact polynomial division");
        let mut q = vec![Rational::zero(); nd - dd + 1];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone() / dl.clone();
            q[k] = c.clone();
            for j in 0..=dd {
                let t = Rational::from_integer(d.coeff(j)) * &c;
                rem[k + j] -= t;
            }
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        Polynomial::new(
            q.into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "non-integer quotient in exact division");
                    c.to_integer()
                })
                .collect(),
        )
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Gcd in Z[r], including integer content, normalized to a positive leading
/// coefficient. `gcd(0, b)` is `b` up to sign.
fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    fn positive_leading(p: Polynomial) -> Polynomial {
        match p.leading() {
            Some(l) if l.is_negative() => -&p,
            _ => p,
        }
    }
    if a.is_zero() {
        return positive_leading(b.clone());
    }
    if b.is_zero() {
        return positive_leading(a.clone());
    }
    let content = a.content().gcd(&b.content());
    // Euclid over Q on the primitive parts, then take the primitive integer
    // representative of the last nonzero remainder.
    let to_rat = |p: &Polynomial| -> Vec<Rational> {
        p.coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    };
    let trim = |v: &mut Vec<Rational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    let mut f = to_rat(a);
    let mut g = to_rat(b);
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        // f mod g
        while f.len() >= g.len() && !f.is_empty() {
            let c = f.last().unwrap() / g.last().unwrap();
            let shift = f.len() - g.len();
            for (j, gc) in g.iter().enumerate() {
                let t = gc * &c;
                f[shift + j] -= t;
            }
            trim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
        trim(&mut g);
    }
    // Clear denominators and divide out the content of f.
    let den_lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let prim = Polynomial::new(ints);
    let pc = prim.content();
    let prim = if pc.is_zero() {
        Polynomial::one()
    } else {
        positive_leading(prim.div_exact(&Polynomial::constant(pc)))
    };
    &prim * &Polynomial::constant(content)
}

impl fmt::Display for Polynomial {
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
            let mag = c.abs();
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
            let unit = mag.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "r")?,
                (1, false) => write!(f, "{mag}*r")?,
                (_, true) => write!(f, "r^{d}")?,
                (_, false) => write!(f, "{mag}*r^{d}")?,
            }
        }
        Ok(())
    }
}

/// Quotient of two integer polynomials in the formal parameter `r`, kept in
/// the unique canonical form: numerator and denominator coprime in Z[r]
/// (including integer content), denominator nonzero with positive leading
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn from_polys(num: Polynomial, den: Polynomial) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        Self::canonical(num, Polynomial::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_poly(Polynomial::constant(BigInt::from(n)))
    }

    pub fn constant(c: Rational) -> Self {
        let (num, den) = c.into_raw();
        Self::canonical(Polynomial::constant(num), Polynomial::constant(den))
    }

    /// The formal parameter `r`.
    pub fn generator() -> Self {
        Self::from_poly(Polynomial::generator())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Polynomial::one() && self.den == Polynomial::one()
    }

    /// True when the denominator is 1, i.e. the value lies in Z[r].
    pub fn is_polynomial(&self) -> bool {
        self.den == Polynomial::one()
    }

    /// The value as an exact rational if it is degree-0 in `r`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.degree().is_none_or(|d| d == 0) && self.den.degree() == Some(0) {
            Some(Rational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, exp: i64) -> Result<RationalFunction, ScalarError> {
        let base = if exp < 0 {
            RationalFunction::one().checked_div(self)?
        } else {
            self.clone()
        };
        let mut out = RationalFunction::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Evaluate at `r = x`; errs at a pole of the canonical form.
    pub fn specialize(&self, x: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ScalarError::Pole(format!("{x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Render suitable for use as a left factor of `*` (adds parentheses when
    /// the numerator is a multi-term polynomial printed bare).
    pub fn factor_string(&self) -> String {
        let s = self.to_string();
        if self.is_polynomial() && self.num.term_count() > 1 {
            format!("({s})")
        } else {
            s
        }
    }

    /// True when the leading numerator coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.num.leading().is_some_and(|l| l.is_negative())
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        // Numerator: parenthesize multi-term sums.
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        // Denominator: safe bare forms are a positive integer, `r`, or `r^k`.
        let bare = self.den.term_count() == 1
            && (self.den.degree() == Some(0) || self.den.leading().is_some_and(|l| l.is_one()));
        if bare {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

impl FromStr for RationalFunction {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_scalar(s).map_err(|e| ScalarError::Parse(e.to_string()))
    }
}

/// The Hecke parameter: either the formal generator `r` or a concrete
/// rational value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parameter {
    Generic,
    Value(Rational),
}

impl Parameter {
    pub fn value(n: i64, d: i64) -> Self {
        Parameter::Value(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        match self {
            Parameter::Generic => RationalFunction::generator(),
            Parameter::Value(v) => RationalFunction::constant(v.clone()),
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Generic => write!(f, "generic"),
            Parameter::Value(v) => write!(f, "{v}"),
        }
    }
}
