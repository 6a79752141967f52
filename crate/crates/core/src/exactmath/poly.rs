//! Univariate polynomials over Z and Q, coefficients stored by ascending
//! degree with a nonzero leading coefficient (the zero polynomial is the
//! empty list).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of z^k, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign_of(&self.eval_rational(x))
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and normalize the leading coefficient positive.
    pub fn primitive_positive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        IntPolynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Quotient and remainder for division by a monic divisor, staying in Z[z].
    pub fn div_rem_monic(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone();
            quot[k] = c.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}", mag)?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

pub(crate) fn sign_of(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Polynomial over Q, same ascending-coefficient representation. Internal
/// workhorse for Sturm chains, Krylov annihilators and field inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_int(p: &IntPolynomial) -> Self {
        RatPoly::new(
            p.coeffs()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); qlen];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &dl;
            quot[k] = c.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &c * dj;
                rem[k + j] -= t;
            }
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm via gcd.
    pub fn lcm(a: &RatPoly, b: &RatPoly) -> RatPoly {
        if a.is_zero() || b.is_zero() {
            return RatPoly::zero();
        }
        let g = RatPoly::gcd(a, b);
        let (q, r) = a.mul(b).div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Returns (g, s, t) with s·a + t·b = g.
    pub fn extended_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut s0 = RatPoly::one();
        let mut s1 = RatPoly::zero();
        let mut t0 = RatPoly::zero();
        let mut t1 = RatPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    /// Scale by a positive rational so that the result is a primitive integer
    /// polynomial. Signs of all coefficients are preserved.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let p = IntPolynomial::new(ints);
        let content = p.content();
        IntPolynomial::new(p.coeffs().iter().map(|c| c / &content).collect())
    }
}

/// All distinct rational roots of a nonzero integer polynomial, sorted
/// ascending, via the rational-root test over divisors of the constant and
/// leading coefficients.
pub fn rational_roots(p: &IntPolynomial) -> Result<Vec<Rational>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = p.primitive_positive();
    let mut coeffs = prim.coeffs().to_vec();
    let mut roots = BTreeSet::new();
    // strip z^k: each stripped factor contributes the root 0 once
    let first_nonzero = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if first_nonzero > 0 {
        roots.insert(Rational::zero());
        coeffs.drain(..first_nonzero);
    }
    let q = IntPolynomial::new(coeffs);
    if q.degree() == Some(0) {
        return Ok(roots.into_iter().collect());
    }
    let c0 = q.constant_term().abs();
    let lc = q.leading().unwrap().abs();
    for num in divisors(&c0) {
        for den in divisors(&lc) {
            for sgn in [1i32, -1] {
                let cand = Rational::new(BigInt::from(sgn) * &num, den.clone());
                if q.eval_rational(&cand).is_zero() {
                    roots.insert(cand);
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// Positive divisors of |n|, n nonzero, by trial division.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            small.push(i.clone());
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
