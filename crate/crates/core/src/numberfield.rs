//! Real algebraic number fields F = Q(delta) presented by a monic irreducible
//! integer polynomial together with a rational interval isolating one real
//! root. Elements are rational coordinate vectors over the power basis
//! {1, delta, ..., delta^(n-1)}; all arithmetic is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactmath::matrix::RationalMatrix;
use crate::exactmath::minpoly::minimal_polynomial_of_matrix;
use crate::exactmath::poly::{rational_roots, IntPolynomial, RatPoly};
use crate::exactmath::sturm::sturm_real_root_count;
use crate::Rational;

/// Embedding counts of the field: r1 real embeddings and r2 conjugate pairs,
/// so r1 + 2*r2 = degree. The unit rank is r1 + r2 - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub r1: usize,
    pub r2: usize,
}

impl Signature {
    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }
}

struct FieldRepr {
    min_poly: IntPolynomial,
    root_interval: (Rational, Rational),
    signature: OnceLock<Signature>,
}

/// A validated real algebraic number field. Cheap to clone and share; field
/// identity is the presentation (minimal polynomial plus isolating interval).
#[derive(Clone)]
pub struct NumberField {
    repr: Arc<FieldRepr>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}
impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q(\u{3b4}) with \u{3b4} the root of {} in [{}, {}]",
            self.repr.min_poly, self.repr.root_interval.0, self.repr.root_interval.1
        )
    }
}

/// Primes available for the degree >= 4 mod-p irreducibility witness search.
const WITNESS_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Coefficient box for the bounded quadratic-factor search on degree >= 4
/// polynomials (the linear coefficient ranges over [-QUAD_FACTOR_BOUND,
/// QUAD_FACTOR_BOUND]; the constant ranges over divisors of the constant
/// term).
const QUAD_FACTOR_BOUND: i64 = 100;

impl NumberField {
    /// Validate a field presentation. Irreducibility is decided completely
    /// for degree <= 3 by the rational-root test; for degree >= 4 a mod-p
    /// witness is searched over primes below 100 (skipping primes dividing
    /// the discriminant) and a bounded search for quadratic factors is used
    /// to detect reducibility, with an explicit refusal when neither side
    /// can decide.
    pub fn new(
        min_poly: IntPolynomial,
        root_interval: (Rational, Rational),
    ) -> Result<Self, Error> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 2 => d,
            _ => return Err(Error::DegreeTooSmall),
        };
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        check_irreducible(&min_poly, degree)?;
        if sturm_real_root_count(&min_poly, None)? == 0 {
            return Err(Error::NoRealRoot);
        }
        // irreducible of degree >= 2 has no rational roots, so the rational
        // endpoints cannot be roots and the interval count cannot fail
        let count =
            sturm_real_root_count(&min_poly, Some((&root_interval.0, &root_interval.1)))?;
        if count != 1 {
            return Err(Error::NotIsolating(count));
        }
        Ok(NumberField {
            repr: Arc::new(FieldRepr {
                min_poly,
                root_interval,
                signature: OnceLock::new(),
            }),
        })
    }

    pub fn degree(&self) -> usize {
        self.repr.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.repr.min_poly
    }

    pub fn root_interval(&self) -> (&Rational, &Rational) {
        (&self.repr.root_interval.0, &self.repr.root_interval.1)
    }

    /// (r1, r2) from the Sturm count of the minimal polynomial over all of R.
    pub fn signature(&self) -> Signature {
        *self.repr.signature.get_or_init(|| {
            let r1 = sturm_real_root_count(&self.repr.min_poly, None)
                .expect("validated minimal polynomial is nonzero");
            let n = self.degree();
            Signature {
                r1,
                r2: (n - r1) / 2,
            }
        })
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.min_poly == other.repr.min_poly
                && self.repr.root_interval == other.repr.root_interval)
    }

    pub fn element(&self, coords: Vec<Rational>) -> FieldElement {
        assert_eq!(
            coords.len(),
            self.degree(),
            "coordinate length must equal the field degree"
        );
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> FieldElement {
        self.element(
            coords
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_rational(&self, value: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = value;
        self.element(coords)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    /// The selected root delta as a field element.
    pub fn generator(&self) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[1] = Rational::one();
        self.element(coords)
    }
}

fn check_irreducible(p: &IntPolynomial, degree: usize) -> Result<(), Error> {
    let roots = rational_roots(p)?;
    if let Some(r) = roots.first() {
        return Err(Error::Reducible(format!("rational root {}", r)));
    }
    if degree <= 3 {
        return Ok(());
    }
    for q in WITNESS_PRIMES {
        if modp::is_irreducible_witness(p, q) {
            return Ok(());
        }
    }
    if let Some((a, b)) = quadratic_factor(p) {
        return Err(Error::Reducible(format!(
            "quadratic factor {}",
            IntPolynomial::new(vec![b, a, BigInt::one()])
        )));
    }
    Err(Error::IrreducibilityUndecided(degree))
}

/// Bounded search for a monic quadratic factor z^2 + a z + b over Z. The
/// constant b must divide the constant term of the (monic) input.
fn quadratic_factor(p: &IntPolynomial) -> Option<(BigInt, BigInt)> {
    let c0 = p.constant_term();
    if c0.is_zero() {
        return None; // zero constant was already caught as a rational root
    }
    for b in crate::exactmath::poly::divisors(&c0) {
        for b_signed in [b.clone(), -b.clone()] {
            for a in -QUAD_FACTOR_BOUND..=QUAD_FACTOR_BOUND {
                let cand = IntPolynomial::new(vec![
                    b_signed.clone(),
                    BigInt::from(a),
                    BigInt::one(),
                ]);
                let (_, rem) = p.div_rem_monic(&cand);
                if rem.is_zero() {
                    return Some((BigInt::from(a), b_signed));
                }
            }
        }
    }
    None
}

/// An element of a number field in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.coords_strings())
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn coords_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn require_same_field(&self, rhs: &FieldElement) -> Result<(), Error> {
        if self.field.same_field(&rhs.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.require_same_field(rhs)?;
        Ok(self.field.element(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.require_same_field(rhs)?;
        Ok(self.field.element(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.require_same_field(rhs)?;
        let n = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(self
            .field
            .element(reduce_mod_min_poly(prod, self.field.min_poly())))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = RatPoly::new(self.coords.clone());
        let m = RatPoly::from_int(self.field.min_poly());
        let (g, s, _) = RatPoly::extended_gcd(&a, &m);
        debug_assert_eq!(g.degree(), Some(0), "minimal polynomial is irreducible");
        let ginv = Rational::one() / g.leading().unwrap();
        let inv_poly = s.scale(&ginv);
        let mut coords = inv_poly.coeffs().to_vec();
        coords = reduce_mod_min_poly(coords, self.field.min_poly());
        Ok(self.field.element(coords))
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.require_same_field(rhs)?;
        self.try_mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, Error> {
        if e == 0 {
            return Ok(self.field.one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> FieldElement {
        self.field
            .element(self.coords.iter().map(|a| a * c).collect())
    }

    /// Multiplication-by-self matrix in the power basis, row convention:
    /// row k holds the coordinates of self * delta^k, so that
    /// coords(self * y) = coords(y) * M.
    pub fn mult_matrix(&self) -> RationalMatrix {
        let n = self.field.degree();
        let mp = self.field.min_poly();
        let mut rows: Vec<Rational> = Vec::with_capacity(n * n);
        let mut cur = self.coords.clone();
        rows.extend(cur.iter().cloned());
        for _ in 1..n {
            let mut shifted = Vec::with_capacity(cur.len() + 1);
            shifted.push(Rational::zero());
            shifted.extend(cur.iter().cloned());
            cur = reduce_mod_min_poly(shifted, mp);
            rows.extend(cur.iter().cloned());
        }
        RationalMatrix::new(n, n, rows)
    }

    /// Minimal polynomial over Q, as a primitive integer polynomial with
    /// positive leading coefficient.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        minimal_polynomial_of_matrix(&self.mult_matrix())
    }

    /// Field norm: determinant of the multiplication matrix.
    pub fn norm(&self) -> Rational {
        self.mult_matrix().det()
    }

    /// True iff the minimal polynomial is monic over Z with constant term +-1.
    pub fn is_algebraic_unit(&self) -> bool {
        let mp = self.minimal_polynomial();
        let c = mp.constant_term();
        mp.is_monic() && (c.is_one() || c == BigInt::from(-1))
    }

    /// Evaluate an integer polynomial at this element.
    pub fn eval_int_poly(&self, p: &IntPolynomial) -> FieldElement {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(Rational::from_integer(c.clone()));
        }
        acc
    }

    /// A rational interval of width at most `width` containing the real value
    /// of the element under the embedding selected by the field's root
    /// interval; computed by bisecting the root interval.
    pub fn approximate(&self, width: &Rational) -> (Rational, Rational) {
        assert!(width.is_positive(), "width must be positive");
        let mut iv = RootInterval::new(&self.field);
        loop {
            let (lo, hi) = eval_on_interval(&self.coords, &iv.lo, &iv.hi);
            if &hi - &lo <= *width {
                return (lo, hi);
            }
            iv.bisect(&self.field);
        }
    }

    /// Exact sign of the real value: -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_negative() { -1 } else { 1 };
        }
        let mut iv = RootInterval::new(&self.field);
        loop {
            let (lo, hi) = eval_on_interval(&self.coords, &iv.lo, &iv.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            iv.bisect(&self.field);
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let diff = self - &self.field.from_rational(r.clone());
        match diff.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("elements from the same field")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("elements from the same field")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("elements from the same field")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.scale(&-Rational::one())
    }
}

/// Fold coefficients of degree >= n back using the monic minimal polynomial.
fn reduce_mod_min_poly(mut c: Vec<Rational>, mp: &IntPolynomial) -> Vec<Rational> {
    let n = mp.degree().unwrap();
    while c.len() > n {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = c.len() - n;
        for j in 0..n {
            let m = mp.coeff(j);
            if !m.is_zero() {
                c[k + j] -= &top * Rational::from_integer(m);
            }
        }
    }
    c.resize(n, Rational::zero());
    c
}

struct RootInterval {
    lo: Rational,
    hi: Rational,
    sign_lo: i32,
}

impl RootInterval {
    fn new(field: &NumberField) -> Self {
        let (lo, hi) = field.root_interval();
        RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
            sign_lo: field.min_poly().sign_at(lo),
        }
    }

    fn bisect(&mut self, field: &NumberField) {
        let two = Rational::from_integer(BigInt::from(2));
        let mid = (&self.lo + &self.hi) / two;
        // irreducible of degree >= 2 has no rational roots, so the sign at a
        // rational midpoint is never zero
        let sm = field.min_poly().sign_at(&mid);
        debug_assert_ne!(sm, 0);
        if sm == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

/// Interval Horner evaluation of a polynomial with rational coefficients on
/// [lo, hi].
fn eval_on_interval(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc_lo = Rational::zero();
    let mut acc_hi = Rational::zero();
    for c in coeffs.iter().rev() {
        let (mlo, mhi) = interval_mul(&acc_lo, &acc_hi, lo, hi);
        acc_lo = mlo + c;
        acc_hi = mhi + c;
    }
    (acc_lo, acc_hi)
}

fn interval_mul(
    alo: &Rational,
    ahi: &Rational,
    blo: &Rational,
    bhi: &Rational,
) -> (Rational, Rational) {
    let products = [alo * blo, alo * bhi, ahi * blo, ahi * bhi];
    let mut min = products[0].clone();
    let mut max = products[0].clone();
    for p in &products[1..] {
        if p < &min {
            min = p.clone();
        }
        if p > &max {
            max = p.clone();
        }
    }
    (min, max)
}

/// Polynomial arithmetic over F_p for the irreducibility witness search.
mod modp {
    use super::IntPolynomial;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn reduce(p: &IntPolynomial, q: u64) -> Vec<u64> {
        let qi = BigInt::from(q);
        let mut out: Vec<u64> = p
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &qi) + &qi) % &qi;
                r.to_u64().unwrap()
            })
            .collect();
        trim(&mut out);
        out
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u64, q: u64) -> u64 {
        pow_mod(a, q - 2, q)
    }

    fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
        let mut acc = 1u64;
        b %= q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        acc
    }

    fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        assert!(!b.is_empty());
        let mut r = a.to_vec();
        let binv = inv_mod(*b.last().unwrap(), q);
        while r.len() >= b.len() {
            let c = *r.last().unwrap() * binv % q;
            let k = r.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let sub = c * bj % q;
                r[k + j] = (r[k + j] + q - sub) % q;
            }
            trim(&mut r);
        }
        r
    }

    fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = rem(&a, &b, q);
            a = b;
            b = r;
        }
        a
    }

    fn mul_mod(a: &[u64], b: &[u64], f: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % q;
            }
        }
        trim(&mut out);
        rem(&out, f, q)
    }

    fn pow_poly_mod(t: &[u64], mut e: u64, f: &[u64], q: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = t.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, q);
            }
            e >>= 1;
            if e > 0 {
                base = mul_mod(&base, &base, f, q);
            }
        }
        acc
    }

    fn derivative(a: &[u64], q: u64) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as u64 % q) % q)
            .collect();
        trim(&mut out);
        out
    }

    fn prime_divisors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// True when `p mod q` is squarefree of full degree and irreducible over
    /// F_q, which certifies irreducibility of `p` over Q (p monic).
    pub fn is_irreducible_witness(p: &IntPolynomial, q: u64) -> bool {
        let n = p.degree().unwrap();
        let f = reduce(p, q);
        if f.len() != n + 1 {
            return false; // degree dropped mod q
        }
        // squarefree mod q <=> q does not divide the discriminant
        let fd = derivative(&f, q);
        if fd.is_empty() || gcd(&f, &fd, q).len() != 1 {
            return false;
        }
        let x = vec![0u64, 1];
        // z^(q^k) mod f for k = 1..n
        let mut t = rem(&x, &f, q);
        let checks: Vec<usize> = prime_divisors(n).iter().map(|d| n / d).collect();
        for k in 1..=n {
            t = pow_poly_mod(&t, q, &f, q);
            if checks.contains(&k) {
                // gcd(z^(q^k) - z, f) must be trivial
                let mut diff = t.clone();
                while diff.len() < 2 {
                    diff.push(0);
                }
                diff[1] = (diff[1] + q - 1) % q;
                trim(&mut diff);
                let g = if diff.is_empty() {
                    f.clone()
                } else {
                    gcd(&f, &diff, q)
                };
                if g.len() != 1 {
                    return false;
                }
            }
        }
        // z^(q^n) must equal z
        t == rem(&x, &f, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub(crate) fn sqrt3_field() -> NumberField {
        NumberField::new(
            IntPolynomial::from_i64(&[-3, 0, 1]),
            (rat(1, 1), rat(2, 1)),
        )
        .unwrap()
    }

    pub(crate) fn cbrt2_field() -> NumberField {
        NumberField::new(
            IntPolynomial::from_i64(&[-2, 0, 0, 1]),
            (rat(5, 4), rat(4, 3)),
        )
        .unwrap()
    }

    #[test]
    fn builds_the_two_reference_fields() {
        assert_eq!(sqrt3_field().degree(), 2);
        assert_eq!(cbrt2_field().degree(), 3);
    }

    #[test]
    fn rejects_reducible_quadratic() {
        let err = NumberField::new(
            IntPolynomial::from_i64(&[-1, 0, 1]),
            (rat(0, 1), rat(3, 1)),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Reducible(_)));
    }

    #[test]
    fn rejects_non_isolating_interval() {
        let err = NumberField::new(
            IntPolynomial::from_i64(&[-3, 0, 1]),
            (rat(-2, 1), rat(2, 1)),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotIsolating(2));
    }

    #[test]
    fn rejects_no_real_root() {
        let err = NumberField::new(
            IntPolynomial::from_i64(&[1, 0, 1]),
            (rat(0, 1), rat(1, 1)),
        )
        .unwrap_err();
        assert_eq!(err, Error::NoRealRoot);
    }

    #[test]
    fn quartic_gets_a_witness() {
        // z^4 - z - 1 is irreducible; a small prime witnesses it
        let f = NumberField::new(
            IntPolynomial::from_i64(&[-1, -1, 0, 0, 1]),
            (rat(1, 1), rat(2, 1)),
        )
        .unwrap();
        assert_eq!(f.signature(), Signature { r1: 2, r2: 1 });
        assert_eq!(f.signature().unit_rank(), 2);
    }

    #[test]
    fn undecided_when_no_witness_and_no_bounded_factor() {
        // z^4 + 1 is irreducible over Q but reducible mod every prime and has
        // no integer quadratic factor: the tool refuses rather than guesses
        let err = NumberField::new(
            IntPolynomial::from_i64(&[1, 0, 0, 0, 1]),
            (rat(0, 1), rat(1, 1)),
        )
        .unwrap_err();
        assert_eq!(err, Error::IrreducibilityUndecided(4));
        // a product of two irreducible cubics is just as invisible to both
        // the witness search and the quadratic-factor search
        let err = NumberField::new(
            IntPolynomial::from_i64(&[6, 0, 0, -5, 0, 0, 1]),
            (rat(1, 1), rat(2, 1)),
        )
        .unwrap_err();
        assert_eq!(err, Error::IrreducibilityUndecided(6));
    }

    #[test]
    fn quartic_biquadratic_factor_found() {
        // z^4 + 4 = (z^2 - 2z + 2)(z^2 + 2z + 2): no rational roots, never
        // irreducible mod any prime, caught by the quadratic-factor search
        let err = NumberField::new(
            IntPolynomial::from_i64(&[4, 0, 0, 0, 1]),
            (rat(0, 1), rat(1, 1)),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Reducible(_)));
    }

    #[test]
    fn norm_form_product_is_one() {
        let f = sqrt3_field();
        let a = f.element_from_i64(&[2, 1]); // 2 + sqrt3
        let b = f.element_from_i64(&[2, -1]); // 2 - sqrt3
        assert!((&a * &b).is_one());
    }

    #[test]
    fn cube_of_unit_in_cubic_field() {
        let f = cbrt2_field();
        let g = f.element_from_i64(&[-1, 1, 0]); // -1 + delta
        let cube = g.pow(3).unwrap();
        assert_eq!(cube, f.element_from_i64(&[1, 3, -3]));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let f = sqrt3_field();
        let a = f.element_from_i64(&[2, 1]);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(inv, f.element_from_i64(&[2, -1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = sqrt3_field();
        let a = f.one();
        assert_eq!(a.try_div(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn cross_field_arithmetic_is_an_error() {
        let a = sqrt3_field().one();
        let b = cbrt2_field().one();
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn minimal_polynomial_of_generator() {
        let f = sqrt3_field();
        assert_eq!(
            f.generator().minimal_polynomial(),
            IntPolynomial::from_i64(&[-3, 0, 1])
        );
    }

    #[test]
    fn minimal_polynomial_of_shifted_generator() {
        // oracle: (z - 2 - sqrt3)(z - 2 + sqrt3) = (z-2)^2 - 3 = z^2 - 4z + 1
        let zminus2 = IntPolynomial::from_i64(&[-2, 1]);
        let expected = &(&zminus2 * &zminus2) - &IntPolynomial::from_i64(&[3]);
        assert_eq!(expected, IntPolynomial::from_i64(&[1, -4, 1]));
        let f = sqrt3_field();
        let a = f.element_from_i64(&[2, 1]);
        assert_eq!(a.minimal_polynomial(), expected);
    }

    #[test]
    fn minimal_polynomial_of_cubic_unit_power() {
        let f = cbrt2_field();
        let x = f.element_from_i64(&[1, 3, -3]);
        let mp = x.minimal_polynomial();
        // oracle: evaluate the characteristic data by substitution
        assert!(x.eval_int_poly(&mp).is_zero());
        assert_eq!(mp.degree(), Some(3));
        assert_eq!(mp, IntPolynomial::from_i64(&[-1, 57, -3, 1]));
    }

    #[test]
    fn norm_of_samples() {
        let f = sqrt3_field();
        assert_eq!(f.one().norm(), rat(1, 1));
        assert_eq!(f.element_from_i64(&[2, 1]).norm(), rat(1, 1));
        assert_eq!(f.element_from_i64(&[0, 4]).norm(), rat(-48, 1));
    }

    #[test]
    fn unit_detection() {
        let f = sqrt3_field();
        assert!(f.element_from_i64(&[2, 1]).is_algebraic_unit());
        assert!(!f.element_from_i64(&[0, 4]).is_algebraic_unit());
        let c = cbrt2_field();
        assert!(c.element_from_i64(&[-1, 1, 0]).is_algebraic_unit());
    }

    #[test]
    fn signatures_of_reference_fields() {
        assert_eq!(sqrt3_field().signature(), Signature { r1: 2, r2: 0 });
        assert_eq!(sqrt3_field().signature().unit_rank(), 1);
        assert_eq!(cbrt2_field().signature(), Signature { r1: 1, r2: 1 });
        assert_eq!(cbrt2_field().signature().unit_rank(), 1);
    }

    #[test]
    fn approximate_sqrt3() {
        let f = sqrt3_field();
        let (lo, hi) = f.generator().approximate(&rat(1, 100));
        assert!(&hi - &lo <= rat(1, 100));
        // 1.732... lies inside
        assert!(lo <= rat(1732, 1000) && rat(1732, 1000) <= hi);
    }

    #[test]
    fn approximate_rational_is_degenerate() {
        let f = sqrt3_field();
        let (lo, hi) = f.one().approximate(&rat(1, 10));
        assert_eq!(lo, rat(1, 1));
        assert_eq!(hi, rat(1, 1));
    }

    #[test]
    fn approximate_shifted() {
        let f = sqrt3_field();
        let x = f.element_from_i64(&[2, 1]);
        let (lo, hi) = x.approximate(&rat(1, 100));
        assert!(lo <= rat(3732, 1000) && rat(3732, 1000) <= hi);
    }

    #[test]
    fn sign_determination() {
        let f = sqrt3_field();
        assert_eq!(f.element_from_i64(&[-1, 1]).sign(), 1); // sqrt3 - 1 > 0
        assert_eq!(f.element_from_i64(&[-2, 1]).sign(), -1); // sqrt3 - 2 < 0
        assert_eq!(f.zero().sign(), 0);
    }

    #[test]
    fn fields_and_elements_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<NumberField>();
        assert_send_sync::<FieldElement>();
    }

    #[test]
    fn degree_of_element_minimal_polynomial_divides_field_degree() {
        let f = cbrt2_field();
        let x = f.from_rational(rat(7, 2));
        assert_eq!(x.minimal_polynomial().degree(), Some(1));
        let y = f.generator();
        assert_eq!(y.minimal_polynomial().degree(), Some(3));
    }
}
