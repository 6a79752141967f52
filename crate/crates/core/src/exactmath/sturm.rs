//! Real root counting with Sturm sequences, exact arithmetic throughout.

use num_traits::Signed;

use crate::error::Error;
use crate::exactmath::poly::{IntPolynomial, RatPoly};
use crate::Rational;

/// Number of distinct real roots of `p`, restricted to the open interval when
/// one is given. Endpoints must not be roots.
pub fn sturm_real_root_count(
    p: &IntPolynomial,
    interval: Option<(&Rational, &Rational)>,
) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some((a, b)) = interval {
        if p.sign_at(a) == 0 || p.sign_at(b) == 0 {
            return Err(Error::EndpointIsRoot);
        }
        if a >= b {
            return Ok(0);
        }
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    let count = match interval {
        Some((a, b)) => {
            let va = variations(&chain, |q| q.sign_at(a));
            let vb = variations(&chain, |q| q.sign_at(b));
            va - vb
        }
        None => {
            let vneg = variations(&chain, sign_at_neg_infinity);
            let vpos = variations(&chain, sign_at_pos_infinity);
            vneg - vpos
        }
    };
    Ok(count)
}

/// Canonical Sturm chain. Every element is collapsed to a primitive integer
/// polynomial by a positive scalar, which leaves all sign evaluations intact.
fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.primitive_positive(), p.derivative().primitive_positive()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let a = RatPoly::from_int(&chain[n - 2]);
        let b = RatPoly::from_int(&chain[n - 1]);
        let (_, r) = a.div_rem(&b);
        if r.is_zero() {
            break;
        }
        let neg = r.scale(&-Rational::from_integer(1.into()));
        chain.push(neg.to_primitive_int());
    }
    chain
}

fn variations(chain: &[IntPolynomial], sign: impl Fn(&IntPolynomial) -> i32) -> usize {
    let signs: Vec<i32> = chain.iter().map(&sign).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] * w[1] < 0).count()
}

fn sign_at_pos_infinity(p: &IntPolynomial) -> i32 {
    match p.leading() {
        None => 0,
        Some(l) => {
            if l.is_negative() {
                -1
            } else {
                1
            }
        }
    }
}

fn sign_at_neg_infinity(p: &IntPolynomial) -> i32 {
    let s = sign_at_pos_infinity(p);
    match p.degree() {
        Some(d) if d % 2 == 1 => -s,
        _ => s,
    }
}
