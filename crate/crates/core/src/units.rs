//! Unit groups of rings of integers. Quadratic fundamental units are computed
//! from scratch by running the continued fraction of sqrt(d) (or (1+sqrt d)/2
//! when d = 1 mod 4) to the end of its period on exact integer state triples.
//! For higher degrees, generators are supplied by the caller, verified, and
//! marked as assumed fundamental in everything downstream.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactmath::poly::IntPolynomial;
use crate::numberfield::{FieldElement, NumberField};
use crate::Rational;

const DEFAULT_CF_STEP_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    SuppliedAssumedFundamental,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Computed => write!(f, "computed"),
            Provenance::SuppliedAssumedFundamental => write!(f, "supplied-assumed-fundamental"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGenerator {
    pub element: FieldElement,
    pub provenance: Provenance,
}

/// Z_2 x Z^rank description of the unit group of the ring of integers, with
/// one generator per Z factor. Torsion is always {1, -1} in a real field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    field: NumberField,
    generators: Vec<UnitGenerator>,
}

impl UnitGroup {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn torsion_order(&self) -> u32 {
        2
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[UnitGenerator] {
        &self.generators
    }

    /// True when every generator was computed from scratch rather than
    /// supplied.
    pub fn fully_computed(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.provenance == Provenance::Computed)
    }
}

/// Fundamental unit (> 1) of the ring of integers of Q(sqrt d) for squarefree
/// d > 1, as an element of the field presented by z^2 - d with the positive
/// root.
pub fn quadratic_fundamental_unit(d: u32) -> Result<FieldElement, Error> {
    quadratic_fundamental_unit_with_cap(d, DEFAULT_CF_STEP_CAP)
}

pub fn quadratic_fundamental_unit_with_cap(d: u32, cap: usize) -> Result<FieldElement, Error> {
    if d <= 1 {
        return Err(Error::OutOfRange(format!("d must exceed 1, got {}", d)));
    }
    if !is_squarefree_u64(d as u64) {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    let big_d = BigInt::from(d);
    let (u, v) = cf_fundamental_unit_coords(&big_d, cap)?;
    let field = canonical_sqrt_field(d);
    Ok(field.element(vec![u, v]))
}

/// Q(sqrt d) presented by z^2 - d and the interval [floor(sqrt d), floor + 1]
/// isolating the positive root.
pub fn canonical_sqrt_field(d: u32) -> NumberField {
    let s = BigInt::from(d).sqrt();
    let lo = Rational::from_integer(s.clone());
    let hi = Rational::from_integer(s + BigInt::one());
    NumberField::new(
        IntPolynomial::new(vec![-BigInt::from(d), BigInt::zero(), BigInt::one()]),
        (lo, hi),
    )
    .expect("z^2 - d is irreducible for squarefree d > 1")
}

/// Coordinates (u, v) over {1, sqrt d} of the fundamental unit > 1, for
/// squarefree d > 1. Uses the continued fraction of sqrt(d), or of
/// (1 + sqrt d)/2 when d = 1 mod 4 (the maximal order is then Z[(1+sqrt d)/2]).
fn cf_fundamental_unit_coords(d: &BigInt, cap: usize) -> Result<(Rational, Rational), Error> {
    let half_mode = (d % BigInt::from(4u32)) == BigInt::one();
    let (p0, q0) = if half_mode {
        (BigInt::one(), BigInt::from(2u32))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let sqrt_floor = d.sqrt();

    // complete quotient state (P + sqrt d)/Q; convergent window p_{k-1}, p_{k-2}
    let mut p_hist = (BigInt::one(), BigInt::zero()); // p_{-1}, p_{-2}
    let mut q_hist = (BigInt::zero(), BigInt::one()); // q_{-1}, q_{-2}
    let mut snapshots: Vec<(BigInt, BigInt, BigInt, BigInt)> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();

    let mut pp = p0;
    let mut qq = q0;
    for step in 0..cap {
        if let Some(&j) = seen.get(&(pp.clone(), qq.clone())) {
            let cj = &snapshots[j];
            let ck = (
                p_hist.0.clone(),
                p_hist.1.clone(),
                q_hist.0.clone(),
                q_hist.1.clone(),
            );
            return Ok(unit_from_cycle(cj, &ck, d, half_mode));
        }
        seen.insert((pp.clone(), qq.clone()), step);
        snapshots.push((
            p_hist.0.clone(),
            p_hist.1.clone(),
            q_hist.0.clone(),
            q_hist.1.clone(),
        ));

        debug_assert!(qq.is_positive());
        let a = (&pp + &sqrt_floor).div_floor(&qq);
        let p_next = &a * &qq - &pp;
        let q_next = (d - &p_next * &p_next) / &qq;
        p_hist = (&a * &p_hist.0 + &p_hist.1, p_hist.0);
        q_hist = (&a * &q_hist.0 + &q_hist.1, q_hist.0);
        pp = p_next;
        qq = q_next;
    }
    Err(Error::StepLimitExceeded(cap))
}

/// Extract the unit from a closed period: with C_j and C_k the convergent
/// matrices at the matching states, M = C_k C_j^{-1} fixes omega and the unit
/// is m21*omega + m22.
fn unit_from_cycle(
    cj: &(BigInt, BigInt, BigInt, BigInt),
    ck: &(BigInt, BigInt, BigInt, BigInt),
    d: &BigInt,
    half_mode: bool,
) -> (Rational, Rational) {
    let (ja, jb, jc, jd) = cj;
    let det = ja * jd - jb * jc;
    debug_assert!(det.abs().is_one());
    // inverse of [[ja, jb], [jc, jd]] times its determinant sign
    let (ia, ib, ic, id) = (jd * &det, -(jb * &det), -(jc * &det), ja * &det);
    let (_ka, _kb, kc, kd) = ck;
    let m21 = kc * &ia + kd * &ic;
    let m22 = kc * &ib + kd * &id;

    // omega = sqrt d or (1 + sqrt d)/2
    let (u, v) = if half_mode {
        let half = Rational::new(BigInt::one(), BigInt::from(2u32));
        (
            Rational::from_integer(m22) + Rational::from_integer(m21.clone()) * &half,
            Rational::from_integer(m21) * &half,
        )
    } else {
        (
            Rational::from_integer(m22),
            Rational::from_integer(m21),
        )
    };
    normalize_unit_gt_one(u, v, d)
}

/// Replace (u + v sqrt d) by the representative among +-x, +-1/x that
/// exceeds 1.
fn normalize_unit_gt_one(u: Rational, v: Rational, d: &BigInt) -> (Rational, Rational) {
    let norm = &u * &u - Rational::from_integer(d.clone()) * &v * &v;
    assert!(
        norm.clone().abs().is_one(),
        "period of a continued fraction always yields a unit"
    );
    let inv = |u: &Rational, v: &Rational| -> (Rational, Rational) {
        // (u - v sqrt d)/norm
        ((u / &norm), (-v / &norm))
    };
    let mut candidates = vec![(u.clone(), v.clone()), (-&u, -&v)];
    let (iu, iv) = inv(&u, &v);
    candidates.push((iu.clone(), iv.clone()));
    candidates.push((-&iu, -&iv));
    for (cu, cv) in candidates {
        if surd_sign(&(&cu - Rational::one()), &cv, d) > 0 {
            return (cu, cv);
        }
    }
    unreachable!("a unit other than +-1 has a representative > 1")
}

/// Sign of a + b sqrt(d) for d > 1 not a perfect square.
fn surd_sign(a: &Rational, b: &Rational, d: &BigInt) -> i32 {
    let sa = rational_sign(a);
    let sb = rational_sign(b);
    match (sa, sb) {
        (0, 0) => 0,
        (s, 0) => s,
        (0, s) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => {
            // compare a^2 against b^2 d; the larger magnitude wins
            let a2 = a * a;
            let b2d = b * b * Rational::from_integer(d.clone());
            if a2 == b2d {
                0
            } else if (a2 > b2d) == (sa > 0) {
                1
            } else {
                -1
            }
        }
    }
}

fn rational_sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Fundamental unit of the maximal order, embedded into an arbitrary
/// presentation of a real quadratic field.
pub fn fundamental_unit_in(field: &NumberField) -> Result<FieldElement, Error> {
    assert_eq!(field.degree(), 2, "computed units exist only for quadratics");
    let mp = field.min_poly();
    let b = mp.coeff(1);
    let c = mp.coeff(0);
    let disc = &b * &b - BigInt::from(4u32) * &c;
    assert!(
        disc.is_positive(),
        "validated real quadratic field has positive discriminant"
    );
    let disc_u64 = u64::try_from(disc.magnitude().clone()).map_err(|_| {
        Error::OutOfRange(format!(
            "discriminant {} is too large for the squarefree decomposition",
            disc
        ))
    })?;
    let (d0, f) = squarefree_part(disc_u64);
    let d0_big = BigInt::from(d0);
    let (u, v) = cf_fundamental_unit_coords(&d0_big, DEFAULT_CF_STEP_CAP)?;

    // sqrt(disc) = |2 delta + b|; orient sqrt(d0) = sign * (2 delta + b) / f
    let two_delta_plus_b = {
        let mut coords = vec![Rational::zero(); 2];
        coords[0] = Rational::from_integer(b.clone());
        coords[1] = Rational::from_integer(BigInt::from(2u32));
        field.element(coords)
    };
    let sign = two_delta_plus_b.sign();
    debug_assert_ne!(sign, 0);
    let s_over_f = Rational::new(BigInt::from(sign), BigInt::from(f));
    // u + v sqrt(d0) = (u + v s b / f) + (2 v s / f) delta
    let c0 = &u + &v * &s_over_f * Rational::from_integer(b);
    let c1 = &v * &s_over_f * Rational::from_integer(BigInt::from(2u32));
    let unit = field.element(vec![c0, c1]);
    debug_assert!(unit.is_algebraic_unit());
    debug_assert_eq!(unit.cmp_rational(&Rational::one()), std::cmp::Ordering::Greater);
    Ok(unit)
}

/// Accept a caller-supplied unit group generator: it must be a unit and must
/// not be torsion. Fundamentality is an assumption recorded downstream, not a
/// verified fact.
pub fn verify_supplied_unit(field: &NumberField, x: &FieldElement) -> Result<FieldElement, Error> {
    if !x.field().same_field(field) {
        return Err(Error::FieldMismatch);
    }
    if x.is_one() || (-x).is_one() {
        return Err(Error::TorsionOnly);
    }
    if !x.is_algebraic_unit() {
        return Err(Error::NotAUnit);
    }
    Ok(x.clone())
}

/// Assemble the unit group: computed for quadratic fields, from verified
/// supplied generators otherwise (or when generators are supplied anyway).
pub fn unit_group(field: &NumberField, supplied: &[FieldElement]) -> Result<UnitGroup, Error> {
    let rank = field.signature().unit_rank();
    if !supplied.is_empty() {
        if supplied.len() != rank {
            return Err(Error::WrongGeneratorCount {
                required: rank,
                supplied: supplied.len(),
            });
        }
        let mut generators = Vec::with_capacity(rank);
        for x in supplied {
            generators.push(UnitGenerator {
                element: verify_supplied_unit(field, x)?,
                provenance: Provenance::SuppliedAssumedFundamental,
            });
        }
        return Ok(UnitGroup {
            field: field.clone(),
            generators,
        });
    }
    if field.degree() == 2 {
        let element = fundamental_unit_in(field)?;
        return Ok(UnitGroup {
            field: field.clone(),
            generators: vec![UnitGenerator {
                element,
                provenance: Provenance::Computed,
            }],
        });
    }
    Err(Error::GeneratorsRequired(rank))
}

fn is_squarefree_u64(n: u64) -> bool {
    squarefree_part(n).1 == 1
}

/// n = d0 * f^2 with d0 squarefree; returns (d0, f).
fn squarefree_part(n: u64) -> (u64, u64) {
    assert!(n > 0);
    let mut d0 = 1u64;
    let mut f = 1u64;
    for (p, e) in factorize_u64(n) {
        if e % 2 == 1 {
            d0 *= p;
        }
        f *= p.pow((e / 2) as u32);
    }
    (d0, f)
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    assert!(n > 1 && !n.is_multiple_of(2));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cbrt2_field, rat, sqrt3_field};

    #[test]
    fn fundamental_unit_of_sqrt3() {
        let u = quadratic_fundamental_unit(3).unwrap();
        assert_eq!(u.coords(), &[rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn fundamental_unit_of_sqrt2_matches_pell_oracle() {
        // oracle: minimal x, y >= 1 with x^2 - 2 y^2 = +-1, brute force x <= 100
        let mut expected = None;
        'outer: for x in 1i64..=100 {
            for y in 1i64..=100 {
                let v = x * x - 2 * y * y;
                if v == 1 || v == -1 {
                    expected = Some((x, y));
                    break 'outer;
                }
            }
        }
        assert_eq!(expected, Some((1, 1)));
        let u = quadratic_fundamental_unit(2).unwrap();
        assert_eq!(u.coords(), &[rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn fundamental_unit_of_sqrt5_is_golden_ratio() {
        // oracle: minimal unit of Z[(1+sqrt5)/2]: half-integers (a + b sqrt5)/2
        // with a = b mod 2, a^2 - 5 b^2 = +-4, numerators <= 20
        let mut best: Option<(i64, i64)> = None;
        for b in 1i64..=20 {
            for a in 1i64..=20 {
                if (a - b) % 2 != 0 {
                    continue;
                }
                let v = a * a - 5 * b * b;
                if v == 4 || v == -4 {
                    // value (a + b sqrt5)/2 > 1 automatically for a,b >= 1
                    if best.is_none() {
                        best = Some((a, b));
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        assert_eq!(best, Some((1, 1)));
        let u = quadratic_fundamental_unit(5).unwrap();
        assert_eq!(u.coords(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn rejects_non_squarefree_and_small_d() {
        assert_eq!(
            quadratic_fundamental_unit(12).unwrap_err(),
            Error::NotSquarefree("12".into())
        );
        assert!(matches!(
            quadratic_fundamental_unit(1).unwrap_err(),
            Error::OutOfRange(_)
        ));
    }

    #[test]
    fn units_are_units_and_exceed_one() {
        for d in [2u32, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            let u = quadratic_fundamental_unit(d).unwrap();
            assert!(u.is_algebraic_unit(), "d = {}", d);
            assert_eq!(
                u.cmp_rational(&Rational::one()),
                std::cmp::Ordering::Greater,
                "d = {}",
                d
            );
        }
    }

    #[test]
    fn embeds_into_presented_field() {
        let f = sqrt3_field();
        let u = fundamental_unit_in(&f).unwrap();
        assert_eq!(u, f.element_from_i64(&[2, 1]));
    }

    #[test]
    fn embeds_when_root_interval_selects_negative_root() {
        let f = NumberField::new(
            IntPolynomial::from_i64(&[-3, 0, 1]),
            (rat(-2, 1), rat(-1, 1)),
        )
        .unwrap();
        let u = fundamental_unit_in(&f).unwrap();
        // 2 - delta with delta = -sqrt3 is again 2 + sqrt3 in this embedding
        assert_eq!(u, f.element_from_i64(&[2, -1]));
        assert!(u.is_algebraic_unit());
        assert_eq!(u.cmp_rational(&Rational::one()), std::cmp::Ordering::Greater);
    }

    #[test]
    fn supplied_unit_acceptance() {
        let f = cbrt2_field();
        let g = f.element_from_i64(&[-1, 1, 0]);
        assert!(verify_supplied_unit(&f, &g).is_ok());

        let s = sqrt3_field();
        let non_fundamental = s.element_from_i64(&[7, 4]);
        assert!(verify_supplied_unit(&s, &non_fundamental).is_ok());
        assert_eq!(
            verify_supplied_unit(&s, &s.element_from_i64(&[0, 4])).unwrap_err(),
            Error::NotAUnit
        );
        assert_eq!(
            verify_supplied_unit(&s, &s.one()).unwrap_err(),
            Error::TorsionOnly
        );
        assert_eq!(
            verify_supplied_unit(&s, &(-&s.one())).unwrap_err(),
            Error::TorsionOnly
        );
    }

    #[test]
    fn unit_group_paths() {
        let s = sqrt3_field();
        let g = unit_group(&s, &[]).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.generators()[0].provenance, Provenance::Computed);
        assert_eq!(g.generators()[0].element, s.element_from_i64(&[2, 1]));

        let c = cbrt2_field();
        let supplied = vec![c.element_from_i64(&[-1, 1, 0])];
        let g = unit_group(&c, &supplied).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(
            g.generators()[0].provenance,
            Provenance::SuppliedAssumedFundamental
        );

        assert_eq!(unit_group(&c, &[]).unwrap_err(), Error::GeneratorsRequired(1));
    }

    #[test]
    fn wrong_generator_count() {
        let c = cbrt2_field();
        let g = c.element_from_i64(&[-1, 1, 0]);
        assert_eq!(
            unit_group(&c, &[g.clone(), g]).unwrap_err(),
            Error::WrongGeneratorCount {
                required: 1,
                supplied: 2
            }
        );
    }

    #[test]
    fn squarefree_part_decomposition() {
        assert_eq!(squarefree_part(12), (3, 2));
        assert_eq!(squarefree_part(49), (1, 7));
        assert_eq!(squarefree_part(360), (10, 6));
        assert_eq!(squarefree_part(97), (97, 1));
    }

    #[test]
    fn fundamental_units_match_pell_oracle_up_to_50() {
        // cross-check the continued fraction against bounded brute force
        for d in 2u32..=50 {
            if !is_squarefree_u64(d as u64) {
                continue;
            }
            let u = quadratic_fundamental_unit(d).unwrap();
            let (bu, bv) = pell_oracle(d, 100_000);
            assert_eq!(u.coords(), &[bu, bv], "d = {}", d);
        }
    }

    /// Brute-force minimal unit > 1 of the maximal order of Q(sqrt d):
    /// smallest sqrt-coefficient solution of x^2 - d y^2 = +-1 (or of
    /// a^2 - d b^2 = +-4 on half-integers when d = 1 mod 4).
    pub(crate) fn pell_oracle(d: u32, bound: u64) -> (Rational, Rational) {
        let dd = BigInt::from(d);
        if d % 4 == 1 {
            for b in 1u64..=bound {
                let bb = BigInt::from(b);
                let rhs = &dd * &bb * &bb;
                // try a^2 = d b^2 -+ 4 in increasing order of a
                for delta in [-4i64, 4] {
                    let target = &rhs + BigInt::from(delta);
                    if target.is_negative() {
                        continue;
                    }
                    let a = target.sqrt();
                    if &a * &a == target && ((&a - &bb) % BigInt::from(2u32)).is_zero() {
                        // minimal a for this b: a from -4 first is smaller
                        return (
                            Rational::new(a, BigInt::from(2u32)),
                            Rational::new(bb, BigInt::from(2u32)),
                        );
                    }
                }
            }
        } else {
            for y in 1u64..=bound {
                let yy = BigInt::from(y);
                let rhs = &dd * &yy * &yy;
                for delta in [-1i64, 1] {
                    let target = &rhs + BigInt::from(delta);
                    if target.is_negative() {
                        continue;
                    }
                    let x = target.sqrt();
                    if &x * &x == target {
                        return (
                            Rational::from_integer(x),
                            Rational::from_integer(yy),
                        );
                    }
                }
            }
        }
        panic!("no Pell solution below bound for d = {}", d);
    }

    #[test]
    fn periodicity_detected_for_squarefree_d_up_to_1000() {
        let mut checked = 0;
        for d in 2u32..=1000 {
            if !is_squarefree_u64(d as u64) {
                continue;
            }
            let u = quadratic_fundamental_unit_with_cap(d, 10_000).unwrap();
            assert!(u.is_algebraic_unit(), "d = {}", d);
            checked += 1;
        }
        assert!(checked > 600);
    }
}
