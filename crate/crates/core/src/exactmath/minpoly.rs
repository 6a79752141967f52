//! Minimal polynomials of rational matrices by Krylov iteration: the monic
//! annihilator of each basis vector is found from the first linear dependence
//! in its Krylov sequence, and the minimal polynomial is the lcm of the
//! per-vector annihilators. No factorization is needed.

use num_traits::{One, Zero};

use crate::exactmath::matrix::RationalMatrix;
use crate::exactmath::poly::{IntPolynomial, RatPoly};
use crate::Rational;

/// Primitive integer multiple (positive leading coefficient) of the monic
/// minimal polynomial of a square rational matrix.
pub fn minimal_polynomial_of_matrix(m: &RationalMatrix) -> IntPolynomial {
    assert_eq!(m.rows(), m.cols(), "matrix must be square");
    let n = m.rows();
    if n == 0 {
        return IntPolynomial::from_i64(&[1]);
    }
    let mut acc = RatPoly::one();
    for i in 0..n {
        if acc.degree() == Some(n) {
            break;
        }
        let e = unit_vector(n, i);
        let ann = krylov_annihilator(m, e);
        acc = RatPoly::lcm(&acc, &ann);
    }
    acc.to_primitive_int()
}

fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn apply(m: &RationalMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| {
            v.iter()
                .enumerate()
                .filter(|(_, vj)| !vj.is_zero())
                .fold(Rational::zero(), |acc, (j, vj)| acc + m.at(i, j) * vj)
        })
        .collect()
}

/// Monic polynomial p of least degree with p(M)v = 0, via Gaussian
/// elimination on the Krylov vectors v, Mv, M^2 v, ...
fn krylov_annihilator(m: &RationalMatrix, v: Vec<Rational>) -> RatPoly {
    let n = m.rows();
    // echelon rows: (reduced vector, pivot index, combination over powers)
    let mut echelon: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    let mut cur = v;
    for k in 0..=n {
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        let mut vec_red = cur.clone();
        for (row, pivot, row_combo) in &echelon {
            if vec_red[*pivot].is_zero() {
                continue;
            }
            let f = &vec_red[*pivot] / &row[*pivot];
            for j in 0..n {
                let t = &f * &row[j];
                vec_red[j] -= t;
            }
            for (j, c) in row_combo.iter().enumerate() {
                let t = &f * c;
                combo[j] -= t;
            }
        }
        match vec_red.iter().position(|x| !x.is_zero()) {
            None => return RatPoly::new(combo),
            Some(p) => {
                echelon.push((vec_red, p, combo));
            }
        }
        cur = apply(m, &cur);
    }
    unreachable!("n+1 Krylov vectors are always dependent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::IntMatrix;

    #[test]
    fn zero_matrix_annihilated_by_z() {
        let m = RationalMatrix::new(2, 2, vec![Rational::zero(); 4]);
        assert_eq!(minimal_polynomial_of_matrix(&m), IntPolynomial::from_i64(&[0, 1]));
    }

    #[test]
    fn identity_annihilated_by_z_minus_1() {
        let m = RationalMatrix::identity(3);
        assert_eq!(
            minimal_polynomial_of_matrix(&m),
            IntPolynomial::from_i64(&[-1, 1])
        );
    }

    #[test]
    fn companion_matrix_recovers_its_polynomial() {
        // companion matrix of z^2 - z - 1
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 1]]).to_rational();
        // oracle: M^2 - M - I = 0 by direct multiplication
        let m2 = m.mul(&m);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { Rational::one() } else { Rational::zero() };
                assert_eq!(m2.at(i, j) - m.at(i, j), want);
            }
        }
        assert_eq!(
            minimal_polynomial_of_matrix(&m),
            IntPolynomial::from_i64(&[-1, -1, 1])
        );
    }

    #[test]
    fn diagonal_with_repeats_gets_squarefree_minpoly() {
        let m = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]).to_rational();
        // (z-2)(z-3) = z^2 - 5z + 6
        assert_eq!(
            minimal_polynomial_of_matrix(&m),
            IntPolynomial::from_i64(&[6, -5, 1])
        );
    }
}
