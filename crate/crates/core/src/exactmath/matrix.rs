//! Dense matrices over Z and Q, row-major.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[i * rhs.cols + j] += a * rhs.at(k, j);
                }
            }
        }
        IntMatrix::new(self.rows, rhs.cols, out)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|x| -x).collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = vec![BigInt::zero(); self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.at(i, j).clone();
            }
        }
        IntMatrix::new(self.cols, self.rows, out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        RationalMatrix::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = vec![Rational::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[i * rhs.cols + j] += a * rhs.at(k, j);
                }
            }
        }
        RationalMatrix::new(self.rows, rhs.cols, out)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = vec![Rational::zero(); self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.at(i, j).clone();
            }
        }
        RationalMatrix::new(self.cols, self.rows, out)
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !a.at(i, k).is_zero()) {
                Some(i) => i,
                None => return Rational::zero(),
            };
            if pivot != k {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, k * n + j);
                }
                det = -det;
            }
            let p = a.at(k, k).clone();
            det *= &p;
            for i in k + 1..n {
                if a.at(i, k).is_zero() {
                    continue;
                }
                let f = a.at(i, k) / &p;
                for j in k..n {
                    let v = a.at(i, j) - &f * a.at(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; None when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a.at(i, k).is_zero())?;
            if pivot != k {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, k * n + j);
                    inv.entries.swap(pivot * n + j, k * n + j);
                }
            }
            let p = a.at(k, k).clone();
            for j in 0..n {
                let v = a.at(k, j) / &p;
                a.set(k, j, v);
                let w = inv.at(k, j) / &p;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k || a.at(i, k).is_zero() {
                    continue;
                }
                let f = a.at(i, k).clone();
                for j in 0..n {
                    let v = a.at(i, j) - &f * a.at(k, j);
                    a.set(i, j, v);
                    let w = inv.at(i, j) - &f * inv.at(k, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|x| x.to_integer()).collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|x| x * c).collect(),
        )
    }
}

/// Row vector times matrix.
pub fn row_times_matrix(v: &[Rational], m: &RationalMatrix) -> Vec<Rational> {
    assert_eq!(v.len(), m.rows(), "dimension mismatch");
    let mut out = vec![Rational::zero(); m.cols()];
    for (k, vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += vk * m.at(k, j);
        }
    }
    out
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}
