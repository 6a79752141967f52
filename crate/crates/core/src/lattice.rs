//! Full-rank Z-modules inside a number field, held in a canonical form:
//! an integer basis matrix in Hermite normal form over a minimal common
//! positive denominator. Canonical storage makes lattice equality a
//! structural comparison and membership a triangular solve.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::Error;
use crate::exactmath::hnf::hnf_with_rank;
use crate::exactmath::matrix::{IntMatrix, RationalMatrix};
use crate::numberfield::{FieldElement, NumberField};
use crate::Rational;

/// Z-span of n independent field elements, in canonical (HNF, denominator)
/// form. Row i of the integer matrix divided by the denominator gives the
/// power-basis coordinates of the i-th basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct FLattice {
    field: NumberField,
    mat: IntMatrix,
    denom: BigInt,
}

impl fmt::Debug for FLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FLattice(denom {}, {:?})", self.denom, self.mat)
    }
}

impl FLattice {
    /// Canonicalize the Z-span of the given generators. The generators must
    /// span a rank-n module; Q-dependent generators are rejected.
    pub fn from_generators(field: &NumberField, gens: &[FieldElement]) -> Result<Self, Error> {
        let n = field.degree();
        for g in gens {
            if !g.field().same_field(field) {
                return Err(Error::FieldMismatch);
            }
        }
        if gens.len() < n {
            return Err(Error::RankDeficient);
        }
        let mut denom_lcm = BigInt::one();
        for g in gens {
            for c in g.coords() {
                denom_lcm = denom_lcm.lcm(c.denom());
            }
        }
        let mut entries = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for c in g.coords() {
                entries.push(c.numer() * (&denom_lcm / c.denom()));
            }
        }
        let raw = IntMatrix::new(gens.len(), n, entries);
        let (h, _u, rank) = hnf_with_rank(&raw);
        if rank < n {
            return Err(Error::RankDeficient);
        }
        let mut top = Vec::with_capacity(n * n);
        for i in 0..n {
            top.extend(h.row(i).iter().cloned());
        }
        let mat = IntMatrix::new(n, n, top);
        Ok(Self::reduced(field.clone(), mat, denom_lcm))
    }

    /// Divide out the common factor of the matrix content and the denominator.
    fn reduced(field: NumberField, mat: IntMatrix, denom: BigInt) -> Self {
        let mut g = denom.clone();
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                g = g.gcd(mat.at(i, j));
            }
        }
        if g.is_one() {
            return FLattice { field, mat, denom };
        }
        let entries = (0..mat.rows())
            .flat_map(|i| mat.row(i).iter().map(|x| x / &g).collect::<Vec<_>>())
            .collect();
        FLattice {
            field,
            mat: IntMatrix::new(mat.rows(), mat.cols(), entries),
            denom: &denom / &g,
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Basis as field elements (rows of the stored HNF over the denominator).
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        let n = self.field.degree();
        let d = Rational::from_integer(self.denom.clone());
        (0..n)
            .map(|i| {
                self.field.element(
                    self.mat
                        .row(i)
                        .iter()
                        .map(|x| Rational::from_integer(x.clone()) / &d)
                        .collect(),
                )
            })
            .collect()
    }

    /// Rational basis matrix (rows = power-basis coordinates).
    pub fn rational_basis(&self) -> RationalMatrix {
        let d = Rational::from_integer(self.denom.clone());
        let n = self.field.degree();
        let entries = (0..n)
            .flat_map(|i| {
                self.mat
                    .row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &d)
                    .collect::<Vec<_>>()
            })
            .collect();
        RationalMatrix::new(n, n, entries)
    }

    /// Integer coordinates of x over the stored basis, if x lies in the
    /// lattice. Solved by forward substitution against the triangular basis.
    pub fn contains(&self, x: &FieldElement) -> Result<Option<Vec<BigInt>>, Error> {
        if !x.field().same_field(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let d = Rational::from_integer(self.denom.clone());
        let target: Vec<Rational> = x.coords().iter().map(|c| c * &d).collect();
        let mut u: Vec<Rational> = Vec::with_capacity(n);
        for (j, tj) in target.iter().enumerate() {
            let mut s = tj.clone();
            for (i, ui) in u.iter().enumerate() {
                s -= ui * Rational::from_integer(self.mat.at(i, j).clone());
            }
            let piv = Rational::from_integer(self.mat.at(j, j).clone());
            u.push(s / piv);
        }
        if u.iter().all(|c| c.is_integer()) {
            Ok(Some(u.into_iter().map(|c| c.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    /// True iff multiplication by x maps every basis element back into the
    /// lattice.
    pub fn mul_preserves(&self, x: &FieldElement) -> Result<bool, Error> {
        if !x.field().same_field(&self.field) {
            return Err(Error::FieldMismatch);
        }
        for b in self.basis_elements() {
            if self.contains(&(&b * x))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The coefficient ring O = { x in F : x * L in L }, computed from the
    /// linear conditions that multiplication by x is integral in the lattice
    /// basis, followed by one HNF canonicalization pass. The result is
    /// checked to contain 1 and to be closed under multiplication.
    pub fn coefficient_ring(&self) -> Order {
        let n = self.field.degree();
        let basis = self.rational_basis();
        let basis_inv = basis
            .inverse()
            .expect("canonical lattice basis is invertible");
        let delta_mult = self.field.generator().mult_matrix();

        // row k of the condition matrix: multiplication by delta^k expressed
        // in the lattice basis, flattened
        let mut cond = Vec::with_capacity(n * n * n);
        let mut power = RationalMatrix::identity(n);
        for _ in 0..n {
            let in_lattice_basis = basis.mul(&power).mul(&basis_inv);
            cond.extend(in_lattice_basis.entries().iter().cloned());
            power = power.mul(&delta_mult);
        }
        let cond = RationalMatrix::new(n, n * n, cond);

        // integral preimage: x * cond integral <=> x in d * (dual of column span)
        let mut d = BigInt::one();
        for e in cond.entries() {
            d = d.lcm(e.denom());
        }
        let scaled = IntMatrix::new(
            n,
            n * n,
            cond.entries()
                .iter()
                .map(|e| e.numer() * (&d / e.denom()))
                .collect(),
        );
        let (h, _u, rank) = hnf_with_rank(&scaled.transpose());
        assert_eq!(rank, n, "multiplication action has full rank");
        let mut k_rows = Vec::with_capacity(n * n);
        for i in 0..n {
            k_rows.extend(h.row(i).iter().cloned());
        }
        let k = IntMatrix::new(n, n, k_rows);
        let dual = k
            .transpose()
            .to_rational()
            .inverse()
            .expect("column lattice basis is invertible");
        let gen_matrix = dual.scale(&Rational::from_integer(d));

        let gens: Vec<FieldElement> = (0..n)
            .map(|i| self.field.element(gen_matrix.row(i).to_vec()))
            .collect();
        let lat = FLattice::from_generators(&self.field, &gens)
            .expect("coefficient ring has full rank");

        let order = Order { lat };
        order.verify();
        order
    }
}

/// An order: a lattice that is a ring containing 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Order {
    lat: FLattice,
}

impl Order {
    pub fn lattice(&self) -> &FLattice {
        &self.lat
    }

    pub fn contains(&self, x: &FieldElement) -> Result<Option<Vec<BigInt>>, Error> {
        self.lat.contains(x)
    }

    /// Ring checks: 1 is a member and basis products land back inside.
    fn verify(&self) {
        let one = self.lat.field.one();
        assert!(
            self.lat.contains(&one).unwrap().is_some(),
            "coefficient ring must contain 1"
        );
        let basis = self.lat.basis_elements();
        for a in &basis {
            for b in &basis {
                assert!(
                    self.lat.contains(&(a * b)).unwrap().is_some(),
                    "coefficient ring must be multiplicatively closed"
                );
            }
        }
    }
}
