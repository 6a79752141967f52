//! Randomized invariants for the exact-arithmetic stack.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qpsym_core::exactmath::hnf::is_hnf;
use qpsym_core::exactmath::{
    hermite_normal_form, sturm_real_root_count, IntMatrix, IntPolynomial, RationalMatrix,
};
use qpsym_core::lattice::FLattice;
use qpsym_core::multiplier::{
    brute_force_multipliers, multiplier_group, validate_flow, FlowSpec, MultiplierValue,
    ValidatedFlow,
};
use qpsym_core::numberfield::{FieldElement, NumberField};
use qpsym_core::units::{quadratic_fundamental_unit, unit_group};
use qpsym_core::conjugacy::semiconjugacy_witness;
use qpsym_core::Rational;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn sqrt_field(d: u32) -> NumberField {
    let s = (d as f64).sqrt() as i64;
    NumberField::new(
        IntPolynomial::from_i64(&[-(d as i64), 0, 1]),
        (rat(s, 1), rat(s + 1, 1)),
    )
    .unwrap()
}

fn arb_disc() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 6, 7, 10])
}

fn arb_small_rat() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=2).prop_map(|(n, d)| rat(n, d))
}

fn arb_invertible_coords() -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d)), 4)
        .prop_map(|v| RationalMatrix::new(2, 2, v))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn arb_unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0usize..3, 0usize..n, 0usize..n, -3i64..=3), 3..8).prop_map(
        move |ops| {
            let mut u = IntMatrix::identity(n);
            for (kind, i, j, c) in ops {
                if i == j {
                    continue;
                }
                match kind {
                    0 => {
                        // add c * row j to row i
                        for col in 0..n {
                            let v = u.at(i, col) + BigInt::from(c) * u.at(j, col);
                            u.set(i, col, v);
                        }
                    }
                    1 => u.swap_rows(i, j),
                    _ => {
                        for col in 0..n {
                            let v = -u.at(i, col);
                            u.set(i, col, v);
                        }
                    }
                }
            }
            u
        },
    )
}

fn algebraic_flow(d: u32, coords: RationalMatrix) -> ValidatedFlow {
    let f = sqrt_field(d);
    validate_flow(FlowSpec::algebraic(f, coords, vec![]).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn field_axioms_hold_at_random_sample(
        d in arb_disc(),
        ax in prop::collection::vec(arb_small_rat(), 2),
        bx in prop::collection::vec(arb_small_rat(), 2),
        cx in prop::collection::vec(arb_small_rat(), 2),
    ) {
        let f = sqrt_field(d);
        let a = f.element(ax);
        let b = f.element(bx);
        let c = f.element(cx);
        prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        prop_assert_eq!(
            &(&a * &(&b + &c)),
            &(&(&a * &b) + &(&a * &c))
        );
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn minimal_polynomial_annihilates_and_divides_degree(
        d in arb_disc(),
        coords in prop::collection::vec(arb_small_rat(), 2),
    ) {
        let f = sqrt_field(d);
        let x = f.element(coords);
        if x.is_zero() { return Ok(()); }
        let mp = x.minimal_polynomial();
        prop_assert!(x.eval_int_poly(&mp).is_zero());
        let deg = mp.degree().unwrap();
        prop_assert!(f.degree().is_multiple_of(deg));
    }

    #[test]
    fn norm_is_multiplicative(
        d in arb_disc(),
        ax in prop::collection::vec(arb_small_rat(), 2),
        bx in prop::collection::vec(arb_small_rat(), 2),
    ) {
        let f = sqrt_field(d);
        let a = f.element(ax);
        let b = f.element(bx);
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn units_are_closed_under_product_and_inverse(d in arb_disc(), k in 1i64..=4, l in 1i64..=4) {
        let u = quadratic_fundamental_unit(d).unwrap();
        let f = u.field().clone();
        let x = u.pow(k).unwrap();
        let y = u.pow(-l).unwrap();
        prop_assert!(x.is_algebraic_unit());
        prop_assert!(y.is_algebraic_unit());
        prop_assert!((&x * &y).is_algebraic_unit());
        prop_assert!(x.inv().unwrap().is_algebraic_unit());
        let _ = f;
    }

    #[test]
    fn field_operation_outputs_are_reduced(
        d in arb_disc(),
        ax in prop::collection::vec(arb_small_rat(), 2),
        bx in prop::collection::vec(arb_small_rat(), 2),
    ) {
        let f = sqrt_field(d);
        let a = f.element(ax);
        let b = f.element(bx);
        let mut outputs = vec![&a * &b, &a + &b];
        if !b.is_zero() {
            outputs.push(a.try_div(&b).unwrap());
        }
        for out in outputs {
            for c in out.coords() {
                prop_assert!(c.denom().is_positive());
                prop_assert!(c.numer().gcd(c.denom()).is_one());
            }
        }
    }

    #[test]
    fn sturm_count_plus_complex_pairs_is_degree(
        roots in prop::collection::btree_set(-8i64..=8, 0..4),
        pairs in prop::collection::btree_set(1i64..=9, 0..3),
    ) {
        // square-free by construction: distinct linear roots, distinct
        // positive shifts for the quadratic factors
        let mut p = IntPolynomial::from_i64(&[1]);
        for r in &roots {
            p = &p * &IntPolynomial::from_i64(&[-r, 1]);
        }
        for a in &pairs {
            p = &p * &IntPolynomial::from_i64(&[*a, 0, 1]);
        }
        if p.degree() == Some(0) { return Ok(()); }
        let real = sturm_real_root_count(&p, None).unwrap();
        prop_assert_eq!(real, roots.len());
        prop_assert_eq!(real + 2 * pairs.len(), p.degree().unwrap());
    }

    #[test]
    fn hnf_is_idempotent_and_shaped(u in arb_unimodular(3)) {
        let m = IntMatrix::from_i64(&[&[2, 4, 1], &[0, 3, 5], &[1, 1, 9]]);
        let mixed = u.mul(&m);
        let h = hermite_normal_form(&mixed).unwrap();
        prop_assert!(is_hnf(&h.h));
        prop_assert_eq!(h.u.mul(&mixed), h.h.clone());
        let again = hermite_normal_form(&h.h).unwrap();
        prop_assert_eq!(again.h, h.h);
    }

    #[test]
    fn lattice_membership_returns_exact_coordinates(
        d in arb_disc(),
        g1 in prop::collection::vec(arb_small_rat(), 2),
        g2 in prop::collection::vec(arb_small_rat(), 2),
        c1 in -6i64..=6,
        c2 in -6i64..=6,
    ) {
        let f = sqrt_field(d);
        let a = f.element(g1);
        let b = f.element(g2);
        let Ok(lat) = FLattice::from_generators(&f, &[a, b]) else { return Ok(()); };
        let basis = lat.basis_elements();
        let x = &basis[0].scale(&rat(c1, 1)) + &basis[1].scale(&rat(c2, 1));
        let coords = lat.contains(&x).unwrap().unwrap();
        prop_assert_eq!(coords, vec![BigInt::from(c1), BigInt::from(c2)]);
    }

    #[test]
    fn coefficient_ring_is_an_order_and_scale_invariant(
        d in arb_disc(),
        g1 in prop::collection::vec(arb_small_rat(), 2),
        g2 in prop::collection::vec(arb_small_rat(), 2),
        sx in prop::collection::vec(arb_small_rat(), 2),
    ) {
        let f = sqrt_field(d);
        let a = f.element(g1);
        let b = f.element(g2);
        let Ok(lat) = FLattice::from_generators(&f, &[a, b]) else { return Ok(()); };
        let order = lat.coefficient_ring();
        prop_assert!(order.contains(&f.one()).unwrap().is_some());
        let obasis = order.lattice().basis_elements();
        for o in &obasis {
            for w in lat.basis_elements() {
                prop_assert!(lat.contains(&(o * &w)).unwrap().is_some());
            }
        }
        // scale invariance under x * L for nonzero x
        let x = f.element(sx);
        if !x.is_zero() {
            let scaled: Vec<FieldElement> =
                lat.basis_elements().iter().map(|w| w * &x).collect();
            let sl = FLattice::from_generators(&f, &scaled).unwrap();
            let sl_order = sl.coefficient_ring();
            prop_assert_eq!(sl_order.lattice(), order.lattice());
        }
    }

    #[test]
    fn oracle_multipliers_lie_in_the_computed_group(
        d in arb_disc(),
        coords in arb_invertible_coords(),
    ) {
        let flow = algebraic_flow(d, coords);
        let units = unit_group(flow.field().unwrap(), &[]).unwrap();
        let group = multiplier_group(&flow, &units, 100_000).unwrap();
        let gen = group.infinite_generators[0].value.as_field().unwrap().clone();
        let found = brute_force_multipliers(&flow, 4);
        for m in &found {
            let v = m.value.as_field().unwrap();
            prop_assert!(is_power_up_to_sign(v, &gen, 16), "oracle value escapes the group");
        }
        // torsion is always found
        let field = flow.field().unwrap();
        prop_assert!(found.iter().any(|m| m.value == MultiplierValue::Field(field.one())));
        prop_assert!(found.iter().any(|m| m.value == MultiplierValue::Field(-&field.one())));
    }

    #[test]
    fn semiconjugacies_compose(
        d in arb_disc(),
        coords in arb_invertible_coords(),
        v1 in arb_integer_matrix(),
        v2 in arb_integer_matrix(),
    ) {
        let a = algebraic_flow(d, coords.clone());
        let field = a.field().unwrap().clone();
        let cb = v1.to_rational().mul(&coords);
        let cc = v2.to_rational().mul(&cb);
        let b = validate_flow(FlowSpec::algebraic(field.clone(), cb, vec![]).unwrap()).unwrap();
        let c = validate_flow(FlowSpec::algebraic(field, cc, vec![]).unwrap()).unwrap();
        let w1 = semiconjugacy_witness(&a, &b).unwrap();
        let w2 = semiconjugacy_witness(&b, &c).unwrap();
        let w = semiconjugacy_witness(&a, &c).unwrap();
        prop_assert_eq!(&w1, &v1);
        prop_assert_eq!(&w2, &v2);
        prop_assert_eq!(w, v2.mul(&v1));
    }

    #[test]
    fn conjugate_flows_have_identical_multiplier_groups(
        d in arb_disc(),
        coords in arb_invertible_coords(),
        u in arb_unimodular(2),
    ) {
        let a = algebraic_flow(d, coords.clone());
        let cb = u.to_rational().mul(&coords);
        let field = a.field().unwrap().clone();
        let b = validate_flow(FlowSpec::algebraic(field, cb, vec![]).unwrap()).unwrap();
        let units = unit_group(a.field().unwrap(), &[]).unwrap();
        let ga = multiplier_group(&a, &units, 100_000).unwrap();
        let gb = multiplier_group(&b, &units, 100_000).unwrap();
        prop_assert_eq!(ga.index, gb.index);
        prop_assert_eq!(
            ga.infinite_generators[0].value.as_field().unwrap(),
            gb.infinite_generators[0].value.as_field().unwrap()
        );
    }
}

fn arb_integer_matrix() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_map(|v| {
            IntMatrix::new(2, 2, v.into_iter().map(BigInt::from).collect())
        })
        .prop_filter("nonsingular", |m| !m.det().is_zero())
}

/// Does x equal +-g^j or +-g^(-j) for some 0 <= j <= cap?
fn is_power_up_to_sign(x: &FieldElement, g: &FieldElement, cap: i64) -> bool {
    for j in 0..=cap {
        for e in [j, -j] {
            let p = g.pow(e).unwrap();
            if &p == x || &(-&p) == x {
                return true;
            }
        }
    }
    false
}
