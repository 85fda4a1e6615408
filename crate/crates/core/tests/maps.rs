use proptest::prelude::*;

use skdv_algebra::{parse_poly, q, qi, Field, Q};
use skdv_core::dynamics::*;
use skdv_core::{CoreError, Exec};

fn rational() -> impl Strategy<Value = Q> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| q(n, d))
}

#[test]
fn invariant_identities() {
    let phi = RationalMapDef::phi();
    assert!(check_invariant_identity(&phi, i1_poly()).unwrap());
    assert!(check_invariant_identity(&phi, i2_poly()).unwrap());
    let x0 = parse_poly("x0", &phi_vars()).unwrap();
    assert!(!check_invariant_identity(&phi, &x0).unwrap());
}

#[test]
fn inverse_composes_to_identity() {
    let phi = RationalMapDef::phi();
    let inv = RationalMapDef::phi_inverse();
    assert!(inv.compose(&phi).unwrap().is_identity().unwrap());
    assert!(phi.compose(&inv).unwrap().is_identity().unwrap());
    assert!(!phi.compose(&phi).unwrap().is_identity().unwrap());
}

#[test]
fn orbit_example() {
    let mut p = AffinePoint4::new([qi(0), qi(0), qi(2), qi(0)], qi(1));
    for _ in 0..3 {
        assert_eq!(eval_invariants(&p), (qi(-4), qi(8)));
        p = apply_phi(&p).unwrap();
    }
    let bad = AffinePoint4::new([qi(0), qi(0), qi(1), qi(0)], qi(1));
    assert!(matches!(apply_phi(&bad), Err(CoreError::Pole(_))));
}

#[test]
fn exec_modes_agree() {
    let xs: Vec<i64> = (0..200).collect();
    let f = |x: i64| x * x - 3;
    assert_eq!(Exec::Parallel.map(xs.clone(), f), Exec::Sequential.map(xs, f));
}

proptest! {
    #[test]
    fn inverse_undoes_phi(x in proptest::array::uniform4(rational()), h in rational()) {
        prop_assume!(x[2] != qi(1));
        let y = phi_step(&x, &h).unwrap();
        prop_assume!(y[0] != qi(1));
        prop_assert_eq!(phi_inverse_step(&y, &h).unwrap(), x);
    }

    #[test]
    fn invariants_are_constant_on_orbits(x in proptest::array::uniform4(rational()), h in rational()) {
        let mut p = AffinePoint4::new(x, h);
        let start = eval_invariants(&p);
        for _ in 0..3 {
            match apply_phi(&p) {
                Ok(n) => p = n,
                Err(_) => break,
            }
            prop_assert_eq!(eval_invariants(&p), start.clone());
        }
    }

    // ψ is φ on the level set of I₂, with x3 eliminated.
    #[test]
    fn psi_is_phi_on_a_level_set(x in proptest::array::uniform4(rational()), h in rational()) {
        prop_assume!(!h.is_zero() && x[2] != qi(1));
        let (_, c) = invariants_at(&x, &h);
        let Ok(p) = apply_psi(&[x[0].clone(), x[1].clone(), x[2].clone()], &h, &c) else {
            return Ok(());
        };
        let y = phi_step(&x, &h).unwrap();
        prop_assert_eq!(p, [y[0].clone(), y[1].clone(), y[2].clone()]);
    }
}
