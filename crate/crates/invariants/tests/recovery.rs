use std::sync::OnceLock;

use proptest::prelude::*;

use skdv_algebra::{q, qi, Field, Q};
use skdv_core::dynamics::phi_step;
use skdv_core::Exec;
use skdv_invariants::*;
use skdv_tower::valuation::class_from_mults;
use skdv_tower::{default_valuator, sampled, DivisorClass, Valuator};

fn fcl() -> &'static Vec<DivisorClass> {
    static F: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    F.get_or_init(|| default_valuator().proper_exceptional_classes().unwrap())
}

fn h() -> Q {
    q(7, 3)
}

fn valuator() -> Valuator<Q> {
    sampled(Some(h()), vec![1], Exec::default())
}

fn eval(ansatz: &Ansatz, v: &[Q], x: &[Q; 4]) -> Q {
    v.iter().zip(&ansatz.monomials).fold(Q::zero(), |acc, (c, m)| {
        let mon = (0..4).fold(Q::one(), |p, i| p.mul(&Field::pow(&x[i], m[i])));
        acc.add(&c.mul(&mon))
    })
}

#[test]
fn ansatz_sizes() {
    assert_eq!(Ansatz::bidegree().len(), 36);
    assert_eq!(Ansatz::total_degree().len(), 15);
}

#[test]
fn class_to_multiplicities() {
    let c = ClassConstraint::from_class(&i1_class(), fcl()).unwrap();
    assert_eq!(c.mults, vec![2, 3, 3, 4, 4, 2, 3, 3, 4, 4, 4, 1, 2, 7, 7, 8, 8]);
    assert_eq!(c.bidegree, (2, 2));
    let bad: DivisorClass = "2Ha + 2Hb + E3".parse().unwrap();
    assert!(ClassConstraint::from_class(&bad, fcl()).is_err());
}

#[test]
fn no_conditions_leave_everything_free() {
    let c = ClassConstraint::unconstrained((2, 2));
    let sys = vanishing_system(&valuator(), &Ansatz::bidegree(), &c).unwrap();
    assert!(sys.rows.is_empty());
    assert_eq!(solve_kernel(&sys).len(), 36);
}

#[test]
fn i1_class_gives_the_i1_pencil() {
    let c = ClassConstraint::from_class(&i1_class(), fcl()).unwrap();
    let r = find_invariants(&valuator(), &Ansatz::bidegree(), &c, false, &FinderConfig::default()).unwrap();
    assert!(r.saturated() && r.kernel_checked);
    assert_eq!(r.matched.kernel_dim, 2);
    assert!(r.matched.spans_equal, "{r:?}");
}

#[test]
fn i2_class_gives_the_net() {
    let c = ClassConstraint::from_class(&i2_class(), fcl()).unwrap();
    let v = valuator();
    let r = find_invariants(&v, &Ansatz::bidegree(), &c, true, &FinderConfig::default()).unwrap();
    assert!(r.saturated() && r.kernel_checked);
    assert_eq!(r.matched.kernel_dim, 3);
    assert!(r.matched.spans_equal, "{r:?}");
    assert_eq!(r.matched.targets, vec!["1", "I1", "I2"]);
}

#[test]
fn raised_orders_leave_nothing() {
    let c = ClassConstraint::from_class(&i2_class(), fcl()).unwrap().raised(1);
    let sys = vanishing_system(&valuator(), &Ansatz::bidegree(), &c).unwrap();
    let k = solve_kernel(&sys);
    let a = Ansatz::bidegree();
    // Only constants, or nothing.
    assert!(k.iter().all(|v| v.iter().enumerate().all(|(j, c)| c.is_zero() || a.monomials[j] == [0, 0, 0, 0])));
}

#[test]
fn total_degree_ansatz_only_has_constants() {
    let c = ClassConstraint::from_class(&i1_class(), fcl()).unwrap();
    let r = find_invariants(&valuator(), &Ansatz::total_degree(), &c, false, &FinderConfig::default()).unwrap();
    assert_eq!(r.kernel, vec!["(1)".to_string()]);
    assert!(!r.matched.spans_equal);
}

#[test]
fn random_plane_does_not_match() {
    let a = Ansatz::bidegree();
    let targets = invariant_targets(&a, &h(), false).unwrap();
    let mut u = vec![Q::zero(); 36];
    let mut w = vec![Q::zero(); 36];
    u[0] = qi(1);
    u[5] = qi(2);
    w[7] = qi(1);
    w[20] = qi(-3);
    let m = match_invariants(&[u, w], &targets);
    assert!(!m.spans_equal);
    assert!(m.kernel_in_targets.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classes_round_trip(nu in proptest::collection::vec(0i64..5, 17)) {
        let (_, class) = class_from_mults((2, 2), &nu, fcl());
        let c = ClassConstraint::from_class(&class, fcl()).unwrap();
        prop_assert_eq!(c.mults, nu);
    }

    #[test]
    fn net_members_are_invariant(
        x in proptest::array::uniform4(-20i64..20),
        d in 1i64..9,
        c in proptest::array::uniform3(-5i64..5),
    ) {
        let x = x.map(|n| q(n, d));
        prop_assume!(x[2] != qi(1));
        let a = Ansatz::bidegree();
        let t = invariant_targets(&a, &h(), true).unwrap();
        let f: Vec<Q> = (0..36)
            .map(|j| (0..3).fold(Q::zero(), |acc, k| acc.add(&qi(c[k]).mul(&t[k].1[j]))))
            .collect();
        let y = phi_step(&x, &h()).unwrap();
        prop_assert_eq!(eval(&a, &f, &x), eval(&a, &f, &y));
    }
}
