use proptest::prelude::*;

use skdv_algebra::{parse_poly, MultiPoly};
use skdv_core::dynamics::{i1_poly, phi_vars};
use skdv_tower::valuation::Pullback;
use skdv_tower::{default_valuator, DivisorClass, Hypersurface};

const Z1: [i64; 17] = [0, 0, 0, 0, 0, 1, 2, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2];
const X2M1: [i64; 17] = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1];
const I1: [i64; 17] = [2, 3, 3, 4, 4, 2, 3, 3, 4, 4, 4, 1, 2, 7, 7, 8, 8];

fn class(s: &str) -> DivisorClass {
    s.parse().unwrap()
}

fn shifted_i1(c: &str) -> Hypersurface {
    let p = i1_poly().sub(&parse_poly(c, &phi_vars()).unwrap()).unwrap();
    Hypersurface::new("I1 - c", p, (2, 2)).unwrap()
}

#[test]
fn multiplicity_tables() {
    let v = default_valuator();
    assert_eq!(v.mult_table(&Hypersurface::z1()).unwrap(), Z1);
    assert_eq!(v.mult_table(&Hypersurface::x2_minus_1()).unwrap(), X2M1);
    assert_eq!(v.mult_table(&Hypersurface::i1()).unwrap(), I1);
    assert_eq!(v.mult_table(&shifted_i1("17/5")).unwrap(), I1);
}

#[test]
fn proper_transform_classes() {
    let v = default_valuator();
    let cases = [
        (Hypersurface::z1(), "Ha - E6 - E7 - E11 - E12"),
        (Hypersurface::x2_minus_1(), "Hb - E1 - E6 - E11"),
        (Hypersurface::z3(), "Hb - E1 - E2 - E11 - E12"),
        (Hypersurface::i1(), "2Ha + 2Hb - 2E1 - 2E6 - 4E11 - E{2,4,7,9,12,13,14,16}"),
        (Hypersurface::i2(), "2Ha + 2Hb - 3E11 - E{1,2,4,5,6,7,9,10,12,13,14,16,17}"),
    ];
    for (h, want) in cases {
        let (total, proper) = v.class_of_hypersurface(&h).unwrap();
        assert_eq!(total.h_part(), (h.bidegree.0 as i64, h.bidegree.1 as i64));
        assert_eq!(proper, class(want), "{}", h.name);
    }
}

#[test]
fn candidate_table_is_consistent() {
    for (name, listed, computed) in default_valuator().validate_candidates().unwrap() {
        assert_eq!(listed, computed, "{name}");
    }
}

#[test]
fn pullbacks_of_the_hyperplanes() {
    let v = default_valuator();
    let Pullback { class: hb, .. } = v.pullback_h(true).unwrap();
    assert_eq!(hb, class("Ha + 3Hb - 2E1 - 3E11 - E{6,7,9,10,12,13,14}"));
    assert_eq!(v.pullback_exceptional(1).unwrap().class, class("Hb - E1 - E10 - E11"));
}

#[test]
fn invariant_classes_are_fixed() {
    let v = default_valuator();
    for h in [Hypersurface::i1(), Hypersurface::i2()] {
        let p = v.pullback_class_hypersurface(&h).unwrap();
        let (_, proper) = v.class_of_hypersurface(&h).unwrap();
        assert_eq!(p.residual_class, proper, "{}", h.name);
    }
}

#[test]
fn parse_and_print_classes() {
    let c = class("Ha + 3Hb - 2E1 - 3E11 - E{6,7,9,10,12,13,14}");
    assert_eq!(c.grouped(), "Ha + 3Hb - 2E1 - E{6,7,9,10,12,13,14} - 3E11");
    assert_eq!(class(&c.to_string()), c);
    assert!("Hc".parse::<DivisorClass>().is_err());
    assert!("E18".parse::<DivisorClass>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    // Orders along a divisor add under products.
    #[test]
    fn orders_are_additive(n in -40i64..40, d in 1i64..7) {
        let v = default_valuator();
        let f = shifted_i1(&format!("{n}/{d}"));
        let g = parse_poly("x2 - 1", &phi_vars()).unwrap();
        let prod: MultiPoly = f.poly.mul(&g).unwrap();
        let ph = Hypersurface::new("(I1 - c)*(x2 - 1)", prod, (2, 3)).unwrap();
        let mp = v.mult_table(&ph).unwrap();
        for i in 0..17 {
            prop_assert_eq!(mp[i], I1[i] + X2M1[i]);
        }
    }
}
