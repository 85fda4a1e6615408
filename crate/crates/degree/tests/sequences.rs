use skdv_algebra::qi;
use skdv_degree::*;

const HB: [(usize, usize); 11] =
    [(0, 1), (1, 3), (3, 6), (6, 11), (11, 17), (17, 24), (24, 33), (33, 43), (43, 54), (54, 67), (67, 81)];

#[test]
fn phi_degrees_up_to_ten() {
    let t = std::time::Instant::now();
    let d = phi_degree_sequence(10, &DegreeConfig::default()).unwrap();
    eprintln!("phi degrees in {:?}", t.elapsed());
    for row in &d {
        assert!(row.agree, "trials disagree at n = {}", row.n);
        assert_eq!(row.hb, HB[row.n], "n = {}", row.n);
        if row.n > 0 {
            assert_eq!(row.ha, HB[row.n - 1], "n = {}", row.n);
        }
    }
    let b: Vec<i64> = d.iter().map(|r| r.bidegree().1 as i64).collect();
    assert!(quadratic_fit(&b).unwrap().eventually_quadratic);
}

#[test]
fn psi_degrees_are_eventually_quadratic() {
    let t = std::time::Instant::now();
    let d = psi_degree_sequence(&qi(7), 8, &DegreeConfig::default()).unwrap();
    eprintln!("psi degrees {d:?} in {:?}", t.elapsed());
    let seq: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let f = quadratic_fit(&seq).unwrap();
    assert!(f.eventually_quadratic, "{seq:?}");
    assert_eq!(f.period, 1);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn quadratics_are_recognized(a in 1i64..50, b in -50i64..50, c in -50i64..50, len in 6usize..14) {
            let seq: Vec<i64> = (0..len as i64).map(|n| a * n * n + b * n + c).collect();
            let f = quadratic_fit(&seq).unwrap();
            prop_assert!(f.eventually_quadratic);
            prop_assert_eq!(f.period, 1);
            prop_assert_eq!(f.onset, Some(0));
            prop_assert_eq!(f.leading, Some(a.to_string()));
        }

        #[test]
        fn cubics_are_rejected(a in 1i64..20, b in -20i64..20, len in 6usize..14) {
            let seq: Vec<i64> = (0..len as i64).map(|n| a * n * n * n + b * n).collect();
            prop_assert!(!quadratic_fit(&seq).unwrap().eventually_quadratic);
        }

        #[test]
        fn measured_degrees_do_not_depend_on_seed(seed in 1u64..1000) {
            let cfg = DegreeConfig { seed, trials: 1, ..Default::default() };
            let d = phi_degree_sequence(5, &cfg).unwrap();
            for w in d.windows(2) {
                prop_assert!(w[1].hb.0 >= w[0].hb.0 && w[1].hb.1 >= w[0].hb.1);
            }
            prop_assert_eq!(d[5].hb, HB[5]);
        }
    }
}
