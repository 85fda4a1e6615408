use skdv_picard::action::{in_span, is_fixed};
use skdv_picard::growth::{matches_published_reading, FactorKind};
use skdv_picard::*;
use skdv_tower::{default_valuator, DivisorClass};

const I1_CLASS: &str = "2Ha + 2Hb - 2E1 - 2E6 - 4E11 - E{2,4,7,9,12,13,14,16}";
const I2_CLASS: &str = "2Ha + 2Hb - 3E11 - E{1,2,4,5,6,7,9,10,12,13,14,16,17}";

#[test]
fn charpoly_factors_into_t_and_cyclotomics() {
    let r = growth_class(&ActionMatrix::from_published());
    let kinds: Vec<(FactorKind, usize)> = r.factors.iter().map(|f| (f.kind.clone(), f.multiplicity)).collect();
    assert_eq!(
        kinds,
        vec![
            (FactorKind::Zero, 5),
            (FactorKind::Cyclotomic(1), 7),
            (FactorKind::Cyclotomic(2), 1),
            (FactorKind::Cyclotomic(3), 3),
        ]
    );
    assert!(r.spectral_radius_one);
    assert_eq!(r.max_unit_block, 3);
    assert_eq!(r.growth, GrowthClass::Polynomial { degree: 2 });
    assert_eq!(r.block_size_sum(), 19);
    assert!(matches_published_reading(&r), "{}", r.jordan_text());
}

#[test]
fn jordan_blocks_per_factor() {
    let r = growth_class(&ActionMatrix::from_published());
    let sizes: Vec<Vec<usize>> = r.factors.iter().map(|f| f.block_sizes.clone()).collect();
    assert_eq!(sizes, vec![vec![5], vec![3, 1, 1, 1, 1], vec![1], vec![1, 1, 1]]);
}

#[test]
fn predicted_bidegrees() {
    let d = predicted_degrees(&ActionMatrix::from_published(), 10);
    let hb: Vec<(i64, i64)> = d.iter().map(|x| x.1).collect();
    assert_eq!(
        hb,
        vec![(0, 1), (1, 3), (3, 6), (6, 11), (11, 17), (17, 24), (24, 33), (33, 43), (43, 54), (54, 67), (67, 81)]
    );
    for n in 1..=10 {
        assert_eq!(d[n].0, d[n - 1].1);
    }
    let b: Vec<i64> = hb.iter().map(|x| x.1).collect();
    let second: Vec<i64> = b.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect();
    let third: Vec<i64> = second.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(third.iter().skip(4).all(|&t| t.abs() <= 2));
}

#[test]
fn invariant_classes_are_fixed() {
    let m = ActionMatrix::from_published();
    let ker = fixed_classes(&m);
    for text in [I1_CLASS, I2_CLASS] {
        let c: DivisorClass = text.parse().unwrap();
        assert!(is_fixed(&m, &c), "{text}");
        assert!(in_span(&ker, &c), "{text}");
    }
    // Each kernel vector really is fixed.
    let a = m.to_matrix();
    for v in &ker {
        assert_eq!(a.mul_vec(v), *v);
    }
    assert!(!in_span(&ker, &DivisorClass::ha()));
    // One fixed vector per eigenvalue-1 Jordan block.
    assert_eq!(ker.len(), 5);
}

#[test]
fn computed_rows_agree_with_published_rows() {
    let m = build_action_matrix(&default_valuator()).unwrap();
    assert_eq!(m.computed_rows(), 19, "{}", m.describe());
    assert_eq!(m, ActionMatrix { provenance: m.provenance.clone(), ..ActionMatrix::from_published() });
}

mod props {
    use proptest::prelude::*;
    use skdv_algebra::{Field, Matrix, Q};
    use skdv_picard::{jordan_structure, GrowthClass};

    /// Block-diagonal matrix of Jordan blocks `J_s(λ)`, λ ∈ {0, 1, -1}.
    fn jordan_matrix(blocks: &[(i64, usize)]) -> Matrix<Q> {
        let n: usize = blocks.iter().map(|b| b.1).sum();
        let mut m = Matrix::zeros(n, n);
        let mut at = 0;
        for &(l, s) in blocks {
            for i in 0..s {
                m.set(at + i, at + i, Q::from_int(l));
                if i + 1 < s {
                    m.set(at + i, at + i + 1, Q::one());
                }
            }
            at += s;
        }
        m
    }

    /// Unimodular upper-triangular `U` and its inverse.
    fn unimodular(n: usize, entries: &[i64]) -> (Matrix<Q>, Matrix<Q>) {
        let mut u = Matrix::identity(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                u.set(i, j, Q::from_int(entries[k % entries.len()]));
                k += 1;
            }
        }
        // Back substitution for U⁻¹.
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = if i == col { Q::one() } else { Q::zero() };
                for j in i + 1..n {
                    acc = acc.sub(&u.get(i, j).mul(inv.get(j, col)));
                }
                inv.set(i, col, acc);
            }
        }
        (u, inv)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn jordan_data_survives_conjugation(
            blocks in prop::collection::vec((prop::sample::select(vec![0i64, 1, -1]), 1usize..4), 1..4),
            entries in prop::collection::vec(-2i64..3, 1..8),
        ) {
            let j = jordan_matrix(&blocks);
            let (u, inv) = unimodular(j.rows, &entries);
            prop_assert_eq!(u.mul(&inv), Matrix::identity(j.rows));
            let r = jordan_structure(&u.mul(&j).mul(&inv));
            prop_assert_eq!(r.block_size_sum(), j.rows);
            prop_assert!(r.spectral_radius_one);
            let unit = blocks.iter().filter(|b| b.0 != 0).map(|b| b.1).max().unwrap_or(0);
            prop_assert_eq!(r.max_unit_block, unit);
            let expect = if unit <= 1 { GrowthClass::Bounded } else { GrowthClass::Polynomial { degree: unit - 1 } };
            prop_assert_eq!(r.growth, expect);
            let mut got: Vec<usize> = r.jordan.iter().map(|b| b.1).collect();
            let mut want: Vec<usize> = blocks.iter().map(|b| b.1).collect();
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}
