//! Eventually quadratic integer sequences.

use serde::Serialize;

use skdv_algebra::{fmt_rational, Q};
use skdv_core::{CoreError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticFit {
    pub eventually_quadratic: bool,
    /// `c` in `a_n ~ c n²`, as `p/q`.
    pub leading: Option<String>,
    /// First index from which the fit holds.
    pub onset: Option<usize>,
    /// Stride of the differences; 1 means the second differences are
    /// eventually constant, `p > 1` that they are eventually periodic
    /// with period `p` (a quasi-polynomial of degree 2).
    pub period: usize,
}

const MIN_LEN: usize = 6;

/// Smallest `onset` such that `v[onset..]` is constant with at least
/// `min_tail` entries.
fn constant_tail(v: &[i64], min_tail: usize) -> Option<usize> {
    let last = *v.last()?;
    let mut onset = v.len() - 1;
    while onset > 0 && v[onset - 1] == last {
        onset -= 1;
    }
    (v.len() - onset >= min_tail).then_some(onset)
}

/// Tests whether `seq` is eventually quadratic.
///
/// With stride `p`, `a_{i+2p} - 2a_{i+p} + a_i` must be a positive
/// constant `C` for all `i >= onset`; then `a_n ~ C/(2p²) n²`. Strides are
/// tried in increasing order; stride `p` needs `p + 2` confirming values.
pub fn quadratic_fit(seq: &[i64]) -> Result<QuadraticFit> {
    if seq.len() < MIN_LEN {
        return Err(CoreError::InsufficientData { need: MIN_LEN, got: seq.len() });
    }
    let mut p = 1;
    while seq.len() >= 2 * p + p + 2 {
        let d: Vec<i64> = (0..seq.len() - 2 * p)
            .map(|i| seq[i + 2 * p] - 2 * seq[i + p] + seq[i])
            .collect();
        if let Some(onset) = constant_tail(&d, p + 2) {
            if d[onset] > 0 {
                let c = Q::new(d[onset].into(), (2 * p * p).into());
                return Ok(QuadraticFit {
                    eventually_quadratic: true,
                    leading: Some(fmt_rational(&c)),
                    onset: Some(onset),
                    period: p,
                });
            }
        }
        p += 1;
    }
    Ok(QuadraticFit { eventually_quadratic: false, leading: None, onset: None, period: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        let f = quadratic_fit(&[0, 1, 4, 9, 16, 25, 36]).unwrap();
        assert_eq!(
            f,
            QuadraticFit { eventually_quadratic: true, leading: Some("1".into()), onset: Some(0), period: 1 }
        );
    }

    #[test]
    fn powers_of_two_are_not_quadratic() {
        assert!(!quadratic_fit(&[1, 2, 4, 8, 16, 32, 64]).unwrap().eventually_quadratic);
    }

    #[test]
    fn linear_is_not_quadratic() {
        assert!(!quadratic_fit(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap().eventually_quadratic);
    }

    #[test]
    fn too_short() {
        assert!(matches!(quadratic_fit(&[1, 2, 3]), Err(CoreError::InsufficientData { .. })));
    }

    #[test]
    fn periodic_second_differences() {
        let f = quadratic_fit(&[1, 3, 6, 11, 17, 24, 33, 43, 54, 67, 81]).unwrap();
        assert!(f.eventually_quadratic);
        assert_eq!(f.period, 3);
        assert_eq!(f.leading.as_deref(), Some("2/3"));
    }
}
