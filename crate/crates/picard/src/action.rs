//! The 19×19 pull-back matrix on `(H_a, H_b, E1..E17)`.
//!
//! Column `B` of the matrix holds the coefficients of `φ*(B)`.

use serde::Serialize;

use skdv_algebra::{Field, Matrix, Q};
use skdv_core::{CoreError, Exec, Result};
use skdv_tower::class::basis_names;
use skdv_tower::valuation::GermField;
use skdv_tower::{DivisorClass, Valuator, RANK};

/// Published rows `B -> φ*(B)`, in basis order.
pub fn published_rows() -> [(&'static str, &'static str); RANK] {
    [
        ("Ha", "Hb"),
        ("Hb", "Ha + 3Hb - 2E1 - 3E11 - E{6,7,9,10,12,13,14}"),
        ("E1", "Hb - E{1,10,11}"),
        ("E2", "Hb - E{1,9,11}"),
        ("E3", "Hb - E{1,7,9,11} + E8"),
        ("E4", "Hb - E{1,7,11}"),
        ("E5", "Hb - E{1,6,11}"),
        ("E6", "E14"),
        ("E7", "E14"),
        ("E8", "E15"),
        ("E9", "E16"),
        ("E10", "E17"),
        ("E11", "E{1,11} - E14"),
        ("E12", "Hb - E{1,11,13}"),
        ("E13", "Hb - E{1,11,12}"),
        ("E14", "E2"),
        ("E15", "E3"),
        ("E16", "E4"),
        ("E17", "E5"),
    ]
}

fn published_class(k: usize) -> DivisorClass {
    published_rows()[k].1.parse().expect("published row parses")
}

/// Where a row of the matrix comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Provenance {
    /// Computed on the blow-up tower and equal to the published row.
    BothAgree,
    /// Taken from the published rows; the computation did not settle it.
    PublishedAsserted { reason: String },
}

/// Integer pull-back matrix with per-row provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionMatrix {
    /// `columns[k] = φ*(basis_k)`.
    pub columns: Vec<DivisorClass>,
    pub provenance: Vec<Provenance>,
}

impl ActionMatrix {
    /// The matrix built from the published rows alone.
    pub fn from_published() -> Self {
        ActionMatrix {
            columns: (0..RANK).map(published_class).collect(),
            provenance: vec![
                Provenance::PublishedAsserted {
                    reason: "not computed".into()
                };
                RANK
            ],
        }
    }

    pub fn from_columns(columns: Vec<DivisorClass>) -> Self {
        assert_eq!(columns.len(), RANK);
        let provenance = vec![
            Provenance::PublishedAsserted {
                reason: "supplied".into()
            };
            RANK
        ];
        ActionMatrix { columns, provenance }
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.columns[j].0[i]
    }

    pub fn to_matrix(&self) -> Matrix<Q> {
        let mut m = Matrix::zeros(RANK, RANK);
        for j in 0..RANK {
            for i in 0..RANK {
                m.set(i, j, Q::from_int(self.entry(i, j)));
            }
        }
        m
    }

    /// Integer rows of the matrix (row `i`, column `j`).
    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..RANK).map(|i| (0..RANK).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// `φ*` applied to a class.
    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        let mut out = DivisorClass::zero();
        for (k, &a) in c.0.iter().enumerate() {
            if a != 0 {
                out = out + a * self.columns[k];
            }
        }
        out
    }

    /// Number of rows computed on the tower.
    pub fn computed_rows(&self) -> usize {
        self.provenance.iter().filter(|p| **p == Provenance::BothAgree).count()
    }

    /// Human-readable row list.
    pub fn describe(&self) -> String {
        let names = basis_names();
        let mut s = String::new();
        for k in 0..RANK {
            let tag = match &self.provenance[k] {
                Provenance::BothAgree => "both-agree".to_string(),
                Provenance::PublishedAsserted { reason } => format!("published-asserted ({reason})"),
            };
            s.push_str(&format!("{:>4} -> {:<48} [{tag}]\n", names[k], self.columns[k].grouped()));
        }
        s
    }
}

/// Pull-back of basis element `k` on the tower.
pub fn computed_row<K: GermField>(v: &Valuator<K>, k: usize) -> Result<DivisorClass> {
    Ok(match k {
        0 => v.pullback_h(false)?.class,
        1 => v.pullback_h(true)?.class,
        _ => v.pullback_exceptional(k - 1)?.class,
    })
}

/// Computes every row on the tower and compares it with the published row.
///
/// A row whose computation is inconclusive is taken from the published
/// list and tagged as such; a computed row that differs is an error.
pub fn build_action_matrix<K: GermField>(v: &Valuator<K>) -> Result<ActionMatrix> {
    // Seeds run in parallel inside the valuator; rows go through the same switch.
    let inner = v.with_exec(Exec::Sequential);
    let results = v.exec.map((0..RANK).collect(), |k| computed_row(&inner, k));
    let names = basis_names();
    let mut columns = Vec::with_capacity(RANK);
    let mut provenance = Vec::with_capacity(RANK);
    for (k, r) in results.into_iter().enumerate() {
        let published = published_class(k);
        match r {
            Ok(c) if c == published => {
                columns.push(c);
                provenance.push(Provenance::BothAgree);
            }
            Ok(c) => {
                return Err(CoreError::Consistency(format!(
                    "row {}: computed {} but published {}",
                    names[k],
                    c.grouped(),
                    published.grouped()
                )))
            }
            Err(e @ (CoreError::Inconclusive { .. } | CoreError::Precision)) => {
                columns.push(published);
                provenance.push(Provenance::PublishedAsserted { reason: e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ActionMatrix { columns, provenance })
}

/// `(H_a, H_b)` coefficients of `(φ*)^k H_a` and `(φ*)^k H_b` for `k = 0..=n`.
pub fn predicted_degrees(m: &ActionMatrix, n: usize) -> Vec<((i64, i64), (i64, i64))> {
    let mut a = DivisorClass::ha();
    let mut b = DivisorClass::hb();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            a = m.apply(&a);
            b = m.apply(&b);
        }
        out.push((a.h_part(), b.h_part()));
    }
    out
}

/// Exact basis of `ker(M - I)`.
pub fn fixed_classes(m: &ActionMatrix) -> Vec<Vec<Q>> {
    let a = m.to_matrix().sub(&Matrix::identity(RANK));
    a.kernel()
}

/// Whether `φ*(c) = c`.
pub fn is_fixed(m: &ActionMatrix, c: &DivisorClass) -> bool {
    m.apply(c) == *c
}

/// Whether `c` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Q>], c: &DivisorClass) -> bool {
    let mut rows: Vec<Vec<Q>> = basis.to_vec();
    let r0 = Matrix::from_rows(rows.clone()).rank();
    rows.push(c.0.iter().map(|&x| Q::from_int(x)).collect());
    Matrix::from_rows(rows).rank() == r0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_rows_parse() {
        let m = ActionMatrix::from_published();
        assert_eq!(m.columns[0], DivisorClass::hb());
        assert_eq!(m.columns[4].e_coeff(8), 1);
        assert_eq!(m.columns[12], "E1 + E11 - E14".parse().unwrap());
    }

    #[test]
    fn degrees_start_at_identity() {
        let m = ActionMatrix::from_published();
        let d = predicted_degrees(&m, 1);
        assert_eq!(d[0], ((1, 0), (0, 1)));
        assert_eq!(d[1], ((0, 1), (1, 3)));
    }
}
