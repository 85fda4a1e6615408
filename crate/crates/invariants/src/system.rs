//! Vanishing conditions along the exceptional divisors, their kernel, and
//! the comparison with `{1, I₁, I₂}`.
//!
//! For each `E_i` and each sampled germ `x(ε)` on it, the homogenized
//! ansatz `ε^s Σ a_j m_j(x(ε))` must vanish to order `ν_i`; the coefficients
//! of `ε^0..ε^(ν_i - 1)` are linear in the `a_j` and give the rows. Rows
//! from a finite set of germs only impose a subset of the conditions, so the
//! computed kernel contains the true one; kernel members are then checked
//! on fresh germs, which bounds it from below.

use serde::Serialize;

use skdv_algebra::{Field, Matrix, MultiPoly};
use skdv_core::dynamics::{i1_poly, i2_poly};
use skdv_core::{CoreError, Exec, Result};
use skdv_tower::valuation::{pole_order, GermField};
use skdv_tower::{Series, Valuator, NUM_E};

use crate::ansatz::{Ansatz, ClassConstraint};

const MAX_WORK: usize = 384;

/// Rows of the linear system on the ansatz coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingSystem<K: Field> {
    pub rows: Vec<Vec<K>>,
    /// `(i, k, seed)` for each row: coefficient of `ε^k` on `E_i`.
    pub labels: Vec<(usize, i64, u64)>,
    pub unknowns: usize,
}

impl<K: Field> VanishingSystem<K> {
    pub fn matrix(&self) -> Matrix<K> {
        if self.rows.is_empty() {
            return Matrix::zeros(0, self.unknowns);
        }
        Matrix::from_rows(self.rows.clone())
    }

    pub fn rank(&self) -> usize {
        if self.rows.is_empty() {
            0
        } else {
            self.matrix().rank()
        }
    }

    /// Rows coming from the listed seeds only.
    pub fn restricted(&self, seeds: &[u64]) -> Self {
        let (rows, labels) = self
            .rows
            .iter()
            .zip(&self.labels)
            .filter(|(_, l)| seeds.contains(&l.2))
            .map(|(r, l)| (r.clone(), *l))
            .unzip();
        VanishingSystem { rows, labels, unknowns: self.unknowns }
    }
}

fn check_h<K: GermField>(v: &Valuator<K>) -> Result<()> {
    if !K::GENERIC_H && v.h.is_none() {
        return Err(CoreError::Invalid("the germs of one system must share h; fix it in the valuator".into()));
    }
    Ok(())
}

/// Homogenized values `ε^s m_j(x)` of the monomials and the shift `s`.
fn monomial_series<K: Field>(ansatz: &Ansatz, x: &[Series<K>; 4], bidegree: (u32, u32)) -> Result<(Vec<Series<K>>, i64)> {
    let s = -(bidegree.0 as i64) * pole_order(&x[0], &x[1])? - bidegree.1 as i64 * pole_order(&x[2], &x[3])?;
    let pows: Vec<Vec<Series<K>>> = x
        .iter()
        .map(|xi| {
            let mut p = vec![Series::one()];
            for e in 1..=2 {
                p.push(p[e - 1].mul(xi));
            }
            p
        })
        .collect();
    let vals = ansatz
        .monomials
        .iter()
        .map(|m| (0..4).fold(Series::one(), |acc: Series<K>, i| acc.mul(&pows[i][m[i] as usize])))
        .collect();
    Ok((vals, s))
}

/// Rows for `E_i` on the germ of `seed`, doubling the series precision
/// until every needed coefficient is known.
fn rows_for<K: GermField>(
    v: &Valuator<K>,
    ansatz: &Ansatz,
    c: &ClassConstraint,
    i: usize,
    seed: u64,
) -> Result<Vec<Vec<K>>> {
    let m = c.mults[i - 1];
    let mut work = v.work;
    loop {
        let attempt = || -> Result<Vec<Vec<K>>> {
            let x = v.exceptional_germ(i, seed, work)?;
            let (vals, s) = monomial_series(ansatz, &x, c.bidegree)?;
            (0..m)
                .map(|k| vals.iter().map(|f| Ok(f.coeff(k - s)?)).collect::<Result<Vec<K>>>())
                .collect()
        };
        match attempt() {
            Err(CoreError::Precision) if work < MAX_WORK => work *= 2,
            r => return r,
        }
    }
}

/// Assembles the vanishing conditions of `c` on `ansatz`, one germ per
/// valuator seed and divisor.
pub fn vanishing_system<K: GermField>(
    v: &Valuator<K>,
    ansatz: &Ansatz,
    c: &ClassConstraint,
) -> Result<VanishingSystem<K>> {
    check_h(v)?;
    if c.mults.len() != NUM_E {
        return Err(CoreError::Invalid(format!("{} multiplicities given, {NUM_E} needed", c.mults.len())));
    }
    let jobs: Vec<(usize, u64)> =
        (1..=NUM_E).filter(|&i| c.mults[i - 1] > 0).flat_map(|i| v.seeds.iter().map(move |&s| (i, s))).collect();
    let inner = v.with_exec(Exec::Sequential);
    let blocks = v.exec.map(jobs.clone(), |(i, s)| rows_for(&inner, ansatz, c, i, s));
    let mut sys = VanishingSystem { rows: Vec::new(), labels: Vec::new(), unknowns: ansatz.len() };
    for ((i, s), b) in jobs.into_iter().zip(blocks) {
        for (k, row) in b?.into_iter().enumerate() {
            sys.rows.push(row);
            sys.labels.push((i, k as i64, s));
        }
    }
    Ok(sys)
}

/// Exact kernel basis (reduced echelon form).
pub fn solve_kernel<K: Field>(sys: &VanishingSystem<K>) -> Vec<Vec<K>> {
    if sys.rows.is_empty() {
        return (0..sys.unknowns)
            .map(|j| (0..sys.unknowns).map(|i| if i == j { K::one() } else { K::zero() }).collect())
            .collect();
    }
    sys.matrix().kernel()
}

/// Orders of the homogenized polynomial `f` along `E_1..E_17` on the germs
/// of the given seeds (minimum over seeds). `None` marks identical
/// vanishing.
pub fn orders_on_germs<K: GermField>(
    v: &Valuator<K>,
    ansatz: &Ansatz,
    f: &[K],
    bidegree: (u32, u32),
    seeds: &[u64],
) -> Result<Vec<Option<i64>>> {
    let jobs: Vec<usize> = (1..=NUM_E).collect();
    let res = v.exec.map(jobs, |i| -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for &seed in seeds {
            let mut work = v.work;
            let o = loop {
                let attempt = || -> Result<Option<i64>> {
                    let x = v.exceptional_germ(i, seed, work)?;
                    let (vals, s) = monomial_series(ansatz, &x, bidegree)?;
                    let mut acc = Series::<K>::zero();
                    for (c, m) in f.iter().zip(&vals) {
                        if !c.is_zero() {
                            acc = acc.add(&m.mul(&Series::constant(c.clone())));
                        }
                    }
                    Ok(acc.ord()?.finite().map(|o| o + s))
                };
                match attempt() {
                    Err(CoreError::Precision) if work < MAX_WORK => work *= 2,
                    r => break r?,
                }
            };
            best = match (best, o) {
                (None, o) => o,
                (Some(b), Some(o)) => Some(b.min(o)),
                (Some(b), None) => Some(b),
            };
        }
        Ok(best)
    });
    res.into_iter().collect()
}

/// Comparison of a kernel with a target span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantMatch {
    pub targets: Vec<String>,
    pub kernel_dim: usize,
    pub target_dim: usize,
    pub spans_equal: bool,
    /// Row `b`: kernel basis vector `b` in terms of the targets.
    pub kernel_in_targets: Vec<Vec<String>>,
    /// Row `t`: target `t` in terms of the kernel basis.
    pub targets_in_kernel: Vec<Vec<String>>,
}

/// Coefficients `c` with `Σ c_i basis_i = v`, if `v` is in the span of the
/// (independent) `basis`.
fn coordinates<K: Field>(basis: &[Vec<K>], v: &[K]) -> Option<Vec<K>> {
    let n = v.len();
    let rows: Vec<Vec<K>> = (0..n)
        .map(|r| basis.iter().map(|b| b[r].clone()).chain(std::iter::once(v[r].clone())).collect())
        .collect();
    let ker = Matrix::from_rows(rows).kernel();
    let w = ker.iter().find(|w| !w[basis.len()].is_zero())?;
    let d = w[basis.len()].neg();
    Some(w[..basis.len()].iter().map(|c| c.div(&d).expect("nonzero")).collect())
}

fn rank_of<K: Field>(vs: &[Vec<K>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        Matrix::from_rows(vs.to_vec()).rank()
    }
}

/// Whether `kernel` spans the same space as `targets`, with the change of
/// basis in both directions. A dimension mismatch is reported, not raised.
pub fn match_invariants<K: Field>(kernel: &[Vec<K>], targets: &[(String, Vec<K>)]) -> InvariantMatch {
    let tv: Vec<Vec<K>> = targets.iter().map(|t| t.1.clone()).collect();
    let kd = rank_of(kernel);
    let td = rank_of(&tv);
    let mut all = kernel.to_vec();
    all.extend(tv.iter().cloned());
    let spans_equal = kd == kernel.len() && td == tv.len() && kd == td && rank_of(&all) == kd;
    let fmt = |c: Option<Vec<K>>| c.map(|c| c.iter().map(|x| format!("{x}")).collect()).unwrap_or_default();
    let (kernel_in_targets, targets_in_kernel) = if spans_equal {
        (
            kernel.iter().map(|k| fmt(coordinates(&tv, k))).collect(),
            tv.iter().map(|t| fmt(coordinates(kernel, t))).collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    InvariantMatch {
        targets: targets.iter().map(|t| t.0.clone()).collect(),
        kernel_dim: kernel.len(),
        target_dim: tv.len(),
        spans_equal,
        kernel_in_targets,
        targets_in_kernel,
    }
}

/// `1`, `I₁` (and `I₂`) as ansatz vectors at the given `h`.
pub fn invariant_targets<K: Field>(ansatz: &Ansatz, h: &K, with_i2: bool) -> Result<Vec<(String, Vec<K>)>> {
    let one = MultiPoly::one(i1_poly().vars());
    let mut t = vec![("1".to_string(), ansatz.vector(&one, h)?), ("I1".to_string(), ansatz.vector(i1_poly(), h)?)];
    if with_i2 {
        t.push(("I2".to_string(), ansatz.vector(i2_poly(), h)?));
    }
    Ok(t)
}

/// Settings of [`find_invariants`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FinderConfig {
    /// Germs per divisor used for the rows.
    pub samples: usize,
    /// Fresh germs per divisor used to check the kernel members.
    pub check_samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig { samples: 4, check_samples: 2, seed: 1, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub class: String,
    pub mults: Vec<i64>,
    pub ansatz: crate::ansatz::AnsatzKind,
    pub unknowns: usize,
    pub rows: usize,
    pub rank: usize,
    /// Rank reached without the last sample; equal to `rank` when the
    /// conditions from the sampled germs have saturated.
    pub rank_without_last_sample: usize,
    pub h: String,
    pub kernel: Vec<String>,
    /// Every kernel basis vector vanishes to the required orders on fresh
    /// germs.
    pub kernel_checked: bool,
    pub matched: InvariantMatch,
}

impl InvariantReport {
    pub fn saturated(&self) -> bool {
        self.rank == self.rank_without_last_sample
    }
}

/// Solves the linear system of `c` on `ansatz` and compares the kernel with
/// `{1, I₁}`, or `{1, I₁, I₂}` when `with_i2`.
pub fn find_invariants<K: GermField>(
    v: &Valuator<K>,
    ansatz: &Ansatz,
    c: &ClassConstraint,
    with_i2: bool,
    cfg: &FinderConfig,
) -> Result<InvariantReport> {
    if cfg.samples < 2 {
        return Err(CoreError::Invalid("at least two germs per divisor are needed".into()));
    }
    let seeds: Vec<u64> = (0..cfg.samples as u64).map(|k| cfg.seed.wrapping_mul(1000).wrapping_add(k)).collect();
    let fresh: Vec<u64> =
        (0..cfg.check_samples as u64).map(|k| cfg.seed.wrapping_mul(1000).wrapping_add(500 + k)).collect();
    let mut vv = v.with_exec(cfg.exec);
    vv.seeds = seeds.clone();
    let sys = vanishing_system(&vv, ansatz, c)?;
    let rank = sys.rank();
    let rank_without_last_sample = sys.restricted(&seeds[..seeds.len() - 1]).rank();
    let kernel = solve_kernel(&sys);
    let mut kernel_checked = true;
    for f in &kernel {
        let orders = orders_on_germs(&vv, ansatz, f, c.bidegree, &fresh)?;
        if orders.iter().zip(&c.mults).any(|(o, m)| o.is_some_and(|o| o < *m)) {
            kernel_checked = false;
        }
    }
    let h = K::param(&v.h.clone().unwrap_or_default());
    // Compare inside the full bidegree-(2, 2) space, which holds the targets.
    let full = Ansatz::bidegree();
    let targets = invariant_targets(&full, &h, with_i2)?;
    let embedded: Vec<Vec<K>> = kernel
        .iter()
        .map(|k| {
            let mut e = vec![K::zero(); full.len()];
            for (c, m) in k.iter().zip(&ansatz.monomials) {
                let j = full.monomials.iter().position(|f| f == m).expect("sub-ansatz of bidegree (2, 2)");
                e[j] = c.clone();
            }
            e
        })
        .collect();
    Ok(InvariantReport {
        class: c.class.clone(),
        mults: c.mults.clone(),
        ansatz: ansatz.kind,
        unknowns: ansatz.len(),
        rows: sys.rows.len(),
        rank,
        rank_without_last_sample,
        h: if K::GENERIC_H { "generic".into() } else { v.h.as_ref().map(skdv_algebra::fmt_rational).unwrap_or_default() },
        kernel: kernel.iter().map(|k| ansatz.render(k)).collect(),
        kernel_checked,
        matched: match_invariants(&embedded, &targets),
    })
}
