//! Exact eigenstructure of an integer matrix and the growth class of its
//! powers.
//!
//! The characteristic polynomial is split into powers of `t`, cyclotomic
//! factors and a remainder. By Kronecker's theorem a monic integer
//! polynomial whose roots all lie in the closed unit disk is a product of
//! `t` and cyclotomic factors, so a nonconstant remainder certifies a root
//! of modulus > 1. Jordan block sizes for each irreducible factor `p` come
//! from the ranks of `p(M)^k`.

use serde::Serialize;

use skdv_algebra::{fmt_rational, Field, Matrix, UniPoly, Q};

use crate::action::ActionMatrix;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum GrowthClass {
    Bounded,
    Polynomial { degree: usize },
    /// `lambda` is a floating point estimate; exponential growth itself is exact.
    Exponential { lambda: f64 },
}

impl std::fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrowthClass::Bounded => write!(f, "bounded"),
            GrowthClass::Polynomial { degree } => write!(f, "polynomial degree {degree}"),
            GrowthClass::Exponential { lambda } => write!(f, "exponential {lambda:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// The factor `t`.
    Zero,
    /// The cyclotomic polynomial `Φ_n`.
    Cyclotomic(usize),
    /// Anything else (roots off the unit circle exist).
    Other,
}

/// One factor of the characteristic polynomial with its Jordan data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    /// Coefficients, lowest degree first.
    pub coeffs: Vec<String>,
    pub multiplicity: usize,
    /// Sizes of the Jordan blocks attached to each root of the factor,
    /// largest first. Empty for `Other`.
    pub block_sizes: Vec<usize>,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Name of the eigenvalues carried by the factor.
    pub fn eigenvalues(&self) -> String {
        match self.kind {
            FactorKind::Zero => "0".into(),
            FactorKind::Cyclotomic(1) => "1".into(),
            FactorKind::Cyclotomic(2) => "-1".into(),
            FactorKind::Cyclotomic(3) => "ω, ω² (primitive cube roots of 1)".into(),
            FactorKind::Cyclotomic(4) => "±i".into(),
            FactorKind::Cyclotomic(n) => format!("primitive {n}-th roots of 1"),
            FactorKind::Other => format!("roots of {}", self.poly_text()),
        }
    }

    pub fn poly_text(&self) -> String {
        let p: UniPoly<Q> = UniPoly::from_coeffs(self.coeffs.iter().map(|c| skdv_algebra::parse_rational(c).unwrap()).collect());
        p.fmt_var("t")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// `det(tI - M)`, lowest degree first.
    pub charpoly: Vec<String>,
    pub factors: Vec<Factor>,
    /// `true` when every root has modulus at most 1.
    pub spectral_radius_one: bool,
    /// Floating point estimate of the spectral radius.
    pub spectral_radius: f64,
    /// Largest Jordan block of a root of unity.
    pub max_unit_block: usize,
    /// Jordan blocks over `C` as `(eigenvalue, size)`.
    pub jordan: Vec<(String, usize)>,
    pub growth: GrowthClass,
}

impl GrowthReport {
    pub fn block_size_sum(&self) -> usize {
        self.jordan.iter().map(|b| b.1).sum()
    }

    /// Factored characteristic polynomial as text.
    pub fn factored(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                let body = format!("({})", f.poly_text());
                if f.multiplicity > 1 {
                    format!("{body}^{}", f.multiplicity)
                } else {
                    body
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Blocks as `J_s(λ)` text with multiplicities.
    pub fn jordan_text(&self) -> String {
        let mut seen: Vec<((String, usize), usize)> = Vec::new();
        for b in &self.jordan {
            match seen.iter_mut().find(|(k, _)| k == b) {
                Some((_, n)) => *n += 1,
                None => seen.push((b.clone(), 1)),
            }
        }
        seen.iter()
            .map(|((l, s), n)| if *n > 1 { format!("{n}·J{s}({l})") } else { format!("J{s}({l})") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn poly(c: &[i64]) -> UniPoly<Q> {
    UniPoly::from_coeffs(c.iter().map(|&x| Q::from_int(x)).collect())
}

/// `Φ_n`, computed by dividing `t^n - 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic(n: usize) -> UniPoly<Q> {
    let mut p = UniPoly::monomial(Q::one(), n).sub(&UniPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.exact_div(&cyclotomic(d)).expect("Φ_d divides t^n - 1");
        }
    }
    p
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| num_gcd(*k, n) == 1).count()
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// `p(M)` by Horner's rule.
fn eval_at_matrix(p: &UniPoly<Q>, m: &Matrix<Q>) -> Matrix<Q> {
    let n = m.rows;
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
    }
    acc
}

/// Sizes of the Jordan blocks attached to each root of the irreducible
/// factor `p` of multiplicity `mult`, largest first.
fn block_sizes(m: &Matrix<Q>, p: &UniPoly<Q>, mult: usize) -> Vec<usize> {
    let d = p.deg0();
    let pm = eval_at_matrix(p, m);
    let mut ranks = vec![m.rows];
    let mut pk = Matrix::identity(m.rows);
    for _ in 0..mult {
        pk = pk.mul(&pm);
        ranks.push(pk.rank());
    }
    // at_least[k] = number of blocks of size >= k per root.
    let at_least: Vec<usize> = (1..=mult).map(|k| (ranks[k - 1] - ranks[k]) / d).collect();
    let mut sizes = Vec::new();
    for s in (1..=mult).rev() {
        let exact = at_least[s - 1] - at_least.get(s).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat(s).take(exact));
    }
    sizes
}

fn coeff_strings(p: &UniPoly<Q>) -> Vec<String> {
    p.coeffs().iter().map(fmt_rational).collect()
}

/// Largest root modulus by Durand–Kerner iteration.
fn max_root_modulus(p: &UniPoly<Q>) -> f64 {
    use num_traits::ToPrimitive;
    let n = p.deg0();
    if n == 0 {
        return 0.0;
    }
    let lc = p.lc();
    let c: Vec<f64> = p.coeffs().iter().map(|x| (x / &lc).to_f64().unwrap_or(f64::NAN)).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for a in c.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + a, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..n).map(|k| {
        let r = 1.3f64;
        let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
        (r * a.cos(), r * a.sin())
    }).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let num = eval(roots[i]);
            let nn = den.0 * den.0 + den.1 * den.1;
            if nn == 0.0 {
                continue;
            }
            let q = ((num.0 * den.0 + num.1 * den.1) / nn, (num.1 * den.0 - num.0 * den.1) / nn);
            roots[i] = (roots[i].0 - q.0, roots[i].1 - q.1);
        }
    }
    roots.iter().map(|z| z.0.hypot(z.1)).fold(0.0, f64::max)
}

fn eigen_label(kind: &FactorKind, root: usize) -> String {
    match kind {
        FactorKind::Zero => "0".into(),
        FactorKind::Cyclotomic(1) => "1".into(),
        FactorKind::Cyclotomic(2) => "-1".into(),
        FactorKind::Cyclotomic(3) => ["ω", "ω²"][root].into(),
        FactorKind::Cyclotomic(n) => format!("ζ{n}^{root}"),
        FactorKind::Other => "?".into(),
    }
}

/// Exact factorization and Jordan data of a square rational matrix with
/// integer characteristic polynomial.
pub fn jordan_structure(m: &Matrix<Q>) -> GrowthReport {
    let cp = UniPoly::from_coeffs(m.charpoly());
    let mut rest = cp.clone();
    let mut factors = Vec::new();
    let mut push = |kind: FactorKind, p: UniPoly<Q>, rest: &mut UniPoly<Q>| {
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&p) {
            *rest = q;
            mult += 1;
        }
        if mult > 0 {
            let sizes = if kind == FactorKind::Other { Vec::new() } else { block_sizes(m, &p, mult) };
            factors.push(Factor { kind, coeffs: coeff_strings(&p), multiplicity: mult, block_sizes: sizes });
        }
    };
    push(FactorKind::Zero, poly(&[0, 1]), &mut rest);
    let mut n = 1;
    // φ(n) >= sqrt(n/2) bounds the search.
    while rest.deg0() > 0 && n <= 2 * cp.deg0() * cp.deg0() + 2 {
        if euler_phi(n) <= rest.deg0() {
            push(FactorKind::Cyclotomic(n), cyclotomic(n), &mut rest);
        }
        n += 1;
    }
    let rest = rest.monic();
    let radius_one = rest.deg0() == 0;
    if !radius_one {
        push(FactorKind::Other, rest.clone(), &mut rest.clone());
    }
    let mut jordan = Vec::new();
    let mut max_unit = 0;
    for f in &factors {
        if f.kind == FactorKind::Other {
            continue;
        }
        for r in 0..f.degree() {
            for &s in &f.block_sizes {
                jordan.push((eigen_label(&f.kind, r), s));
            }
        }
        if matches!(f.kind, FactorKind::Cyclotomic(_)) {
            max_unit = max_unit.max(f.block_sizes.first().copied().unwrap_or(0));
        }
    }
    let radius = if radius_one {
        if max_unit > 0 {
            1.0
        } else {
            0.0
        }
    } else {
        max_root_modulus(&rest)
    };
    let growth = if !radius_one {
        GrowthClass::Exponential { lambda: radius }
    } else if max_unit <= 1 {
        GrowthClass::Bounded
    } else {
        GrowthClass::Polynomial { degree: max_unit - 1 }
    };
    GrowthReport {
        charpoly: coeff_strings(&cp),
        factors,
        spectral_radius_one: radius_one,
        spectral_radius: radius,
        max_unit_block: max_unit,
        jordan,
        growth,
    }
}

/// Growth report of the pull-back matrix.
pub fn growth_class(m: &ActionMatrix) -> GrowthReport {
    jordan_structure(&m.to_matrix())
}

/// The published Jordan list, and the reading under which it is compared.
pub const PUBLISHED_JORDAN: &str = "1, -1, 1^{1/3} (3×3 blocks), J3(1), J5(0)";
pub const PUBLISHED_READING: &str = "J1(-1), three J1 blocks for each cube root of 1 (1, ω, ω²), one further J1(1), J3(1), J5(0)";

/// Block multiset of [`PUBLISHED_READING`].
pub fn published_reading_blocks() -> Vec<(String, usize)> {
    let mut v = vec![("1".to_string(), 3)];
    v.extend(std::iter::repeat(("1".to_string(), 1)).take(4));
    v.push(("-1".into(), 1));
    v.extend(std::iter::repeat(("ω".to_string(), 1)).take(3));
    v.extend(std::iter::repeat(("ω²".to_string(), 1)).take(3));
    v.push(("0".into(), 5));
    v
}

/// Whether the computed block multiset equals [`published_reading_blocks`].
pub fn matches_published_reading(r: &GrowthReport) -> bool {
    let mut a = r.jordan.clone();
    let mut b = published_reading_blocks();
    a.sort();
    b.sort();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn identity_is_bounded() {
        let r = jordan_structure(&Matrix::identity(4));
        assert_eq!(r.growth, GrowthClass::Bounded);
        assert_eq!(r.jordan, vec![("1".to_string(), 1); 4]);
    }

    #[test]
    fn unipotent_block_is_quadratic() {
        let r = jordan_structure(&int_matrix(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]));
        assert_eq!(r.growth, GrowthClass::Polynomial { degree: 2 });
        assert_eq!(r.jordan, vec![("1".to_string(), 3)]);
    }

    #[test]
    fn hyperbolic_matrix_is_exponential() {
        let r = jordan_structure(&int_matrix(&[&[2, 1], &[1, 1]]));
        let GrowthClass::Exponential { lambda } = r.growth else { panic!("{:?}", r.growth) };
        assert!((lambda - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(!r.spectral_radius_one);
    }

    #[test]
    fn rotation_of_order_three() {
        let r = jordan_structure(&int_matrix(&[&[0, -1], &[1, -1]]));
        assert_eq!(r.growth, GrowthClass::Bounded);
        assert_eq!(r.factors[0].kind, FactorKind::Cyclotomic(3));
        assert_eq!(r.block_size_sum(), 2);
    }
}
