//! Degrees of iterates restricted to random lines.
//!
//! A line `x_i = a_i + s b_i` in one group of source coordinates (the
//! others frozen at random constants) is pushed through the map with
//! every coordinate kept as a reduced rational function of `s`. The degree
//! of a group of image coordinates is that of the curve `s -> (y_i)` in the
//! projective space the group is an affine chart of: the maximum of the
//! degrees of the common denominator and of the numerators over it.
//!
//! By default the arithmetic is done in `F_p` (`p = 2^61 - 1`) after
//! mapping the rational line and parameters there. Like the choice of a
//! special line, reduction mod `p` can only lower a degree, so the maximum
//! over trials is unaffected unless every trial is unlucky.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use skdv_algebra::random::{random_nonzero_rational, random_rational};
use skdv_algebra::{Field, Fp, RatFunc, UniPoly, Q};
use skdv_core::dynamics::RationalMapDef;
use skdv_core::{CoreError, Exec, Result};


/// Coefficient field of the line computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Rational,
    #[default]
    Modular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeConfig {
    /// Independent lines per source group.
    pub trials: usize,
    /// Height bound of the line coefficients.
    pub height: i64,
    pub seed: u64,
    /// Fixed `h`; drawn from the seed when `None`.
    #[serde(with = "skdv_core::serde_q::option")]
    pub h: Option<Q>,
    /// Redraws allowed when a line meets a pole.
    pub retries: usize,
    pub arithmetic: Arithmetic,
    pub exec: Exec,
}

impl Default for DegreeConfig {
    fn default() -> Self {
        DegreeConfig { trials: 3, height: 97, seed: 1, h: None, retries: 8, arithmetic: Arithmetic::Modular, exec: Exec::default() }
    }
}

impl DegreeConfig {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ salt)
    }

    /// The parameter `h` of this run.
    pub fn h_value(&self) -> Q {
        self.h.clone().unwrap_or_else(|| random_nonzero_rational(&mut self.rng(0x68), self.height))
    }
}

/// Degree of the curve `s -> (y_i)` in the projective closure of the
/// affine chart with coordinates `y_i`.
pub fn projective_degree<K: Field>(ys: &[&RatFunc<K>]) -> usize {
    let mut den = UniPoly::<K>::one();
    for y in ys {
        let g = K::poly_gcd(&den, y.den());
        den = den.mul(&y.den().exact_div(&g).expect("gcd divides"));
    }
    let mut d = den.deg0();
    for y in ys {
        let cof = den.exact_div(y.den()).expect("common denominator");
        d = d.max(y.num().mul(&cof).deg0());
    }
    d
}

/// `degrees[n][g][f]`: degree of target group `g` of the `n`-th iterate on
/// a line in source group `f`, maximized over trials; `agree[n]` records
/// whether all trials gave the same values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub degrees: Vec<Vec<Vec<usize>>>,
    pub agree: Vec<bool>,
}

/// Orbit of a line under `map`; `None` on a pole.
fn line_orbit<K: Field>(
    map: &RationalMapDef,
    source: &[usize],
    params: &[Q],
    n_max: usize,
    rng: &mut ChaCha8Rng,
    height: i64,
) -> Option<Vec<Vec<RatFunc<K>>>> {
    let dim = map.targets.len();
    let s = RatFunc::<K>::var();
    let c = |q: Q| RatFunc::constant(K::from_rational(&q));
    let mut x: Vec<RatFunc<K>> = (0..dim)
        .map(|i| {
            let a = c(random_rational(rng, height));
            if source.contains(&i) {
                a.add(&s.mul(&c(random_nonzero_rational(rng, height))))
            } else {
                a
            }
        })
        .collect();
    let mut orbit = vec![x.clone()];
    for _ in 0..n_max {
        let mut vals = x.clone();
        vals.extend(params.iter().cloned().map(c));
        x = map.components.iter().map(|c| c.eval(&vals)).collect::<Option<Vec<_>>>()?;
        orbit.push(x.clone());
    }
    Some(orbit)
}

/// `degs[n][g]` for one line.
fn line_degrees<K: Field>(
    map: &RationalMapDef,
    source: &[usize],
    targets: &[Vec<usize>],
    params: &[Q],
    n_max: usize,
    rng: &mut ChaCha8Rng,
    height: i64,
) -> Option<Vec<Vec<usize>>> {
    let orbit = line_orbit::<K>(map, source, params, n_max, rng, height)?;
    Some(
        orbit
            .iter()
            .map(|x| targets.iter().map(|g| projective_degree(&g.iter().map(|&i| &x[i]).collect::<Vec<_>>())).collect())
            .collect(),
    )
}

/// Degrees of the iterates `map^n`, `n <= n_max`, along random lines.
///
/// `map` acts on its first `targets.len()` variables; the remaining
/// variables are the fixed `params`.
pub fn degree_sequence(
    map: &RationalMapDef,
    sources: &[Vec<usize>],
    targets: &[Vec<usize>],
    params: &[Q],
    n_max: usize,
    cfg: &DegreeConfig,
) -> Result<DegreeTable> {
    if cfg.trials == 0 {
        return Err(CoreError::Invalid("at least one trial is needed".into()));
    }
    if map.targets.len() + params.len() != map.vars.len() {
        return Err(CoreError::Invalid(format!(
            "{} takes {} parameters, got {}",
            map.name,
            map.vars.len() - map.targets.len(),
            params.len()
        )));
    }
    let jobs: Vec<(usize, usize)> = (0..sources.len()).flat_map(|f| (0..cfg.trials).map(move |t| (f, t))).collect();
    let runs = cfg.exec.map(jobs, |(f, t)| -> Result<(usize, Vec<Vec<usize>>)> {
        let mut rng = cfg.rng(((f as u64) << 32) | t as u64 | 0x100);
        for _ in 0..=cfg.retries {
            let degs = match cfg.arithmetic {
                Arithmetic::Rational => line_degrees::<Q>(map, &sources[f], targets, params, n_max, &mut rng, cfg.height),
                Arithmetic::Modular => line_degrees::<Fp>(map, &sources[f], targets, params, n_max, &mut rng, cfg.height),
            };
            if let Some(degs) = degs {
                return Ok((f, degs));
            }
        }
        Err(CoreError::Inconclusive {
            what: format!("every line in source group {f} met a pole of {}", map.name),
            attempts: cfg.retries + 1,
        })
    });
    let mut degrees = vec![vec![vec![0; sources.len()]; targets.len()]; n_max + 1];
    let mut seen: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; sources.len()]; n_max + 1];
    let mut agree = vec![true; n_max + 1];
    for r in runs {
        let (f, degs) = r?;
        for (n, row) in degs.into_iter().enumerate() {
            for (g, &d) in row.iter().enumerate() {
                degrees[n][g][f] = degrees[n][g][f].max(d);
            }
            match &seen[n][f] {
                Some(prev) if *prev != row => agree[n] = false,
                Some(_) => {}
                None => seen[n][f] = Some(row),
            }
        }
    }
    Ok(DegreeTable { degrees, agree })
}

/// Measured `(H_a, H_b)` coefficients of `(φⁿ)*H_a` and `(φⁿ)*H_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDegrees {
    pub n: usize,
    pub ha: (usize, usize),
    pub hb: (usize, usize),
    /// All trials gave the same degrees.
    pub agree: bool,
}

impl FactorDegrees {
    /// Bidegree of `φⁿ`: the larger of the two pull-backs in each slot.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.ha.0.max(self.hb.0), self.ha.1.max(self.hb.1))
    }
}

/// Degrees of `φⁿ` on `P²×P²` for `n <= n_max`.
pub fn phi_degree_sequence(n_max: usize, cfg: &DegreeConfig) -> Result<Vec<FactorDegrees>> {
    let groups = vec![vec![0, 1], vec![2, 3]];
    let t = degree_sequence(&RationalMapDef::phi(), &groups, &groups, &[cfg.h_value()], n_max, cfg)?;
    Ok(t.degrees
        .iter()
        .zip(&t.agree)
        .enumerate()
        .map(|(n, (d, &agree))| FactorDegrees { n, ha: (d[0][0], d[0][1]), hb: (d[1][0], d[1][1]), agree })
        .collect())
}

/// Degrees of `ψⁿ`: the largest numerator or denominator degree of the
/// components along a line in `(x0, x1, x2)`. `i2_value` is the level of
/// `I₂`.
pub fn psi_degree_sequence(i2_value: &Q, n_max: usize, cfg: &DegreeConfig) -> Result<Vec<usize>> {
    let t = degree_sequence(
        &RationalMapDef::psi(),
        &[vec![0, 1, 2]],
        &[vec![0], vec![1], vec![2]],
        &[cfg.h_value(), i2_value.clone()],
        n_max,
        cfg,
    )?;
    Ok(t.degrees.iter().map(|d| d.iter().map(|g| g[0]).max().unwrap_or(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use skdv_algebra::qi;

    type Qs = RatFunc<Q>;

    #[test]
    fn projective_degree_uses_common_denominator() {
        let s = Qs::var();
        let a = Qs::one().div(&s.sub(&Qs::one())).unwrap();
        let b = Qs::one().div(&s.sub(&Qs::from_int(2))).unwrap();
        assert_eq!(projective_degree(&[&a, &b]), 2);
        assert_eq!(projective_degree(&[&a, &a]), 1);
        assert_eq!(projective_degree(&[&Qs::constant(qi(3))]), 0);
    }

    #[test]
    fn first_iterate() {
        let cfg = DegreeConfig { h: Some(qi(3)), ..Default::default() };
        let d = phi_degree_sequence(1, &cfg).unwrap();
        assert_eq!((d[0].ha, d[0].hb), ((1, 0), (0, 1)));
        assert_eq!((d[1].ha, d[1].hb), ((0, 1), (1, 3)));
        assert_eq!(d[1].bidegree(), (1, 3));
    }

    #[test]
    fn modular_and_rational_agree() {
        let m = DegreeConfig { h: Some(qi(3)), ..Default::default() };
        let r = DegreeConfig { arithmetic: Arithmetic::Rational, ..m.clone() };
        assert_eq!(phi_degree_sequence(3, &m).unwrap(), phi_degree_sequence(3, &r).unwrap());
    }

    #[test]
    fn psi_starts_at_one() {
        let d = psi_degree_sequence(&qi(5), 0, &DegreeConfig::default()).unwrap();
        assert_eq!(d, vec![1]);
    }
}
