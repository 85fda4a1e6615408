//! Valuations of hypersurfaces and blow-up centers along the divisors of
//! the tower, computed on parametrized germs.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use skdv_algebra::random::{random_nonzero_rational, random_rational};
use skdv_algebra::{parse_poly, Field, MultiPoly, Qh, Valuation, Q};
use skdv_core::dynamics::{phi_step, phi_vars};
use skdv_core::{CoreError, Exec, Result};

use crate::class::{DivisorClass, NUM_E};
use crate::tower::{Series, Tower};

/// A hypersurface `f = 0` of `P²×P²` given by an affine polynomial and the
/// bidegree of its homogenization.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypersurface {
    pub name: String,
    pub poly: MultiPoly,
    pub bidegree: (u32, u32),
}

impl Hypersurface {
    pub fn new(name: &str, poly: MultiPoly, bidegree: (u32, u32)) -> Result<Self> {
        let poly = poly.align(&phi_vars())?;
        if poly.degree_in_set(&[0, 1]) > bidegree.0 || poly.degree_in_set(&[2, 3]) > bidegree.1 {
            return Err(CoreError::Invalid(format!(
                "{name} exceeds bidegree ({}, {})",
                bidegree.0, bidegree.1
            )));
        }
        if poly.is_zero() {
            return Err(CoreError::Invalid(format!("{name} is the zero polynomial")));
        }
        Ok(Hypersurface {
            name: name.into(),
            poly,
            bidegree,
        })
    }

    pub fn parse(text: &str, bidegree: (u32, u32)) -> Result<Self> {
        Self::new(text, parse_poly(text, &phi_vars())?, bidegree)
    }

    /// The line at infinity `z1 = 0` of the first factor.
    pub fn z1() -> Self {
        Self::new("z1", MultiPoly::one(&phi_vars()), (1, 0)).unwrap()
    }

    /// The line at infinity `z3 = 0` of the second factor.
    pub fn z3() -> Self {
        Self::new("z3", MultiPoly::one(&phi_vars()), (0, 1)).unwrap()
    }

    pub fn x2_minus_1() -> Self {
        Self::parse("x2 - 1", (0, 1)).unwrap()
    }

    pub fn i1() -> Self {
        Self::new("I1", skdv_core::dynamics::i1_poly().clone(), (2, 2)).unwrap()
    }

    pub fn i2() -> Self {
        Self::new("I2", skdv_core::dynamics::i2_poly().clone(), (2, 2)).unwrap()
    }

    /// Homogenized order along a germ.
    pub fn order_on<K: Field>(&self, x: &[Series<K>; 4], h: &Series<K>) -> Result<Valuation> {
        let Valuation::Finite(o) = poly_order_at(&self.poly, x, h)? else {
            return Ok(Valuation::Infinite);
        };
        let (da, db) = self.bidegree;
        Ok(Valuation::Finite(
            o - da as i64 * pole_order(&x[0], &x[1])? - db as i64 * pole_order(&x[2], &x[3])?,
        ))
    }
}

/// Certified order in `ε` of `p(x0..x3, h)` on a germ.
pub fn poly_order_at<K: Field>(p: &MultiPoly, x: &[Series<K>; 4], h: &Series<K>) -> Result<Valuation> {
    let vals = [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone(), h.clone()];
    Ok(p.eval(&vals).ord()?)
}

/// `min(0, ord a, ord b)`.
pub fn pole_order<K: Field>(a: &Series<K>, b: &Series<K>) -> Result<i64> {
    Ok(a.ord_capped(0)?.min(b.ord_capped(0)?))
}

/// Which prime divisor a candidate germ parametrizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CandidateKind {
    /// Proper transform of `E_i`.
    Exceptional(usize),
    /// Proper transform of an affine hypersurface or line at infinity.
    Hypersurface(String),
    /// A generic member of `|H_a|` (`false`) or `|H_b|` (`true`).
    GenericHyperplane(bool),
}

/// One row of the candidate-divisor table.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub name: String,
    pub kind: CandidateKind,
    /// Class of the prime divisor as listed in the table.
    pub class: DivisorClass,
}

/// The default candidate-divisor table. The classes of the three
/// hypersurfaces are the listed values; they are checked against the
/// computed proper transforms by [`Valuator::validate_candidates`].
pub fn default_candidates() -> Vec<Candidate> {
    let mut v: Vec<Candidate> = (1..=NUM_E)
        .map(|i| Candidate {
            name: format!("F{i}"),
            kind: CandidateKind::Exceptional(i),
            class: proper_exceptional_listed(i),
        })
        .collect();
    let hyp = |name: &str, class: &str| Candidate {
        name: name.into(),
        kind: CandidateKind::Hypersurface(name.into()),
        class: class.parse().expect("static class"),
    };
    v.push(hyp("z1", "Ha - E{6,7,11,12}"));
    v.push(hyp("x2 - 1", "Hb - E{1,6,11}"));
    v.push(hyp("z3", "Hb - E{1,2,11,12}"));
    v.push(Candidate {
        name: "generic Ha".into(),
        kind: CandidateKind::GenericHyperplane(false),
        class: DivisorClass::ha(),
    });
    v.push(Candidate {
        name: "generic Hb".into(),
        kind: CandidateKind::GenericHyperplane(true),
        class: DivisorClass::hb(),
    });
    v
}

/// Proper transform class of `E_i` used by the table: `E_i − E_{i+1}` along
/// the chains, `E_i` at their ends, and `E11 − E14`.
pub fn proper_exceptional_listed(i: usize) -> DivisorClass {
    match i {
        5 | 10 | 17 => DivisorClass::e(i),
        11 => DivisorClass::e(11) - DivisorClass::e(14),
        _ => DivisorClass::e(i) - DivisorClass::e(i + 1),
    }
}

/// Coefficient field of the germs, able to represent the parameter `h`.
pub trait GermField: Field {
    /// Whether `h` is carried as a transcendental rather than sampled.
    const GENERIC_H: bool;
    /// The parameter `h`; `sample` is used when it is not generic.
    fn param(sample: &Q) -> Self;
}

impl GermField for Q {
    const GENERIC_H: bool = false;
    fn param(sample: &Q) -> Self {
        sample.clone()
    }
}

impl GermField for Qh {
    const GENERIC_H: bool = true;
    fn param(_sample: &Q) -> Self {
        Qh::var()
    }
}

/// Valuation engine over germs with coefficients in `K`.
#[derive(Clone, Debug)]
pub struct Valuator<K: GermField> {
    /// Fixed value of `h`; drawn per seed when `None` (ignored when `h`
    /// is generic).
    pub h: Option<Q>,
    pub seeds: Vec<u64>,
    /// Height bound of the random transverse constants.
    pub height: i64,
    /// Initial number of series terms; doubled on loss of precision.
    pub work: usize,
    pub exec: Exec,
    pub candidates: Vec<Candidate>,
    field: std::marker::PhantomData<fn() -> K>,
}

/// Valuator carrying `h` as an element of `Q(h)`.
pub fn symbolic(seeds: Vec<u64>, exec: Exec) -> Valuator<Qh> {
    Valuator::new(None, seeds, exec)
}

const RETRIES: usize = 8;
const MAX_WORK: usize = 384;

impl<K: GermField> Valuator<K> {
    pub fn new(h: Option<Q>, seeds: Vec<u64>, exec: Exec) -> Self {
        Valuator {
            h,
            seeds,
            height: 30,
            work: 12,
            exec,
            candidates: default_candidates(),
            field: std::marker::PhantomData,
        }
    }

    /// The same valuator with another execution mode.
    pub fn with_exec(&self, exec: Exec) -> Self {
        Valuator { exec, ..self.clone() }
    }

    /// `h` for one seed.
    pub fn h_for(&self, seed: u64) -> K {
        match &self.h {
            Some(h) => K::param(h),
            None => {
                let mut rng = Self::rng(seed, 0x68);
                K::param(&random_nonzero_rational(&mut rng, self.height))
            }
        }
    }

    fn hs(&self, seed: u64) -> Series<K> {
        Series::constant(self.h_for(seed))
    }

    /// Runs `f` with growing series precision until it is conclusive.
    fn adaptive<T>(&self, f: impl Fn(usize) -> Result<T>) -> Result<T> {
        let mut n = self.work;
        loop {
            match f(n) {
                Err(CoreError::Precision) if n < MAX_WORK => n *= 2,
                r => return r,
            }
        }
    }

    fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
    }

    fn consts<const N: usize>(&self, rng: &mut ChaCha8Rng) -> [K; N] {
        std::array::from_fn(|_| K::from_rational(&random_rational(rng, self.height)))
    }

    /// Generic germ of the proper transform of `E_k`.
    pub fn exceptional_germ(&self, k: usize, seed: u64, work: usize) -> Result<[Series<K>; 4]> {
        let mut rng = Self::rng(seed, k as u64);
        for _ in 0..RETRIES {
            let c: [K; 3] = self.consts(&mut rng);
            if let Some(x) = Tower::get().exceptional_germ(k, &c, &self.h_for(seed), work) {
                if x.iter().all(|v| !v.is_zero()) {
                    return Ok(x);
                }
            }
        }
        Err(CoreError::Inconclusive {
            what: format!("germ on E{k}"),
            attempts: RETRIES,
        })
    }

    /// Generic germ of a candidate divisor.
    pub fn candidate_germ(&self, cand: &Candidate, seed: u64, work: usize) -> Result<[Series<K>; 4]> {
        let salt = cand.name.bytes().fold(7u64, |a, b| a.wrapping_mul(31).wrapping_add(b as u64));
        let mut rng = Self::rng(seed, salt);
        let e = Series::<K>::var(work);
        let inv_e = e.inv().unwrap();
        match &cand.kind {
            CandidateKind::Exceptional(k) => self.exceptional_germ(*k, seed, work),
            CandidateKind::Hypersurface(name) => {
                let [a, b, c]: [K; 3] = self.consts(&mut rng);
                let (a, b, c) = (Series::constant(a), Series::constant(b), Series::constant(c));
                match name.as_str() {
                    "z1" => Ok([a.mul(&inv_e), inv_e, b, c]),
                    "z3" => Ok([a, b, c.mul(&inv_e), inv_e]),
                    "x2 - 1" => Ok([a, b, Series::one().add(&e), c]),
                    other => Err(CoreError::Invalid(format!("no germ for candidate `{other}`"))),
                }
            }
            CandidateKind::GenericHyperplane(second) => {
                let [p, q, r, s]: [K; 4] = self.consts(&mut rng);
                let [p, q, r, s] = [p, q, r, s].map(Series::constant);
                if *second {
                    Ok([p, q, r.add(&e), s])
                } else {
                    Ok([p.add(&e), q, r, s])
                }
            }
        }
    }

    /// Runs `f` once per seed and requires all results to agree.
    fn consensus<T, F>(&self, what: &str, f: F) -> Result<T>
    where
        T: PartialEq + Send + std::fmt::Debug,
        F: Fn(u64) -> Result<T> + Sync + Send,
    {
        let results = self.exec.map(self.seeds.clone(), f);
        let mut it = results.into_iter();
        let first = it.next().ok_or_else(|| CoreError::Invalid("no seeds configured".into()))??;
        for r in it {
            let r = r?;
            if r != first {
                return Err(CoreError::Inconclusive {
                    what: format!("{what}: seeds disagree ({first:?} vs {r:?})"),
                    attempts: self.seeds.len(),
                });
            }
        }
        Ok(first)
    }

    fn mult_on_germ(&self, f: &Hypersurface, x: &[Series<K>; 4], seed: u64, where_: &str) -> Result<i64> {
        f.order_on(x, &self.hs(seed))?.finite().ok_or_else(|| {
            CoreError::Inconclusive {
                what: format!("{} vanishes identically on {where_}", f.name),
                attempts: 1,
            }
        })
    }

    /// Order of vanishing of the homogenized `f` along `E_i`.
    pub fn mult_along(&self, f: &Hypersurface, i: usize) -> Result<i64> {
        self.consensus(&format!("mult of {} on E{i}", f.name), |seed| {
            self.adaptive(|n| {
                let x = self.exceptional_germ(i, seed, n)?;
                self.mult_on_germ(f, &x, seed, &format!("E{i}"))
            })
        })
    }

    /// `mult_along` for every `E_i`, `i = 1..17`.
    pub fn mult_table(&self, f: &Hypersurface) -> Result<Vec<i64>> {
        self.consensus(&format!("multiplicities of {}", f.name), |seed| {
            (1..=NUM_E)
                .map(|i| {
                    self.adaptive(|n| {
                        let x = self.exceptional_germ(i, seed, n)?;
                        self.mult_on_germ(f, &x, seed, &format!("E{i}"))
                    })
                })
                .collect()
        })
    }

    /// `c[i][j]`: order of the local equation of `E_i` along the proper
    /// transform of `E_j` (`i ≠ j`).
    pub fn exceptional_incidence(&self) -> Result<Vec<Vec<i64>>> {
        self.consensus("exceptional incidence", |seed| {
            let t = Tower::get();
            let mut c = vec![vec![0i64; NUM_E + 1]; NUM_E + 1];
            for j in 1..=NUM_E {
                for (i, row) in c.iter_mut().enumerate().skip(1) {
                    if i != j {
                        row[j] = self.adaptive(|n| {
                            let x = self.exceptional_germ(j, seed, n)?;
                            t.exceptional_order(&x, i, &self.hs(seed))
                        })?;
                    }
                }
            }
            Ok(c)
        })
    }

    /// Proper-transform classes `[F_1], ..., [F_17]` (index 0 unused), from
    /// `[F_i] = E_i − Σ_{j>i} c_ij [F_j]`.
    pub fn proper_exceptional_classes(&self) -> Result<Vec<DivisorClass>> {
        let c = self.exceptional_incidence()?;
        for i in 1..=NUM_E {
            for j in 1..i {
                if c[i][j] != 0 {
                    return Err(CoreError::Consistency(format!(
                        "E{i} meets the proper transform of the earlier E{j}"
                    )));
                }
            }
        }
        let mut f = vec![DivisorClass::zero(); NUM_E + 1];
        for i in (1..=NUM_E).rev() {
            let mut cl = DivisorClass::e(i);
            for j in i + 1..=NUM_E {
                cl = cl - c[i][j] * f[j];
            }
            f[i] = cl;
        }
        Ok(f)
    }

    /// `(total, proper)` classes of a hypersurface.
    pub fn class_of_hypersurface(&self, f: &Hypersurface) -> Result<(DivisorClass, DivisorClass)> {
        let fcl = self.proper_exceptional_classes()?;
        let nu = self.mult_table(f)?;
        Ok(class_from_mults(f.bidegree, &nu, &fcl))
    }

    /// Checks that the listed candidate classes equal the computed ones.
    pub fn validate_candidates(&self) -> Result<Vec<(String, DivisorClass, DivisorClass)>> {
        let fcl = self.proper_exceptional_classes()?;
        let mut out = Vec::new();
        for c in &self.candidates {
            let computed = match &c.kind {
                CandidateKind::Exceptional(i) => fcl[*i],
                CandidateKind::Hypersurface(name) => {
                    let hyp = match name.as_str() {
                        "z1" => Hypersurface::z1(),
                        "z3" => Hypersurface::z3(),
                        "x2 - 1" => Hypersurface::x2_minus_1(),
                        other => return Err(CoreError::Invalid(format!("unknown candidate {other}"))),
                    };
                    class_from_mults(hyp.bidegree, &self.mult_table(&hyp)?, &fcl).1
                }
                CandidateKind::GenericHyperplane(false) => DivisorClass::ha(),
                CandidateKind::GenericHyperplane(true) => DivisorClass::hb(),
            };
            out.push((c.name.clone(), c.class, computed));
        }
        Ok(out)
    }

    /// Images under `φ` of all candidate germs for one seed.
    fn candidate_image(&self, c: &Candidate, seed: u64, work: usize) -> Result<[Series<K>; 4]> {
        let g = self.candidate_germ(c, seed, work)?;
        phi_step(&g, &self.hs(seed)).map_err(|e| CoreError::DegenerateGerm(format!("{} germ: {e}", c.name)))
    }

    /// Decomposes a pull-back over the candidate table given a per-image
    /// valuation.
    fn decompose<V>(&self, what: &str, nu: V) -> Result<Pullback>
    where
        V: Fn(&[Series<K>; 4], &Series<K>) -> Result<i64> + Sync + Send,
    {
        self.consensus(what, |seed| {
            let mut class = DivisorClass::zero();
            let mut terms = BTreeMap::new();
            for c in &self.candidates {
                let v = self.adaptive(|n| nu(&self.candidate_image(c, seed, n)?, &self.hs(seed)))?;
                if v == i64::MAX {
                    return Err(CoreError::Inconclusive {
                        what: format!("{what}: infinite valuation on {}", c.name),
                        attempts: 1,
                    });
                }
                if v != 0 {
                    class = class + v * c.class;
                    terms.insert(c.name.clone(), v);
                }
            }
            Ok(Pullback { class, terms })
        })
    }

    /// `φ*(E_i)` as a sum over candidate divisors.
    pub fn pullback_exceptional(&self, i: usize) -> Result<Pullback> {
        self.decompose(&format!("pull-back of E{i}"), |y, hs| Tower::get().center_order(y, i, hs))
    }

    /// `φ*(H_a)` (`second = false`) or `φ*(H_b)` via the pole orders of
    /// the image coordinates.
    pub fn pullback_h(&self, second: bool) -> Result<Pullback> {
        let name = if second { "Hb" } else { "Ha" };
        self.decompose(&format!("pull-back of {name}"), |y, _| {
            Ok(if second {
                -pole_order(&y[2], &y[3])?
            } else {
                -pole_order(&y[0], &y[1])?
            })
        })
    }

    /// Class of `φ*{f = 0}`: the proper part from the cleared numerator of
    /// `f∘φ` plus the homogenized orders of `f` on the images of the
    /// candidate divisors.
    pub fn pullback_class_hypersurface(&self, f: &Hypersurface) -> Result<PullbackHypersurface> {
        let phi = skdv_core::dynamics::RationalMapDef::phi();
        let comp = skdv_algebra::substitute(
            &skdv_algebra::RationalFn::from_poly(f.poly.clone()),
            &phi
                .targets
                .iter()
                .map(|s| s.as_str())
                .zip(phi.components.iter())
                .collect::<Vec<_>>(),
            &phi.vars,
        )?;
        // Strip the contracted factor 1 - x2 from the numerator.
        let pv = phi_vars();
        let d = parse_poly("1 - x2", &pv)?;
        let mut num = comp.num.clone();
        let mut stripped = 0;
        while let Some(q) = num.div_exact(&d) {
            num = q;
            stripped += 1;
        }
        let bideg = (num.degree_in_set(&[0, 1]), num.degree_in_set(&[2, 3]));
        let residual = if num.is_constant() {
            None
        } else {
            Some(Hypersurface::new(&format!("({})∘φ residual", f.name), num, bideg)?)
        };
        let proper = match &residual {
            Some(r) => self.class_of_hypersurface(r)?.1,
            None => DivisorClass::zero(),
        };
        let pb = self.decompose(&format!("pull-back of {}", f.name), |y, hs| {
            f.order_on(y, hs)?.finite().ok_or_else(|| CoreError::Inconclusive {
                what: format!("{} vanishes on an image germ", f.name),
                attempts: 1,
            })
        })?;
        Ok(PullbackHypersurface {
            residual_bidegree: bideg,
            stripped_factor_power: stripped,
            residual_class: proper,
            candidate_terms: pb.terms,
            class: proper + pb.class,
        })
    }
}

/// `(total, proper)` from bidegree, multiplicities and `[F_j]`.
pub fn class_from_mults(
    bidegree: (u32, u32),
    nu: &[i64],
    fcl: &[DivisorClass],
) -> (DivisorClass, DivisorClass) {
    let total = bidegree.0 as i64 * DivisorClass::ha() + bidegree.1 as i64 * DivisorClass::hb();
    let mut proper = total;
    for (j, &m) in nu.iter().enumerate() {
        proper = proper - m * fcl[j + 1];
    }
    (total, proper)
}

/// A pull-back class with its candidate decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub class: DivisorClass,
    pub terms: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackHypersurface {
    pub residual_bidegree: (u32, u32),
    pub stripped_factor_power: u32,
    pub residual_class: DivisorClass,
    pub candidate_terms: BTreeMap<String, i64>,
    pub class: DivisorClass,
}

/// Default valuator: `h`, the transverse constants and the hyperplane
/// coefficients are drawn per seed; seeds `1, 2, 3` must agree.
pub fn default_valuator() -> Valuator<Q> {
    Valuator::new(None, vec![1, 2, 3], Exec::default())
}

/// Valuator over `Q`, with `h` fixed or drawn per seed.
pub fn sampled(h: Option<Q>, seeds: Vec<u64>, exec: Exec) -> Valuator<Q> {
    Valuator::new(h, seeds, exec)
}
