//! Germ templates and the preset starts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use skdv_algebra::random::random_nonzero_rational;
use skdv_algebra::{parse_poly, parse_rational_fn, vars, Field, MultiPoly, Qh, RatFunc, Vars, Q};
use skdv_core::dynamics::{phi_inverse_step, Ambient};
use skdv_core::{CoreError, Result};

use crate::track::Classification;

/// A one-parameter germ given symbolically.
///
/// Coordinates are rational functions of `eps`, `h` and the free
/// constants listed in `symbols`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GermSpec {
    pub name: String,
    pub ambient: Ambient,
    pub symbols: Vec<String>,
    pub coords: [String; 4],
    /// Steps of `φ⁻¹` applied to the template before tracking.
    pub backward: usize,
    /// Expressions in `h` and the symbols that must not vanish.
    pub exclusions: Vec<String>,
    /// Default number of steps.
    pub steps: usize,
    /// Published orders per step, when known.
    pub expected_orders: Vec<[i64; 4]>,
    /// Published leading coefficients `(step, slot, expression)`. The
    /// expression may use `h`, the symbols and `L{k}_{i}`, the leading
    /// coefficient of slot `i` at step `k`.
    pub expected_leading: Vec<(usize, usize, String)>,
    pub expected_class: Option<Classification>,
    /// Entries of the published sequence that the map contradicts. The
    /// expected data above holds the corrected entry.
    pub errata: Vec<Erratum>,
}

/// A published order or leading coefficient that differs from the
/// computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub step: usize,
    pub slot: usize,
    pub printed_order: Option<i64>,
    /// Same syntax as the expected leading coefficients.
    pub printed_leading: Option<String>,
    /// Why the printed entry cannot hold.
    pub note: String,
}

impl GermSpec {
    /// A user germ without published data.
    pub fn custom(name: &str, ambient: Ambient, symbols: &[&str], coords: [&str; 4], steps: usize) -> Self {
        GermSpec {
            name: name.into(),
            ambient,
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
            coords: coords.map(String::from),
            backward: 0,
            exclusions: Vec::new(),
            steps,
            expected_orders: Vec::new(),
            expected_leading: Vec::new(),
            expected_class: None,
            errata: Vec::new(),
        }
    }

    fn template_vars(&self) -> Vars {
        let mut v = vec!["eps".to_string(), "h".to_string()];
        v.extend(self.symbols.iter().cloned());
        v.into()
    }

    fn param_vars(&self) -> Vars {
        let mut v = vec!["h".to_string()];
        v.extend(self.symbols.iter().cloned());
        v.into()
    }

    /// The germ over the field `K` with `h` and the constants given.
    pub fn instantiate<K: Field>(&self, h: &K, consts: &[K]) -> Result<[RatFunc<K>; 4]> {
        if consts.len() != self.symbols.len() {
            return Err(CoreError::Invalid(format!("{} needs {} constants", self.name, self.symbols.len())));
        }
        let tv = self.template_vars();
        let mut vals = vec![RatFunc::var(), RatFunc::constant(h.clone())];
        vals.extend(consts.iter().cloned().map(RatFunc::constant));
        let mut x: Vec<RatFunc<K>> = Vec::with_capacity(4);
        for c in &self.coords {
            let f = parse_rational_fn(c, &tv)?;
            x.push(f.eval(&vals).ok_or_else(|| CoreError::DegenerateGerm(format!("`{c}` has a vanishing denominator")))?);
        }
        let mut x: [RatFunc<K>; 4] = x.try_into().expect("four coordinates");
        let hh = RatFunc::constant(h.clone());
        for _ in 0..self.backward {
            x = phi_inverse_step(&x, &hh).map_err(|e| CoreError::DegenerateGerm(format!("backward step: {e}")))?;
        }
        Ok(x)
    }

    /// Whether every exclusion is nonzero at `(h, consts)`.
    pub fn admissible<K: Field>(&self, h: &K, consts: &[K]) -> Result<bool> {
        let pv = self.param_vars();
        let mut vals = vec![h.clone()];
        vals.extend(consts.iter().cloned());
        for e in &self.exclusions {
            let p: MultiPoly = parse_poly(e, &pv)?;
            if p.eval(&vals).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nonzero constants of height at most `height` avoiding the
    /// exclusions for symbolic `h` and for the sampled `h`, which is
    /// returned first.
    pub fn sample(&self, seed: u64, height: i64) -> Result<(Q, Vec<Q>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x7261);
        for _ in 0..64 {
            let h = random_nonzero_rational(&mut rng, height);
            let c: Vec<Q> = self.symbols.iter().map(|_| random_nonzero_rational(&mut rng, height)).collect();
            let ch: Vec<Qh> = c.iter().map(|q| Qh::constant(q.clone())).collect();
            if self.admissible(&Qh::var(), &ch)? && self.admissible(&h, &c)? {
                return Ok((h, c));
            }
        }
        Err(CoreError::Inconclusive { what: format!("constants for {}", self.name), attempts: 64 })
    }

    /// Value of a leading-coefficient expression at the given constants.
    fn eval_leading(&self, e: &str, consts: &[Q], leading: &[[Option<Qh>; 4]]) -> Result<Option<Qh>> {
        let mut names = vec!["h".to_string()];
        names.extend(self.symbols.iter().cloned());
        for k in 0..leading.len() {
            for i in 0..4 {
                names.push(format!("L{k}_{i}"));
            }
        }
        let nv: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut vals = vec![Qh::var()];
        vals.extend(consts.iter().map(|q| Qh::constant(q.clone())));
        for row in leading {
            vals.extend(row.iter().map(|c| c.clone().unwrap_or_else(Qh::zero)));
        }
        Ok(parse_rational_fn(e, &vars(&nv))?.eval(&vals))
    }

    /// Checks published leading coefficients against a trace; returns the
    /// failures as `(step, slot, expected, got)`.
    pub fn leading_mismatches(
        &self,
        consts: &[Q],
        leading: &[[Option<Qh>; 4]],
    ) -> Result<Vec<(usize, usize, String, String)>> {
        let mut out = Vec::new();
        for (k, i, e) in &self.expected_leading {
            let want = self.eval_leading(e, consts, leading)?;
            let got = leading.get(*k).and_then(|r| r[*i].clone());
            if want.is_none() || want != got {
                out.push((*k, *i, e.clone(), got.map_or("0".into(), |g| g.fmt_var("h"))));
            }
        }
        Ok(out)
    }

    /// Errata whose printed entry agrees with the trace after all, i.e.
    /// that are not errata.
    pub fn spurious_errata(
        &self,
        consts: &[Q],
        orders: &[[Option<i64>; 4]],
        leading: &[[Option<Qh>; 4]],
    ) -> Result<Vec<Erratum>> {
        let mut out = Vec::new();
        for e in &self.errata {
            let order_ok = match e.printed_order {
                Some(o) => orders.get(e.step).is_some_and(|r| r[e.slot] == Some(o)),
                None => false,
            };
            let lead_ok = match &e.printed_leading {
                Some(p) => {
                    let want = self.eval_leading(p, consts, leading)?;
                    want.is_some() && want == leading.get(e.step).and_then(|r| r[e.slot].clone())
                }
                None => false,
            };
            if order_ok || lead_ok {
                out.push(e.clone());
            }
        }
        Ok(out)
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn lead(v: &[(usize, usize, &str)]) -> Vec<(usize, usize, String)> {
    v.iter().map(|(k, i, e)| (*k, *i, e.to_string())).collect()
}

fn erratum(step: usize, slot: usize, order: Option<i64>, leading: Option<&str>, note: &str) -> Erratum {
    Erratum { step, slot, printed_order: order, printed_leading: leading.map(String::from), note: note.into() }
}

pub fn preset_names() -> &'static [&'static str] {
    &["confined", "cyclic", "anti-confined", "cyclic-p2p2", "cyclic-start-p2p2", "anti-confined-start-p2p2"]
}

/// The four published sequences, and the starts of the second and third
/// taken on `P²×P²`.
pub fn preset(name: &str) -> Option<GermSpec> {
    let p1 = Ambient::P1Four;
    let p2 = Ambient::P2P2;
    let sym3 = strings(&["x0_0", "x1_0", "x3_0"]);
    Some(match name {
        "confined" => GermSpec {
            name: name.into(),
            ambient: p1,
            symbols: sym3,
            coords: ["x0_0", "x1_0", "1 + eps", "x3_0"].map(String::from),
            backward: 0,
            exclusions: strings(&["1 + h*x3_0", "x0_0 - 1"]),
            steps: 4,
            expected_orders: vec![[0, 0, 0, 0], [0, 0, -1, -2], [-1, -2, -1, -2], [-1, -2, 0, 0], [0, 0, 0, 0]],
            expected_leading: lead(&[
                (1, 0, "1"),
                (1, 1, "x3_0"),
                (1, 2, "-h"),
                (1, 3, "1 + h*x3_0"),
                (2, 0, "-h"),
                (2, 1, "1 + h*x3_0"),
                (2, 2, "h"),
                (2, 3, "-(1 + h*x3_0)"),
                (3, 0, "h"),
                (3, 1, "-(1 + h*x3_0)"),
                (3, 2, "1"),
                (4, 0, "1"),
                (4, 2, "x0_0"),
            ]),
            expected_class: Some(Classification::Confined { steps: 4 }),
            errata: Vec::new(),
        },
        "cyclic" | "cyclic-start-p2p2" => GermSpec {
            name: name.into(),
            ambient: if name == "cyclic" { p1 } else { p2 },
            symbols: sym3,
            coords: ["x0_0", "x1_0", "1/eps", "x3_0"].map(String::from),
            backward: 0,
            exclusions: strings(&["x0_0 - 1", "x1_0 + x3_0"]),
            steps: 3,
            expected_orders: vec![[0, 0, -1, 0], [-1, 0, -1, 0], [-1, 0, 0, 0], [0, 0, -1, 0]],
            expected_leading: lead(&[
                (1, 0, "1"),
                (1, 1, "x3_0"),
                (1, 2, "-1"),
                (1, 3, "-x1_0 - x3_0"),
                (2, 0, "-1"),
                (2, 1, "-x1_0 - x3_0"),
                (2, 2, "x0_0"),
                (2, 3, "x1_0"),
                (3, 0, "x0_0"),
                (3, 1, "x1_0"),
                (3, 2, "1"),
            ]),
            expected_class: Some(Classification::Cyclic { period: 3 }),
            errata: vec![erratum(2, 0, None, Some("1"), "x0 at step 2 is x2 at step 1, printed with the opposite sign")],
        },
        "anti-confined" | "anti-confined-start-p2p2" => GermSpec {
            name: name.into(),
            ambient: if name == "anti-confined" { p1 } else { p2 },
            symbols: strings(&["x0_0", "x2_0", "x3_0"]),
            coords: ["x0_0", "1/eps", "x2_0", "x3_0"].map(String::from),
            backward: 1,
            exclusions: strings(&["x0_0 - 1", "x2_0 - 1", "(x0_0 - 1)^2 - h"]),
            steps: 3,
            expected_orders: vec![[0, -1, 0, -1], [0, -1, 0, 0], [0, 0, 0, -1], [0, -1, 0, -1]],
            expected_leading: lead(&[
                (0, 1, "-1 + h/(x0_0 - 1)^2"),
                (0, 3, "1"),
                (1, 0, "x0_0"),
                (1, 1, "1"),
                (1, 2, "x2_0"),
                (1, 3, "x3_0"),
                (2, 0, "x2_0"),
                (2, 1, "x3_0"),
                (2, 3, "-1"),
                (3, 0, "L2_2"),
                (3, 1, "-1"),
                (3, 3, "1 - h/(L2_2 - 1)^2"),
            ]),
            expected_class: Some(Classification::AntiConfined { blown_up_at: 1, contracted_at: 3 }),
            errata: vec![
                erratum(0, 0, Some(-1), None, "a pole in x0 would give a pole in x2 one step later"),
                erratum(0, 1, Some(0), None, "the pole sits in x1: x1 = -x3' - x3 + (2 - x2 + h x3)/(1 - x2)^2 with x3' = 1/eps"),
                erratum(2, 3, None, Some("1"), "x3' = -x1 - x3 + ... with x1 = 1/eps gives -1/eps"),
                erratum(3, 1, None, Some("1"), "x1 at step 3 is x3 at step 2"),
                erratum(
                    3,
                    3,
                    None,
                    Some("-1 + h/(x2_0 - 1)^2"),
                    "follows from the sign at step 2; the pole of x2 - 1 is at the step-2 value of x2",
                ),
            ],
        },
        "cyclic-p2p2" => GermSpec {
            name: name.into(),
            ambient: p2,
            symbols: strings(&["x0_0", "x1_0", "c_0"]),
            coords: ["x0_0", "x1_0", "1/eps", "c_0/eps"].map(String::from),
            backward: 0,
            exclusions: strings(&["x0_0 - 1"]),
            steps: 3,
            expected_orders: vec![[0, 0, -1, -1], [-1, -1, -1, -1], [-1, -1, 0, 0], [0, 0, -1, -1]],
            expected_leading: lead(&[
                (1, 0, "1"),
                (1, 1, "c_0"),
                (1, 2, "-1"),
                (1, 3, "-c_0"),
                (2, 0, "-1"),
                (2, 1, "-c_0"),
                (2, 2, "x0_0"),
                (2, 3, "x1_0"),
                (3, 0, "x0_0"),
                (3, 1, "x1_0"),
                (3, 2, "1"),
                (3, 3, "c_0"),
            ]),
            expected_class: Some(Classification::Cyclic { period: 3 }),
            errata: Vec::new(),
        },
        _ => return None,
    })
    .map(|mut g| {
        if name.ends_with("-start-p2p2") {
            g.expected_orders.clear();
            g.expected_leading.clear();
            g.expected_class = None;
            g.errata.clear();
        }
        g
    })
}

/// A germ over `Q(h)` with its sampled constants.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonGerm {
    pub ambient: Ambient,
    pub coords: [RatFunc<Qh>; 4],
    pub constants: Vec<(String, Q)>,
    pub seed: u64,
}

impl EpsilonGerm {
    /// Instantiates `spec` with constants drawn from `seed`.
    pub fn from_spec(spec: &GermSpec, seed: u64) -> Result<Self> {
        let (_, c) = spec.sample(seed, 30)?;
        let ch: Vec<Qh> = c.iter().map(|q| Qh::constant(q.clone())).collect();
        let coords = spec.instantiate(&Qh::var(), &ch)?;
        if coords.iter().all(|x| x.is_constant()) {
            return Err(CoreError::DegenerateGerm(format!("{} does not depend on eps", spec.name)));
        }
        Ok(EpsilonGerm {
            ambient: spec.ambient,
            coords,
            constants: spec.symbols.iter().cloned().zip(c).collect(),
            seed,
        })
    }
}
