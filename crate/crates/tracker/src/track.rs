//! Order traces and their classification.
//!
//! The trace itself is computed over `Q(h)(ε)`. The dimension of the family
//! of limit points at each step is the rank of the Jacobian of the limit
//! with respect to the free constants; column `j` is obtained exactly by
//! replacing constant `j` with `c_j + δ` (with `h` sampled) and reading off
//! the `δ`-linear term of the limit in `Q(δ)`.

use serde::Serialize;

use skdv_algebra::{Field, Matrix, Qh, RatFunc, Valuation, Q};
use skdv_core::dynamics::{phi_step, Ambient};
use skdv_core::{CoreError, Exec, Result};
use skdv_tower::tower::{BaseChart, FactorChart};

use crate::germ::{EpsilonGerm, GermSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Classification {
    /// A divisor is contracted and a (different) divisor reappears after
    /// `steps` steps with the constants recoverable.
    Confined { steps: usize },
    /// The starting divisor itself reappears after `period` steps.
    Cyclic { period: usize },
    /// A lower-dimensional germ is blown up to a divisor and contracted again.
    AntiConfined { blown_up_at: usize, contracted_at: usize },
    Unresolved,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Confined { steps } => write!(f, "confined after {steps} steps"),
            Classification::Cyclic { period } => write!(f, "cyclic with period {period}"),
            Classification::AntiConfined { blown_up_at, contracted_at } => {
                write!(f, "anti-confined (blown up at step {blown_up_at}, contracted at step {contracted_at})")
            }
            Classification::Unresolved => write!(f, "unresolved"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    /// `ε`-orders; `None` for a coordinate that vanishes identically.
    pub orders: [Option<i64>; 4],
    /// Leading coefficients as functions of `h`.
    pub leading: [String; 4],
    #[serde(skip)]
    pub leading_values: [Option<Qh>; 4],
    /// Chart containing the limit point, and the limit there.
    pub chart: [String; 4],
    pub limit: [String; 4],
    /// Dimension of the family of limit points.
    pub dim: usize,
    /// `coordinate = value` when the family is a divisor cut out by one
    /// chart coordinate.
    pub divisor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderTrace {
    pub germ: String,
    pub ambient: Ambient,
    pub seed: u64,
    pub constants: Vec<(String, String)>,
    /// `h` used for the Jacobian columns.
    pub h_sample: String,
    pub steps: Vec<StepRecord>,
    pub classification: Classification,
}

impl OrderTrace {
    pub fn orders(&self) -> Vec<[Option<i64>; 4]> {
        self.steps.iter().map(|s| s.orders).collect()
    }

    pub fn leading_values(&self) -> Vec<[Option<Qh>; 4]> {
        self.steps.iter().map(|s| s.leading_values.clone()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.dim).collect()
    }

    /// Text table: step, orders, leading terms, dimension.
    pub fn table(&self) -> String {
        let mut s = format!("germ {} on {} (seed {})\n", self.germ, self.ambient, self.seed);
        for (k, r) in self.steps.iter().enumerate() {
            let ords: Vec<String> = r.orders.iter().map(|o| o.map_or("inf".into(), |v| v.to_string())).collect();
            s.push_str(&format!(
                "{k:>3}  ({})  [{}]  dim {}{}\n",
                ords.join(","),
                r.leading.join(", "),
                r.dim,
                r.divisor.as_ref().map_or(String::new(), |d| format!("  on {d}"))
            ));
        }
        s.push_str(&format!("classification: {}\n", self.classification));
        s
    }
}

fn order<K: Field>(x: &RatFunc<K>) -> Option<i64> {
    match x.ord() {
        Valuation::Finite(o) => Some(o),
        Valuation::Infinite => None,
    }
}

/// Chart coordinate names and values in which all limits are finite.
fn to_chart<K: Field>(ambient: Ambient, x: &[RatFunc<K>; 4]) -> Result<([String; 4], [RatFunc<K>; 4])> {
    let o: Vec<i64> = x.iter().map(|v| order(v).unwrap_or(i64::MAX)).collect();
    match ambient {
        Ambient::P1Four => {
            let mut names: [String; 4] = Default::default();
            let mut vals = x.clone();
            for i in 0..4 {
                if o[i] < 0 {
                    names[i] = format!("1/x{i}");
                    vals[i] = x[i].inv().expect("pole is nonzero");
                } else {
                    names[i] = format!("x{i}");
                }
            }
            Ok((names, vals))
        }
        Ambient::P2P2 => {
            let chart = BaseChart::new(FactorChart::for_orders(o[0], o[1]), FactorChart::for_orders(o[2], o[3]));
            let vals = chart
                .from_affine(x)
                .ok_or_else(|| CoreError::DegenerateGerm("no chart contains the limit".into()))?;
            Ok((chart.coords(), vals))
        }
    }
}

fn limit<K: Field>(c: &RatFunc<K>) -> Result<K> {
    match order(c) {
        None => Ok(K::zero()),
        Some(o) if o > 0 => Ok(K::zero()),
        Some(0) => Ok(c.leading_coeff().expect("nonzero")),
        Some(_) => Err(CoreError::Consistency("chart coordinate has a pole".into())),
    }
}

/// Orbit `x, φ(x), ..., φ^steps(x)`.
fn orbit<K: Field>(x: [RatFunc<K>; 4], h: &K, steps: usize) -> Result<Vec<[RatFunc<K>; 4]>> {
    let hh = RatFunc::constant(h.clone());
    let mut out = vec![x];
    for k in 0..steps {
        let next = phi_step(out.last().unwrap(), &hh)
            .map_err(|e| CoreError::DegenerateGerm(format!("step {}: {e}", k + 1)))?;
        out.push(next);
    }
    Ok(out)
}

/// `δ`-linear coefficient of an element of `Q(δ)` regular at 0.
fn first_derivative(f: &Qh) -> Result<Q> {
    if f.is_zero() {
        return Ok(Q::zero());
    }
    let (o, c) = f.laurent(2).ok_or_else(|| CoreError::Consistency("derivative of zero".into()))?;
    Ok(match o {
        0 => c[1].clone(),
        1 => c[0].clone(),
        o if o > 1 => Q::zero(),
        _ => return Err(CoreError::Inconclusive { what: "limit has a pole in the perturbation".into(), attempts: 1 }),
    })
}

/// Iterates `spec` for `steps` steps from the constants drawn from `seed`.
pub fn track(spec: &GermSpec, seed: u64, steps: usize) -> Result<OrderTrace> {
    let start = EpsilonGerm::from_spec(spec, seed)?;
    let (h_sample, consts) = spec.sample(seed, 30)?;
    let symbolic = orbit(start.coords.clone(), &Qh::var(), steps)?;

    // Jacobian columns, one per constant, over Q(δ) with h sampled.
    let hd = Qh::constant(h_sample.clone());
    let mut columns: Vec<Vec<[Q; 4]>> = Vec::new();
    for j in 0..consts.len() {
        let cd: Vec<Qh> = consts
            .iter()
            .enumerate()
            .map(|(i, c)| if i == j { Qh::linear(c.clone(), Q::one()) } else { Qh::constant(c.clone()) })
            .collect();
        let pert = orbit(spec.instantiate(&hd, &cd)?, &hd, steps)?;
        let mut col = Vec::with_capacity(steps + 1);
        for (k, (p, s)) in pert.iter().zip(&symbolic).enumerate() {
            let po: Vec<Option<i64>> = p.iter().map(order).collect();
            let so: Vec<Option<i64>> = s.iter().map(order).collect();
            if po != so {
                return Err(CoreError::Inconclusive {
                    what: format!("{}: orders at step {k} change under perturbation ({po:?} vs {so:?})", spec.name),
                    attempts: 1,
                });
            }
            let (_, chart) = to_chart(spec.ambient, p)?;
            let mut d: [Q; 4] = Default::default();
            for i in 0..4 {
                d[i] = first_derivative(&limit(&chart[i])?)?;
            }
            col.push(d);
        }
        columns.push(col);
    }

    let mut records = Vec::with_capacity(steps + 1);
    for (k, x) in symbolic.iter().enumerate() {
        let orders = [order(&x[0]), order(&x[1]), order(&x[2]), order(&x[3])];
        let leading_values: [Option<Qh>; 4] = std::array::from_fn(|i| x[i].leading_coeff());
        let leading = std::array::from_fn(|i| leading_values[i].as_ref().map_or("0".into(), |c| c.fmt_var("h")));
        let (names, chart) = to_chart(spec.ambient, x)?;
        let lim: Vec<Qh> = chart.iter().map(limit).collect::<Result<_>>()?;
        let jac = Matrix::from_rows((0..4).map(|i| columns.iter().map(|c| c[k][i].clone()).collect()).collect());
        let dim = if columns.is_empty() { 0 } else { jac.rank() };
        let fixed: Vec<usize> = (0..4).filter(|&i| columns.iter().all(|c| c[k][i].is_zero())).collect();
        let divisor = (dim == 3 && fixed.len() == 1).then(|| format!("{} = {}", names[fixed[0]], lim[fixed[0]].fmt_var("h")));
        records.push(StepRecord {
            orders,
            leading,
            leading_values,
            limit: std::array::from_fn(|i| lim[i].fmt_var("h")),
            chart: names,
            dim,
            divisor,
        });
    }
    let mut trace = OrderTrace {
        germ: spec.name.clone(),
        ambient: spec.ambient,
        seed,
        constants: start.constants.iter().map(|(n, v)| (n.clone(), skdv_algebra::fmt_rational(v))).collect(),
        h_sample: skdv_algebra::fmt_rational(&h_sample),
        steps: records,
        classification: Classification::Unresolved,
    };
    trace.classification = classify(&trace);
    Ok(trace)
}

/// Classification from the dimensions, divisors and orders of a trace.
pub fn classify(trace: &OrderTrace) -> Classification {
    let s = &trace.steps;
    let Some(first) = s.first() else { return Classification::Unresolved };
    if first.dim == 3 {
        let Some(k) = s.iter().position(|r| r.dim < 3) else { return Classification::Unresolved };
        let back = |j: &usize| s[*j].dim == 3;
        if let Some(j) = (k + 1..s.len()).filter(back).find(|&j| {
            first.divisor.is_some() && s[j].divisor == first.divisor && s[j].orders == first.orders
        }) {
            return Classification::Cyclic { period: j };
        }
        if let Some(j) = (k + 1..s.len()).find(back) {
            return Classification::Confined { steps: j };
        }
        return Classification::Unresolved;
    }
    if let Some(k) = s.iter().position(|r| r.dim == 3) {
        if let Some(j) = (k + 1..s.len()).find(|&j| s[j].dim < 3) {
            return Classification::AntiConfined { blown_up_at: k, contracted_at: j };
        }
    }
    Classification::Unresolved
}

/// Traces for several seeds, run through the execution switch.
pub fn track_seeds(spec: &GermSpec, seeds: &[u64], steps: usize, exec: Exec) -> Result<Vec<OrderTrace>> {
    exec.map(seeds.to_vec(), |s| track(spec, s, steps)).into_iter().collect()
}

/// Whether traces agree on orders, dimensions and classification.
pub fn seeds_agree(traces: &[OrderTrace]) -> bool {
    traces.windows(2).all(|w| {
        w[0].orders() == w[1].orders() && w[0].dims() == w[1].dims() && w[0].classification == w[1].classification
    })
}

/// Comparison of a trace with the published data of its template.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub orders_match: bool,
    /// `(step, slot, expected, got)`.
    pub leading_mismatches: Vec<(usize, usize, String, String)>,
    pub class_match: bool,
    /// Number of published entries replaced by corrected ones.
    pub errata: usize,
    /// Errata whose printed entry the trace reproduces after all.
    pub spurious_errata: usize,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.orders_match && self.leading_mismatches.is_empty() && self.class_match && self.spurious_errata == 0
    }
}

/// Checks `trace` against the expected data in `spec`. Fields without
/// expected data count as matching.
pub fn verify(spec: &GermSpec, trace: &OrderTrace) -> Result<Verdict> {
    let (_, consts) = spec.sample(trace.seed, 30)?;
    let orders = trace.orders();
    let leading = trace.leading_values();
    let orders_match = spec.expected_orders.is_empty()
        || (orders.len() >= spec.expected_orders.len()
            && spec.expected_orders.iter().zip(&orders).all(|(e, o)| e.iter().zip(o).all(|(a, b)| Some(*a) == *b)));
    Ok(Verdict {
        orders_match,
        leading_mismatches: spec.leading_mismatches(&consts, &leading)?,
        class_match: spec.expected_class.as_ref().is_none_or(|c| *c == trace.classification),
        errata: spec.errata.len(),
        spurious_errata: spec.spurious_errata(&consts, &orders, &leading)?.len(),
    })
}
