//! The nine base charts of `P²×P²` and the seventeen blow-up charts.
//!
//! Every chart is stored as text: the map down to its parent chart, the map
//! up from the parent, and the generators of the blown-up center in parent
//! coordinates. The same parsed expressions drive symbolic pull-backs,
//! valuations on germs and the audit export.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use skdv_algebra::{
    parse_rational_fn, substitute, vars, Field, Laurent, MultiPoly, RationalFn, Valuation, Vars,
};
use skdv_core::dynamics::phi_vars;
use skdv_core::{CoreError, Result};

/// Germ coordinates: truncated Laurent series in `ε` over a coefficient field.
pub type Series<K> = Laurent<K>;

pub const NUM_CHARTS: usize = 17;

/// Chart of one `P²` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FactorChart {
    /// `(x_i, x_{i+1})`
    X,
    /// `(y_i, y_{i+1}) = (1/x_i, x_{i+1}/x_i)`
    Y,
    /// `(z_i, z_{i+1}) = (x_i/x_{i+1}, 1/x_{i+1})`
    Z,
}

impl FactorChart {
    fn letter(self) -> char {
        match self {
            FactorChart::X => 'x',
            FactorChart::Y => 'y',
            FactorChart::Z => 'z',
        }
    }

    fn from_affine<F: Field>(self, p: &F, q: &F) -> Option<(F, F)> {
        match self {
            FactorChart::X => Some((p.clone(), q.clone())),
            FactorChart::Y => {
                let ip = p.inv()?;
                Some((ip.clone(), q.mul(&ip)))
            }
            FactorChart::Z => {
                let iq = q.inv()?;
                Some((p.mul(&iq), iq))
            }
        }
    }

    fn to_affine<F: Field>(self, a: &F, b: &F) -> Option<(F, F)> {
        match self {
            FactorChart::X => Some((a.clone(), b.clone())),
            FactorChart::Y => {
                let ia = a.inv()?;
                Some((ia.clone(), b.mul(&ia)))
            }
            FactorChart::Z => {
                let ib = b.inv()?;
                Some((a.mul(&ib), ib))
            }
        }
    }

    fn affine_text(self, i: usize, j: usize) -> [String; 2] {
        match self {
            FactorChart::X => [format!("p{i}"), format!("p{j}")],
            FactorChart::Y => [format!("1/p{i}"), format!("p{j}/p{i}")],
            FactorChart::Z => [format!("p{i}/p{j}"), format!("1/p{j}")],
        }
    }

    /// Chart containing the limit of a germ whose two coordinates have
    /// orders `o0`, `o1`.
    pub fn for_orders(o0: i64, o1: i64) -> Self {
        let m = 0.min(o0).min(o1);
        if m == 0 {
            FactorChart::X
        } else if o1 == m {
            FactorChart::Z
        } else {
            FactorChart::Y
        }
    }
}

/// One of the nine product charts of `P²×P²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BaseChart {
    pub a: FactorChart,
    pub b: FactorChart,
}

impl BaseChart {
    pub const fn new(a: FactorChart, b: FactorChart) -> Self {
        BaseChart { a, b }
    }

    pub fn all() -> Vec<BaseChart> {
        use FactorChart::*;
        let mut v = Vec::with_capacity(9);
        for b in [X, Y, Z] {
            for a in [X, Y, Z] {
                v.push(BaseChart::new(a, b));
            }
        }
        v
    }

    pub fn coords(&self) -> [String; 4] {
        let (a, b) = (self.a.letter(), self.b.letter());
        [format!("{a}0"), format!("{a}1"), format!("{b}2"), format!("{b}3")]
    }

    pub fn name(&self) -> String {
        format!("({})", self.coords().join(","))
    }

    pub fn from_affine<F: Field>(&self, x: &[F; 4]) -> Option<[F; 4]> {
        let (a0, a1) = self.a.from_affine(&x[0], &x[1])?;
        let (b0, b1) = self.b.from_affine(&x[2], &x[3])?;
        Some([a0, a1, b0, b1])
    }

    pub fn to_affine<F: Field>(&self, c: &[F; 4]) -> Option<[F; 4]> {
        let (x0, x1) = self.a.to_affine(&c[0], &c[1])?;
        let (x2, x3) = self.b.to_affine(&c[2], &c[3])?;
        Some([x0, x1, x2, x3])
    }

    fn affine_exprs(&self) -> Vec<RationalFn> {
        let pv = parent_vars();
        let [a0, a1] = self.a.affine_text(0, 1);
        let [b0, b1] = self.b.affine_text(2, 3);
        [a0, a1, b0, b1]
            .iter()
            .map(|t| parse_rational_fn(t, &pv).expect("static chart"))
            .collect()
    }
}

/// Parent of a blow-up chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parent {
    Base(BaseChart),
    Chart(usize),
}

struct ChartSpec {
    parent: Parent,
    down: [&'static str; 4],
    up: [&'static str; 4],
    center: &'static [&'static str],
    local: usize,
}

fn chart_specs() -> Vec<ChartSpec> {
    use FactorChart::*;
    let chain = |first: ChartSpec, start: usize| -> Vec<ChartSpec> {
        vec![
            first,
            ChartSpec {
                parent: Parent::Chart(start),
                down: ["s", "t", "u", "v*s"],
                up: ["p0", "p1", "p2", "p3/p0"],
                center: &["p0", "p3"],
                local: 0,
            },
            ChartSpec {
                parent: Parent::Chart(start + 1),
                down: ["s", "t", "u*s - h/(1 + h*t)", "v"],
                up: ["p0", "p1", "(p2 + h/(1 + h*p1))/p0", "p3"],
                center: &["p0", "p2 + h/(1 + h*p1)"],
                local: 0,
            },
            ChartSpec {
                parent: Parent::Chart(start + 2),
                down: ["s", "t", "u", "v*s + 1/(1 + h*t)"],
                up: ["p0", "p1", "p2", "(p3 - 1/(1 + h*p1))/p0"],
                center: &["p0", "p3 - 1/(1 + h*p1)"],
                local: 0,
            },
            ChartSpec {
                parent: Parent::Chart(start + 3),
                down: ["s", "t", "u", "v*s + 1/(1 + h*t)^2"],
                up: ["p0", "p1", "p2", "(p3 - 1/(1 + h*p1)^2)/p0"],
                center: &["p0", "p3 - 1/(1 + h*p1)^2"],
                local: 0,
            },
        ]
    };
    let mut v = chain(
        ChartSpec {
            parent: Parent::Base(BaseChart::new(X, Z)),
            down: ["1 + s", "t", "s*u", "s*v"],
            up: ["p0 - 1", "p1", "p2/(p0 - 1)", "p3/(p0 - 1)"],
            center: &["p0 - 1", "p2", "p3"],
            local: 0,
        },
        1,
    );
    v.extend(chain(
        ChartSpec {
            parent: Parent::Base(BaseChart::new(Z, X)),
            down: ["s*u", "s*v", "1 + s", "t"],
            up: ["p2 - 1", "p3", "p0/(p2 - 1)", "p1/(p2 - 1)"],
            center: &["p2 - 1", "p0", "p1"],
            local: 0,
        },
        6,
    ));
    v.extend([
        ChartSpec {
            parent: Parent::Base(BaseChart::new(Z, Z)),
            down: ["s", "t*s", "u*s", "v*s"],
            up: ["p0", "p1/p0", "p2/p0", "p3/p0"],
            center: &["p0", "p1", "p2", "p3"],
            local: 0,
        },
        ChartSpec {
            parent: Parent::Chart(11),
            down: ["s", "t", "1 + u*t", "v*t"],
            up: ["p0", "p1", "(p2 - 1)/p1", "p3/p1"],
            center: &["p1", "p2 - 1", "p3"],
            local: 1,
        },
        ChartSpec {
            parent: Parent::Chart(12),
            down: ["s", "t", "u", "-1 + v*t"],
            up: ["p0", "p1", "p2", "(p3 + 1)/p1"],
            center: &["p1", "p3 + 1"],
            local: 1,
        },
        ChartSpec {
            parent: Parent::Chart(13),
            down: ["s*t", "t", "1 + h + u*t", "v*t"],
            up: ["p0/p1", "p1", "(p2 - 1 - h)/p1", "p3/p1"],
            center: &["p0", "p1", "p2 - 1 - h", "p3"],
            local: 1,
        },
        ChartSpec {
            parent: Parent::Chart(14),
            down: ["s", "t", "-2*u - s/h + v*t", "u"],
            up: ["p0", "p1", "p3", "(p2 + 2*p3 + p0/h)/p1"],
            center: &["p1", "p2 + 2*p3 + p0/h"],
            local: 1,
        },
        ChartSpec {
            parent: Parent::Chart(15),
            down: ["s", "t", "-s/h + u*t", "v"],
            up: ["p0", "p1", "(p2 + p0/h)/p1", "p3"],
            center: &["p1", "p2 + p0/h"],
            local: 1,
        },
        ChartSpec {
            parent: Parent::Chart(16),
            down: ["s", "t", "u", "u/2 + (1 + h)/h*s + v*t"],
            up: ["p0", "p1", "p2", "(p3 - p2/2 - (1 + h)/h*p0)/p1"],
            center: &["p1", "p3 - p2/2 - (1 + h)/h*p0"],
            local: 1,
        },
    ]);
    v
}

fn local_vars() -> Vars {
    vars(&["s", "t", "u", "v", "h"])
}

fn parent_vars() -> Vars {
    vars(&["p0", "p1", "p2", "p3", "h"])
}

/// A blow-up chart `C_k`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub id: usize,
    pub parent: Parent,
    /// Index (0..4) of the coordinate cutting out `E_k` in this chart.
    pub local: usize,
    down: Vec<RationalFn>,
    up: Vec<RationalFn>,
    center: Vec<RationalFn>,
}

impl Chart {
    pub fn coords(&self) -> [String; 4] {
        let k = self.id;
        [format!("s{k}"), format!("t{k}"), format!("u{k}"), format!("v{k}")]
    }

    pub fn vars(&self) -> Vars {
        let c = self.coords();
        vars(&[&c[0], &c[1], &c[2], &c[3], "h"])
    }

    pub fn local_name(&self) -> String {
        self.coords()[self.local].clone()
    }

    pub fn down(&self) -> &[RationalFn] {
        &self.down
    }

    pub fn up(&self) -> &[RationalFn] {
        &self.up
    }

    pub fn center(&self) -> &[RationalFn] {
        &self.center
    }
}

fn eval4<F: Field>(exprs: &[RationalFn], c: &[F; 4], h: &F) -> Option<[F; 4]> {
    let vals = [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), h.clone()];
    Some([
        exprs[0].eval(&vals)?,
        exprs[1].eval(&vals)?,
        exprs[2].eval(&vals)?,
        exprs[3].eval(&vals)?,
    ])
}

fn eval_all<F: Field>(exprs: &[RationalFn], c: &[F; 4], h: &F) -> Option<Vec<F>> {
    let vals = [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), h.clone()];
    exprs.iter().map(|e| e.eval(&vals)).collect()
}

/// `true` when every coordinate is regular at `ε = 0`.
pub fn in_chart<K: Field>(c: &[Series<K>]) -> Result<bool> {
    for x in c {
        if x.ord_capped(0)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certified `min` of the orders; an unresolved entry is accepted when its
/// known precision already exceeds the minimum of the others.
pub fn min_order<K: Field>(c: &[Series<K>]) -> Result<Valuation> {
    let mut m = Valuation::Infinite;
    for x in c {
        if let Ok(v) = x.ord() {
            m = m.min(v);
        }
    }
    for x in c {
        if x.ord().is_err() {
            match m {
                Valuation::Finite(v) if x.lower_bound() >= v => {}
                _ => return Err(CoreError::Precision),
            }
        }
    }
    Ok(m)
}

/// The full tower `C1..C17`.
#[derive(Debug)]
pub struct Tower {
    charts: Vec<Chart>,
}

impl Tower {
    /// Shared instance.
    pub fn get() -> &'static Tower {
        static T: OnceLock<Tower> = OnceLock::new();
        T.get_or_init(Tower::build)
    }

    fn build() -> Tower {
        let lv = local_vars();
        let pv = parent_vars();
        let parse = |t: &str, v: &Vars| parse_rational_fn(t, v).expect("static chart");
        let charts = chart_specs()
            .into_iter()
            .enumerate()
            .map(|(i, s)| Chart {
                id: i + 1,
                parent: s.parent,
                local: s.local,
                down: s.down.iter().map(|t| parse(t, &lv)).collect(),
                up: s.up.iter().map(|t| parse(t, &pv)).collect(),
                center: s.center.iter().map(|t| parse(t, &pv)).collect(),
            })
            .collect();
        Tower { charts }
    }

    pub fn chart(&self, k: usize) -> &Chart {
        &self.charts[k - 1]
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Chart ids from the root blow-up down to `k`.
    pub fn chain(&self, k: usize) -> Vec<usize> {
        let mut v = vec![k];
        let mut cur = k;
        while let Parent::Chart(p) = self.chart(cur).parent {
            v.push(p);
            cur = p;
        }
        v.reverse();
        v
    }

    pub fn root_base(&self, k: usize) -> BaseChart {
        match self.chart(self.chain(k)[0]).parent {
            Parent::Base(b) => b,
            Parent::Chart(_) => unreachable!("chain starts at a base chart"),
        }
    }

    /// Coordinate names of the parent chart of `C_k`.
    pub fn parent_coords(&self, k: usize) -> [String; 4] {
        match self.chart(k).parent {
            Parent::Base(b) => b.coords(),
            Parent::Chart(p) => self.chart(p).coords(),
        }
    }

    /// Affine point of a chart-`k` point, `None` on a vanishing denominator.
    pub fn to_affine<F: Field>(&self, k: usize, c: &[F; 4], h: &F) -> Option<[F; 4]> {
        let mut cur = c.clone();
        for j in self.chain(k).into_iter().rev() {
            cur = eval4(&self.chart(j).down, &cur, h)?;
        }
        self.root_base(k).to_affine(&cur)
    }

    /// Coordinates of a germ in chart `k`, or `None` when the germ's limit
    /// leaves the chart at some level of the chain.
    pub fn lift<K: Field>(
        &self,
        x: &[Series<K>; 4],
        k: usize,
        h: &Series<K>,
    ) -> Result<Option<[Series<K>; 4]>> {
        let Some(mut c) = self.root_base(k).from_affine(x) else {
            return Ok(None);
        };
        if !in_chart(&c)? {
            return Ok(None);
        }
        for j in self.chain(k) {
            let Some(next) = eval4(&self.chart(j).up, &c, h) else {
                return Ok(None);
            };
            c = next;
            if !in_chart(&c)? {
                return Ok(None);
            }
        }
        Ok(Some(c))
    }

    /// Germ coordinates in the parent chart of `C_k`.
    pub fn lift_to_parent<K: Field>(
        &self,
        x: &[Series<K>; 4],
        k: usize,
        h: &Series<K>,
    ) -> Result<Option<[Series<K>; 4]>> {
        match self.chart(k).parent {
            Parent::Base(b) => match b.from_affine(x) {
                Some(c) if in_chart(&c)? => Ok(Some(c)),
                _ => Ok(None),
            },
            Parent::Chart(p) => self.lift(x, p, h),
        }
    }

    /// Order of the center of blow-up `k` along the germ, `0` when the germ
    /// does not lie over the parent chart.
    pub fn center_order<K: Field>(&self, x: &[Series<K>; 4], k: usize, h: &Series<K>) -> Result<i64> {
        let Some(c) = self.lift_to_parent(x, k, h)? else {
            return Ok(0);
        };
        let Some(g) = eval_all(&self.chart(k).center, &c, h) else {
            return Ok(0);
        };
        Ok(match min_order(&g)? {
            Valuation::Finite(o) => o.max(0),
            Valuation::Infinite => i64::MAX,
        })
    }

    /// Order of the local equation of `E_k` along the germ (`0` outside the chart).
    pub fn exceptional_order<K: Field>(&self, x: &[Series<K>; 4], k: usize, h: &Series<K>) -> Result<i64> {
        Ok(match self.lift(x, k, h)? {
            Some(c) => c[self.chart(k).local].ord()?.finite().unwrap_or(i64::MAX),
            None => 0,
        })
    }

    /// Germ through a generic point of `E_k`: the local coordinate is `ε`,
    /// the others are the given constants. Inverses are expanded to `work` terms.
    pub fn exceptional_germ<K: Field>(
        &self,
        k: usize,
        consts: &[K; 3],
        h: &K,
        work: usize,
    ) -> Option<[Series<K>; 4]> {
        let local = self.chart(k).local;
        let mut it = consts.iter();
        let c: [Series<K>; 4] = std::array::from_fn(|i| {
            if i == local {
                Series::var(work)
            } else {
                Series::constant(it.next().unwrap().clone())
            }
        });
        self.to_affine(k, &c, &Series::constant(h.clone()))
    }

    /// Symbolic composition of `f` (over `x0..x3, h`) with the chart chain
    /// of `C_k`; the result is over `s_k, t_k, u_k, v_k, h`.
    pub fn pull_to_chart(&self, f: &RationalFn, k: usize) -> Result<RationalFn> {
        let lv = local_vars();
        let pv = parent_vars();
        let mut cur: Vec<RationalFn> = ["s", "t", "u", "v"]
            .iter()
            .map(|n| Ok(RationalFn::from_poly(MultiPoly::var(&lv, n)?)))
            .collect::<Result<_>>()?;
        for j in self.chain(k).into_iter().rev() {
            let b: Vec<(&str, &RationalFn)> = ["s", "t", "u", "v"].into_iter().zip(cur.iter()).collect();
            cur = self
                .chart(j)
                .down
                .iter()
                .map(|e| substitute(e, &b, &lv).map_err(CoreError::from))
                .collect::<Result<_>>()?;
        }
        let b: Vec<(&str, &RationalFn)> = ["p0", "p1", "p2", "p3"].into_iter().zip(cur.iter()).collect();
        let affine: Vec<RationalFn> = self
            .root_base(k)
            .affine_exprs()
            .iter()
            .map(|e| substitute(&e.align(&pv)?, &b, &lv))
            .collect::<std::result::Result<_, _>>()?;
        let b: Vec<(&str, &RationalFn)> = ["x0", "x1", "x2", "x3"].into_iter().zip(affine.iter()).collect();
        let f = f.align(&phi_vars())?;
        let out = substitute(&f, &b, &lv)?;
        Ok(out.rename(&self.chart(k).vars())?)
    }

    /// Structured text describing every chart, for audit.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for c in &self.charts {
            let pc = self.parent_coords(c.id);
            let pnames: Vars = vars(&[&pc[0], &pc[1], &pc[2], &pc[3], "h"]);
            let cv = c.vars();
            s.push_str(&format!("chart C{}\n", c.id));
            s.push_str(&format!("  coordinates ({})\n", c.coords().join(", ")));
            let parent = match c.parent {
                Parent::Base(b) => format!("base {}", b.name()),
                Parent::Chart(p) => format!("C{p}"),
            };
            s.push_str(&format!("  parent {parent}\n"));
            let center: Vec<String> = c
                .center
                .iter()
                .map(|g| g.rename(&pnames).map(|g| g.to_string()).unwrap_or_default())
                .collect();
            s.push_str(&format!("  center {} = 0\n", center.join(", ")));
            for (name, e) in pc.iter().zip(&c.down) {
                s.push_str(&format!("  {name} = {}\n", e.rename(&cv).map(|e| e.to_string()).unwrap_or_default()));
            }
            for (name, e) in c.coords().iter().zip(&c.up) {
                s.push_str(&format!("  {name} := {}\n", e.rename(&pnames).map(|e| e.to_string()).unwrap_or_default()));
            }
            s.push_str(&format!("  exceptional E{}: {} = 0\n", c.id, c.local_name()));
        }
        s
    }

    /// JSON-friendly view of the tower.
    pub fn export(&self) -> Vec<ChartExport> {
        self.charts
            .iter()
            .map(|c| {
                let pc = self.parent_coords(c.id);
                let pnames: Vars = vars(&[&pc[0], &pc[1], &pc[2], &pc[3], "h"]);
                let cv = c.vars();
                ChartExport {
                    id: c.id,
                    coordinates: c.coords().to_vec(),
                    parent: match c.parent {
                        Parent::Base(b) => b.name(),
                        Parent::Chart(p) => format!("C{p}"),
                    },
                    parent_coordinates: pc.to_vec(),
                    down: c.down.iter().map(|e| e.rename(&cv).unwrap().to_string()).collect(),
                    up: c.up.iter().map(|e| e.rename(&pnames).unwrap().to_string()).collect(),
                    center: c.center.iter().map(|e| e.rename(&pnames).unwrap().to_string()).collect(),
                    exceptional: format!("{} = 0", c.local_name()),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartExport {
    pub id: usize,
    pub coordinates: Vec<String>,
    pub parent: String,
    pub parent_coordinates: Vec<String>,
    pub down: Vec<String>,
    pub up: Vec<String>,
    pub center: Vec<String>,
    pub exceptional: String,
}

impl fmt::Display for BaseChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skdv_algebra::{parse_rational_fn, q, qi, Q};

    #[test]
    fn pull_examples() {
        let t = Tower::get();
        let pv = phi_vars();
        let f = parse_rational_fn("x2 - 1", &pv).unwrap();
        assert_eq!(t.pull_to_chart(&f, 6).unwrap().to_string(), "s6");
        let g = parse_rational_fn("x0 - 1", &pv).unwrap();
        assert_eq!(t.pull_to_chart(&g, 1).unwrap().to_string(), "s1");
        let one = parse_rational_fn("1", &pv).unwrap();
        for k in 1..=NUM_CHARTS {
            assert_eq!(t.pull_to_chart(&one, k).unwrap().to_string(), "1");
        }
    }

    #[test]
    fn up_inverts_down() {
        let t = Tower::get();
        let h = q(3, 7);
        for k in 1..=NUM_CHARTS {
            let c = [q(2, 5), q(-3, 4), q(7, 3), q(5, 11)];
            let mut down = c.clone();
            down = eval4(&t.chart(k).down, &down, &h).unwrap();
            let back = eval4(&t.chart(k).up, &down, &h).unwrap();
            assert_eq!(back, c, "chart {k}");
        }
    }

    #[test]
    fn base_chart_round_trip() {
        let x = [qi(3), q(-1, 2), q(5, 7), qi(-4)];
        for b in BaseChart::all() {
            let c: [Q; 4] = b.from_affine(&x).unwrap();
            assert_eq!(b.to_affine(&c).unwrap(), x, "{b}");
        }
    }

    #[test]
    fn chains_and_roots() {
        let t = Tower::get();
        assert_eq!(t.chain(5), vec![1, 2, 3, 4, 5]);
        assert_eq!(t.chain(17), vec![11, 12, 13, 14, 15, 16, 17]);
        assert_eq!(t.root_base(9).name(), "(z0,z1,x2,x3)");
        assert_eq!(t.chart(14).local_name(), "t14");
        assert!(t.export_text().contains("exceptional E17: t17 = 0"));
    }
}
