//! Truncated Laurent series in `ε` with tracked precision.
//!
//! A value is either an exact Laurent polynomial or a series known modulo
//! `ε^prec`. Cancellation lowers the relative precision; inverting a value
//! with no known nonzero coefficient poisons the result. Coefficients may
//! themselves be inexact (series over series): a leading coefficient that is
//! not certified nonzero leaves the order undetermined. Orders and leading
//! coefficients are only reported when they are certified by the known
//! coefficients, so a result is never silently wrong: callers retry with a
//! larger working precision on [`PrecisionLost`].

use std::fmt;

use crate::field::{var_name, Field, Q};
use crate::ratfunc::{RatFunc, Valuation};

/// Raised when the known coefficients do not determine the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionLost;

impl fmt::Display for PrecisionLost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("series precision exhausted")
    }
}

impl std::error::Error for PrecisionLost {}

const DEFAULT_WORK: usize = 16;

#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<K: Field> {
    /// Exponent of `coeffs[0]`; `coeffs[0] != 0` when nonempty.
    val: i64,
    coeffs: Vec<K>,
    /// Absolute precision, `None` for exact values.
    prec: Option<i64>,
    /// Number of terms kept when an exact value has to be expanded.
    work: usize,
    poisoned: bool,
    /// `coeffs[0]` is not certified nonzero.
    uncertain: bool,
}

impl<K: Field> Laurent<K> {
    fn build(val: i64, mut coeffs: Vec<K>, prec: Option<i64>, work: usize) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let (val, coeffs) = match lead {
            None => (prec.unwrap_or(0), Vec::new()),
            Some(i) => {
                coeffs.drain(..i);
                (val + i as i64, coeffs)
            }
        };
        let mut coeffs = coeffs;
        match prec {
            Some(p) => coeffs.truncate((p - val).max(0) as usize),
            None => {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
            }
        }
        let val = if coeffs.is_empty() { prec.unwrap_or(0) } else { val };
        let uncertain = coeffs.first().is_some_and(|c| !c.nonzero_certified());
        Laurent {
            val,
            coeffs,
            prec,
            work,
            poisoned: false,
            uncertain,
        }
    }

    fn poison(work: usize) -> Self {
        Laurent {
            val: 0,
            coeffs: Vec::new(),
            prec: Some(i64::MIN / 4),
            work,
            poisoned: true,
            uncertain: false,
        }
    }

    pub fn constant(c: K) -> Self {
        Self::build(0, vec![c], None, 0)
    }

    /// `ε`, expanding inverses to `work` terms.
    pub fn var(work: usize) -> Self {
        Self::build(1, vec![K::one()], None, work)
    }

    /// Exact Laurent polynomial `Σ c_i ε^(val + i)`.
    pub fn from_coeffs(val: i64, coeffs: Vec<K>, work: usize) -> Self {
        Self::build(val, coeffs, None, work)
    }

    /// Expansion of a rational function at the origin to `work` terms.
    pub fn from_ratfunc(f: &RatFunc<K>, work: usize) -> Self {
        if f.den().is_one() {
            return Self::build(0, f.num().coeffs().to_vec(), None, work);
        }
        match f.laurent(work) {
            None => Self::build(0, Vec::new(), None, work),
            Some((ord, c)) => Self::build(ord, c, Some(ord + work as i64), work),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none() && !self.poisoned
    }

    pub fn is_poisoned(&self) -> bool {
        self.poisoned
    }

    pub fn work(&self) -> usize {
        self.work
    }

    /// Absolute precision (`None` when exact).
    pub fn precision(&self) -> Option<i64> {
        if self.poisoned {
            Some(i64::MIN)
        } else {
            self.prec
        }
    }

    /// Certified order at the origin.
    pub fn ord(&self) -> Result<Valuation, PrecisionLost> {
        if self.poisoned || self.uncertain {
            return Err(PrecisionLost);
        }
        match (self.coeffs.is_empty(), self.prec) {
            (true, None) => Ok(Valuation::Infinite),
            (true, Some(_)) => Err(PrecisionLost),
            (false, _) => Ok(Valuation::Finite(self.val)),
        }
    }

    /// Certified lower bound of the order (`i64::MIN` when poisoned).
    pub fn lower_bound(&self) -> i64 {
        if self.poisoned {
            i64::MIN
        } else if self.coeffs.is_empty() {
            self.prec.unwrap_or(i64::MAX)
        } else {
            self.val
        }
    }

    /// Certified `min(ord, cap)`.
    pub fn ord_capped(&self, cap: i64) -> Result<i64, PrecisionLost> {
        match self.ord() {
            Ok(Valuation::Finite(v)) => Ok(v.min(cap)),
            Ok(Valuation::Infinite) => Ok(cap),
            Err(_) if self.lower_bound() >= cap => Ok(cap),
            Err(e) => Err(e),
        }
    }

    /// Coefficient of `ε^ord`.
    pub fn leading_coeff(&self) -> Result<K, PrecisionLost> {
        match self.ord()? {
            Valuation::Finite(_) => Ok(self.coeffs[0].clone()),
            Valuation::Infinite => Ok(K::zero()),
        }
    }

    /// Coefficient of `ε^k`.
    pub fn coeff(&self, k: i64) -> Result<K, PrecisionLost> {
        if self.poisoned || self.prec.is_some_and(|p| k >= p) {
            return Err(PrecisionLost);
        }
        if k < self.val {
            return Ok(K::zero());
        }
        Ok(self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(K::zero))
    }

    /// Value at `ε = 0`: `Ok(None)` at a pole.
    pub fn limit(&self) -> Result<Option<K>, PrecisionLost> {
        match self.ord()? {
            Valuation::Infinite => Ok(Some(K::zero())),
            Valuation::Finite(v) if v > 0 => Ok(Some(K::zero())),
            Valuation::Finite(0) => Ok(Some(self.coeffs[0].clone())),
            Valuation::Finite(_) => Ok(None),
        }
    }

    /// Applies `f` to every known coefficient.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Laurent<L> {
        if self.poisoned {
            return Laurent::poison(self.work);
        }
        Laurent::build(self.val, self.coeffs.iter().map(f).collect(), self.prec, self.work)
    }

    fn end(&self) -> i64 {
        match self.prec {
            Some(p) => p,
            None => self.val + self.coeffs.len() as i64,
        }
    }

    fn rel(&self) -> Option<i64> {
        self.prec.map(|p| p - self.val)
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<K: Field> Field for Laurent<K> {
    const DEPTH: usize = K::DEPTH + 1;

    fn zero() -> Self {
        Self::build(0, Vec::new(), None, 0)
    }

    fn one() -> Self {
        Self::constant(K::one())
    }

    /// Only exact zero counts as zero.
    fn is_zero(&self) -> bool {
        !self.poisoned && self.prec.is_none() && self.coeffs.is_empty()
    }

    fn nonzero_certified(&self) -> bool {
        matches!(self.ord(), Ok(Valuation::Finite(_)))
    }

    fn is_one(&self) -> bool {
        self.is_exact() && self.val == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        let work = self.work.max(rhs.work);
        if self.poisoned || rhs.poisoned {
            return Self::poison(work);
        }
        if self.is_zero() {
            return Self { work, ..rhs.clone() };
        }
        if rhs.is_zero() {
            return Self { work, ..self.clone() };
        }
        let prec = min_prec(self.prec, rhs.prec);
        let lo = match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (false, false) => self.val.min(rhs.val),
            (false, true) => self.val,
            (true, false) => rhs.val,
            (true, true) => prec.unwrap_or(0),
        };
        let hi = match prec {
            Some(p) => p,
            None => self.end().max(rhs.end()),
        };
        if hi <= lo {
            return Self::build(lo, Vec::new(), prec, work);
        }
        let mut c = vec![K::zero(); (hi - lo) as usize];
        for s in [self, rhs] {
            for (i, x) in s.coeffs.iter().enumerate() {
                let k = s.val + i as i64;
                if k < hi {
                    let j = (k - lo) as usize;
                    c[j] = c[j].add(x);
                }
            }
        }
        Self::build(lo, c, prec, work)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let work = self.work.max(rhs.work);
        if self.poisoned || rhs.poisoned {
            return Self::poison(work);
        }
        if self.is_zero() || rhs.is_zero() {
            return Self { work, ..Self::zero() };
        }
        match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (true, true) => {
                return Self::build(0, Vec::new(), Some(self.val + rhs.val), work);
            }
            (true, false) => return Self::build(0, Vec::new(), Some(self.val + rhs.val), work),
            (false, true) => return Self::build(0, Vec::new(), Some(self.val + rhs.val), work),
            _ => {}
        }
        let val = self.val + rhs.val;
        let rel = match (self.rel(), rhs.rel()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let n = match rel {
            Some(r) => r.max(0) as usize,
            None => self.coeffs.len() + rhs.coeffs.len() - 1,
        };
        let mut c = vec![K::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate().take(n) {
            for (j, y) in rhs.coeffs.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].add(&x.mul(y));
            }
        }
        Self::build(val, c, rel.map(|r| val + r), work)
    }

    fn neg(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(K::neg).collect(),
            ..self.clone()
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.poisoned || self.uncertain || self.coeffs.is_empty() {
            return Some(Self::poison(self.work));
        }
        let a0 = self.coeffs[0].inv()?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Some(Self::build(-self.val, vec![a0], None, self.work));
        }
        let n = match self.rel() {
            Some(r) => r as usize,
            None => {
                if self.work == 0 {
                    DEFAULT_WORK
                } else {
                    self.work
                }
            }
        };
        let mut b: Vec<K> = Vec::with_capacity(n);
        b.push(a0.clone());
        for k in 1..n {
            let mut s = K::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = s.add(&self.coeffs[j].mul(&b[k - j]));
            }
            b.push(s.mul(&a0).neg());
        }
        Some(Self::build(-self.val, b, Some(-self.val + n as i64), self.work))
    }

    fn from_rational(q: &Q) -> Self {
        Self::constant(K::from_rational(q))
    }

    fn is_atomic(&self) -> bool {
        false
    }
}

impl<K: Field> fmt::Display for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poisoned {
            return f.write_str("<precision lost>");
        }
        let v = var_name(Self::DEPTH - 1);
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let cs = if c.is_atomic() { c.to_string() } else { format!("({c})") };
            parts.push(match e {
                0 => cs,
                1 => format!("{cs}*{v}"),
                _ => format!("{cs}*{v}^{e}"),
            });
        }
        if let Some(p) = self.prec {
            parts.push(format!("O({v}^{p})"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;

    type L = Laurent<Q>;

    fn e() -> L {
        L::var(8)
    }

    fn c(n: i64) -> L {
        L::from_int(n)
    }

    #[test]
    fn exact_polynomial_arithmetic() {
        let a = c(1).add(&e());
        let b = c(1).sub(&e());
        let p = a.mul(&b);
        assert!(p.is_exact());
        assert_eq!(p.ord().unwrap(), Valuation::Finite(0));
        assert_eq!(p.coeff(2).unwrap(), qi(-1));
    }

    #[test]
    fn inverse_series() {
        let a = c(1).sub(&e()).inv().unwrap();
        assert_eq!(a.precision(), Some(8));
        for k in 0..8 {
            assert_eq!(a.coeff(k).unwrap(), qi(1));
        }
        assert!(a.coeff(8).is_err());
    }

    #[test]
    fn cancellation_is_certified_or_fails() {
        // (1/(1-e) - 1 - e) / e^2 = 1 + e + ... known to relative precision 6.
        let a = c(1).sub(&e()).inv().unwrap().sub(&c(1)).sub(&e());
        let b = a.div(&e().mul(&e())).unwrap();
        assert_eq!(b.ord().unwrap(), Valuation::Finite(0));
        assert_eq!(b.precision(), Some(6));
        // Subtracting everything known leaves an unresolved zero.
        let z = a.sub(&a);
        assert!(z.ord().is_err());
        assert!(z.inv().unwrap().ord().is_err());
    }

    #[test]
    fn matches_rational_function_expansion() {
        let r = RatFunc::<Q>::linear(qi(2), qi(3)).div(&RatFunc::linear(qi(1), qi(-5))).unwrap();
        let l = L::from_ratfunc(&r, 10);
        let (ord, co) = r.laurent(10).unwrap();
        assert_eq!(ord, 0);
        for (k, x) in co.iter().enumerate() {
            assert_eq!(&l.coeff(k as i64).unwrap(), x);
        }
        let direct = c(2).add(&c(3).mul(&e())).div(&c(1).sub(&c(5).mul(&e()))).unwrap();
        for k in 0..8 {
            assert_eq!(direct.coeff(k).unwrap(), l.coeff(k).unwrap());
        }
    }

    #[test]
    fn nested_uncertain_leading_coefficient() {
        // Inner series in η: a = η - η (known to precision 4) is not certified.
        let eta = Laurent::<Q>::var(4);
        let u = Laurent::<Q>::one().sub(&eta).inv().unwrap();
        let z = u.sub(&u);
        let outer_e = Laurent::<Laurent<Q>>::var(6);
        let s = Laurent::constant(z).add(&outer_e);
        assert!(s.ord().is_err());
        assert_eq!(s.lower_bound(), 0);
        assert!(s.inv().unwrap().ord().is_err());
        let t = Laurent::constant(u).add(&outer_e);
        assert_eq!(t.ord().unwrap(), Valuation::Finite(0));
    }

    #[test]
    fn capped_order_accepts_deep_zero() {
        let a = c(1).sub(&e()).inv().unwrap();
        let z = a.sub(&a);
        assert_eq!(z.ord_capped(5).unwrap(), 5);
        assert!(z.ord_capped(9).is_err());
    }
}
