//! Sparse multivariate polynomials over `Q` with named variables, and
//! quotients of them ([`RationalFn`]).
//!
//! Every polynomial carries its ordered variable list; binary operations
//! require identical lists (see [`MultiPoly::align`]).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::field::{fmt_rational, Q};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Shared ordered list of variable names.
pub type Vars = Arc<[String]>;

/// Builds a variable list from names.
pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse polynomial: map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Q>,
}

/// Arithmetic kinds exposed by [`poly_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Neg,
}

/// Applies `kind` to `p` and `q` (`q` is ignored for negation, but its
/// variable list must still agree).
pub fn poly_op(kind: PolyOp, p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    match kind {
        PolyOp::Add => p.add(q),
        PolyOp::Mul => p.mul(q),
        PolyOp::Neg => {
            p.check_vars(q)?;
            Ok(p.neg())
        }
    }
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    /// The variable `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(vars, i))
    }

    pub fn var_index(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Q::one())
    }

    pub fn monomial(vars: &Vars, exps: Exponents, c: Q) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Q> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn var_position(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Highest total degree in the variables listed in `idx`.
    pub fn degree_in_set(&self, idx: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i]).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Re-expresses the polynomial over a variable list containing all of
    /// its variables that actually occur.
    pub fn align(&self, target: &Vars) -> Result<Self, AlgebraError> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let pos = target.iter().position(|t| t == v);
            if pos.is_none() && self.degree_in(i) > 0 {
                return Err(AlgebraError::UnknownVariable(v.clone()));
            }
            map.push(pos);
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Same terms over a list of new names of equal length.
    pub fn rename(&self, names: &Vars) -> Result<Self, AlgebraError> {
        if names.len() != self.vars.len() {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.to_vec(),
                right: names.to_vec(),
            });
        }
        Ok(MultiPoly {
            vars: names.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Evaluates at field values, one per variable.
    pub fn eval<F: crate::field::Field>(&self, values: &[F]) -> F {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let n = self.vars.len();
        let mut powers: Vec<Vec<F>> = Vec::with_capacity(n);
        for (i, v) in values.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut p = Vec::with_capacity(d + 1);
            p.push(F::one());
            for k in 1..=d {
                let next = p[k - 1].mul(v);
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = F::from_rational(c);
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t.mul(&powers[i][x as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes rational constants for some variables, keeping the list.
    pub fn eval_partial(&self, assign: &[(usize, Q)]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let mut c = c.clone();
            for (i, v) in assign {
                let k = e[*i];
                if k > 0 {
                    c *= num_traits::pow(v.clone(), k as usize);
                    e[*i] = 0;
                }
            }
            out.add_term(e, c);
        }
        out
    }

    /// Lexicographically leading term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.vars != d.vars || d.is_zero() {
            return None;
        }
        let (de, dc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((re, rc)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let te: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc / &dc;
            let t = Self::monomial(&self.vars, te.clone(), c.clone());
            r = r.sub(&t.mul(d).ok()?).ok()?;
            q.add_term(te, c);
        }
        Some(q)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.vars.len()];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides every exponent vector by `m` (which must divide each term).
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by their exponents in the variables `idx`; each group's
    /// remaining part is returned as a polynomial over the same list.
    pub fn collect_by(&self, idx: &[usize]) -> BTreeMap<Exponents, MultiPoly> {
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = idx.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in idx {
                rest[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn fmt_term(&self, e: &[u32], c: &Q, first: bool) -> String {
        let mono: Vec<String> = e
            .iter()
            .zip(self.vars.iter())
            .filter(|(x, _)| **x > 0)
            .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
            .collect();
        let neg = c.is_negative();
        let a = c.abs();
        let body = if mono.is_empty() {
            fmt_rational(&a)
        } else if a.is_one() {
            mono.join("*")
        } else {
            format!("{}*{}", fmt_rational(&a), mono.join("*"))
        };
        match (first, neg) {
            (true, false) => body,
            (true, true) => format!("-{body}"),
            (false, false) => format!(" + {body}"),
            (false, true) => format!(" - {body}"),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ts: Vec<(&Exponents, &Q)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in ts.into_iter().enumerate() {
            f.write_str(&self.fmt_term(e, c, i == 0))?;
        }
        Ok(())
    }
}

/// Quotient of two polynomials over the same variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        num.check_vars(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DegenerateSubstitution);
        }
        Ok(RationalFn { num, den }.reduced())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFn { num: p, den }
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Cheap canonicalization: monomial content, exact division in either
    /// direction, and a denominator whose leading coefficient is 1. No
    /// multivariate gcd is attempted.
    pub fn reduced(self) -> Self {
        let RationalFn { mut num, mut den } = self;
        if num.is_zero() {
            return RationalFn {
                den: MultiPoly::one(num.vars()),
                num,
            };
        }
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let m: Exponents = mn.iter().zip(&md).map(|(a, b)| *a.min(b)).collect();
        if m.iter().any(|&x| x > 0) {
            num = num.div_monomial(&m);
            den = den.div_monomial(&m);
        }
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = MultiPoly::one(num.vars());
            } else if let Some(q) = den.div_exact(&num) {
                den = q;
                num = MultiPoly::one(num.vars());
            }
        }
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero den");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFn { num, den }
    }

    /// Evaluates; `None` when the denominator vanishes.
    pub fn eval<F: crate::field::Field>(&self, values: &[F]) -> Option<F> {
        self.num.eval(values).div(&self.den.eval(values))
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.den == o.den {
            return RationalFn::new(self.num.add(&o.num)?, self.den.clone());
        }
        RationalFn::new(
            self.num.mul(&o.den)?.add(&o.num.mul(&self.den)?)?,
            self.den.mul(&o.den)?,
        )
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        RationalFn::new(self.num.mul(&o.num)?, self.den.mul(&o.den)?)
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RationalFn::new(self.num.mul(&o.den)?, self.den.mul(&o.num)?)
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFn {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn align(&self, target: &Vars) -> Result<Self, AlgebraError> {
        Ok(RationalFn {
            num: self.num.align(target)?,
            den: self.den.align(target)?,
        })
    }

    pub fn rename(&self, names: &Vars) -> Result<Self, AlgebraError> {
        Ok(RationalFn {
            num: self.num.rename(names)?,
            den: self.den.rename(names)?,
        })
    }

    /// `true` when `self - other` is identically zero (cross multiplication).
    pub fn equals(&self, other: &Self) -> Result<bool, AlgebraError> {
        Ok(self.num.mul(&other.den)?.sub(&other.num.mul(&self.den)?)?.is_zero())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Substitutes rational functions for variables of `p`.
///
/// `bindings` maps variable names of `p` to rational functions over
/// `target`; variables of `p` without a binding are carried through and
/// must then appear in `target`. Returns `p(bindings)` as a reduced
/// numerator/denominator pair.
pub fn substitute(
    p: &RationalFn,
    bindings: &[(&str, &RationalFn)],
    target: &Vars,
) -> Result<RationalFn, AlgebraError> {
    let num = substitute_poly(&p.num, bindings, target)?;
    let den = substitute_poly(&p.den, bindings, target)?;
    if den.num.is_zero() {
        return Err(AlgebraError::DegenerateSubstitution);
    }
    num.div(&den)
}

/// Polynomial version of [`substitute`].
pub fn substitute_poly(
    p: &MultiPoly,
    bindings: &[(&str, &RationalFn)],
    target: &Vars,
) -> Result<RationalFn, AlgebraError> {
    let n = p.vars().len();
    let mut images: Vec<RationalFn> = Vec::with_capacity(n);
    for v in p.vars().iter() {
        match bindings.iter().find(|(name, _)| name == v) {
            Some((_, r)) => {
                if r.den.is_zero() {
                    return Err(AlgebraError::DegenerateSubstitution);
                }
                images.push(r.align(target)?)
            }
            None => {
                let idx = p.var_position(v).unwrap();
                if p.degree_in(idx) == 0 {
                    images.push(RationalFn::from_poly(MultiPoly::zero(target)));
                } else {
                    images.push(RationalFn::from_poly(MultiPoly::var(target, v)?));
                }
            }
        }
    }
    let degs: Vec<u32> = (0..n).map(|i| p.degree_in(i)).collect();
    // Powers of numerators and denominators, indexed [var][k].
    let mut npow: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    let mut dpow: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    for (i, r) in images.iter().enumerate() {
        let mut a = vec![MultiPoly::one(target)];
        let mut b = vec![MultiPoly::one(target)];
        for k in 1..=degs[i] as usize {
            a.push(a[k - 1].mul(&r.num)?);
            b.push(b[k - 1].mul(&r.den)?);
        }
        npow.push(a);
        dpow.push(b);
    }
    let mut num = MultiPoly::zero(target);
    for (e, c) in p.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        for i in 0..n {
            if degs[i] == 0 {
                continue;
            }
            let k = e[i] as usize;
            t = t.mul(&npow[i][k])?.mul(&dpow[i][degs[i] as usize - k])?;
        }
        num = num.add(&t)?;
    }
    let mut den = MultiPoly::one(target);
    for i in 0..n {
        if degs[i] > 0 {
            den = den.mul(&dpow[i][degs[i] as usize])?;
        }
    }
    if den.is_zero() {
        return Err(AlgebraError::DegenerateSubstitution);
    }
    RationalFn::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};
    use crate::parse::parse_poly;

    fn v4() -> Vars {
        vars(&["x0", "x1", "x2", "x3", "h"])
    }

    #[test]
    fn additive_inverse_is_zero() {
        let vs = v4();
        let x0 = MultiPoly::var(&vs, "x0").unwrap();
        assert!(poly_op(PolyOp::Add, &x0, &x0.neg()).unwrap().is_zero());
    }

    #[test]
    fn distributivity_example() {
        let vs = v4();
        let x2 = MultiPoly::var(&vs, "x2").unwrap();
        let one_minus = MultiPoly::one(&vs).sub(&x2).unwrap();
        let p = poly_op(PolyOp::Mul, &x2, &one_minus).unwrap();
        assert_eq!(p, parse_poly("x2 - x2^2", &vs).unwrap());
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let a = MultiPoly::var(&vars(&["x"]), "x").unwrap();
        let b = MultiPoly::var(&vars(&["y"]), "y").unwrap();
        assert!(matches!(a.add(&b), Err(AlgebraError::VariableMismatch { .. })));
        assert!(matches!(poly_op(PolyOp::Neg, &a, &b), Err(AlgebraError::VariableMismatch { .. })));
    }

    #[test]
    fn substitute_affine_shift() {
        let src = vars(&["x2"]);
        let tgt = vars(&["e"]);
        let p = RationalFn::from_poly(MultiPoly::var(&src, "x2").unwrap());
        let b = RationalFn::from_poly(parse_poly("1 + e", &tgt).unwrap());
        let r = substitute(&p, &[("x2", &b)], &tgt).unwrap();
        assert_eq!(r.num, parse_poly("1 + e", &tgt).unwrap());
        assert!(r.den.is_constant());
    }

    #[test]
    fn substitute_into_z_chart() {
        let src = vars(&["x2"]);
        let tgt = vars(&["z2", "z3"]);
        let p = RationalFn::from_poly(MultiPoly::var(&src, "x2").unwrap());
        let b = RationalFn::new(
            MultiPoly::var(&tgt, "z2").unwrap(),
            MultiPoly::var(&tgt, "z3").unwrap(),
        )
        .unwrap();
        let r = substitute(&p, &[("x2", &b)], &tgt).unwrap();
        assert_eq!(r.num, MultiPoly::var(&tgt, "z2").unwrap());
        assert_eq!(r.den, MultiPoly::var(&tgt, "z3").unwrap());
    }

    #[test]
    fn substitute_pole_numerator_form() {
        // h x2 / (1 - x2) with x2 = 1 + e  ->  -h (1 + e) / e
        let src = vars(&["x2", "h"]);
        let tgt = vars(&["e", "h"]);
        let f = RationalFn::new(
            parse_poly("h*x2", &src).unwrap(),
            parse_poly("1 - x2", &src).unwrap(),
        )
        .unwrap();
        let b = RationalFn::from_poly(parse_poly("1 + e", &tgt).unwrap());
        let r = substitute(&f, &[("x2", &b)], &tgt).unwrap();
        assert_eq!(r.num, parse_poly("-h - h*e", &tgt).unwrap());
        assert_eq!(r.den, parse_poly("e", &tgt).unwrap());
    }

    #[test]
    fn degenerate_substitution() {
        let src = vars(&["x"]);
        let tgt = vars(&["t"]);
        let f = RationalFn::new(MultiPoly::one(&src), parse_poly("x - 1", &src).unwrap()).unwrap();
        let b = RationalFn::from_poly(MultiPoly::one(&tgt));
        assert!(matches!(
            substitute(&f, &[("x", &b)], &tgt),
            Err(AlgebraError::DegenerateSubstitution)
        ));
    }

    #[test]
    fn exact_division() {
        let vs = v4();
        let a = parse_poly("x0 + x1*h", &vs).unwrap();
        let b = parse_poly("x2^2 - 3/2*x0", &vs).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.add(&MultiPoly::one(&vs)).unwrap().div_exact(&a).is_none());
    }

    #[test]
    fn eval_matches_hand_value() {
        let vs = v4();
        let p = parse_poly("x0^2*x2 - 2*h + 1/3", &vs).unwrap();
        let v = p.eval(&[qi(2), qi(0), qi(3), qi(0), qi(1)]);
        assert_eq!(v, q(31, 3));
    }

    #[test]
    fn display_is_graded_lex() {
        let vs = v4();
        let p = parse_poly("1 - h*x0^2 + 3/2*x1", &vs).unwrap();
        assert_eq!(p.to_string(), "-x0^2*h + 3/2*x1 + 1");
    }
}
