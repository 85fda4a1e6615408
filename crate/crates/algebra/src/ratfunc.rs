//! Univariate rational functions with canonical reduction.
//!
//! `RatFunc<F>` is itself a [`Field`], so `RatFunc<RatFunc<Q>>` models
//! rational functions in `ε` whose coefficients live in `Q(h)`.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{var_name, Field, Q};
use crate::unipoly::UniPoly;

/// Order of vanishing at the origin. `Infinite` is the valuation of zero
/// and compares greater than every finite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Limit of a rational function at the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum Limit<F> {
    Finite(F),
    Infinity,
}

/// Reduced quotient `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Builds and reduces `num / den`; `None` if `den` is zero.
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero_value());
        }
        if den.is_constant() {
            let inv = den.lc().inv()?;
            return Some(RatFunc {
                num: num.scale(&inv),
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Some(Self::normalize(num, den))
    }

    /// Makes the (already coprime) denominator monic.
    fn normalize(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero denominator");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn zero_value() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The field variable.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    /// `a + b * var`.
    pub fn linear(a: F, b: F) -> Self {
        Self::from_poly(UniPoly::linear(a, b))
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    /// `max(deg num, deg den)`, the degree of the induced map to the line.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Order at the origin: low degree of numerator minus low degree of the
    /// denominator. Negative orders are poles.
    pub fn ord(&self) -> Valuation {
        match self.num.low_degree() {
            None => Valuation::Infinite,
            Some(n) => {
                let d = self.den.low_degree().expect("denominator nonzero");
                Valuation::Finite(n as i64 - d as i64)
            }
        }
    }

    /// Coefficient of the principal term `c * var^ord`.
    pub fn leading_coeff(&self) -> Option<F> {
        let n = self.num.low_degree()?;
        let d = self.den.low_degree()?;
        self.num.coeff(n).div(&self.den.coeff(d))
    }

    /// Value at the origin, or `Infinity` at a pole.
    pub fn limit(&self) -> Limit<F> {
        match self.ord() {
            Valuation::Infinite => Limit::Finite(F::zero()),
            Valuation::Finite(o) if o > 0 => Limit::Finite(F::zero()),
            Valuation::Finite(0) => Limit::Finite(self.leading_coeff().expect("nonzero")),
            Valuation::Finite(_) => Limit::Infinity,
        }
    }

    /// Evaluates at a point; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// First `n` coefficients of the Laurent expansion at the origin,
    /// starting from exponent `ord`. Returns `(ord, coefficients)`.
    pub fn laurent(&self, n: usize) -> Option<(i64, Vec<F>)> {
        let ord = self.ord().finite()?;
        let nl = self.num.low_degree()?;
        let dl = self.den.low_degree()?;
        let num = self.num.unshift(nl);
        let den = self.den.unshift(dl);
        Some((ord, power_series_div(&num, &den, n)))
    }

    /// Taylor coefficients of `self * var^shift` for exponents `0..n`; the
    /// shifted function must be regular at the origin.
    pub fn taylor_shifted(&self, shift: i64, n: usize) -> Option<Vec<F>> {
        if self.num.is_zero() {
            return Some(vec![F::zero(); n]);
        }
        let (ord, lau) = self.laurent(n)?;
        let start = ord + shift;
        if start < 0 {
            return None;
        }
        let start = start as usize;
        let mut out = vec![F::zero(); n];
        for (i, c) in lau.into_iter().enumerate() {
            if start + i < n {
                out[start + i] = c;
            }
        }
        Some(out)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        let d = self.den.mul(&self.den);
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let n = self.num.fmt_var(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_var(var);
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || !self.den.lc().is_one() {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }

    /// Maps coefficients through a field homomorphism.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Option<RatFunc<G>> {
        let num = UniPoly::from_coeffs(self.num.coeffs().iter().map(&f).collect());
        let den = UniPoly::from_coeffs(self.den.coeffs().iter().map(&f).collect());
        RatFunc::new(num, den)
    }
}

/// Power series quotient `a / b` to `n` terms; `b(0)` must be nonzero.
fn power_series_div<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>, n: usize) -> Vec<F> {
    let b0inv = b.coeff(0).inv().expect("unit constant term");
    let mut out: Vec<F> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.coeff(k);
        for j in 1..=k.min(b.deg0()) {
            acc = acc.sub(&b.coeff(j).mul(&out[k - j]));
        }
        out.push(acc.mul(&b0inv));
    }
    out
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var(var_name(F::DEPTH)))
    }
}

impl<F: Field> Field for RatFunc<F> {
    const DEPTH: usize = F::DEPTH + 1;

    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::from_poly(n);
            }
            return Self::new(n, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            // gcd(a*d + c, d) = gcd(c, d) = 1
            return RatFunc {
                num: self.num.mul(&rhs.den).add(&rhs.num),
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return RatFunc {
                num: rhs.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        // Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b' d' g).
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::normalize(n, self.den.mul(&rhs.den));
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if t.is_zero() {
            return Self::zero_value();
        }
        let g2 = t.gcd(&g);
        let (t, g) = if g2.is_one() {
            (t, g)
        } else {
            (t.exact_div(&g2).unwrap(), g.exact_div(&g2).unwrap())
        };
        Self::normalize(t, b1.mul(&d1).mul(&g))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_value();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // Cross cancellation keeps the result reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1).unwrap() };
        let d = if g1.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g1).unwrap() };
        let c = if g2.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g2).unwrap() };
        let b = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2).unwrap() };
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn from_rational(q: &Q) -> Self {
        Self::constant(F::from_rational(q))
    }

    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
            && self.num.coeffs().iter().all(|c| c.is_atomic())
    }

    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        let (Some(la), Some(lb)) = (a.low_degree(), b.low_degree()) else {
            return crate::unipoly::subresultant_gcd(a, b);
        };
        let k = la.min(lb);
        let (a, b) = (a.unshift(k), b.unshift(k));
        let g = if coprime_by_specialization(&a, &b) {
            UniPoly::one()
        } else {
            crate::interp::interpolation_gcd(&a, &b)
                .unwrap_or_else(|| crate::unipoly::subresultant_gcd(&a, &b))
        };
        g.shift(k)
    }
}

/// Sufficient test for `gcd(a, b) = 1` over `F(x)`: specialize `x` at a
/// point where both leading coefficients survive. A common factor of
/// positive degree would survive the specialization with the same degree.
fn coprime_by_specialization<F: Field>(a: &UniPoly<RatFunc<F>>, b: &UniPoly<RatFunc<F>>) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    let spec = |p: &UniPoly<RatFunc<F>>, x: &F| -> Option<UniPoly<F>> {
        let c: Option<Vec<F>> = p.coeffs().iter().map(|c| c.eval(x)).collect();
        let c = UniPoly::from_coeffs(c?);
        (c.degree() == p.degree()).then_some(c)
    };
    [7919i64, -3571, 104729].iter().any(|&k| {
        let x = F::from_int(k);
        match (spec(a, &x), spec(b, &x)) {
            (Some(sa), Some(sb)) => F::poly_gcd(&sa, &sb).is_constant(),
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};

    type Qh = RatFunc<Q>;
    type Germ = RatFunc<Qh>;

    fn e() -> Germ {
        Germ::var()
    }

    fn hq() -> Germ {
        Germ::constant(Qh::var())
    }

    #[test]
    fn ord_of_simple_pole() {
        // -h / e
        let f = hq().neg().div(&e()).unwrap();
        assert_eq!(f.ord(), Valuation::Finite(-1));
        assert_eq!(f.leading_coeff().unwrap(), Qh::var().neg());
    }

    #[test]
    fn ord_of_double_pole_with_h_coefficient() {
        let c = qi(3);
        let lead = Qh::one().add(&Qh::var().mul(&Qh::from_rational(&c)));
        let f = Germ::constant(lead.clone()).div(&e().mul(&e())).unwrap();
        assert_eq!(f.ord(), Valuation::Finite(-2));
        assert_eq!(f.leading_coeff().unwrap(), lead);
    }

    #[test]
    fn ord_of_unit_and_zero() {
        assert_eq!(Germ::from_int(5).ord(), Valuation::Finite(0));
        assert_eq!(Germ::zero().ord(), Valuation::Infinite);
        assert!(Valuation::Infinite > Valuation::Finite(1000));
    }

    #[test]
    fn reduction_is_canonical() {
        let a = UniPoly::<Q>::from_coeffs(vec![qi(1), qi(2)]);
        let b = UniPoly::<Q>::from_coeffs(vec![qi(3), qi(0), qi(5)]);
        let g = UniPoly::<Q>::from_coeffs(vec![qi(-7), qi(1), qi(1)]);
        let r1 = RatFunc::new(a.mul(&g), b.mul(&g)).unwrap();
        let r2 = RatFunc::new(a, b).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.den().lc().is_one());
    }

    #[test]
    fn laurent_of_geometric_series() {
        // 1/(1 - x) = 1 + x + x^2 + ...
        let f = Qh::one().div(&Qh::linear(qi(1), qi(-1))).unwrap();
        let (o, c) = f.laurent(4).unwrap();
        assert_eq!(o, 0);
        assert_eq!(c, vec![qi(1); 4]);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/(1+2x)) = -2/(1+2x)^2, at 0 is -2
        let f = Qh::one().div(&Qh::linear(qi(1), qi(2))).unwrap();
        assert_eq!(f.derivative().eval(&qi(0)).unwrap(), qi(-2));
        assert_eq!(f.eval(&q(1, 2)).unwrap(), q(1, 2));
    }

    #[test]
    fn limit_classification() {
        assert_eq!(e().inv().unwrap().limit(), Limit::Infinity);
        assert_eq!(e().limit(), Limit::Finite(Qh::zero()));
        assert_eq!(Germ::from_int(2).add(&e()).limit(), Limit::Finite(Qh::from_int(2)));
    }
}
