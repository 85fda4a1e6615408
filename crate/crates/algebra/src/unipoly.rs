//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{fmt_rational, var_name, Field, Q};

/// Univariate polynomial, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * var^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `a + b * var`.
    pub fn linear(a: F, b: F) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Divides by `var^k`; the low `k` coefficients must be zero.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(F::is_zero));
        UniPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Makes the leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) if !self.lc().is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Euclidean division; `None` if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv_lc = d.lc().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].mul(&inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = rem[k].sub(&c.mul(dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; `None` if `d` is zero or does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let (Some(n), Some(m)) = (self.degree(), d.degree()) else {
            return self.clone();
        };
        if n < m {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.clone();
        let mut e = n - m + 1;
        while let Some(rd) = r.degree() {
            if rd < m {
                break;
            }
            let t = UniPoly::monomial(r.lc(), rd - m);
            r = r.scale(&lc).sub(&t.mul(d));
            e -= 1;
        }
        r.scale(&lc.pow(e as u32))
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        F::poly_gcd(self, rhs)
    }

    /// Formats with an explicit variable name.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if c.is_atomic() => (true, rest.to_string()),
                _ => (false, cs),
            };
            let body = if c.is_atomic() { body } else { format!("({body})") };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var(var_name(F::DEPTH)))
    }
}

/// Monic gcd by the subresultant polynomial remainder sequence.
///
/// Valid over any field; the exact divisions of the sequence are performed
/// in the field. Returns the zero polynomial only when both inputs are zero.
pub fn subresultant_gcd<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut p, mut r) = if a.deg0() >= b.deg0() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = F::one();
    let mut h = F::one();
    loop {
        let delta = p.deg0() - r.deg0();
        let prem = p.pseudo_rem(&r);
        if prem.is_zero() {
            return r.monic();
        }
        if prem.deg0() == 0 {
            return UniPoly::one();
        }
        let divisor = g.mul(&h.pow(delta as u32));
        let next = prem.scale(&divisor.inv().expect("subresultant divisor is nonzero"));
        p = r;
        r = next;
        g = p.lc();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d as u32)
                .div(&h.pow(d as u32 - 1))
                .expect("subresultant h is nonzero"),
        };
    }
}

/// Gcd over `Q`: clears denominators and runs the subresultant sequence over
/// the integers with content removal, which keeps coefficient growth linear.
pub fn rational_gcd(a: &UniPoly<Q>, b: &UniPoly<Q>) -> UniPoly<Q> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return UniPoly::one();
    }
    let mut p = primitive_int(a);
    let mut r = primitive_int(b);
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = p.len() - r.len();
        let prem = int_pseudo_rem(&p, &r);
        if prem.is_empty() {
            break;
        }
        if prem.len() == 1 {
            return UniPoly::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        let next: Vec<BigInt> = prem.iter().map(|c| c / &divisor).collect();
        p = r;
        r = next;
        g = p.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => num_traits::pow(g.clone(), d) / num_traits::pow(h, d - 1),
        };
    }
    let r = int_primitive(r);
    let lc = Q::from_integer(r.last().unwrap().clone());
    UniPoly::from_coeffs(r.into_iter().map(|c| Q::from_integer(c) / &lc).collect())
}

fn primitive_int(p: &UniPoly<Q>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    int_primitive(
        p.coeffs()
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn int_pseudo_rem(p: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let m = d.len() - 1;
    let lc = d.last().unwrap();
    let mut r: Vec<BigInt> = p.to_vec();
    let mut e = p.len() - d.len() + 1;
    while r.len() > m {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - m;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, dc) in d.iter().enumerate() {
            r[shift + j] -= &top * dc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lc.clone(), e);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Display helper for integer coefficient lists (characteristic polynomials).
pub fn fmt_int_poly(coeffs: &[BigInt], var: &str) -> String {
    let p: UniPoly<Q> = UniPoly::from_coeffs(coeffs.iter().cloned().map(Q::from_integer).collect());
    let s = p.fmt_var(var);
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl UniPoly<Q> {
    /// Coefficients as reduced `p/q` strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients; `None` if some coefficient is not integral.
    pub fn to_int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Maximum absolute value of the integer coefficients, when integral.
    pub fn max_abs_coeff(&self) -> Option<BigInt> {
        self.to_int_coeffs()
            .map(|v| v.into_iter().map(|c| c.abs()).max().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;
    use crate::ratfunc::RatFunc;

    fn p(c: &[i64]) -> UniPoly<Q> {
        UniPoly::from_coeffs(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn gcd_common_factor() {
        // e^2 - e and e
        assert_eq!(p(&[0, -1, 1]).gcd(&p(&[0, 1])), p(&[0, 1]));
    }

    #[test]
    fn gcd_coprime() {
        assert_eq!(p(&[1, 1]).gcd(&p(&[0, 1])), UniPoly::one());
    }

    #[test]
    fn gcd_both_zero_is_zero() {
        assert!(UniPoly::<Q>::zero().gcd(&UniPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_over_function_field() {
        // ((e-1)^2 (e+h), (e-1)(e-h)) over Q(h) -> e - 1
        type Qh = RatFunc<Q>;
        let h = Qh::var();
        let one = Qh::one();
        let em1 = UniPoly::linear(one.neg(), one.clone());
        let eph = UniPoly::linear(h.clone(), one.clone());
        let emh = UniPoly::linear(h.neg(), one.clone());
        let a = em1.mul(&em1).mul(&eph);
        let b = em1.mul(&emh);
        assert_eq!(a.gcd(&b), em1);
        assert_eq!(subresultant_gcd(&a, &b), em1);
    }

    #[test]
    fn generic_and_integer_gcd_agree() {
        let a = p(&[6, -5, -2, 1]).mul(&p(&[3, 0, 2]));
        let b = p(&[6, -5, -2, 1]).mul(&p(&[-7, 4]));
        assert_eq!(subresultant_gcd(&a, &b), rational_gcd(&a, &b));
        assert_eq!(rational_gcd(&a, &b), p(&[6, -5, -2, 1]));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, 2, 3, 4, 5]);
        let d = p(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.deg0() < 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3]).to_string(), "-3*h^2 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-h");
    }
}
