//! The prime field `F_p` with `p = 2^61 - 1`.
//!
//! Used to measure degrees after a random specialization: reduction mod
//! `p` commutes with the field operations, so a degree computed mod `p`
//! never exceeds the one over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::field::{Field, Q};
use crate::unipoly::UniPoly;

pub const MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce_big(n: &BigInt) -> u64 {
        let m = BigInt::from(MODULUS);
        let r = ((n % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }

    /// Image of a rational, `None` when `p` divides the denominator.
    pub fn try_from_rational(q: &Q) -> Option<Self> {
        let d = Fp(Self::reduce_big(q.denom()));
        d.inv().map(|di| Fp(Self::reduce_big(q.numer())).mul(&di))
    }

    fn mul_mod(a: u64, b: u64) -> u64 {
        let p = a as u128 * b as u128;
        let lo = (p as u64) & MODULUS;
        let hi = (p >> 61) as u64;
        let s = lo + hi;
        if s >= MODULUS {
            s - MODULUS
        } else {
            s
        }
    }

    fn pow_mod(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_mod(acc, b);
            }
            b = Self::mul_mod(b, b);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    const DEPTH: usize = 0;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + MODULUS - rhs.0 })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(Self::mul_mod(self.0, rhs.0))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Fp(Self::pow_mod(self.0, MODULUS - 2)))
    }

    /// Panics when `p` divides the denominator; use
    /// [`Fp::try_from_rational`] for untrusted input.
    fn from_rational(q: &Q) -> Self {
        Self::try_from_rational(q).expect("denominator divisible by the modulus")
    }

    fn from_int(n: i64) -> Self {
        if n >= 0 {
            Fp::new(n as u64)
        } else {
            Fp::new(n.unsigned_abs()).neg()
        }
    }

    /// Euclid's algorithm; no coefficient growth over a finite field.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let (_, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        if r0.is_zero() {
            r0
        } else {
            r0.monic()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn arithmetic() {
        let a = Fp::from_int(-3);
        assert_eq!(a.add(&Fp::from_int(3)), Fp::zero());
        let h = Fp::from_rational(&q(1, 2));
        assert_eq!(h.mul(&Fp::from_int(2)), Fp::one());
        let x = Fp::new(MODULUS - 1);
        assert_eq!(x.mul(&x), Fp::one());
        assert_eq!(Fp::from_int(7).inv().unwrap().mul(&Fp::from_int(7)), Fp::one());
    }

    #[test]
    fn gcd() {
        let p = |c: &[i64]| UniPoly::from_coeffs(c.iter().map(|&x| Fp::from_int(x)).collect());
        // (x - 1)(x + 2) and (x - 1)(x - 5)
        let g = Fp::poly_gcd(&p(&[-2, 1, 1]), &p(&[5, -6, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }
}
