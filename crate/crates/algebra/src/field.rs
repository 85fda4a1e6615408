//! The [`Field`] abstraction shared by every coefficient domain in the crate.
//!
//! Three concrete fields are used in practice:
//! - [`Q`] (arbitrary precision rationals),
//! - `RatFunc<Q>`, the rational function field `Q(h)` (or `Q(s)`, `Q(δ)`;
//!   the variable name only matters for display),
//! - `RatFunc<RatFunc<Q>>`, germs in `ε` over `Q(h)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::unipoly::{subresultant_gcd, UniPoly};

/// Arbitrary precision rational number; always stored reduced with a
/// positive denominator.
pub type Q = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Nesting depth of the field above `Q`; used to pick display variable names.
    const DEPTH: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `true` when the value is known to be nonzero. Fields with inexact
    /// elements (truncated series) override this; `!is_zero()` otherwise.
    fn nonzero_certified(&self) -> bool {
        !self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &Q) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Monic gcd of two univariate polynomials over this field.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        subresultant_gcd(a, b)
    }

    /// Whether the element prints as a single signed atom (no inner `+`),
    /// so it can be used as a coefficient without parentheses.
    fn is_atomic(&self) -> bool {
        true
    }
}

impl Field for Q {
    const DEPTH: usize = 0;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        crate::unipoly::rational_gcd(a, b)
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn fmt_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Height of a rational: max of |numerator| and denominator, as bit length.
pub fn height_bits(q: &Q) -> u64 {
    q.numer().abs().bits().max(q.denom().bits())
}

/// Convenience constructor for small rationals.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Variable names used when printing nested rational function fields.
pub(crate) fn var_name(depth: usize) -> &'static str {
    match depth {
        0 => "h",
        1 => "e",
        _ => "w",
    }
}
