//! Exact arithmetic for the lattice super-KdV workbench: big rationals,
//! univariate polynomials and rational functions over any [`Field`],
//! sparse multivariate polynomials over `Q`, and dense linear algebra.

pub mod error;
pub mod field;
pub mod fp;
pub mod interp;
pub mod laurent;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod random;
pub mod ratfunc;
pub mod unipoly;

pub use error::AlgebraError;
pub use fp::Fp;
pub use field::{fmt_rational, parse_rational, q, qi, Field, Q};
pub use laurent::{Laurent, PrecisionLost};
pub use linalg::Matrix;
pub use multipoly::{poly_op, substitute, substitute_poly, vars, MultiPoly, PolyOp, RationalFn, Vars};
pub use parse::{parse_poly, parse_rational_fn};
pub use ratfunc::{Limit, RatFunc, Valuation};
pub use unipoly::UniPoly;

/// `Q(h)`.
pub type Qh = RatFunc<Q>;
/// Germs in `ε` over `Q(h)`.
pub type Germ = RatFunc<RatFunc<Q>>;

/// Monic gcd of two univariate polynomials; both zero is an error.
pub fn uni_gcd<F: Field>(p: &UniPoly<F>, q: &UniPoly<F>) -> Result<UniPoly<F>, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::UndefinedGcd);
    }
    Ok(F::poly_gcd(p, q))
}

/// Order in `ε` of a rational function; the zero function is an error.
pub fn ord_epsilon<F: Field>(f: &RatFunc<F>) -> Result<i64, AlgebraError> {
    f.ord().finite().ok_or(AlgebraError::InfiniteValuation)
}
