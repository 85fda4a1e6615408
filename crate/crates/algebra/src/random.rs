//! Random rationals of bounded height.

use num_bigint::BigInt;
use rand::Rng;

use crate::field::Q;

/// Uniform rational `p/q` with `|p| <= height` and `1 <= q <= height`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Q {
    let p = rng.gen_range(-height..=height);
    let q = rng.gen_range(1..=height);
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Like [`random_rational`] but never zero.
pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Q {
    loop {
        let r = random_rational(rng, height);
        if r != Q::from_integer(0.into()) {
            return r;
        }
    }
}
