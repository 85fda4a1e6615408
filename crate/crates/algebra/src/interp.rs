//! Gcd over `F(x)[y]` by specialization of `x`, rational reconstruction of
//! the coefficients and a final exact-division proof.

use crate::field::Field;
use crate::ratfunc::RatFunc;
use crate::unipoly::UniPoly;

/// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate<F: Field>(pts: &[(F, F)]) -> UniPoly<F> {
    let n = pts.len();
    let mut dd: Vec<F> = pts.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = pts[i].0.sub(&pts[i - j].0);
            dd[i] = num.div(&den).expect("distinct nodes");
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = acc
            .mul(&UniPoly::linear(pts[i].0.neg(), F::one()))
            .add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

/// Cauchy interpolation: the rational function `p/q` with
/// `deg p <= (n-1)/2`, `deg q <= n-1-deg p` through the points, if any.
pub fn rational_reconstruct<F: Field>(pts: &[(F, F)]) -> Option<RatFunc<F>> {
    let n = pts.len();
    if n == 0 {
        return None;
    }
    let l = interpolate(pts);
    let mut m = UniPoly::one();
    for (x, _) in pts {
        m = m.mul(&UniPoly::linear(x.neg(), F::one()));
    }
    let bound = (n - 1) / 2;
    let (mut r0, mut r1) = (m, l);
    let (mut t0, mut t1) = (UniPoly::<F>::zero(), UniPoly::<F>::one());
    while !r1.is_zero() && r1.deg0() > bound {
        let (q, r) = r0.div_rem(&r1)?;
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() || t1.deg0() > n - 1 - bound {
        return None;
    }
    if pts.iter().any(|(x, _)| t1.eval(x).is_zero()) {
        return None;
    }
    RatFunc::new(r1, t1)
}

fn specialize<F: Field>(p: &UniPoly<RatFunc<F>>, x: &F) -> Option<UniPoly<F>> {
    let c: Option<Vec<F>> = p.coeffs().iter().map(|c| c.eval(x)).collect();
    let c = UniPoly::from_coeffs(c?);
    (c.degree() == p.degree()).then_some(c)
}

const CHECKPOINTS: [usize; 6] = [6, 12, 24, 48, 96, 192];

/// Monic gcd of two nonzero polynomials over `F(x)`, or `None` if the
/// sampling budget runs out.
///
/// Only points where both leading coefficients survive are used; at such
/// points the specialized gcd has degree at least that of the true gcd,
/// and the monic gcd specializes to the monic specialized gcd. A candidate
/// of the minimal observed degree that divides both inputs is therefore
/// the gcd.
pub fn interpolation_gcd<F: Field>(
    a: &UniPoly<RatFunc<F>>,
    b: &UniPoly<RatFunc<F>>,
) -> Option<UniPoly<RatFunc<F>>> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let mut pts: Vec<(F, UniPoly<F>)> = Vec::new();
    let mut d = usize::MAX;
    let mut k = 0i64;
    let last = *CHECKPOINTS.last().unwrap();
    while pts.len() < last && k < 4 * last as i64 {
        k += 1;
        let x = F::from_int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 } + 5);
        let (Some(sa), Some(sb)) = (specialize(a, &x), specialize(b, &x)) else {
            continue;
        };
        let g = F::poly_gcd(&sa, &sb).monic();
        let gd = g.deg0();
        if gd == 0 {
            return Some(UniPoly::one());
        }
        if gd < d {
            d = gd;
            pts.clear();
        }
        if gd > d {
            continue;
        }
        pts.push((x, g));
        if CHECKPOINTS.contains(&pts.len()) {
            if let Some(c) = reconstruct_monic(&pts, d) {
                if a.exact_div(&c).is_some() && b.exact_div(&c).is_some() {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn reconstruct_monic<F: Field>(pts: &[(F, UniPoly<F>)], d: usize) -> Option<UniPoly<RatFunc<F>>> {
    let mut coeffs = Vec::with_capacity(d + 1);
    for j in 0..d {
        let col: Vec<(F, F)> = pts.iter().map(|(x, g)| (x.clone(), g.coeff(j))).collect();
        coeffs.push(rational_reconstruct(&col)?);
    }
    coeffs.push(RatFunc::one());
    Some(UniPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qi, Q};

    type Qh = RatFunc<Q>;

    fn h() -> Qh {
        Qh::var()
    }

    #[test]
    fn reconstructs_a_rational_function() {
        let f = |x: &Q| (x * x + qi(3)) / (x - qi(7));
        let pts: Vec<(Q, Q)> = (0..7).map(|i| (qi(i), f(&qi(i)))).collect();
        let r = rational_reconstruct(&pts).unwrap();
        assert_eq!(r.eval(&qi(11)).unwrap(), f(&qi(11)));
        assert_eq!(r.degree(), 2);
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        // g = y^2 + (h/(h+1)) y + 1/h
        let g = UniPoly::from_coeffs(vec![
            h().inv().unwrap(),
            h().div(&h().add(&Qh::one())).unwrap(),
            Qh::one(),
        ]);
        let p = UniPoly::linear(h(), Qh::from_int(2));
        let q = UniPoly::from_coeffs(vec![Qh::one(), Qh::zero(), h().mul(&h())]);
        let got = interpolation_gcd(&g.mul(&p), &g.mul(&q)).unwrap();
        assert_eq!(got, g);
    }

    #[test]
    fn coprime_inputs_give_one() {
        let p = UniPoly::linear(h(), Qh::one());
        let q = UniPoly::linear(Qh::one(), h());
        assert!(interpolation_gcd(&p, &q).unwrap().is_one());
    }
}
