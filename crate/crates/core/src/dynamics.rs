//! The four-dimensional map `φ`, its inverse, the reduced three-dimensional
//! map `ψ`, and the two invariants.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use skdv_algebra::{
    parse_poly, parse_rational_fn, substitute, vars, Field, MultiPoly, RationalFn, Vars, Q,
};

use crate::error::{CoreError, Result};

/// Source variables of `φ` and of the invariants.
pub fn phi_vars() -> Vars {
    vars(&["x0", "x1", "x2", "x3", "h"])
}

/// Source variables of `ψ`; `c` is the fixed value of `I₂`.
pub fn psi_vars() -> Vars {
    vars(&["x0", "x1", "x2", "h", "c"])
}

const I1_TEXT: &str = "-h*x0^2 - h*x0*x2 + h^2*x0*x2 + h*x0^2*x2 - h*x2^2 + h*x0*x2^2";
const I2_TEXT: &str = "2*h*x0 + x0^2 - 2*h*x0*x1 + 2*h*x2 + x0*x2 - h*x1*x2 + h^2*x1*x2 \
    + 2*h*x0*x1*x2 + x2^2 + h*x1*x2^2 - h*x0*x3 + h^2*x0*x3 + h*x0^2*x3 - 2*h*x2*x3 \
    + 2*h*x0*x2*x3";

/// `I₁` over `x0..x3, h`.
pub fn i1_poly() -> &'static MultiPoly {
    static P: OnceLock<MultiPoly> = OnceLock::new();
    P.get_or_init(|| parse_poly(I1_TEXT, &phi_vars()).expect("static polynomial"))
}

/// `I₂` over `x0..x3, h`.
pub fn i2_poly() -> &'static MultiPoly {
    static P: OnceLock<MultiPoly> = OnceLock::new();
    P.get_or_init(|| parse_poly(I2_TEXT, &phi_vars()).expect("static polynomial"))
}

/// One step of `φ` over any field.
pub fn phi_step<F: Field>(x: &[F; 4], h: &F) -> Result<[F; 4]> {
    let one = F::one();
    let d = one.sub(&x[2]);
    let inv = d.inv().ok_or_else(|| CoreError::Pole("1 - x2".into()))?;
    let inv2 = inv.mul(&inv);
    let x2n = x[2].neg().sub(&x[0]).add(&h.mul(&x[2]).mul(&inv));
    let num = F::from_int(2).sub(&x[2]).add(&h.mul(&x[3]));
    let x3n = x[1].neg().sub(&x[3]).add(&num.mul(&inv2));
    Ok([x[2].clone(), x[3].clone(), x2n, x3n])
}

/// One step of `φ⁻¹` over any field.
pub fn phi_inverse_step<F: Field>(y: &[F; 4], h: &F) -> Result<[F; 4]> {
    let one = F::one();
    let d = one.sub(&y[0]);
    let inv = d.inv().ok_or_else(|| CoreError::Pole("1 - x0".into()))?;
    let inv2 = inv.mul(&inv);
    let x0 = y[2].neg().sub(&y[0]).add(&h.mul(&y[0]).mul(&inv));
    let num = F::from_int(2).sub(&y[0]).add(&h.mul(&y[1]));
    let x1 = y[1].neg().sub(&y[3]).add(&num.mul(&inv2));
    Ok([x0, x1, y[0].clone(), y[1].clone()])
}

/// Denominator of the middle component of `ψ`, without the factor `h`.
fn psi_den<F: Field>(x0: &F, x2: &F, h: &F) -> F {
    // -x0 + h x0 + x0^2 - 2 x2 + 2 x0 x2
    x0.neg()
        .add(&h.mul(x0))
        .add(&x0.mul(x0))
        .sub(&F::from_int(2).mul(x2))
        .add(&F::from_int(2).mul(&x0.mul(x2)))
}

/// One step of `ψ` with `I₂ = c`, over any field.
pub fn psi_step<F: Field>(x: &[F; 3], h: &F, c: &F) -> Result<[F; 3]> {
    let [x0, x1, x2] = x;
    let one = F::one();
    let two = F::from_int(2);
    let b = h.mul(&psi_den(x0, x2, h));
    let binv = b.inv().ok_or_else(|| {
        CoreError::Pole("h*(-x0 + h*x0 + x0^2 - 2*x2 + 2*x0*x2)".into())
    })?;
    let dinv = one
        .sub(x2)
        .inv()
        .ok_or_else(|| CoreError::Pole("1 - x2".into()))?;
    let quad = x0.mul(x0).add(&x0.mul(x2)).add(&x2.mul(x2));
    let lin = two.mul(h).mul(&x0.sub(&x0.mul(x1)).add(x2));
    let tail = h
        .mul(x1)
        .mul(x2)
        .mul(&two.mul(x0).add(x2).sub(&one).add(h));
    let x1n = c.sub(&quad).sub(&lin).sub(&tail).mul(&binv);
    let x2n = x2.neg().sub(x0).add(&h.mul(x2).mul(&dinv));
    Ok([x2.clone(), x1n, x2n])
}

/// `(I₁, I₂)` at a point over any field.
pub fn invariants_at<F: Field>(x: &[F; 4], h: &F) -> (F, F) {
    let vals = [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone(), h.clone()];
    (i1_poly().eval(&vals), i2_poly().eval(&vals))
}

/// An exact point of the affine chart together with the parameter `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePoint4 {
    #[serde(with = "crate::serde_q::array4")]
    pub x: [Q; 4],
    #[serde(with = "crate::serde_q::single")]
    pub h: Q,
}

impl AffinePoint4 {
    pub fn new(x: [Q; 4], h: Q) -> Self {
        AffinePoint4 { x, h }
    }
}

impl fmt::Display for AffinePoint4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.x.iter().map(skdv_algebra::fmt_rational).collect();
        write!(f, "({})", c.join(", "))
    }
}

pub fn apply_phi(p: &AffinePoint4) -> Result<AffinePoint4> {
    Ok(AffinePoint4::new(phi_step(&p.x, &p.h)?, p.h.clone()))
}

pub fn apply_phi_inverse(p: &AffinePoint4) -> Result<AffinePoint4> {
    Ok(AffinePoint4::new(phi_inverse_step(&p.x, &p.h)?, p.h.clone()))
}

pub fn eval_invariants(p: &AffinePoint4) -> (Q, Q) {
    invariants_at(&p.x, &p.h)
}

pub fn apply_psi(p: &[Q; 3], h: &Q, i2_value: &Q) -> Result<[Q; 3]> {
    psi_step(p, h, i2_value)
}

/// Ambient compactification a map or germ is considered on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "P1^4")]
    P1Four,
    #[serde(rename = "P2xP2")]
    P2P2,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::P1Four => "(P1)^4",
            Ambient::P2P2 => "P2xP2",
        })
    }
}

/// A rational map given by one rational function per target coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapDef {
    pub name: String,
    pub vars: Vars,
    /// Names of the coordinates the components define, in order.
    pub targets: Vec<String>,
    pub components: Vec<RationalFn>,
    pub ambient: Ambient,
}

impl RationalMapDef {
    fn from_text(name: &str, vs: Vars, targets: &[&str], comps: &[&str], ambient: Ambient) -> Self {
        RationalMapDef {
            name: name.into(),
            targets: targets.iter().map(|s| s.to_string()).collect(),
            components: comps
                .iter()
                .map(|c| parse_rational_fn(c, &vs).expect("static map"))
                .collect(),
            vars: vs,
            ambient,
        }
    }

    pub fn phi() -> Self {
        Self::from_text(
            "phi",
            phi_vars(),
            &["x0", "x1", "x2", "x3"],
            &[
                "x2",
                "x3",
                "-x2 - x0 + h*x2/(1 - x2)",
                "-x1 - x3 + (2 - x2 + h*x3)/(1 - x2)^2",
            ],
            Ambient::P2P2,
        )
    }

    pub fn phi_inverse() -> Self {
        Self::from_text(
            "phi_inverse",
            phi_vars(),
            &["x0", "x1", "x2", "x3"],
            &[
                "-x2 - x0 + h*x0/(1 - x0)",
                "-x1 - x3 + (2 - x0 + h*x1)/(1 - x0)^2",
                "x0",
                "x1",
            ],
            Ambient::P2P2,
        )
    }

    pub fn psi() -> Self {
        Self::from_text(
            "psi",
            psi_vars(),
            &["x0", "x1", "x2"],
            &[
                "x2",
                "(c - (x0^2 + x0*x2 + x2^2) - 2*h*(x0 - x0*x1 + x2) - h*x1*x2*(2*x0 + x2 - 1 + h)) \
                 / (h*(-x0 + h*x0 + x0^2 - 2*x2 + 2*x0*x2))",
                "-x2 - x0 + h*x2/(1 - x2)",
            ],
            Ambient::P2P2,
        )
    }

    fn bindings(&self) -> Vec<(&str, &RationalFn)> {
        self.targets
            .iter()
            .map(|s| s.as_str())
            .zip(self.components.iter())
            .collect()
    }

    /// `self ∘ inner`, both over the same variable list.
    pub fn compose(&self, inner: &RationalMapDef) -> Result<RationalMapDef> {
        let b = inner.bindings();
        let components = self
            .components
            .iter()
            .map(|c| substitute(c, &b, &inner.vars).map_err(CoreError::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMapDef {
            name: format!("{}∘{}", self.name, inner.name),
            vars: inner.vars.clone(),
            targets: self.targets.clone(),
            components,
            ambient: self.ambient,
        })
    }

    /// `true` when every component reduces to its own target coordinate.
    pub fn is_identity(&self) -> Result<bool> {
        for (t, c) in self.targets.iter().zip(&self.components) {
            let v = RationalFn::from_poly(MultiPoly::var(&self.vars, t)?);
            if !c.equals(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical text: variables, then one `target = num / den` line per component.
    pub fn to_text(&self) -> String {
        let mut s = format!("map {}\nvariables {}\nambient {}\n", self.name, self.vars.join(" "), self.ambient);
        for (t, c) in self.targets.iter().zip(&self.components) {
            s.push_str(&format!("{t}' = ({}) / ({})\n", c.num, c.den));
        }
        s
    }
}

/// `true` iff `inv ∘ map − inv` vanishes identically (exact, no sampling).
pub fn check_invariant_identity(map: &RationalMapDef, inv: &MultiPoly) -> Result<bool> {
    let inv = RationalFn::from_poly(inv.align(&map.vars)?);
    let pulled = substitute(&inv, &map.bindings(), &map.vars)?;
    Ok(pulled.equals(&inv)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use skdv_algebra::{q, qi};

    fn pt(a: [i64; 4], h: i64) -> AffinePoint4 {
        AffinePoint4::new(a.map(qi), qi(h))
    }

    #[test]
    fn phi_examples() {
        assert_eq!(apply_phi(&pt([0, 0, 2, 0], 1)).unwrap(), pt([2, 0, -4, 0], 1));
        assert_eq!(apply_phi(&pt([0, 0, 0, 0], 7)).unwrap(), pt([0, 0, 0, 2], 7));
        assert!(matches!(apply_phi(&pt([0, 0, 1, 0], 1)), Err(CoreError::Pole(_))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(apply_phi_inverse(&pt([2, 0, -4, 0], 1)).unwrap(), pt([0, 0, 2, 0], 1));
        assert_eq!(apply_phi_inverse(&pt([0, 0, 0, 2], 5)).unwrap(), pt([0, 0, 0, 0], 5));
        assert!(apply_phi_inverse(&pt([1, 0, 0, 0], 1)).is_err());
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(eval_invariants(&pt([0, 0, 2, 0], 1)), (qi(-4), qi(8)));
        assert_eq!(eval_invariants(&pt([2, 0, -4, 0], 1)), (qi(-4), qi(8)));
        let p = AffinePoint4::new([q(3, 2), qi(-7), q(5, 9), qi(4)], qi(0));
        assert_eq!(eval_invariants(&p).0, qi(0));
        assert_eq!(i1_poly().num_terms(), 6);
        assert_eq!(i2_poly().num_terms(), 15);
    }

    #[test]
    fn identities() {
        let phi = RationalMapDef::phi();
        assert!(check_invariant_identity(&phi, i1_poly()).unwrap());
        assert!(check_invariant_identity(&phi, i2_poly()).unwrap());
        let x0 = MultiPoly::var(&phi_vars(), "x0").unwrap();
        assert!(!check_invariant_identity(&phi, &x0).unwrap());
        assert!(RationalMapDef::phi_inverse().compose(&phi).unwrap().is_identity().unwrap());
        assert!(phi.compose(&RationalMapDef::phi_inverse()).unwrap().is_identity().unwrap());
    }

    #[test]
    fn psi_pole() {
        assert!(apply_psi(&[qi(0), qi(0), qi(1)], &qi(1), &qi(3)).is_err());
        assert!(apply_psi(&[qi(0), qi(0), qi(0)], &qi(1), &qi(3)).is_err());
    }
}
