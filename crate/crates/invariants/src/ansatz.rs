//! Monomial ansätze and class constraints.

use serde::Serialize;

use skdv_algebra::{Field, MultiPoly};
use skdv_core::dynamics::phi_vars;
use skdv_core::{CoreError, Result};
use skdv_tower::{DivisorClass, NUM_E};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzKind {
    /// `i0 + i1 <= 2` and `i2 + i3 <= 2`: all of `|2H_a + 2H_b|`.
    Bidegree,
    /// `i0 + i1 + i2 + i3 <= 2`.
    TotalDegree,
}

/// Monomials `x0^i0 x1^i1 x2^i2 x3^i3` with unknown coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ansatz {
    pub kind: AnsatzKind,
    pub monomials: Vec<[u32; 4]>,
}

impl Ansatz {
    pub fn bidegree() -> Self {
        let mut m = Vec::new();
        for i0 in 0..=2 {
            for i1 in 0..=2 - i0 {
                for i2 in 0..=2 {
                    for i3 in 0..=2 - i2 {
                        m.push([i0, i1, i2, i3]);
                    }
                }
            }
        }
        Ansatz { kind: AnsatzKind::Bidegree, monomials: m }
    }

    pub fn total_degree() -> Self {
        let m = Self::bidegree().monomials.into_iter().filter(|e| e.iter().sum::<u32>() <= 2).collect();
        Ansatz { kind: AnsatzKind::TotalDegree, monomials: m }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial_name(&self, j: usize) -> String {
        let parts: Vec<String> = self.monomials[j]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Coefficient vector of a polynomial in `x0..x3, h`, evaluated at the
    /// given value of `h`.
    pub fn vector<K: Field>(&self, p: &MultiPoly, h: &K) -> Result<Vec<K>> {
        let p = p.align(&phi_vars())?;
        let mut v = vec![K::zero(); self.len()];
        for (e, c) in p.terms() {
            let key = [e[0], e[1], e[2], e[3]];
            let j = self
                .monomials
                .iter()
                .position(|m| *m == key)
                .ok_or_else(|| CoreError::Invalid(format!("monomial {key:?} is outside the ansatz")))?;
            v[j] = v[j].add(&K::from_rational(c).mul(&h.pow(e[4])));
        }
        Ok(v)
    }

    /// `Σ v_j m_j` as text.
    pub fn render<K: Field>(&self, v: &[K]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let m = self.monomial_name(j);
                let c = format!("{c}");
                match (c.as_str(), m.as_str()) {
                    (_, "1") => format!("({c})"),
                    ("1", _) => m,
                    _ => format!("({c})*{m}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Required orders of vanishing along `E_1..E_17` for a target class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassConstraint {
    pub class: String,
    pub bidegree: (u32, u32),
    pub mults: Vec<i64>,
}

impl ClassConstraint {
    /// Solves `class = a H_a + b H_b − Σ ν_j [F_j]` for `ν`, with `[F_j]`
    /// the proper-transform classes of the exceptional divisors (index 0
    /// unused). Their `E`-parts are unitriangular, so `ν` is unique.
    pub fn from_class(class: &DivisorClass, fcl: &[DivisorClass]) -> Result<Self> {
        let (a, b) = class.h_part();
        if a < 0 || b < 0 {
            return Err(CoreError::Invalid(format!("{} has negative H part", class.grouped())));
        }
        let mut nu = vec![0i64; NUM_E];
        for j in 1..=NUM_E {
            let mut acc = -class.e_coeff(j);
            for i in 1..j {
                acc -= nu[i - 1] * fcl[i].e_coeff(j);
            }
            if fcl[j].e_coeff(j) != 1 {
                return Err(CoreError::Consistency(format!("[F{j}] does not contain E{j} once")));
            }
            nu[j - 1] = acc;
        }
        if let Some(j) = nu.iter().position(|&m| m < 0) {
            return Err(CoreError::Invalid(format!(
                "{} asks for a negative order {} along E{}",
                class.grouped(),
                nu[j],
                j + 1
            )));
        }
        Ok(ClassConstraint { class: class.grouped(), bidegree: (a as u32, b as u32), mults: nu })
    }

    /// All multiplicities zero.
    pub fn unconstrained(bidegree: (u32, u32)) -> Self {
        let class = bidegree.0 as i64 * DivisorClass::ha() + bidegree.1 as i64 * DivisorClass::hb();
        ClassConstraint { class: class.grouped(), bidegree, mults: vec![0; NUM_E] }
    }

    /// Every multiplicity raised by `k`.
    pub fn raised(&self, k: i64) -> Self {
        ClassConstraint {
            class: format!("({}) with orders raised by {k}", self.class),
            bidegree: self.bidegree,
            mults: self.mults.iter().map(|m| m + k).collect(),
        }
    }
}

/// Proper transform class of the `I₁` pencil members.
pub fn i1_class() -> DivisorClass {
    "2Ha + 2Hb - 2E1 - 2E6 - 4E11 - E{2,4,7,9,12,13,14,16}".parse().expect("static class")
}

/// Proper transform class of the generic `I₂` level sets.
pub fn i2_class() -> DivisorClass {
    "2Ha + 2Hb - 3E11 - E{1,2,4,5,6,7,9,10,12,13,14,16,17}".parse().expect("static class")
}
