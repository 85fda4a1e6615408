//! Divisor classes in the rank-19 lattice with basis `H_a, H_b, E1..E17`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use skdv_core::CoreError;

pub const RANK: usize = 19;
pub const NUM_E: usize = 17;

/// Basis labels in lattice order.
pub fn basis_names() -> Vec<String> {
    let mut v = vec!["Ha".to_string(), "Hb".to_string()];
    v.extend((1..=NUM_E).map(|i| format!("E{i}")));
    v
}

/// Integer coefficient vector over `(H_a, H_b, E1, ..., E17)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DivisorClass(pub [i64; RANK]);

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass([0; RANK])
    }

    pub fn ha() -> Self {
        Self::unit(0)
    }

    pub fn hb() -> Self {
        Self::unit(1)
    }

    /// Total transform `E_i`, `i` in `1..=17`.
    pub fn e(i: usize) -> Self {
        assert!((1..=NUM_E).contains(&i), "exceptional index out of range");
        Self::unit(i + 1)
    }

    pub fn unit(k: usize) -> Self {
        let mut c = [0; RANK];
        c[k] = 1;
        DivisorClass(c)
    }

    pub fn h_part(&self) -> (i64, i64) {
        (self.0[0], self.0[1])
    }

    /// Coefficient of `E_i`.
    pub fn e_coeff(&self, i: usize) -> i64 {
        self.0[i + 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Grouped text, e.g. `Ha + 3Hb - 2E1 - 3E11 - E{6,7,9}`.
    pub fn grouped(&self) -> String {
        let names = basis_names();
        let mut parts: Vec<(i64, String)> = Vec::new();
        for k in 0..2 {
            if self.0[k] != 0 {
                parts.push((self.0[k], names[k].clone()));
            }
        }
        let mut coeffs: Vec<i64> = (1..=NUM_E).map(|i| self.e_coeff(i)).filter(|&c| c != 0).collect();
        coeffs.sort_unstable();
        coeffs.dedup();
        coeffs.sort_by_key(|&c| (1..=NUM_E).find(|&i| self.e_coeff(i) == c));
        for c in coeffs {
            let idx: Vec<usize> = (1..=NUM_E).filter(|&i| self.e_coeff(i) == c).collect();
            if idx.len() == 1 {
                parts.push((c, format!("E{}", idx[0])));
            } else {
                let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                parts.push((c, format!("E{{{}}}", list.join(","))));
            }
        }
        join_terms(&parts)
    }
}

fn join_terms(parts: &[(i64, String)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (c, name)) in parts.iter().enumerate() {
        let a = c.abs();
        let body = if a == 1 { name.clone() } else { format!("{a}{name}") };
        match (n == 0, *c < 0) {
            (true, false) => s.push_str(&body),
            (true, true) => s.push_str(&format!("-{body}")),
            (false, false) => s.push_str(&format!(" + {body}")),
            (false, true) => s.push_str(&format!(" - {body}")),
        }
    }
    s
}

impl fmt::Display for DivisorClass {
    /// One term per basis element in lattice order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = basis_names();
        let parts: Vec<(i64, String)> = self
            .0
            .iter()
            .zip(names)
            .filter(|(c, _)| **c != 0)
            .map(|(c, n)| (*c, n))
            .collect();
        f.write_str(&join_terms(&parts))
    }
}

impl FromStr for DivisorClass {
    type Err = CoreError;

    /// Accepts `Ha`, `Hb`, `H_a`, `Ei`, `E_i`, `E{i,j,..}` and `E_{i,j}` with
    /// integer multipliers, e.g. `Hb - E{1,7,9,11} + E8`.
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let bad = || CoreError::Invalid(format!("cannot parse divisor class `{s}`"));
        let text: String = s
            .chars()
            .map(|c| if c == '−' { '-' } else { c })
            .filter(|c| !c.is_whitespace() && *c != '_')
            .collect();
        let mut out = DivisorClass::zero();
        if text == "0" {
            return Ok(out);
        }
        let bytes: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad());
            }
            let st = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mult: i64 = if st == i {
                1
            } else {
                bytes[st..i].iter().collect::<String>().parse().map_err(|_| bad())?
            };
            let k = sign * mult;
            match bytes.get(i) {
                Some('H') => {
                    match bytes.get(i + 1) {
                        Some('a') => out.0[0] += k,
                        Some('b') => out.0[1] += k,
                        _ => return Err(bad()),
                    }
                    i += 2;
                }
                Some('E') => {
                    i += 1;
                    let idx: Vec<usize> = if bytes.get(i) == Some(&'{') {
                        let close = bytes[i..].iter().position(|&c| c == '}').ok_or_else(bad)? + i;
                        let inner: String = bytes[i + 1..close].iter().collect();
                        i = close + 1;
                        inner
                            .split(',')
                            .map(|t| t.parse().map_err(|_| bad()))
                            .collect::<Result<_, _>>()?
                    } else {
                        let st = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        vec![bytes[st..i].iter().collect::<String>().parse().map_err(|_| bad())?]
                    };
                    for j in idx {
                        if !(1..=NUM_E).contains(&j) {
                            return Err(bad());
                        }
                        out.0[j + 1] += k;
                    }
                }
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }
}

impl Add for DivisorClass {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.0.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, mut c: DivisorClass) -> DivisorClass {
        for a in c.0.iter_mut() {
            *a *= self;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grouped_and_print() {
        let c: DivisorClass = "Ha + 3Hb - 2E1 - 3E_{11} - E_{6,7,9,10,12,13,14}".parse().unwrap();
        assert_eq!(c.h_part(), (1, 3));
        assert_eq!(c.e_coeff(11), -3);
        assert_eq!(c.e_coeff(8), 0);
        assert_eq!(c.grouped(), "Ha + 3Hb - 2E1 - E{6,7,9,10,12,13,14} - 3E11");
        let back: DivisorClass = c.grouped().parse().unwrap();
        assert_eq!(back, c);
        let d: DivisorClass = c.to_string().parse().unwrap();
        assert_eq!(d, c);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("Hc".parse::<DivisorClass>().is_err());
        assert!("E18".parse::<DivisorClass>().is_err());
        assert!("E1 E2".parse::<DivisorClass>().is_err());
        assert_eq!("0".parse::<DivisorClass>().unwrap(), DivisorClass::zero());
    }
}
