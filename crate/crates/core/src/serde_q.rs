//! Serde helpers writing rationals as `"p/q"` strings.

use serde::{de::Error, Deserialize, Deserializer, Serializer};
use skdv_algebra::{fmt_rational, parse_rational, Q};

fn parse<'de, D: Deserializer<'de>>(s: &str) -> Result<Q, D::Error> {
    parse_rational(s).ok_or_else(|| D::Error::custom(format!("invalid rational `{s}`")))
}

pub mod single {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        parse::<D>(&String::deserialize(d)?)
    }
}

pub mod array4 {
    use super::*;

    pub fn serialize<S: Serializer>(q: &[Q; 4], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(q.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Q; 4], D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 4 {
            return Err(D::Error::custom("expected 4 coordinates"));
        }
        let mut out: [Q; 4] = Default::default();
        for (o, s) in out.iter_mut().zip(&v) {
            *o = parse::<D>(s)?;
        }
        Ok(out)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(q: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(q.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse::<D>(s))
            .collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&fmt_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| parse::<D>(&s)).transpose()
    }
}
