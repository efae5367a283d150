//! Serde adapters writing arbitrary-precision integers as decimal strings.

use num_bigint::BigInt;
use serde::de::Error;
use serde::{Deserialize, Deserializer, Serializer};

fn parse<E: Error>(s: &str) -> Result<BigInt, E> {
    s.parse().map_err(|_| E::custom(format!("invalid integer {s:?}")))
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse(&String::deserialize(d)?)
    }
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse(s)).collect()
    }
}

pub mod vec2 {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt; 2], s: S) -> Result<S::Ok, S::Error> {
        super::vec::serialize(xs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; 2], D::Error> {
        let v = super::vec::deserialize(d)?;
        <[BigInt; 2]>::try_from(v).map_err(|_| D::Error::custom("expected two integers"))
    }
}

pub mod mat2 {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(m: &[[BigInt; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        for row in m {
            seq.serialize_element(&[row[0].to_string(), row[1].to_string()])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[BigInt; 2]; 2], D::Error> {
        let rows = <[[String; 2]; 2]>::deserialize(d)?;
        Ok([
            [parse(&rows[0][0])?, parse(&rows[0][1])?],
            [parse(&rows[1][0])?, parse(&rows[1][1])?],
        ])
    }
}
