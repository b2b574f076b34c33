//! Serde helpers for the JSON exchange formats. Every integer is written as a
//! decimal string so arbitrarily large coordinates survive any JSON reader.

/// `#[serde(with = "decimal")]` for any `Display + FromStr` integer type.
pub mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(deserializer: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A translation vector written as `{"dx": "...", "dy": "..."}`.
pub mod displacement {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::lattice::VertexCoord;
    use num_bigint::BigInt;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        #[serde(with = "super::decimal")]
        dx: BigInt,
        #[serde(with = "super::decimal")]
        dy: BigInt,
    }

    pub fn serialize<S: Serializer>(v: &VertexCoord, serializer: S) -> Result<S::Ok, S::Error> {
        Repr { dx: v.x.clone(), dy: v.y.clone() }.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<VertexCoord, D::Error> {
        let r = Repr::deserialize(deserializer)?;
        Ok(VertexCoord { x: r.dx, y: r.dy })
    }
}
