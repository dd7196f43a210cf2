//! Exact integers as plain JSON numbers of any size.

pub(crate) mod bigint {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(|_| de::Error::custom(format!("expected an integer, found {n}")))
    }
}
