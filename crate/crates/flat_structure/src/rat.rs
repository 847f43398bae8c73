//! Rationals written as `"p/q"` strings.

use num_rational::Ratio;
use serde::{de::Error, Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i128>;

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    text.trim().parse().map_err(|_| D::Error::custom(format!("not a rational: {text}")))
}
