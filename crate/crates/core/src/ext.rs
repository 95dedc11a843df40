//! JSON (de)serialization helpers for extended reals.
//!
//! Infinite magnitudes are first-class values in several reports (face
//! diameters, `B*`, level-set maxima), and JSON has no literal for them,
//! so they are written as the explicit sentinels `"+inf"` / `"-inf"`.

use serde::de::{self, Deserializer, Unexpected};
use serde::ser::Serializer;
use serde::Deserialize;

/// Field attribute module: `#[serde(with = "crate::ext::xf64")]`.
pub mod xf64 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_nan() {
            return Err(serde::ser::Error::custom("NaN is not serializable"));
        }
        if *v == f64::INFINITY {
            s.serialize_str("+inf")
        } else if *v == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Str(s) => match s.as_str() {
                "+inf" | "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(de::Error::invalid_value(
                    Unexpected::Str(other),
                    &"a number, \"+inf\" or \"-inf\"",
                )),
            },
        }
    }
}

/// Same as [`xf64`] but for `Option<f64>`, where `None` means
/// "not applicable" and serializes to `null`.
pub mod xf64_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(x) => xf64::serialize(x, s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Null,
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Null => Ok(None),
            Raw::Num(v) => Ok(Some(v)),
            Raw::Str(s) => match s.as_str() {
                "+inf" | "inf" => Ok(Some(f64::INFINITY)),
                "-inf" => Ok(Some(f64::NEG_INFINITY)),
                other => Err(de::Error::invalid_value(
                    Unexpected::Str(other),
                    &"a number, \"+inf\", \"-inf\" or null",
                )),
            },
        }
    }
}
