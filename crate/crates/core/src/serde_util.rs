//! Serde adapters: rationals as `"p/q"` strings, big integers as JSON numbers
//! when they fit and as decimal strings otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&rational_to_string(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

pub fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    if let Some(v) = n.to_i64() {
        s.serialize_i64(v)
    } else {
        s.serialize_str(&n.to_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    I(i64),
    U(u64),
    S(String),
}

pub fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    match IntRepr::deserialize(d)? {
        IntRepr::I(v) => Ok(v.into()),
        IntRepr::U(v) => Ok(v.into()),
        IntRepr::S(s) => s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
    }
}

pub mod bigint {
    pub use super::deserialize_bigint as deserialize;
    pub use super::serialize_bigint as serialize;
}

pub mod bigint_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    struct W<'a>(&'a BigInt);
    impl serde::Serialize for W<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_bigint(self.0, s)
        }
    }

    struct R(BigInt);
    impl<'de> Deserialize<'de> for R {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            deserialize_bigint(d).map(R)
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&W(n))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<R>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

pub mod opt_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => serialize_bigint(n, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<IntRepr>::deserialize(d)? {
            None => Ok(None),
            Some(IntRepr::I(v)) => Ok(Some(v.into())),
            Some(IntRepr::U(v)) => Ok(Some(v.into())),
            Some(IntRepr::S(s)) => s.parse().map(Some).map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
        }
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&rational_to_string(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => parse_rational(&s).map(Some).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}
