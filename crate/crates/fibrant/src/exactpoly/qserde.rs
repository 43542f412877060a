//! Serde adapters writing rationals as strings (`"-7/4"`), for use with
//! `#[serde(with = "...")]`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rational_to_string, Rational};

/// String form of a single rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Q(q.clone()).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    Ok(Q::deserialize(d)?.0)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.clone().map(Q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<Q>::deserialize(d)?.map(|q| q.0))
    }
}

pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<(Q, Q)> = v.iter().map(|(a, b)| (Q(a.clone()), Q(b.clone()))).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Rational, Rational)>, D::Error> {
        Ok(Vec::<(Q, Q)>::deserialize(d)?.into_iter().map(|(a, b)| (a.0, b.0)).collect())
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Q> = v.iter().cloned().map(Q).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<Q>::deserialize(d)?.into_iter().map(|q| q.0).collect())
    }
}

pub mod named_option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<(String, Rational)>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|(n, q)| (n.clone(), Q(q.clone()))).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(String, Rational)>, D::Error> {
        Ok(Option::<(String, Q)>::deserialize(d)?.map(|(n, q)| (n, q.0)))
    }
}

pub mod point3 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational; 3], s: S) -> Result<S::Ok, S::Error> {
        let w: [Q; 3] = v.clone().map(Q);
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 3], D::Error> {
        Ok(<[Q; 3]>::deserialize(d)?.map(|q| q.0))
    }
}

pub mod option_point3 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<[Rational; 3]>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(|p| p.map(Q)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<[Rational; 3]>, D::Error> {
        Ok(Option::<[Q; 3]>::deserialize(d)?.map(|p| p.map(|q| q.0)))
    }
}
