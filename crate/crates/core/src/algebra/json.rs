//! JSON encoding of group algebra elements. Terms appear in canonical
//! window order and q-exponent keys in numeric order, so equal elements
//! always serialize to identical bytes.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{GroupKind, PackedWindow};

use super::element::{Coefficient, GroupAlgebraElement};
use super::qpoly::QPolynomial;
use super::rational::Rational;

/// Coefficient rings that know their JSON term representation.
pub trait JsonCoefficient: Coefficient {
    fn to_term(perm: Vec<i32>, c: &Self) -> TermJson;
    fn from_term(t: &TermJson) -> Result<Self>;
}

/// One term of the wire format. Exactly one of the coefficient fields is
/// present.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub perm: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeff_q: Option<QCoeffs>,
}

/// Exponent → coefficient map, written with keys in numeric order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QCoeffs(pub Vec<(u32, String)>);

impl Serialize for QCoeffs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in &self.0 {
            map.serialize_entry(&e.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QCoeffs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let e: u32 = k
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent {k:?}")))?;
            out.push((e, v));
        }
        out.sort_by_key(|(e, _)| *e);
        Ok(QCoeffs(out))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub group: String,
    pub n: usize,
    pub coeff_ring: String,
    pub terms: Vec<TermJson>,
}

impl JsonCoefficient for Rational {
    fn to_term(perm: Vec<i32>, c: &Self) -> TermJson {
        TermJson {
            perm,
            coeff: Some(c.to_string()),
            coeff_q: None,
        }
    }

    fn from_term(t: &TermJson) -> Result<Self> {
        match (&t.coeff, &t.coeff_q) {
            (Some(c), None) => c.parse(),
            _ => Err(Error::Parse(
                "rational term needs exactly a \"coeff\" field".into(),
            )),
        }
    }
}

impl JsonCoefficient for QPolynomial {
    fn to_term(perm: Vec<i32>, c: &Self) -> TermJson {
        TermJson {
            perm,
            coeff: None,
            coeff_q: Some(QCoeffs(
                c.terms().map(|(e, v)| (e, v.to_string())).collect(),
            )),
        }
    }

    fn from_term(t: &TermJson) -> Result<Self> {
        match (&t.coeff, &t.coeff_q) {
            (None, Some(q)) => {
                let mut map = BTreeMap::new();
                for (e, c) in &q.0 {
                    map.insert(*e, c.parse::<Rational>()?);
                }
                Ok(QPolynomial::from_map(map))
            }
            _ => Err(Error::Parse(
                "qpoly term needs exactly a \"coeff_q\" field".into(),
            )),
        }
    }
}

impl<C: JsonCoefficient> GroupAlgebraElement<C> {
    pub fn to_json_value(&self) -> ElementJson {
        ElementJson {
            group: self.kind().to_string(),
            n: self.n(),
            coeff_ring: C::RING.to_string(),
            terms: self
                .terms()
                .map(|(w, c)| C::to_term(w.to_vec(), c))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("element JSON is always serializable")
    }

    pub fn from_json_value(v: &ElementJson) -> Result<Self> {
        if v.coeff_ring != C::RING {
            return Err(Error::GroupMismatch {
                left: C::RING.into(),
                right: v.coeff_ring.clone(),
            });
        }
        let kind: GroupKind = v.group.parse()?;
        let terms = v
            .terms
            .iter()
            .map(|t| Ok((PackedWindow::from_signed(&t.perm)?, C::from_term(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(kind, v.n, terms)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_and_layout() {
        let e = GroupAlgebraElement::from_terms(
            GroupKind::B,
            1,
            [
                (
                    PackedWindow::from_signed(&[1]).unwrap(),
                    Rational::from_int(2),
                ),
                (
                    PackedWindow::from_signed(&[-1]).unwrap(),
                    Rational::new(-1, 3),
                ),
            ],
        )
        .unwrap();
        let s = e.to_json();
        assert_eq!(
            s,
            r#"{"group":"B","n":1,"coeff_ring":"rational","terms":[{"perm":[-1],"coeff":"-1/3"},{"perm":[1],"coeff":"2/1"}]}"#
        );
        assert_eq!(GroupAlgebraElement::<Rational>::from_json(&s).unwrap(), e);
        assert!(GroupAlgebraElement::<QPolynomial>::from_json(&s).is_err());
    }

    #[test]
    fn qpoly_exponents_are_numeric_order() {
        let p = &QPolynomial::q_pow(10) + &QPolynomial::from_ints([0, 0, 3]);
        let e = GroupAlgebraElement::from_terms(GroupKind::A, 1, [(PackedWindow::identity(1), p)])
            .unwrap();
        let s = e.to_json();
        assert!(s.contains(r#""coeff_q":{"2":"3/1","10":"1/1"}"#), "{s}");
        assert_eq!(
            GroupAlgebraElement::<QPolynomial>::from_json(&s).unwrap(),
            e
        );
    }

    #[test]
    fn rejects_foreign_windows() {
        let s = r#"{"group":"A","n":2,"coeff_ring":"rational","terms":[{"perm":[-1,2],"coeff":"1/1"}]}"#;
        assert!(GroupAlgebraElement::<Rational>::from_json(s).is_err());
        let s =
            r#"{"group":"A","n":2,"coeff_ring":"rational","terms":[{"perm":[1,1],"coeff":"1/1"}]}"#;
        assert!(GroupAlgebraElement::<Rational>::from_json(s).is_err());
    }
}
