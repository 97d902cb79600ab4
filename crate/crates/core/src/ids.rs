//! JSON ids may be written as strings or integers; internally they are strings.

use serde::{Deserialize, Deserializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum IdRepr {
    Str(String),
    Int(i64),
}

impl From<IdRepr> for String {
    fn from(r: IdRepr) -> String {
        match r {
            IdRepr::Str(s) => s,
            IdRepr::Int(n) => n.to_string(),
        }
    }
}

pub fn id<'de, D: Deserializer<'de>>(de: D) -> Result<String, D::Error> {
    IdRepr::deserialize(de).map(String::from)
}

pub fn id_list<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<String>, D::Error> {
    Vec::<IdRepr>::deserialize(de).map(|v| v.into_iter().map(String::from).collect())
}
