//! Serde helpers for unbounded integers: plain JSON numbers while they fit in
//! 64 bits, decimal strings beyond.

pub mod vec {
    use alloc::string::{String, ToString};
    use alloc::vec::Vec;
    use core::fmt::Display;
    use core::str::FromStr;
    use serde::ser::SerializeSeq;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Signed(i64),
        Unsigned(u64),
        Text(String),
    }

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            let text = x.to_string();
            match text.parse::<i64>() {
                Ok(n) => seq.serialize_element(&n)?,
                Err(_) => seq.serialize_element(&text)?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| {
                let text = match r {
                    Repr::Signed(n) => n.to_string(),
                    Repr::Unsigned(n) => n.to_string(),
                    Repr::Text(t) => t,
                };
                text.parse().map_err(|_| D::Error::custom("expected an integer"))
            })
            .collect()
    }
}
