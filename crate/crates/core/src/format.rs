//! Versioned JSON input documents.
//!
//! ```json
//! {"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}}
//! ```
//!
//! Octonions are arrays of eight numbers in the basis order
//! `1, i, j, k, kl, jl, il, l`. Unknown fields are rejected.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::eigen2::Side;
use crate::error::{Error, Result};
use crate::linalg::{Hermitian2, Hermitian3, OctVector};
use crate::octonion::Octonion;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hermitian2,
    Hermitian3,
    Vector,
    Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairPayload {
    pub v: OctVector,
    pub lambda: Octonion,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Hermitian2(Hermitian2),
    Hermitian3(Hermitian3),
    Vector(OctVector),
    Pair(PairPayload),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub version: String,
    pub payload: Payload,
}

impl InputDocument {
    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Hermitian2(_) => Kind::Hermitian2,
            Payload::Hermitian3(_) => Kind::Hermitian3,
            Payload::Vector(_) => Kind::Vector,
            Payload::Pair(_) => Kind::Pair,
        }
    }
}

#[derive(Deserialize)]
struct Header {
    version: String,
    kind: Kind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document<T> {
    #[allow(dead_code)]
    version: String,
    #[allow(dead_code)]
    kind: Kind,
    payload: T,
}

fn strict<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            context: if path == "." { "document".into() } else { path },
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| Error::Parse {
        context: "document".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Strict parse of an input document.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        context: "document".into(),
        message: format!("invalid UTF-8: {e}"),
    })?;
    let header: Header = strict::<serde_json::Value>(text).and_then(|v| {
        serde_path_to_error::deserialize(v).map_err(|e| Error::Parse {
            context: e.path().to_string(),
            message: e.into_inner().to_string(),
        })
    })?;
    if header.version != FORMAT_VERSION {
        return Err(Error::VersionUnsupported(header.version));
    }
    let payload = match header.kind {
        Kind::Hermitian2 => Payload::Hermitian2(strict::<Document<Hermitian2>>(text)?.payload),
        Kind::Hermitian3 => Payload::Hermitian3(strict::<Document<Hermitian3>>(text)?.payload),
        Kind::Vector => Payload::Vector(strict::<Document<OctVector>>(text)?.payload),
        Kind::Pair => Payload::Pair(strict::<Document<PairPayload>>(text)?.payload),
    };
    Ok(InputDocument {
        version: header.version,
        payload,
    })
}

/// Renders a document in the input format.
pub fn to_json(doc: &InputDocument) -> String {
    let payload = match &doc.payload {
        Payload::Hermitian2(h) => serde_json::to_value(h),
        Payload::Hermitian3(h) => serde_json::to_value(h),
        Payload::Vector(v) => serde_json::to_value(v),
        Payload::Pair(p) => serde_json::to_value(p),
    }
    .expect("payloads serialize");
    serde_json::json!({"version": doc.version, "kind": doc.kind(), "payload": payload}).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Octonion {
        s.parse().unwrap()
    }

    #[test]
    fn hermitian2_document() {
        let doc = parse_input(
            br#"{"version": "1", "kind": "hermitian2",
                 "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}}"#,
        )
        .unwrap();
        assert_eq!(doc.payload, Payload::Hermitian2(Hermitian2::new(1.0, 1.0, o("-i"))));
        assert_eq!(parse_input(to_json(&doc).as_bytes()).unwrap(), doc);
    }

    #[test]
    fn vector_document() {
        let doc = parse_input(
            br#"{"version": "1", "kind": "vector",
                 "payload": [[0,0,1,0,0,0,0,0],[0,0,0,0,0,0,0,1]]}"#,
        )
        .unwrap();
        assert_eq!(doc.payload, Payload::Vector(OctVector::new(vec![o("j"), o("l")])));
    }

    #[test]
    fn pair_and_hermitian3_documents() {
        let doc = parse_input(
            br#"{"version":"1","kind":"pair","payload":{"v":[[0,0,1,0,0,0,0,0],[0,0,0,0,0,0,0,1]],
                "lambda":[1,0,0,0,1,0,0,0],"side":"right"}}"#,
        )
        .unwrap();
        assert_eq!(doc.kind(), Kind::Pair);
        let z = "[0,0,0,0,0,0,0,0]";
        let text = format!(
            r#"{{"version":"1","kind":"hermitian3","payload":{{"p":1,"m":2,"n":3,"a":{z},"b":{z},"c":{z}}}}}"#
        );
        assert_eq!(parse_input(text.as_bytes()).unwrap().kind(), Kind::Hermitian3);
    }

    #[test]
    fn short_octonion_is_rejected_with_context() {
        let err = parse_input(
            br#"{"version": "1", "kind": "hermitian2",
                 "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0]}}"#,
        )
        .unwrap_err();
        match err {
            Error::Parse { context, message } => {
                assert_eq!(context, "payload.a");
                assert!(message.contains("line 2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn strictness() {
        assert!(matches!(
            parse_input(br#"{"version":"2","kind":"vector","payload":[]}"#),
            Err(Error::VersionUnsupported(v)) if v == "2"
        ));
        assert!(parse_input(br#"{"version":"1","kind":"vector","payload":[],"extra":1}"#).is_err());
        assert!(parse_input(br#"{"version":"1","kind":"matrix","payload":[]}"#).is_err());
        assert!(parse_input(
            br#"{"version":"1","kind":"hermitian2","payload":{"p":1,"m":1,"a":[0,0,0,0,0,0,0,0],"q":2}}"#
        )
        .is_err());
        assert!(parse_input(br#"{"version":"1","kind":"vector","payload":[]} trailing"#).is_err());
        assert!(parse_input(b"\xff").is_err());
    }
}
