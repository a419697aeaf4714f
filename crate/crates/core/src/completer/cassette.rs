use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{request_hash, ChatProvider, ChatRequest, CompleteError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CassetteEntry {
    pub request_hash: String,
    pub response_text: String,
}

/// Recorded responses keyed by request hash.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cassette {
    pub entries: BTreeMap<String, String>,
}

impl Cassette {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let list: Vec<CassetteEntry> = serde_json::from_str(text)?;
        Ok(Cassette { entries: list.into_iter().map(|e| (e.request_hash, e.response_text)).collect() })
    }

    pub fn load(path: &Path) -> Result<Self, CompleteError> {
        let err = |message: String| CompleteError::Cassette { path: path.display().to_string(), message };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        Self::from_json(&text).map_err(|e| err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let list: Vec<CassetteEntry> = self.entries.iter().map(|(h, t)| CassetteEntry { request_hash: h.clone(), response_text: t.clone() }).collect();
        serde_json::to_string_pretty(&list).expect("cassette serializes")
    }

    pub fn save(&self, path: &Path) -> Result<(), CompleteError> {
        std::fs::write(path, self.to_json()).map_err(|e| CompleteError::Cassette { path: path.display().to_string(), message: e.to_string() })
    }
}

impl ChatProvider for Cassette {
    fn name(&self) -> &str {
        "replay"
    }

    fn send(&self, _: &ChatRequest, body: &str) -> Result<String, CompleteError> {
        let h = request_hash(body);
        self.entries.get(&h).cloned().ok_or(CompleteError::CassetteMiss(h))
    }
}

/// Passes requests through and keeps every successful response.
pub struct Recorder<'a> {
    pub inner: &'a dyn ChatProvider,
    pub tape: Mutex<Cassette>,
}

impl<'a> Recorder<'a> {
    pub fn new(inner: &'a dyn ChatProvider) -> Self {
        Recorder { inner, tape: Mutex::new(Cassette::default()) }
    }

    pub fn into_cassette(self) -> Cassette {
        self.tape.into_inner().unwrap_or_else(|p| p.into_inner())
    }
}

impl ChatProvider for Recorder<'_> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn send(&self, request: &ChatRequest, body: &str) -> Result<String, CompleteError> {
        let text = self.inner.send(request, body)?;
        self.tape.lock().unwrap_or_else(|p| p.into_inner()).entries.insert(request_hash(body), text.clone());
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completer::{complete, CannedProvider, ModelConfig};
    use crate::constructor::PromptDocument;

    #[test]
    fn record_then_replay() {
        let doc = PromptDocument { system_text: "s".into(), user_text: "u".into(), token_estimate: 2, rules: vec![] };
        let cfg = ModelConfig::default();
        let canned = CannedProvider("```java\nreturn r;\n```".into());
        let rec = Recorder::new(&canned);
        let live = complete(&doc, &cfg, &rec).unwrap();
        let tape = Cassette::from_json(&rec.into_cassette().to_json()).unwrap();
        let replayed = complete(&doc, &cfg, &tape).unwrap();
        assert_eq!(replayed.code, live.code);
        assert_eq!(replayed.raw_response, live.raw_response);

        let other = ModelConfig { top_p: 0.9, ..Default::default() };
        assert!(matches!(complete(&doc, &other, &tape), Err(CompleteError::CassetteMiss(_))));
    }

    #[test]
    fn wire_shape() {
        let t = Cassette::from_json(r#"[{"request_hash":"ab","response_text":"x"}]"#).unwrap();
        assert_eq!(t.entries["ab"], "x");
        assert!(t.to_json().contains("\"request_hash\": \"ab\""));
    }
}
