//! Chat completion: request construction, providers, code extraction.

mod cassette;
mod http;
mod mock;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use cassette::{Cassette, CassetteEntry, Recorder};
pub use http::{HttpProvider, LLM_KEY_ENV};
pub use mock::MockProvider;

use crate::constructor::PromptDocument;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompleteError {
    #[error("transport error after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("the model returned no code")]
    EmptyCompletion,
    #[error("authentication rejected: {0}")]
    Auth(String),
    #[error("unexpected response: {0}")]
    BadResponse(String),
    #[error("no cassette entry for request {0}")]
    CassetteMiss(String),
    #[error("cassette {path}: {message}")]
    Cassette { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    pub endpoint: String,
    pub model_name: String,
    pub max_output_tokens: u32,
    pub temperature: f64,
    pub top_p: f64,
    #[serde(with = "secs")]
    pub request_timeout: Duration,
    pub retries: u32,
    /// First backoff delay; doubled on each further attempt.
    #[serde(with = "secs")]
    pub backoff: Duration,
    pub samples: u32,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            endpoint: String::new(),
            model_name: "mock".into(),
            max_output_tokens: 4096,
            temperature: 0.0,
            top_p: 0.2,
            request_timeout: Duration::from_secs(120),
            retries: 2,
            backoff: Duration::from_millis(500),
            samples: 1,
        }
    }
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

/// Field order here is the wire order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub top_p: f64,
    pub max_tokens: u32,
}

impl ChatRequest {
    pub fn new(prompt: &PromptDocument, cfg: &ModelConfig) -> Self {
        ChatRequest {
            model: cfg.model_name.clone(),
            messages: vec![
                ChatMessage { role: "system".into(), content: prompt.system_text.clone() },
                ChatMessage { role: "user".into(), content: prompt.user_text.clone() },
            ],
            temperature: cfg.temperature,
            top_p: cfg.top_p,
            max_tokens: cfg.max_output_tokens,
        }
    }

    pub fn body(&self) -> String {
        serde_json::to_string(self).expect("request serializes")
    }

    pub fn message(&self, role: &str) -> Option<&str> {
        self.messages.iter().find(|m| m.role == role).map(|m| m.content.as_str())
    }
}

/// sha256 of the request body, hex.
pub fn request_hash(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub trait ChatProvider: Send + Sync {
    fn name(&self) -> &str;
    /// One attempt. `Transport` errors are retried by the caller.
    fn send(&self, request: &ChatRequest, body: &str) -> Result<String, CompleteError>;
}

/// Always answers with the same text.
#[derive(Debug, Clone)]
pub struct CannedProvider(pub String);

impl ChatProvider for CannedProvider {
    fn name(&self) -> &str {
        "canned"
    }

    fn send(&self, _: &ChatRequest, _: &str) -> Result<String, CompleteError> {
        Ok(self.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedCode {
    pub raw_response: String,
    pub code: String,
    pub model_name: String,
    pub latency: Duration,
}

fn is_fence(line: &str) -> bool {
    line.trim_start().starts_with("```")
}

/// Interior of the first fenced block, or the whole response when there is
/// none. An unterminated fence runs to the end of the text.
pub fn extract_code(response: &str) -> String {
    let lines: Vec<&str> = response.split('\n').collect();
    let Some(open) = lines.iter().position(|l| is_fence(l)) else {
        return response.trim().to_string();
    };
    let rest = &lines[open + 1..];
    let end = rest.iter().position(|l| is_fence(l)).unwrap_or(rest.len());
    rest[..end].join("\n")
}

pub fn complete(prompt: &PromptDocument, cfg: &ModelConfig, provider: &dyn ChatProvider) -> Result<GeneratedCode, CompleteError> {
    let request = ChatRequest::new(prompt, cfg);
    let body = request.body();
    let start = Instant::now();
    let mut attempt = 0;
    let raw = loop {
        attempt += 1;
        match provider.send(&request, &body) {
            Ok(text) => break text,
            Err(CompleteError::Transport { message, .. }) if attempt > cfg.retries => {
                return Err(CompleteError::Transport { attempts: attempt, message });
            }
            Err(CompleteError::Transport { message, .. }) => {
                log::warn!("attempt {attempt} failed: {message}");
                std::thread::sleep(cfg.backoff * 2u32.pow(attempt - 1));
            }
            Err(e) => return Err(e),
        }
    };
    let code = extract_code(&raw);
    if code.trim().is_empty() {
        return Err(CompleteError::EmptyCompletion);
    }
    Ok(GeneratedCode { raw_response: raw, code, model_name: cfg.model_name.clone(), latency: start.elapsed() })
}

/// `cfg.samples` independent completions of the same prompt.
pub fn complete_samples(prompt: &PromptDocument, cfg: &ModelConfig, provider: &dyn ChatProvider) -> Result<Vec<GeneratedCode>, CompleteError> {
    (0..cfg.samples.max(1)).map(|_| complete(prompt, cfg, provider)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicU32, Ordering};

    fn prompt() -> PromptDocument {
        PromptDocument { system_text: "sys".into(), user_text: "usr".into(), token_estimate: 2, rules: vec![] }
    }

    #[test]
    fn default_body() {
        let body = ChatRequest::new(&prompt(), &ModelConfig::default()).body();
        assert_eq!(
            body,
            r#"{"model":"mock","messages":[{"role":"system","content":"sys"},{"role":"user","content":"usr"}],"temperature":0.0,"top_p":0.2,"max_tokens":4096}"#
        );
        assert_eq!(body, ChatRequest::new(&prompt(), &ModelConfig::default()).body());
        assert_eq!(request_hash(&body).len(), 64);
    }

    #[test]
    fn config_defaults_from_empty_json() {
        let cfg: ModelConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, ModelConfig::default());
        assert_eq!((cfg.temperature, cfg.top_p, cfg.max_output_tokens, cfg.retries, cfg.samples), (0.0, 0.2, 4096, 2, 1));
    }

    #[test]
    fn extraction() {
        assert_eq!(extract_code("```java\nint a = 1;\nreturn a;\n```"), "int a = 1;\nreturn a;");
        assert_eq!(extract_code("Here:\n```\nx();\n```\nand\n```\ny();\n```"), "x();");
        assert_eq!(extract_code("  plain();  \n"), "plain();");
        assert_eq!(extract_code("```java\nopen();"), "open();");
    }

    #[test]
    fn canned_is_deterministic() {
        let p = CannedProvider("```java\nreturn x;\n```".into());
        let a = complete(&prompt(), &ModelConfig::default(), &p).unwrap();
        assert_eq!(a.code, "return x;");
        assert_eq!(a.code, complete(&prompt(), &ModelConfig::default(), &p).unwrap().code);
        assert!(matches!(complete(&prompt(), &ModelConfig::default(), &CannedProvider("```\n\n```".into())), Err(CompleteError::EmptyCompletion)));
    }

    struct Flaky {
        calls: AtomicU32,
        fail_first: u32,
    }

    impl ChatProvider for Flaky {
        fn name(&self) -> &str {
            "flaky"
        }
        fn send(&self, _: &ChatRequest, _: &str) -> Result<String, CompleteError> {
            let n = self.calls.fetch_add(1, Ordering::SeqCst);
            if n < self.fail_first {
                Err(CompleteError::Transport { attempts: 1, message: "reset".into() })
            } else {
                Ok("ok();".into())
            }
        }
    }

    #[test]
    fn retries_then_gives_up() {
        let cfg = ModelConfig { backoff: Duration::ZERO, ..Default::default() };
        let p = Flaky { calls: AtomicU32::new(0), fail_first: 2 };
        assert_eq!(complete(&prompt(), &cfg, &p).unwrap().code, "ok();");
        assert_eq!(p.calls.load(Ordering::SeqCst), 3);
        let p = Flaky { calls: AtomicU32::new(0), fail_first: 10 };
        assert!(matches!(complete(&prompt(), &cfg, &p), Err(CompleteError::Transport { attempts: 3, .. })));
        assert_eq!(p.calls.load(Ordering::SeqCst), 3);
    }

    #[test]
    fn samples() {
        let cfg = ModelConfig { samples: 3, ..Default::default() };
        assert_eq!(complete_samples(&prompt(), &cfg, &CannedProvider("a();".into())).unwrap().len(), 3);
    }
}
