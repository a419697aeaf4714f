use std::time::Duration;

use serde::Deserialize;

use super::{ChatProvider, ChatRequest, CompleteError};

pub const LLM_KEY_ENV: &str = "CCCI_LLM_KEY";

/// OpenAI-style chat completions endpoint.
#[derive(Debug, Clone)]
pub struct HttpProvider {
    pub endpoint: String,
    pub timeout: Duration,
    pub api_key: Option<String>,
}

impl HttpProvider {
    pub fn new(endpoint: impl Into<String>, timeout: Duration) -> Self {
        HttpProvider { endpoint: endpoint.into(), timeout, api_key: std::env::var(LLM_KEY_ENV).ok() }
    }
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: Message,
}

#[derive(Deserialize)]
struct Message {
    content: Option<String>,
}

impl ChatProvider for HttpProvider {
    fn name(&self) -> &str {
        &self.endpoint
    }

    fn send(&self, _: &ChatRequest, body: &str) -> Result<String, CompleteError> {
        let agent = ureq::AgentBuilder::new().timeout(self.timeout).build();
        let mut req = agent.post(&self.endpoint).set("Content-Type", "application/json");
        if let Some(k) = &self.api_key {
            req = req.set("Authorization", &format!("Bearer {k}"));
        }
        let resp = match req.send_string(body) {
            Ok(r) => r,
            Err(ureq::Error::Status(code @ (401 | 403), r)) => {
                return Err(CompleteError::Auth(format!("{code} {}", r.into_string().unwrap_or_default())));
            }
            Err(ureq::Error::Status(code, r)) if code == 429 || code >= 500 => {
                return Err(CompleteError::Transport { attempts: 1, message: format!("{code} {}", r.status_text()) });
            }
            Err(ureq::Error::Status(code, r)) => {
                return Err(CompleteError::BadResponse(format!("{code} {}", r.into_string().unwrap_or_default())));
            }
            Err(e) => return Err(CompleteError::Transport { attempts: 1, message: e.to_string() }),
        };
        let parsed: ChatResponse = resp.into_json().map_err(|e| CompleteError::BadResponse(e.to_string()))?;
        parsed
            .choices
            .into_iter()
            .next()
            .and_then(|c| c.message.content)
            .ok_or(CompleteError::EmptyCompletion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completer::{complete, ModelConfig};
    use crate::constructor::PromptDocument;

    #[test]
    fn unreachable_endpoint_is_transport_error() {
        // port 9 on loopback: nothing listens, connection is refused at once
        let p = HttpProvider { endpoint: "http://127.0.0.1:9/v1/chat/completions".into(), timeout: Duration::from_secs(2), api_key: None };
        let cfg = ModelConfig { backoff: Duration::ZERO, retries: 1, ..Default::default() };
        let doc = PromptDocument { system_text: "s".into(), user_text: "u".into(), token_estimate: 2, rules: vec![] };
        assert!(matches!(complete(&doc, &cfg, &p), Err(CompleteError::Transport { attempts: 2, .. })));
    }
}
