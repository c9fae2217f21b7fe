//! Uniform access to chat-completion providers, plus a fully deterministic
//! mock backend for tests and the `demo` subcommand.
//!
//! The [`Gateway`] wrapper owns retry (up to 3 retries with 1s/2s/4s backoff,
//! transient failures only) and re-asserts the context-window budget as a
//! hard check: a prompt that overflows the profile window reaching this layer
//! is a pipeline bug, reported as [`GatewayError::Overflow`].

use crate::error::GatewayError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::sync::Mutex;
use std::time::Duration;

/// How prompt sizes are estimated for a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenizerPolicy {
    /// Ask the gateway backend; falls back to the heuristic if it has none.
    Provider,
    /// ceil(chars / 4).
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelProfile {
    pub name: String,
    /// Provider URL, or the literal "mock".
    pub endpoint: String,
    pub context_window: usize,
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    #[serde(default = "default_reserved")]
    pub reserved_output_tokens: usize,
    #[serde(default)]
    pub auth_env_var: Option<String>,
    #[serde(default = "default_tokenizer")]
    pub tokenizer: TokenizerPolicy,
}

fn default_temperature() -> f64 {
    0.1
}

fn default_reserved() -> usize {
    512
}

fn default_tokenizer() -> TokenizerPolicy {
    TokenizerPolicy::Heuristic
}

impl ModelProfile {
    pub fn mock(name: &str, context_window: usize) -> Self {
        ModelProfile {
            name: name.to_string(),
            endpoint: "mock".to_string(),
            context_window,
            temperature: 0.1,
            reserved_output_tokens: 512,
            auth_env_var: None,
            tokenizer: TokenizerPolicy::Heuristic,
        }
    }

    pub fn is_mock(&self) -> bool {
        self.endpoint == "mock"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub text: String,
    pub prompt_char_count: usize,
    pub completion_char_count: usize,
    pub latency_ms: u64,
    pub provider_raw_id: Option<String>,
    /// Attempts made, including the successful one.
    pub attempts: u32,
}

pub trait Tokenizer: Send + Sync {
    fn count(&self, text: &str) -> usize;
}

/// One token per whitespace-delimited word; used by mock profiles in tests.
pub struct WordTokenizer;

impl Tokenizer for WordTokenizer {
    fn count(&self, text: &str) -> usize {
        text.split_whitespace().count()
    }
}

/// A single request attempt. Retries live in [`Gateway`].
pub trait Backend: Send + Sync {
    fn send(&self, profile: &ModelProfile, system: &str, user: &str)
        -> Result<Completion, GatewayError>;

    fn tokenizer(&self) -> Option<&dyn Tokenizer> {
        None
    }
}

pub trait Sleeper: Send + Sync {
    fn sleep(&self, duration: Duration);
}

pub struct ThreadSleeper;

impl Sleeper for ThreadSleeper {
    fn sleep(&self, duration: Duration) {
        std::thread::sleep(duration);
    }
}

/// Records requested delays instead of sleeping; for backoff assertions.
#[derive(Default)]
pub struct RecordingSleeper {
    pub delays: Mutex<Vec<Duration>>,
}

impl Sleeper for RecordingSleeper {
    fn sleep(&self, duration: Duration) {
        self.delays.lock().unwrap().push(duration);
    }
}

pub fn prompt_hash16(prompt: &str) -> String {
    let digest = Sha256::digest(prompt.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    hex[..16].to_string()
}

/// What a mock rule does when its matcher fires.
pub enum MockAction {
    /// Fixed canned text.
    Respond(String),
    /// Deterministic prose built from the prompt hash; passes the
    /// degenerate-summary detector, unlike the bare `SUM(..)` default.
    RespondProse,
    /// Deterministic 1-5 score with a short rationale, for judge prompts.
    RespondScore,
    /// Per-call schedule; entries are consumed in order, the last one
    /// repeats. `Err(())` entries fail with a transient transport error.
    Schedule(Vec<Result<String, ()>>),
}

pub struct MockRule {
    pub contains: String,
    pub action: MockAction,
}

/// Deterministic scripted backend. Unmatched prompts get
/// `SUM(<first 16 hex chars of the prompt's sha-256>)`.
pub struct MockBackend {
    rules: Vec<MockRule>,
    calls: Mutex<Vec<usize>>,
    call_log: Mutex<Vec<String>>,
    word_tokenizer: Option<WordTokenizer>,
}

impl MockBackend {
    pub fn new(rules: Vec<MockRule>) -> Self {
        let n = rules.len();
        MockBackend {
            rules,
            calls: Mutex::new(vec![0; n]),
            call_log: Mutex::new(Vec::new()),
            word_tokenizer: None,
        }
    }

    pub fn with_word_tokenizer(mut self) -> Self {
        self.word_tokenizer = Some(WordTokenizer);
        self
    }

    /// Prompts received so far, in call order.
    pub fn prompts(&self) -> Vec<String> {
        self.call_log.lock().unwrap().clone()
    }

    pub fn call_count(&self) -> usize {
        self.call_log.lock().unwrap().len()
    }

    fn respond(&self, text: String, user: &str) -> Completion {
        Completion {
            completion_char_count: text.chars().count(),
            prompt_char_count: user.chars().count(),
            text,
            latency_ms: 0,
            provider_raw_id: None,
            attempts: 1,
        }
    }
}

/// Deterministic judge verdict: score = 1 + (first hash byte mod 5).
pub fn mock_score(prompt: &str) -> String {
    let hash = prompt_hash16(prompt);
    let byte = u8::from_str_radix(&hash[..2], 16).unwrap_or(0);
    let score = 1 + byte % 5;
    format!("{score} - scored deterministically from digest {hash}.")
}

pub fn mock_prose(prompt: &str) -> String {
    format!(
        "This unit (digest {}) groups related operations and manages their \
         shared state and behavior.",
        prompt_hash16(prompt)
    )
}

impl Backend for MockBackend {
    fn send(
        &self,
        _profile: &ModelProfile,
        _system: &str,
        user: &str,
    ) -> Result<Completion, GatewayError> {
        self.call_log.lock().unwrap().push(user.to_string());
        for (i, rule) in self.rules.iter().enumerate() {
            if !user.contains(&rule.contains) {
                continue;
            }
            match &rule.action {
                MockAction::Respond(text) => return Ok(self.respond(text.clone(), user)),
                MockAction::RespondProse => return Ok(self.respond(mock_prose(user), user)),
                MockAction::RespondScore => return Ok(self.respond(mock_score(user), user)),
                MockAction::Schedule(entries) => {
                    let mut calls = self.calls.lock().unwrap();
                    let k = calls[i].min(entries.len() - 1);
                    calls[i] += 1;
                    return match &entries[k] {
                        Ok(text) => Ok(self.respond(text.clone(), user)),
                        Err(()) => Err(GatewayError::Transport {
                            attempts: 1,
                            message: "scripted transient failure".to_string(),
                        }),
                    };
                }
            }
        }
        Ok(self.respond(format!("SUM({})", prompt_hash16(user)), user))
    }

    fn tokenizer(&self) -> Option<&dyn Tokenizer> {
        self.word_tokenizer.as_ref().map(|t| t as &dyn Tokenizer)
    }
}

/// System message sent with every request.
pub const SYSTEM_MESSAGE: &str =
    "You are an assistant that writes concise natural-language summaries of source code.";

const MAX_RETRIES: u32 = 3;

pub struct Gateway {
    backend: Box<dyn Backend>,
    sleeper: Box<dyn Sleeper>,
}

impl Gateway {
    pub fn new(backend: Box<dyn Backend>, sleeper: Box<dyn Sleeper>) -> Self {
        Gateway { backend, sleeper }
    }

    pub fn mock(rules: Vec<MockRule>) -> Self {
        Gateway::new(Box::new(MockBackend::new(rules)), Box::new(ThreadSleeper))
    }

    pub fn tokenizer(&self) -> Option<&dyn Tokenizer> {
        self.backend.tokenizer()
    }

    /// Estimated token count for `text` under `profile`'s policy. Returns
    /// `(tokens, used_heuristic)`.
    pub fn estimate_tokens(&self, profile: &ModelProfile, text: &str) -> (usize, bool) {
        match (profile.tokenizer, self.backend.tokenizer()) {
            (TokenizerPolicy::Provider, Some(t)) => (t.count(text), false),
            _ => (crate::tokens::heuristic_tokens(text), true),
        }
    }

    /// Send `prompt`, retrying transient failures with 1s/2s/4s backoff.
    pub fn complete(
        &self,
        profile: &ModelProfile,
        prompt: &str,
    ) -> Result<Completion, GatewayError> {
        let (tokens, _) = self.estimate_tokens(profile, prompt);
        if tokens + profile.reserved_output_tokens > profile.context_window {
            return Err(GatewayError::Overflow {
                attempts: 0,
                prompt_tokens: tokens,
                window: profile.context_window,
            });
        }
        let mut attempt = 1u32;
        loop {
            match self.backend.send(profile, SYSTEM_MESSAGE, prompt) {
                Ok(mut completion) => {
                    completion.attempts = attempt;
                    return Ok(completion);
                }
                Err(e) if e.is_transient() && attempt <= MAX_RETRIES => {
                    self.sleeper
                        .sleep(Duration::from_secs(1u64 << (attempt - 1)));
                    attempt += 1;
                }
                Err(e) => return Err(with_attempts(e, attempt)),
            }
        }
    }
}

fn with_attempts(e: GatewayError, attempts: u32) -> GatewayError {
    match e {
        GatewayError::Auth { message, .. } => GatewayError::Auth { attempts, message },
        GatewayError::Transport { message, .. } => GatewayError::Transport { attempts, message },
        GatewayError::Overflow {
            prompt_tokens,
            window,
            ..
        } => GatewayError::Overflow {
            attempts,
            prompt_tokens,
            window,
        },
        GatewayError::Provider { message, .. } => GatewayError::Provider { attempts, message },
    }
}

/// JSON body for the de-facto chat-completions schema. Top-k/top-p are left
/// at provider defaults, so the keys are absent.
pub fn request_body(profile: &ModelProfile, system: &str, user: &str) -> serde_json::Value {
    serde_json::json!({
        "model": profile.name,
        "messages": [
            {"role": "system", "content": system},
            {"role": "user", "content": user},
        ],
        "temperature": profile.temperature,
    })
}

/// Blocking HTTP backend for chat-completions endpoints.
pub struct HttpBackend {
    client: reqwest::blocking::Client,
}

impl HttpBackend {
    pub fn new() -> Self {
        HttpBackend {
            client: reqwest::blocking::Client::new(),
        }
    }
}

impl Default for HttpBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl Backend for HttpBackend {
    fn send(
        &self,
        profile: &ModelProfile,
        system: &str,
        user: &str,
    ) -> Result<Completion, GatewayError> {
        let started = std::time::Instant::now();
        let mut request = self
            .client
            .post(&profile.endpoint)
            .json(&request_body(profile, system, user));
        if let Some(var) = &profile.auth_env_var {
            let key = std::env::var(var).map_err(|_| GatewayError::Auth {
                attempts: 1,
                message: format!("environment variable {var} is not set"),
            })?;
            request = request.bearer_auth(key);
        }
        let response = request.send().map_err(|e| GatewayError::Transport {
            attempts: 1,
            message: e.to_string(),
        })?;
        let status = response.status();
        if status.as_u16() == 429 || status.is_server_error() {
            return Err(GatewayError::Transport {
                attempts: 1,
                message: format!("status {status}"),
            });
        }
        if status.as_u16() == 401 || status.as_u16() == 403 {
            return Err(GatewayError::Auth {
                attempts: 1,
                message: format!("status {status}"),
            });
        }
        if !status.is_success() {
            return Err(GatewayError::Provider {
                attempts: 1,
                message: format!("status {status}"),
            });
        }
        let body: serde_json::Value = response.json().map_err(|e| GatewayError::Provider {
            attempts: 1,
            message: format!("malformed response body: {e}"),
        })?;
        let text = body["choices"][0]["message"]["content"]
            .as_str()
            .ok_or_else(|| GatewayError::Provider {
                attempts: 1,
                message: "response missing choices[0].message.content".to_string(),
            })?
            .to_string();
        Ok(Completion {
            prompt_char_count: user.chars().count(),
            completion_char_count: text.chars().count(),
            provider_raw_id: body["id"].as_str().map(|s| s.to_string()),
            text,
            latency_ms: started.elapsed().as_millis() as u64,
            attempts: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn toy_profile(window: usize) -> ModelProfile {
        ModelProfile::mock("mock", window)
    }

    #[test]
    fn mock_default_is_deterministic_hash() {
        let gw = Gateway::mock(vec![]);
        let profile = toy_profile(100_000);
        let a = gw.complete(&profile, "P").unwrap();
        let b = gw.complete(&profile, "P").unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.text, format!("SUM({})", prompt_hash16("P")));
    }

    #[test]
    fn scripted_match_wins_over_default() {
        let gw = Gateway::mock(vec![MockRule {
            contains: "class A".to_string(),
            action: MockAction::Respond("alpha".to_string()),
        }]);
        let profile = toy_profile(100_000);
        let c = gw.complete(&profile, "summarize: class A { }").unwrap();
        assert_eq!(c.text, "alpha");
    }

    #[test]
    fn failure_schedule_recovers_on_third_attempt() {
        let backend = MockBackend::new(vec![MockRule {
            contains: "".to_string(),
            action: MockAction::Schedule(vec![Err(()), Err(()), Ok("done".to_string())]),
        }]);
        let sleeper = Arc::new(RecordingSleeper::default());
        struct SharedSleeper(Arc<RecordingSleeper>);
        impl Sleeper for SharedSleeper {
            fn sleep(&self, d: Duration) {
                self.0.sleep(d);
            }
        }
        let gw = Gateway::new(Box::new(backend), Box::new(SharedSleeper(sleeper.clone())));
        let c = gw.complete(&toy_profile(100_000), "anything").unwrap();
        assert_eq!(c.text, "done");
        assert_eq!(c.attempts, 3);
        let delays = sleeper.delays.lock().unwrap().clone();
        assert_eq!(
            delays,
            vec![Duration::from_secs(1), Duration::from_secs(2)]
        );
    }

    #[test]
    fn retries_capped_at_three() {
        let backend = MockBackend::new(vec![MockRule {
            contains: "".to_string(),
            action: MockAction::Schedule(vec![Err(())]),
        }]);
        let sleeper = Arc::new(RecordingSleeper::default());
        struct SharedSleeper(Arc<RecordingSleeper>);
        impl Sleeper for SharedSleeper {
            fn sleep(&self, d: Duration) {
                self.0.sleep(d);
            }
        }
        let gw = Gateway::new(Box::new(backend), Box::new(SharedSleeper(sleeper.clone())));
        let err = gw.complete(&toy_profile(100_000), "x").unwrap_err();
        assert_eq!(err.attempts(), 4); // 1 initial + 3 retries
        let delays = sleeper.delays.lock().unwrap().clone();
        assert_eq!(
            delays,
            vec![
                Duration::from_secs(1),
                Duration::from_secs(2),
                Duration::from_secs(4)
            ]
        );
    }

    #[test]
    fn oversized_prompt_trips_hard_assert() {
        let gw = Gateway::mock(vec![]);
        let profile = toy_profile(100); // leaves -412 for the prompt
        let prompt = "x".repeat(4000);
        assert!(matches!(
            gw.complete(&profile, &prompt),
            Err(GatewayError::Overflow { .. })
        ));
    }

    #[test]
    fn word_tokenizer_counts_words() {
        let backend = MockBackend::new(vec![]).with_word_tokenizer();
        let gw = Gateway::new(Box::new(backend), Box::new(ThreadSleeper));
        let mut profile = toy_profile(1000);
        profile.tokenizer = TokenizerPolicy::Provider;
        let (tokens, heuristic) = gw.estimate_tokens(&profile, "one two three four");
        assert_eq!(tokens, 4);
        assert!(!heuristic);
    }

    #[test]
    fn request_body_omits_top_k_and_top_p() {
        let profile = ModelProfile {
            temperature: 0.1,
            ..ModelProfile::mock("gpt-4", 128_000)
        };
        let body = request_body(&profile, "sys", "user");
        assert_eq!(body["temperature"], 0.1);
        assert!(body.get("top_k").is_none());
        assert!(body.get("top_p").is_none());
        assert_eq!(body["messages"][0]["role"], "system");
        assert_eq!(body["messages"][1]["role"], "user");
    }
}
