//! Token estimation and context-window budgeting.

use crate::gateway::{Gateway, ModelProfile};

/// ceil(chars / 4); the fallback when no provider tokenizer is available.
pub fn heuristic_tokens(text: &str) -> usize {
    text.chars().count().div_ceil(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetCheck {
    Fits,
    /// Overflow is a value, not a failure; `excess` is how many tokens over.
    Overflow { excess: usize },
}

impl BudgetCheck {
    pub fn fits(&self) -> bool {
        matches!(self, BudgetCheck::Fits)
    }
}

/// Does `prompt` plus the reserved output budget fit the profile window?
pub fn check_budget(gateway: &Gateway, profile: &ModelProfile, prompt: &str) -> BudgetCheck {
    let (tokens, _) = gateway.estimate_tokens(profile, prompt);
    let needed = tokens + profile.reserved_output_tokens;
    if needed <= profile.context_window {
        BudgetCheck::Fits
    } else {
        BudgetCheck::Overflow {
            excess: needed - profile.context_window,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_zero_tokens() {
        assert_eq!(heuristic_tokens(""), 0);
    }

    #[test]
    fn four_hundred_chars_is_one_hundred_tokens() {
        assert_eq!(heuristic_tokens(&"x".repeat(400)), 100);
    }

    #[test]
    fn ceil_rounds_up() {
        assert_eq!(heuristic_tokens("abcde"), 2);
    }

    #[test]
    fn budget_fits_within_window() {
        let gw = Gateway::mock(vec![]);
        let mut profile = ModelProfile::mock("m", 8_000);
        profile.reserved_output_tokens = 512;
        // 7000 tokens = 28000 chars.
        let prompt = "x".repeat(28_000);
        assert!(check_budget(&gw, &profile, &prompt).fits());
    }

    #[test]
    fn budget_overflow_reports_excess() {
        let gw = Gateway::mock(vec![]);
        let mut profile = ModelProfile::mock("m", 8_000);
        profile.reserved_output_tokens = 512;
        // 9000 tokens = 36000 chars.
        let prompt = "x".repeat(36_000);
        match check_budget(&gw, &profile, &prompt) {
            BudgetCheck::Overflow { excess } => assert!(excess >= 1_000),
            BudgetCheck::Fits => panic!("expected overflow"),
        }
    }

    #[test]
    fn gpt4_scale_window_fits_large_prompt() {
        let gw = Gateway::mock(vec![]);
        let profile = ModelProfile::mock("gpt-4", 128_000);
        // 100k tokens = 400k chars.
        let prompt = "x".repeat(400_000);
        assert!(check_budget(&gw, &profile, &prompt).fits());
    }
}
