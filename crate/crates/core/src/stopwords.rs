//! Fixed English stop-word list used by the sub-sequence matcher.
//!
//! The list ships verbatim in `stopwords.txt` (case-folded articles,
//! prepositions, conjunctions, pronouns, and auxiliaries) and is immutable
//! at runtime. Changing it changes every coverage and hallucination number,
//! so it is versioned with the crate.

use std::collections::HashSet;
use std::sync::OnceLock;

static LIST: &str = include_str!("stopwords.txt");
static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();

/// The embedded stop-word set.
pub fn stop_words() -> &'static HashSet<&'static str> {
    SET.get_or_init(|| LIST.lines().filter(|l| !l.is_empty()).collect())
}

/// True if a case-folded token is a stop word.
pub fn is_stop_word(token: &str) -> bool {
    stop_words().contains(token)
}

/// Removes stop words from a normalized token sequence.
pub fn filter_stop_words(tokens: &[String]) -> Vec<String> {
    tokens.iter().filter(|t| !is_stop_word(t)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_has_expected_shape() {
        let set = stop_words();
        assert!(set.len() >= 140, "stop list unexpectedly short: {}", set.len());
        for w in ["a", "an", "the", "of", "and", "was", "with"] {
            assert!(set.contains(w), "missing {w}");
        }
        // all entries are case-folded
        assert!(set.iter().all(|w| *w == w.to_lowercase()));
    }

    #[test]
    fn filtering() {
        let toks: Vec<String> = ["the", "university", "of", "california"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(filter_stop_words(&toks), ["university", "california"]);
    }
}
