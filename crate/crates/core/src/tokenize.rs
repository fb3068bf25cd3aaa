//! Deterministic whitespace-and-punctuation tokenizer.
//!
//! The tokenizer is intentionally simple and fully specified so that token
//! counts and match decisions are reproducible across platforms without an
//! external NLP dependency. All offsets are Unicode scalar value offsets
//! into the original text; normalization never moves offsets.
//!
//! Rules, applied per whitespace-separated chunk:
//! - leading and trailing punctuation characters split off as
//!   single-character tokens;
//! - a trailing possessive `'s` / `’s` splits into its own token;
//! - internal hyphens and apostrophes stay inside the token.

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// Half-open range of Unicode scalar values or token indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.start <= pos && pos < self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// One token with its character span in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub span: Span,
}

/// A contiguous run of tokens, with both token indices and the originating
/// character span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSpan {
    /// Half-open range of token indices.
    pub tokens: Span,
    /// Character span from the first token's start to the last token's end.
    pub chars: Span,
}

/// Punctuation for token splitting: anything that is neither alphanumeric,
/// whitespace, nor a combining mark.
pub fn is_punct(c: char) -> bool {
    if c.is_alphanumeric() || c.is_whitespace() {
        return false;
    }
    !is_combining_mark(c)
}

// Combining marks attach to the preceding letter; stripping them as
// punctuation would corrupt decomposed (NFD) input.
fn is_combining_mark(c: char) -> bool {
    matches!(u32::from(c),
        0x0300..=0x036f | 0x1ab0..=0x1aff | 0x1dc0..=0x1dff | 0x20d0..=0x20ff | 0xfe20..=0xfe2f)
}

/// Splits text into tokens with character spans.
///
/// Pure and deterministic; empty or whitespace-only text yields no tokens.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chunk: Vec<char> = Vec::new();
    let mut chunk_start = 0usize;

    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            if !chunk.is_empty() {
                emit_chunk(&chunk, chunk_start, &mut tokens);
                chunk.clear();
            }
        } else {
            if chunk.is_empty() {
                chunk_start = pos;
            }
            chunk.push(c);
        }
    }
    if !chunk.is_empty() {
        emit_chunk(&chunk, chunk_start, &mut tokens);
    }
    tokens
}

fn emit_chunk(chars: &[char], start: usize, out: &mut Vec<Token>) {
    let mut lo = 0;
    let mut hi = chars.len();

    while lo < hi && is_punct(chars[lo]) {
        out.push(Token {
            text: chars[lo].to_string(),
            span: Span::new(start + lo, start + lo + 1),
        });
        lo += 1;
    }

    let mut trailing = Vec::new();
    while hi > lo && is_punct(chars[hi - 1]) {
        hi -= 1;
        trailing.push(Token {
            text: chars[hi].to_string(),
            span: Span::new(start + hi, start + hi + 1),
        });
    }

    if lo < hi {
        let core = &chars[lo..hi];
        let possessive = core.len() > 2
            && core[core.len() - 1] == 's'
            && matches!(core[core.len() - 2], '\'' | '\u{2019}');
        if possessive {
            let cut = core.len() - 2;
            out.push(Token {
                text: core[..cut].iter().collect(),
                span: Span::new(start + lo, start + lo + cut),
            });
            out.push(Token {
                text: core[cut..].iter().collect(),
                span: Span::new(start + lo + cut, start + hi),
            });
        } else {
            out.push(Token {
                text: core.iter().collect(),
                span: Span::new(start + lo, start + hi),
            });
        }
    }

    out.extend(trailing.into_iter().rev());
}

/// Case-folds and NFC-normalizes tokens for matching, dropping tokens that
/// consist solely of punctuation. Stop words are kept; stop-word filtering
/// is a separate alignment-side step.
pub fn normalize_for_match<'a, I>(tokens: I) -> Vec<String>
where
    I: IntoIterator<Item = &'a str>,
{
    tokens
        .into_iter()
        .filter(|t| !t.chars().all(is_punct))
        .map(normalize_token)
        .collect()
}

/// NFC + casefold of a single token.
pub fn normalize_token(token: &str) -> String {
    token.nfc().collect::<String>().to_lowercase()
}

/// Normalized token sequence of a raw string: tokenize then normalize.
pub fn normalize_text(text: &str) -> Vec<String> {
    normalize_for_match(tokenize(text).iter().map(|t| t.text.as_str()))
}

/// Slice of `text` by Unicode scalar value offsets.
pub fn char_slice(text: &str, span: Span) -> String {
    text.chars().skip(span.start).take(span.len()).collect()
}

/// Number of Unicode scalar values in `text`.
pub fn char_len(text: &str) -> usize {
    text.chars().count()
}
