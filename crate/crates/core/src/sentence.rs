//! Rule-based sentence segmentation.
//!
//! A boundary is placed after `.`, `!` or `?` when it is followed by
//! whitespace and then an uppercase letter, an opening quote, or a digit.
//! Boundaries after a fixed list of abbreviations are suppressed. The last
//! sentence always extends to the end of the text; spans exclude the
//! whitespace between sentences.

use crate::tokenize::Span;

/// Abbreviations whose trailing period never ends a sentence.
/// Matched case-sensitively against the chunk ending at the period.
pub const ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "St.", "Jr.", "Sr.", "Prof.", "vs.", "etc.", "e.g.", "i.e.",
    "No.", "U.S.",
];

const OPENING_QUOTES: &[char] = &['"', '\'', '\u{201c}', '\u{2018}', '\u{00ab}', '\u{2039}', '\u{201e}', '\u{201a}'];

/// Segments text into ordered sentence spans (Unicode scalar offsets).
///
/// Whitespace-only text yields no spans; otherwise every non-whitespace
/// character is covered by exactly one span.
pub fn segment_sentences(text: &str) -> Vec<Span> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut spans = Vec::new();

    let mut start = skip_whitespace(&chars, 0);
    if start >= n {
        return spans;
    }

    let mut i = start;
    while i < n {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') && is_boundary(&chars, i) {
            spans.push(Span::new(start, i + 1));
            start = skip_whitespace(&chars, i + 1);
            i = start;
        } else {
            i += 1;
        }
    }
    if start < n {
        // Trailing content without a detected boundary: one final span to
        // the end of the text.
        spans.push(Span::new(start, n));
    }
    spans
}

fn skip_whitespace(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    i
}

fn is_boundary(chars: &[char], term: usize) -> bool {
    // Must be followed by whitespace...
    let next = term + 1;
    if next >= chars.len() || !chars[next].is_whitespace() {
        return false;
    }
    // ...then an uppercase letter, opening quote, or digit.
    let after = skip_whitespace(chars, next);
    if after >= chars.len() {
        return false;
    }
    let starter = chars[after];
    let starts_sentence =
        starter.is_uppercase() || starter.is_ascii_digit() || OPENING_QUOTES.contains(&starter);
    if !starts_sentence {
        return false;
    }
    if chars[term] == '.' && is_abbreviation(chars, term) {
        return false;
    }
    true
}

// The chunk is the maximal run of non-whitespace characters ending at the
// period. Suppress when it ends with a listed abbreviation that is not
// embedded in a longer word ("aDr." does not match, "(Dr." does).
fn is_abbreviation(chars: &[char], term: usize) -> bool {
    let mut chunk_start = term;
    while chunk_start > 0 && !chars[chunk_start - 1].is_whitespace() {
        chunk_start -= 1;
    }
    let chunk: String = chars[chunk_start..=term].iter().collect();
    ABBREVIATIONS.iter().any(|abbr| {
        chunk.strip_suffix(abbr).is_some_and(|prefix| {
            prefix.chars().next_back().is_none_or(|c| !c.is_alphanumeric())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_two_sentences() {
        assert_eq!(segment_sentences("A b. C d."), vec![Span::new(0, 4), Span::new(5, 9)]);
    }

    #[test]
    fn abbreviation_guard() {
        let spans = segment_sentences("Dr. Smith lived. He died.");
        assert_eq!(spans, vec![Span::new(0, 16), Span::new(17, 25)]);
    }

    #[test]
    fn no_terminator_is_one_span() {
        let text = "one sentence no terminator";
        assert_eq!(segment_sentences(text), vec![Span::new(0, text.len())]);
    }

    #[test]
    fn whitespace_only_has_no_spans() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("  \n ").is_empty());
    }

    #[test]
    fn boundary_requires_sentence_starter() {
        // lowercase continuation: no boundary
        assert_eq!(segment_sentences("a b. c d").len(), 1);
        // digit starts a sentence
        assert_eq!(segment_sentences("It ended. 1900 began.").len(), 2);
        // opening quote starts a sentence
        assert_eq!(segment_sentences("He left. \"Why?\" she asked.").len(), 2);
    }

    #[test]
    fn exclamation_and_question_marks() {
        let spans = segment_sentences("Really! Yes? Sure.");
        assert_eq!(spans.len(), 3);
        assert_eq!(spans[0], Span::new(0, 7));
        assert_eq!(spans[1], Span::new(8, 12));
        assert_eq!(spans[2], Span::new(13, 18));
    }

    #[test]
    fn us_abbreviation_does_not_split() {
        assert_eq!(segment_sentences("Born in the U.S. She moved.").len(), 1);
        // interior period of U.S. is not even boundary-eligible
        let spans = segment_sentences("The U.S. Navy grew.");
        assert_eq!(spans.len(), 1);
    }

    #[test]
    fn abbreviation_embedded_in_word_still_splits() {
        // "aSt." is not the abbreviation "St."
        assert_eq!(segment_sentences("It was aSt. Nothing more.").len(), 2);
        // but "(St." keeps the guard
        assert_eq!(segment_sentences("He lived (St. Andrews) here.").len(), 1);
    }

    #[test]
    fn leading_whitespace_excluded() {
        assert_eq!(segment_sentences("  A b."), vec![Span::new(2, 6)]);
    }

    #[test]
    fn trailing_content_extends_to_text_end() {
        let spans = segment_sentences("A b. C d");
        assert_eq!(spans, vec![Span::new(0, 4), Span::new(5, 8)]);
    }
}
