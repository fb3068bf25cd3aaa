//! Heuristic alignment between table records and text entities.
//!
//! Two matching rules decide whether a record is covered by the text:
//!
//! 1. **Exact match** — a contiguous token span of the text whose
//!    normalized tokens equal the normalized tokens of the record value.
//! 2. **Filtered sub-sequence match** — for entity labels that name
//!    things rather than quantities, the entity's stop-word-filtered
//!    token list is an order-preserving sub-sequence of the record
//!    value's filtered token list.
//!
//! An entity is aligned when its span overlaps an exact-match witness of
//! any record or it sub-sequence-matches some record; everything else is
//! hallucinated.

use crate::instance::{EntityMention, Instance, Record};
use crate::stopwords::filter_stop_words;
use crate::tokenize::{normalize_for_match, normalize_text, tokenize, Span, Token, TokenSpan};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Witnesses for one covered record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordWitness {
    /// Record index into the instance table.
    pub record: usize,
    /// Exact-match token spans, left to right.
    pub spans: Vec<TokenSpan>,
    /// Entity indices that sub-sequence-match this record.
    pub entities: Vec<usize>,
}

/// Record indices one aligned entity maps to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityAlignment {
    pub entity: usize,
    pub records: Vec<usize>,
}

/// Per-instance alignment: covered records with witnesses, aligned
/// entities with their records, and the hallucinated remainder.
///
/// `aligned` and `hallucinated` partition the instance's entity indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub covered: Vec<RecordWitness>,
    pub aligned: Vec<EntityAlignment>,
    pub hallucinated: Vec<usize>,
}

impl Alignment {
    pub fn covered_count(&self) -> usize {
        self.covered.len()
    }

    pub fn hallucinated_count(&self) -> usize {
        self.hallucinated.len()
    }

    pub fn is_covered(&self, record: usize) -> bool {
        self.covered.iter().any(|w| w.record == record)
    }

    pub fn witness(&self, record: usize) -> Option<&RecordWitness> {
        self.covered.iter().find(|w| w.record == record)
    }

    pub fn is_hallucinated(&self, entity: usize) -> bool {
        self.hallucinated.contains(&entity)
    }
}

/// Exportable sidecar row for audit (`align` subcommand output).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlignmentSidecar {
    pub id: String,
    pub covered: Vec<RecordWitness>,
    pub aligned: Vec<EntityAlignment>,
    pub hallucinated: Vec<usize>,
    /// Entities whose span crosses a sentence boundary (flagged, not repaired).
    pub crossing_entities: Vec<usize>,
}

impl AlignmentSidecar {
    pub fn new(instance: &Instance, alignment: &Alignment) -> Self {
        AlignmentSidecar {
            id: instance.id.clone(),
            covered: alignment.covered.clone(),
            aligned: alignment.aligned.clone(),
            hallucinated: alignment.hallucinated.clone(),
            crossing_entities: instance.entities_crossing_sentences(),
        }
    }
}

/// Contiguous exact-match spans for every record of the instance.
///
/// A record matches a token span iff the normalized tokens of the span
/// equal the normalized tokens of the record value and both are non-empty.
/// Punctuation tokens inside the span are transparent, mirroring the way
/// normalization drops them from the value. Matches are collected left to
/// right and do not overlap per record.
pub fn exact_match_spans(instance: &Instance) -> BTreeMap<usize, Vec<TokenSpan>> {
    let tokens = tokenize(&instance.text);
    exact_match_spans_in(&tokens, &instance.table.records)
}

fn exact_match_spans_in(tokens: &[Token], records: &[Record]) -> BTreeMap<usize, Vec<TokenSpan>> {
    // Normalized view of the text with back-pointers to raw token indices.
    let mut norm: Vec<(String, usize)> = Vec::with_capacity(tokens.len());
    for (i, tok) in tokens.iter().enumerate() {
        let mut n = normalize_for_match(std::iter::once(tok.text.as_str()));
        if let Some(s) = n.pop() {
            norm.push((s, i));
        }
    }

    let mut out = BTreeMap::new();
    for (r, record) in records.iter().enumerate() {
        let target = normalize_text(&record.value);
        if target.is_empty() || target.len() > norm.len() {
            continue;
        }
        let mut spans = Vec::new();
        let mut i = 0usize;
        while i + target.len() <= norm.len() {
            if norm[i..i + target.len()]
                .iter()
                .map(|(s, _)| s.as_str())
                .eq(target.iter().map(|s| s.as_str()))
            {
                let first = norm[i].1;
                let last = norm[i + target.len() - 1].1;
                spans.push(TokenSpan {
                    tokens: Span::new(first, last + 1),
                    chars: Span::new(tokens[first].span.start, tokens[last].span.end),
                });
                i += target.len();
            } else {
                i += 1;
            }
        }
        if !spans.is_empty() {
            out.insert(r, spans);
        }
    }
    out
}

/// Stop-word-filtered normalized tokens of an entity mention or value.
pub fn filtered_tokens(text: &str) -> Vec<String> {
    filter_stop_words(&normalize_text(text))
}

/// True iff `needle` is an order-preserving (not necessarily contiguous)
/// sub-sequence of `hay`.
pub fn is_subsequence<T: PartialEq>(needle: &[T], hay: &[T]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|n| it.any(|h| h == n))
}

/// Filtered sub-sequence match between one entity and one record.
///
/// Requires an eligible (non-numeric) entity label and a non-empty
/// filtered entity token list; an entity made solely of stop words
/// matches nothing.
pub fn filtered_subsequence_match(entity: &EntityMention, record: &Record) -> bool {
    if !entity.label.subsequence_eligible() {
        return false;
    }
    let needle = filtered_tokens(&entity.text);
    if needle.is_empty() {
        return false;
    }
    let hay = filtered_tokens(&record.value);
    is_subsequence(&needle, &hay)
}

/// Aligns one instance: covered records, aligned entities, hallucinated
/// entities. Pure; instances may be aligned in parallel.
pub fn align_instance(instance: &Instance) -> Alignment {
    let exact = exact_match_spans(instance);

    // Sub-sequence matches, precomputed per (entity, record).
    let records = &instance.table.records;
    let mut entity_records: Vec<Vec<usize>> = vec![Vec::new(); instance.entities.len()];
    let mut record_entities: Vec<Vec<usize>> = vec![Vec::new(); records.len()];
    for (e, ent) in instance.entities.iter().enumerate() {
        for (r, rec) in records.iter().enumerate() {
            if filtered_subsequence_match(ent, rec) {
                entity_records[e].push(r);
                record_entities[r].push(e);
            }
        }
    }

    let mut covered = Vec::new();
    for r in 0..records.len() {
        let spans = exact.get(&r).cloned().unwrap_or_default();
        if !spans.is_empty() || !record_entities[r].is_empty() {
            covered.push(RecordWitness {
                record: r,
                spans,
                entities: record_entities[r].clone(),
            });
        }
    }

    let mut aligned = Vec::new();
    let mut hallucinated = Vec::new();
    for (e, ent) in instance.entities.iter().enumerate() {
        let mut recs = entity_records[e].clone();
        for (r, spans) in &exact {
            if spans.iter().any(|s| s.chars.overlaps(&ent.span())) && !recs.contains(r) {
                recs.push(*r);
            }
        }
        recs.sort_unstable();
        if recs.is_empty() {
            hallucinated.push(e);
        } else {
            aligned.push(EntityAlignment { entity: e, records: recs });
        }
    }

    Alignment {
        covered,
        aligned,
        hallucinated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{EntityLabel, Table};

    fn mention(text: &str, label: EntityLabel, start: usize) -> EntityMention {
        EntityMention {
            text: text.to_string(),
            label,
            start,
            end: start + text.chars().count(),
        }
    }

    fn fixture_a() -> Instance {
        Instance {
            id: "a".into(),
            table: Table::new(vec![
                Record::new("Name_ID", "Mary Reid Macarthur"),
                Record::new("date of birth", "1880"),
                Record::new("occupation", "trade unionist"),
            ]),
            text: "Mary Reid Macarthur (born 1880) was a trade unionist from Glasgow.".into(),
            entities: vec![
                mention("Mary Reid Macarthur", EntityLabel::Person, 0),
                mention("1880", EntityLabel::Date, 26),
                mention("Glasgow", EntityLabel::Gpe, 58),
            ],
            sentences: vec![],
        }
        .finalize()
        .unwrap()
    }

    #[test]
    fn exact_match_finds_verbatim_spans() {
        let inst = fixture_a();
        let spans = exact_match_spans(&inst);
        assert_eq!(spans.len(), 3);
        // "trade unionist" covers raw tokens 9..11
        assert_eq!(spans[&2][0].tokens, Span::new(9, 11));
        assert_eq!(spans[&2][0].chars, Span::new(38, 52));
        // "1880" is raw token 5 at chars [26, 30)
        assert_eq!(spans[&1][0].chars, Span::new(26, 30));
    }

    #[test]
    fn exact_match_absence() {
        let inst = Instance {
            id: "x".into(),
            table: Table::new(vec![Record::new("birthplace", "Glasgow")]),
            text: "Born somewhere else entirely.".into(),
            entities: vec![],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        assert!(exact_match_spans(&inst).is_empty());
    }

    #[test]
    fn exact_match_is_case_and_punct_insensitive() {
        let inst = Instance {
            id: "x".into(),
            table: Table::new(vec![Record::new("name", "mary reid")]),
            text: "Mary, Reid was here.".into(),
            entities: vec![],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let spans = exact_match_spans(&inst);
        // punctuation inside the span is transparent
        assert_eq!(spans[&0][0].tokens, Span::new(0, 3));
    }

    #[test]
    fn subsequence_match_examples() {
        let uc = mention("the University of California", EntityLabel::Org, 0);
        let rec = Record::new("educated at", "University of California, Berkeley");
        assert!(filtered_subsequence_match(&uc, &rec));

        let date = mention("1880", EntityLabel::Date, 0);
        assert!(!filtered_subsequence_match(&date, &Record::new("d", "1880s")));

        let gpe = mention("Berkeley", EntityLabel::Gpe, 0);
        assert!(filtered_subsequence_match(&gpe, &Record::new("p", "Berkeley")));
    }

    #[test]
    fn stop_word_only_entity_matches_nothing() {
        let ent = mention("the", EntityLabel::Org, 0);
        assert!(!filtered_subsequence_match(&ent, &Record::new("a", "the thing")));
    }

    #[test]
    fn fixture_a_alignment() {
        let inst = fixture_a();
        let al = align_instance(&inst);
        assert_eq!(al.covered_count(), 3);
        assert!(al.is_covered(0) && al.is_covered(1) && al.is_covered(2));
        assert_eq!(al.hallucinated, vec![2]); // Glasgow
        assert_eq!(al.aligned.len(), 2);
        assert_eq!(al.aligned[0].records, vec![0]);
        assert_eq!(al.aligned[1].records, vec![1]);
    }

    #[test]
    fn verbatim_text_with_no_entities_covers_all() {
        let inst = Instance {
            id: "v".into(),
            table: Table::new(vec![Record::new("a", "alpha"), Record::new("b", "beta")]),
            text: "alpha and beta appear.".into(),
            entities: vec![],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let al = align_instance(&inst);
        assert_eq!(al.covered_count(), 2);
        assert!(al.hallucinated.is_empty());
    }

    #[test]
    fn unrelated_text_covers_nothing() {
        let inst = Instance {
            id: "u".into(),
            table: Table::new(vec![Record::new("a", "alpha"), Record::new("b", "beta")]),
            text: "Something about Paris.".into(),
            entities: vec![mention("Paris", EntityLabel::Gpe, 16)],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let al = align_instance(&inst);
        assert_eq!(al.covered_count(), 0);
        assert_eq!(al.hallucinated, vec![0]);
    }

    #[test]
    fn numeric_label_aligns_only_via_span_overlap() {
        // DATE entity over an exact-matched value: aligned through overlap.
        let inst = Instance {
            id: "n".into(),
            table: Table::new(vec![Record::new("year", "1880")]),
            text: "In 1880 it began.".into(),
            entities: vec![mention("1880", EntityLabel::Date, 3)],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let al = align_instance(&inst);
        assert!(al.is_covered(0));
        assert!(al.hallucinated.is_empty());

        // Same entity without a matching record: hallucinated.
        let inst2 = Instance {
            id: "n2".into(),
            table: Table::new(vec![Record::new("year", "1881")]),
            text: "In 1880 it began.".into(),
            entities: vec![mention("1880", EntityLabel::Date, 3)],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let al2 = align_instance(&inst2);
        assert!(!al2.is_covered(0));
        assert_eq!(al2.hallucinated, vec![0]);
    }

    #[test]
    fn duplicate_records_each_get_witnesses() {
        let inst = Instance {
            id: "d".into(),
            table: Table::new(vec![Record::new("a", "alpha"), Record::new("a", "alpha")]),
            text: "alpha alpha".into(),
            entities: vec![],
            sentences: vec![],
        }
        .finalize()
        .unwrap();
        let al = align_instance(&inst);
        assert_eq!(al.covered_count(), 2);
        // each record independently scans left to right and finds both spans
        assert_eq!(al.witness(0).unwrap().spans.len(), 2);
        assert_eq!(al.witness(1).unwrap().spans.len(), 2);
    }

    #[test]
    fn subsequence_is_order_preserving() {
        let ent = mention("California University", EntityLabel::Org, 0);
        let rec = Record::new("e", "University of California");
        // reversed order: not a subsequence
        assert!(!filtered_subsequence_match(&ent, &rec));
    }
}
