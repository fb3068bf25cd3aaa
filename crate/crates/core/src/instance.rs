//! Core data model: records, tables, entity mentions, and instances.
//!
//! Instances arrive as JSON Lines, one object per line, with entity
//! annotations precomputed by an external NER tool. All offsets are
//! Unicode scalar value offsets into the reference text, half-open.

use crate::error::{Error, Result};
use crate::sentence::segment_sentences;
use crate::tokenize::{char_len, char_slice, Span};
use serde::{Deserialize, Serialize};

/// One (attribute, value) pair of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub attribute: String,
    pub value: String,
}

impl Record {
    pub fn new(attribute: impl Into<String>, value: impl Into<String>) -> Self {
        Record {
            attribute: attribute.into(),
            value: value.into(),
        }
    }
}

/// An ordered sequence of records; duplicates are preserved in input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Table {
    pub records: Vec<Record>,
}

impl Table {
    pub fn new(records: Vec<Record>) -> Self {
        Table { records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// NER category tags (OntoNotes inventory). Unknown labels map to `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityLabel {
    Person,
    Norp,
    Fac,
    Org,
    Gpe,
    Loc,
    Product,
    Event,
    WorkOfArt,
    Date,
    Time,
    Cardinal,
    Ordinal,
    Quantity,
    Percent,
    Money,
    Language,
    Law,
    Other,
}

impl EntityLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntityLabel::Person => "PERSON",
            EntityLabel::Norp => "NORP",
            EntityLabel::Fac => "FAC",
            EntityLabel::Org => "ORG",
            EntityLabel::Gpe => "GPE",
            EntityLabel::Loc => "LOC",
            EntityLabel::Product => "PRODUCT",
            EntityLabel::Event => "EVENT",
            EntityLabel::WorkOfArt => "WORK_OF_ART",
            EntityLabel::Date => "DATE",
            EntityLabel::Time => "TIME",
            EntityLabel::Cardinal => "CARDINAL",
            EntityLabel::Ordinal => "ORDINAL",
            EntityLabel::Quantity => "QUANTITY",
            EntityLabel::Percent => "PERCENT",
            EntityLabel::Money => "MONEY",
            EntityLabel::Language => "LANGUAGE",
            EntityLabel::Law => "LAW",
            EntityLabel::Other => "OTHER",
        }
    }

    pub fn parse(s: &str) -> Self {
        match s {
            "PERSON" => EntityLabel::Person,
            "NORP" => EntityLabel::Norp,
            "FAC" => EntityLabel::Fac,
            "ORG" => EntityLabel::Org,
            "GPE" => EntityLabel::Gpe,
            "LOC" => EntityLabel::Loc,
            "PRODUCT" => EntityLabel::Product,
            "EVENT" => EntityLabel::Event,
            "WORK_OF_ART" => EntityLabel::WorkOfArt,
            "DATE" => EntityLabel::Date,
            "TIME" => EntityLabel::Time,
            "CARDINAL" => EntityLabel::Cardinal,
            "ORDINAL" => EntityLabel::Ordinal,
            "QUANTITY" => EntityLabel::Quantity,
            "PERCENT" => EntityLabel::Percent,
            "MONEY" => EntityLabel::Money,
            "LANGUAGE" => EntityLabel::Language,
            "LAW" => EntityLabel::Law,
            _ => EntityLabel::Other,
        }
    }

    /// Labels eligible for the filtered sub-sequence match. Numeric-ish
    /// labels (DATE, CARDINAL, ...) align only via exact-span overlap.
    pub fn subsequence_eligible(&self) -> bool {
        matches!(
            self,
            EntityLabel::Person
                | EntityLabel::Norp
                | EntityLabel::Fac
                | EntityLabel::Org
                | EntityLabel::Gpe
                | EntityLabel::Loc
                | EntityLabel::Product
                | EntityLabel::Event
                | EntityLabel::WorkOfArt
        )
    }
}

impl Serialize for EntityLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for EntityLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(EntityLabel::parse(&s))
    }
}

/// One recognized entity mention with its character span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityMention {
    pub text: String,
    pub label: EntityLabel,
    pub start: usize,
    pub end: usize,
}

impl EntityMention {
    pub fn span(&self) -> Span {
        Span::new(self.start, self.end)
    }
}

/// One (table, text, entities) triple — the unit of every pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub table: Table,
    pub text: String,
    #[serde(default)]
    pub entities: Vec<EntityMention>,
    #[serde(default)]
    pub sentences: Vec<Span>,
}

impl Instance {
    /// Validates invariants, derives sentence spans when absent, and
    /// re-sorts entities by start offset.
    pub fn finalize(mut self) -> Result<Self> {
        let id = self.id.clone();
        if self.id.trim().is_empty() {
            return Err(Error::validation(id, "empty id"));
        }
        if self.table.is_empty() {
            return Err(Error::validation(id, "empty table"));
        }
        if self.text.trim().is_empty() {
            return Err(Error::validation(id, "empty text"));
        }
        for (i, rec) in self.table.records.iter().enumerate() {
            if rec.attribute.trim().is_empty() || rec.value.trim().is_empty() {
                return Err(Error::validation(
                    id,
                    format!("record {i} has an empty attribute or value"),
                ));
            }
        }
        let text_len = char_len(&self.text);
        for (i, ent) in self.entities.iter().enumerate() {
            if ent.start >= ent.end || ent.end > text_len {
                return Err(Error::validation(
                    &id,
                    format!(
                        "entity {i} (`{}`) has an invalid span [{}, {})",
                        ent.text, ent.start, ent.end
                    ),
                ));
            }
            let actual = char_slice(&self.text, ent.span());
            if actual != ent.text {
                return Err(Error::validation(
                    &id,
                    format!(
                        "entity {i} span [{}, {}) reads `{actual}` but text field is `{}`",
                        ent.start, ent.end, ent.text
                    ),
                ));
            }
        }
        self.entities.sort_by_key(|e| (e.start, e.end));

        if self.sentences.is_empty() {
            self.sentences = segment_sentences(&self.text);
        } else {
            validate_sentences(&id, &self.text, &self.sentences)?;
        }
        Ok(self)
    }

    /// Indices of entities whose span crosses a sentence boundary. These
    /// are flagged, never silently repaired; planning assigns them to the
    /// sentence containing their start offset.
    pub fn entities_crossing_sentences(&self) -> Vec<usize> {
        self.entities
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                !self
                    .sentences
                    .iter()
                    .any(|s| s.start <= e.start && e.end <= s.end)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the sentence containing character position `pos`, if any.
    pub fn sentence_containing(&self, pos: usize) -> Option<usize> {
        self.sentences.iter().position(|s| s.contains(pos))
    }
}

fn validate_sentences(id: &str, text: &str, sentences: &[Span]) -> Result<()> {
    let text_len = char_len(text);
    let mut prev_end = 0usize;
    for (i, s) in sentences.iter().enumerate() {
        if s.is_empty() || s.end > text_len {
            return Err(Error::validation(
                id,
                format!("sentence {i} has an invalid span [{}, {})", s.start, s.end),
            ));
        }
        if s.start < prev_end {
            return Err(Error::validation(
                id,
                format!("sentence {i} overlaps or precedes its predecessor"),
            ));
        }
        prev_end = s.end;
    }
    // Union must cover every non-whitespace character.
    let mut idx = 0usize;
    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            continue;
        }
        while idx < sentences.len() && sentences[idx].end <= pos {
            idx += 1;
        }
        if idx >= sentences.len() || !sentences[idx].contains(pos) {
            return Err(Error::validation(
                id,
                format!("non-whitespace character at offset {pos} is outside every sentence span"),
            ));
        }
    }
    Ok(())
}

/// Parses one JSON Lines record into a validated `Instance`.
pub fn parse_instance(line: &str) -> Result<Instance> {
    let inst: Instance =
        serde_json::from_str(line).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    inst.finalize()
}

/// Serializes an instance to one JSON line (no trailing newline).
///
/// `parse_instance(serialize_instance(x))` reproduces `x` exactly; derived
/// sentence spans are included so the form is canonical.
pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string(instance).expect("instance serialization cannot fail")
}
