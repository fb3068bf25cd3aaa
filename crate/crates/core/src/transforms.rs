//! Dataset modification operators: uncovered-record filtering, reference
//! truncation, and faithfulness-ranked or random instance selection.
//!
//! Every randomized decision is a pure function of a seed plus stable item
//! identity (see `hash`), so transforms commute with parallelism and
//! instance order.

use crate::align::Alignment;
use crate::hash::{id_sort_key, record_score};
use crate::instance::Instance;
use crate::metrics::{rank_instances, InstanceMetrics};

/// Configuration for uncovered-record filtering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterConfig {
    /// Removal threshold λ in [0, 1]: an uncovered record is removed iff
    /// its uniform score is below λ.
    pub lambda: f64,
    pub seed: u64,
}

/// Configuration for reference truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncateConfig {
    /// Maximum number of leading sentences to keep (N_keep ≥ 1).
    pub n_keep: usize,
}

/// Result of filtering one instance's table.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    pub instance: Instance,
    /// True when every record was removed; the emitted instance has an
    /// empty table and callers normally drop it.
    pub emptied: bool,
    /// Number of records removed.
    pub removed: usize,
}

/// Removes uncovered records whose per-record uniform score falls below
/// `lambda`. Covered records always survive; λ=0 is the identity.
///
/// Scores are keyed by (instance id, attribute, value, original record
/// index), so the decision for a record never depends on its neighbors.
pub fn filter_uncovered_records(
    instance: &Instance,
    alignment: &Alignment,
    cfg: &FilterConfig,
) -> FilterOutcome {
    let mut kept = Vec::with_capacity(instance.table.len());
    let mut removed = 0usize;
    for (idx, rec) in instance.table.records.iter().enumerate() {
        let keep = alignment.is_covered(idx)
            || record_score(cfg.seed, &instance.id, &rec.attribute, &rec.value, idx) >= cfg.lambda;
        if keep {
            kept.push(rec.clone());
        } else {
            removed += 1;
        }
    }
    let emptied = kept.is_empty();
    let mut out = instance.clone();
    out.table.records = kept;
    FilterOutcome {
        instance: out,
        emptied,
        removed,
    }
}

/// Keeps the first `min(n_keep, sentence_count)` sentences: the text is cut
/// after the last kept span, entities that no longer fit inside the kept
/// prefix are dropped (offsets of survivors are unchanged), and the kept
/// sentence spans are re-emitted.
pub fn truncate_reference(instance: &Instance, cfg: &TruncateConfig) -> Instance {
    let keep = cfg.n_keep.max(1).min(instance.sentences.len());
    if keep == instance.sentences.len() {
        return instance.clone();
    }
    let sentences: Vec<_> = instance.sentences[..keep].to_vec();
    let new_end = sentences.last().map(|s| s.end).unwrap_or(0);
    let text: String = instance.text.chars().take(new_end).collect();
    // An entity that starts before the cut but ends after it no longer
    // appears intact in the text, so it is dropped along with everything
    // that starts past the cut.
    let entities = instance
        .entities
        .iter()
        .filter(|e| e.end <= new_end)
        .cloned()
        .collect();
    Instance {
        id: instance.id.clone(),
        table: instance.table.clone(),
        text,
        entities,
        sentences,
    }
}

/// First `ceil(fraction · N)` ids of the faithfulness ranking.
///
/// `fraction` must lie in (0, 1]. Nested fractions are prefixes of each
/// other because the underlying order is total.
pub fn select_top_fraction(metrics: &[InstanceMetrics], fraction: f64) -> Vec<String> {
    let ranked = rank_instances(metrics);
    let take = take_count(ranked.len(), fraction);
    ranked.into_iter().take(take).collect()
}

/// Seeded uniform sample without replacement: ids are ordered by a
/// per-id hash and the first `ceil(fraction · N)` are taken.
pub fn sample_random_fraction(ids: &[String], fraction: f64, seed: u64) -> Vec<String> {
    let mut keyed: Vec<(u64, &String)> = ids.iter().map(|id| (id_sort_key(seed, id), id)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let take = take_count(ids.len(), fraction);
    keyed.into_iter().take(take).map(|(_, id)| id.clone()).collect()
}

fn take_count(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64).ceil() as usize).min(n)
}
