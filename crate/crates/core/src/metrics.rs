//! Entity-centric faithfulness statistics.
//!
//! Per instance: the covered-record fraction, the hallucinated-entity
//! count, and the token length. Per corpus: their exact aggregates. All
//! ranking keys are exact rationals so top-n% selections are identical
//! across platforms; floats appear only at display time.

use crate::align::Alignment;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tokenize::tokenize;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Per-instance statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMetrics {
    pub id: String,
    /// Number of covered records.
    pub covered: usize,
    /// Table size K (duplicates each count).
    pub table_size: usize,
    /// Number of hallucinated entities.
    pub n_hallu: usize,
    /// Token count of the text, punctuation tokens included.
    pub tokens: usize,
    pub sentences: usize,
}

impl InstanceMetrics {
    /// Covered-record fraction as an exact rational.
    pub fn p_cover_exact(&self) -> Ratio<u64> {
        Ratio::new(self.covered as u64, self.table_size.max(1) as u64)
    }

    pub fn p_cover(&self) -> f64 {
        self.covered as f64 / self.table_size.max(1) as f64
    }

    /// Instance-level hallucination ratio n_hallu / l as an exact rational.
    pub fn r_hallu_exact(&self) -> Ratio<u64> {
        assert!(self.tokens >= 1, "hallucination ratio requires l >= 1");
        Ratio::new(self.n_hallu as u64, self.tokens as u64)
    }

    pub fn r_hallu(&self) -> f64 {
        self.n_hallu as f64 / self.tokens as f64
    }
}

/// Instance-level hallucination ratio used for faithfulness ranking.
pub fn hallucination_ratio(m: &InstanceMetrics) -> Ratio<u64> {
    m.r_hallu_exact()
}

/// Computes per-instance metrics from an instance and its alignment.
///
/// Errors with `DegenerateInstance` when the text yields zero tokens.
pub fn instance_metrics(instance: &Instance, alignment: &Alignment) -> Result<InstanceMetrics> {
    let tokens = tokenize(&instance.text).len();
    if tokens == 0 {
        return Err(Error::DegenerateInstance {
            id: instance.id.clone(),
        });
    }
    Ok(InstanceMetrics {
        id: instance.id.clone(),
        covered: alignment.covered_count(),
        table_size: instance.table.len(),
        n_hallu: alignment.hallucinated_count(),
        tokens,
        sentences: instance.sentences.len(),
    })
}

/// Corpus-level sums. Addition is associative and commutative, so corpora
/// can be reduced in any order or in parallel.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusMetrics {
    /// Instance count N.
    pub n: u64,
    /// Exact Σ p_cover.
    pub p_cover_sum: BigRational,
    /// Σ n_hallu.
    pub hallucinated: u64,
    /// Σ l.
    pub tokens: u64,
}

impl CorpusMetrics {
    pub fn empty() -> Self {
        CorpusMetrics {
            n: 0,
            p_cover_sum: BigRational::zero(),
            hallucinated: 0,
            tokens: 0,
        }
    }

    pub fn add(&mut self, m: &InstanceMetrics) {
        self.n += 1;
        self.p_cover_sum += BigRational::new(
            BigInt::from(m.covered),
            BigInt::from(m.table_size.max(1)),
        );
        self.hallucinated += m.n_hallu as u64;
        self.tokens += m.tokens as u64;
    }

    pub fn merge(&mut self, other: &CorpusMetrics) {
        self.n += other.n;
        self.p_cover_sum += &other.p_cover_sum;
        self.hallucinated += other.hallucinated;
        self.tokens += other.tokens;
    }

    /// P_cover = Σ p_cover / N, exact.
    pub fn p_cover_exact(&self) -> BigRational {
        &self.p_cover_sum / BigRational::from(BigInt::from(self.n.max(1)))
    }

    pub fn p_cover(&self) -> f64 {
        self.p_cover_exact().to_f64().unwrap_or(f64::NAN)
    }

    /// R_hallu = Σ n_hallu / Σ l, exact. Identical to Σn / (N·L).
    pub fn r_hallu_exact(&self) -> Ratio<u64> {
        Ratio::new(self.hallucinated, self.tokens.max(1))
    }

    pub fn r_hallu(&self) -> f64 {
        self.hallucinated as f64 / self.tokens.max(1) as f64
    }

    /// L = Σ l / N, the mean token length.
    pub fn mean_length(&self) -> f64 {
        self.tokens as f64 / self.n.max(1) as f64
    }
}

/// Aggregates a non-empty metrics sequence.
pub fn corpus_metrics(metrics: &[InstanceMetrics]) -> Result<CorpusMetrics> {
    if metrics.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut acc = CorpusMetrics::empty();
    for m in metrics {
        acc.add(m);
    }
    Ok(acc)
}

/// Total order for faithfulness ranking: ascending hallucination ratio,
/// ties broken by lower n_hallu, then higher p_cover, then ascending id.
pub fn rank_key_cmp(a: &InstanceMetrics, b: &InstanceMetrics) -> Ordering {
    hallucination_ratio(a)
        .cmp(&hallucination_ratio(b))
        .then_with(|| a.n_hallu.cmp(&b.n_hallu))
        .then_with(|| b.p_cover_exact().cmp(&a.p_cover_exact()))
        .then_with(|| a.id.cmp(&b.id))
}

/// Ranks instances most-faithful-first and returns their ids.
///
/// The order is total and deterministic, so the output is stable under
/// any permutation of the input.
pub fn rank_instances(metrics: &[InstanceMetrics]) -> Vec<String> {
    let mut order: Vec<&InstanceMetrics> = metrics.iter().collect();
    order.sort_by(|a, b| rank_key_cmp(a, b));
    order.into_iter().map(|m| m.id.clone()).collect()
}

/// Fixed-width TSV row for one instance:
/// `id, p_cover, n_hallu, l, sentences, r_hallu` with 6-decimal floats.
pub fn tsv_row(m: &InstanceMetrics) -> String {
    format!(
        "{}\t{:.6}\t{}\t{}\t{}\t{:.6}",
        m.id,
        m.p_cover(),
        m.n_hallu,
        m.tokens,
        m.sentences,
        m.r_hallu()
    )
}

/// Header for the per-instance TSV.
pub const TSV_HEADER: &str = "id\tp_cover\tn_hallu\tl\tsentences\tr_hallu";

/// Corpus summary block: one `name<TAB>value` line per statistic.
pub fn summary_block(c: &CorpusMetrics) -> String {
    format!(
        "N\t{}\nP_cover\t{:.6}\nR_hallu\t{:.6}\nL\t{:.6}\n",
        c.n,
        c.p_cover(),
        c.r_hallu(),
        c.mean_length()
    )
}
