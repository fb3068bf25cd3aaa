//! Deterministic hashing for seeded, order-independent randomness.
//!
//! Every randomized decision in the toolkit (record filtering, random
//! subsampling) is derived from a per-item hash instead of a shared RNG
//! stream, so results do not depend on instance order or worker count.

/// FNV-1a 64-bit hash.
pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x1_0000_0000_01b3);
    }
    h
}

/// SplitMix64 finalizer; a single scrambling step of the SplitMix64 generator.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Maps a 64-bit hash to a uniform float in [0, 1) using its top 53 bits.
pub fn unit_float(h: u64) -> f64 {
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Uniform score in [0, 1) for one table record, keyed by
/// `(instance id, attribute, value, record index)` and a run seed.
///
/// The key fields are concatenated with 0x1F separators, with the record
/// index rendered in decimal. The same record always gets the same score
/// under the same seed, regardless of which worker touches it.
pub fn record_score(seed: u64, instance_id: &str, attribute: &str, value: &str, index: usize) -> f64 {
    let mut key = Vec::with_capacity(instance_id.len() + attribute.len() + value.len() + 8);
    key.extend_from_slice(instance_id.as_bytes());
    key.push(0x1f);
    key.extend_from_slice(attribute.as_bytes());
    key.push(0x1f);
    key.extend_from_slice(value.as_bytes());
    key.push(0x1f);
    key.extend_from_slice(index.to_string().as_bytes());
    unit_float(splitmix64(seed ^ fnv1a64(&key)))
}

/// Sort key for seeded uniform sampling of instance ids.
pub fn id_sort_key(seed: u64, id: &str) -> u64 {
    splitmix64(seed ^ fnv1a64(id.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference vectors computed with an independent implementation of
    // FNV-1a and SplitMix64 before this module was written.
    #[test]
    fn fnv1a64_reference_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"hello"), 0xa430d84680aabd0b);
    }

    #[test]
    fn splitmix64_reference_vectors() {
        assert_eq!(splitmix64(0), 0xe220a8397b1dcdaf);
        assert_eq!(splitmix64(1), 0x910a2dec89025cc1);
        assert_eq!(splitmix64(42), 0xbdd732262feb6e95);
    }

    #[test]
    fn record_score_reference_vectors() {
        // u values for the two uncovered records of the filtering fixture,
        // frozen from the independent reference implementation.
        let u1 = record_score(42, "b1", "award", "Turing Award", 1);
        let u2 = record_score(42, "b1", "residence", "Arlington", 2);
        assert_eq!(u1, 2883356287972258.0 / (1u64 << 53) as f64);
        assert_eq!(u2, 5620836120681296.0 / (1u64 << 53) as f64);
        assert!(u1 < 0.5 && u2 >= 0.5);
    }

    #[test]
    fn unit_float_is_half_open() {
        assert_eq!(unit_float(0), 0.0);
        assert!(unit_float(u64::MAX) < 1.0);
    }
}
