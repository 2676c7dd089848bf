//! Switching sequences over a filter window.
//!
//! A window of `d` iterations is described by a bit tuple `s` with `s[0] = 1`,
//! where bit `n` is 1 exactly when a new independent network appears at
//! iteration `n + 1`. The first network is always counted as new. Under
//! Bernoulli switching with probability `p_sw` per iteration, a sequence with
//! `k` networks has mass `p_sw^(k-1) * (1 - p_sw)^(d-k)`.
//!
//! Each sequence corresponds to an integer composition of `d`: the run lengths
//! of the networks in order of appearance.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum supported window length. Expected Gram matrices are exact sums
/// over all `2^(d-1)` sequences, so the cap keeps enumeration tractable.
pub const MAX_WINDOW: usize = 20;

/// Bit pattern of network-switch events within one filter window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwitchingSequence {
    bits: Vec<bool>,
}

impl SwitchingSequence {
    /// Build from bits; the first bit must be set and the window non-empty.
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidModel("switching sequence must be non-empty".into()));
        }
        if bits.len() > MAX_WINDOW {
            return Err(Error::DegreeTooLarge { degree: bits.len(), max: MAX_WINDOW });
        }
        if !bits[0] {
            return Err(Error::InvalidModel(
                "first bit of a switching sequence must be 1".into(),
            ));
        }
        Ok(Self { bits })
    }

    /// Window length `d`.
    pub fn window_len(&self) -> usize {
        self.bits.len()
    }

    /// Number of independent networks used in the window.
    pub fn network_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Run lengths of the networks in order of appearance.
    pub fn composition(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.network_count());
        for &b in &self.bits {
            if b {
                parts.push(1);
            } else {
                *parts.last_mut().expect("first bit is set") += 1;
            }
        }
        Composition { parts }
    }

    /// Number of iterations the `network`-th network (0-based, in order of
    /// appearance) has been applied up to and including iteration `upto`,
    /// with `upto = 0` meaning "before the window starts".
    ///
    /// Panics if `network >= network_count()` or `upto > window_len()`.
    pub fn iterations_used(&self, network: usize, upto: usize) -> usize {
        let parts = self.composition().parts;
        assert!(network < parts.len(), "network index {network} out of range");
        assert!(upto <= self.bits.len(), "iteration index {upto} out of range");
        let start: usize = parts[..network].iter().sum();
        if upto < start {
            0
        } else if upto > start + parts[network] {
            parts[network]
        } else {
            upto - start
        }
    }
}

impl fmt::Display for SwitchingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for SwitchingSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidModel(format!(
                    "invalid character '{other}' in switching sequence"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

impl Serialize for SwitchingSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SwitchingSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered run lengths summing to the window length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<usize>,
}

/// All `2^(d-1)` switching sequences of window length `d`, in lexicographic
/// order of the trailing bits. The order is stable across runs.
pub fn enumerate_sequences(window_len: usize) -> Result<Vec<SwitchingSequence>> {
    if window_len == 0 || window_len > MAX_WINDOW {
        return Err(Error::DegreeTooLarge { degree: window_len, max: MAX_WINDOW });
    }
    let tail = window_len - 1;
    let count = 1usize << tail;
    let mut out = Vec::with_capacity(count);
    for code in 0..count {
        let mut bits = Vec::with_capacity(window_len);
        bits.push(true);
        for pos in (0..tail).rev() {
            bits.push(code >> pos & 1 == 1);
        }
        out.push(SwitchingSequence { bits });
    }
    Ok(out)
}

/// Probability mass of `s` under Bernoulli switching with rate `switch_prob`.
pub fn sequence_probability(s: &SwitchingSequence, switch_prob: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&switch_prob));
    let d = s.window_len();
    let switches = s.network_count() - 1;
    // powi(0) == 1 covers the endpoint cases 0^0.
    switch_prob.powi(switches as i32) * (1.0 - switch_prob).powi((d - 1 - switches) as i32)
}

/// Draw a switching sequence: the first iteration always uses a fresh
/// network, each later iteration switches independently with `switch_prob`.
pub fn sample_sequence<R: Rng + ?Sized>(
    window_len: usize,
    switch_prob: f64,
    rng: &mut R,
) -> Result<SwitchingSequence> {
    if window_len == 0 || window_len > MAX_WINDOW {
        return Err(Error::DegreeTooLarge { degree: window_len, max: MAX_WINDOW });
    }
    let mut bits = Vec::with_capacity(window_len);
    bits.push(true);
    for _ in 1..window_len {
        bits.push(rng.random_bool(switch_prob));
    }
    Ok(SwitchingSequence { bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, substream};

    fn seq(s: &str) -> SwitchingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_matches_hand_listing() {
        let d1 = enumerate_sequences(1).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].to_string(), "1");

        let d3: Vec<String> = enumerate_sequences(3)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(d3, vec!["100", "101", "110", "111"]);

        assert_eq!(enumerate_sequences(5).unwrap().len(), 16);
        assert!(matches!(
            enumerate_sequences(MAX_WINDOW + 1),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn first_bit_must_be_set() {
        assert!(SwitchingSequence::new(vec![false, true]).is_err());
        assert!("011".parse::<SwitchingSequence>().is_err());
        assert!("1x1".parse::<SwitchingSequence>().is_err());
    }

    #[test]
    fn probability_matches_direct_evaluation() {
        assert_eq!(sequence_probability(&seq("1"), 0.0), 1.0);
        assert_eq!(sequence_probability(&seq("1"), 0.7), 1.0);
        let p = sequence_probability(&seq("100"), 0.4);
        assert!((p - 0.36).abs() < 1e-15);
    }

    #[test]
    fn probabilities_sum_to_one() {
        for d in 1..=8 {
            let seqs = enumerate_sequences(d).unwrap();
            for i in 0..=10 {
                let p_sw = i as f64 / 10.0;
                let total: f64 = seqs.iter().map(|s| sequence_probability(s, p_sw)).sum();
                assert!(
                    (total - 1.0).abs() < 1e-14,
                    "d={d} p_sw={p_sw}: sum {total}"
                );
            }
        }
    }

    #[test]
    fn composition_is_run_lengths() {
        assert_eq!(seq("1000").composition().parts, vec![4]);
        assert_eq!(seq("1010").composition().parts, vec![2, 2]);
        assert_eq!(seq("111").composition().parts, vec![1, 1, 1]);
    }

    #[test]
    fn iterations_used_three_case_formula() {
        let s = seq("1010");
        assert_eq!(s.iterations_used(0, 0), 0);
        assert_eq!(s.iterations_used(1, 0), 0);
        assert_eq!(s.iterations_used(0, 3), 2);
        assert_eq!(s.iterations_used(1, 3), 1);

        let single = seq("100");
        assert_eq!(single.iterations_used(0, 2), 2);
    }

    #[test]
    fn iterations_used_sums_to_iteration_index() {
        for d in 1..=8 {
            for s in enumerate_sequences(d).unwrap() {
                let parts = s.composition().parts.clone();
                for upto in 0..=d {
                    let total: usize = (0..s.network_count())
                        .map(|m| s.iterations_used(m, upto))
                        .sum();
                    assert_eq!(total, upto, "s={s} upto={upto}");
                }
                for (m, &len) in parts.iter().enumerate() {
                    assert_eq!(s.iterations_used(m, d), len);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "network index")]
    fn iterations_used_rejects_bad_network() {
        seq("100").iterations_used(1, 2);
    }

    #[test]
    fn sampling_endpoints() {
        let mut rng = substream(1, stream::GRAM_SAMPLE, 0);
        for _ in 0..20 {
            assert_eq!(sample_sequence(6, 0.0, &mut rng).unwrap().to_string(), "100000");
            assert_eq!(sample_sequence(6, 1.0, &mut rng).unwrap().to_string(), "111111");
        }
    }

    #[test]
    fn sampled_frequencies_match_probability_mass() {
        let d = 5;
        let p_sw = 0.4;
        let draws = 100_000usize;
        let mut rng = substream(42, stream::GRAM_SAMPLE, 1);
        let seqs = enumerate_sequences(d).unwrap();
        let mut counts = vec![0usize; seqs.len()];
        for _ in 0..draws {
            let s = sample_sequence(d, p_sw, &mut rng).unwrap();
            let idx = seqs.iter().position(|t| *t == s).unwrap();
            counts[idx] += 1;
        }
        for (s, &c) in seqs.iter().zip(&counts) {
            let p = sequence_probability(s, p_sw);
            let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (c as f64 - draws as f64 * p).abs() <= 4.0 * sigma,
                "sequence {s}: count {c}, expected {:.1} +/- {:.1}",
                draws as f64 * p,
                sigma
            );
        }
    }
}
