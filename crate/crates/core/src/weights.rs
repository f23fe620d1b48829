use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// A weight distribution `{(weight, frequency)}`, sorted by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDist {
    pub n: u64,
    pub dim: u32,
    entries: Vec<WeightEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: u64,
    pub freq: u128,
}

#[derive(Serialize, Deserialize)]
struct WeightDistJson {
    n: u64,
    dim: u32,
    entries: Vec<WeightEntry>,
    enumerator: String,
}

impl WeightDist {
    /// Zero frequencies are dropped.
    pub fn from_counts(n: u64, dim: u32, counts: BTreeMap<u64, u128>) -> WeightDist {
        let entries = counts
            .into_iter()
            .filter(|&(_, f)| f > 0)
            .map(|(weight, freq)| WeightEntry { weight, freq })
            .collect();
        WeightDist { n, dim, entries }
    }

    pub fn entries(&self) -> &[WeightEntry] {
        &self.entries
    }

    pub fn freq(&self, weight: u64) -> u128 {
        self.entries
            .iter()
            .find(|e| e.weight == weight)
            .map_or(0, |e| e.freq)
    }

    pub fn total(&self) -> u128 {
        self.entries.iter().map(|e| e.freq).sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| e.weight > 0)
            .map(|e| e.weight)
            .collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    /// `sum_w w A_w`.
    pub fn first_moment(&self) -> u128 {
        self.entries.iter().map(|e| e.weight as u128 * e.freq).sum()
    }

    /// `1 + A_w1 z^w1 + ...` in ascending powers.
    pub fn enumerator(&self) -> String {
        self.entries
            .iter()
            .map(|e| match e.weight {
                0 => e.freq.to_string(),
                w => format!("{}z^{}", e.freq, w),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WeightDistJson {
            n: self.n,
            dim: self.dim,
            entries: self.entries.clone(),
            enumerator: self.enumerator(),
        })
        .expect("weight distribution serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&WeightDistJson {
            n: self.n,
            dim: self.dim,
            entries: self.entries.clone(),
            enumerator: self.enumerator(),
        })
        .expect("weight distribution serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<WeightDist> {
        let raw: WeightDistJson = serde_json::from_str(s)?;
        let mut counts = BTreeMap::new();
        for e in raw.entries {
            *counts.entry(e.weight).or_insert(0) += e.freq;
        }
        Ok(WeightDist::from_counts(raw.n, raw.dim, counts))
    }

    /// CSV with header `weight,frequency`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,frequency\n");
        for e in &self.entries {
            let _ = writeln!(out, "{},{}", e.weight, e.freq);
        }
        out
    }

    /// Human-readable differences; empty when the distributions agree.
    pub fn diff(&self, other: &WeightDist) -> Vec<String> {
        let mut out = Vec::new();
        if (self.n, self.dim) != (other.n, other.dim) {
            out.push(format!(
                "parameters [{}, {}] vs [{}, {}]",
                self.n, self.dim, other.n, other.dim
            ));
        }
        let weights: std::collections::BTreeSet<u64> = self
            .entries
            .iter()
            .chain(&other.entries)
            .map(|e| e.weight)
            .collect();
        for w in weights {
            let (a, b) = (self.freq(w), other.freq(w));
            if a != b {
                out.push(format!("A_{w}: {a} vs {b}"));
            }
        }
        out
    }
}
