use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::ConceptId;

/// What a scorer does when every sense of the target scores zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fallback {
    Abstain,
    Uniform,
}

impl fmt::Display for Fallback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fallback::Abstain => "abstain",
            Fallback::Uniform => "uniform",
        })
    }
}

impl FromStr for Fallback {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "abstain" => Ok(Fallback::Abstain),
            "uniform" => Ok(Fallback::Uniform),
            other => Err(format!("unknown fallback `{other}`")),
        }
    }
}

/// Scores over the senses of one target occurrence, in source sense order.
///
/// Unless `abstained`, the scores sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SenseDistribution {
    pub entries: Vec<(ConceptId, f64)>,
    pub abstained: bool,
}

impl SenseDistribution {
    pub fn abstain(senses: Vec<ConceptId>) -> Self {
        SenseDistribution {
            entries: senses.into_iter().map(|s| (s, 0.0)).collect(),
            abstained: true,
        }
    }

    /// All mass on `senses[chosen]`.
    pub fn point_mass(senses: Vec<ConceptId>, chosen: usize) -> Self {
        assert!(chosen < senses.len(), "chosen sense out of range");
        SenseDistribution {
            entries: senses
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, if i == chosen { 1.0 } else { 0.0 }))
                .collect(),
            abstained: false,
        }
    }

    pub fn uniform(senses: Vec<ConceptId>) -> Self {
        if senses.is_empty() {
            return Self::abstain(senses);
        }
        let p = 1.0 / senses.len() as f64;
        SenseDistribution {
            entries: senses.into_iter().map(|s| (s, p)).collect(),
            abstained: false,
        }
    }

    /// Normalizes nonnegative raw scores; an all-zero vector goes to `fallback`.
    pub fn from_raw(senses: Vec<ConceptId>, raw: &[f64], fallback: Fallback) -> Self {
        debug_assert_eq!(senses.len(), raw.len());
        let total: f64 = raw.iter().sum();
        if total > 0.0 && total.is_finite() {
            return SenseDistribution {
                entries: senses
                    .into_iter()
                    .zip(raw)
                    .map(|(s, r)| (s, r / total))
                    .collect(),
                abstained: false,
            };
        }
        match fallback {
            Fallback::Abstain => Self::abstain(senses),
            Fallback::Uniform => Self::uniform(senses),
        }
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    pub fn score_of(&self, sense: &ConceptId) -> f64 {
        self.entries
            .iter()
            .filter(|(s, _)| s == sense)
            .map(|(_, p)| p)
            .sum()
    }

    /// Mass on any member of `gold`; 0 for an abstention.
    pub fn mass_on(&self, gold: &[ConceptId]) -> f64 {
        if self.abstained {
            return 0.0;
        }
        self.entries
            .iter()
            .filter(|(s, _)| gold.contains(s))
            .map(|(_, p)| p)
            .sum()
    }

    /// Entries by descending score; equal scores keep source order.
    pub fn ranked(&self) -> Vec<(&ConceptId, f64)> {
        let mut out: Vec<_> = self.entries.iter().map(|(s, p)| (s, *p)).collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1));
        out
    }
}
