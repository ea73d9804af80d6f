//! Reference disambiguators: first sense, random sense and a simplified Lesk
//! gloss-overlap scorer.

use std::collections::HashSet;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disambiguator::{sense_ids, Window};
use crate::distribution::{Fallback, SenseDistribution};
use crate::lexicon::SemanticNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Random { seed: u64 },
    FirstSense,
    Lesk,
}

/// All mass on the first listed sense.
pub fn first_sense(lemma: &str, net: &SemanticNetwork) -> SenseDistribution {
    let senses = sense_ids(lemma, net);
    if senses.is_empty() {
        return SenseDistribution::abstain(senses);
    }
    SenseDistribution::point_mass(senses, 0)
}

/// All mass on one sense drawn uniformly with a generator seeded by `seed`.
pub fn random_sense(lemma: &str, net: &SemanticNetwork, seed: u64) -> SenseDistribution {
    let senses = sense_ids(lemma, net);
    if senses.is_empty() {
        return SenseDistribution::abstain(senses);
    }
    let pick = ChaCha8Rng::seed_from_u64(seed).gen_range(0..senses.len());
    SenseDistribution::point_mass(senses, pick)
}

const BUILTIN_STOPWORDS: &str = include_str!("../data/stopwords.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    /// The 50-word list shipped in `data/stopwords.txt`.
    pub fn builtin() -> Self {
        Self::from_reader(BUILTIN_STOPWORDS.as_bytes()).expect("in-memory read")
    }

    pub fn none() -> Self {
        Stopwords(HashSet::new())
    }

    /// One lowercase token per line; blank lines are ignored.
    pub fn from_reader<R: BufRead>(reader: R) -> std::io::Result<Self> {
        let mut set = HashSet::new();
        for line in reader.lines() {
            let w = line?.trim().to_lowercase();
            if !w.is_empty() {
                set.insert(w);
            }
        }
        Ok(Stopwords(set))
    }

    pub fn contains(&self, w: &str) -> bool {
        self.0.contains(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lowercased alphanumeric word types of `text` minus stopwords. Underscores
/// split multiword lemmas.
fn word_types(text: &str, stop: &Stopwords, into: &mut HashSet<String>) {
    for w in text.split(|c: char| !c.is_alphanumeric()) {
        if w.is_empty() {
            continue;
        }
        let w = w.to_lowercase();
        if !stop.contains(&w) {
            into.insert(w);
        }
    }
}

/// Gloss-overlap scores for the senses of `target_lemma`.
///
/// Each sense scores the number of word types its gloss shares with the bag
/// made of the context lemmas and the glosses of all their senses.
pub fn lesk_score(
    target_lemma: &str,
    window: &Window,
    net: &SemanticNetwork,
    stop: &Stopwords,
    fallback: Fallback,
) -> SenseDistribution {
    let senses = net.senses_of(target_lemma);
    if senses.is_empty() {
        return SenseDistribution::abstain(Vec::new());
    }
    let mut bag = HashSet::new();
    for (lemma, _) in &window.context {
        word_types(lemma, stop, &mut bag);
        for &s in net.senses_of(lemma) {
            word_types(&net.synset(s).gloss, stop, &mut bag);
        }
    }
    let mut gloss_types = HashSet::new();
    let raw: Vec<f64> = senses
        .iter()
        .map(|&s| {
            gloss_types.clear();
            word_types(&net.synset(s).gloss, stop, &mut gloss_types);
            gloss_types.intersection(&bag).count() as f64
        })
        .collect();
    SenseDistribution::from_raw(sense_ids(target_lemma, net), &raw, fallback)
}
