//! Recall scoring with probability-mass sharing, per-category breakdowns and
//! parameter sweeps.

mod corpus;
mod report;
mod semcor;
mod sweep;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::baselines::{first_sense, lesk_score, random_sense, Stopwords};
use crate::disambiguator::{disambiguate_document, known_positions, window_from_known, WsdConfig};
use crate::distribution::{Fallback, SenseDistribution};
use crate::lexicon::{ConceptId, SemanticNetwork};

pub use corpus::{
    group_documents, load_corpus, write_corpus, Category, CorpusDocument, CorpusError, CorpusItem,
};
pub use report::{write_category_csv, write_overall_csv, CSV_DECIMALS};
pub use semcor::{ingest_semcor, write_reject_log, IngestOutcome, Reject, SemcorError};
pub use sweep::{axis_configs, sweep, SweepAxis, SweepError, SweepReport, SweepRow};

/// Mass the system puts on gold senses; 0 for an abstention.
pub fn score_item(system: &SenseDistribution, gold: &[ConceptId]) -> f64 {
    system.mass_on(gold)
}

/// A disambiguator under evaluation.
pub trait WsdSystem: Sync {
    fn label(&self) -> String;

    /// One distribution per item of `doc`, in the document's item order.
    fn run(&self, doc: &CorpusDocument, net: &SemanticNetwork) -> Vec<SenseDistribution>;
}

/// Conceptual-density disambiguation with a fixed configuration.
#[derive(Debug, Clone)]
pub struct ConceptDensity(pub WsdConfig);

impl WsdSystem for ConceptDensity {
    fn label(&self) -> String {
        "cd".into()
    }

    fn run(&self, doc: &CorpusDocument, net: &SemanticNetwork) -> Vec<SenseDistribution> {
        disambiguate_document(&doc.tokens(), &self.0, net)
            .expect("configuration validated before evaluation")
            .into_iter()
            .map(|t| t.distribution)
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FirstSense;

impl WsdSystem for FirstSense {
    fn label(&self) -> String {
        "first".into()
    }

    fn run(&self, doc: &CorpusDocument, net: &SemanticNetwork) -> Vec<SenseDistribution> {
        doc.items
            .iter()
            .map(|it| first_sense(&it.lemma, net))
            .collect()
    }
}

/// Random point-mass choice. Each item draws from its own stream, derived
/// from the seed, the document id and the position, so results do not depend
/// on evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct RandomSense {
    pub seed: u64,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn item_seed(seed: u64, doc_id: &str, position: usize) -> u64 {
    splitmix64(seed ^ splitmix64(fnv1a(doc_id.as_bytes()) ^ splitmix64(position as u64)))
}

impl WsdSystem for RandomSense {
    fn label(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn run(&self, doc: &CorpusDocument, net: &SemanticNetwork) -> Vec<SenseDistribution> {
        doc.items
            .iter()
            .map(|it| {
                random_sense(
                    &it.lemma,
                    net,
                    item_seed(self.seed, &it.doc_id, it.position),
                )
            })
            .collect()
    }
}

/// Gloss overlap against the same noun window the density system uses.
#[derive(Debug, Clone)]
pub struct Lesk {
    pub window_radius: usize,
    pub fallback: Fallback,
    pub stopwords: Stopwords,
}

impl WsdSystem for Lesk {
    fn label(&self) -> String {
        "lesk".into()
    }

    fn run(&self, doc: &CorpusDocument, net: &SemanticNetwork) -> Vec<SenseDistribution> {
        let tokens = doc.tokens();
        let known = known_positions(&tokens, net);
        let mut k = 0;
        (0..tokens.len())
            .map(|i| {
                if known.get(k) != Some(&i) {
                    return SenseDistribution::abstain(Vec::new());
                }
                let window = window_from_known(&tokens, &known, k, self.window_radius);
                k += 1;
                lesk_score(
                    &window.target_lemma,
                    &window,
                    net,
                    &self.stopwords,
                    self.fallback,
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryReport {
    pub category: Category,
    pub items: usize,
    pub score_sum: f64,
    /// Expected recall of a uniform random choice, computed exactly.
    pub random_recall: f64,
    pub system_recall: f64,
    /// `(system - random) / random`, in percent; 0 when random recall is 0.
    pub improvement_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub system: String,
    pub items: usize,
    pub answered: usize,
    /// Items whose lemma has no sense in the network.
    pub unresolvable: usize,
    pub score_sum: f64,
    pub recall: f64,
    pub coverage: f64,
    pub random_recall: f64,
    pub categories: Vec<CategoryReport>,
    /// Per-item scores in corpus order.
    pub item_scores: Vec<f64>,
}

/// Expected score of a uniformly random sense choice for `item`.
pub fn analytic_random_score(item: &CorpusItem, net: &SemanticNetwork) -> f64 {
    let senses = net.senses_of(&item.lemma);
    if senses.is_empty() {
        return 0.0;
    }
    let hits = senses
        .iter()
        .filter(|&&s| item.gold.contains(net.id(s)))
        .count();
    hits as f64 / senses.len() as f64
}

fn ratio(num: f64, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num / den as f64
    }
}

/// Scores `system` on every item of `corpus`.
///
/// Documents are processed in parallel on the current rayon pool; sums are
/// reduced afterwards in corpus order so the report is bit-stable.
pub fn evaluate(
    corpus: &[CorpusItem],
    system: &dyn WsdSystem,
    net: &SemanticNetwork,
) -> EvalReport {
    let docs = group_documents(corpus);
    let outputs: Vec<Vec<SenseDistribution>> =
        docs.par_iter().map(|doc| system.run(doc, net)).collect();

    let mut scores = vec![0.0; corpus.len()];
    let mut answered = vec![false; corpus.len()];
    for (doc, out) in docs.iter().zip(outputs) {
        assert_eq!(
            out.len(),
            doc.items.len(),
            "system returned a wrong number of distributions"
        );
        for ((&idx, item), dist) in doc.indices.iter().zip(&doc.items).zip(out) {
            scores[idx] = score_item(&dist, &item.gold);
            answered[idx] = !dist.abstained;
        }
    }

    let mut per_cat: BTreeMap<Category, (usize, f64, f64)> = BTreeMap::new();
    for (item, &score) in corpus.iter().zip(&scores) {
        let e = per_cat.entry(item.category).or_default();
        e.0 += 1;
        e.1 += score;
        e.2 += analytic_random_score(item, net);
    }
    let categories: Vec<CategoryReport> = per_cat
        .into_iter()
        .map(|(category, (items, score_sum, random_sum))| {
            let random_recall = ratio(random_sum, items);
            let system_recall = ratio(score_sum, items);
            let improvement_pct = if random_recall > 0.0 {
                (system_recall - random_recall) / random_recall * 100.0
            } else {
                0.0
            };
            CategoryReport {
                category,
                items,
                score_sum,
                random_recall,
                system_recall,
                improvement_pct,
            }
        })
        .collect();

    // overall sums are folded from the category sums so the partition is exact
    let score_sum: f64 = categories.iter().map(|c| c.score_sum).sum();
    let random_sum: f64 = corpus.iter().map(|it| analytic_random_score(it, net)).sum();
    let n_answered = answered.iter().filter(|&&a| a).count();
    EvalReport {
        system: system.label(),
        items: corpus.len(),
        answered: n_answered,
        unresolvable: corpus
            .iter()
            .filter(|it| net.senses_of(&it.lemma).is_empty())
            .count(),
        score_sum,
        recall: ratio(score_sum, corpus.len()),
        coverage: ratio(n_answered as f64, corpus.len()),
        random_recall: ratio(random_sum, corpus.len()),
        categories,
        item_scores: scores,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<ConceptId> {
        names.iter().map(|n| ConceptId::new(*n)).collect()
    }

    #[test]
    fn point_mass_on_gold_scores_one() {
        let d = SenseDistribution::point_mass(ids(&["a", "b"]), 1);
        assert_eq!(score_item(&d, &ids(&["b"])), 1.0);
        assert_eq!(score_item(&d, &ids(&["a"])), 0.0);
    }

    #[test]
    fn shared_mass_scores_half() {
        let d = SenseDistribution::uniform(ids(&["a", "b"]));
        assert_eq!(score_item(&d, &ids(&["a"])), 0.5);
        assert_eq!(score_item(&d, &ids(&["a", "b"])), 1.0);
    }

    #[test]
    fn abstention_scores_zero() {
        let d = SenseDistribution::abstain(ids(&["a", "b"]));
        assert_eq!(score_item(&d, &ids(&["a"])), 0.0);
    }

    #[test]
    fn item_seeds_differ_by_position_and_doc() {
        assert_ne!(item_seed(7, "d", 1), item_seed(7, "d", 2));
        assert_ne!(item_seed(7, "d", 1), item_seed(7, "e", 1));
        assert_ne!(item_seed(7, "d", 1), item_seed(8, "d", 1));
        assert_eq!(item_seed(7, "d", 1), item_seed(7, "d", 1));
    }
}
