use cdwsd_core::disambiguator::{
    collect_marks, disambiguate_document, raw_sense_scores, score_senses, Window,
};
use cdwsd_core::lexicon::parse_compact_lexicon;
use cdwsd_core::{
    DensityFormula, Fallback, SemanticNetwork, SenseDistribution, Token, Weighting, WsdConfig,
};
use cdwsd_testkit::{NetShape, RandomNet, RefConfig, RefFormula, RefWeighting, Rels};
use proptest::prelude::*;

fn load(r: &RandomNet) -> SemanticNetwork {
    parse_compact_lexicon(r.to_compact().as_bytes()).unwrap()
}

fn window(words: &[String]) -> Window {
    Window {
        target: 0,
        target_lemma: words[0].clone(),
        context: words[1..]
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i + 1))
            .collect(),
        radius: words.len(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Setup {
    rels: usize,
    chain_limit: u32,
    top_cut: u32,
    weighting: usize,
    formula: usize,
}

fn setup() -> impl Strategy<Value = Setup> {
    (0usize..15, 0u32..4, 0u32..3, 0usize..3, 0usize..4).prop_map(
        |(rels, chain_limit, top_cut, weighting, formula)| Setup {
            rels,
            chain_limit,
            top_cut,
            weighting,
            formula,
        },
    )
}

fn configs(s: Setup) -> (WsdConfig, RefConfig) {
    let rels = Rels::all_nonempty()[s.rels];
    let (f, rf) = [
        (DensityFormula::sar(0.2).unwrap(), RefFormula::Sar(0.2)),
        (DensityFormula::ar(), RefFormula::Ar),
        (DensityFormula::sdf(), RefFormula::Sdf),
        (DensityFormula::lf(), RefFormula::Lf),
    ][s.formula];
    let (w, rw) = [
        (Weighting::Synsets, RefWeighting::Synsets),
        (Weighting::Fractional, RefWeighting::Fractional),
        (Weighting::Words, RefWeighting::Words),
    ][s.weighting];
    let cfg = WsdConfig {
        relations: rels.spec().parse().unwrap(),
        formula: f,
        top_cut: s.top_cut,
        chain_limit: s.chain_limit,
        weighting: w,
        ..WsdConfig::default()
    };
    let rcfg = RefConfig {
        rels,
        chain_limit: s.chain_limit,
        top_cut: s.top_cut,
        weighting: rw,
        formula: rf,
    };
    (cfg, rcfg)
}

/// A network of up to 100 nodes and a window of up to five words.
fn case() -> impl Strategy<Value = (RandomNet, Vec<String>)> {
    (
        any::<u64>(),
        2usize..=100,
        prop::collection::vec(any::<prop::sample::Index>(), 1..=5),
    )
        .prop_map(|(seed, nodes, picks)| {
            let r = RandomNet::generate(
                seed,
                NetShape {
                    nodes,
                    vocabulary: 8,
                    ..NetShape::default()
                },
            );
            let vocab = r.vocabulary();
            let words = picks
                .iter()
                .map(|p| vocab[p.index(vocab.len())].clone())
                .collect();
            (r, words)
        })
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn marks_match_pairwise_counting((r, words) in case(), s in setup()) {
        let net = load(&r);
        let (cfg, rcfg) = configs(s);
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let want = r.ref_marks(&refs, &rcfg);
        let marks = collect_marks(&window(&words), &cfg, &net);
        for (i, name) in r.names.iter().enumerate() {
            let got = marks.marks(net.node(&name.as_str().into()).unwrap());
            prop_assert!(close(got, want[i]), "{name}: {got} vs {}", want[i]);
        }
    }

    #[test]
    fn scores_match_the_naive_scorer((r, words) in case(), s in setup()) {
        let net = load(&r);
        let (cfg, rcfg) = configs(s);
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let want = r.ref_scores(&refs, &rcfg);
        let marks = collect_marks(&window(&words), &cfg, &net);
        let got = raw_sense_scores(&words[0], &marks, &cfg, &net).unwrap();
        prop_assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            prop_assert_eq!(net.id(g.sense).as_str(), w.sense.as_str());
            prop_assert!(close(g.raw, w.raw), "{}: {} vs {}", w.sense, g.raw, w.raw);
            prop_assert_eq!(g.best.map(|(c, _)| net.id(c).to_string()), w.best.clone());
        }

        let dist = score_senses(&words[0], &marks, &cfg, &net).unwrap();
        let total: f64 = want.iter().map(|w| w.raw).sum();
        for ((id, p), w) in dist.entries.iter().zip(&want) {
            prop_assert_eq!(id.as_str(), w.sense.as_str());
            let expected = if total > 0.0 { w.raw / total } else { 1.0 / want.len() as f64 };
            prop_assert!((p - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn distributions_are_normalized((r, words) in case(), s in setup(), abstain in any::<bool>()) {
        let net = load(&r);
        let (mut cfg, _) = configs(s);
        cfg.fallback = if abstain { Fallback::Abstain } else { Fallback::Uniform };
        let doc: Vec<Token> = words.iter().map(|w| Token::noun(w.clone())).collect();
        for t in disambiguate_document(&doc, &cfg, &net).unwrap() {
            let d = t.distribution;
            if d.abstained {
                prop_assert_eq!(d.total(), 0.0);
            } else {
                prop_assert!((d.total() - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn output_is_deterministic((r, words) in case(), s in setup()) {
        let (cfg, _) = configs(s);
        let doc: Vec<Token> = words.iter().map(|w| Token::noun(w.clone())).collect();
        let a = disambiguate_document(&doc, &cfg, &load(&r)).unwrap();
        let b = disambiguate_document(&doc, &cfg, &load(&r)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn word_marks_never_exceed_distinct_words((r, words) in case(), s in setup()) {
        let net = load(&r);
        let (mut cfg, _) = configs(s);
        cfg.weighting = Weighting::Words;
        let mut distinct = words.clone();
        distinct.sort();
        distinct.dedup();
        let marks = collect_marks(&window(&words), &cfg, &net);
        for (_, m) in marks.concepts() {
            prop_assert!(m <= distinct.len() as f64);
        }
    }

    #[test]
    fn one_word_puts_at_most_one_fractional_mark_on_a_concept((r, words) in case(), s in setup()) {
        let net = load(&r);
        let (mut cfg, _) = configs(s);
        cfg.weighting = Weighting::Fractional;
        let marks = collect_marks(&window(&words[..1]), &cfg, &net);
        for (_, m) in marks.concepts() {
            prop_assert!(m <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn one_word_puts_at_most_one_fractional_mark_per_distance_in_a_tree(seed in any::<u64>(), nodes in 2usize..=100, pick in any::<prop::sample::Index>(), l in 0u32..4) {
        let r = RandomNet::generate(seed, NetShape { nodes, vocabulary: 8, max_parents: 1, ..NetShape::default() });
        let net = load(&r);
        let vocab = r.vocabulary();
        let word = vocab[pick.index(vocab.len())].clone();
        let cfg = WsdConfig { weighting: Weighting::Fractional, chain_limit: l, ..WsdConfig::default() };
        let marks = collect_marks(&window(std::slice::from_ref(&word)), &cfg, &net);
        let senses = r.senses(&word);
        let reached: Vec<_> = senses.iter().map(|&sn| r.ancestors(sn, Rels::HYPERNYM, l, 0)).collect();
        // in a tree each sense reaches at most one concept per distance, so every
        // distance carries at most polysemy * (1 / polysemy) = 1 mark
        for per_sense in &reached {
            let mut ds: Vec<u32> = per_sense.values().copied().collect();
            ds.sort_unstable();
            prop_assert!(ds.windows(2).all(|w| w[0] != w[1]));
        }
        let total: f64 = marks.concepts().map(|(_, m)| m).sum();
        let expected: f64 = reached.iter().map(|a| a.len() as f64).sum::<f64>() / senses.len() as f64;
        prop_assert!((total - expected).abs() <= 1e-9);
        let levels = reached.iter().flat_map(|a| a.values().copied()).collect::<std::collections::BTreeSet<u32>>().len();
        prop_assert!(total <= levels as f64 + 1e-9);
    }

    #[test]
    fn scaling_raw_scores_keeps_the_distribution(raw in prop::collection::vec(0.0f64..10.0, 1..8), c in 1e-3f64..1e3) {
        let ids: Vec<_> = (0..raw.len()).map(|i| format!("s{i}").as_str().into()).collect();
        let scaled: Vec<f64> = raw.iter().map(|x| x * c).collect();
        let a = SenseDistribution::from_raw(ids.clone(), &raw, Fallback::Uniform);
        let b = SenseDistribution::from_raw(ids, &scaled, Fallback::Uniform);
        prop_assert_eq!(a.abstained, b.abstained);
        for ((_, p), (_, q)) in a.entries.iter().zip(&b.entries) {
            prop_assert!((p - q).abs() <= 1e-12);
        }
        let top = |d: &SenseDistribution| d.ranked()[0].0.clone();
        prop_assert_eq!(top(&a), top(&b));
    }
}
