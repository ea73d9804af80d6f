use std::collections::BTreeMap;

use cdwsd_core::lexicon::{
    ancestors_within, parse_compact_lexicon, LexiconError, RelationSet, RelationType,
    SemanticNetwork,
};
use cdwsd_testkit::{NetShape, RandomNet, Rels};
use proptest::prelude::*;

fn load(r: &RandomNet) -> SemanticNetwork {
    parse_compact_lexicon(r.to_compact().as_bytes()).expect("generated network loads")
}

fn relation_set(rels: Rels) -> RelationSet {
    rels.spec().parse().unwrap()
}

fn lib_ancestors(
    net: &SemanticNetwork,
    start: &str,
    rels: Rels,
    l: u32,
    k: u32,
) -> BTreeMap<String, u32> {
    let n = net.node(&start.into()).unwrap();
    ancestors_within(n, relation_set(rels), l, k, net)
        .into_iter()
        .map(|(c, d)| (net.id(c).to_string(), d))
        .collect()
}

fn shape() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=100)
}

fn generate(seed: u64, nodes: usize) -> RandomNet {
    RandomNet::generate(
        seed,
        NetShape {
            nodes,
            ..NetShape::default()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stats_match_brute_force((seed, nodes) in shape()) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for (i, want) in r.stats().iter().enumerate() {
            let got = net.stats(net.node(&r.names[i].as_str().into()).unwrap());
            prop_assert_eq!(got.descendants, want.descendants, "desc of {}", r.names[i]);
            prop_assert_eq!(got.height, want.height, "height of {}", r.names[i]);
            prop_assert_eq!(got.depth, want.depth, "depth of {}", r.names[i]);
            prop_assert_eq!(got.mean_branching, want.mean_branching, "adesc of {}", r.names[i]);
        }
    }

    #[test]
    fn descendants_count_shared_nodes_once((seed, nodes) in shape()) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for (n, _) in net.synsets() {
            let mut below: Vec<String> = net
                .neighbors(n, RelationType::Hyponym)
                .flat_map(|c| lib_ancestors(&net, net.id(c).as_str(), Rels { hypernym: false, hyponym: true, meronym: false, holonym: false }, 0, 0).into_keys())
                .collect();
            below.sort();
            below.dedup();
            prop_assert_eq!(net.stats(n).descendants as usize, 1 + below.len());
        }
    }

    #[test]
    fn unlimited_traversal_is_the_closure((seed, nodes) in shape(), rel_pick in 0usize..15) {
        let r = generate(seed, nodes);
        let net = load(&r);
        let rels = Rels::all_nonempty()[rel_pick];
        for (i, name) in r.names.iter().enumerate() {
            prop_assert_eq!(lib_ancestors(&net, name, rels, 0, 0), r.ancestors(i, rels, 0, 0));
        }
    }

    #[test]
    fn bounded_traversal_matches((seed, nodes) in shape(), rel_pick in 0usize..15, l in 0u32..5, k in 0u32..5) {
        let r = generate(seed, nodes);
        let net = load(&r);
        let rels = Rels::all_nonempty()[rel_pick];
        for (i, name) in r.names.iter().enumerate() {
            prop_assert_eq!(lib_ancestors(&net, name, rels, l, k), r.ancestors(i, rels, l, k));
        }
    }

    #[test]
    fn traversal_grows_with_chain_limit((seed, nodes) in shape(), k in 0u32..4) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for name in &r.names {
            // 0 stands for no limit, so it goes last
            let limits = [1u32, 2, 3, 5, 8, 0];
            for w in limits.windows(2) {
                let small = lib_ancestors(&net, name, Rels::HYPERNYM, w[0], k);
                let large = lib_ancestors(&net, name, Rels::HYPERNYM, w[1], k);
                prop_assert!(small.keys().all(|c| large.contains_key(c)));
            }
        }
    }

    #[test]
    fn traversal_shrinks_with_top_cut((seed, nodes) in shape(), l in 0u32..4) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for name in &r.names {
            for k in 0u32..6 {
                let wide = lib_ancestors(&net, name, Rels::HYPERNYM, l, k);
                let narrow = lib_ancestors(&net, name, Rels::HYPERNYM, l, k + 1);
                prop_assert!(narrow.keys().all(|c| wide.contains_key(c)));
            }
        }
    }

    #[test]
    fn loaded_networks_are_topologically_ordered((seed, nodes) in shape()) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for (n, _) in net.synsets() {
            for p in net.neighbors(n, RelationType::Hypernym) {
                prop_assert!(net.stats(n).depth <= net.stats(p).depth + 1);
                prop_assert!(net.stats(p).height > net.stats(n).height);
            }
        }
    }

    #[test]
    fn a_back_edge_is_rejected((seed, nodes) in (any::<u64>(), 2usize..=60)) {
        let mut r = generate(seed, nodes);
        // a child of some node becomes one of its ancestors
        let Some(child) = (1..r.len()).find(|&i| !r.parents[i].is_empty()) else {
            return Ok(());
        };
        let parent = r.parents[child][0];
        r.parents[parent].push(child);
        prop_assert!(matches!(parse_compact_lexicon(r.to_compact().as_bytes()), Err(LexiconError::Cycle(_))));
    }

    #[test]
    fn sense_order_round_trips((seed, nodes) in shape()) {
        let r = generate(seed, nodes);
        let net = load(&r);
        for lemma in r.vocabulary() {
            let want: Vec<&str> = r.senses(&lemma).into_iter().map(|i| r.names[i].as_str()).collect();
            let got: Vec<&str> = net.senses_of(&lemma).iter().map(|&n| net.id(n).as_str()).collect();
            prop_assert_eq!(got, want);
        }
    }
}
