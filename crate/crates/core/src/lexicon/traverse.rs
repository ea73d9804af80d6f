use std::collections::HashMap;

use super::{NodeId, RelationSet, SemanticNetwork};

/// Concepts reachable from `start` along `relations`, each with its minimum
/// step distance.
///
/// `(start, 0)` is part of the result unless the top cut removes it. A
/// `chain_limit` of 0 means unlimited; otherwise concepts further than
/// `chain_limit` steps are dropped. Concepts whose global depth is
/// `<= top_cut` are dropped from the output but still traversed through.
///
/// The result is in breadth-first discovery order.
pub fn ancestors_within(
    start: NodeId,
    relations: RelationSet,
    chain_limit: u32,
    top_cut: u32,
    net: &SemanticNetwork,
) -> Vec<(NodeId, u32)> {
    let mut dist: HashMap<NodeId, u32> = HashMap::new();
    let mut order = vec![(start, 0u32)];
    dist.insert(start, 0);
    let mut head = 0;
    while head < order.len() {
        let (n, d) = order[head];
        head += 1;
        if chain_limit > 0 && d >= chain_limit {
            continue;
        }
        for &(rel, t) in &net.synset(n).edges {
            if relations.contains(rel) && !dist.contains_key(&t) {
                dist.insert(t, d + 1);
                order.push((t, d + 1));
            }
        }
    }
    if top_cut > 0 {
        order.retain(|(n, _)| net.stats(*n).depth > top_cut);
    }
    order
}
