use std::collections::VecDeque;

use super::{LexiconError, RelationType, Synset};

/// Hyponym-hierarchy statistics of one concept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConceptStats {
    /// Concepts reachable through hyponym edges, the concept itself included.
    /// Shared descendants are counted once.
    pub descendants: u32,
    /// Levels in the subhierarchy: 1 + the longest hyponym path below.
    pub height: u32,
    /// Global depth: 1 + the shortest hypernym path to any root.
    pub depth: u32,
    /// `(descendants - 1) / max(1, expanding nodes)`, floored at 1.
    pub mean_branching: f64,
}

impl ConceptStats {
    pub const LEAF_ROOT: ConceptStats = ConceptStats {
        descendants: 1,
        height: 1,
        depth: 1,
        mean_branching: 1.0,
    };

    pub fn is_leaf(&self) -> bool {
        self.descendants == 1
    }
}

pub(crate) fn mean_branching(descendants: u32, internal: u32) -> f64 {
    let raw = f64::from(descendants - 1) / f64::from(internal.max(1));
    raw.max(1.0)
}

fn targets(s: &Synset, rel: RelationType) -> impl Iterator<Item = usize> + '_ {
    s.edges
        .iter()
        .filter(move |(r, _)| *r == rel)
        .map(|(_, t)| t.index())
}

/// Topological order of the hypernym DAG, parents before children.
fn topological_order(synsets: &[Synset]) -> Result<Vec<usize>, LexiconError> {
    let n = synsets.len();
    let mut pending: Vec<usize> = synsets
        .iter()
        .map(|s| targets(s, RelationType::Hypernym).count())
        .collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for c in targets(&synsets[i], RelationType::Hyponym) {
            pending[c] -= 1;
            if pending[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&i| pending[i] > 0).unwrap_or(0);
        return Err(LexiconError::Cycle(synsets[stuck].id.clone()));
    }
    Ok(order)
}

pub(crate) fn compute_all(synsets: &[Synset]) -> Result<Vec<ConceptStats>, LexiconError> {
    let n = synsets.len();
    let order = topological_order(synsets)?;

    let mut depth = vec![1u32; n];
    for &i in &order {
        if let Some(d) = targets(&synsets[i], RelationType::Hypernym)
            .map(|p| depth[p])
            .min()
        {
            depth[i] = d + 1;
        }
    }

    let mut height = vec![1u32; n];
    for &i in order.iter().rev() {
        if let Some(h) = targets(&synsets[i], RelationType::Hyponym)
            .map(|c| height[c])
            .max()
        {
            height[i] = h + 1;
        }
    }

    let has_children: Vec<bool> = synsets
        .iter()
        .map(|s| targets(s, RelationType::Hyponym).next().is_some())
        .collect();

    // One BFS per concept; `seen` is stamped with the concept index so the
    // buffer never needs clearing.
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut stats = Vec::with_capacity(n);
    for start in 0..n {
        let mut descendants = 0u32;
        let mut internal = 0u32;
        seen[start] = start;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            descendants += 1;
            if has_children[i] {
                internal += 1;
            }
            for c in targets(&synsets[i], RelationType::Hyponym) {
                if seen[c] != start {
                    seen[c] = start;
                    queue.push_back(c);
                }
            }
        }
        stats.push(ConceptStats {
            descendants,
            height: height[start],
            depth: depth[start],
            mean_branching: mean_branching(descendants, internal),
        });
    }
    Ok(stats)
}
