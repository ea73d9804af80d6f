//! Random networks, synthetic corpora and brute-force reference computations
//! shared by the cdwsd test suites.
//!
//! Nothing here calls into `cdwsd-core`. Networks are kept as plain
//! adjacency lists and rendered to the compact lexicon format, so the
//! library under test and the references only meet through text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relation switches, in the order hypernym, hyponym, meronym, holonym.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rels {
    pub hypernym: bool,
    pub hyponym: bool,
    pub meronym: bool,
    pub holonym: bool,
}

impl Rels {
    pub const HYPERNYM: Rels = Rels {
        hypernym: true,
        hyponym: false,
        meronym: false,
        holonym: false,
    };

    /// Same set in the `a+b` form the library parses.
    pub fn spec(self) -> String {
        let mut parts = Vec::new();
        for (on, name) in [
            (self.hypernym, "hypernym"),
            (self.hyponym, "hyponym"),
            (self.meronym, "meronym"),
            (self.holonym, "holonym"),
        ] {
            if on {
                parts.push(name);
            }
        }
        parts.join("+")
    }

    /// Every nonempty combination.
    pub fn all_nonempty() -> Vec<Rels> {
        (1u8..16)
            .map(|b| Rels {
                hypernym: b & 1 != 0,
                hyponym: b & 2 != 0,
                meronym: b & 4 != 0,
                holonym: b & 8 != 0,
            })
            .collect()
    }
}

/// A random hypernym DAG with optional meronymy edges and lemmas.
#[derive(Debug, Clone)]
pub struct RandomNet {
    pub names: Vec<String>,
    /// Hypernym parents of each node; parents always have a smaller index.
    pub parents: Vec<Vec<usize>>,
    /// Part-of edges, unconstrained (they may form cycles).
    pub meronyms: Vec<Vec<usize>>,
    pub lemmas: Vec<Vec<String>>,
    /// Order in which the nodes are written out; sense order follows it.
    pub line_order: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct NetShape {
    pub nodes: usize,
    pub vocabulary: usize,
    pub max_parents: usize,
    /// Chance that a node after the first is an extra root.
    pub root_prob: f64,
    pub meronym_prob: f64,
}

impl Default for NetShape {
    fn default() -> Self {
        NetShape {
            nodes: 40,
            vocabulary: 12,
            max_parents: 3,
            root_prob: 0.08,
            meronym_prob: 0.1,
        }
    }
}

impl RandomNet {
    pub fn generate(seed: u64, shape: NetShape) -> RandomNet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = shape.nodes.max(1);
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(&mut rng);
        let names = labels.iter().map(|l| format!("n{l:03}")).collect();

        let mut parents = vec![Vec::new(); n];
        for (i, ps) in parents.iter_mut().enumerate().skip(1) {
            if rng.gen_bool(shape.root_prob) {
                continue;
            }
            let k = rng.gen_range(1..=shape.max_parents.max(1).min(i));
            let mut pool: Vec<usize> = (0..i).collect();
            pool.shuffle(&mut rng);
            ps.extend_from_slice(&pool[..k]);
            ps.sort_unstable();
        }

        let mut meronyms = vec![Vec::new(); n];
        for (i, ms) in meronyms.iter_mut().enumerate() {
            for j in 0..n {
                if j != i && rng.gen_bool(shape.meronym_prob / n as f64 * 4.0) {
                    ms.push(j);
                }
            }
        }

        let vocab = shape.vocabulary.max(1);
        let lemmas = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..=2);
                let mut ls: Vec<String> = Vec::new();
                for _ in 0..k {
                    let w = format!("w{}", rng.gen_range(0..vocab));
                    if !ls.contains(&w) {
                        ls.push(w);
                    }
                }
                ls
            })
            .collect();

        let mut line_order: Vec<usize> = (0..n).collect();
        line_order.shuffle(&mut rng);
        RandomNet {
            names,
            parents,
            meronyms,
            lemmas,
            line_order,
        }
    }

    /// Reads a hand-written compact lexicon that uses hypernym edges only.
    pub fn from_compact(src: &str) -> RandomNet {
        let rows: Vec<Vec<&str>> = src
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| l.splitn(4, '\t').collect())
            .collect();
        let names: Vec<String> = rows.iter().map(|r| r[0].to_owned()).collect();
        let find = |n: &str| names.iter().position(|x| x == n).expect("known target");
        let parents = rows
            .iter()
            .map(|r| {
                r.get(2)
                    .unwrap_or(&"")
                    .split(';')
                    .filter(|e| !e.is_empty())
                    .map(|e| find(e.strip_prefix("hypernym:").expect("hypernym edges only")))
                    .collect()
            })
            .collect();
        let lemmas = rows
            .iter()
            .map(|r| r[1].split(',').map(str::to_owned).collect())
            .collect();
        RandomNet {
            meronyms: vec![Vec::new(); names.len()],
            line_order: (0..names.len()).collect(),
            names,
            parents,
            lemmas,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Compact lexicon text. Only hypernym and meronym edges are written;
    /// the loader adds the inverses.
    pub fn to_compact(&self) -> String {
        let mut out = String::new();
        for &i in &self.line_order {
            let mut rels: Vec<String> = self.parents[i]
                .iter()
                .map(|&p| format!("hypernym:{}", self.names[p]))
                .collect();
            rels.extend(
                self.meronyms[i]
                    .iter()
                    .map(|&m| format!("meronym:{}", self.names[m])),
            );
            let lemmas = if self.lemmas[i].is_empty() {
                format!("_{}", self.names[i])
            } else {
                self.lemmas[i].join(",")
            };
            writeln!(
                out,
                "{}\t{}\t{}\tnode {}",
                self.names[i],
                lemmas,
                rels.join(";"),
                self.names[i]
            )
            .unwrap();
        }
        out
    }

    /// Every lemma written by [`to_compact`](Self::to_compact), including
    /// the placeholder lemma of nodes generated without one.
    pub fn written_lemmas(&self, i: usize) -> Vec<String> {
        if self.lemmas[i].is_empty() {
            vec![format!("_{}", self.names[i])]
        } else {
            self.lemmas[i].clone()
        }
    }

    /// Nodes carrying `lemma`, in line order.
    pub fn senses(&self, lemma: &str) -> Vec<usize> {
        self.line_order
            .iter()
            .copied()
            .filter(|&i| self.written_lemmas(i).iter().any(|l| l == lemma))
            .collect()
    }

    /// Distinct lemmas that have at least one sense, sorted.
    pub fn vocabulary(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..self.len())
            .flat_map(|i| self.written_lemmas(i))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (i, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                ch[p].push(i);
            }
        }
        ch
    }

    /// All directed edges for the relations switched on.
    pub fn edges(&self, rels: Rels) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..self.len() {
            for &p in &self.parents[i] {
                if rels.hypernym {
                    e.push((i, p));
                }
                if rels.hyponym {
                    e.push((p, i));
                }
            }
            for &m in &self.meronyms[i] {
                if rels.meronym {
                    e.push((i, m));
                }
                if rels.holonym {
                    e.push((m, i));
                }
            }
        }
        e
    }

    /// Shortest step counts from `start` by repeated edge relaxation.
    pub fn distances(&self, start: usize, rels: Rels) -> Vec<Option<u32>> {
        let edges = self.edges(rels);
        let mut dist = vec![None; self.len()];
        dist[start] = Some(0);
        for _ in 0..self.len() {
            let mut changed = false;
            for &(a, b) in &edges {
                if let Some(da) = dist[a] {
                    if dist[b].is_none_or(|db| da + 1 < db) {
                        dist[b] = Some(da + 1);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    /// Reference for the library's bounded traversal: node name to distance.
    /// `chain_limit` 0 is unlimited; nodes with depth `<= top_cut` are
    /// dropped when `top_cut > 0`.
    pub fn ancestors(
        &self,
        start: usize,
        rels: Rels,
        chain_limit: u32,
        top_cut: u32,
    ) -> BTreeMap<String, u32> {
        self.ancestors_given(&self.stats(), start, rels, chain_limit, top_cut)
    }

    /// [`ancestors`](Self::ancestors) with the statistics computed once by the caller.
    pub fn ancestors_given(
        &self,
        stats: &[RefStats],
        start: usize,
        rels: Rels,
        chain_limit: u32,
        top_cut: u32,
    ) -> BTreeMap<String, u32> {
        self.distances(start, rels)
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (i, d)))
            .filter(|&(_, d)| chain_limit == 0 || d <= chain_limit)
            .filter(|&(i, _)| top_cut == 0 || stats[i].depth > top_cut)
            .map(|(i, d)| (self.names[i].clone(), d))
            .collect()
    }

    /// Hierarchy statistics of every node, by brute force.
    pub fn stats(&self) -> Vec<RefStats> {
        let n = self.len();
        let children = self.children();
        // reflexive reachability along hyponym edges (Warshall)
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            reach[i][i] = true;
            for &c in &children[i] {
                reach[i][c] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let row = reach[k].clone();
                    for (cell, via) in reach[i].iter_mut().zip(row) {
                        *cell |= via;
                    }
                }
            }
        }

        let mut height = vec![1u32; n];
        for _ in 0..n {
            for i in 0..n {
                for &c in &children[i] {
                    height[i] = height[i].max(height[c] + 1);
                }
            }
        }

        let mut depth: Vec<Option<u32>> = (0..n)
            .map(|i| self.parents[i].is_empty().then_some(1))
            .collect();
        for _ in 0..n {
            for i in 0..n {
                for &p in &self.parents[i] {
                    if let Some(dp) = depth[p] {
                        if depth[i].is_none_or(|di| dp + 1 < di) {
                            depth[i] = Some(dp + 1);
                        }
                    }
                }
            }
        }

        (0..n)
            .map(|i| {
                let below: Vec<usize> = (0..n).filter(|&j| reach[i][j]).collect();
                let descendants = below.len() as u32;
                let internal = below.iter().filter(|&&j| !children[j].is_empty()).count() as u32;
                RefStats {
                    descendants,
                    height: height[i],
                    depth: depth[i].expect("every node reaches a root"),
                    mean_branching: (f64::from(descendants - 1) / f64::from(internal.max(1)))
                        .max(1.0),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefStats {
    pub descendants: u32,
    pub height: u32,
    pub depth: u32,
    pub mean_branching: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefFormula {
    Sar(f64),
    Ar,
    Sdf,
    Lf,
}

/// The density formulas written as plain loops over the series terms.
pub fn ref_density(f: RefFormula, s: &RefStats, m: f64) -> f64 {
    if m <= 0.0 {
        return 0.0;
    }
    let a = s.mean_branching;
    let full = m.floor() as u32;
    let part = m - m.floor();
    let series = |exp: &dyn Fn(u32) -> f64| {
        let mut total = 0.0;
        let mut i = 0;
        while i < full {
            total += a.powf(exp(i));
            i += 1;
        }
        if part > 0.0 {
            total += part * a.powf(exp(full));
        }
        total
    };
    let mut den = 0.0;
    for i in 0..s.height {
        den += a.powf(f64::from(i));
    }
    match f {
        RefFormula::Sar(alpha) => {
            series(&|i| {
                if i == 0 {
                    0.0
                } else {
                    f64::from(i).powf(alpha)
                }
            }) / den
        }
        RefFormula::Ar => series(&|i| f64::from(i)) / den,
        RefFormula::Sdf => m / f64::from(s.descendants),
        RefFormula::Lf => {
            series(&|i| f64::from(i)) * (f64::from(s.depth) + 1.0).log2() / f64::from(s.descendants)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefWeighting {
    Synsets,
    Fractional,
    Words,
}

#[derive(Debug, Clone, Copy)]
pub struct RefConfig {
    pub rels: Rels,
    pub chain_limit: u32,
    pub top_cut: u32,
    pub weighting: RefWeighting,
    pub formula: RefFormula,
}

/// Per-sense outcome of the reference scorer.
#[derive(Debug, Clone, PartialEq)]
pub struct RefScore {
    pub sense: String,
    pub raw: f64,
    pub best: Option<String>,
}

impl RandomNet {
    /// Marks per concept for a window (target first), counted pair by pair.
    pub fn ref_marks(&self, window: &[&str], cfg: &RefConfig) -> Vec<f64> {
        let n = self.len();
        let stats = self.stats();
        let mut distinct: Vec<&str> = Vec::new();
        for w in window {
            if !distinct.contains(w) {
                distinct.push(w);
            }
        }
        (0..n)
            .map(|c| {
                let hits = |w: &str| {
                    self.senses(w)
                        .into_iter()
                        .filter(|&s| {
                            self.ancestors_given(&stats, s, cfg.rels, cfg.chain_limit, cfg.top_cut)
                                .contains_key(&self.names[c])
                        })
                        .count()
                };
                match cfg.weighting {
                    RefWeighting::Synsets => window.iter().map(|w| hits(w) as f64).sum(),
                    RefWeighting::Fractional => window
                        .iter()
                        .map(|w| {
                            let p = self.senses(w).len();
                            if p == 0 {
                                0.0
                            } else {
                                hits(w) as f64 / p as f64
                            }
                        })
                        .sum(),
                    RefWeighting::Words => distinct.iter().filter(|w| hits(w) > 0).count() as f64,
                }
            })
            .collect()
    }

    /// Densest candidate at distance >= 1 for every sense of `window[0]`.
    /// Ties go to the deeper concept, then to the smaller name.
    pub fn ref_scores(&self, window: &[&str], cfg: &RefConfig) -> Vec<RefScore> {
        let marks = self.ref_marks(window, cfg);
        let stats = self.stats();
        let index: BTreeMap<&str, usize> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        self.senses(window[0])
            .into_iter()
            .map(|s| {
                let mut best: Option<(f64, usize)> = None;
                for (name, d) in
                    self.ancestors_given(&stats, s, cfg.rels, cfg.chain_limit, cfg.top_cut)
                {
                    let c = index[name.as_str()];
                    if d == 0 || marks[c] <= 0.0 {
                        continue;
                    }
                    let dens = ref_density(cfg.formula, &stats[c], marks[c]);
                    if dens <= 0.0 {
                        continue;
                    }
                    let wins = match best {
                        None => true,
                        Some((bd, b)) => {
                            dens > bd
                                || (dens == bd
                                    && (stats[c].depth > stats[b].depth
                                        || (stats[c].depth == stats[b].depth
                                            && self.names[c] < self.names[b])))
                        }
                    };
                    if wins {
                        best = Some((dens, c));
                    }
                }
                RefScore {
                    sense: self.names[s].clone(),
                    raw: best.map_or(0.0, |b| b.0),
                    best: best.map(|b| self.names[b.1].clone()),
                }
            })
            .collect()
    }
}

/// A flat lexicon plus a corpus in the normalized TSV format.
#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub lexicon: String,
    pub corpus: String,
    /// Sum over items of |gold| / polysemy.
    pub expected_random: f64,
    /// Sum over items of p(1 - p).
    pub random_variance: f64,
    pub items: usize,
}

/// `items` noun instances spread over `docs` documents and every category.
/// Lemma `lemP_k` has polysemy P drawn from `polysemies`; gold is one sense
/// drawn uniformly, or the first sense when `gold_first`.
pub fn synthetic_corpus(
    seed: u64,
    items: usize,
    docs: usize,
    polysemies: &[usize],
    gold_first: bool,
) -> SyntheticCorpus {
    const CATEGORIES: [char; 15] = [
        'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J', 'K', 'L', 'M', 'N', 'P', 'R',
    ];
    const LEMMAS_PER_POLYSEMY: usize = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lexicon = String::from("root\troot\t\tthe top\n");
    for &p in polysemies {
        for k in 0..LEMMAS_PER_POLYSEMY {
            for s in 0..p {
                writeln!(
                    lexicon,
                    "lem{p}_{k}.{s}\tlem{p}_{k}\thypernym:root\tsense {s} of lem{p}_{k}"
                )
                .unwrap();
            }
        }
    }
    let docs = docs.max(1);
    let mut corpus = String::new();
    let (mut expected_random, mut random_variance) = (0.0, 0.0);
    for i in 0..items {
        let doc = i % docs;
        let category = CATEGORIES[doc % CATEGORIES.len()];
        let p = polysemies[rng.gen_range(0..polysemies.len())];
        let k = rng.gen_range(0..LEMMAS_PER_POLYSEMY);
        let g = if gold_first { 0 } else { rng.gen_range(0..p) };
        writeln!(
            corpus,
            "doc{doc:03}\t{category}\t{}\tlem{p}_{k}\tlem{p}_{k}.{g}",
            i / docs
        )
        .unwrap();
        let q = 1.0 / p as f64;
        expected_random += q;
        random_variance += q * (1.0 - q);
    }
    SyntheticCorpus {
        lexicon,
        corpus,
        expected_random,
        random_variance,
        items,
    }
}
