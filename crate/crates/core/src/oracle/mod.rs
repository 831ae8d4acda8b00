//! Brute-force cross-checks: random diagrams, bounded move-graph search and
//! a classification sweep.

pub mod planar;
pub mod replay;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cobordism::replay_trace;
use crate::diagram::{
    least_rotation, rotated, ChordId, CompRef, Component, ComponentKind, Endpoint, GaussDiagram,
    Sign,
};
use crate::gsld::write_canonical;
use crate::invariants::{linking_vector, linking_vector_by_owner};
use crate::moves::{apply_move, apply_tracked, enumerate_moves, Calculus, EnumCaps, Lineage, Move};
use crate::normalize::equivalent;

/// A random string-link diagram: `k` chords with uniform signs, each end on
/// a uniform strand at a uniform position.
pub fn random_diagram(n: usize, k: usize, seed: u64) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with(&mut rng, n, k)
}

pub(crate) fn random_with(rng: &mut impl Rng, n: usize, k: usize) -> GaussDiagram {
    let mut seqs: Vec<Vec<Endpoint>> = vec![Vec::new(); n];
    let mut chords = BTreeMap::new();
    if n > 0 {
        for id in 1..=k as u32 {
            let c = ChordId(id);
            chords.insert(
                c,
                if rng.gen_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                },
            );
            for e in [Endpoint::tail(c), Endpoint::head(c)] {
                let s = rng.gen_range(0..n);
                let p = rng.gen_range(0..=seqs[s].len());
                seqs[s].insert(p, e);
            }
        }
    }
    let comps = seqs
        .into_iter()
        .enumerate()
        .map(|(i, e)| Component::open(i + 1, e))
        .collect();
    GaussDiagram::from_parts(n, comps, chords)
}

/// Walk `steps` random moves of `cal` from `d`.
pub fn random_walk(
    d: &GaussDiagram,
    cal: Calculus,
    steps: usize,
    caps: EnumCaps,
    seed: u64,
) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    for _ in 0..steps {
        let moves = enumerate_moves(&cur, cal, caps);
        let Some(m) = moves.choose(&mut rng) else {
            break;
        };
        cur = apply_move(&cur, m).expect("enumerated moves apply");
    }
    cur
}

/// Identity of a diagram up to chord renaming.
pub fn state_key(d: &GaussDiagram) -> String {
    write_canonical(&d.canonical_relabel())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchCaps {
    pub max_extra_chords: usize,
    pub max_closed: usize,
    /// Stop expanding once this many distinct states are known.
    pub max_states: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_extra_chords: 2,
            max_closed: 1,
            max_states: 200_000,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchReport {
    pub calculus: Calculus,
    pub explored: usize,
    pub depth_reached: usize,
    pub distinct: usize,
    /// Linking vectors seen, closed components counted towards the strand
    /// whose surface piece carries them.
    pub lk_values: BTreeSet<Vec<i64>>,
    /// Saddles skipped because they would put two strands on one surface
    /// piece, leaving the string-link cobordisms.
    pub pruned_merges: usize,
    pub truncated: bool,
    /// Depth at which each requested target was first met.
    pub targets: Vec<Option<usize>>,
}

impl SearchReport {
    pub fn lk_singleton(&self) -> bool {
        self.lk_values.len() == 1
    }

    /// Report lines followed by a `key=value` summary block.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for v in &self.lk_values {
            let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("lk ({})\n", vals.join(",")));
        }
        for (k, t) in self.targets.iter().enumerate() {
            match t {
                Some(depth) => s.push_str(&format!("target {} reached at depth {depth}\n", k + 1)),
                None => s.push_str(&format!("target {} not reached\n", k + 1)),
            }
        }
        s.push_str("[summary]\n");
        s.push_str(&format!("calculus={}\n", self.calculus));
        s.push_str(&format!("explored={}\n", self.explored));
        s.push_str(&format!("depth_reached={}\n", self.depth_reached));
        s.push_str(&format!("distinct={}\n", self.distinct));
        s.push_str(&format!("lk_values={}\n", self.lk_values.len()));
        s.push_str(&format!("lk_singleton={}\n", self.lk_singleton()));
        s.push_str(&format!("pruned_merges={}\n", self.pruned_merges));
        s.push_str(&format!("truncated={}\n", self.truncated));
        s
    }
}

/// A search state: a diagram and, per component, the strand whose surface
/// piece it lies on (`None` for pieces started by a birth).
type Keyed = ((String, String), Node);

#[derive(Clone)]
struct Node {
    d: GaussDiagram,
    owners: Vec<Option<usize>>,
}

impl Node {
    fn root(d: &GaussDiagram) -> Node {
        let owners = d
            .components()
            .iter()
            .map(|c| match c.kind {
                ComponentKind::Open(i) => Some(i),
                ComponentKind::Closed => None,
            })
            .collect();
        Node {
            d: d.clone(),
            owners,
        }
    }

    /// Diagram key plus the owner of every loop, both up to chord renaming.
    fn key(&self) -> (String, String) {
        let map = self.d.canonical_relabel_map();
        let base = write_canonical(&self.d.relabeled(&map));
        let mut loops: Vec<(Vec<Endpoint>, Option<usize>)> = self
            .d
            .components()
            .iter()
            .zip(&self.owners)
            .filter(|(c, _)| c.is_closed())
            .map(|(c, o)| {
                let seq: Vec<Endpoint> = c
                    .endpoints
                    .iter()
                    .map(|e| Endpoint {
                        chord: map[&e.chord],
                        role: e.role,
                    })
                    .collect();
                (rotated(&seq, least_rotation(&seq)), *o)
            })
            .collect();
        loops.sort();
        (base, format!("{loops:?}"))
    }

    /// Successor under `m`, or `None` when the move joins two strands'
    /// surface pieces.
    fn step(&self, m: &Move) -> Option<Node> {
        let a = apply_tracked(&self.d, m).expect("enumerated moves apply");
        let mut owners = Vec::with_capacity(a.lineage.len());
        for l in &a.lineage {
            owners.push(match *l {
                Lineage::Same(i) | Lineage::Split(i) => self.owners[i],
                Lineage::Born => None,
                Lineage::Merge(i, j) => match (self.owners[i], self.owners[j]) {
                    (Some(x), Some(y)) if x != y => return None,
                    (x, y) => x.or(y),
                },
            });
        }
        Some(Node {
            d: a.diagram,
            owners,
        })
    }
}

/// Breadth-first closure of the move graph from `d` up to `depth` moves,
/// deduplicated up to chord renaming. Frontier expansion runs in parallel;
/// new states are merged in frontier order, so the report is deterministic.
pub fn bfs_reachable(
    d: &GaussDiagram,
    cal: Calculus,
    depth: usize,
    caps: SearchCaps,
    targets: &[GaussDiagram],
) -> SearchReport {
    let enum_caps = EnumCaps {
        max_chords: d.chord_count() + caps.max_extra_chords,
        max_closed: caps.max_closed.max(d.closed_count()),
    };
    let target_keys: Vec<String> = targets.iter().map(state_key).collect();
    let mut found = vec![None; targets.len()];
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut lk_values = BTreeSet::new();
    let root = Node::root(d);
    let root_key = root.key();
    for (k, t) in target_keys.iter().enumerate() {
        if *t == root_key.0 {
            found[k] = Some(0);
        }
    }
    seen.insert(root_key);
    lk_values.insert(linking_vector_by_owner(d, &root.owners).entries().to_vec());
    let mut frontier = vec![root];
    let mut explored = 1;
    let mut depth_reached = 0;
    let mut pruned_merges = 0;
    let mut truncated = false;
    for level in 1..=depth {
        if frontier.is_empty() {
            break;
        }
        let expanded: Vec<Vec<Option<Keyed>>> = frontier
            .par_iter()
            .map(|g| {
                enumerate_moves(&g.d, cal, enum_caps)
                    .iter()
                    .map(|m| g.step(m).map(|n| (n.key(), n)))
                    .collect()
            })
            .collect();
        let mut next_frontier = Vec::new();
        for item in expanded.into_iter().flatten() {
            let Some((key, g)) = item else {
                pruned_merges += 1;
                continue;
            };
            explored += 1;
            lk_values.insert(linking_vector_by_owner(&g.d, &g.owners).entries().to_vec());
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= caps.max_states {
                truncated = true;
                continue;
            }
            for (k, t) in target_keys.iter().enumerate() {
                if found[k].is_none() && *t == key.0 {
                    found[k] = Some(level);
                }
            }
            seen.insert(key);
            next_frontier.push(g);
        }
        depth_reached = level;
        frontier = next_frontier;
    }
    SearchReport {
        calculus: cal,
        explored,
        depth_reached,
        distinct: seen.len(),
        lk_values,
        pruned_merges,
        truncated,
        targets: found,
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ClassificationReport {
    pub pairs: usize,
    pub consistent: usize,
    pub equivalent_pairs: usize,
    pub certificates_replayed: usize,
    pub failures: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.consistent == self.pairs
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for f in &self.failures {
            s.push_str(&format!("failure {f}\n"));
        }
        s.push_str("[summary]\n");
        s.push_str(&format!("pairs={}\n", self.pairs));
        s.push_str(&format!("consistent={}\n", self.consistent));
        s.push_str(&format!("equivalent_pairs={}\n", self.equivalent_pairs));
        s.push_str(&format!(
            "certificates_replayed={}\n",
            self.certificates_replayed
        ));
        s.push_str(&format!("passed={}\n", self.passed()));
        s
    }
}

/// Sampled pair: two independent diagrams, a diagram and a random unwelded
/// walk from it, or a diagram and a copy with one extra linking chord.
fn sample_pair(
    k: usize,
    n_max: usize,
    max_chords: usize,
    seed: u64,
) -> (GaussDiagram, GaussDiagram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let n = rng.gen_range(1..=n_max.max(1));
    let c1 = rng.gen_range(0..=max_chords);
    let d1 = random_with(&mut rng, n, c1);
    let d2 = match k % 3 {
        0 => {
            let c2 = rng.gen_range(0..=max_chords);
            random_with(&mut rng, n, c2)
        }
        1 => {
            let caps = EnumCaps {
                max_chords: max_chords.max(c1),
                max_closed: 0,
            };
            let walk = random_walk(&d1, Calculus::Unwelded, 6, caps, rng.gen());
            walk.canonical_relabel()
        }
        _ => {
            if n < 2 {
                let c2 = rng.gen_range(0..=max_chords);
                random_with(&mut rng, n, c2)
            } else {
                let i = rng.gen_range(1..=n);
                let j = (i % n) + 1;
                let id = d1.next_chord_id();
                let mut comps = d1.components().to_vec();
                for (s, e) in [(i, Endpoint::tail(id)), (j, Endpoint::head(id))] {
                    let ci = d1.component_index(CompRef::Strand(s)).expect("strand");
                    let p = rng.gen_range(0..=comps[ci].endpoints.len());
                    comps[ci].endpoints.insert(p, e);
                }
                let mut chords = d1.chords().clone();
                chords.insert(
                    id,
                    if rng.gen_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    },
                );
                GaussDiagram::from_parts(n, comps, chords)
            }
        }
    };
    (d1, d2)
}

fn check_pair(d1: &GaussDiagram, d2: &GaussDiagram) -> Result<(bool, usize), String> {
    let show = || format!("{}---\n{}", write_canonical(d1), write_canonical(d2));
    let lk_equal = linking_vector(d1) == linking_vector(d2);
    let mut replayed = 0;
    let mut verdicts = Vec::new();
    for cal in [Calculus::Unwelded, Calculus::Cobordism] {
        let e = equivalent(d1, d2, cal).map_err(|err| format!("{cal}: {err}\n{}", show()))?;
        if let Some(t) = &e.certificate {
            let end = replay_trace(d1, t)
                .map_err(|err| format!("{cal} certificate: {err}\n{}", show()))?;
            if !end.is_isomorphic(d2) {
                return Err(format!("{cal} certificate ends elsewhere\n{}", show()));
            }
            replay::replay_independently(d1, t)
                .map_err(|err| format!("{cal} independent replay: {err}\n{}", show()))?;
            replayed += 1;
        } else if e.difference.is_none() {
            return Err(format!(
                "{cal}: inequivalent without a differing entry\n{}",
                show()
            ));
        }
        verdicts.push(e.verdict);
    }
    if verdicts.iter().any(|&v| v != lk_equal) {
        return Err(format!(
            "verdicts {verdicts:?} vs lk equality {lk_equal}\n{}",
            show()
        ));
    }
    Ok((lk_equal, replayed))
}

/// Check that unwelded verdicts, cobordism verdicts and linking-vector
/// equality agree on sampled pairs, and that every certificate replays.
pub fn check_classification(
    samples: usize,
    n_max: usize,
    max_chords: usize,
    seed: u64,
) -> ClassificationReport {
    let results: Vec<Result<(bool, usize), String>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let (d1, d2) = sample_pair(k, n_max, max_chords, seed);
            check_pair(&d1, &d2)
        })
        .collect();
    let mut report = ClassificationReport {
        pairs: samples,
        ..Default::default()
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok((eq, replayed)) => {
                report.consistent += 1;
                report.equivalent_pairs += eq as usize;
                report.certificates_replayed += replayed;
            }
            Err(e) => report.failures.push(format!("pair {k}: {e}")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic_and_valid() {
        assert_eq!(random_diagram(3, 5, 7), random_diagram(3, 5, 7));
        assert_eq!(random_diagram(2, 0, 1), GaussDiagram::empty(2));
        for seed in 0..50 {
            let d = random_diagram(1 + (seed as usize % 4), seed as usize % 9, seed);
            assert!(d.is_valid());
            assert_eq!(d.chord_count(), seed as usize % 9);
        }
    }

    #[test]
    fn depth_zero_explores_root() {
        let d = random_diagram(2, 2, 3);
        let r = bfs_reachable(&d, Calculus::Unwelded, 0, SearchCaps::default(), &[]);
        assert_eq!((r.explored, r.distinct), (1, 1));
    }

    #[test]
    fn small_classification() {
        let r = check_classification(12, 3, 4, 11);
        assert!(r.passed(), "{}", r.render());
    }
}
