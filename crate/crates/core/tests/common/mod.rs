//! Independent oracles and random corpora shared by integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use quivrel_core::{int, ArrowId, Coeff, FiniteQuiver, LinComb, Path, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random quiver on `2..=max_v` vertices with `1..=max_a` arrows. With
/// `acyclic` every arrow points to a larger vertex.
pub fn random_quiver<R: Rng>(rng: &mut R, max_v: usize, max_a: usize, acyclic: bool) -> FiniteQuiver {
    let n = rng.gen_range(2..=max_v);
    let m = rng.gen_range(1..=max_a);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..m)
        .map(|k| {
            let (mut s, mut t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if acyclic {
                if s == t {
                    t = (s + 1) % n;
                }
                if s > t {
                    std::mem::swap(&mut s, &mut t);
                }
            }
            (format!("a{k}"), format!("v{s}"), format!("v{t}"))
        })
        .collect();
    FiniteQuiver::new(vertices, arrows).unwrap()
}

/// Type A quiver on `n` vertices with random orientation.
pub fn random_type_a<R: Rng>(rng: &mut R, n: usize) -> FiniteQuiver {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..n - 1)
        .map(|i| {
            let (s, t) = if rng.gen_bool(0.5) { (i, i + 1) } else { (i + 1, i) };
            (format!("a{i}"), format!("v{s}"), format!("v{t}"))
        })
        .collect();
    FiniteQuiver::new(vertices, arrows).unwrap()
}

/// Every path of length at most `max_len`, by depth-first search over
/// arrow lists.
pub fn all_paths(q: &FiniteQuiver, max_len: usize) -> Vec<Path> {
    fn go(q: &FiniteQuiver, at: VertexId, walk: &mut Vec<ArrowId>, left: usize, out: &mut Vec<Path>) {
        if left == 0 {
            return;
        }
        for a in q.arrow_ids() {
            if q.arrow_data(a).source == at {
                walk.push(a);
                out.push(q.path(walk).unwrap());
                go(q, q.arrow_data(a).target, walk, left - 1, out);
                walk.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in q.vertex_ids() {
        out.push(q.trivial(v));
        go(q, v, &mut Vec::new(), max_len, &mut out);
    }
    out
}

/// Uniform relations: each generator combines 1 to 3 distinct paths of one
/// length between one pair of vertices.
pub fn random_uniform_relations<R: Rng>(rng: &mut R, q: &FiniteQuiver, max_deg: usize, count: usize) -> Vec<LinComb> {
    let paths = all_paths(q, max_deg);
    let mut out = Vec::new();
    for _ in 0..count * 8 {
        if out.len() == count {
            break;
        }
        let d = rng.gen_range(2..=max_deg);
        let candidates: Vec<&Path> = paths.iter().filter(|p| p.len() == d).collect();
        let Some(seed) = candidates.choose(rng) else { continue };
        let mut parallel: Vec<&Path> = candidates
            .iter()
            .copied()
            .filter(|p| p.source() == seed.source() && p.target() == seed.target())
            .collect();
        parallel.shuffle(rng);
        let k = rng.gen_range(1..=parallel.len().min(3));
        let terms: Vec<(Path, Coeff)> = parallel[..k]
            .iter()
            .map(|p| {
                let mut c = rng.gen_range(-3..=2);
                if c >= 0 {
                    c += 1;
                }
                ((*p).clone(), int(c))
            })
            .collect();
        out.push(LinComb::from_terms(seed.source(), seed.target(), terms).unwrap());
    }
    out
}

/// Row-reduced span keyed by the smallest column of each row.
#[derive(Default, Clone)]
pub struct Span {
    pivots: BTreeMap<usize, BTreeMap<usize, Coeff>>,
}

impl Span {
    fn reduce(&self, mut row: BTreeMap<usize, Coeff>) -> BTreeMap<usize, Coeff> {
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, v)) = hit else { return row };
            for (c, w) in &self.pivots[&col] {
                let e = row.entry(*c).or_insert_with(Coeff::zero);
                *e -= &v * w;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    pub fn insert(&mut self, row: BTreeMap<usize, Coeff>) {
        let row = self.reduce(row);
        let Some((&col, lead)) = row.iter().next() else { return };
        let inv = Coeff::one() / lead;
        let normalized = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
        self.pivots.insert(col, normalized);
    }

    pub fn contains(&self, row: BTreeMap<usize, Coeff>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Span of all `u * g * w` of length at most `degree`, per vertex pair,
/// over the raw path list.
pub struct MacaulayOracle {
    pub degree: usize,
    pub paths: Vec<Path>,
    index: HashMap<Path, usize>,
    spans: HashMap<(VertexId, VertexId), Span>,
}

impl MacaulayOracle {
    pub fn new(q: &FiniteQuiver, gens: &[LinComb], degree: usize) -> Self {
        let paths = all_paths(q, degree);
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let mut spans: HashMap<(VertexId, VertexId), Span> = HashMap::new();
        for g in gens {
            let d = g.terms().keys().map(Path::len).max().unwrap_or(0);
            if d > degree {
                continue;
            }
            for u in paths
                .iter()
                .filter(|u| u.target() == g.source() && u.len() + d <= degree)
            {
                for w in paths
                    .iter()
                    .filter(|w| w.source() == g.target() && u.len() + d + w.len() <= degree)
                {
                    let mut row = BTreeMap::new();
                    for (p, c) in g.terms() {
                        let full = u.then(p).unwrap().then(w).unwrap();
                        *row.entry(index[&full]).or_insert_with(Coeff::zero) += c;
                    }
                    row.retain(|_, v: &mut Coeff| !v.is_zero());
                    spans.entry((u.source(), w.target())).or_default().insert(row);
                }
            }
        }
        MacaulayOracle {
            degree,
            paths,
            index,
            spans,
        }
    }

    pub fn contains_path(&self, p: &Path) -> bool {
        let row = BTreeMap::from([(self.index[p], Coeff::one())]);
        self.spans
            .get(&(p.source(), p.target()))
            .is_some_and(|s| s.contains(row))
    }

    pub fn rank(&self, i: VertexId, j: VertexId) -> usize {
        self.spans.get(&(i, j)).map_or(0, Span::rank)
    }

    pub fn path_count(&self, i: VertexId, j: VertexId, nontrivial: bool) -> usize {
        self.paths
            .iter()
            .filter(|p| p.source() == i && p.target() == j && !(nontrivial && p.is_trivial()))
            .count()
    }

    /// Paths of length at most `degree` minus the relation span.
    pub fn quotient_dim(&self, i: VertexId, j: VertexId) -> usize {
        self.path_count(i, j, false) - self.rank(i, j)
    }

    /// Smallest `N <= degree` with every path of length `N` in the span.
    pub fn nilpotency(&self) -> Option<usize> {
        (1..=self.degree).find(|&n| {
            self.paths
                .iter()
                .filter(|p| p.len() == n)
                .all(|p| self.contains_path(p))
        })
    }
}

/// The textbook test: generators inside `Rad^2`, and some `Rad^N` inside
/// the ideal. `None` when neither holds nor fails within the degree.
pub fn classical_verdict(gens: &[LinComb], oracle: &MacaulayOracle) -> Option<bool> {
    if gens.iter().any(|g| g.terms().keys().any(|p| p.len() < 2)) {
        return Some(false);
    }
    oracle.nilpotency().map(|_| true)
}

/// `A^0 + ... + A^k` entries for the adjacency matrix `A`.
pub fn adjacency_path_counts(q: &FiniteQuiver, k: usize) -> Vec<Vec<u64>> {
    let n = q.vertex_count();
    let mut adj = vec![vec![0u64; n]; n];
    for a in q.arrow_ids() {
        let d = q.arrow_data(a);
        adj[d.source.0][d.target.0] += 1;
    }
    let mut power: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut total = power.clone();
    for _ in 0..k {
        let next: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|m| power[i][m] * adj[m][j]).sum()).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                total[i][j] += next[i][j];
            }
        }
        power = next;
    }
    total
}
