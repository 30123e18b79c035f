//! Finite quivers, paths and their k-linear categorification.
//!
//! Paths are stored source-to-target: the arrow list `[a1, a2]` is the walk
//! that first takes `a1` and then `a2`. When printed, composition is written
//! right-to-left, so the same path renders as `a2*a1`.
//!
//! Morphisms between indecomposables are [`LinComb`]s: finite linear
//! combinations of parallel paths with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field.
pub type Coeff = BigRational;

/// `n / d` as a coefficient.
pub fn rat(n: i64, d: i64) -> Coeff {
    BigRational::new(n.into(), d.into())
}

/// The integer `n` as a coefficient.
pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with declared vertex and arrow orders.
///
/// Declaration order is significant: it seeds the monomial order on paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl FiniteQuiver {
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut quiver = FiniteQuiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
            outgoing: Vec::new(),
            incoming: Vec::new(),
        };
        for v in vertices {
            let name = v.into();
            if quiver.vertex_index.contains_key(&name) {
                return Err(Error::DuplicateVertex(name));
            }
            quiver
                .vertex_index
                .insert(name.clone(), VertexId(quiver.vertices.len()));
            quiver.vertices.push(name);
            quiver.outgoing.push(Vec::new());
            quiver.incoming.push(Vec::new());
        }
        for (name, s, t) in arrows {
            let name = name.into();
            let (s, t) = (s.into(), t.into());
            if quiver.arrow_index.contains_key(&name) {
                return Err(Error::DuplicateArrow(name));
            }
            let source = quiver.vertex(&s).ok_or(Error::UnknownVertex(s))?;
            let target = quiver.vertex(&t).ok_or(Error::UnknownVertex(t))?;
            let id = ArrowId(quiver.arrows.len());
            quiver.arrow_index.insert(name.clone(), id);
            quiver.arrows.push(Arrow { name, source, target });
            quiver.outgoing[source.0].push(id);
            quiver.incoming[target.0].push(id);
        }
        Ok(quiver)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_data(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    /// The trivial path at `v`.
    pub fn trivial(&self, v: VertexId) -> Path {
        Path::trivial(v)
    }

    /// The length-one path of an arrow.
    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = &self.arrows[a.0];
        Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows listed in walking order (source first).
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty arrow list; use `trivial`".into()))?;
        let mut path = self.arrow_path(*first);
        for a in &arrows[1..] {
            let arrow = &self.arrows[a.0];
            if arrow.source != path.target {
                return Err(Error::CompositionUndefined(format!(
                    "arrow {} starts at {} but the walk is at {}",
                    arrow.name,
                    self.vertex_name(arrow.source),
                    self.vertex_name(path.target)
                )));
            }
            path.arrows.push(*a);
            path.target = arrow.target;
        }
        Ok(path)
    }

    /// Builds a path from arrow names written in the right-to-left
    /// composition convention, e.g. `["a2", "a1"]` for `a2*a1`.
    pub fn path_by_names(&self, names_right_to_left: &[&str]) -> Result<Path> {
        let mut ids = Vec::with_capacity(names_right_to_left.len());
        for name in names_right_to_left.iter().rev() {
            ids.push(self.arrow(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?);
        }
        self.path(&ids)
    }

    /// Vertex visited after `k` steps of `path` (position 0 is the source).
    pub fn vertex_at(&self, path: &Path, k: usize) -> VertexId {
        if k == 0 {
            path.source
        } else {
            self.arrows[path.arrows[k - 1].0].target
        }
    }

    /// Checks that a path is a genuine walk in this quiver.
    pub fn validate_path(&self, path: &Path) -> Result<()> {
        if path.source.0 >= self.vertex_count() || path.target.0 >= self.vertex_count() {
            return Err(Error::InvalidArgument("path endpoint outside the quiver".into()));
        }
        if path.arrows.is_empty() {
            if path.source != path.target {
                return Err(Error::InvalidArgument("trivial path with distinct endpoints".into()));
            }
            return Ok(());
        }
        let mut at = path.source;
        for a in &path.arrows {
            let arrow = self
                .arrows
                .get(a.0)
                .ok_or_else(|| Error::InvalidArgument("arrow outside the quiver".into()))?;
            if arrow.source != at {
                return Err(Error::CompositionUndefined(format!(
                    "arrow {} is not composable",
                    arrow.name
                )));
            }
            at = arrow.target;
        }
        if at != path.target {
            return Err(Error::InvalidArgument("path target does not match its arrows".into()));
        }
        Ok(())
    }

    /// Renders a path with right-to-left composition (`a2*a1`, `e_1`).
    pub fn path_name(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            return format!("e_{}", self.vertex_name(path.source));
        }
        path.arrows
            .iter()
            .rev()
            .map(|a| self.arrows[a.0].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders a linear combination, largest term first.
    pub fn lincomb_name(&self, f: &LinComb) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in f.terms().iter().rev().enumerate() {
            let negative = c < &Coeff::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&self.path_name(p));
        }
        out
    }

    /// `reach[i][j]` is true iff some walk (possibly trivial) goes from i to j.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![i];
            row[i] = true;
            while let Some(v) = stack.pop() {
                for a in &self.outgoing[v] {
                    let t = self.arrows[a.0].target.0;
                    if !row[t] {
                        row[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        reach
    }

    /// Vertices lying on some oriented cycle.
    pub fn cyclic_vertices(&self) -> Vec<bool> {
        let reach = self.reachability();
        (0..self.vertex_count())
            .map(|v| self.outgoing[v].iter().any(|a| reach[self.arrows[a.0].target.0][v]))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        !self.cyclic_vertices().into_iter().any(|c| c)
    }

    /// True iff some i→j walk can pass through an oriented cycle, so that
    /// the i→j paths are infinitely many.
    pub fn has_cycle_between(&self, i: VertexId, j: VertexId) -> bool {
        let reach = self.reachability();
        let cyclic = self.cyclic_vertices();
        (0..self.vertex_count()).any(|v| cyclic[v] && reach[i.0][v] && reach[v][j.0])
    }

    /// All simple cycles, one rotation per cycle: each is returned starting
    /// and ending at its smallest vertex.
    pub fn simple_cycles(&self) -> Vec<Path> {
        let mut cycles = Vec::new();
        for start in 0..self.vertex_count() {
            let mut on_path = vec![false; self.vertex_count()];
            let mut arrows = Vec::new();
            self.cycle_search(start, start, &mut on_path, &mut arrows, &mut cycles);
        }
        cycles.sort();
        cycles
    }

    fn cycle_search(
        &self,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        arrows: &mut Vec<ArrowId>,
        out: &mut Vec<Path>,
    ) {
        on_path[at] = true;
        for a in &self.outgoing[at] {
            let t = self.arrows[a.0].target.0;
            if t == start {
                arrows.push(*a);
                out.push(Path {
                    source: VertexId(start),
                    target: VertexId(start),
                    arrows: arrows.clone(),
                });
                arrows.pop();
            } else if t > start && !on_path[t] {
                arrows.push(*a);
                self.cycle_search(start, t, on_path, arrows, out);
                arrows.pop();
            }
        }
        on_path[at] = false;
    }

    /// Every rotation of every simple cycle, each as a cycle at its own base vertex.
    pub fn simple_cycle_rotations(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for cycle in self.simple_cycles() {
            let len = cycle.len();
            for shift in 0..len {
                let arrows: Vec<ArrowId> = (0..len).map(|k| cycle.arrows[(shift + k) % len]).collect();
                let base = self.arrows[arrows[0].0].source;
                out.push(Path {
                    source: base,
                    target: base,
                    arrows,
                });
            }
        }
        out
    }

    /// Length of the longest path that never revisits a vertex.
    pub fn longest_simple_path(&self) -> usize {
        fn go(q: &FiniteQuiver, at: usize, seen: &mut [bool]) -> usize {
            seen[at] = true;
            let mut best = 0;
            for a in &q.outgoing[at] {
                let t = q.arrows[a.0].target.0;
                if !seen[t] {
                    best = best.max(1 + go(q, t, seen));
                }
            }
            seen[at] = false;
            best
        }
        let mut seen = vec![false; self.vertex_count()];
        (0..self.vertex_count())
            .map(|v| go(self, v, &mut seen))
            .max()
            .unwrap_or(0)
    }

    /// All paths of length at most `max_len` starting at `from`.
    pub fn paths_from(&self, from: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(from)];
        let mut frontier = vec![Path::trivial(from)];
        for _ in 0..max_len {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                for a in &self.outgoing[p.target.0] {
                    next.push(p.extended(*a, self.arrows[a.0].target));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All paths of length exactly `len`, over all start vertices.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut frontier: Vec<Path> = self.vertex_ids().map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in &self.outgoing[p.target.0] {
                    next.push(p.extended(*a, self.arrows[a.0].target));
                }
            }
            frontier = next;
        }
        frontier
    }
}

/// A walk in a quiver; the empty arrow list is the trivial path `e_source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Arrows in walking order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub(crate) fn extended(&self, a: ArrowId, new_target: VertexId) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target: new_target,
            arrows,
        }
    }

    /// `next ∘ self`: walk `self`, then `next`.
    pub fn then(&self, next: &Path) -> Result<Path> {
        if self.target != next.source {
            return Err(Error::CompositionUndefined(format!(
                "target {:?} does not match source {:?}",
                self.target, next.source
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Ok(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// Subpath covering steps `from..to`; its endpoints are read off the quiver.
    pub fn subpath(&self, quiver: &FiniteQuiver, from: usize, to: usize) -> Path {
        Path {
            source: quiver.vertex_at(self, from),
            target: quiver.vertex_at(self, to),
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    /// Positions at which `needle`'s arrows occur contiguously in `self`.
    pub fn occurrences(&self, needle: &[ArrowId]) -> impl Iterator<Item = usize> + '_ {
        let n = needle.len();
        let needle = needle.to_vec();
        (0..=self.arrows.len().saturating_sub(n))
            .filter(move |&i| n > 0 && n <= self.arrows.len() && self.arrows[i..i + n] == needle[..])
    }

    /// Replaces steps `at..at+len` with `middle` (which must fit the gap).
    pub(crate) fn splice(&self, at: usize, len: usize, middle: &Path) -> Path {
        let mut arrows = Vec::with_capacity(self.arrows.len() - len + middle.arrows.len());
        arrows.extend_from_slice(&self.arrows[..at]);
        arrows.extend_from_slice(&middle.arrows);
        arrows.extend_from_slice(&self.arrows[at + len..]);
        Path {
            source: self.source,
            target: self.target,
            arrows,
        }
    }

    /// `self` repeated `n` times; `self` must be a cycle.
    pub fn power(&self, n: usize) -> Path {
        debug_assert_eq!(self.source, self.target);
        let mut arrows = Vec::with_capacity(self.arrows.len() * n);
        for _ in 0..n {
            arrows.extend_from_slice(&self.arrows);
        }
        Path {
            source: self.source,
            target: self.target,
            arrows,
        }
    }
}

/// Degree first, then lexicographic on arrows in walking order.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `q ∘ p`: defined when `p` ends where `q` starts.
pub fn compose_paths(p: &Path, q: &Path) -> Result<Path> {
    p.then(q)
}

/// A morphism between two indecomposables: a linear combination of
/// parallel paths. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb {
    source: VertexId,
    target: VertexId,
    terms: BTreeMap<Path, Coeff>,
}

impl LinComb {
    pub fn zero(source: VertexId, target: VertexId) -> LinComb {
        LinComb {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(path: Path) -> LinComb {
        Self::term(path, Coeff::one())
    }

    pub fn term(path: Path, coeff: Coeff) -> LinComb {
        let mut f = LinComb::zero(path.source, path.target);
        f.add_term(path, coeff).expect("endpoints match by construction");
        f
    }

    pub fn from_terms<I>(source: VertexId, target: VertexId, terms: I) -> Result<LinComb>
    where
        I: IntoIterator<Item = (Path, Coeff)>,
    {
        let mut f = LinComb::zero(source, target);
        for (p, c) in terms {
            f.add_term(p, c)?;
        }
        Ok(f)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<Path, Coeff> {
        &self.terms
    }

    pub fn coeff(&self, p: &Path) -> Coeff {
        self.terms.get(p).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Path, coeff: Coeff) -> Result<()> {
        if path.source != self.source || path.target != self.target {
            return Err(Error::CompositionUndefined(
                "term is not parallel to the linear combination".into(),
            ));
        }
        add_into(&mut self.terms, path, coeff);
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> LinComb {
        if c.is_zero() {
            return LinComb::zero(self.source, self.target);
        }
        LinComb {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(p, d)| (p.clone(), d * c)).collect(),
        }
    }

    /// Length of the longest term; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Path::len)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    /// The monomial-order largest term.
    pub fn leading(&self) -> Option<(&Path, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> LinComb {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// `next ∘ self`, expanded bilinearly.
    pub fn then(&self, next: &LinComb) -> Result<LinComb> {
        if self.target != next.source {
            return Err(Error::CompositionUndefined(
                "target of the first morphism differs from the source of the second".into(),
            ));
        }
        let mut out = LinComb::zero(self.source, next.target);
        for (p, c) in &self.terms {
            for (q, d) in &next.terms {
                add_into(&mut out.terms, p.then(q)?, c * d);
            }
        }
        Ok(out)
    }

    /// `pre` then `self` then `post`, each a path.
    pub fn sandwich(&self, pre: &Path, post: &Path) -> Result<LinComb> {
        if pre.target != self.source || self.target != post.source {
            return Err(Error::CompositionUndefined("sandwich endpoints do not match".into()));
        }
        let mut out = LinComb::zero(pre.source, post.target);
        for (p, c) in &self.terms {
            let full = pre.then(p)?.then(post)?;
            add_into(&mut out.terms, full, c.clone());
        }
        Ok(out)
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<Path, Coeff>, path: Path, coeff: Coeff) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(path) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// `g ∘ f`.
pub fn compose_lincombs(f: &LinComb, g: &LinComb) -> Result<LinComb> {
    f.then(g)
}

/// A basis of a (possibly truncated) Hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: VertexId,
    pub target: VertexId,
    pub paths: Vec<Path>,
    pub dimension: usize,
    /// Set when more basis paths may exist beyond this degree.
    pub truncated_at: Option<usize>,
}

impl fmt::Display for HomBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim={}", self.dimension)?;
        if let Some(d) = self.truncated_at {
            write!(f, " truncated_at={d}")?;
        }
        Ok(())
    }
}

/// All paths i→j of length at most `max_len`, in monomial order.
pub fn enumerate_paths(q: &FiniteQuiver, i: VertexId, j: VertexId, max_len: usize) -> HomBasis {
    let reach = q.reachability();
    let mut paths = Vec::new();
    let mut frontier = vec![Path::trivial(i)];
    for step in 0..=max_len {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for p in frontier {
            if p.target == j {
                paths.push(p.clone());
            }
            if step == max_len {
                continue;
            }
            for a in q.outgoing(p.target) {
                let t = q.arrow_data(*a).target;
                if reach[t.0][j.0] {
                    next.push(p.extended(*a, t));
                }
            }
        }
        frontier = next;
    }
    paths.sort();
    let truncated_at = q.has_cycle_between(i, j).then_some(max_len);
    HomBasis {
        source: i,
        target: j,
        dimension: paths.len(),
        paths,
        truncated_at,
    }
}

/// Decides whether an endomorphism or morphism of indecomposables is a
/// non-isomorphism in the free categorification.
///
/// For `source != target` every morphism is radical. For endomorphisms the
/// trivial-path coefficient decides: zero means radical; otherwise `f` is
/// invertible exactly when the remainder is nilpotent, which is searched
/// up to `degree_bound`.
pub fn is_radical_morphism(q: &FiniteQuiver, f: &LinComb, degree_bound: usize) -> Result<bool> {
    radical_verdict(q, f, degree_bound, |g| Ok(g.clone()))
}

/// Shared radical test; `reduce` maps a morphism to its class representative.
pub(crate) fn radical_verdict<F>(q: &FiniteQuiver, f: &LinComb, degree_bound: usize, reduce: F) -> Result<bool>
where
    F: Fn(&LinComb) -> Result<LinComb>,
{
    if f.source() != f.target() {
        return Ok(true);
    }
    let e = q.trivial(f.source());
    let unit = f.coeff(&e);
    if unit.is_zero() {
        return Ok(true);
    }
    let remainder = f.sub(&LinComb::term(e, unit))?;
    let remainder = reduce(&remainder)?;
    if remainder.is_zero() {
        return Ok(false);
    }
    let mut power = remainder.clone();
    loop {
        match power.min_degree() {
            None => return Ok(false),
            Some(d) if d > degree_bound => return Err(Error::UnknownAtBound { bound: degree_bound }),
            Some(_) => {}
        }
        power = reduce(&power.then(&remainder)?)?;
        if power.is_zero() {
            return Ok(false);
        }
    }
}
