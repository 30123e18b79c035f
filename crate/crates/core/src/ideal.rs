//! Ideal presentations, quotient Hom spaces and the admissibility check.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Row};
use crate::quiver::{enumerate_paths, radical_verdict, ArrowId, FiniteQuiver, HomBasis, LinComb, Path, VertexId};
use crate::rewrite::{complete, RewriteSystem, DEFAULT_RULE_CAP};

/// Default number of cycle powers tried by the admissibility check.
pub const DEFAULT_CYCLE_CAP: usize = 64;

/// Upper limit on paths examined at a single length when the rewrite
/// system is truncated.
const PATH_SCAN_LIMIT: usize = 200_000;

/// A finite generating set of uniform relations together with the degree
/// bound used for completion.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    quiver: FiniteQuiver,
    generators: Vec<LinComb>,
    degree_bound: usize,
}

impl IdealPresentation {
    pub fn new(quiver: FiniteQuiver, generators: Vec<LinComb>, degree_bound: usize) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::InvalidPresentation(format!("generator {k} is zero")));
            }
            for p in g.terms().keys() {
                quiver.validate_path(p)?;
                if p.is_trivial() {
                    return Err(Error::InvalidPresentation(format!(
                        "generator {k} has the trivial path {} as a term",
                        quiver.path_name(p)
                    )));
                }
            }
            let d = g.degree().unwrap_or(0);
            if d > degree_bound {
                return Err(Error::InvalidPresentation(format!(
                    "generator {k} has degree {d} above the degree bound {degree_bound}"
                )));
            }
        }
        Ok(IdealPresentation {
            quiver,
            generators,
            degree_bound,
        })
    }

    /// The zero ideal.
    pub fn zero(quiver: FiniteQuiver, degree_bound: usize) -> Self {
        IdealPresentation {
            quiver,
            generators: Vec::new(),
            degree_bound,
        }
    }

    pub fn quiver(&self) -> &FiniteQuiver {
        &self.quiver
    }

    pub fn generators(&self) -> &[LinComb] {
        &self.generators
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn with_degree_bound(&self, degree_bound: usize) -> Result<Self> {
        Self::new(self.quiver.clone(), self.generators.clone(), degree_bound)
    }
}

pub fn build_rewrite_system(ideal: &IdealPresentation) -> Result<RewriteSystem> {
    build_rewrite_system_capped(ideal, DEFAULT_RULE_CAP)
}

pub fn build_rewrite_system_capped(ideal: &IdealPresentation, rule_cap: usize) -> Result<RewriteSystem> {
    complete(&ideal.quiver, &ideal.generators, ideal.degree_bound, rule_cap)
}

pub fn normal_form(f: &LinComb, rs: &RewriteSystem) -> Result<LinComb> {
    rs.normal_form(f)
}

/// The quotient category: a presentation with its completed rewrite system.
#[derive(Clone, Debug)]
pub struct Quotient {
    ideal: IdealPresentation,
    rs: RewriteSystem,
}

impl Quotient {
    pub fn new(ideal: IdealPresentation) -> Result<Self> {
        Self::with_rule_cap(ideal, DEFAULT_RULE_CAP)
    }

    pub fn with_rule_cap(ideal: IdealPresentation, rule_cap: usize) -> Result<Self> {
        let rs = build_rewrite_system_capped(&ideal, rule_cap)?;
        Ok(Quotient { ideal, rs })
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn quiver(&self) -> &FiniteQuiver {
        &self.ideal.quiver
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn degree_bound(&self) -> usize {
        self.ideal.degree_bound
    }

    pub fn normal_form(&self, f: &LinComb) -> Result<LinComb> {
        self.rs.normal_form(f)
    }

    pub fn contains(&self, f: &LinComb) -> Result<bool> {
        self.rs.is_zero(f)
    }

    pub fn contains_path(&self, p: &Path) -> Result<bool> {
        Ok(self.rs.path_normal_form(p)?.is_zero())
    }

    /// Normal-form paths `i -> j` up to the degree bound.
    pub fn hom_basis(&self, i: VertexId, j: VertexId) -> HomBasis {
        let bound = self.degree_bound();
        let (paths, truncated) = self.rs.normal_paths(self.quiver(), i, j, bound);
        HomBasis {
            source: i,
            target: j,
            dimension: paths.len(),
            paths,
            truncated_at: truncated.then_some(bound),
        }
    }

    pub fn hom_dim(&self, i: VertexId, j: VertexId) -> usize {
        self.hom_basis(i, j).dimension
    }

    /// Coordinates of a normal form in the basis of its Hom space.
    fn coordinates(&self, f: &LinComb, index: &HashMap<Path, usize>) -> Row {
        f.terms().iter().map(|(p, c)| (index[p], c.clone())).collect()
    }

    /// Radical test in the quotient; see [`crate::quiver::is_radical_morphism`].
    pub fn is_radical(&self, f: &LinComb) -> Result<bool> {
        radical_verdict(self.quiver(), f, self.degree_bound(), |g| self.normal_form(g))
    }

    /// An `N` such that every path of length `N` lies in the ideal: one past
    /// the longest path when the quiver is acyclic, otherwise the smallest
    /// such `N` up to the degree bound.
    pub fn radical_power_in_ideal(&self) -> Result<Option<usize>> {
        let q = self.quiver();
        if q.is_acyclic() {
            return Ok(Some(q.longest_simple_path() + 1));
        }
        let bound = self.degree_bound();
        if self.rs.complete {
            // Exact normal forms: a path in the ideal stays there when extended.
            let mut survivors: Vec<Path> = q.vertex_ids().map(Path::trivial).collect();
            for n in 1..=bound {
                let mut next = Vec::new();
                for p in &survivors {
                    for a in q.outgoing(p.target()) {
                        let ext = p.extended(*a, q.arrow_data(*a).target);
                        if !self.contains_path(&ext)? {
                            next.push(ext);
                        }
                    }
                }
                if next.is_empty() {
                    return Ok(Some(n));
                }
                survivors = next;
            }
            return Ok(None);
        }
        let mut frontier: Vec<Path> = q.vertex_ids().map(Path::trivial).collect();
        for n in 1..=bound {
            let mut next = Vec::new();
            for p in &frontier {
                for a in q.outgoing(p.target()) {
                    next.push(p.extended(*a, q.arrow_data(*a).target));
                }
            }
            if next.len() > PATH_SCAN_LIMIT {
                return Ok(None);
            }
            let mut all_zero = true;
            for p in &next {
                if !self.contains_path(p)? {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                return Ok(Some(n));
            }
            frontier = next;
        }
        Ok(None)
    }

    /// Looks for a closed walk all of whose powers are normal, which
    /// certifies that no power of the radical lies in the ideal.
    fn unbounded_cycle(&self) -> Option<Path> {
        if !self.rs.complete {
            return None;
        }
        let q = self.quiver();
        let search = self.degree_bound().min(8);
        let window = self.rs.max_lead_len().max(1);
        let mut best: Option<Path> = None;
        for v in q.vertex_ids() {
            let (walks, _) = self.rs.normal_paths(q, v, v, search);
            for c in walks.into_iter().filter(|c| !c.is_trivial()) {
                let reps = window.div_ceil(c.len()) + 1;
                if self.rs.is_normal_path(&c.power(reps)) {
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                    break;
                }
            }
        }
        best
    }

    /// Minimal exponent with `rho^m` in the ideal, or a periodicity proof that
    /// no power vanishes.
    fn cycle_exponent(&self, rho: &Path, cap: usize) -> Result<ExponentSearch> {
        let mut seen: HashMap<Vec<(Path, String)>, usize> = HashMap::new();
        for m in 1..=cap {
            let len = m * rho.len();
            if !self.rs.complete && len > self.degree_bound() {
                return Ok(ExponentSearch::Exhausted);
            }
            let nf = self.rs.path_normal_form(&rho.power(m))?;
            if nf.is_zero() {
                return Ok(ExponentSearch::Found(m));
            }
            if self.rs.complete {
                let key: Vec<(Path, String)> = nf.terms().iter().map(|(p, c)| (p.clone(), c.to_string())).collect();
                if seen.insert(key, m).is_some() {
                    return Ok(ExponentSearch::Periodic);
                }
            }
        }
        Ok(ExponentSearch::Exhausted)
    }

    pub fn admissibility(&self, cycle_cap: usize) -> Result<AdmissibilityReport> {
        let q = self.quiver();
        let condition1 = self.condition1()?;

        let verified_n = self.radical_power_in_ideal()?;
        let mut exponents = Vec::new();
        let mut periodic_witness = None;
        for rho in q.simple_cycle_rotations() {
            let search = self.cycle_exponent(&rho, cycle_cap)?;
            let (exponent, inferred) = match (search, verified_n) {
                (ExponentSearch::Found(m), _) => (Some(m), false),
                (_, Some(n)) => (Some(n.div_ceil(rho.len())), true),
                (ExponentSearch::Periodic, None) => {
                    periodic_witness.get_or_insert_with(|| rho.clone());
                    (None, false)
                }
                (ExponentSearch::Exhausted, None) => (None, false),
            };
            exponents.push(CycleExponent {
                cycle: rho,
                exponent,
                inferred,
            });
        }
        let end_dims = q
            .vertex_ids()
            .map(|v| {
                let b = self.hom_basis(v, v);
                let exact = b.truncated_at.is_none() || verified_n.is_some();
                (v, exact.then_some(b.dimension))
            })
            .collect();

        let (status, witness) = if verified_n.is_some() {
            (ConditionStatus::Pass, None)
        } else if let Some(c) = periodic_witness.or_else(|| self.unbounded_cycle()) {
            (ConditionStatus::Fail, Some(c))
        } else {
            (ConditionStatus::Unknown, None)
        };
        let classical_n = if exponents.iter().all(|e| e.exponent.is_some()) && status == ConditionStatus::Pass {
            let cycles = exponents
                .iter()
                .map(|e| e.exponent.unwrap() * e.cycle.len())
                .max()
                .unwrap_or(0);
            Some(cycles.max(q.longest_simple_path()).max(2))
        } else {
            None
        };
        let verdict = match (condition1.passed, status) {
            (false, _) => Verdict::NotAdmissible,
            (true, ConditionStatus::Pass) => Verdict::Admissible,
            (true, ConditionStatus::Fail) => Verdict::NotAdmissible,
            (true, ConditionStatus::Unknown) => Verdict::UnknownAtBound,
        };
        Ok(AdmissibilityReport {
            verdict,
            condition1,
            condition2: Condition2 {
                status,
                witness,
                exponents,
                verified_n,
                end_dims,
            },
            classical_n,
            degree_bound: self.degree_bound(),
        })
    }

    fn condition1(&self) -> Result<Condition1> {
        for (k, g) in self.ideal.generators.iter().enumerate() {
            if let Some(p) = g.terms().keys().find(|p| p.len() < 2) {
                return Ok(Condition1 {
                    passed: false,
                    witness: Some(Condition1Witness::ShortTerm {
                        generator: k,
                        path: p.clone(),
                    }),
                });
            }
        }
        for a in self.quiver().arrow_ids() {
            if self.contains_path(&self.quiver().arrow_path(a))? {
                return Ok(Condition1 {
                    passed: false,
                    witness: Some(Condition1Witness::ArrowInIdeal(a)),
                });
            }
        }
        Ok(Condition1 {
            passed: true,
            witness: None,
        })
    }

    /// Whether every vertex has a local endomorphism ring, so that the
    /// trivial path spans a complement of the radical.
    fn locally_nilpotent(&self) -> Result<Option<usize>> {
        self.radical_power_in_ideal()
    }

    pub fn radical_dim(&self, i: VertexId, j: VertexId) -> Result<usize> {
        let bound = self.degree_bound();
        if i == j {
            if self.locally_nilpotent()?.is_none() {
                return Err(Error::Unsupported(
                    "endomorphism ring not certified local within the degree bound".into(),
                ));
            }
            return Ok(self.hom_dim(i, i) - 1);
        }
        let b = self.hom_basis(i, j);
        if b.truncated_at.is_some() && self.locally_nilpotent()?.is_none() {
            return Err(Error::UnknownAtBound { bound });
        }
        Ok(b.dimension)
    }

    /// Connectivity of the graph joining vertices with a nonzero Hom space.
    pub fn is_connected(&self) -> bool {
        let n = self.quiver().vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.hom_dim(VertexId(i), VertexId(j)) > 0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..n)
            .map(|v| find(&mut parent, v))
            .collect::<std::collections::HashSet<_>>()
            .len()
            <= 1
    }

    /// `dim Hom(i, j)` in the quotient of this category by the ideal
    /// generated by `gens_j`, computed by reducing images modulo this ideal.
    pub fn second_quotient_dim(&self, gens_j: &[LinComb], i: VertexId, j: VertexId) -> Result<usize> {
        let q = self.quiver();
        let bound = self.degree_bound();
        let basis = self.hom_basis(i, j);
        let index: HashMap<Path, usize> = basis.paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let mut span = Echelon::new();
        for g in gens_j {
            let Some(d) = g.degree() else { continue };
            if d > bound {
                return Err(Error::InvalidPresentation(
                    "second-stage generator above the degree bound".into(),
                ));
            }
            let room = bound - d;
            let pres = enumerate_paths(q, i, g.source(), room).paths;
            for u in &pres {
                let posts = enumerate_paths(q, g.target(), j, room - u.len()).paths;
                for w in &posts {
                    let image = self.normal_form(&g.sandwich(u, w)?)?;
                    if image.terms().keys().any(|p| !index.contains_key(p)) {
                        return Err(Error::UnknownAtBound { bound });
                    }
                    span.insert(self.coordinates(&image, &index));
                }
            }
        }
        Ok(basis.dimension - span.rank())
    }
}

enum ExponentSearch {
    Found(usize),
    Periodic,
    Exhausted,
}

pub fn quotient_hom_basis(ideal: &IdealPresentation, i: VertexId, j: VertexId) -> Result<HomBasis> {
    Ok(Quotient::new(ideal.clone())?.hom_basis(i, j))
}

pub fn check_admissible(ideal: &IdealPresentation, cycle_power_cap: usize) -> Result<AdmissibilityReport> {
    Quotient::new(ideal.clone())?.admissibility(cycle_power_cap)
}

pub fn radical_dim(ideal: &IdealPresentation, i: VertexId, j: VertexId) -> Result<usize> {
    Quotient::new(ideal.clone())?.radical_dim(i, j)
}

pub fn is_connected_quotient(ideal: &IdealPresentation) -> Result<bool> {
    Ok(Quotient::new(ideal.clone())?.is_connected())
}

/// The single ideal whose quotient equals the quotient by `ideal_i` followed
/// by the ideal generated by the images of `gens_j_lifted`.
pub fn stack_ideals(ideal_i: &IdealPresentation, gens_j_lifted: &[LinComb]) -> Result<IdealPresentation> {
    let mut generators = ideal_i.generators.clone();
    let mut bound = ideal_i.degree_bound;
    for g in gens_j_lifted {
        if g.is_zero() {
            continue;
        }
        for p in g.terms().keys() {
            ideal_i.quiver.validate_path(p)?;
        }
        bound = bound.max(g.degree().unwrap_or(0));
        generators.push(g.clone());
    }
    IdealPresentation::new(ideal_i.quiver.clone(), generators, bound)
}

/// `dim Hom_{(C/I)/J}(i, j)` by reducing modulo `I` first.
pub fn double_quotient_dim(ideal_i: &IdealPresentation, gens_j: &[LinComb], i: VertexId, j: VertexId) -> Result<usize> {
    Quotient::new(ideal_i.clone())?.second_quotient_dim(gens_j, i, j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    NotAdmissible,
    UnknownAtBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Admissible => "Admissible",
            Verdict::NotAdmissible => "NotAdmissible",
            Verdict::UnknownAtBound => "UnknownAtBound",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for ConditionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionStatus::Pass => "pass",
            ConditionStatus::Fail => "fail",
            ConditionStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition1Witness {
    /// A generator with a term of length below two.
    ShortTerm { generator: usize, path: Path },
    /// An arrow lying in the ideal.
    ArrowInIdeal(ArrowId),
}

/// Every ideal element factors through morphisms outside the ideal:
/// implemented as `I` contained in the square of the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition1 {
    pub passed: bool,
    pub witness: Option<Condition1Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleExponent {
    pub cycle: Path,
    /// Minimal `m` with `cycle^m` in the ideal.
    pub exponent: Option<usize>,
    /// Set when the exponent was deduced from a vanishing radical power
    /// rather than found by direct search.
    pub inferred: bool,
}

/// Finite-dimensional endomorphism quotients, decided as nilpotency of the
/// radical modulo the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition2 {
    pub status: ConditionStatus,
    /// A closed walk none of whose powers lies in the ideal.
    pub witness: Option<Path>,
    pub exponents: Vec<CycleExponent>,
    /// Smallest `N` with every path of length `N` in the ideal.
    pub verified_n: Option<usize>,
    /// `dim End(v)` in the quotient where it is known to be exact.
    pub end_dims: Vec<(VertexId, Option<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub verdict: Verdict,
    pub condition1: Condition1,
    pub condition2: Condition2,
    /// `max(m_rho * |rho|, longest simple path)` over the exponent table.
    pub classical_n: Option<usize>,
    pub degree_bound: usize,
}

impl AdmissibilityReport {
    /// Key-value lines; the first line is the summary.
    pub fn to_kv(&self, q: &FiniteQuiver) -> Vec<String> {
        let mut first = format!("verdict={}", self.verdict);
        if let Some(n) = self.classical_n {
            first.push_str(&format!(" classical_N={n}"));
        }
        let mut lines = vec![first];
        let c1 = match &self.condition1.witness {
            None => "condition1=pass".to_string(),
            Some(Condition1Witness::ShortTerm { generator, path }) => {
                format!(
                    "condition1=fail witness_generator={generator} witness_term={}",
                    q.path_name(path)
                )
            }
            Some(Condition1Witness::ArrowInIdeal(a)) => {
                format!("condition1=fail witness_arrow={}", q.arrow_data(*a).name)
            }
        };
        lines.push(c1);
        let mut c2 = format!("condition2={}", self.condition2.status);
        if let Some(w) = &self.condition2.witness {
            c2.push_str(&format!(" witness_cycle={}", q.path_name(w)));
        }
        match self.condition2.verified_n {
            Some(n) => c2.push_str(&format!(" verified_N={n}")),
            None => c2.push_str(&format!(" verified_N=none degree_bound={}", self.degree_bound)),
        }
        lines.push(c2);
        for e in &self.condition2.exponents {
            let m = e.exponent.map_or("none".to_string(), |m| m.to_string());
            let mut line = format!("cycle={} exponent={m}", q.path_name(&e.cycle));
            if e.inferred {
                line.push_str(" inferred=true");
            }
            lines.push(line);
        }
        for (v, d) in &self.condition2.end_dims {
            let d = d.map_or("unknown".to_string(), |d| d.to_string());
            lines.push(format!("end_dim[{}]={d}", q.vertex_name(*v)));
        }
        lines
    }
}
