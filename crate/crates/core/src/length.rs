//! Weakly Archimedean monoids, length functions and length relations.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::ideal::{AdmissibilityReport, IdealPresentation, Quotient, Verdict};
use crate::quiver::{ArrowId, Coeff, FiniteQuiver, LinComb, Path, VertexId};

/// A length: a nonnegative rational or the symbol `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(Coeff),
    Infinity,
}

impl Length {
    pub fn zero() -> Length {
        Length::Finite(Coeff::zero())
    }

    pub fn int(n: i64) -> Length {
        Length::Finite(Coeff::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Length::Finite(x) if x.is_zero())
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => a.cmp(b),
            (Length::Finite(_), Length::Infinity) => Ordering::Less,
            (Length::Infinity, Length::Finite(_)) => Ordering::Greater,
            (Length::Infinity, Length::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(x) => write!(f, "{x}"),
            Length::Infinity => f.write_str("inf"),
        }
    }
}

/// The value systems a length can take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// `{0, 1, 2, ...}` with ordinary addition.
    Nat,
    /// Nonnegative rationals with ordinary addition.
    NonNegRational,
    /// `{0, 1, ..., n, ∞}` where sums above `n` saturate to `∞`.
    TruncatedNat(u64),
    /// `ℕ ∪ {∞}` where only sums involving `∞` are infinite.
    NonSaturatingNatInf,
    /// `ℚ≥0 ∪ {∞}` where only sums involving `∞` are infinite.
    NonSaturatingRationalInf,
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidKind::Nat => f.write_str("nat"),
            MonoidKind::NonNegRational => f.write_str("rational"),
            MonoidKind::TruncatedNat(n) => write!(f, "truncated({n})"),
            MonoidKind::NonSaturatingNatInf => f.write_str("natinf"),
            MonoidKind::NonSaturatingRationalInf => f.write_str("rationalinf"),
        }
    }
}

impl MonoidKind {
    fn integral(&self) -> bool {
        matches!(
            self,
            MonoidKind::Nat | MonoidKind::TruncatedNat(_) | MonoidKind::NonSaturatingNatInf
        )
    }

    fn has_infinity(&self) -> bool {
        !matches!(self, MonoidKind::Nat | MonoidKind::NonNegRational)
    }

    pub fn contains(&self, v: &Length) -> bool {
        match v {
            Length::Infinity => self.has_infinity(),
            Length::Finite(x) => {
                if x.is_negative() || (self.integral() && !x.is_integer()) {
                    return false;
                }
                match self {
                    MonoidKind::TruncatedNat(n) => *x <= Coeff::from_integer((*n).into()),
                    _ => true,
                }
            }
        }
    }

    pub fn add(&self, a: &Length, b: &Length) -> Length {
        match (a, b) {
            (Length::Finite(x), Length::Finite(y)) => {
                let s = x + y;
                match self {
                    MonoidKind::TruncatedNat(n) if s > Coeff::from_integer((*n).into()) => Length::Infinity,
                    _ => Length::Finite(s),
                }
            }
            _ => Length::Infinity,
        }
    }

    pub fn max_element(&self) -> Option<Length> {
        self.has_infinity().then_some(Length::Infinity)
    }

    /// `n * a` by repeated doubling.
    pub fn multiple(&self, a: &Length, n: u64) -> Length {
        let mut acc = Length::zero();
        let mut base = a.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Smallest `n <= cap` with `n * a >= b`.
    pub fn archimedean_index(&self, a: &Length, b: &Length, cap: u64) -> Option<u64> {
        if self.multiple(a, cap) < *b {
            return None;
        }
        let (mut lo, mut hi) = (0u64, cap);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.multiple(a, mid) >= *b {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// A random value of the monoid; small values dominate.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Length {
        let infinite = self.has_infinity() && rng.gen_ratio(1, 8);
        if infinite {
            return Length::Infinity;
        }
        match self {
            MonoidKind::Nat | MonoidKind::NonSaturatingNatInf => Length::int(rng.gen_range(0..50)),
            MonoidKind::TruncatedNat(n) => Length::int(rng.gen_range(0..=*n as i64)),
            MonoidKind::NonNegRational | MonoidKind::NonSaturatingRationalInf => {
                let p: i64 = rng.gen_range(0..200);
                let q: i64 = rng.gen_range(1..25);
                Length::Finite(Coeff::new(p.into(), q.into()))
            }
        }
    }

    /// `count` triples, always led by triples of the distinguished values
    /// `0`, `1` and the maximum, followed by random ones.
    pub fn sample_triples<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<[Length; 3]> {
        let mut special = vec![Length::zero(), Length::int(1)];
        if let Some(m) = self.max_element() {
            special.push(m);
        }
        let mut out = Vec::with_capacity(count);
        'outer: for a in &special {
            for b in &special {
                for c in &special {
                    if out.len() == count {
                        break 'outer;
                    }
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        while out.len() < count {
            out.push([self.sample(rng), self.sample(rng), self.sample(rng)]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub passed: bool,
    pub witness: Option<Vec<Length>>,
}

impl AxiomResult {
    fn pass() -> Self {
        AxiomResult {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<Length>) -> Self {
        AxiomResult {
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Per-axiom results: total order, positivity, cancellation up to the
/// maximum, the Archimedean property, plus the commutative monoid laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaklyArchimedeanReport {
    pub total_order: AxiomResult,
    pub positivity: AxiomResult,
    pub strict_monotonicity: AxiomResult,
    pub archimedean: AxiomResult,
    pub monoid_laws: AxiomResult,
}

impl WeaklyArchimedeanReport {
    pub fn all_pass(&self) -> bool {
        self.axioms().iter().all(|(_, a)| a.passed)
    }

    pub fn axioms(&self) -> [(&'static str, &AxiomResult); 5] {
        [
            ("axiom1_total_order", &self.total_order),
            ("axiom2_positivity", &self.positivity),
            ("axiom3_monotone", &self.strict_monotonicity),
            ("axiom4_archimedean", &self.archimedean),
            ("monoid_laws", &self.monoid_laws),
        ]
    }
}

pub fn check_weakly_archimedean(m: &MonoidKind, samples: &[[Length; 3]], n_cap: u64) -> WeaklyArchimedeanReport {
    let mut total_order = AxiomResult::pass();
    let mut positivity = AxiomResult::pass();
    let mut strict_monotonicity = AxiomResult::pass();
    let mut monoid_laws = AxiomResult::pass();
    let zero = Length::zero();
    let max = m.max_element();
    for t in samples {
        let [a, b, c] = t;
        if total_order.passed {
            if let Some(bad) = t.iter().find(|v| !m.contains(v)) {
                total_order = AxiomResult::fail(vec![bad.clone()]);
            } else {
                let ab = a.cmp(b);
                let bc = b.cmp(c);
                let transitive = !(ab != Ordering::Greater && bc != Ordering::Greater) || a <= c;
                if ab != b.cmp(a).reverse() || !transitive {
                    total_order = AxiomResult::fail(t.to_vec());
                }
            }
        }
        if positivity.passed {
            if let Some(bad) = t.iter().find(|v| **v < zero) {
                positivity = AxiomResult::fail(vec![bad.clone()]);
            }
        }
        if strict_monotonicity.passed {
            for (x, y) in [(a, b), (b, a)] {
                if x > y {
                    let (s, u) = (m.add(x, c), m.add(y, c));
                    let saturated = s == u && Some(&s) == max.as_ref();
                    if !(s > u || saturated) {
                        strict_monotonicity = AxiomResult::fail(vec![x.clone(), y.clone(), c.clone()]);
                    }
                }
            }
        }
        if monoid_laws.passed {
            let assoc = m.add(&m.add(a, b), c) == m.add(a, &m.add(b, c));
            let comm = m.add(a, b) == m.add(b, a);
            let unit = m.add(a, &zero) == *a;
            if !(assoc && comm && unit) {
                monoid_laws = AxiomResult::fail(t.to_vec());
            }
        }
    }
    // Axiom 4 over all ordered pairs of sampled values; the reported witness
    // is the smallest failing pair.
    let mut values: Vec<Length> = samples.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    let mut archimedean = AxiomResult::pass();
    for (i, lo) in values.iter().enumerate() {
        if lo.is_zero() {
            continue;
        }
        // Failure is upward closed in the larger element, so the first value
        // beyond the largest reachable multiple is the smallest witness.
        let reach = m.multiple(lo, n_cap);
        if let Some(hi) = values[i + 1..].iter().find(|hi| **hi > reach) {
            archimedean = AxiomResult::fail(vec![lo.clone(), hi.clone()]);
            break;
        }
    }
    WeaklyArchimedeanReport {
        total_order,
        positivity,
        strict_monotonicity,
        archimedean,
        monoid_laws,
    }
}

/// A split of the monoid into a lower part and a nonempty upper part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub monoid: MonoidKind,
    pub boundary: Length,
    /// When set the lower part is `[0, boundary]`, otherwise `[0, boundary)`.
    pub boundary_in_lower: bool,
}

impl Cut {
    pub fn new(monoid: MonoidKind, boundary: Length, boundary_in_lower: bool) -> Result<Self> {
        if let Length::Finite(x) = &boundary {
            if x.is_negative() {
                return Err(Error::InvalidArgument("cut boundary must be nonnegative".into()));
            }
        }
        if matches!(boundary, Length::Infinity) && !monoid.has_infinity() {
            return Err(Error::InvalidArgument(format!("{monoid} has no infinite element")));
        }
        let cut = Cut {
            monoid,
            boundary,
            boundary_in_lower,
        };
        if !cut.upper_nonempty() {
            return Err(Error::InvalidArgument("the upper part of the cut is empty".into()));
        }
        if !cut.lower_has_two() {
            return Err(Error::InvalidArgument(
                "the lower part of the cut needs at least two elements".into(),
            ));
        }
        Ok(cut)
    }

    /// Lengths strictly above `boundary` (or at it, for a closed upper part).
    pub fn in_upper(&self, v: &Length) -> bool {
        if self.boundary_in_lower {
            *v > self.boundary
        } else {
            *v >= self.boundary
        }
    }

    pub fn in_lower(&self, v: &Length) -> bool {
        !self.in_upper(v)
    }

    fn upper_nonempty(&self) -> bool {
        match self.monoid.max_element() {
            Some(top) => self.in_upper(&top),
            None => true,
        }
    }

    fn lower_has_two(&self) -> bool {
        // Beyond zero, the lower part needs its smallest positive element.
        let smallest_positive = if self.monoid.integral() {
            Length::int(1)
        } else {
            match &self.boundary {
                Length::Finite(b) if b.is_zero() => return false,
                Length::Finite(b) => Length::Finite(b / Coeff::from_integer(2.into())),
                Length::Infinity => Length::int(1),
            }
        };
        self.in_lower(&smallest_positive)
    }
}

/// Lengths of the arrows of a finite quiver.
#[derive(Clone, Debug)]
pub struct LengthAssignment {
    pub quiver: FiniteQuiver,
    pub monoid: MonoidKind,
    lengths: Vec<Length>,
}

impl LengthAssignment {
    pub fn new(quiver: FiniteQuiver, monoid: MonoidKind, lengths: Vec<Length>) -> Result<Self> {
        if lengths.len() != quiver.arrow_count() {
            return Err(Error::InvalidArgument(format!(
                "{} lengths for {} arrows",
                lengths.len(),
                quiver.arrow_count()
            )));
        }
        for (a, l) in lengths.iter().enumerate() {
            if !monoid.contains(l) {
                return Err(Error::InvalidArgument(format!(
                    "length {l} of arrow {} is not in {monoid}",
                    quiver.arrow_data(ArrowId(a)).name
                )));
            }
        }
        Ok(LengthAssignment {
            quiver,
            monoid,
            lengths,
        })
    }

    /// Every arrow gets the same length.
    pub fn constant(quiver: FiniteQuiver, monoid: MonoidKind, value: Length) -> Result<Self> {
        let lengths = vec![value; quiver.arrow_count()];
        Self::new(quiver, monoid, lengths)
    }

    pub fn arrow_length(&self, a: ArrowId) -> &Length {
        &self.lengths[a.0]
    }

    pub fn length(&self, p: &Path) -> Length {
        p.arrows()
            .iter()
            .fold(Length::zero(), |acc, a| self.monoid.add(&acc, &self.lengths[a.0]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthFunctionReport {
    pub identities_zero: bool,
    pub positive: bool,
    pub additive: bool,
    pub divisible: bool,
    /// A path violating the first failing property.
    pub witness: Option<Path>,
}

impl LengthFunctionReport {
    pub fn ok(&self) -> bool {
        self.identities_zero && self.positive && self.additive && self.divisible
    }
}

/// Upper limit on paths examined by the length-function check.
const LENGTH_SCAN_LIMIT: usize = 50_000;

fn all_paths(q: &FiniteQuiver, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for v in q.vertex_ids() {
        out.extend(q.paths_from(v, max_len));
        if out.len() > LENGTH_SCAN_LIMIT {
            out.truncate(LENGTH_SCAN_LIMIT);
            break;
        }
    }
    out
}

pub fn check_length_function(la: &LengthAssignment, degree_bound: usize) -> LengthFunctionReport {
    let q = &la.quiver;
    let mut report = LengthFunctionReport {
        identities_zero: true,
        positive: true,
        additive: true,
        divisible: true,
        witness: None,
    };
    for v in q.vertex_ids() {
        if !la.length(&q.trivial(v)).is_zero() {
            report.identities_zero = false;
            report.witness = Some(q.trivial(v));
            return report;
        }
    }
    for a in q.arrow_ids() {
        if la.arrow_length(a).is_zero() {
            report.positive = false;
            report.witness = Some(q.arrow_path(a));
            return report;
        }
    }
    let paths = all_paths(q, degree_bound);
    for p in &paths {
        for k in 0..=p.len() {
            let (g, h) = (p.subpath(q, 0, k), p.subpath(q, k, p.len()));
            if la.length(p) != la.monoid.add(&la.length(&g), &la.length(&h)) {
                report.additive = false;
                report.witness = Some(p.clone());
                return report;
            }
        }
    }
    let mut realizable: Vec<Length> = paths.iter().map(|p| la.length(p)).collect();
    realizable.sort();
    realizable.dedup();
    for f in &paths {
        let lf = la.length(f);
        if lf.is_zero() {
            continue;
        }
        let targets: Vec<Length> = match (&lf, la.monoid.integral()) {
            (Length::Finite(x), true) => {
                let top = x.to_integer();
                let mut n = num_bigint::BigInt::zero();
                let mut out = Vec::new();
                while n < top {
                    out.push(Length::Finite(Coeff::from_integer(n.clone())));
                    n += num_bigint::BigInt::one();
                }
                out
            }
            _ => realizable.iter().filter(|l| **l < lf).cloned().collect(),
        };
        let splits: Vec<(Length, Length)> = (0..=f.len())
            .map(|k| (la.length(&f.subpath(q, 0, k)), la.length(&f.subpath(q, k, f.len()))))
            .collect();
        for lambda in targets {
            if !splits.iter().any(|(g, h)| *g == lambda || *h == lambda) {
                report.divisible = false;
                report.witness = Some(f.clone());
                return report;
            }
        }
    }
    report
}

#[derive(Clone, Debug)]
pub struct LengthRelation {
    pub ideal: IdealPresentation,
    /// Minimal paths whose length falls in the upper part of the cut.
    pub generators: Vec<Path>,
    pub warning: Option<String>,
}

pub fn length_relation(la: &LengthAssignment, cut: &Cut, degree_bound: usize) -> Result<LengthRelation> {
    if la.monoid != cut.monoid {
        return Err(Error::ModelMismatch(format!(
            "assignment takes values in {} but the cut splits {}",
            la.monoid, cut.monoid
        )));
    }
    let q = &la.quiver;
    let mut generators = Vec::new();
    let mut stack: Vec<Path> = q.vertex_ids().map(|v| q.trivial(v)).collect();
    while let Some(p) = stack.pop() {
        for a in q.outgoing(p.target()) {
            let next = q.path(&[p.arrows(), &[*a]].concat()).expect("walk");
            if cut.in_upper(&la.length(&next)) {
                let rest = next.subpath(q, 1, next.len());
                if cut.in_lower(&la.length(&rest)) {
                    generators.push(next);
                }
            } else if next.len() < degree_bound {
                stack.push(next);
            }
        }
    }
    generators.sort();
    let warning = generators
        .is_empty()
        .then(|| format!("no path of length at most {degree_bound} reaches the upper part of the cut"));
    let bound = generators.iter().map(Path::len).max().unwrap_or(0).max(degree_bound);
    let ideal = IdealPresentation::new(
        q.clone(),
        generators.iter().cloned().map(LinComb::from_path).collect(),
        bound,
    )?;
    Ok(LengthRelation {
        ideal,
        generators,
        warning,
    })
}

/// Endomorphism monoid data at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: VertexId,
    /// Closed walks returning to the vertex only at their end; `None` when
    /// there are infinitely many.
    pub generators: Option<Vec<Path>>,
    /// Largest minimal multiple of a generator length that enters the upper part.
    pub n: Option<u64>,
    /// `m * N + 1`.
    pub bound: Option<u64>,
    pub end_dim: Option<usize>,
    /// Whether `end_dim <= m * N + 1` held.
    pub bound_holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct LengthCertificate {
    pub vertices: Vec<VertexCertificate>,
    /// All endomorphism monoids are finitely generated and every generator
    /// eventually enters the upper part.
    pub hypotheses_hold: bool,
    pub admissibility: AdmissibilityReport,
    /// The checker agrees with the theorem whenever its hypotheses hold.
    pub consistent: bool,
    pub relation: LengthRelation,
}

/// First-return cycles at `x`, or `None` if some walk can loop away from `x`.
#[allow(clippy::needless_range_loop)]
pub fn first_return_cycles(q: &FiniteQuiver, x: VertexId) -> Option<Vec<Path>> {
    let n = q.vertex_count();
    // Reachability inside the quiver with `x` removed.
    let mut reach = vec![vec![false; n]; n];
    for (s, row) in reach.iter_mut().enumerate() {
        if s == x.0 {
            continue;
        }
        let mut stack = vec![s];
        row[s] = true;
        while let Some(v) = stack.pop() {
            for a in q.outgoing(VertexId(v)) {
                let t = q.arrow_data(*a).target.0;
                if t != x.0 && !row[t] {
                    row[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    let enters: Vec<usize> = q
        .outgoing(x)
        .iter()
        .map(|a| q.arrow_data(*a).target.0)
        .filter(|t| *t != x.0)
        .collect();
    let exits: Vec<usize> = q
        .incoming(x)
        .iter()
        .map(|a| q.arrow_data(*a).source.0)
        .filter(|s| *s != x.0)
        .collect();
    for v in 0..n {
        if v == x.0 {
            continue;
        }
        let on_route = enters.iter().any(|&e| reach[e][v]) && exits.iter().any(|&o| reach[v][o]);
        let cyclic = q
            .outgoing(VertexId(v))
            .iter()
            .map(|a| q.arrow_data(*a).target.0)
            .any(|t| t != x.0 && reach[t][v]);
        if on_route && cyclic {
            return None;
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![q.trivial(x)];
    while let Some(p) = stack.pop() {
        for a in q.outgoing(p.target()) {
            let next = q.path(&[p.arrows(), &[*a]].concat()).expect("walk");
            if next.target() == x {
                out.push(next);
            } else if exits.iter().any(|&o| reach[next.target().0][o]) {
                stack.push(next);
            }
        }
    }
    out.sort();
    Some(out)
}

/// Largest multiple searched when looking for a generator power in the upper part.
const MULTIPLE_CAP: u64 = 1 << 20;

pub fn certify_length_admissible(
    la: &LengthAssignment,
    cut: &Cut,
    degree_bound: usize,
    cycle_cap: usize,
) -> Result<LengthCertificate> {
    let relation = length_relation(la, cut, degree_bound)?;
    let quotient = Quotient::new(relation.ideal.clone())?;
    let admissibility = quotient.admissibility(cycle_cap)?;
    let q = &la.quiver;
    let mut vertices = Vec::new();
    let mut hypotheses_hold = true;
    for x in q.vertex_ids() {
        let generators = first_return_cycles(q, x);
        let n = generators.as_ref().and_then(|gens| {
            gens.iter()
                .map(|g| first_upper_multiple(la, cut, &la.length(g)))
                .try_fold(0u64, |acc, m| m.map(|m| acc.max(m)))
        });
        if generators.is_none() || n.is_none() {
            hypotheses_hold = false;
        }
        let m = generators.as_ref().map(|g| g.len() as u64);
        let bound = m.zip(n).map(|(m, n)| m * n + 1);
        let end_dim = admissibility
            .condition2
            .end_dims
            .iter()
            .find(|(v, _)| *v == x)
            .and_then(|(_, d)| *d);
        let bound_holds = bound.zip(end_dim).map(|(b, d)| d as u64 <= b);
        vertices.push(VertexCertificate {
            vertex: x,
            generators,
            n,
            bound,
            end_dim,
            bound_holds,
        });
    }
    let consistent = !hypotheses_hold || admissibility.verdict == Verdict::Admissible;
    Ok(LengthCertificate {
        vertices,
        hypotheses_hold,
        admissibility,
        consistent,
        relation,
    })
}

/// Smallest `n >= 1` with `n * l` in the upper part.
fn first_upper_multiple(la: &LengthAssignment, cut: &Cut, l: &Length) -> Option<u64> {
    if cut.in_upper(l) {
        return Some(1);
    }
    if !cut.in_upper(&la.monoid.multiple(l, MULTIPLE_CAP)) {
        return None;
    }
    let (mut lo, mut hi) = (1u64, MULTIPLE_CAP);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cut.in_upper(&la.monoid.multiple(l, mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// A source vertex whose only arrow has infinite length, over `ℚ≥0 ∪ {∞}`
/// without saturation, cut so that only `∞` is long.
pub fn infinite_generator_fixture() -> (LengthAssignment, Cut) {
    let q = FiniteQuiver::new(["top", "x", "y"], [("w", "top", "x"), ("f", "x", "y")]).expect("fixture");
    let la = LengthAssignment::new(
        q,
        MonoidKind::NonSaturatingRationalInf,
        vec![Length::Infinity, Length::int(1)],
    )
    .expect("fixture");
    let cut = Cut::new(MonoidKind::NonSaturatingRationalInf, Length::Infinity, false).expect("fixture");
    (la, cut)
}

/// A loop of length one over `ℕ ∪ {∞}` without saturation, cut so that
/// only `∞` is long: no power of the loop ever enters the ideal.
pub fn non_saturating_loop_fixture() -> (LengthAssignment, Cut) {
    let q = FiniteQuiver::new(["v"], [("r", "v", "v")]).expect("fixture");
    let la = LengthAssignment::constant(q, MonoidKind::NonSaturatingNatInf, Length::int(1)).expect("fixture");
    let cut = Cut::new(MonoidKind::NonSaturatingNatInf, Length::Infinity, false).expect("fixture");
    (la, cut)
}
