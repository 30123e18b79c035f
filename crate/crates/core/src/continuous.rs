//! Parametric continuous and semi-continuous quivers.
//!
//! Hom spaces in these models are spanned by at most countably many
//! "paths", and every relation considered is monomial, so the quotient Hom
//! dimension is a count of surviving paths. Each model evaluates that count
//! in closed form at exact rational coordinates.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{IdealPresentation, Quotient, Verdict};
use crate::quiver::{int, Coeff, FiniteQuiver, LinComb, VertexId};

/// Dimension of a quotient Hom space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HomDim {
    Finite(u64),
    Infinite,
}

impl HomDim {
    pub fn is_zero(&self) -> bool {
        *self == HomDim::Finite(0)
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Finite(n) => write!(f, "{n}"),
            HomDim::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiVariant {
    /// `[0,100]` with one arrow `alpha: -1 -> 0`.
    Q,
    /// `Q` plus `beta: 0 -> -1`.
    QPlus,
}

/// Circumferences of the circles of a wedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Circumferences {
    Constant(Coeff),
    /// `c0 * q^n` for the `n`-th circle.
    Geometric {
        c0: Coeff,
        q: Coeff,
    },
    /// Explicit list; only meaningful for a finite index set.
    Table(Vec<Coeff>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContinuousModel {
    RealLine,
    /// Two real lines glued at `0 = 0'`.
    CrossingLines,
    CyclicCircle {
        c: Coeff,
    },
    /// The half line `R<=0` with the `n`-th circle, of circumference
    /// `c0 * q^n`, glued at `-n`.
    GluedCircleChain {
        c0: Coeff,
        q: Coeff,
    },
    BigWedge {
        circumferences: Circumferences,
        index_set: IndexSet,
    },
    PlaneGrid,
    SemiContinuousInterval(SemiVariant),
}

impl ContinuousModel {
    pub fn name(&self) -> &'static str {
        match self {
            ContinuousModel::RealLine => "realline",
            ContinuousModel::CrossingLines => "crossing",
            ContinuousModel::CyclicCircle { .. } => "circle",
            ContinuousModel::GluedCircleChain { .. } => "chain",
            ContinuousModel::BigWedge { .. } => "wedge",
            ContinuousModel::PlaneGrid => "plane",
            ContinuousModel::SemiContinuousInterval(_) => "semicts",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what: &str, v: &Coeff| {
            if v.is_positive() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{what} must be positive, got {v}")))
            }
        };
        let ratio = |q: &Coeff| {
            if q.is_positive() && *q < Coeff::one() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("ratio must lie in (0,1), got {q}")))
            }
        };
        match self {
            ContinuousModel::CyclicCircle { c } => positive("circumference", c),
            ContinuousModel::GluedCircleChain { c0, q } => {
                positive("base circumference", c0)?;
                ratio(q)
            }
            ContinuousModel::BigWedge {
                circumferences,
                index_set,
            } => match circumferences {
                Circumferences::Constant(c) => positive("circumference", c),
                Circumferences::Geometric { c0, q } => {
                    positive("base circumference", c0)?;
                    ratio(q)
                }
                Circumferences::Table(cs) => {
                    for c in cs {
                        positive("circumference", c)?;
                    }
                    match index_set {
                        IndexSet::Finite(n) if *n == cs.len() => Ok(()),
                        _ => Err(Error::InvalidArgument(
                            "a circumference table needs a finite index set of the same size".into(),
                        )),
                    }
                }
            },
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    Finite(BTreeSet<Coeff>),
    /// All integer multiples of a positive rational.
    Progression(Coeff),
}

impl PointSet {
    pub fn integers() -> PointSet {
        PointSet::Progression(Coeff::one())
    }

    /// Some point lies strictly between `x` and `y`.
    pub fn hits_open(&self, x: &Coeff, y: &Coeff) -> bool {
        match self {
            PointSet::Finite(s) => s.range(x.clone()..y.clone()).any(|p| p > x),
            PointSet::Progression(r) => {
                let next = ((x / r).floor() + Coeff::one()) * r;
                next < *y
            }
        }
    }
}

/// Kills every path whose length exceeds `bound`; with `strict == false`
/// a path of length exactly `bound` is killed too.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthCut {
    pub bound: Coeff,
    pub strict: bool,
}

impl LengthCut {
    pub fn new(bound: Coeff, strict: bool) -> Result<Self> {
        if !bound.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "cut length must be positive, got {bound}"
            )));
        }
        Ok(LengthCut { bound, strict })
    }

    pub fn survives(&self, len: &Coeff) -> bool {
        if self.strict {
            *len <= self.bound
        } else {
            *len < self.bound
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kupisch {
    Constant(Coeff),
    /// Values on consecutive equal-width pieces of one period.
    Piecewise(Vec<Coeff>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedgeRelations {
    None,
    Only(BTreeSet<usize>),
    AllExcept(BTreeSet<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationConfig {
    pub point_set: Option<PointSet>,
    pub length_cut: Option<LengthCut>,
    pub kupisch: Option<Kupisch>,
    /// Whether a path of length exactly the Kupisch constant survives.
    pub kupisch_keeps_boundary: bool,
    pub wedge_point_relations: Option<WedgeRelations>,
    pub appendix_mode: bool,
}

impl RelationConfig {
    pub fn empty() -> Self {
        RelationConfig {
            kupisch_keeps_boundary: true,
            ..Default::default()
        }
    }

    pub fn with_points(mut self, s: PointSet) -> Self {
        self.point_set = Some(s);
        self
    }

    pub fn with_cut(mut self, cut: LengthCut) -> Self {
        self.length_cut = Some(cut);
        self
    }

    pub fn with_kupisch(mut self, a: Coeff) -> Self {
        self.kupisch = Some(Kupisch::Constant(a));
        self
    }

    pub fn with_wedge(mut self, w: WedgeRelations) -> Self {
        self.wedge_point_relations = Some(w);
        self
    }

    pub fn with_appendix(mut self) -> Self {
        self.appendix_mode = true;
        self
    }

    /// Rejects fields the model does not interpret.
    pub fn check_against(&self, model: &ContinuousModel) -> Result<()> {
        let name = model.name();
        let deny = |set: bool, field: &str| {
            if set {
                Err(Error::ModelMismatch(format!("`{field}` is not meaningful for {name}")))
            } else {
                Ok(())
            }
        };
        let (points, cut, kupisch, wedge, appendix) = match model {
            ContinuousModel::RealLine => (true, true, false, false, false),
            ContinuousModel::CrossingLines => (true, true, false, false, false),
            ContinuousModel::CyclicCircle { .. } => (true, false, true, false, false),
            ContinuousModel::GluedCircleChain { .. } => (false, true, false, false, false),
            ContinuousModel::BigWedge { .. } => (false, true, false, true, false),
            ContinuousModel::PlaneGrid => (false, false, false, false, false),
            ContinuousModel::SemiContinuousInterval(_) => (false, false, false, false, true),
        };
        deny(!points && self.point_set.is_some(), "points")?;
        deny(!cut && self.length_cut.is_some(), "cut")?;
        deny(!kupisch && self.kupisch.is_some(), "kupisch")?;
        deny(!wedge && self.wedge_point_relations.is_some(), "wedge relations")?;
        deny(!appendix && self.appendix_mode, "appendix")?;
        if let ContinuousModel::CrossingLines = model {
            if let Some(s) = &self.point_set {
                let only_zero = matches!(s, PointSet::Finite(set) if set.iter().all(Zero::is_zero));
                if !only_zero {
                    return Err(Error::ModelMismatch(
                        "crossing lines carry point relations only at 0".into(),
                    ));
                }
            }
        }
        if let (ContinuousModel::CyclicCircle { .. }, Some(PointSet::Progression(_))) = (model, &self.point_set) {
            return Err(Error::ModelMismatch("circle point sets must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// The unprimed line.
    R,
    RPrime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointCoord {
    /// A position on the real line, or on `[0,100]` (with `-1` the discrete
    /// vertex) for the semi-continuous models.
    Real(Coeff),
    Crossing(Branch, Coeff),
    /// Arc position in `[0, c)`.
    Arc(Coeff),
    /// A point of the half line of a circle chain.
    ChainLine(Coeff),
    /// Arc position on circle `n` of a chain; position 0 is glued to `-n`.
    ChainArc(usize, Coeff),
    Plane(Coeff, Coeff),
}

impl fmt::Display for PointCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointCoord::Real(x) | PointCoord::Arc(x) | PointCoord::ChainLine(x) => write!(f, "{x}"),
            PointCoord::Crossing(Branch::R, x) => write!(f, "R:{x}"),
            PointCoord::Crossing(Branch::RPrime, x) => write!(f, "R':{x}"),
            PointCoord::ChainArc(n, x) => write!(f, "C{n}:{x}"),
            PointCoord::Plane(x, y) => write!(f, "({x},{y})"),
        }
    }
}

fn bad_coord(model: &ContinuousModel, p: &PointCoord) -> Error {
    Error::InvalidArgument(format!("{p} is not a point of {}", model.name()))
}

/// Quotient Hom dimension from `x` to `y`.
pub fn hom_dim(model: &ContinuousModel, config: &RelationConfig, x: &PointCoord, y: &PointCoord) -> Result<HomDim> {
    model.validate()?;
    config.check_against(model)?;
    match model {
        ContinuousModel::RealLine => match (x, y) {
            (PointCoord::Real(a), PointCoord::Real(b)) => Ok(real_line(config, a, b)),
            _ => Err(bad_coord(model, if matches!(x, PointCoord::Real(_)) { y } else { x })),
        },
        ContinuousModel::CrossingLines => crossing(model, config, x, y),
        ContinuousModel::CyclicCircle { c } => match (x, y) {
            (PointCoord::Arc(a), PointCoord::Arc(b)) => circle(model, config, c, a, b),
            _ => Err(bad_coord(model, if matches!(x, PointCoord::Arc(_)) { y } else { x })),
        },
        ContinuousModel::GluedCircleChain { c0, q } => chain(model, config, c0, q, x, y),
        ContinuousModel::BigWedge { .. } => Err(Error::Unsupported(
            "the wedge is symbolic; use check_wedge_admissibility".into(),
        )),
        ContinuousModel::PlaneGrid => match (x, y) {
            (PointCoord::Plane(a, b), PointCoord::Plane(c, d)) => Ok(HomDim::Finite(u64::from(a <= c && b <= d))),
            _ => Err(bad_coord(model, if matches!(x, PointCoord::Plane(..)) { y } else { x })),
        },
        ContinuousModel::SemiContinuousInterval(v) => semi(model, config, *v, x, y),
    }
}

fn real_line(config: &RelationConfig, x: &Coeff, y: &Coeff) -> HomDim {
    if x > y {
        return HomDim::Finite(0);
    }
    let blocked = config.point_set.as_ref().is_some_and(|s| s.hits_open(x, y));
    let too_long = config.length_cut.as_ref().is_some_and(|c| !c.survives(&(y - x)));
    HomDim::Finite(u64::from(!blocked && !too_long))
}

fn crossing(model: &ContinuousModel, config: &RelationConfig, x: &PointCoord, y: &PointCoord) -> Result<HomDim> {
    let (PointCoord::Crossing(bx, a), PointCoord::Crossing(by, b)) = (x, y) else {
        return Err(bad_coord(
            model,
            if matches!(x, PointCoord::Crossing(..)) { y } else { x },
        ));
    };
    if a > b {
        return Ok(HomDim::Finite(0));
    }
    // 0 and 0' are one object, so a path may change lines only there.
    let changes_line = bx != by && !a.is_zero() && !b.is_zero();
    if changes_line && !(a.is_negative() && b.is_positive()) {
        return Ok(HomDim::Finite(0));
    }
    let relations_at_zero = config.point_set.is_some();
    let killed = changes_line && relations_at_zero;
    let too_long = config.length_cut.as_ref().is_some_and(|c| !c.survives(&(b - a)));
    Ok(HomDim::Finite(u64::from(!killed && !too_long)))
}

/// `#{ n >= 0 : delta + n*c <= bound }`, or `< bound` when not `inclusive`.
fn windings_within(delta: &Coeff, c: &Coeff, bound: &Coeff, inclusive: bool) -> u64 {
    let room = bound - delta;
    let count = if inclusive {
        if room.is_negative() {
            return 0;
        }
        (&room / c).floor() + Coeff::one()
    } else {
        if !room.is_positive() {
            return 0;
        }
        (&room / c).ceil()
    };
    count.to_integer().to_u64().unwrap_or(u64::MAX)
}

fn circle(model: &ContinuousModel, config: &RelationConfig, c: &Coeff, a: &Coeff, b: &Coeff) -> Result<HomDim> {
    for p in [a, b] {
        if p.is_negative() || p >= c {
            return Err(bad_coord(model, &PointCoord::Arc(p.clone())));
        }
    }
    let delta = modulo(&(b - a), c);
    // Length bound from the Kupisch constant.
    let mut bound: Option<(Coeff, bool)> = match &config.kupisch {
        None => None,
        Some(Kupisch::Constant(k)) => Some((k.clone(), config.kupisch_keeps_boundary)),
        Some(Kupisch::Piecewise(vals)) => {
            let first = vals
                .first()
                .ok_or_else(|| Error::InvalidArgument("empty Kupisch function".into()))?;
            if vals.iter().any(|v| v != first) {
                return Err(Error::Unsupported(
                    "non-constant Kupisch functions do not define a length relation".into(),
                ));
            }
            Some((first.clone(), config.kupisch_keeps_boundary))
        }
    };
    if let Some((k, _)) = &bound {
        if !k.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "Kupisch constant must be positive, got {k}"
            )));
        }
    }
    // A point relation kills a path once a marked point lies strictly inside,
    // so lengths up to the first interior hit survive.
    if let Some(PointSet::Finite(points)) = &config.point_set {
        for s in points {
            if s.is_negative() || s >= c {
                return Err(bad_coord(model, &PointCoord::Arc(s.clone())));
            }
            let d = modulo(&(s - a), c);
            let hit = if d.is_zero() { c.clone() } else { d };
            let tighter = match &bound {
                None => true,
                Some((k, _)) => hit <= *k,
            };
            if tighter {
                bound = Some((hit, true));
            }
        }
    }
    Ok(match bound {
        None => HomDim::Infinite,
        Some((k, inclusive)) => HomDim::Finite(windings_within(&delta, c, &k, inclusive)),
    })
}

fn modulo(v: &Coeff, c: &Coeff) -> Coeff {
    v - (v / c).floor() * c
}

/// Circumference of the `n`-th circle, `c0 * q^n`.
fn geometric(c0: &Coeff, q: &Coeff, n: usize) -> Coeff {
    let mut c = c0.clone();
    for _ in 0..n {
        c *= q;
    }
    c
}

const CHAIN_WORK_LIMIT: usize = 1_000_000;

fn chain(
    model: &ContinuousModel,
    config: &RelationConfig,
    c0: &Coeff,
    q: &Coeff,
    x: &PointCoord,
    y: &PointCoord,
) -> Result<HomDim> {
    let circ = |n: usize| geometric(c0, q, n);
    for p in [x, y] {
        let ok = match p {
            PointCoord::ChainLine(v) => !v.is_positive(),
            PointCoord::ChainArc(n, v) => !v.is_negative() && *v < circ(*n),
            _ => false,
        };
        if !ok {
            return Err(bad_coord(model, p));
        }
    }
    // Same circle, both off the gluing point: windings of a fixed arc.
    if let (PointCoord::ChainArc(n, a), PointCoord::ChainArc(m, b)) = (x, y) {
        if n == m && !a.is_zero() && !b.is_zero() {
            let c = circ(*n);
            let delta = modulo(&(b - a), &c);
            return Ok(match &config.length_cut {
                None => HomDim::Infinite,
                Some(cut) => HomDim::Finite(windings_within(&delta, &c, &cut.bound, cut.strict)),
            });
        }
    }
    let (start, pre) = match x {
        PointCoord::ChainLine(v) => (v.clone(), Coeff::zero()),
        PointCoord::ChainArc(n, v) if v.is_zero() => (-int(*n as i64), Coeff::zero()),
        PointCoord::ChainArc(n, v) => (-int(*n as i64), circ(*n) - v),
        _ => unreachable!(),
    };
    let (end, post) = match y {
        PointCoord::ChainLine(v) => (v.clone(), Coeff::zero()),
        PointCoord::ChainArc(n, v) => (-int(*n as i64), v.clone()),
        _ => unreachable!(),
    };
    if start > end {
        return Ok(HomDim::Finite(0));
    }
    let base = &pre + (&end - &start) + &post;
    // Gluing points -n with start <= -n <= end.
    let lo = (-&end).ceil().to_integer().to_usize().unwrap_or(0);
    let hi = (-&start).floor().to_integer().to_usize().unwrap_or(0);
    let loops: Vec<Coeff> = if (-&end).ceil() <= (-&start).floor() {
        (lo..=hi).map(circ).collect()
    } else {
        Vec::new()
    };
    let Some(cut) = &config.length_cut else {
        return Ok(if loops.is_empty() {
            HomDim::Finite(1)
        } else {
            HomDim::Infinite
        });
    };
    if !cut.survives(&base) {
        return Ok(HomDim::Finite(0));
    }
    let mut work = 0;
    let n = count_loop_vectors(&loops, &(&cut.bound - &base), cut.strict, &mut work)?;
    Ok(HomDim::Finite(n))
}

/// Number of `k` in `N^loops` with `sum k_i * loops_i` within `budget`.
fn count_loop_vectors(loops: &[Coeff], budget: &Coeff, inclusive: bool, work: &mut usize) -> Result<u64> {
    *work += 1;
    if *work > CHAIN_WORK_LIMIT {
        return Err(Error::Unsupported("too many loop combinations to count".into()));
    }
    let Some((c, rest)) = loops.split_first() else {
        return Ok(1);
    };
    let mut total = 0u64;
    let mut left = budget.clone();
    loop {
        let fits = if inclusive {
            !left.is_negative()
        } else {
            left.is_positive()
        };
        if !fits {
            break;
        }
        total = total.saturating_add(count_loop_vectors(rest, &left, inclusive, work)?);
        left -= c;
    }
    Ok(total)
}

/// Smallest `m` such that the `m`-th power of the basic loop of circle `n`
/// lies in the length relation.
pub fn min_nilpotency_index(c0: &Coeff, q: &Coeff, cut: &LengthCut, n: usize) -> u64 {
    let c = geometric(c0, q, n);
    let ratio = &cut.bound / &c;
    let m = if cut.strict {
        ratio.floor() + Coeff::one()
    } else {
        ratio.ceil().max(Coeff::one())
    };
    m.to_integer().to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeReport {
    pub verdict: Verdict,
    /// Circles without a point relation, if finitely many.
    pub uncovered: Option<BTreeSet<usize>>,
    pub obstruction: Option<String>,
}

pub fn check_wedge_admissibility(model: &ContinuousModel, config: &RelationConfig) -> Result<WedgeReport> {
    let ContinuousModel::BigWedge { index_set, .. } = model else {
        return Err(Error::ModelMismatch(format!("{} is not a wedge", model.name())));
    };
    model.validate()?;
    config.check_against(model)?;
    let relations = config.wedge_point_relations.clone().unwrap_or(WedgeRelations::None);
    let in_range = |set: &BTreeSet<usize>| match index_set {
        IndexSet::Finite(n) => set.iter().all(|i| i < n),
        IndexSet::Infinite => true,
    };
    let uncovered: Option<BTreeSet<usize>> = match (&relations, index_set) {
        (WedgeRelations::AllExcept(s), _) if in_range(s) => Some(s.clone()),
        (WedgeRelations::None, IndexSet::Finite(n)) => Some((0..*n).collect()),
        (WedgeRelations::Only(s), IndexSet::Finite(n)) if in_range(s) => {
            Some((0..*n).filter(|i| !s.contains(i)).collect())
        }
        (WedgeRelations::None | WedgeRelations::Only(_), IndexSet::Infinite) => None,
        _ => return Err(Error::InvalidArgument("wedge circle index out of range".into())),
    };
    let has_cut = config.length_cut.is_some();
    let (verdict, obstruction) = match &uncovered {
        None => (
            Verdict::NotAdmissible,
            Some("End(X) at the wedge point is not finite-dimensional: infinitely many circles carry no point relation".into()),
        ),
        Some(u) if u.is_empty() => (Verdict::Admissible, None),
        Some(_) if has_cut => (Verdict::Admissible, None),
        Some(u) => (
            Verdict::NotAdmissible,
            Some(format!(
                "End(X) at the wedge point is not finite-dimensional: powers of the loops of {} circle(s) without point relation survive and no length cut is present",
                u.len()
            )),
        ),
    };
    Ok(WedgeReport {
        verdict,
        uncovered,
        obstruction,
    })
}

/// Walking-order discrete steps of the semi-continuous quivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// `-1 -> 0`
    Alpha,
    /// `0 -> -1`
    Beta,
}

/// Discrete steps followed by an interval segment ending at `tail` when
/// the endpoint lies above the position reached.
#[derive(Clone, Debug)]
struct SemiPath {
    steps: Vec<Step>,
    /// Length of the final interval segment, zero if absent.
    tail: Coeff,
}

/// A generator family: the discrete steps occur contiguously, and when
/// `tail_exceeds` is set they end the word and are followed by an interval
/// segment longer than it.
struct Pattern {
    steps: &'static [Step],
    tail_exceeds: Option<i64>,
}

use Step::{Alpha, Beta};

const Q_GENERATORS: &[Pattern] = &[
    Pattern {
        steps: &[],
        tail_exceeds: Some(3),
    },
    Pattern {
        steps: &[Alpha],
        tail_exceeds: Some(2),
    },
];

const QPLUS_GENERATORS: &[Pattern] = &[
    Pattern {
        steps: &[],
        tail_exceeds: Some(3),
    },
    Pattern {
        steps: &[Alpha],
        tail_exceeds: Some(2),
    },
    Pattern {
        steps: &[Beta, Alpha],
        tail_exceeds: Some(1),
    },
    Pattern {
        steps: &[Alpha, Beta, Alpha],
        tail_exceeds: Some(0),
    },
    Pattern {
        steps: &[Beta, Alpha, Beta, Alpha],
        tail_exceeds: None,
    },
    Pattern {
        steps: &[Alpha, Beta, Alpha, Beta],
        tail_exceeds: None,
    },
];

impl Pattern {
    fn divides(&self, p: &SemiPath) -> bool {
        let k = self.steps.len();
        match self.tail_exceeds {
            Some(t) => p.steps.ends_with(self.steps) && p.tail > int(t),
            None => k <= p.steps.len() && p.steps.windows(k).any(|w| w == self.steps),
        }
    }
}

/// Longest discrete word enumerated; every longer word contains a killed
/// round trip.
const SEMI_WORD_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SemiPoint {
    Discrete,
    At(bool),
}

fn semi(
    model: &ContinuousModel,
    config: &RelationConfig,
    variant: SemiVariant,
    x: &PointCoord,
    y: &PointCoord,
) -> Result<HomDim> {
    let classify = |p: &PointCoord| -> Result<(SemiPoint, Coeff)> {
        match p {
            PointCoord::Real(v) if *v == int(-1) => Ok((SemiPoint::Discrete, v.clone())),
            PointCoord::Real(v) if !v.is_negative() && *v <= int(100) => Ok((SemiPoint::At(v.is_zero()), v.clone())),
            _ => Err(bad_coord(model, p)),
        }
    };
    let (sx, vx) = classify(x)?;
    let (sy, vy) = classify(y)?;
    let cyclic = variant == SemiVariant::QPlus;
    // Discrete words from x: alternate starting with the step x allows.
    let first = match sx {
        SemiPoint::Discrete => Some(Alpha),
        SemiPoint::At(true) if cyclic => Some(Beta),
        _ => None,
    };
    let max_word = if cyclic { SEMI_WORD_CAP } else { 1 };
    let mut paths = Vec::new();
    for len in 0..=max_word {
        if len > 0 && first.is_none() {
            break;
        }
        let steps: Vec<Step> = (0..len)
            .map(|i| {
                let f = first.unwrap();
                if i % 2 == 0 {
                    f
                } else if f == Alpha {
                    Beta
                } else {
                    Alpha
                }
            })
            .collect();
        let at_discrete = match steps.last() {
            Some(s) => *s == Beta,
            None => sx == SemiPoint::Discrete,
        };
        let pos = if steps.is_empty() { vx.clone() } else { Coeff::zero() };
        match sy {
            SemiPoint::Discrete if at_discrete => paths.push(SemiPath {
                steps,
                tail: Coeff::zero(),
            }),
            SemiPoint::At(_) if !at_discrete && vy >= pos => paths.push(SemiPath {
                steps,
                tail: &vy - &pos,
            }),
            _ => {}
        }
    }
    if !config.appendix_mode {
        let unbounded = cyclic && paths.iter().any(|p| !p.steps.is_empty());
        return Ok(if unbounded {
            HomDim::Infinite
        } else {
            HomDim::Finite(paths.len() as u64)
        });
    }
    let gens = if cyclic { QPLUS_GENERATORS } else { Q_GENERATORS };
    let survivors = paths.iter().filter(|p| !gens.iter().any(|g| g.divides(p))).count();
    Ok(HomDim::Finite(survivors as u64))
}

/// Smallest power of the round trip `beta*alpha` (from `-1`) and
/// `alpha*beta` (from `0`) lying in the appendix ideal of `Q+`.
pub fn semi_round_trip_exponents() -> (usize, usize) {
    let exponent = |start: Step| {
        (1..=SEMI_WORD_CAP / 2)
            .find(|&k| {
                let other = if start == Alpha { Beta } else { Alpha };
                let steps: Vec<Step> = (0..2 * k).map(|i| if i % 2 == 0 { start } else { other }).collect();
                let p = SemiPath {
                    steps,
                    tail: Coeff::zero(),
                };
                QPLUS_GENERATORS.iter().any(|g| g.divides(&p))
            })
            .unwrap_or(usize::MAX)
    };
    (exponent(Alpha), exponent(Beta))
}

/// Closed rectangle `[x0,x1] x [y0,y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Coeff,
    pub x1: Coeff,
    pub y0: Coeff,
    pub y1: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub x: Coeff,
    pub y: Coeff,
    pub dim: HomDim,
}

/// `hom_dim(x, y)` on the grid `x0 + i*step`, `y0 + j*step` inside the
/// window, rows ordered by `x` and then `y`.
pub fn region_sample(
    model: &ContinuousModel,
    config: &RelationConfig,
    window: &Window,
    step: &Coeff,
) -> Result<Vec<Sample>> {
    if !step.is_positive() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let wrap: fn(Coeff) -> PointCoord = match model {
        ContinuousModel::RealLine | ContinuousModel::SemiContinuousInterval(_) => PointCoord::Real,
        ContinuousModel::CyclicCircle { .. } => PointCoord::Arc,
        _ => {
            return Err(Error::ModelMismatch(format!(
                "{} points are not single rationals; region sampling needs two coordinates in total",
                model.name()
            )))
        }
    };
    let axis = |lo: &Coeff, hi: &Coeff| -> Vec<Coeff> {
        if lo > hi {
            return Vec::new();
        }
        let n = ((hi - lo) / step).floor().to_integer().to_usize().unwrap_or(0);
        (0..=n).map(|i| lo + step * int(i as i64)).collect()
    };
    let xs = axis(&window.x0, &window.x1);
    let ys = axis(&window.y0, &window.y1);
    let rows: Vec<Result<Vec<Sample>>> = xs
        .par_iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    let dim = hom_dim(model, config, &wrap(x.clone()), &wrap(y.clone()))?;
                    Ok(Sample {
                        x: x.clone(),
                        y: y.clone(),
                        dim,
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

pub const DEFAULT_ORACLE_CAP: usize = 5;

/// One entry of the grid oracle: lattice points and quotient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEntry {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub dim: usize,
}

/// The `m x n` grid quiver with every square commuting.
pub fn grid_quiver(m: usize, n: usize) -> Result<(FiniteQuiver, Vec<LinComb>)> {
    let name = |i: usize, j: usize| format!("v{i}_{j}");
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for i in 0..m {
        for j in 0..n {
            vertices.push(name(i, j));
            if i + 1 < m {
                arrows.push((format!("h{i}_{j}"), name(i, j), name(i + 1, j)));
            }
            if j + 1 < n {
                arrows.push((format!("u{i}_{j}"), name(i, j), name(i, j + 1)));
            }
        }
    }
    let q = FiniteQuiver::new(vertices, arrows)?;
    let mut rels = Vec::new();
    for i in 0..m.saturating_sub(1) {
        for j in 0..n.saturating_sub(1) {
            let right_up = q.path_by_names(&[&format!("u{}_{j}", i + 1), &format!("h{i}_{j}")])?;
            let up_right = q.path_by_names(&[&format!("h{i}_{}", j + 1), &format!("u{i}_{j}")])?;
            rels.push(LinComb::from_path(right_up).sub(&LinComb::from_path(up_right))?);
        }
    }
    Ok((q, rels))
}

/// Quotient Hom dimensions between all lattice points of the commutative grid.
pub fn oracle_grid_plane(m: usize, n: usize, cap: usize) -> Result<Vec<GridEntry>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("grid sides must be positive".into()));
    }
    if m > cap || n > cap {
        return Err(Error::InvalidArgument(format!("grid {m}x{n} exceeds oracle cap {cap}")));
    }
    let (q, rels) = grid_quiver(m, n)?;
    let bound = (m + n).saturating_sub(2).max(2);
    let quotient = Quotient::new(IdealPresentation::new(q.clone(), rels, bound)?)?;
    let mut out = Vec::new();
    for a in 0..m * n {
        for b in 0..m * n {
            let (from, to) = ((a / n, a % n), (b / n, b % n));
            let (i, j) = (VertexId(a), VertexId(b));
            out.push(GridEntry {
                from,
                to,
                dim: quotient.hom_dim(i, j),
            });
        }
    }
    Ok(out)
}
