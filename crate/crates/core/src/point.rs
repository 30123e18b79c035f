//! Decomposition points and point relations on finite quivers.
//!
//! In the free categorification a path factors only by splitting it, so a
//! vertex is a decomposition point of a path exactly when the path visits
//! it strictly between its endpoints.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ideal::{AdmissibilityReport, ConditionStatus, IdealPresentation, Quotient};
use crate::quiver::{FiniteQuiver, LinComb, Path, VertexId};

/// Positions `1..len` at which `f` passes through `z`.
fn interior_visits(q: &FiniteQuiver, f: &Path, z: VertexId) -> Vec<usize> {
    (1..f.len()).filter(|&k| q.vertex_at(f, k) == z).collect()
}

fn require_nontrivial(q: &FiniteQuiver, f: &Path) -> Result<()> {
    q.validate_path(f)?;
    if f.is_trivial() {
        return Err(Error::InvalidArgument(format!(
            "{} is an isomorphism and has no decomposition points",
            q.path_name(f)
        )));
    }
    Ok(())
}

/// Vertices through which `f` factors as two non-isomorphisms.
pub fn decomposition_points(q: &FiniteQuiver, f: &Path) -> Result<BTreeSet<VertexId>> {
    require_nontrivial(q, f)?;
    Ok((1..f.len()).map(|k| q.vertex_at(f, k)).collect())
}

/// True iff all factorizations of `f` through `z` are rescalings of one
/// pair, i.e. `f` visits `z` exactly once in its interior.
pub fn is_acyclic_morphism(q: &FiniteQuiver, f: &Path, z: VertexId) -> Result<bool> {
    require_nontrivial(q, f)?;
    let visits = interior_visits(q, f, z);
    if visits.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a decomposition point of {}",
            q.vertex_name(z),
            q.path_name(f)
        )));
    }
    Ok(visits.len() == 1)
}

/// The point relation through `z` by `f` together with its generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRelationSpec {
    pub f: Path,
    pub z: VertexId,
    /// Every subpath of `f` that passes through `z` strictly inside.
    pub generated: Vec<Path>,
}

impl PointRelationSpec {
    pub fn generators(&self) -> Vec<LinComb> {
        self.generated.iter().cloned().map(LinComb::from_path).collect()
    }
}

pub fn point_relation(q: &FiniteQuiver, f: &Path, z: VertexId) -> Result<PointRelationSpec> {
    if !is_acyclic_morphism(q, f, z)? {
        return Err(Error::InvalidArgument(format!(
            "{} passes through {} more than once",
            q.path_name(f),
            q.vertex_name(z)
        )));
    }
    let visit = interior_visits(q, f, z)[0];
    let mut generated = BTreeSet::new();
    for start in 0..visit {
        for end in visit + 1..=f.len() {
            generated.insert(f.subpath(q, start, end));
        }
    }
    Ok(PointRelationSpec {
        f: f.clone(),
        z,
        generated: generated.into_iter().collect(),
    })
}

/// Ideal generated by the union of the generating sets.
pub fn collection_ideal(
    q: &FiniteQuiver,
    specs: &[PointRelationSpec],
    degree_bound: usize,
) -> Result<IdealPresentation> {
    let mut gens = BTreeSet::new();
    for s in specs {
        gens.extend(s.generated.iter().cloned());
    }
    let bound = gens.iter().map(Path::len).max().unwrap_or(0).max(degree_bound);
    IdealPresentation::new(q.clone(), gens.into_iter().map(LinComb::from_path).collect(), bound)
}

#[derive(Clone, Debug)]
pub struct CollectionReport {
    /// Number of generating sets each generated path belongs to.
    pub membership: BTreeMap<Path, usize>,
    /// Simple cycles some power of which contains a generated path.
    pub covered_cycles: Vec<Path>,
    pub uncovered_cycles: Vec<Path>,
    pub ideal: AdmissibilityReport,
    pub admissible: bool,
}

pub fn check_admissible_collection(
    specs: &[PointRelationSpec],
    q: &FiniteQuiver,
    degree_bound: usize,
    cycle_cap: usize,
) -> Result<CollectionReport> {
    let mut membership = BTreeMap::new();
    for s in specs {
        for g in &s.generated {
            *membership.entry(g.clone()).or_insert(0) += 1;
        }
    }
    let ideal = collection_ideal(q, specs, degree_bound)?;
    let bound = ideal.degree_bound();
    let mut covered_cycles = Vec::new();
    let mut uncovered_cycles = Vec::new();
    for rho in q.simple_cycles() {
        let reps = (bound / rho.len()).max(1);
        let power = rho.power(reps);
        let hit = specs
            .iter()
            .flat_map(|s| &s.generated)
            .any(|g| power.occurrences(g.arrows()).next().is_some() && cyclic_fit(&power, g, q));
        if hit {
            covered_cycles.push(rho);
        } else {
            uncovered_cycles.push(rho);
        }
    }
    let report = Quotient::new(ideal)?.admissibility(cycle_cap)?;
    let finite = membership.values().all(|&n| n <= specs.len());
    let admissible = finite && report.condition2.status == ConditionStatus::Pass;
    Ok(CollectionReport {
        membership,
        covered_cycles,
        uncovered_cycles,
        ideal: report,
        admissible,
    })
}

/// The occurrence of `g` inside a cycle power starts at a vertex `g` starts at.
fn cyclic_fit(power: &Path, g: &Path, q: &FiniteQuiver) -> bool {
    power
        .occurrences(g.arrows())
        .any(|k| q.vertex_at(power, k) == g.source())
}
