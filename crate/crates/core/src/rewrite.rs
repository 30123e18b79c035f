//! Degree-bounded completion of path-algebra ideals.
//!
//! Completion runs Buchberger's algorithm for path algebras with the sugar
//! strategy: every polynomial carries the degree it would have after
//! homogenizing with a central variable, and only work of sugar at most the
//! degree bound is performed. Below the bound the result is exactly the
//! truncated ideal spanned by the products `u*g*w` of degree at most the
//! bound. When no critical pair had to be skipped the rules form a full
//! Gröbner basis, and normal forms are exact in every degree.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_traits::One;

use crate::error::{Error, Result};
use crate::quiver::{add_into, ArrowId, Coeff, FiniteQuiver, LinComb, Path, VertexId};

/// Default upper limit on the number of rules created during completion.
pub const DEFAULT_RULE_CAP: usize = 20_000;

/// `lead -> tail`, i.e. the relation `lead - tail` lies in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Path,
    pub tail: LinComb,
    /// Homogenized degree; never below the length of `lead`.
    pub sugar: usize,
}

impl RewriteRule {
    fn excess(&self) -> usize {
        self.sugar - self.lead.len()
    }

    /// The relation `lead - tail`.
    pub fn relation(&self) -> LinComb {
        let mut f = self.tail.scale(&-Coeff::one());
        f.add_term(self.lead.clone(), Coeff::one()).expect("parallel");
        f
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    by_first: HashMap<ArrowId, Vec<usize>>,
    by_last: HashMap<ArrowId, Vec<usize>>,
    /// Degree up to which normal forms are canonical.
    pub completed_to: usize,
    /// True when the rules form a Gröbner basis in all degrees.
    pub complete: bool,
}

impl RewriteSystem {
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn max_lead_len(&self) -> usize {
        self.rules.iter().map(|r| r.lead.len()).max().unwrap_or(0)
    }

    /// Largest gap between a rule's sugar and its degree.
    pub fn max_excess(&self) -> usize {
        self.rules.iter().map(RewriteRule::excess).max().unwrap_or(0)
    }

    fn from_rules(rules: Vec<RewriteRule>, completed_to: usize, complete: bool) -> Self {
        let mut by_first: HashMap<ArrowId, Vec<usize>> = HashMap::new();
        let mut by_last: HashMap<ArrowId, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_first.entry(r.lead.arrows()[0]).or_default().push(i);
            by_last.entry(*r.lead.arrows().last().unwrap()).or_default().push(i);
        }
        RewriteSystem {
            rules,
            by_first,
            by_last,
            completed_to,
            complete,
        }
    }

    /// Sugar budget for reducing a path of the given degree; `None` is unlimited.
    fn budget(&self) -> Option<usize> {
        (!self.complete).then_some(self.completed_to)
    }

    /// Finds a rule occurrence in `m` usable within `budget`.
    fn find_reducer(&self, m: &Path, budget: Option<usize>) -> Option<(usize, usize)> {
        find_in(&self.rules, &self.by_first, m, budget)
    }

    /// The unique reduced representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &LinComb) -> Result<LinComb> {
        if let Some(d) = f.degree() {
            if !self.complete && d > self.completed_to {
                return Err(Error::DegreeOverflow {
                    degree: d,
                    completed_to: self.completed_to,
                });
            }
        }
        Ok(reduce_terms(&self.rules, &self.by_first, f, self.budget()))
    }

    pub fn path_normal_form(&self, p: &Path) -> Result<LinComb> {
        self.normal_form(&LinComb::from_path(p.clone()))
    }

    pub fn is_zero(&self, f: &LinComb) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when `p` is a basis element of the quotient.
    pub fn is_normal_path(&self, p: &Path) -> bool {
        if !self.complete && p.len() > self.completed_to {
            return false;
        }
        self.find_reducer(p, self.budget()).is_none()
    }

    /// Smallest excess among rule leads that end `p`, if any.
    fn suffix_excess(&self, p: &Path) -> Option<usize> {
        let last = p.arrows().last()?;
        self.by_last
            .get(last)?
            .iter()
            .map(|&i| &self.rules[i])
            .filter(|r| p.arrows().ends_with(r.lead.arrows()))
            .map(RewriteRule::excess)
            .min()
    }

    /// Normal paths from `i` to `j` of length at most `max_len`, sorted.
    ///
    /// The flag is set when some longer path from `i` towards `j` may still
    /// be normal, so the list could be incomplete.
    pub fn normal_paths(&self, q: &FiniteQuiver, i: VertexId, j: VertexId, max_len: usize) -> (Vec<Path>, bool) {
        let reach = q.reachability();
        let mut out = Vec::new();
        let mut truncated = false;
        // Stack entries: path and smallest excess of any lead occurring in it.
        let mut stack = vec![(Path::trivial(i), None::<usize>)];
        while let Some((p, min_e)) = stack.pop() {
            let reducible = match min_e {
                None => false,
                Some(e) => self.complete || p.len() + e <= self.completed_to,
            };
            if !reducible && p.target() == j {
                out.push(p.clone());
            }
            for a in q.outgoing(p.target()) {
                let t = q.arrow_data(*a).target;
                if !reach[t.0][j.0] {
                    continue;
                }
                let next = p.extended(*a, t);
                let e = match (min_e, self.suffix_excess(&next)) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                // A lead with no excess kills every extension that fits the budget.
                let dead = match e {
                    None => false,
                    Some(e) => self.complete || e == 0,
                };
                if dead {
                    continue;
                }
                if next.len() > max_len {
                    truncated = true;
                    continue;
                }
                stack.push((next, e));
            }
        }
        out.sort();
        (out, truncated)
    }
}

fn find_in(
    rules: &[RewriteRule],
    by_first: &HashMap<ArrowId, Vec<usize>>,
    m: &Path,
    budget: Option<usize>,
) -> Option<(usize, usize)> {
    let arrows = m.arrows();
    for k in 0..arrows.len() {
        let Some(candidates) = by_first.get(&arrows[k]) else {
            continue;
        };
        for &r in candidates {
            let rule = &rules[r];
            let lead = rule.lead.arrows();
            if arrows[k..].starts_with(lead) {
                let fits = match budget {
                    None => true,
                    Some(b) => rule.sugar + arrows.len() - lead.len() <= b,
                };
                if fits {
                    return Some((r, k));
                }
            }
        }
    }
    None
}

/// Reduces every term of `f`, largest first.
fn reduce_terms(
    rules: &[RewriteRule],
    by_first: &HashMap<ArrowId, Vec<usize>>,
    f: &LinComb,
    budget: Option<usize>,
) -> LinComb {
    let mut work: BTreeMap<Path, Coeff> = f.terms().clone();
    let mut done = LinComb::zero(f.source(), f.target());
    while let Some((m, c)) = work.pop_last() {
        match find_in(rules, by_first, &m, budget) {
            None => done.add_term(m, c).expect("parallel"),
            Some((r, k)) => {
                let rule = &rules[r];
                for (t, d) in rule.tail.terms() {
                    add_into(&mut work, m.splice(k, rule.lead.len(), t), &c * d);
                }
            }
        }
    }
    done
}

/// A critical pair awaiting its S-polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: usize,
    a: usize,
    b: usize,
    /// Overlap length for suffix/prefix pairs, or position for inclusions.
    at: usize,
    inclusion: bool,
}

struct Completion<'q> {
    quiver: &'q FiniteQuiver,
    bound: usize,
    cap: usize,
    rules: Vec<Option<RewriteRule>>,
    by_first: HashMap<ArrowId, Vec<usize>>,
    pairs: BinaryHeap<Reverse<Pair>>,
    skipped: Vec<(usize, usize)>,
}

impl Completion<'_> {
    fn live(&self) -> Vec<RewriteRule> {
        self.rules.iter().flatten().cloned().collect()
    }

    /// Reduces within the homogenized degree `sugar`.
    fn reduce(&self, f: &LinComb, sugar: usize) -> LinComb {
        let mut work: BTreeMap<Path, Coeff> = f.terms().clone();
        let mut done = LinComb::zero(f.source(), f.target());
        while let Some((m, c)) = work.pop_last() {
            match self.find(&m, sugar) {
                None => done.add_term(m, c).expect("parallel"),
                Some((r, k)) => {
                    let rule = self.rules[r].as_ref().unwrap();
                    for (t, d) in rule.tail.terms() {
                        add_into(&mut work, m.splice(k, rule.lead.len(), t), &c * d);
                    }
                }
            }
        }
        done
    }

    fn find(&self, m: &Path, sugar: usize) -> Option<(usize, usize)> {
        let arrows = m.arrows();
        for k in 0..arrows.len() {
            let Some(candidates) = self.by_first.get(&arrows[k]) else {
                continue;
            };
            for &r in candidates {
                let Some(rule) = &self.rules[r] else { continue };
                let lead = rule.lead.arrows();
                if arrows[k..].starts_with(lead) && rule.sugar + arrows.len() - lead.len() <= sugar {
                    return Some((r, k));
                }
            }
        }
        None
    }

    fn add(&mut self, f: LinComb, sugar: usize) -> Result<()> {
        let mut pending = vec![(f, sugar)];
        while let Some((f, sugar)) = pending.pop() {
            let g = self.reduce(&f, sugar);
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            let (lead, _) = g.leading().unwrap();
            let lead = lead.clone();
            if lead.is_trivial() {
                return Err(Error::InvalidPresentation("the ideal contains a trivial path".into()));
            }
            let tail = LinComb::from_path(lead.clone()).sub(&g)?;
            let rule = RewriteRule { lead, tail, sugar };
            let excess = rule.excess();
            let idx = self.rules.len();
            if idx >= self.cap {
                return Err(Error::CompletionOverflow {
                    cap: self.cap,
                    degree: sugar,
                });
            }
            // Retire rules whose homogenized lead the new one divides.
            for other in 0..idx {
                let Some(old) = &self.rules[other] else { continue };
                if excess <= old.excess() && old.lead.occurrences(rule.lead.arrows()).next().is_some() {
                    let old = self.rules[other].take().unwrap();
                    pending.push((old.relation(), old.sugar));
                }
            }
            self.by_first.entry(rule.lead.arrows()[0]).or_default().push(idx);
            self.rules.push(Some(rule));
            for other in 0..=idx {
                if self.rules[other].is_some() {
                    self.queue_pairs(idx, other);
                    if other != idx {
                        self.queue_pairs(other, idx);
                    }
                }
            }
        }
        Ok(())
    }

    /// Queues overlaps where a suffix of rule `a`'s lead is a prefix of rule
    /// `b`'s, and inclusions of `b`'s lead inside `a`'s.
    fn queue_pairs(&mut self, a: usize, b: usize) {
        let ra = self.rules[a].as_ref().unwrap();
        let rb = self.rules[b].as_ref().unwrap();
        let (u, v) = (ra.lead.arrows(), rb.lead.arrows());
        let excess = ra.excess().max(rb.excess());
        let mut found = Vec::new();
        for k in 1..u.len().min(v.len()) {
            if u[u.len() - k..] == v[..k] {
                found.push((u.len() + v.len() - k + excess, k, false));
            }
        }
        if a != b && v.len() <= u.len() && rb.excess() > ra.excess() {
            for pos in ra.lead.occurrences(v) {
                found.push((u.len() + excess, pos, true));
            }
        }
        for (sugar, at, inclusion) in found {
            if sugar > self.bound {
                self.skipped.push((a, b));
            } else {
                self.pairs.push(Reverse(Pair {
                    sugar,
                    a,
                    b,
                    at,
                    inclusion,
                }));
            }
        }
    }

    fn s_poly(&self, pair: &Pair) -> Result<Option<LinComb>> {
        let (Some(ra), Some(rb)) = (&self.rules[pair.a], &self.rules[pair.b]) else {
            return Ok(None);
        };
        let q = self.quiver;
        let (u, v) = (&ra.lead, &rb.lead);
        if pair.inclusion {
            let pre = u.subpath(q, 0, pair.at);
            let post = u.subpath(q, pair.at + v.len(), u.len());
            let lhs = rb.tail.sandwich(&pre, &post)?;
            return Ok(Some(lhs.sub(&ra.tail)?));
        }
        let k = pair.at;
        let pre = u.subpath(q, 0, u.len() - k);
        let post = v.subpath(q, k, v.len());
        let left = rb.tail.sandwich(&pre, &q.trivial(rb.lead.target()))?;
        let right = ra.tail.sandwich(&q.trivial(ra.lead.source()), &post)?;
        Ok(Some(left.sub(&right)?))
    }
}

/// Completes `generators` up to homogenized degree `bound`.
pub fn complete(quiver: &FiniteQuiver, generators: &[LinComb], bound: usize, cap: usize) -> Result<RewriteSystem> {
    let mut c = Completion {
        quiver,
        bound,
        cap,
        rules: Vec::new(),
        by_first: HashMap::new(),
        pairs: BinaryHeap::new(),
        skipped: Vec::new(),
    };
    let mut order: Vec<&LinComb> = generators.iter().collect();
    order.sort_by_key(|g| g.degree());
    for g in order {
        if let Some(d) = g.degree() {
            c.add(g.clone(), d)?;
        }
    }
    while let Some(Reverse(pair)) = c.pairs.pop() {
        if let Some(s) = c.s_poly(&pair)? {
            if !s.is_zero() {
                c.add(s, pair.sugar)?;
            }
        }
    }
    let complete = c
        .skipped
        .iter()
        .all(|&(a, b)| c.rules[a].is_none() || c.rules[b].is_none());
    let mut rs = RewriteSystem::from_rules(c.live(), bound, complete);
    interreduce_tails(&mut rs);
    Ok(rs)
}

/// Rewrites every tail into normal form so that printed rules are canonical.
fn interreduce_tails(rs: &mut RewriteSystem) {
    let complete = rs.complete;
    for i in 0..rs.rules.len() {
        let budget = (!complete).then_some(rs.rules[i].sugar);
        let reduced = reduce_terms(&rs.rules, &rs.by_first, &rs.rules[i].tail, budget);
        rs.rules[i].tail = reduced;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::int;

    fn square() -> FiniteQuiver {
        FiniteQuiver::new(
            ["1", "2", "3", "4"],
            [("a1", "1", "2"), ("b1", "1", "3"), ("a2", "2", "4"), ("b2", "3", "4")],
        )
        .unwrap()
    }

    fn lc(q: &FiniteQuiver, terms: &[(i64, &[&str])]) -> LinComb {
        let paths: Vec<_> = terms
            .iter()
            .map(|(c, p)| (q.path_by_names(p).unwrap(), int(*c)))
            .collect();
        let (s, t) = (paths[0].0.source(), paths[0].0.target());
        LinComb::from_terms(s, t, paths).unwrap()
    }

    #[test]
    fn commutative_square_single_rule() {
        let q = square();
        let g = lc(&q, &[(1, &["a2", "a1"]), (-1, &["b2", "b1"])]);
        let rs = complete(&q, std::slice::from_ref(&g), 6, DEFAULT_RULE_CAP).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert!(rs.complete);
        assert!(rs.normal_form(&g).unwrap().is_zero());
        let a = LinComb::from_path(q.path_by_names(&["a2", "a1"]).unwrap());
        let b = LinComb::from_path(q.path_by_names(&["b2", "b1"]).unwrap());
        assert_eq!(rs.normal_form(&a).unwrap(), rs.normal_form(&b).unwrap());
    }

    #[test]
    fn monomial_rule() {
        let q = FiniteQuiver::new(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let g = lc(&q, &[(1, &["b", "a"])]);
        let rs = complete(&q, &[g], 4, DEFAULT_RULE_CAP).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert!(rs.rules()[0].tail.is_zero());
    }

    #[test]
    fn loop_power_overlaps_resolve() {
        let q = FiniteQuiver::new(["v"], [("r", "v", "v")]).unwrap();
        let g = lc(&q, &[(1, &["r", "r"])]);
        let rs = complete(&q, &[g], 8, DEFAULT_RULE_CAP).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert!(rs.complete);
        let r5 = q.path_by_names(&["r"; 5]).unwrap();
        assert!(rs.path_normal_form(&r5).unwrap().is_zero());
    }

    #[test]
    fn overlap_produces_new_rule() {
        // x*y - y*x style relations on two loops generate further rules.
        let q = FiniteQuiver::new(["v"], [("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let g1 = lc(&q, &[(1, &["y", "x"]), (-1, &["x", "x"])]);
        let rs = complete(&q, &[g1], 5, DEFAULT_RULE_CAP).unwrap();
        let yyx = LinComb::from_path(q.path_by_names(&["y", "y", "x"]).unwrap());
        let xxx = LinComb::from_path(q.path_by_names(&["x", "x", "x"]).unwrap());
        assert_eq!(rs.normal_form(&yyx).unwrap(), rs.normal_form(&xxx).unwrap());
    }

    #[test]
    fn degree_overflow_when_incomplete() {
        let q = FiniteQuiver::new(["v"], [("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let g = lc(&q, &[(1, &["y", "x", "y"]), (-1, &["x", "y", "x"])]);
        let rs = complete(&q, &[g], 4, DEFAULT_RULE_CAP).unwrap();
        assert!(!rs.complete);
        let long = LinComb::from_path(q.path_by_names(&["x"; 5]).unwrap());
        assert_eq!(
            rs.normal_form(&long),
            Err(Error::DegreeOverflow {
                degree: 5,
                completed_to: 4
            })
        );
    }

    #[test]
    fn rule_cap_reports_overflow() {
        let q = FiniteQuiver::new(["v"], [("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let g = lc(&q, &[(1, &["y", "x", "y"]), (-1, &["x", "y", "x"])]);
        assert!(matches!(
            complete(&q, &[g], 30, 2),
            Err(Error::CompletionOverflow { cap: 2, .. })
        ));
    }
}
