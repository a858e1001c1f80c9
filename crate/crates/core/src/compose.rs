//! The composition operator `m1 ▷ m2` for credal sets.
//!
//! `m1` describes the variables `K`, `m2` the variables `L`. The result describes
//! `K ∪ L` (K's variables first) and always has `m1` as its `K` marginal. Candidate
//! extreme points come from two sources:
//!
//! 1. the parts of `m1` and `m2` whose marginals on `K ∩ L` lie in both marginal sets
//!    (the *projective parts*): every pair of their vertices with identical marginals
//!    contributes its conditional product;
//! 2. every vertex `P1` of `m1`: its marginal is projected (Euclidean distance) onto
//!    the marginal of `m2`, giving `Q2`. If `P1↓ ≪ Q2`, each vertex `P2` of the fiber of
//!    `m2` over `Q2` contributes `P1·P2/Q2`; otherwise the vertices of the vacuous
//!    extension of `P1` to `K ∪ L` are added.
//!
//! With [`Variant::Symmetric`] (the default) the first source also includes the
//! products of each projective-part vertex with the vertices of the other part's fiber
//! over its marginal. Without them, `m1 ▷ m2` and `m2 ▷ m1` can differ on projective
//! pairs that share a variable.
//!
//! The result is the canonical hull of all candidates.

use crate::credal::{
    abs_continuous, conditional_product, fiber, marginal_map, marginalize, marginalize_dist,
    vacuous_extend_dist, CredalSet, Distribution, Scope,
};
use crate::error::{Error, Result};
use crate::polytope::{self, h_to_v, intersect, preimage_constraints, Point, VertexSet};

/// How candidate points are generated inside the projective parts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Only vertex pairs with identical marginals, plus the per-vertex fibers of `m2`.
    Verbatim,
    /// Additionally, fiber products in both directions between the projective parts.
    /// Every added point is a product of members with identical marginals, and the
    /// extra points make the operator commute on projective pairs.
    #[default]
    Symmetric,
}

/// Which branch produced the points for one vertex of `m1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Conditional products with the fiber of `m2` over the projection.
    A,
    /// Vacuous extension of the vertex: its marginal is not dominated by the projection.
    B,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::A => "a",
            Rule::B => "b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionRecord {
    pub p1: Distribution,
    pub q2: Distribution,
    pub rule: Rule,
}

/// Intermediate results of one composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTrace {
    /// Intersection of the two marginals on the common variables; `None` when empty.
    pub core: Option<CredalSet>,
    pub m1_projective: Option<CredalSet>,
    pub m2_projective: Option<CredalSet>,
    pub projective_pairs: Vec<(Distribution, Distribution)>,
    pub projection_records: Vec<ProjectionRecord>,
    pub result: CredalSet,
}

/// `m1↓(K∩L) ∩ m2↓(K∩L)`, or `None` if the marginals are disjoint.
pub fn common_marginal_core(m1: &CredalSet, m2: &CredalSet) -> Result<Option<CredalSet>> {
    let common = m1.scope().intersection(m2.scope())?;
    let a = marginalize(m1, &common)?;
    let b = marginalize(m2, &common)?;
    let both = intersect(&a.to_h(), &b.to_h())?;
    match h_to_v(&both) {
        Ok(v) => Ok(Some(CredalSet::new(common, v)?)),
        Err(Error::Empty) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Members of `m` whose marginal lies in `core`.
fn projective_part(m: &CredalSet, core: &CredalSet) -> Result<CredalSet> {
    let map = marginal_map(m.scope(), core.scope())?;
    let band = preimage_constraints(&core.to_h(), &map)?;
    let system = intersect(&band, &m.to_h())?;
    CredalSet::new(m.scope().clone(), h_to_v(&system)?)
}

/// The projective parts of `m1` and `m2` with respect to a nonempty `core`.
pub fn projective_parts(
    m1: &CredalSet,
    m2: &CredalSet,
    core: &CredalSet,
) -> Result<(CredalSet, CredalSet)> {
    Ok((projective_part(m1, core)?, projective_part(m2, core)?))
}

/// `m1 ▷ m2` over `K ∪ L`.
pub fn compose(m1: &CredalSet, m2: &CredalSet) -> Result<CredalSet> {
    compose_traced(m1, m2).map(|t| t.result)
}

/// `m1 ▷ m2` together with its intermediate results.
pub fn compose_traced(m1: &CredalSet, m2: &CredalSet) -> Result<CompositionTrace> {
    compose_variant(m1, m2, Variant::default())
}

/// Composition with an explicit choice of candidate generation.
pub fn compose_variant(
    m1: &CredalSet,
    m2: &CredalSet,
    variant: Variant,
) -> Result<CompositionTrace> {
    let common = m1.scope().intersection(m2.scope())?;
    let union = m1.scope().union(m2.scope())?;
    let mut candidates: Vec<Point> = Vec::new();

    let core = common_marginal_core(m1, m2)?;
    let mut m1_projective = None;
    let mut m2_projective = None;
    let mut projective_pairs = Vec::new();
    if let Some(core) = &core {
        let (a, b) = projective_parts(m1, m2, core)?;
        let b_marginals: Vec<(Distribution, Distribution)> = b
            .vertices()
            .map(|p2| Ok((marginalize_dist(&p2, &common)?, p2)))
            .collect::<Result<_>>()?;
        for p1 in a.vertices() {
            let m = marginalize_dist(&p1, &common)?;
            for (m2v, p2) in &b_marginals {
                if *m2v == m {
                    candidates.push(conditional_product(&p1, p2)?.masses().clone());
                    projective_pairs.push((p1.clone(), p2.clone()));
                }
            }
        }
        if variant == Variant::Symmetric {
            // Fiber products in both directions between the projective parts.
            for p1 in a.vertices() {
                let q = marginalize_dist(&p1, &common)?;
                for p2 in fiber(&b, &q)?.vertices() {
                    candidates.push(conditional_product(&p1, &p2)?.masses().clone());
                    projective_pairs.push((p1.clone(), p2));
                }
            }
            for (q, p2) in &b_marginals {
                for p1 in fiber(&a, q)?.vertices() {
                    candidates.push(conditional_product(&p1, p2)?.masses().clone());
                    projective_pairs.push((p1, p2.clone()));
                }
            }
        }
        m1_projective = Some(a);
        m2_projective = Some(b);
    }

    let m2_marginal = marginalize(m2, &common)?;
    let mut projection_records = Vec::with_capacity(m1.len());
    for p1 in m1.vertices() {
        let p1_marginal = marginalize_dist(&p1, &common)?;
        let q2 = nearest_in(&p1_marginal, &m2_marginal, &common)?;
        let rule = if abs_continuous(&p1_marginal, &q2)? {
            for p2 in fiber(m2, &q2)?.vertices() {
                candidates.push(conditional_product(&p1, &p2)?.masses().clone());
            }
            Rule::A
        } else {
            for p in vacuous_extend_dist(&p1, &union)?.vertices() {
                candidates.push(p.masses().clone());
            }
            Rule::B
        };
        projection_records.push(ProjectionRecord { p1, q2, rule });
    }

    let dim = union.cell_count();
    let result = CredalSet::new(union, VertexSet::new(dim, candidates)?)?;
    Ok(CompositionTrace {
        core,
        m1_projective,
        m2_projective,
        projective_pairs,
        projection_records,
        result,
    })
}

/// Euclidean projection of `p` onto the credal set `m` (same scope).
fn nearest_in(p: &Distribution, m: &CredalSet, scope: &Scope) -> Result<Distribution> {
    let q = polytope::euclidean_project(p.masses(), m.hull())?;
    Distribution::new(scope.clone(), q)
}

/// Whether `m1 ▷ m2` and `m2 ▷ m1` are the same credal set.
pub fn commutes(m1: &CredalSet, m2: &CredalSet) -> Result<bool> {
    let forward = compose(m1, m2)?;
    let backward = compose(m2, m1)?;
    forward.set_eq(&backward)
}
