//! Variables, scopes, distributions and credal sets.
//!
//! Cells of a scope are ordered lexicographically over the scope's variable order,
//! with the last variable varying fastest. For two binary variables with levels
//! `x1, ~x1` and `x2, ~x2` the cell order is `x1x2, x1~x2, ~x1x2, ~x1~x2`.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::{
    self, h_to_v, intersect, preimage_constraints, v_to_h, Constraint, HalfspaceSystem, LinearMap,
    Point, VertexSet,
};
use crate::rational::Rational;

/// A finite variable with ordered level labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    levels: Vec<String>,
}

impl Variable {
    pub fn new(name: impl Into<String>, levels: Vec<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::ScopeMismatch("variable name is empty".into()));
        }
        if levels.is_empty() {
            return Err(Error::ScopeMismatch(format!(
                "variable {name} has no levels"
            )));
        }
        let mut seen = HashSet::new();
        for l in &levels {
            if !seen.insert(l.as_str()) {
                return Err(Error::ScopeMismatch(format!(
                    "variable {name} repeats level {l:?}"
                )));
            }
        }
        Ok(Variable { name, levels })
    }

    /// Two levels `x` and `~x`, where `x` is the lowercased name.
    pub fn binary(name: &str) -> Self {
        let low = name.to_lowercase();
        Variable {
            name: name.to_string(),
            levels: vec![low.clone(), format!("~{low}")],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn cardinality(&self) -> usize {
        self.levels.len()
    }
}

/// An ordered group of distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scope {
    variables: Vec<Variable>,
}

impl Scope {
    pub fn new(variables: Vec<Variable>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::ScopeMismatch(format!(
                    "variable {} appears twice",
                    v.name
                )));
            }
        }
        Ok(Scope { variables })
    }

    pub fn empty() -> Self {
        Scope::default()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn names(&self) -> Vec<&str> {
        self.variables.iter().map(|v| v.name.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// `|𝕏_K|`; the empty scope has a single cell.
    pub fn cell_count(&self) -> usize {
        self.variables.iter().map(Variable::cardinality).product()
    }

    pub fn get(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name == name)
    }

    /// The sub-scope made of `names`, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<Scope> {
        let vars = names
            .iter()
            .map(|n| {
                self.get(n)
                    .cloned()
                    .ok_or_else(|| Error::ScopeMismatch(format!("variable {n} is not in scope")))
            })
            .collect::<Result<Vec<_>>>()?;
        Scope::new(vars)
    }

    fn check_compatible(&self, other: &Scope) -> Result<()> {
        for v in &other.variables {
            if let Some(mine) = self.get(&v.name) {
                if mine != v {
                    return Err(Error::ScopeMismatch(format!(
                        "variable {} has different levels in the two scopes",
                        v.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Variables shared with `other`, in this scope's order.
    pub fn intersection(&self, other: &Scope) -> Result<Scope> {
        self.check_compatible(other)?;
        Ok(Scope {
            variables: self
                .variables
                .iter()
                .filter(|v| other.get(&v.name).is_some())
                .cloned()
                .collect(),
        })
    }

    /// This scope's variables followed by the ones only `other` has.
    pub fn union(&self, other: &Scope) -> Result<Scope> {
        self.check_compatible(other)?;
        let mut variables = self.variables.clone();
        variables.extend(
            other
                .variables
                .iter()
                .filter(|v| self.get(&v.name).is_none())
                .cloned(),
        );
        Ok(Scope { variables })
    }

    /// True iff every variable of `sub` occurs here with the same levels.
    pub fn includes(&self, sub: &Scope) -> bool {
        sub.variables.iter().all(|v| self.get(&v.name) == Some(v))
    }

    /// Same variables, possibly in a different order.
    pub fn same_variables(&self, other: &Scope) -> bool {
        self.len() == other.len() && self.includes(other)
    }

    /// For every cell of this scope, the index of its restriction to `sub`.
    pub fn cell_map(&self, sub: &Scope) -> Result<Vec<usize>> {
        let positions = sub
            .variables
            .iter()
            .map(
                |v| match self.variables.iter().position(|w| w.name == v.name) {
                    Some(p) if self.variables[p] == *v => Ok(p),
                    Some(_) => Err(Error::ScopeMismatch(format!(
                        "variable {} has different levels in the two scopes",
                        v.name
                    ))),
                    None => Err(Error::ScopeMismatch(format!(
                        "variable {} is not in scope",
                        v.name
                    ))),
                },
            )
            .collect::<Result<Vec<_>>>()?;
        let cards: Vec<usize> = self.variables.iter().map(Variable::cardinality).collect();
        let mut digits = vec![0usize; cards.len()];
        let mut out = Vec::with_capacity(self.cell_count());
        for _ in 0..self.cell_count() {
            let idx = positions
                .iter()
                .fold(0, |acc, &p| acc * cards[p] + digits[p]);
            out.push(idx);
            for k in (0..cards.len()).rev() {
                digits[k] += 1;
                if digits[k] < cards[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    /// Cell labels in cell order, each label the concatenated level names.
    pub fn cell_labels(&self) -> Vec<String> {
        let mut labels = vec![String::new()];
        for v in &self.variables {
            labels = labels
                .iter()
                .flat_map(|prefix| v.levels.iter().map(move |l| format!("{prefix}{l}")))
                .collect();
        }
        labels
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

fn validate_masses(scope: &Scope, masses: &Point, row: usize) -> Result<()> {
    let violation = |reason: String| Error::InvariantViolation { row, reason };
    if masses.dim() != scope.cell_count() {
        return Err(violation(format!(
            "{} masses for {} cells",
            masses.dim(),
            scope.cell_count()
        )));
    }
    if let Some(col) = masses.iter().position(Signed::is_negative) {
        return Err(violation(format!("negative mass in column {col}")));
    }
    let total: Rational = masses.iter().sum();
    if !total.is_one() {
        return Err(violation(format!(
            "masses sum to {}",
            crate::rational::format_exact(&total)
        )));
    }
    Ok(())
}

/// A probability distribution over the cells of a scope.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Distribution {
    scope: Scope,
    masses: Point,
}

impl Distribution {
    pub fn new(scope: Scope, masses: Point) -> Result<Self> {
        validate_masses(&scope, &masses, 0)?;
        Ok(Distribution { scope, masses })
    }

    pub(crate) fn new_unchecked(scope: Scope, masses: Point) -> Self {
        debug_assert!(validate_masses(&scope, &masses, 0).is_ok());
        Distribution { scope, masses }
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn masses(&self) -> &Point {
        &self.masses
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.masses.dim())
            .filter(|&i| !self.masses[i].is_zero())
            .collect()
    }
}

/// A credal set stored as the sorted list of its extreme distributions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CredalSet {
    scope: Scope,
    hull: VertexSet,
}

impl CredalSet {
    /// Validates every point as a distribution and reduces to extreme points.
    pub fn new(scope: Scope, points: VertexSet) -> Result<Self> {
        if points.dim() != scope.cell_count() {
            return Err(Error::DimensionMismatch {
                expected: scope.cell_count(),
                found: points.dim(),
            });
        }
        for (row, p) in points.points().iter().enumerate() {
            validate_masses(&scope, p, row)?;
        }
        Ok(CredalSet {
            scope,
            hull: polytope::minimal_v(&points),
        })
    }

    pub fn from_rows(scope: Scope, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = scope.cell_count();
        let points = VertexSet::new(dim, rows.into_iter().map(Point::new).collect())?;
        Self::new(scope, points)
    }

    pub fn singleton(p: Distribution) -> Self {
        CredalSet {
            hull: VertexSet::singleton(p.masses),
            scope: p.scope,
        }
    }

    /// Wraps points already known to be extreme distributions.
    fn from_extreme(scope: Scope, hull: VertexSet) -> Self {
        debug_assert_eq!(hull.dim(), scope.cell_count());
        CredalSet { scope, hull }
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn hull(&self) -> &VertexSet {
        &self.hull
    }

    pub fn len(&self) -> usize {
        self.hull.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hull.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.hull.len() == 1
    }

    /// Extreme distributions in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Distribution> + '_ {
        self.hull
            .points()
            .iter()
            .map(|p| Distribution::new_unchecked(self.scope.clone(), p.clone()))
    }

    pub fn to_h(&self) -> HalfspaceSystem {
        v_to_h(&self.hull)
    }

    pub fn contains(&self, p: &Distribution) -> Result<bool> {
        let p = reorder_dist(p, &self.scope)?;
        self.hull.contains(&p.masses)
    }

    /// The same credal set with its cells laid out in `target`'s variable order.
    pub fn reorder(&self, target: &Scope) -> Result<CredalSet> {
        if !self.scope.same_variables(target) {
            return Err(Error::ScopeMismatch(format!(
                "cannot reorder {} as {}",
                self.scope, target
            )));
        }
        if self.scope == *target {
            return Ok(self.clone());
        }
        let map = marginal_map(&self.scope, target)?;
        Ok(CredalSet::from_extreme(
            target.clone(),
            polytope::image(&self.hull, &map)?,
        ))
    }

    /// Set equality, insensitive to variable order.
    pub fn set_eq(&self, other: &CredalSet) -> Result<bool> {
        let other = other.reorder(&self.scope)?;
        polytope::equal(&self.hull, &other.hull)
    }

    /// Set inclusion `self ⊆ other`, insensitive to variable order.
    pub fn is_subset_of(&self, other: &CredalSet) -> Result<bool> {
        let other = other.reorder(&self.scope)?;
        self.hull.is_subset_of(&other.hull)
    }
}

fn reorder_dist(p: &Distribution, target: &Scope) -> Result<Distribution> {
    if p.scope == *target {
        return Ok(p.clone());
    }
    if !p.scope.same_variables(target) {
        return Err(Error::ScopeMismatch(format!(
            "{} is not a layout of {}",
            p.scope, target
        )));
    }
    marginalize_dist(p, target)
}

/// The 0-1 aggregation matrix from cells of `k` to cells of its sub-scope `l`.
pub fn marginal_map(k: &Scope, l: &Scope) -> Result<LinearMap> {
    let cells = k.cell_map(l)?;
    let mut entries = vec![vec![Rational::zero(); k.cell_count()]; l.cell_count()];
    for (c, &target) in cells.iter().enumerate() {
        entries[target][c] = Rational::one();
    }
    LinearMap::new(entries, k.cell_count())
}

/// Element-wise marginalization of the extreme points.
pub fn marginalize(m: &CredalSet, l: &Scope) -> Result<CredalSet> {
    if m.scope == *l {
        return Ok(m.clone());
    }
    let map = marginal_map(&m.scope, l)?;
    Ok(CredalSet::from_extreme(
        l.clone(),
        polytope::image(&m.hull, &map)?,
    ))
}

pub fn marginalize_dist(p: &Distribution, l: &Scope) -> Result<Distribution> {
    let cells = p.scope.cell_map(l)?;
    let mut masses = vec![Rational::zero(); l.cell_count()];
    for (c, &target) in cells.iter().enumerate() {
        masses[target] += &p.masses[c];
    }
    Ok(Distribution::new_unchecked(l.clone(), Point::new(masses)))
}

/// Solves a bounded H-system whose vertices are distributions over `scope`.
fn credal_from_h(scope: &Scope, h: &HalfspaceSystem) -> Result<CredalSet> {
    let v = h_to_v(h)?;
    Ok(CredalSet::from_extreme(scope.clone(), v))
}

/// The largest credal set over `k` whose marginal on `m`'s scope is `m`.
pub fn vacuous_extend(m: &CredalSet, k: &Scope) -> Result<CredalSet> {
    if !k.includes(&m.scope) {
        return Err(Error::ScopeMismatch(format!(
            "{} does not include {}",
            k, m.scope
        )));
    }
    if m.scope == *k {
        return Ok(m.clone());
    }
    let map = marginal_map(k, &m.scope)?;
    let lifted = preimage_constraints(&m.to_h(), &map)?;
    let system = intersect(&lifted, &HalfspaceSystem::simplex(k.cell_count()))?;
    credal_from_h(k, &system)
}

/// All extreme points of `{P over k : P↓ = p}`.
pub fn vacuous_extend_dist(p: &Distribution, k: &Scope) -> Result<CredalSet> {
    vacuous_extend(&CredalSet::singleton(p.clone()), k)
}

/// Marginals on the common variables coincide (always true for disjoint scopes).
pub fn is_projective(m1: &CredalSet, m2: &CredalSet) -> Result<bool> {
    let common = m1.scope.intersection(&m2.scope)?;
    let a = marginalize(m1, &common)?;
    let b = marginalize(m2, &common)?;
    polytope::equal(&a.hull, &b.hull)
}

/// `p ≪ q`: wherever `q` vanishes, so does `p`.
pub fn abs_continuous(p: &Distribution, q: &Distribution) -> Result<bool> {
    let q = reorder_dist(q, &p.scope)?;
    Ok(p.masses
        .iter()
        .zip(q.masses.iter())
        .all(|(a, b)| !b.is_zero() || a.is_zero()))
}

/// `p1·p2 / p2↓(K∩L)` over `K ∪ L` (K's variables first), with `0/0 = 0`.
pub fn conditional_product(p1: &Distribution, p2: &Distribution) -> Result<Distribution> {
    let common = p1.scope.intersection(&p2.scope)?;
    let union = p1.scope.union(&p2.scope)?;
    let m1 = marginalize_dist(p1, &common)?;
    let m2 = marginalize_dist(p2, &common)?;
    if !abs_continuous(&m1, &m2)? {
        return Err(Error::NotAbsolutelyContinuous);
    }
    let to_k = union.cell_map(&p1.scope)?;
    let to_l = union.cell_map(&p2.scope)?;
    let to_common = union.cell_map(&common)?;
    let masses = (0..union.cell_count())
        .map(|c| {
            let den = &m2.masses[to_common[c]];
            if den.is_zero() {
                Rational::zero()
            } else {
                &p1.masses[to_k[c]] * &p2.masses[to_l[c]] / den
            }
        })
        .collect();
    Ok(Distribution::new_unchecked(union, Point::new(masses)))
}

/// Hull of the products of extreme points, for disjoint scopes.
pub fn strong_product(m1: &CredalSet, m2: &CredalSet) -> Result<CredalSet> {
    let common = m1.scope.intersection(&m2.scope)?;
    if !common.is_empty() {
        return Err(Error::ScopesOverlap(
            common.names().into_iter().map(String::from).collect(),
        ));
    }
    let union = m1.scope.union(&m2.scope)?;
    let mut points = Vec::with_capacity(m1.len() * m2.len());
    for a in m1.vertices() {
        for b in m2.vertices() {
            points.push(conditional_product(&a, &b)?.masses);
        }
    }
    let dim = union.cell_count();
    CredalSet::new(union, VertexSet::new(dim, points)?)
}

/// Members of `m` whose marginal on `q`'s scope equals `q`.
pub fn fiber(m: &CredalSet, q: &Distribution) -> Result<CredalSet> {
    if !m.scope.includes(&q.scope) {
        return Err(Error::ScopeMismatch(format!(
            "{} does not include {}",
            m.scope, q.scope
        )));
    }
    let n = q.scope.cell_count();
    let pin = (0..n)
        .map(|i| {
            let mut coords = vec![Rational::zero(); n];
            coords[i] = Rational::one();
            Constraint::new(Point::new(coords), q.masses[i].clone())
        })
        .collect();
    let pinned = HalfspaceSystem::new(n, Vec::new(), pin)?;
    let map = marginal_map(&m.scope, &q.scope)?;
    let system = intersect(&m.to_h(), &preimage_constraints(&pinned, &map)?)?;
    match credal_from_h(&m.scope, &system) {
        Err(Error::Empty) => Err(Error::EmptyFiber),
        other => other,
    }
}
