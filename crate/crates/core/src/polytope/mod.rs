//! Exact polyhedral kernel: V- and H-representations of bounded polytopes and the
//! operations the credal layer builds on.
//!
//! Every decision (membership, redundancy, extremality) is made in exact rational
//! arithmetic. The canonical form of a polytope is its minimal V-representation with
//! points sorted lexicographically; two polytopes are equal iff their canonical forms are.

mod dd;
mod project;

use std::fmt;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, dot, rref, solve_affine, sub};
use crate::lp::{maximize_free, minimize_standard, LpOutcome};
use crate::rational::{format_exact, primitive, Rational};

/// A point of rational space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &Point) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(sub(&self.0, &other.0))
    }
}

impl From<Vec<Rational>> for Point {
    fn from(v: Vec<Rational>) -> Self {
        Point(v)
    }
}

impl Deref for Point {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_exact(q))?;
        }
        write!(f, ")")
    }
}

/// V-representation: the convex hull of finitely many points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    dim: usize,
    points: Vec<Point>,
}

impl VertexSet {
    /// Builds a vertex set; duplicates are removed and points are sorted.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        points.sort();
        points.dedup();
        Ok(VertexSet { dim, points })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.first().map(Vec::len).ok_or(Error::NoPoints)?;
        Self::new(dim, rows.into_iter().map(Point).collect())
    }

    pub fn singleton(p: Point) -> Self {
        VertexSet {
            dim: p.dim(),
            points: vec![p],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True iff `x` is a convex combination of the points.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(in_hull(self.points.iter(), x))
    }

    /// True iff every point of `self` lies in the hull of `other`.
    pub fn is_subset_of(&self, other: &VertexSet) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        for p in &self.points {
            if !other.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One linear constraint `normal·x ≤ offset` or `normal·x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub normal: Point,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: Point, offset: Rational) -> Self {
        Constraint { normal, offset }
    }

    fn value(&self, x: &Point) -> Rational {
        self.normal.dot(x)
    }

    /// Positive rescaling to coprime integer coefficients.
    fn normalized(&self) -> Constraint {
        let mut all = self.normal.0.clone();
        all.push(self.offset.clone());
        let mut all = primitive(&all);
        let offset = all.pop().expect("offset present");
        Constraint::new(Point(all), offset)
    }

    fn as_pair(&self) -> (&[Rational], &Rational) {
        (&self.normal.0, &self.offset)
    }
}

/// H-representation: `inequalities` (`≤`) and `equalities` (`=`) over a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfspaceSystem {
    dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl HalfspaceSystem {
    pub fn new(
        dim: usize,
        inequalities: Vec<Constraint>,
        equalities: Vec<Constraint>,
    ) -> Result<Self> {
        for c in inequalities.iter().chain(&equalities) {
            check_dim(dim, c.normal.dim())?;
        }
        Ok(HalfspaceSystem {
            dim,
            inequalities,
            equalities,
        })
    }

    /// The probability simplex: nonnegative coordinates summing to one.
    pub fn simplex(dim: usize) -> Self {
        let inequalities = (0..dim)
            .map(|i| {
                let mut n = Point::zeros(dim);
                n.0[i] = -Rational::one();
                Constraint::new(n, Rational::zero())
            })
            .collect();
        let equalities = vec![Constraint::new(
            Point(vec![Rational::one(); dim]),
            Rational::one(),
        )];
        HalfspaceSystem {
            dim,
            inequalities,
            equalities,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.inequalities.iter().all(|c| c.value(x) <= c.offset)
            && self.equalities.iter().all(|c| c.value(x) == c.offset))
    }

    /// Exact LP feasibility check.
    pub fn is_feasible(&self) -> bool {
        let ineq: Vec<_> = self.inequalities.iter().map(Constraint::as_pair).collect();
        let eq: Vec<_> = self.equalities.iter().map(Constraint::as_pair).collect();
        let zero = vec![Rational::zero(); self.dim];
        !matches!(
            maximize_free(self.dim, &ineq, &eq, &zero),
            LpOutcome::Infeasible
        )
    }
}

/// Anything that can answer exact point membership.
pub trait Region {
    fn dim(&self) -> usize;
    fn contains(&self, x: &Point) -> Result<bool>;
}

impl Region for VertexSet {
    fn dim(&self) -> usize {
        self.dim
    }
    fn contains(&self, x: &Point) -> Result<bool> {
        VertexSet::contains(self, x)
    }
}

impl Region for HalfspaceSystem {
    fn dim(&self) -> usize {
        self.dim
    }
    fn contains(&self, x: &Point) -> Result<bool> {
        HalfspaceSystem::contains(self, x)
    }
}

pub fn contains<R: Region + ?Sized>(region: &R, x: &Point) -> Result<bool> {
    region.contains(x)
}

/// Dense rational matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(entries: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        for r in &entries {
            check_dim(cols, r.len())?;
        }
        Ok(LinearMap {
            rows: entries.len(),
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(((i == j) as i64).into()))
                    .collect()
            })
            .collect();
        LinearMap {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        check_dim(self.cols, x.dim())?;
        Ok(Point(self.entries.iter().map(|row| dot(row, x)).collect()))
    }

    /// `aᵀ·M` for a row vector `a` of length `rows`.
    pub fn pull_back(&self, a: &Point) -> Result<Point> {
        check_dim(self.rows, a.dim())?;
        let mut out = vec![Rational::zero(); self.cols];
        for (ai, row) in a.iter().zip(&self.entries) {
            if ai.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(row) {
                *o += ai * m;
            }
        }
        Ok(Point(out))
    }
}

/// LP membership: is `x` a convex combination of `points`?
fn in_hull<'a>(points: impl Iterator<Item = &'a Point>, x: &Point) -> bool {
    let points: Vec<&Point> = points.collect();
    if points.is_empty() {
        return false;
    }
    if points.contains(&x) {
        return true;
    }
    let dim = x.dim();
    let n = points.len();
    let mut a = Vec::with_capacity(dim + 1);
    let mut b = Vec::with_capacity(dim + 1);
    for j in 0..dim {
        a.push(points.iter().map(|p| p[j].clone()).collect::<Vec<_>>());
        b.push(x[j].clone());
    }
    a.push(vec![Rational::one(); n]);
    b.push(Rational::one());
    let cost = vec![Rational::zero(); n];
    matches!(minimize_standard(&a, &b, &cost), LpOutcome::Optimal { .. })
}

/// Extreme points only, deduplicated and sorted: the canonical form.
pub fn minimal_v(v: &VertexSet) -> VertexSet {
    let mut survivors: Vec<Point> = v.points.clone();
    let mut i = 0;
    while i < survivors.len() {
        let others = survivors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p);
        let redundant = survivors.len() > 1 && in_hull(others, &survivors[i]);
        if redundant {
            survivors.remove(i);
        } else {
            i += 1;
        }
    }
    VertexSet {
        dim: v.dim,
        points: survivors,
    }
}

/// Row-reduced, primitive form of a system of equalities; `None` when inconsistent.
fn canonical_equalities(dim: usize, eqs: &[Constraint]) -> Option<Vec<Constraint>> {
    let rows: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|c| {
            let mut r = c.normal.0.clone();
            r.push(c.offset.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&rows, dim + 1);
    if pivots.last() == Some(&dim) {
        return None;
    }
    Some(
        reduced
            .into_iter()
            .map(|r| {
                let mut r = primitive(&r);
                let offset = r.pop().expect("offset present");
                Constraint::new(Point(r), offset)
            })
            .collect(),
    )
}

/// Facets (and affine-hull equalities) of the hull of `v`.
///
/// The result is irredundant. Inequalities only involve the coordinates that
/// parametrize the affine hull, so the output is the same for any input listing
/// of the same point set.
pub fn v_to_h(v: &VertexSet) -> HalfspaceSystem {
    let dim = v.dim;
    let base = &v.points[0];
    let diffs: Vec<Vec<Rational>> = v.points[1..].iter().map(|p| sub(p, base)).collect();
    let (_, pivots) = rref(&diffs, dim);
    let normals = linalg::null_space(&diffs, dim);
    let eqs: Vec<Constraint> = normals
        .into_iter()
        .map(|n| {
            let offset = dot(&n, base);
            Constraint::new(Point(n), offset)
        })
        .collect();
    let equalities = canonical_equalities(dim, &eqs).expect("affine hull equations are consistent");

    let r = pivots.len();
    let mut inequalities = Vec::new();
    if r > 0 {
        // Inequalities b·y ≤ c on the pivot coordinates y are the extreme rays of
        // the cone {(c, b) : c − b·y_i ≥ 0 for every point}.
        let rows: Vec<Vec<Rational>> = v
            .points
            .iter()
            .map(|p| {
                let mut row = Vec::with_capacity(r + 1);
                row.push(Rational::one());
                row.extend(pivots.iter().map(|&j| -p[j].clone()));
                row
            })
            .collect();
        let rays = dd::extreme_rays(&rows, r + 1).expect("points span their affine hull");
        for ray in rays {
            let mut normal = Point::zeros(dim);
            for (k, &j) in pivots.iter().enumerate() {
                normal.0[j] = ray[k + 1].clone();
            }
            if normal.iter().all(Zero::is_zero) {
                continue;
            }
            inequalities.push(Constraint::new(normal, ray[0].clone()).normalized());
        }
        inequalities.sort();
        inequalities.dedup();
    }
    HalfspaceSystem {
        dim,
        inequalities,
        equalities,
    }
}

/// Vertices of a bounded H-polytope.
pub fn h_to_v(h: &HalfspaceSystem) -> Result<VertexSet> {
    let dim = h.dim;
    let a: Vec<Vec<Rational>> = h.equalities.iter().map(|c| c.normal.0.clone()).collect();
    let b: Vec<Rational> = h.equalities.iter().map(|c| c.offset.clone()).collect();
    let (x0, kernel) = solve_affine(&a, &b, dim).ok_or(Error::Empty)?;
    let x0 = Point(x0);
    let k = kernel.len();

    if k == 0 {
        return if h.contains(&x0)? {
            Ok(VertexSet::singleton(x0))
        } else {
            Err(Error::Empty)
        };
    }

    // Inequalities in the parameters u of x = x0 + N·u, homogenized with t ≥ 0:
    // (slack_i)·t − (a_i·N)·u ≥ 0.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(h.inequalities.len() + 1);
    let mut t_row = vec![Rational::zero(); k + 1];
    t_row[0] = Rational::one();
    rows.push(t_row);
    for c in &h.inequalities {
        let mut row = Vec::with_capacity(k + 1);
        row.push(&c.offset - c.value(&x0));
        row.extend(kernel.iter().map(|n| -dot(&c.normal, n)));
        rows.push(row);
    }

    let Some(rays) = dd::extreme_rays(&rows, k + 1) else {
        return Err(if h.is_feasible() {
            Error::Unbounded
        } else {
            Error::Empty
        });
    };
    let mut vertices = Vec::new();
    let mut recedes = false;
    for ray in rays {
        let t = &ray[0];
        if t.is_zero() {
            recedes = true;
            continue;
        }
        let mut x = x0.0.clone();
        for (u, n) in ray[1..].iter().zip(&kernel) {
            let w = u / t;
            for (xj, nj) in x.iter_mut().zip(n) {
                *xj += &w * nj;
            }
        }
        vertices.push(Point(x));
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    if recedes {
        return Err(Error::Unbounded);
    }
    VertexSet::new(dim, vertices)
}

/// Drops every inequality implied by the rest; equalities are row-reduced.
pub fn minimal_h(h: &HalfspaceSystem) -> Result<HalfspaceSystem> {
    let dim = h.dim;
    let equalities = canonical_equalities(dim, &h.equalities).ok_or(Error::Empty)?;
    let mut candidates: Vec<Constraint> = Vec::new();
    for c in &h.inequalities {
        if c.normal.iter().all(Zero::is_zero) {
            if c.offset.is_negative() {
                return Err(Error::Empty);
            }
            continue;
        }
        candidates.push(c.normalized());
    }
    candidates.sort();
    candidates.dedup();

    let system = HalfspaceSystem {
        dim,
        inequalities: candidates,
        equalities,
    };
    if !system.is_feasible() {
        return Err(Error::Empty);
    }
    let HalfspaceSystem {
        inequalities: mut candidates,
        equalities,
        ..
    } = system;

    let eq: Vec<_> = equalities.iter().map(Constraint::as_pair).collect();
    let mut i = 0;
    while i < candidates.len() {
        let others: Vec<_> = candidates
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.as_pair())
            .collect();
        let target = &candidates[i];
        let redundant = match maximize_free(dim, &others, &eq, &target.normal) {
            LpOutcome::Optimal { value, .. } => value <= target.offset,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => unreachable!("a relaxation of a feasible system is feasible"),
        };
        if redundant {
            candidates.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(HalfspaceSystem {
        dim,
        inequalities: candidates,
        equalities,
    })
}

/// Concatenates both systems and removes redundancy.
///
/// An infeasible intersection is returned unreduced; `h_to_v` then reports [`Error::Empty`].
pub fn intersect(a: &HalfspaceSystem, b: &HalfspaceSystem) -> Result<HalfspaceSystem> {
    check_dim(a.dim, b.dim)?;
    let joined = HalfspaceSystem {
        dim: a.dim,
        inequalities: a
            .inequalities
            .iter()
            .chain(&b.inequalities)
            .cloned()
            .collect(),
        equalities: a.equalities.iter().chain(&b.equalities).cloned().collect(),
    };
    match minimal_h(&joined) {
        Ok(h) => Ok(h),
        Err(Error::Empty) => Ok(joined),
        Err(e) => Err(e),
    }
}

/// Canonical hull of the images of the points under `m`.
pub fn image(v: &VertexSet, m: &LinearMap) -> Result<VertexSet> {
    check_dim(m.cols, v.dim)?;
    let pts = v
        .points
        .iter()
        .map(|p| m.apply(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(minimal_v(&VertexSet::new(m.rows, pts)?))
}

/// The system `{x : m·x ∈ set(h)}` in the source dimension of `m`.
pub fn preimage_constraints(h: &HalfspaceSystem, m: &LinearMap) -> Result<HalfspaceSystem> {
    check_dim(m.rows, h.dim)?;
    let pull = |c: &Constraint| -> Result<Constraint> {
        Ok(Constraint::new(m.pull_back(&c.normal)?, c.offset.clone()))
    };
    Ok(HalfspaceSystem {
        dim: m.cols,
        inequalities: h.inequalities.iter().map(pull).collect::<Result<_>>()?,
        equalities: h.equalities.iter().map(pull).collect::<Result<_>>()?,
    })
}

/// Hull equality, decided on canonical forms.
pub fn equal(a: &VertexSet, b: &VertexSet) -> Result<bool> {
    check_dim(a.dim, b.dim)?;
    Ok(minimal_v(a).points == minimal_v(b).points)
}

/// The unique point of `conv(v)` nearest to `x` in Euclidean distance, exactly.
pub fn euclidean_project(x: &Point, v: &VertexSet) -> Result<Point> {
    check_dim(v.dim, x.dim())?;
    let shifted: Vec<Vec<Rational>> = v.points.iter().map(|p| sub(p, x)).collect();
    let offset = project::min_norm_point(&shifted);
    let p = Point(linalg::add(x, &offset));
    debug_assert!(v
        .points
        .iter()
        .all(|q| x.sub(&p).dot(&q.sub(&p)) <= Rational::zero()));
    Ok(p)
}
