//! Inputs shared by the benchmarks.

use credal_core::rational::{int, ratio};
use credal_core::{CredalSet, Rational, Scope, Variable, VertexSet};

fn scope(names: &[&str]) -> Scope {
    Scope::new(names.iter().map(|n| Variable::binary(n)).collect()).expect("distinct names")
}

fn tenths(rows: &[[i64; 4]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| ratio(x, 10)).collect())
        .collect()
}

/// The non-projective pair over X1X2 and X2X3 with 23 and 16 vertex compositions.
pub fn non_projective_pair() -> (CredalSet, CredalSet) {
    let m1 = CredalSet::from_rows(
        scope(&["X1", "X2"]),
        tenths(&[[2, 8, 0, 0], [1, 4, 1, 4], [3, 2, 3, 2], [0, 0, 6, 4]]),
    )
    .expect("valid distributions");
    let mut m2_rows = tenths(&[[0, 3, 0, 7], [2, 1, 4, 3], [0, 0, 0, 0], [5, 0, 5, 0]]);
    m2_rows[2] = vec![ratio(1, 4); 4];
    let m2 = CredalSet::from_rows(scope(&["X2", "X3"]), m2_rows).expect("valid distributions");
    (m1, m2)
}

/// `n` points on the moment curve in dimension `dim`: a cyclic polytope.
pub fn cyclic_polytope(dim: usize, n: usize) -> VertexSet {
    let rows = (1..=n as i64)
        .map(|t| (1..=dim as u32).map(|k| int(t.pow(k))).collect())
        .collect();
    VertexSet::from_rows(rows).expect("at least one point")
}

/// The `dim`-dimensional cube with 0/1 vertices.
pub fn cube(dim: usize) -> VertexSet {
    let rows = (0..1u32 << dim)
        .map(|mask| (0..dim).map(|k| int(((mask >> k) & 1) as i64)).collect())
        .collect();
    VertexSet::from_rows(rows).expect("at least one point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use credal_core::compose;

    #[test]
    fn fixtures_have_expected_sizes() {
        let (m1, m2) = non_projective_pair();
        assert_eq!(compose(&m1, &m2).unwrap().len(), 23);
        assert_eq!(cyclic_polytope(4, 8).len(), 8);
        assert_eq!(cube(3).len(), 8);
    }
}
