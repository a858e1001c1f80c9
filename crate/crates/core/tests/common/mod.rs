#![allow(dead_code)]

use std::path::PathBuf;

use credal_core::io::{parse_credal, CredalFile};
use credal_core::rational::{parse_rational, ratio, to_f64};
use credal_core::{CredalSet, Rational, Scope, Variable};

pub const TOLERANCE: f64 = 5e-3;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load(name: &str) -> CredalSet {
    let bytes = std::fs::read(fixture_path(&format!("{name}.json"))).unwrap();
    parse_credal(&bytes).unwrap().into_credal_set().unwrap()
}

/// Rows of an expected-output fixture, read as floats without any hull reduction.
pub fn expected_rows(name: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let bytes = std::fs::read(fixture_path(&format!("expected/{name}.json"))).unwrap();
    let file: CredalFile = serde_json::from_slice(&bytes).unwrap();
    let rows = file
        .vertices
        .unwrap()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| to_f64(&parse_rational(x).unwrap()))
                .collect()
        })
        .collect();
    (file.scope, rows)
}

pub fn rows_f64(m: &CredalSet) -> Vec<Vec<f64>> {
    m.hull()
        .points()
        .iter()
        .map(|p| p.iter().map(to_f64).collect())
        .collect()
}

/// A bijection between the rows with every entry within `tol`.
pub fn rows_match(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let close = |i: usize, j: usize| {
        a[i].len() == b[j].len() && a[i].iter().zip(&b[j]).all(|(x, y)| (x - y).abs() <= tol)
    };
    let mut owner: Vec<Option<usize>> = vec![None; b.len()];
    fn augment(
        i: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
        close: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        for j in 0..owner.len() {
            if !seen[j] && close(i, j) {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, seen, owner, close)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    (0..a.len()).all(|i| augment(i, &mut vec![false; b.len()], &mut owner, &close))
}

pub fn scope(names: &[&str]) -> Scope {
    Scope::new(names.iter().map(|n| Variable::binary(n)).collect()).unwrap()
}

/// Normalizes nonnegative integer weights (not all zero) to a distribution.
pub fn normalize(weights: &[u32]) -> Vec<Rational> {
    let total: u32 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| ratio(w as i64, total as i64))
        .collect()
}
