//! Double description method for pointed polyhedral cones.

use num_traits::{Signed, Zero};

use crate::linalg::{dot, rank, solve_square};
use crate::rational::{primitive, Rational};

struct Ray {
    z: Vec<Rational>,
    /// `tight[i]` is set when constraint `i` (in processing order) vanishes on the ray.
    tight: Vec<bool>,
}

/// Extreme rays of `{z : row·z ≥ 0 for every row}`, each scaled to a primitive integer vector.
///
/// Returns `None` when the rows do not have full column rank `d`, i.e. the cone has
/// a nontrivial lineality space and is not pointed.
pub(crate) fn extreme_rays(rows: &[Vec<Rational>], d: usize) -> Option<Vec<Vec<Rational>>> {
    // Seed with d linearly independent rows: their cone is simplicial.
    let mut order: Vec<usize> = Vec::with_capacity(rows.len());
    let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        basis.push(row.clone());
        if rank(&basis, d) == basis.len() {
            order.push(i);
        } else {
            basis.pop();
        }
    }
    if basis.len() < d {
        return None;
    }
    let rest: Vec<usize> = (0..rows.len()).filter(|i| !order.contains(i)).collect();
    order.extend(rest);

    // Columns of the inverse of the seed matrix.
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let e: Vec<Rational> = (0..d)
                .map(|i| Rational::from_integer(((i == k) as i64).into()))
                .collect();
            let z = solve_square(&basis, &e).expect("seed rows are independent");
            let mut tight = vec![false; rows.len()];
            for (pos, t) in tight.iter_mut().enumerate().take(d) {
                *t = pos != k;
            }
            Ray {
                z: primitive(&z),
                tight,
            }
        })
        .collect();

    for (step, &ri) in order.iter().enumerate().skip(d) {
        let row = &rows[ri];
        let values: Vec<Rational> = rays.iter().map(|r| dot(row, &r.z)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                r.tight[step] = v.is_zero();
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = (0..step)
                    .filter(|&c| rays[p].tight[c] && rays[n].tight[c])
                    .collect();
                if common.len() + 2 < d {
                    continue;
                }
                // Combinatorial adjacency: no third ray is tight on all of `common`.
                let adjacent = (0..rays.len())
                    .all(|o| o == p || o == n || !common.iter().all(|&c| rays[o].tight[c]));
                if !adjacent {
                    continue;
                }
                let z: Vec<Rational> = rays[n]
                    .z
                    .iter()
                    .zip(&rays[p].z)
                    .map(|(zn, zp)| &values[p] * zn - &values[n] * zp)
                    .collect();
                let mut tight = vec![false; rows.len()];
                for &c in &common {
                    tight[c] = true;
                }
                tight[step] = true;
                next.push(Ray {
                    z: primitive(&z),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if !v.is_negative() {
                r.tight[step] = v.is_zero();
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    let mut out: Vec<Vec<Rational>> = rays.into_iter().map(|r| r.z).collect();
    out.sort();
    out.dedup();
    Some(out)
}
