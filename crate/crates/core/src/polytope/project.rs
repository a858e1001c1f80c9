//! Wolfe's minimum-norm-point procedure in exact arithmetic.

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, solve_square};
use crate::rational::Rational;

fn combination(points: &[Vec<Rational>], corral: &[usize], weights: &[Rational]) -> Vec<Rational> {
    let dim = points[0].len();
    let mut x = vec![Rational::zero(); dim];
    for (&i, w) in corral.iter().zip(weights) {
        for (xj, pj) in x.iter_mut().zip(&points[i]) {
            *xj += w * pj;
        }
    }
    x
}

/// Affine weights of the minimum-norm point of the affine hull of an affinely independent corral.
fn affine_minimizer(points: &[Vec<Rational>], corral: &[usize]) -> Vec<Rational> {
    let k = corral.len();
    let mut a = vec![vec![Rational::zero(); k + 1]; k + 1];
    for (r, &i) in corral.iter().enumerate() {
        for (c, &j) in corral.iter().enumerate() {
            a[r][c] = dot(&points[i], &points[j]);
        }
        a[r][k] = Rational::one();
        a[k][r] = Rational::one();
    }
    let mut b = vec![Rational::zero(); k + 1];
    b[k] = Rational::one();
    let mut sol = solve_square(&a, &b).expect("corral stays affinely independent");
    sol.truncate(k);
    sol
}

/// Point of minimum Euclidean norm in the convex hull of `points` (nonempty).
pub(crate) fn min_norm_point(points: &[Vec<Rational>]) -> Vec<Rational> {
    let start = (0..points.len())
        .min_by(|&a, &b| dot(&points[a], &points[a]).cmp(&dot(&points[b], &points[b])))
        .expect("at least one point");
    let mut corral = vec![start];
    let mut weights = vec![Rational::one()];
    let mut x = points[start].clone();

    loop {
        let norm2 = dot(&x, &x);
        if norm2.is_zero() {
            return x;
        }
        let (entering, support) = points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, dot(&x, p)))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("at least one point");
        if support >= norm2 || corral.contains(&entering) {
            return x;
        }
        corral.push(entering);
        weights.push(Rational::zero());

        loop {
            let alpha = affine_minimizer(points, &corral);
            if alpha.iter().all(|a| a.is_positive()) {
                x = combination(points, &corral, &alpha);
                weights = alpha;
                break;
            }
            // Step from the current weights toward alpha until some weight hits zero.
            let theta = weights
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_positive())
                .map(|(w, a)| {
                    if w.is_zero() {
                        Rational::zero()
                    } else {
                        w / (w - a)
                    }
                })
                .min()
                .expect("some weight is nonpositive");
            let keep = Rational::one() - &theta;
            let updated: Vec<Rational> = weights
                .iter()
                .zip(&alpha)
                .map(|(w, a)| &theta * a + &keep * w)
                .collect();
            let mut next_corral = Vec::with_capacity(corral.len());
            let mut next_weights = Vec::with_capacity(corral.len());
            for (i, w) in corral.iter().zip(updated) {
                if w.is_positive() {
                    next_corral.push(*i);
                    next_weights.push(w);
                }
            }
            corral = next_corral;
            weights = next_weights;
        }
    }
}
