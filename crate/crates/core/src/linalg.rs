//! Dense exact linear algebra over rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: &[Vec<Rational>], width: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).take(width) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub(crate) fn rank(rows: &[Vec<Rational>], width: usize) -> usize {
    rref(rows, width).1.len()
}

/// Basis of `{x : rows·x = 0}`, one vector per free column.
pub(crate) fn null_space(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, width);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); width];
            v[free] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Solution set of `a·x = b` as `x0 + span(basis)`, or `None` when inconsistent.
pub(crate) fn solve_affine(
    a: &[Vec<Rational>],
    b: &[Rational],
    width: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&augmented, width + 1);
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); width];
    for (row, &p) in r.iter().zip(&pivots) {
        x0[p] = row[width].clone();
    }
    let lhs: Vec<Vec<Rational>> = r
        .into_iter()
        .map(|mut row| {
            row.truncate(width);
            row
        })
        .collect();
    Some((x0, null_space(&lhs, width)))
}

/// Unique solution of a square system, `None` when singular.
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let (x0, kernel) = solve_affine(a, b, n)?;
    kernel.is_empty().then_some(x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn null_space_is_orthogonal() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = null_space(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0]).is_zero());
        }
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn square_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve_square(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(
            x,
            vec![crate::rational::ratio(4, 5), crate::rational::ratio(7, 5)]
        );
        assert!(solve_square(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn inconsistent_affine() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(solve_affine(&a, &[int(1), int(2)], 2).is_none());
        let (x0, k) = solve_affine(&a, &[int(1), int(1)], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&a[0], &x0), int(1));
    }
}
