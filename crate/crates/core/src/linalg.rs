//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::arith::{primitive, primitive_up_to_sign, Int, Rat, RationalVector};

fn to_rat_rows(rows: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rat>>, ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Int>], ncols: usize) -> usize {
    rref(to_rat_rows(rows), ncols).1.len()
}

pub fn rank_rat(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// A basis of `{x : row . x = 0 for every row}` as primitive integer vectors.
pub fn nullspace(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let (reduced, pivots) = rref(to_rat_rows(rows), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            RationalVector(v).primitive()
        })
        .collect()
}

/// The canonical basis of the row space: RREF rows scaled to primitive integers.
pub fn canonical_row_basis(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let (reduced, _) = rref(to_rat_rows(rows), ncols);
    reduced
        .into_iter()
        .map(|r| primitive_up_to_sign(RationalVector(r).primitive()))
        .collect()
}

/// Orthogonal projection of `v` onto the orthogonal complement of `span(basis)`,
/// returned as a primitive integer vector with the same direction.
pub fn project_out(v: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    if basis.is_empty() {
        return primitive(v.to_vec());
    }
    let k = basis.len();
    let dot_rat = |a: &[Int], b: &[Int]| Rat::from_integer(crate::arith::dot(a, b));
    // Solve (B B^T) alpha = B v.
    let mut aug: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rat> = (0..k).map(|j| dot_rat(&basis[i], &basis[j])).collect();
            row.push(dot_rat(&basis[i], v));
            row
        })
        .collect();
    aug = rref(aug, k).0;
    let alpha: Vec<Rat> = aug.iter().map(|r| r[k].clone()).collect();
    let out: Vec<Rat> = (0..v.len())
        .map(|j| {
            let mut x = Rat::from_integer(v[j].clone());
            for (a, b) in alpha.iter().zip(basis) {
                x -= a * Rat::from_integer(b[j].clone());
            }
            x
        })
        .collect();
    RationalVector(out).primitive()
}

/// Coordinates `y` with `sum y_i basis_i = x`, if `x` lies in the span.
/// The basis must be linearly independent.
pub fn coordinates_in(basis: &[RationalVector], x: &RationalVector) -> Option<RationalVector> {
    let k = basis.len();
    let n = x.len();
    // Columns are basis vectors; augmented with x.
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(x[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![Rat::zero(); k];
    for (row, &p) in reduced.iter().zip(&pivots) {
        y[p] = row[k].clone();
    }
    Some(RationalVector(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{dot, to_ints};

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![to_ints(&[1, 1, 0]), to_ints(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn projection_removes_component() {
        let basis = vec![to_ints(&[0, 0, 1])];
        assert_eq!(project_out(&to_ints(&[2, 4, 7]), &basis), to_ints(&[1, 2, 0]));
    }

    #[test]
    fn coordinates_found_only_in_span() {
        let b = vec![RationalVector::from_ints(&[1, 0, 0]), RationalVector::from_ints(&[0, 1, 1])];
        let y = coordinates_in(&b, &RationalVector::from_ints(&[2, 3, 3])).unwrap();
        assert_eq!(y, RationalVector::from_ints(&[2, 3]));
        assert!(coordinates_in(&b, &RationalVector::from_ints(&[0, 1, 0])).is_none());
    }
}
