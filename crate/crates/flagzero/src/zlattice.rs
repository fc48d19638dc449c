//! Exact integer and rational linear algebra on small dense matrices.
//!
//! The torsion-index computation keeps integer lattice bases in a canonical
//! echelon form (Hermite-style); the Schubert-basis expansion solves rational
//! systems by Gauss elimination. Everything is arbitrary precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Canonical Hermite-style echelon form of the row span of `rows`.
///
/// Returns a basis of the integer row span: pivots positive, entries above a
/// pivot reduced into `[0, pivot)`, rows ordered by pivot column. Rows are
/// inserted one at a time and reduced against the existing pivots as they
/// come in (Euclid steps at each pivot column, smallest value kept as the
/// pivot), which keeps intermediate entries small. The canonical form is
/// unique for the span, so the output is independent of the input order.
pub fn hermite_basis(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows.sort();
    rows.dedup();

    // pivot[col] = row with leading nonzero (positive) entry at col
    let mut pivot: Vec<Option<Vec<BigInt>>> = vec![None; width];
    for row in rows {
        insert_row(&mut pivot, row, width);
    }

    let mut basis: Vec<Vec<BigInt>> = pivot.into_iter().flatten().collect();

    // Normalise entries above each pivot into [0, pivot), left to right so
    // earlier reductions are not disturbed by later ones.
    for i in 0..basis.len() {
        let pcol = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        for j in 0..i {
            let q = div_floor_ref(&basis[j][pcol], &basis[i][pcol]);
            if !q.is_zero() {
                let (head, tail) = basis.split_at_mut(i);
                for (x, p) in head[j].iter_mut().zip(&tail[0]) {
                    *x -= &q * p;
                }
            }
        }
    }
    basis
}

fn insert_row(pivot: &mut [Option<Vec<BigInt>>], mut row: Vec<BigInt>, width: usize) {
    for col in 0..width {
        if row[col].is_zero() {
            continue;
        }
        match &mut pivot[col] {
            slot @ None => {
                if row[col].is_negative() {
                    for x in row.iter_mut() {
                        *x = -&*x;
                    }
                }
                *slot = Some(row);
                return;
            }
            Some(b) => {
                // Euclid at this column: leave the gcd in the pivot row and
                // a zero in the incoming row.
                loop {
                    let q = div_floor_ref(&row[col], &b[col]);
                    if !q.is_zero() {
                        for (x, p) in row.iter_mut().zip(b.iter()) {
                            *x -= &q * p;
                        }
                    }
                    if row[col].is_zero() {
                        break;
                    }
                    std::mem::swap(b, &mut row);
                }
            }
        }
    }
}

fn div_floor_ref(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

/// Solve `A·z = b` over the rationals (columns of `a` are the generators).
/// Returns one solution or `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = b.len();
    let cols = a.len();
    debug_assert!(a.iter().all(|c| c.len() == rows));
    // Augmented matrix in row-major form.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..cols).map(|c| a[c][r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x /= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pivot_row, row) = if r < rank {
                    let (a, b) = m.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (x, p) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut z = vec![BigRational::zero(); cols];
    for (col, pr) in pivot_of_col.iter().enumerate() {
        if let Some(pr) = pr {
            z[col] = m[*pr][cols].clone();
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn br(n: i64) -> BigRational {
        BigRational::from_integer(bi(n))
    }

    #[test]
    fn hermite_of_single_column_is_gcd() {
        let rows = vec![vec![bi(6)], vec![bi(10)], vec![bi(15)]];
        let b = hermite_basis(rows, 1);
        assert_eq!(b, vec![vec![bi(1)]]);

        let rows = vec![vec![bi(4)], vec![bi(6)]];
        assert_eq!(hermite_basis(rows, 1), vec![vec![bi(2)]]);
    }

    #[test]
    fn hermite_is_order_independent() {
        let rows1 = vec![
            vec![bi(2), bi(4), bi(4)],
            vec![bi(-6), bi(6), bi(12)],
            vec![bi(10), bi(0), bi(-8)],
        ];
        let mut rows2 = rows1.clone();
        rows2.reverse();
        assert_eq!(hermite_basis(rows1, 3), hermite_basis(rows2, 3));
    }

    #[test]
    fn hermite_canonical_shape() {
        let rows = vec![vec![bi(3), bi(7)], vec![bi(0), bi(5)]];
        let b = hermite_basis(rows, 2);
        assert_eq!(b.len(), 2);
        // pivots positive, above-pivot entry reduced mod 5
        assert_eq!(b[0][0], bi(3));
        assert!(b[0][1] >= bi(0) && b[0][1] < bi(5));
        assert_eq!(b[1], vec![bi(0), bi(5)]);
    }

    #[test]
    fn solve_simple_system() {
        // columns (1,0), (1,1); rhs (3,2) → z = (1,2)
        let a = vec![vec![br(1), br(0)], vec![br(1), br(1)]];
        let b = vec![br(3), br(2)];
        let z = solve_rational(&a, &b).unwrap();
        assert_eq!(z, vec![br(1), br(2)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![br(1), br(2)]];
        let b = vec![br(1), br(3)];
        assert!(solve_rational(&a, &b).is_none());
    }

    #[test]
    fn solve_underdetermined_picks_some_solution() {
        // one equation, two unknowns: x + y = 2
        let a = vec![vec![br(1)], vec![br(1)]];
        let b = vec![br(2)];
        let z = solve_rational(&a, &b).unwrap();
        assert_eq!(&z[0] + &z[1], br(2));
    }
}
