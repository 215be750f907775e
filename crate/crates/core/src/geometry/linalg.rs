//! Exact linear algebra over `Q`: elimination, affine rank, barycentric
//! coordinates, and a small phase-one simplex for feasibility questions.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..m[r].len() {
                    let sub = &factor * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Affine rank of a point list: the dimension of its affine hull, or
/// `None` for an empty list.
pub fn affine_dimension(points: &[&[BigRational]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Matrix = rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    Some(if diffs.is_empty() { 0 } else { rank(&diffs) })
}

/// Solves `sum_i lambda_i v_i = p`, `sum_i lambda_i = 1` for affinely
/// independent `v_i`. Returns `None` when `p` is off the affine hull.
pub fn barycentric(vertices: &[&[BigRational]], p: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = vertices.len();
    let n = p.len();
    // columns: lambda_0..lambda_{k-1}, rhs
    let mut m: Matrix = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = vertices.iter().map(|v| v[row].clone()).collect();
            r.push(p[row].clone());
            r
        })
        .collect();
    let mut ones = vec![BigRational::one(); k];
    ones.push(BigRational::one());
    m.push(ones);
    let pivots = row_reduce(&mut m, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        sol[col] = m[row][k].clone();
    }
    Some(sol)
}

/// Is `{x >= 0 : A x = b}` nonempty? Phase one of the simplex method with
/// Bland's rule, exact over `Q`.
pub fn feasible_nonneg(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    // tableau columns: original vars, artificials, rhs
    let width = vars + rows + 1;
    let mut t: Matrix = Vec::with_capacity(rows + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let sign = |x: &BigRational| if flip { -x } else { x.clone() };
        let mut r: Vec<BigRational> = row.iter().map(sign).collect();
        r.extend((0..rows).map(|j| if j == i { BigRational::one() } else { BigRational::zero() }));
        r.push(sign(rhs));
        t.push(r);
    }
    // objective row: minimise the sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for r in &t {
        for c in 0..vars {
            obj[c] -= &r[c];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();
    loop {
        let Some(enter) = (0..vars + rows).find(|&c| obj[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((j, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*j]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded below cannot happen for a sum of nonnegatives
            break;
        };
        let inv = t[pr][enter].recip();
        for x in t[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != pr && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for c in 0..width {
                    let sub = &f * &t[pr][c];
                    t[i][c] -= sub;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for c in 0..width {
                let sub = &f * &t[pr][c];
                obj[c] -= sub;
            }
        }
        basis[pr] = enter;
    }
    obj[width - 1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn row(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn rank_and_dimension() {
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(&[row(&[1, 0]), row(&[0, 1])]), 2);
        let pts = [row(&[0, 0]), row(&[1, 1]), row(&[2, 2])];
        let refs: Vec<&[BigRational]> = pts.iter().map(|p| p.as_slice()).collect();
        assert_eq!(affine_dimension(&refs), Some(1));
        assert_eq!(affine_dimension(&refs[..1]), Some(0));
        assert_eq!(affine_dimension(&[]), None);
    }

    #[test]
    fn barycentric_coordinates() {
        let tri = [row(&[0, 0]), row(&[1, 0]), row(&[0, 1])];
        let refs: Vec<&[BigRational]> = tri.iter().map(|p| p.as_slice()).collect();
        let l = barycentric(&refs, &[q(1, 4), q(1, 2)]).unwrap();
        assert_eq!(l, vec![q(1, 4), q(1, 4), q(1, 2)]);
        let seg = [row(&[0, 0]), row(&[1, 1])];
        let refs: Vec<&[BigRational]> = seg.iter().map(|p| p.as_slice()).collect();
        assert!(barycentric(&refs, &[q(1, 2), q(1, 3)]).is_none());
        assert_eq!(barycentric(&refs, &[q(1, 3), q(1, 3)]).unwrap(), vec![q(2, 3), q(1, 3)]);
    }

    #[test]
    fn feasibility() {
        // x + y = 1, x - y = 3 has x = 2, y = -1: infeasible for x, y >= 0
        assert!(!feasible_nonneg(&[row(&[1, 1]), row(&[1, -1])], &[q(1, 1), q(3, 1)]));
        assert!(feasible_nonneg(&[row(&[1, 1]), row(&[1, -1])], &[q(3, 1), q(1, 1)]));
        // negative right-hand side handled by row flips
        assert!(feasible_nonneg(&[row(&[-1, -1])], &[q(-2, 1)]));
        assert!(!feasible_nonneg(&[row(&[1, 1])], &[q(-2, 1)]));
        // degenerate, redundant rows
        assert!(feasible_nonneg(&[row(&[1, 1, 0]), row(&[2, 2, 0]), row(&[0, 0, 1])], &[q(1, 1), q(2, 1), q(0, 1)]));
        assert!(feasible_nonneg(&[], &[]));
    }
}
