//! Exact dense linear algebra: rank, determinants, square solves.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{sub, Scalar, Vector};

/// Row rank of a matrix, by fraction-free-enough Gaussian elimination
/// (rationals reduce as they go).
pub fn rank(mut rows: Vec<Vector>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[r][c];
            for j in c..cols {
                let t = &rows[r][j] * &f;
                rows[i][j] -= t;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a nonempty point set (0 for one point).
pub fn affine_rank(points: &[Vector]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput("point set"))?;
    let d = first.len();
    let mut diffs = Vec::with_capacity(points.len().saturating_sub(1));
    for p in &points[1..] {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        diffs.push(sub(p, first));
    }
    Ok(rank(diffs))
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(mut m: Vec<Vector>) -> Scalar {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut det = Scalar::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &m[c][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Normalized volume of a k-simplex given as k+1 points in dimension k:
/// |det(p_1 - p_0, ..., p_k - p_0)|, i.e. k! times the Euclidean volume, so
/// lattice simplices yield integers. Zero iff the simplex is degenerate.
pub fn normalized_volume(simplex: &[Vector]) -> Result<Scalar> {
    let first = simplex.first().ok_or(Error::EmptyInput("simplex"))?;
    let k = first.len();
    if simplex.len() != k + 1 {
        return Err(Error::Invalid(format!(
            "simplex in dimension {k} needs {} points, got {}",
            k + 1,
            simplex.len()
        )));
    }
    for p in simplex {
        if p.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: p.len(),
            });
        }
    }
    let diffs: Vec<Vector> = simplex[1..].iter().map(|p| sub(p, first)).collect();
    Ok(determinant(diffs).abs())
}

/// Volume of a j-simplex living in a j-dimensional affine subspace of a
/// higher-dimensional ambient space, measured by projecting onto the
/// lexicographically first coordinate subset on which the simplex has full
/// rank. Within one affine hull the projection rescales all simplices by the
/// same factor, so volume ratios are exact; for full-dimensional simplices
/// this equals `normalized_volume`.
pub fn relative_volume(simplex: &[Vector]) -> Result<Scalar> {
    let first = simplex.first().ok_or(Error::EmptyInput("simplex"))?;
    let j = simplex.len() - 1;
    let diffs: Vec<Vector> = simplex[1..].iter().map(|p| sub(p, first)).collect();
    if j == 0 {
        return Ok(Scalar::from_integer(1.into()));
    }
    let pivots = pivot_columns(diffs.clone());
    if pivots.len() < j {
        return Ok(Scalar::zero());
    }
    let square: Vec<Vector> = diffs
        .iter()
        .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
        .collect();
    Ok(determinant(square).abs())
}

/// Leftmost pivot columns found by Gaussian elimination.
fn pivot_columns(mut rows: Vec<Vector>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[r][c];
            for j in c..cols {
                let t = &rows[r][j] * &f;
                rows[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right null space `{x | M x = 0}` for an m x cols matrix.
pub fn nullspace(mut rows: Vec<Vector>, cols: usize) -> Vec<Vector> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[r][c];
            for j in c..cols {
                let t = &rows[r][j] * &f;
                rows[i][j] -= t;
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let is_pivot = {
        let mut mask = vec![false; cols];
        for &(_, c) in &pivots {
            mask[c] = true;
        }
        mask
    };
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::from_integer(1.into());
            for &(pr, pc) in &pivots {
                if !rows[pr][free].is_zero() {
                    v[pc] = -(&rows[pr][free] / &rows[pr][pc]);
                }
            }
            v
        })
        .collect()
}

/// Solves the square system M x = b exactly; None if M is singular.
pub fn solve_square(mut m: Vec<Vector>, mut b: Vector) -> Option<Vector> {
    let n = m.len();
    debug_assert_eq!(b.len(), n);
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &m[c][j] * &f;
                m[i][j] -= t;
            }
            let t = &b[c] * &f;
            b[i] -= t;
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &m[i][i])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, vec_i64};

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank(&[vec_i64(&[0, 0])]).unwrap(), 0);
        assert_eq!(
            affine_rank(&[vec_i64(&[0, 0]), vec_i64(&[1, 0]), vec_i64(&[0, 1])]).unwrap(),
            2
        );
        assert_eq!(
            affine_rank(&[vec_i64(&[0, 0]), vec_i64(&[1, 1]), vec_i64(&[2, 2])]).unwrap(),
            1
        );
    }

    #[test]
    fn normalized_volume_examples() {
        let unit = vec![vec_i64(&[0, 0]), vec_i64(&[1, 0]), vec_i64(&[0, 1])];
        assert_eq!(normalized_volume(&unit).unwrap(), int(1));
        let stretched = vec![vec_i64(&[0, 0]), vec_i64(&[2, 0]), vec_i64(&[0, 1])];
        assert_eq!(normalized_volume(&stretched).unwrap(), int(2));
        let flat = vec![vec_i64(&[0, 0]), vec_i64(&[1, 0]), vec_i64(&[2, 0])];
        assert_eq!(normalized_volume(&flat).unwrap(), int(0));
    }

    #[test]
    fn normalized_volume_rejects_wrong_cardinality() {
        assert!(normalized_volume(&[vec_i64(&[0, 0]), vec_i64(&[1, 0])]).is_err());
    }

    #[test]
    fn volume_invariances() {
        // permutation changes sign only; translation changes nothing
        let s = vec![vec_i64(&[1, 2]), vec_i64(&[4, 2]), vec_i64(&[1, 5])];
        let mut perm = s.clone();
        perm.swap(0, 2);
        assert_eq!(
            normalized_volume(&s).unwrap(),
            normalized_volume(&perm).unwrap()
        );
        let shifted: Vec<_> = s
            .iter()
            .map(|p| crate::exact::add(p, &vec_i64(&[-7, 3])))
            .collect();
        assert_eq!(
            normalized_volume(&s).unwrap(),
            normalized_volume(&shifted).unwrap()
        );
    }

    #[test]
    fn relative_volume_of_embedded_segment() {
        // segment along the diagonal of Z^2: projection picks column 0
        let s = vec![vec_i64(&[0, 0]), vec_i64(&[2, 2])];
        assert_eq!(relative_volume(&s).unwrap(), int(2));
        // a single point has relative volume 1 by convention
        assert_eq!(relative_volume(&[vec_i64(&[5, 7])]).unwrap(), int(1));
    }

    #[test]
    fn nullspace_basis() {
        // x + y + z = 0 has a 2-dimensional null space
        let rows = vec![vec_i64(&[1, 1, 1])];
        let basis = nullspace(rows.clone(), 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert_eq!(crate::exact::dot(&rows[0], v), int(0));
        }
        // full-rank square matrix has none
        assert!(nullspace(vec![vec_i64(&[1, 0]), vec_i64(&[0, 1])], 2).is_empty());
    }

    #[test]
    fn solve_square_roundtrip() {
        let m = vec![vec_i64(&[2, 1]), vec_i64(&[1, 3])];
        let b = vec_i64(&[5, 10]);
        let x = solve_square(m.clone(), b.clone()).unwrap();
        for (row, bi) in m.iter().zip(&b) {
            assert_eq!(crate::exact::dot(row, &x), *bi);
        }
        let singular = vec![vec_i64(&[1, 2]), vec_i64(&[2, 4])];
        assert!(solve_square(singular, vec_i64(&[1, 1])).is_none());
    }
}
