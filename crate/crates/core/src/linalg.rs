//! Exact rank computation by Gaussian elimination over a field.

use crate::scalar::Scalar;

/// Rank of the row span, by plain Gaussian elimination with exact field
/// division. Rows must share a common width.
pub fn rank_of_rows<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let width = match rows.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    assert!(
        rows.iter().all(|r| r.len() == width),
        "rows must have equal width"
    );
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot_row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= factor.clone() * p.clone();
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the affine hull of a point family: the rank of the
/// differences from the first point. Empty and single-point families have
/// affine rank 0.
pub fn affine_rank_of_points<S: Scalar>(points: &[Vec<S>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<S>> = rest
        .iter()
        .map(|p| {
            assert_eq!(p.len(), first.len(), "points must share a dimension");
            p.iter()
                .zip(first)
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    rank_of_rows(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use num_traits::{One, Zero};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of_rows::<Rat>(vec![]), 0);
        assert_eq!(rank_of_rows(vec![v(&[0, 0, 0])]), 0);
        assert_eq!(rank_of_rows(vec![v(&[1, 2, 3])]), 1);
        assert_eq!(rank_of_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 6])]), 1);
        assert_eq!(rank_of_rows(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
        // identity has full rank
        let id: Vec<Vec<Rat>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        assert_eq!(rank_of_rows(id), 5);
        // fractions stay exact: rows differing by 10^-large are independent
        let a = vec![rat(1, 3), rat(1, 7)];
        let mut b = a.clone();
        b[1] += rat(1, 1_000_000_007);
        assert_eq!(rank_of_rows(vec![a, b]), 2);
    }

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank_of_points::<Rat>(&[]), 0);
        assert_eq!(affine_rank_of_points(&[v(&[4, 5])]), 0);
        // three collinear points
        assert_eq!(
            affine_rank_of_points(&[v(&[0, 0]), v(&[1, 1]), v(&[2, 2])]),
            1
        );
        // a triangle
        assert_eq!(
            affine_rank_of_points(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]),
            2
        );
    }
}
