//! Reduced Goeritz matrix and fraction-free integer elimination.

use num_bigint::BigInt;
use num_traits::Signed;

use super::planar::PlanarDiagram;
use crate::Int;

/// Determinant by Bareiss elimination. Every intermediate value is a minor
/// of the input, so the division at each step is exact.
pub fn bareiss_determinant<I: Int>(matrix: &[Vec<I>]) -> I {
    let n = matrix.len();
    if n == 0 {
        return I::one();
    }
    let mut a: Vec<Vec<I>> = matrix.to_vec();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Goeritz matrix over the colour-0 faces, with the first shaded face's
/// row and column deleted.
pub fn reduced_goeritz(d: &PlanarDiagram) -> Vec<Vec<BigInt>> {
    let faces = d.faces();
    let types = d.crossing_types(&faces);
    let shaded: Vec<usize> = (0..faces.count).filter(|&f| faces.colour[f] == 0).collect();
    let mut index = vec![usize::MAX; faces.count];
    for (i, &f) in shaded.iter().enumerate() {
        index[f] = i;
    }
    let m = shaded.len();
    let mut g = vec![vec![0i64; m]; m];
    for (c, &eta) in types.iter().enumerate() {
        let k = if eta == 1 { 0 } else { 1 };
        let f = index[faces.corner[4 * c + k]];
        let h = index[faces.corner[4 * c + k + 2]];
        if f == h {
            continue;
        }
        let eta = i64::from(eta);
        g[f][h] -= eta;
        g[h][f] -= eta;
        g[f][f] += eta;
        g[h][h] += eta;
    }
    g.into_iter()
        .skip(1)
        .map(|row| row.into_iter().skip(1).map(BigInt::from).collect())
        .collect()
}

/// Link determinant from the reduced Goeritz matrix; 0 for split diagrams.
pub fn goeritz_determinant(d: &PlanarDiagram) -> BigInt {
    if !d.is_connected() {
        return BigInt::from(0);
    }
    if d.crossing_count() == 0 {
        return BigInt::from(1);
    }
    bareiss_determinant(&reduced_goeritz(d)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0, 1], vec![0, 2, 3], vec![4, 5, 6]],
            vec![vec![1, 2], vec![2, 4]],
            vec![
                vec![3, -1, -2, 0],
                vec![-1, 4, 0, -3],
                vec![-2, 0, 5, -3],
                vec![0, -3, -3, 7],
            ],
        ];
        for m in cases {
            assert_eq!(bareiss_determinant(&m), cofactor_det(&m), "{m:?}");
        }
        assert_eq!(bareiss_determinant::<i64>(&[]), 1);
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let trefoil =
            PlanarDiagram::from_labels(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap();
        assert_eq!(goeritz_determinant(&trefoil), BigInt::from(3));
        let fig8 = PlanarDiagram::from_labels(
            &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
            0,
        )
        .unwrap();
        assert_eq!(goeritz_determinant(&fig8), BigInt::from(5));
        assert_eq!(goeritz_determinant(&PlanarDiagram::unknot()), BigInt::from(1));
    }
}
