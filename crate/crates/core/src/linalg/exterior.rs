use itertools::Itertools;
use num_rational::BigRational;

use super::{LinalgError, RatMatrix};

/// The `q`-th exterior power of a square matrix.
///
/// Basis vectors of the exterior power are the `q`-subsets of `0..d` in
/// lexicographic order; the entry at `(S, T)` is the `S x T` minor.
pub fn exterior_power_matrix(m: &RatMatrix, q: usize) -> Result<RatMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    if q > d {
        return Err(LinalgError::DegreeOutOfRange { q, d });
    }
    let subsets: Vec<Vec<usize>> = (0..d).combinations(q).collect();
    let n = subsets.len();
    let mut data: Vec<BigRational> = Vec::with_capacity(n * n);
    for rows in &subsets {
        for cols in &subsets {
            let minor = RatMatrix::from_fn(q, q, |i, j| m.get(rows[i], cols[j]).clone());
            data.push(minor.det()?);
        }
    }
    RatMatrix::new(n, n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn sample() -> RatMatrix {
        RatMatrix::from_fractions(&[
            [(1, 1), (2, 1), (0, 1)],
            [(-1, 2), (3, 1), (1, 1)],
            [(4, 1), (0, 1), (5, 3)],
        ])
    }

    #[test]
    fn degree_zero_is_one() {
        let e = exterior_power_matrix(&sample(), 0).unwrap();
        assert_eq!(e, RatMatrix::identity(1));
    }

    #[test]
    fn degree_one_is_identity_map() {
        let m = sample();
        assert_eq!(exterior_power_matrix(&m, 1).unwrap(), m);
    }

    #[test]
    fn top_degree_is_determinant() {
        let m = sample();
        let e = exterior_power_matrix(&m, 3).unwrap();
        assert_eq!(e.rows(), 1);
        assert_eq!(e.get(0, 0), &m.det().unwrap());
    }

    #[test]
    fn scalar_matrix_powers() {
        // n * I acts on the q-th exterior power as n^q * I.
        let n = BigRational::from_integer(BigInt::from(3));
        for q in 0..=4 {
            let e = exterior_power_matrix(&RatMatrix::identity(4).scale(&n), q).unwrap();
            let expected = RatMatrix::identity(e.rows()).scale(&num_traits::pow(n.clone(), q));
            assert_eq!(e, expected);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            exterior_power_matrix(&sample(), 4),
            Err(LinalgError::DegreeOutOfRange { q: 4, d: 3 })
        ));
        assert!(exterior_power_matrix(&RatMatrix::zeros(2, 3), 1).is_err());
        assert!(exterior_power_matrix(&RatMatrix::zeros(0, 0), 0)
            .unwrap()
            .get(0, 0)
            .is_one());
    }
}
