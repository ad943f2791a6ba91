use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by gcd-pivot reduction.
///
/// The pivot at each stage is the entry of least nonzero absolute value in the
/// remaining block. Nonzero diagonal entries are positive and precede the zero
/// ones.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        move_pivot(&mut d, &mut u, &mut v, t, pi, pj);

        loop {
            // Clear column t below and row t to the right of the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder appeared in row or column t; re-pivot on it.
                let (pi, pj) = min_abs_in_cross(&d, t);
                move_pivot(&mut d, &mut u, &mut v, t, pi, pj);
                continue;
            }
            // Row and column clear. Enforce divisibility against the rest.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= e.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = d.get(t, t).abs();
    for i in t + 1..d.rows() {
        let e = d.get(i, t);
        if !e.is_zero() && e.abs() < best_abs {
            best_abs = e.abs();
            best = (i, t);
        }
    }
    for j in t + 1..d.cols() {
        let e = d.get(t, j);
        if !e.is_zero() && e.abs() < best_abs {
            best_abs = e.abs();
            best = (t, j);
        }
    }
    best
}

fn move_pivot(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize, i: usize, j: usize) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// Free rank and nontrivial invariant factors of `Z^rows / (column span of m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

/// Columns of `m` are relations among `m.rows()` generators.
pub fn cokernel_invariants(m: &IntMatrix) -> CokernelInvariants {
    let s = snf(m);
    let diag = s.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    CokernelInvariants {
        free_rank: m.rows() - rank,
        invariant_factors: diag.into_iter().filter(|x| x > &BigInt::one()).collect(),
    }
}

/// Basis of the integer kernel `{x : m x = 0}`, one basis vector per column.
///
/// The columns are the trailing columns of the right transform `v`, which is
/// unimodular, so they span a saturated sublattice.
pub fn integer_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let rank = s.rank();
    s.v.select_columns(rank..m.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_invariants(m: &IntMatrix, s: &SnfResult) {
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(2);
        let s = snf(&id);
        assert_eq!(s.d, id);
        let z = IntMatrix::zeros(2, 3);
        let s = snf(&z);
        assert!(s.d.is_zero());
        check_invariants(&z, &s);
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4).
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = snf(&m);
        check_invariants(&m, &s);
        assert_eq!(s.d, IntMatrix::from_rows(&[[2, 0], [0, 4]]));
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = IntMatrix::zeros(r, c);
            let s = snf(&m);
            check_invariants(&m, &s);
            assert_eq!(cokernel_invariants(&m).free_rank, r);
            assert_eq!(integer_kernel_basis(&m).cols(), c);
        }
    }

    #[test]
    fn divisibility_needs_fixup() {
        // diag(2, 3) is diagonal but not in Smith form.
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = snf(&m);
        check_invariants(&m, &s);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_invariants(&IntMatrix::from_rows(&[[2]]));
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.invariant_factors, vec![BigInt::from(2)]);

        let c = cokernel_invariants(&IntMatrix::zeros(3, 1));
        assert_eq!(c.free_rank, 3);
        assert!(c.invariant_factors.is_empty());

        let c = cokernel_invariants(&IntMatrix::from_rows(&[[2, 2], [2, 6]]));
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert_eq!(&col[0] + &col[1], BigInt::zero());
        assert_eq!(col[0].abs(), BigInt::one());

        let k = integer_kernel_basis(&IntMatrix::from_rows(&[[2, 1], [1, 1]]));
        assert_eq!(k.cols(), 0);

        let m = IntMatrix::from_rows(&[[2, 4]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        // Up to sign the primitive kernel vector is (2, -1).
        assert!(col == vec![BigInt::from(2), BigInt::from(-1)] || col == vec![BigInt::from(-2), BigInt::from(1)]);
    }

    #[test]
    fn kernel_is_saturated_by_enumeration() {
        // Every small integer kernel vector of [[2, 4]] is a multiple of the basis vector.
        let m = IntMatrix::from_rows(&[[2, 4]]);
        let k = integer_kernel_basis(&m);
        let b: Vec<i64> = k.column(0).iter().map(|x| i64::try_from(x).unwrap()).collect();
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                if 2 * x + 4 * y == 0 {
                    let t = if b[0] != 0 { x / b[0] } else { y / b[1] };
                    assert_eq!((t * b[0], t * b[1]), (x, y));
                }
            }
        }
    }
}
