use num_traits::Zero;

use super::matrix::RatMatrix;
use super::rational::Rational;
use super::subspace::Subspace;

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// `particular + kernel` is the full solution set.
    Feasible {
        particular: Vec<Rational>,
        kernel: Subspace,
    },
    /// `rank(A) < rank([A | b])`.
    Infeasible { rank: usize, augmented_rank: usize },
}

impl LinearSolution {
    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Feasible { particular, .. } => Some(particular),
            LinearSolution::Infeasible { .. } => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, LinearSolution::Feasible { kernel, .. } if kernel.dim() == 0)
    }
}

pub fn solve_linear_system(a: &RatMatrix, b: &[Rational]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length does not match row count");
    let rhs = RatMatrix::column_vector(b);
    match solve_matrix_equation(a, &rhs) {
        MatrixSolution::Feasible { particular, kernel } => LinearSolution::Feasible {
            particular: particular.column(0),
            kernel,
        },
        MatrixSolution::Infeasible {
            rank,
            augmented_rank,
            ..
        } => LinearSolution::Infeasible {
            rank,
            augmented_rank,
        },
    }
}

/// Solution set of `A X = B` for a matrix unknown `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSolution {
    /// Every column of `X` is the matching column of `particular` plus an
    /// element of `kernel`.
    Feasible {
        particular: RatMatrix,
        kernel: Subspace,
    },
    /// The first column of `B` outside the column space of `A`.
    Infeasible {
        column: usize,
        rank: usize,
        augmented_rank: usize,
    },
}

impl MatrixSolution {
    /// The solution when it exists and is unique.
    pub fn unique(self) -> Option<RatMatrix> {
        match self {
            MatrixSolution::Feasible { particular, kernel } if kernel.dim() == 0 => Some(particular),
            _ => None,
        }
    }
}

pub fn solve_matrix_equation(a: &RatMatrix, b: &RatMatrix) -> MatrixSolution {
    assert_eq!(a.rows(), b.rows(), "A and B must have equal row counts");
    let n = a.cols();
    let aug = RatMatrix::hstack(a.rows(), &[a, b]);
    let rref = aug.rref();
    let rank = rref.pivots.iter().filter(|&&p| p < n).count();
    if let Some(&bad) = rref.pivots.iter().find(|&&p| p >= n) {
        return MatrixSolution::Infeasible {
            column: bad - n,
            rank,
            augmented_rank: rank + 1,
        };
    }
    let mut particular = RatMatrix::zeros(n, b.cols());
    for (i, &p) in rref.pivots.iter().enumerate() {
        for c in 0..b.cols() {
            let value = rref.matrix.get(i, n + c).clone();
            if !value.is_zero() {
                particular.set(p, c, value);
            }
        }
    }
    MatrixSolution::Feasible {
        particular,
        kernel: a.kernel(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::rat;

    fn v(entries: &[i64]) -> Vec<Rational> {
        entries.iter().map(|&e| rat(e, 1)).collect()
    }

    #[test]
    fn identity_system() {
        let s = solve_linear_system(&RatMatrix::identity(3), &v(&[4, 5, 6]));
        assert_eq!(s.particular().unwrap(), v(&[4, 5, 6]).as_slice());
        assert!(s.is_unique());
    }

    #[test]
    fn underdetermined_system() {
        let s = solve_linear_system(&RatMatrix::from_i64(1, 2, &[1, 1]), &v(&[1]));
        match s {
            LinearSolution::Feasible { particular, kernel } => {
                assert_eq!(particular, v(&[1, 0]));
                assert_eq!(kernel, Subspace::span(2, vec![v(&[1, -1])]));
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let s = solve_linear_system(&RatMatrix::from_i64(2, 1, &[1, 1]), &v(&[1, 2]));
        assert_eq!(
            s,
            LinearSolution::Infeasible {
                rank: 1,
                augmented_rank: 2
            }
        );
    }

    #[test]
    fn matrix_equation_unique() {
        let a = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let x = RatMatrix::from_i64(2, 3, &[1, 0, -2, 3, 1, 1]);
        let b = &a * &x;
        assert_eq!(solve_matrix_equation(&a, &b).unique(), Some(x));
    }
}
