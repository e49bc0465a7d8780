use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;
use super::subspace::dot;

/// Exact verdict on positive semidefiniteness of a symmetric matrix `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdCertificate {
    /// `congruence^T * M * congruence = diag(diagonal)` with `congruence`
    /// invertible and every diagonal entry `>= 0`.
    Psd {
        diagonal: Vec<Rational>,
        congruence: RatMatrix,
    },
    /// `witness^T * M * witness = value < 0`.
    Indefinite {
        witness: Vec<Rational>,
        value: Rational,
    },
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }

    /// Re-checks the certificate against `m` from scratch.
    pub fn verify(&self, m: &RatMatrix) -> bool {
        match self {
            PsdCertificate::Psd {
                diagonal,
                congruence,
            } => {
                diagonal.iter().all(|d| !d.is_negative())
                    && congruence.is_invertible()
                    && &(&congruence.transpose() * m) * congruence == RatMatrix::diagonal(diagonal)
            }
            PsdCertificate::Indefinite { witness, value } => {
                value.is_negative() && dot(witness, &m.mul_vec(witness)) == *value
            }
        }
    }
}

/// Symmetric (congruence) elimination with diagonal pivoting.
///
/// At each step a negative remaining diagonal entry ends the search with a
/// witness; otherwise the largest positive diagonal entry is the pivot
/// (lowest index on ties). When only zero diagonal entries remain, any
/// nonzero off-diagonal entry gives a witness `b_j -/+ b_k`.
pub fn psd_certificate(m: &RatMatrix) -> PsdCertificate {
    assert!(m.is_symmetric(), "PSD certificate requires a symmetric matrix");
    let n = m.rows();
    let mut s = m.clone();
    let mut basis = RatMatrix::identity(n);
    let mut diagonal = vec![Rational::zero(); n];
    let mut remaining: Vec<usize> = (0..n).collect();

    while !remaining.is_empty() {
        if let Some(&neg) = remaining.iter().find(|&&i| s.get(i, i).is_negative()) {
            return PsdCertificate::Indefinite {
                witness: basis.column(neg),
                value: s.get(neg, neg).clone(),
            };
        }
        let pivot = remaining
            .iter()
            .copied()
            .filter(|&i| s.get(i, i).is_positive())
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if s.get(b, b) >= s.get(i, i) => Some(b),
                _ => Some(i),
            });
        let Some(p) = pivot else {
            for (a, &j) in remaining.iter().enumerate() {
                for &k in &remaining[a + 1..] {
                    let off = s.get(j, k);
                    if off.is_zero() {
                        continue;
                    }
                    let sign = if off.is_positive() { -Rational::one() } else { Rational::one() };
                    let witness: Vec<Rational> = basis
                        .column(j)
                        .iter()
                        .zip(basis.column(k))
                        .map(|(x, y)| x + &sign * y)
                        .collect();
                    let value = dot(&witness, &m.mul_vec(&witness));
                    return PsdCertificate::Indefinite { witness, value };
                }
            }
            break;
        };

        let pivot_value = s.get(p, p).clone();
        for &j in remaining.iter().filter(|&&j| j != p) {
            let t = s.get(p, j) / &pivot_value;
            if t.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = basis.get(r, j) - &t * basis.get(r, p);
                basis.set(r, j, v);
            }
            for k in 0..n {
                let v = s.get(j, k) - &t * s.get(p, k);
                s.set(j, k, v);
            }
            for k in 0..n {
                let v = s.get(k, j) - &t * s.get(k, p);
                s.set(k, j, v);
            }
        }
        diagonal[p] = pivot_value;
        remaining.retain(|&i| i != p);
    }

    PsdCertificate::Psd {
        diagonal,
        congruence: basis,
    }
}

/// Exact verdict on `||T|| <= 1` for the spectral norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractionCertificate {
    /// `I - T^T T` is PSD; carries its diagonal certificate.
    Contraction {
        diagonal: Vec<Rational>,
        congruence: RatMatrix,
    },
    /// `||T v||^2 > ||v||^2`.
    Expanding { witness: Vec<Rational> },
}

impl ContractionCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, ContractionCertificate::Contraction { .. })
    }

    /// Re-checks the certificate against `t`.
    pub fn verify(&self, t: &RatMatrix) -> bool {
        match self {
            ContractionCertificate::Contraction {
                diagonal,
                congruence,
            } => PsdCertificate::Psd {
                diagonal: diagonal.clone(),
                congruence: congruence.clone(),
            }
            .verify(&defect(t)),
            ContractionCertificate::Expanding { witness } => {
                let tv = t.mul_vec(witness);
                dot(&tv, &tv) > dot(witness, witness)
            }
        }
    }
}

fn defect(t: &RatMatrix) -> RatMatrix {
    let gram = &t.transpose() * t;
    &RatMatrix::identity(t.cols()) - &gram
}

/// Decides `||t|| <= 1` by certifying `I - t^T t` positive semidefinite.
pub fn is_contraction(t: &RatMatrix) -> ContractionCertificate {
    match psd_certificate(&defect(t)) {
        PsdCertificate::Psd {
            diagonal,
            congruence,
        } => ContractionCertificate::Contraction {
            diagonal,
            congruence,
        },
        PsdCertificate::Indefinite { witness, .. } => ContractionCertificate::Expanding { witness },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::rat;

    #[test]
    fn identity_is_contraction() {
        let t = RatMatrix::identity(3);
        let c = is_contraction(&t);
        assert!(c.holds());
        assert!(c.verify(&t));
    }

    #[test]
    fn doubling_is_not() {
        let t = RatMatrix::identity(2).scale(&rat(2, 1));
        let c = is_contraction(&t);
        assert!(!c.holds());
        assert!(c.verify(&t));
    }

    #[test]
    fn projector_is_contraction() {
        let half = rat(1, 2);
        let t = RatMatrix::from_fn(2, 2, |_, _| half.clone());
        let c = is_contraction(&t);
        assert!(c.holds());
        assert!(c.verify(&t));
    }

    #[test]
    fn zero_diagonal_with_off_diagonal_mass_is_indefinite() {
        let m = RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let cert = psd_certificate(&m);
        assert!(!cert.is_psd());
        assert!(cert.verify(&m));
    }

    #[test]
    fn rank_deficient_psd() {
        let m = RatMatrix::from_i64(3, 3, &[1, 1, 0, 1, 1, 0, 0, 0, 0]);
        let cert = psd_certificate(&m);
        assert!(cert.is_psd());
        assert!(cert.verify(&m));
    }

    #[test]
    fn sum_of_two_unit_rows_expands() {
        // [1 1] has norm sqrt(2).
        let t = RatMatrix::from_i64(1, 2, &[1, 1]);
        let c = is_contraction(&t);
        assert!(!c.holds());
        assert!(c.verify(&t));
    }
}
