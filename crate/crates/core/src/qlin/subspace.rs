use num_traits::Zero;

use super::matrix::RatMatrix;
use super::rational::Rational;

/// A subspace of `Q^ambient`, stored by its reduced row-echelon basis.
///
/// The basis is canonical, so `==` decides subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors. Panics if a vector has the wrong length.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let m = RatMatrix::from_rows(vectors, ambient).expect("ragged spanning set");
        assert_eq!(m.cols(), ambient, "spanning vector has wrong length");
        Subspace::from_row_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_row_matrix(m: &RatMatrix) -> Self {
        let rref = m.rref();
        let basis = rref.matrix.block(0, 0, rref.rank, m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: rref.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows, in reduced row-echelon form.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient");
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.transpose().mul_vec(&coeffs);
        (recon.as_slice() == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// `{ v : v . s = 0 for every s in self }`.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    /// Orthogonal projector onto the subspace: `B^T (B B^T)^{-1} B` for the
    /// basis matrix `B`.
    pub fn orthogonal_projection(&self) -> RatMatrix {
        let b = &self.basis;
        let bt = b.transpose();
        &bt * &self.coordinate_map()
    }

    /// Matrix sending `v` in the ambient space to the echelon-basis
    /// coordinates of its orthogonal projection: `(B B^T)^{-1} B`.
    pub fn coordinate_map(&self) -> RatMatrix {
        let b = &self.basis;
        if b.rows() == 0 {
            return RatMatrix::zeros(0, self.ambient);
        }
        let gram = b * &b.transpose();
        let inv = gram.inverse().expect("Gram matrix of a basis is invertible");
        &inv * b
    }

    /// Inclusion `Q^dim -> Q^ambient` in echelon coordinates: `B^T`.
    pub fn inclusion(&self) -> RatMatrix {
        self.basis.transpose()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let m = RatMatrix::vstack(self.ambient, &[&self.basis, &other.basis]);
        Subspace::from_row_matrix(&m)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// True when every basis vector of `self` is orthogonal to every basis
    /// vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Subspace) -> bool {
        let prod = &self.basis * &other.basis.transpose();
        prod.is_zero()
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &RatMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let images = &self.basis * &m.transpose();
        Subspace::from_row_matrix(&images)
    }
}

/// Dot product.
pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::rat;

    fn v(entries: &[i64]) -> Vec<Rational> {
        entries.iter().map(|&e| rat(e, 1)).collect()
    }

    #[test]
    fn complement_examples() {
        let s = Subspace::span(2, vec![v(&[1, 0])]);
        assert_eq!(s.orthogonal_complement(), Subspace::span(2, vec![v(&[0, 1])]));

        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));

        let s = Subspace::span(2, vec![v(&[1, -1])]);
        assert_eq!(s.orthogonal_complement(), Subspace::span(2, vec![v(&[1, 1])]));
    }

    #[test]
    fn projection_examples() {
        assert!(Subspace::full(3).orthogonal_projection().is_identity());
        assert!(Subspace::zero(2).orthogonal_projection().is_zero());

        let p = Subspace::span(2, vec![v(&[1, 1])]).orthogonal_projection();
        let half = rat(1, 2);
        assert_eq!(
            p,
            RatMatrix::from_fn(2, 2, |_, _| half.clone())
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let x = v(&[2, 5, 7]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(s.inclusion().mul_vec(&c), x);
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, vec![v(&[0, 1, 0])]));
    }

    #[test]
    fn dot_is_bilinear_sum() {
        assert_eq!(dot(&v(&[1, 2]), &v(&[3, 4])), rat(11, 1));
    }
}
