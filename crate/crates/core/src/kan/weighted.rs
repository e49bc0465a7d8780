use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fincat::{elements_category, elements_category_contra, CommaCat, Variance};
use crate::limits::SizeLimits;
use crate::qlin::{is_contraction, ContractionCertificate, RatMatrix, Rational, Subspace};
use crate::setfun::SetFunctor;
use crate::vectfun::{self, factor_through_coordinates, ColimitResult, ConeData, LimitResult, VectFunctor};

/// A cylinder under `G` with weight `F` and vertex `Q^vertex`: one matrix
/// `G(i) -> vertex` per object `i` and element `f in F(i)`.
///
/// For weighted limits the same shape is used with the arrows reversed:
/// matrices `vertex -> G(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub vertex: usize,
    pub components: Vec<Vec<RatMatrix>>,
    /// When set, [`Cylinder::validate_under`] also certifies every
    /// component as a contraction.
    pub contraction_mode: bool,
}

impl Cylinder {
    pub fn zero_under(f: &SetFunctor, g: &VectFunctor, vertex: usize) -> Cylinder {
        Cylinder {
            vertex,
            components: (0..g.dims().len())
                .map(|i| vec![RatMatrix::zeros(vertex, g.dim(i)); f.set(i).len()])
                .collect(),
            contraction_mode: false,
        }
    }

    pub fn component(&self, i: usize, x: usize) -> &RatMatrix {
        &self.components[i][x]
    }

    /// Checks shapes and `c(i, F alpha (y)) = c(j, y) G(alpha)` for every
    /// `alpha : i -> j` and `y in F(j)`.
    pub fn validate_under(&self, f: &SetFunctor, g: &VectFunctor) -> Result<()> {
        check_weight_pair(f, g, Variance::Contravariant)?;
        self.check_shapes(f, g, false)?;
        let cat = f.source();
        for alpha in 0..cat.num_morphisms() {
            let (i, j) = (cat.dom(alpha), cat.cod(alpha));
            for y in 0..f.set(j).len() {
                let x = f.apply(alpha, y);
                if self.components[i][x] != &self.components[j][y] * g.map(alpha) {
                    return Err(Error::NotACylinder(format!(
                        "identity fails at arrow {} and element {} of F({})",
                        cat.morphism(alpha).label,
                        f.set(j)[y],
                        cat.object_label(j)
                    )));
                }
            }
        }
        if self.contraction_mode {
            for (i, comps) in self.components.iter().enumerate() {
                for (x, c) in comps.iter().enumerate() {
                    if !is_contraction(c).holds() {
                        return Err(Error::NotACylinder(format!(
                            "component ({}, {}) is not a contraction",
                            cat.object_label(i),
                            f.set(i)[x]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks shapes and `G(alpha) c(i, x) = c(j, F alpha (x))` for every
    /// `alpha : i -> j` and `x in F(i)`.
    pub fn validate_over(&self, f: &SetFunctor, g: &VectFunctor) -> Result<()> {
        check_weight_pair(f, g, Variance::Covariant)?;
        self.check_shapes(f, g, true)?;
        let cat = f.source();
        for alpha in 0..cat.num_morphisms() {
            let (i, j) = (cat.dom(alpha), cat.cod(alpha));
            for x in 0..f.set(i).len() {
                if g.map(alpha) * &self.components[i][x] != self.components[j][f.apply(alpha, x)] {
                    return Err(Error::NotACylinder(format!(
                        "identity fails at arrow {} and element {} of F({})",
                        cat.morphism(alpha).label,
                        f.set(i)[x],
                        cat.object_label(i)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_shapes(&self, f: &SetFunctor, g: &VectFunctor, outward: bool) -> Result<()> {
        if self.components.len() != g.dims().len() {
            return Err(Error::NotACylinder(format!(
                "{} component families for {} objects",
                self.components.len(),
                g.dims().len()
            )));
        }
        for (i, comps) in self.components.iter().enumerate() {
            if comps.len() != f.set(i).len() {
                return Err(Error::NotACylinder(format!(
                    "{} components at object {i}, weight has {} elements",
                    comps.len(),
                    f.set(i).len()
                )));
            }
            let expected = if outward {
                (g.dim(i), self.vertex)
            } else {
                (self.vertex, g.dim(i))
            };
            if let Some(c) = comps.iter().find(|c| c.shape() != expected) {
                return Err(Error::NotACylinder(format!(
                    "component at object {i} has shape {:?}, expected {:?}",
                    c.shape(),
                    expected
                )));
            }
        }
        Ok(())
    }
}

fn check_weight_pair(f: &SetFunctor, g: &VectFunctor, weight: Variance) -> Result<()> {
    if f.source() != g.source() {
        return Err(Error::SourceMismatch);
    }
    if f.variance() != weight || g.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch(format!(
            "expected a {} weight and a covariant diagram",
            weight.as_str()
        )));
    }
    Ok(())
}

/// `F * G` realized as the orthogonal complement of the relation span in
/// `V = (+)_{i, f in F(i)} G(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedColimitResult {
    pub ambient: usize,
    /// Offset of copy `(i, f)` in `V`, ordered by object then element.
    pub copy_offsets: Vec<Vec<usize>>,
    pub relations: Subspace,
    pub apex: Subspace,
    /// `V -> apex` coordinates of the orthogonal projection.
    pub coordinates: RatMatrix,
    /// `lambda(i, f)`, in echelon coordinates of the apex.
    pub universal: Cylinder,
}

impl WeightedColimitResult {
    pub fn apex_dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn copy_index(&self, i: usize, f: usize, basis: usize) -> usize {
        self.copy_offsets[i][f] + basis
    }

    /// `lambda(i, f)` as a map into `V`: projection after the copy
    /// inclusion. Its norm is the norm of `lambda(i, f)` for the inner
    /// product the apex inherits from `V`.
    pub fn lambda_ambient(&self, i: usize, f: usize) -> RatMatrix {
        let inclusion = self.apex.inclusion();
        &inclusion * &self.universal.components[i][f]
    }

    /// Contraction verdict for every universal component, ordered by copy.
    pub fn lambda_certificates(&self) -> Vec<ContractionCertificate> {
        let mut out = Vec::new();
        for (i, comps) in self.universal.components.iter().enumerate() {
            for f in 0..comps.len() {
                out.push(is_contraction(&self.lambda_ambient(i, f)));
            }
        }
        out
    }

    /// Stacks a cylinder into one `vertex x ambient` matrix, copy by copy.
    pub fn stack(&self, beta: &Cylinder) -> RatMatrix {
        let mut out = RatMatrix::zeros(beta.vertex, self.ambient);
        for (i, comps) in beta.components.iter().enumerate() {
            for (f, c) in comps.iter().enumerate() {
                out.set_block(0, self.copy_offsets[i][f], c);
            }
        }
        out
    }

    /// See [`factor_cylinder`].
    pub fn factor(&self, f: &SetFunctor, g: &VectFunctor, beta: &Cylinder) -> Result<Factorization> {
        factor_cylinder(self, f, g, beta)
    }
}

/// The unique map out of a weighted colimit through which a cylinder
/// factors, with a contraction verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `apex -> vertex`, in echelon coordinates of the apex.
    pub map: RatMatrix,
    /// Verdict on `map . coordinates : V -> vertex`, which agrees with
    /// `map` on the apex and vanishes on the relations.
    pub contraction: ContractionCertificate,
}

/// Builds `V`, the relation span `R` and `R^perp` from the generators
/// `e(i, F alpha (y), b) - sum_r G(alpha)[r][b] e(j, y, r)` over arrows
/// `alpha : i -> j`, elements `y in F(j)` and basis vectors `b` of `G(i)`.
pub fn weighted_colimit_orthogonal(
    f: &SetFunctor,
    g: &VectFunctor,
    limits: &SizeLimits,
) -> Result<WeightedColimitResult> {
    check_weight_pair(f, g, Variance::Contravariant)?;
    let cat = f.source();
    let mut copy_offsets = Vec::with_capacity(cat.num_objects());
    let mut ambient = 0usize;
    for i in 0..cat.num_objects() {
        let mut row = Vec::with_capacity(f.set(i).len());
        for _ in 0..f.set(i).len() {
            row.push(ambient);
            ambient += g.dim(i);
        }
        copy_offsets.push(row);
    }
    limits.check_ambient("weighted colimit ambient space", ambient)?;

    let mut generators = Vec::new();
    for alpha in 0..cat.num_morphisms() {
        if cat.is_identity(alpha) {
            continue;
        }
        let (i, j) = (cat.dom(alpha), cat.cod(alpha));
        let ga = g.map(alpha);
        for y in 0..f.set(j).len() {
            let x = f.apply(alpha, y);
            for b in 0..g.dim(i) {
                let mut v = vec![Rational::zero(); ambient];
                v[copy_offsets[i][x] + b] += Rational::one();
                for r in 0..g.dim(j) {
                    v[copy_offsets[j][y] + r] -= ga.get(r, b);
                }
                generators.push(v);
            }
        }
    }
    let relations = Subspace::span(ambient, generators);
    let apex = relations.orthogonal_complement();
    let coordinates = apex.coordinate_map();
    let components = (0..cat.num_objects())
        .map(|i| {
            copy_offsets[i]
                .iter()
                .map(|&off| coordinates.block(0, off, apex.dim(), g.dim(i)))
                .collect()
        })
        .collect();
    let universal = Cylinder {
        vertex: apex.dim(),
        components,
        contraction_mode: false,
    };
    Ok(WeightedColimitResult {
        ambient,
        copy_offsets,
        relations,
        apex,
        coordinates,
        universal,
    })
}

/// Solves `T . coordinates = stacked(beta)`; the solution is unique and
/// restricts to `beta` on every copy.
pub fn factor_cylinder(
    result: &WeightedColimitResult,
    f: &SetFunctor,
    g: &VectFunctor,
    beta: &Cylinder,
) -> Result<Factorization> {
    beta.validate_under(f, g)?;
    let stacked = result.stack(beta);
    let map = factor_through_coordinates(&result.coordinates, &stacked)?;
    let contraction = is_contraction(&(&map * &result.coordinates));
    Ok(Factorization { map, contraction })
}

/// `F * G` computed as the colimit of `G` over the opposite category of
/// elements of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientColimit {
    pub elements: CommaCat,
    pub diagram: VectFunctor,
    pub colimit: ColimitResult,
    pub universal: Cylinder,
}

impl QuotientColimit {
    pub fn apex_dim(&self) -> usize {
        self.colimit.apex_dim()
    }

    /// The unique map `apex -> vertex` through which `beta` factors.
    pub fn factor(&self, f: &SetFunctor, g: &VectFunctor, beta: &Cylinder) -> Result<RatMatrix> {
        beta.validate_under(f, g)?;
        let legs = self
            .elements
            .labels
            .iter()
            .map(|&(i, x)| beta.components[i][x].clone())
            .collect();
        let cocone = ConeData {
            apex: beta.vertex,
            legs,
        };
        self.colimit.factor(&self.diagram, &cocone)
    }
}

pub fn weighted_colimit_quotient(
    f: &SetFunctor,
    g: &VectFunctor,
    limits: &SizeLimits,
) -> Result<QuotientColimit> {
    check_weight_pair(f, g, Variance::Contravariant)?;
    let elements = elements_category_contra(f, limits)?;
    let diagram = g.reindex(&elements.projection)?;
    let colimit = vectfun::colimit(&diagram)?;
    let universal = regroup(f, &elements, &colimit.injections, colimit.apex_dim());
    Ok(QuotientColimit {
        elements,
        diagram,
        colimit,
        universal,
    })
}

/// `{F, G}` computed as the limit of `G` over the category of elements of
/// `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedLimitResult {
    pub elements: CommaCat,
    pub diagram: VectFunctor,
    pub limit: LimitResult,
    /// Legs `apex -> G(i)`, one per element of `F(i)`.
    pub universal: Cylinder,
}

impl WeightedLimitResult {
    pub fn apex(&self) -> &Subspace {
        &self.limit.apex
    }

    pub fn apex_dim(&self) -> usize {
        self.limit.apex_dim()
    }

    /// The unique `t : vertex -> apex` with `universal(i, x) . t = mu(i, x)`.
    pub fn factor(&self, f: &SetFunctor, g: &VectFunctor, mu: &Cylinder) -> Result<RatMatrix> {
        mu.validate_over(f, g)?;
        let legs = self
            .elements
            .labels
            .iter()
            .map(|&(i, x)| mu.components[i][x].clone())
            .collect();
        let cone = ConeData {
            apex: mu.vertex,
            legs,
        };
        self.limit.factor(&self.diagram, &cone)
    }
}

pub fn weighted_limit(f: &SetFunctor, g: &VectFunctor, limits: &SizeLimits) -> Result<WeightedLimitResult> {
    check_weight_pair(f, g, Variance::Covariant)?;
    let elements = elements_category(f, limits)?;
    let diagram = g.reindex(&elements.projection)?;
    let limit = vectfun::limit(&diagram)?;
    let universal = regroup(f, &elements, &limit.legs, limit.apex_dim());
    Ok(WeightedLimitResult {
        elements,
        diagram,
        limit,
        universal,
    })
}

fn regroup(f: &SetFunctor, elements: &CommaCat, legs: &[RatMatrix], vertex: usize) -> Cylinder {
    let mut components: Vec<Vec<RatMatrix>> = (0..f.source().num_objects())
        .map(|i| Vec::with_capacity(f.set(i).len()))
        .collect();
    for (k, &(i, _)) in elements.labels.iter().enumerate() {
        components[i].push(legs[k].clone());
    }
    Cylinder {
        vertex,
        components,
        contraction_mode: false,
    }
}

/// Mutually inverse maps between the two presentations of `F * G`, each
/// obtained by factoring one universal cylinder through the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitComparison {
    /// orthogonal apex -> quotient apex
    pub forward: RatMatrix,
    /// quotient apex -> orthogonal apex
    pub backward: RatMatrix,
}

impl ColimitComparison {
    pub fn is_isomorphism(&self) -> bool {
        (&self.forward * &self.backward).is_identity() && (&self.backward * &self.forward).is_identity()
    }

    /// `forward . lambda = lambda'` on every component.
    pub fn commutes(&self, orthogonal: &Cylinder, quotient: &Cylinder) -> bool {
        orthogonal
            .components
            .iter()
            .zip(&quotient.components)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| &(&self.forward * x) == y))
    }
}

pub fn compare_weighted_colimits(
    orthogonal: &WeightedColimitResult,
    quotient: &QuotientColimit,
    f: &SetFunctor,
    g: &VectFunctor,
) -> Result<ColimitComparison> {
    let forward = orthogonal.factor(f, g, &quotient.universal)?.map;
    let backward = quotient.factor(f, g, &orthogonal.universal)?;
    Ok(ColimitComparison { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::qlin::rat;
    use std::sync::Arc;

    fn arrow() -> Arc<FinCat> {
        Arc::new(FinCat::preorder(2, &[(0, 1)]))
    }

    fn c2() -> Arc<FinCat> {
        Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn limits() -> SizeLimits {
        SizeLimits::default()
    }

    #[test]
    fn one_point_weight_on_one_object() {
        let one = Arc::new(FinCat::discrete(1));
        let f = SetFunctor::constant_point(&one, Variance::Contravariant);
        let g = VectFunctor::constant(&one, Variance::Covariant, 2);
        let r = weighted_colimit_orthogonal(&f, &g, &limits()).unwrap();
        assert_eq!(r.relations.dim(), 0);
        assert_eq!(r.apex, Subspace::full(2));
        assert!(r.universal.components[0][0].is_identity());
    }

    #[test]
    fn arrow_category_hand_computation() {
        let f = SetFunctor::constant_point(&arrow(), Variance::Contravariant);
        let g = VectFunctor::constant(&arrow(), Variance::Covariant, 1);
        let r = weighted_colimit_orthogonal(&f, &g, &limits()).unwrap();
        assert_eq!(r.ambient, 2);
        assert_eq!(r.relations, Subspace::span(2, vec![vec![rat(1, 1), rat(-1, 1)]]));
        assert_eq!(r.apex, Subspace::span(2, vec![vec![rat(1, 1), rat(1, 1)]]));
        assert!(r.lambda_certificates().iter().all(ContractionCertificate::holds));

        // beta_i = beta_j = (1)
        let beta = Cylinder {
            vertex: 1,
            components: vec![vec![RatMatrix::from_i64(1, 1, &[1])], vec![RatMatrix::from_i64(1, 1, &[1])]],
            contraction_mode: true,
        };
        let t = r.factor(&f, &g, &beta).unwrap();
        for i in 0..2 {
            assert_eq!(&t.map * &r.universal.components[i][0], beta.components[i][0]);
        }
        // both copies land on the diagonal, so T has norm sqrt 2 there
        assert!(!t.contraction.holds());
        assert!(t.contraction.verify(&(&t.map * &r.coordinates)));
    }

    #[test]
    fn trivial_factorizations() {
        let f = SetFunctor::constant_point(&arrow(), Variance::Contravariant);
        let g = VectFunctor::constant(&arrow(), Variance::Covariant, 2);
        let r = weighted_colimit_orthogonal(&f, &g, &limits()).unwrap();
        assert!(r.factor(&f, &g, &r.universal).unwrap().map.is_identity());
        let zero = Cylinder::zero_under(&f, &g, 3);
        assert!(r.factor(&f, &g, &zero).unwrap().map.is_zero());
        let mut bad = zero.clone();
        bad.components[0][0] = RatMatrix::from_i64(3, 2, &[1, 0, 0, 0, 0, 0]);
        assert!(matches!(r.factor(&f, &g, &bad), Err(Error::NotACylinder(_))));
    }

    #[test]
    fn quotient_and_orthogonal_agree() {
        let f = SetFunctor::new(
            c2(),
            Variance::Contravariant,
            vec![vec!["a".into(), "b".into()]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let g = VectFunctor::constant(&c2(), Variance::Covariant, 1);
        let q = weighted_colimit_quotient(&f, &g, &limits()).unwrap();
        let o = weighted_colimit_orthogonal(&f, &g, &limits()).unwrap();
        assert_eq!(q.apex_dim(), 1);
        assert_eq!(o.apex_dim(), 1);
        let cmp = compare_weighted_colimits(&o, &q, &f, &g).unwrap();
        assert!(cmp.is_isomorphism());
        assert!(cmp.commutes(&o.universal, &q.universal));
    }

    #[test]
    fn weighted_limit_examples() {
        let one = Arc::new(FinCat::discrete(1));
        let two_points = SetFunctor::new(
            one.clone(),
            Variance::Covariant,
            vec![vec!["p".into(), "q".into()]],
            vec![vec![0, 1]],
        )
        .unwrap();
        let g = VectFunctor::constant(&one, Variance::Covariant, 2);
        let l = weighted_limit(&two_points, &g, &limits()).unwrap();
        assert_eq!(l.apex_dim(), 4);
        let t = l.factor(&two_points, &g, &l.universal).unwrap();
        assert!(t.is_identity());

        let empty = SetFunctor::new(one.clone(), Variance::Covariant, vec![vec![]], vec![vec![]]).unwrap();
        assert_eq!(weighted_limit(&empty, &g, &limits()).unwrap().apex_dim(), 0);
    }

    #[test]
    fn ambient_guard() {
        let f = SetFunctor::constant_point(&arrow(), Variance::Contravariant);
        let g = VectFunctor::constant(&arrow(), Variance::Covariant, 3);
        let tight = SizeLimits {
            max_ambient: 5,
            ..SizeLimits::default()
        };
        assert!(matches!(
            weighted_colimit_orthogonal(&f, &g, &tight),
            Err(Error::SizeGuard { size: 6, bound: 5, .. })
        ));
    }
}
