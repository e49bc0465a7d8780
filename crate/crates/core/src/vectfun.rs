//! Diagrams of finite-dimensional rational inner-product spaces: functors
//! into `Vect`, their ordinary limits and colimits, and intertwiner spaces.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, MorId, ObjId, Variance};
use crate::qlin::{solve_matrix_equation, MatrixSolution, RatMatrix, Rational, Subspace};

/// A functor into finite-dimensional spaces `Q^n`.
///
/// The matrix of a covariant `f : a -> b` has shape `dim b x dim a`; a
/// contravariant one has shape `dim a x dim b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectFunctor {
    source: Arc<FinCat>,
    variance: Variance,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl VectFunctor {
    /// Checks matrix shapes; functoriality is checked by
    /// [`validate_vect_functor`].
    pub fn new(
        source: Arc<FinCat>,
        variance: Variance,
        dims: Vec<usize>,
        maps: Vec<RatMatrix>,
    ) -> Result<VectFunctor> {
        if dims.len() != source.num_objects() || maps.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor(format!(
                "diagram has {} dimensions and {} matrices, category has {} objects and {} morphisms",
                dims.len(),
                maps.len(),
                source.num_objects(),
                source.num_morphisms()
            )));
        }
        let g = VectFunctor {
            source,
            variance,
            dims,
            maps,
        };
        for f in 0..g.maps.len() {
            let (from, to) = g.map_ends(f);
            if g.maps[f].shape() != (g.dims[to], g.dims[from]) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for morphism {} is {}x{}, expected {}x{}",
                    g.source.morphism(f).label,
                    g.maps[f].rows(),
                    g.maps[f].cols(),
                    g.dims[to],
                    g.dims[from]
                )));
            }
        }
        Ok(g)
    }

    pub fn from_fn(
        source: Arc<FinCat>,
        variance: Variance,
        dims: Vec<usize>,
        map: impl FnMut(MorId) -> RatMatrix,
    ) -> Result<VectFunctor> {
        let maps = (0..source.num_morphisms()).map(map).collect();
        VectFunctor::new(source, variance, dims, maps)
    }

    /// Every object goes to `Q^dim`, every arrow to the identity.
    pub fn constant(source: &Arc<FinCat>, variance: Variance, dim: usize) -> VectFunctor {
        VectFunctor {
            source: source.clone(),
            variance,
            dims: vec![dim; source.num_objects()],
            maps: vec![RatMatrix::identity(dim); source.num_morphisms()],
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.dims[o]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, f: MorId) -> &RatMatrix {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    /// Objects `(from, to)` that the matrix of `f` maps between.
    pub fn map_ends(&self, f: MorId) -> (ObjId, ObjId) {
        let m = self.source.morphism(f);
        match self.variance {
            Variance::Covariant => (m.dom, m.cod),
            Variance::Contravariant => (m.cod, m.dom),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offsets of each object's block in `(+)_o G(o)`, objects ascending.
    pub fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, &d| {
                let start = *acc;
                *acc += d;
                Some(start)
            })
            .collect()
    }

    /// `self . k`.
    pub fn reindex(&self, k: &Functor) -> Result<VectFunctor> {
        if k.target() != &self.source {
            return Err(Error::SourceMismatch);
        }
        let src = k.source();
        Ok(VectFunctor {
            source: src.clone(),
            variance: self.variance,
            dims: (0..src.num_objects()).map(|o| self.dims[k.object(o)]).collect(),
            maps: (0..src.num_morphisms())
                .map(|f| self.maps[k.morphism(f)].clone())
                .collect(),
        })
    }

    /// Objectwise direct sum with block-diagonal matrices.
    pub fn direct_sum(&self, other: &VectFunctor) -> Result<VectFunctor> {
        if self.source != other.source {
            return Err(Error::SourceMismatch);
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("direct sum of mixed variance".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        Ok(VectFunctor {
            source: self.source.clone(),
            variance: self.variance,
            dims,
            maps,
        })
    }
}

/// A functoriality failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectViolation {
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for VectViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectViolation::Identity { object } => {
                write!(out, "identity at object {object} is not sent to an identity matrix")
            }
            VectViolation::Composition { g, f } => {
                write!(out, "composition ({g}, {f}) is not sent to the matrix product")
            }
        }
    }
}

/// Exhaustive exact functoriality check.
pub fn validate_vect_functor(g: &VectFunctor) -> Vec<VectViolation> {
    let c = &g.source;
    let mut out = Vec::new();
    for o in 0..c.num_objects() {
        if !g.maps[c.identity(o)].is_identity() {
            out.push(VectViolation::Identity { object: o });
        }
    }
    for a in 0..c.num_morphisms() {
        for &b in c.outgoing(c.cod(a)) {
            let ba = c.compose(b, a);
            let product = match g.variance {
                Variance::Covariant => &g.maps[b] * &g.maps[a],
                Variance::Contravariant => &g.maps[a] * &g.maps[b],
            };
            if product != g.maps[ba] {
                out.push(VectViolation::Composition { g: b, f: a });
            }
        }
    }
    out
}

/// A family of matrices `F(o) -> G(o)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectNatTrans {
    pub components: Vec<RatMatrix>,
}

impl VectNatTrans {
    pub fn identity(f: &VectFunctor) -> VectNatTrans {
        VectNatTrans {
            components: f.dims.iter().map(|&d| RatMatrix::identity(d)).collect(),
        }
    }

    /// Checks component shapes and every naturality square exactly.
    pub fn is_natural(&self, f: &VectFunctor, g: &VectFunctor) -> bool {
        if self.components.len() != f.dims.len()
            || self
                .components
                .iter()
                .enumerate()
                .any(|(o, c)| c.shape() != (g.dims[o], f.dims[o]))
        {
            return false;
        }
        (0..f.source.num_morphisms()).all(|m| {
            let (from, to) = f.map_ends(m);
            &g.maps[m] * &self.components[from] == &self.components[to] * &f.maps[m]
        })
    }

    /// `self . other`.
    pub fn after(&self, other: &VectNatTrans) -> VectNatTrans {
        VectNatTrans {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// True when every component is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(RatMatrix::is_invertible)
    }
}

/// A cone (legs `apex -> G(o)`) or cocone (legs `G(o) -> apex`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeData {
    pub apex: usize,
    pub legs: Vec<RatMatrix>,
}

impl ConeData {
    /// Legs must satisfy `G(tau) leg_m = leg_n` for every `tau : m -> n`.
    pub fn validate_cone(&self, g: &VectFunctor) -> Result<()> {
        require_covariant(g)?;
        check_legs(self, g, true)?;
        for tau in 0..g.source.num_morphisms() {
            let (m, n) = g.map_ends(tau);
            if &g.maps[tau] * &self.legs[m] != self.legs[n] {
                return Err(Error::NotACone(format!(
                    "leg at {n} differs from G({}) after the leg at {m}",
                    g.source.morphism(tau).label
                )));
            }
        }
        Ok(())
    }

    /// Legs must satisfy `leg_n G(tau) = leg_m` for every `tau : m -> n`.
    pub fn validate_cocone(&self, g: &VectFunctor) -> Result<()> {
        require_covariant(g)?;
        check_legs(self, g, false)?;
        for tau in 0..g.source.num_morphisms() {
            let (m, n) = g.map_ends(tau);
            if &self.legs[n] * &g.maps[tau] != self.legs[m] {
                return Err(Error::NotACone(format!(
                    "cocone leg at {m} differs from the leg at {n} after G({})",
                    g.source.morphism(tau).label
                )));
            }
        }
        Ok(())
    }
}

fn check_legs(cone: &ConeData, g: &VectFunctor, outward: bool) -> Result<()> {
    if cone.legs.len() != g.dims.len() {
        return Err(Error::NotACone(format!(
            "{} legs for {} objects",
            cone.legs.len(),
            g.dims.len()
        )));
    }
    for (o, leg) in cone.legs.iter().enumerate() {
        let expected = if outward {
            (g.dims[o], cone.apex)
        } else {
            (cone.apex, g.dims[o])
        };
        if leg.shape() != expected {
            return Err(Error::NotACone(format!(
                "leg at object {o} has shape {:?}, expected {:?}",
                leg.shape(),
                expected
            )));
        }
    }
    Ok(())
}

fn require_covariant(g: &VectFunctor) -> Result<()> {
    match g.variance {
        Variance::Covariant => Ok(()),
        Variance::Contravariant => Err(Error::VarianceMismatch(
            "(co)limits are taken of covariant diagrams".into(),
        )),
    }
}

/// Limit of a diagram, presented as a subspace of `(+)_o G(o)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitResult {
    pub offsets: Vec<usize>,
    pub apex: Subspace,
    /// Leg at each object, in echelon coordinates of the apex.
    pub legs: Vec<RatMatrix>,
}

impl LimitResult {
    pub fn ambient_dim(&self) -> usize {
        self.apex.ambient_dim()
    }

    pub fn apex_dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn cone(&self) -> ConeData {
        ConeData {
            apex: self.apex_dim(),
            legs: self.legs.clone(),
        }
    }

    /// The unique `t` with `leg_o . t = cone.legs[o]` for every object.
    pub fn factor(&self, g: &VectFunctor, cone: &ConeData) -> Result<RatMatrix> {
        cone.validate_cone(g)?;
        let stacked = RatMatrix::vstack(cone.apex, &cone.legs.iter().collect::<Vec<_>>());
        factor_through_inclusion(&self.apex, &stacked)
    }
}

/// Solves `inclusion(apex) t = stacked` for the unique `t`.
pub(crate) fn factor_through_inclusion(apex: &Subspace, stacked: &RatMatrix) -> Result<RatMatrix> {
    match solve_matrix_equation(&apex.inclusion(), stacked) {
        MatrixSolution::Feasible { particular, kernel } => {
            debug_assert_eq!(kernel.dim(), 0);
            Ok(particular)
        }
        MatrixSolution::Infeasible { column, .. } => Err(Error::NoFactorization(format!(
            "column {column} of the stacked cone leaves the limit subspace"
        ))),
    }
}

/// Joint equalizer of `proj_n = G(tau) proj_m` over all arrows.
pub fn limit(g: &VectFunctor) -> Result<LimitResult> {
    require_covariant(g)?;
    let offsets = g.offsets();
    let total = g.total_dim();
    let mut blocks = Vec::new();
    for tau in 0..g.source.num_morphisms() {
        if g.source.is_identity(tau) {
            continue;
        }
        let (m, n) = g.map_ends(tau);
        let mut rows = RatMatrix::zeros(g.dims[n], total);
        rows.set_block(0, offsets[m], &(-&g.maps[tau]));
        for r in 0..g.dims[n] {
            let v = rows.get(r, offsets[n] + r) + Rational::one();
            rows.set(r, offsets[n] + r, v);
        }
        blocks.push(rows);
    }
    let constraints = RatMatrix::vstack(total, &blocks.iter().collect::<Vec<_>>());
    let apex = if blocks.is_empty() {
        Subspace::full(total)
    } else {
        constraints.kernel()
    };
    let inclusion = apex.inclusion();
    let legs = (0..g.dims.len())
        .map(|o| inclusion.block(offsets[o], 0, g.dims[o], apex.dim()))
        .collect();
    Ok(LimitResult {
        offsets,
        apex,
        legs,
    })
}

/// Colimit of a diagram, presented as `R^perp` inside `(+)_o G(o)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitResult {
    pub offsets: Vec<usize>,
    /// Span of `inc_m(v) - inc_n(G(tau) v)`.
    pub relations: Subspace,
    pub apex: Subspace,
    /// Ambient vector to apex coordinates of its orthogonal projection.
    pub coordinates: RatMatrix,
    /// Injection at each object, in echelon coordinates of the apex.
    pub injections: Vec<RatMatrix>,
}

impl ColimitResult {
    pub fn ambient_dim(&self) -> usize {
        self.apex.ambient_dim()
    }

    pub fn apex_dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn cocone(&self) -> ConeData {
        ConeData {
            apex: self.apex_dim(),
            legs: self.injections.clone(),
        }
    }

    /// The unique `t` with `t . inj_o = cocone.legs[o]` for every object.
    pub fn factor(&self, g: &VectFunctor, cocone: &ConeData) -> Result<RatMatrix> {
        cocone.validate_cocone(g)?;
        let stacked = RatMatrix::hstack(cocone.apex, &cocone.legs.iter().collect::<Vec<_>>());
        factor_through_coordinates(&self.coordinates, &stacked)
    }
}

/// Solves `t . coordinates = stacked` for the unique `t`.
pub(crate) fn factor_through_coordinates(
    coordinates: &RatMatrix,
    stacked: &RatMatrix,
) -> Result<RatMatrix> {
    match solve_matrix_equation(&coordinates.transpose(), &stacked.transpose()) {
        MatrixSolution::Feasible { particular, kernel } => {
            debug_assert_eq!(kernel.dim(), 0);
            Ok(particular.transpose())
        }
        MatrixSolution::Infeasible { column, .. } => Err(Error::NoFactorization(format!(
            "row {column} of the stacked cocone does not vanish on the relations"
        ))),
    }
}

/// Quotient of `(+)_o G(o)` by the arrow relations, realized as the
/// orthogonal complement of the relation span.
pub fn colimit(g: &VectFunctor) -> Result<ColimitResult> {
    require_covariant(g)?;
    let offsets = g.offsets();
    let total = g.total_dim();
    let mut generators = Vec::new();
    for tau in 0..g.source.num_morphisms() {
        if g.source.is_identity(tau) {
            continue;
        }
        let (m, n) = g.map_ends(tau);
        for b in 0..g.dims[m] {
            let mut v = vec![Rational::zero(); total];
            v[offsets[m] + b] += Rational::one();
            for r in 0..g.dims[n] {
                v[offsets[n] + r] -= g.maps[tau].get(r, b);
            }
            generators.push(v);
        }
    }
    let relations = Subspace::span(total, generators);
    let apex = relations.orthogonal_complement();
    let coordinates = apex.coordinate_map();
    let injections = (0..g.dims.len())
        .map(|o| coordinates.block(0, offsets[o], apex.dim(), g.dims[o]))
        .collect();
    Ok(ColimitResult {
        offsets,
        relations,
        apex,
        coordinates,
        injections,
    })
}

/// Basis of the space of natural transformations `F => G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<VectNatTrans>,
}

/// Solves all naturality equations `G(tau) a_m = a_n F(tau)` exactly.
///
/// Equations are imposed arrow by arrow on the current solution space, so
/// each step solves a system whose width is the surviving dimension.
pub fn hom_space(f: &VectFunctor, g: &VectFunctor) -> Result<HomSpace> {
    if f.source != g.source {
        return Err(Error::SourceMismatch);
    }
    if f.variance != g.variance {
        return Err(Error::VarianceMismatch("hom space needs equal variance".into()));
    }
    let n_obj = f.dims.len();
    let var_offsets: Vec<usize> = (0..n_obj)
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += g.dims[o] * f.dims[o];
            Some(start)
        })
        .collect();
    let n_vars: usize = (0..n_obj).map(|o| g.dims[o] * f.dims[o]).sum();
    let var = |o: ObjId, r: usize, c: usize| var_offsets[o] + r * f.dims[o] + c;

    let mut solutions = Subspace::full(n_vars);
    for tau in 0..f.source.num_morphisms() {
        if f.source.is_identity(tau) || solutions.dim() == 0 {
            continue;
        }
        let (from, to) = f.map_ends(tau);
        let (ft, gt) = (&f.maps[tau], &g.maps[tau]);
        let rows = g.dims[to] * f.dims[from];
        let mut eq = RatMatrix::zeros(rows, n_vars);
        for r in 0..g.dims[to] {
            for c in 0..f.dims[from] {
                let row = r * f.dims[from] + c;
                for k in 0..g.dims[from] {
                    let v = eq.get(row, var(from, k, c)) + gt.get(r, k);
                    eq.set(row, var(from, k, c), v);
                }
                for k in 0..f.dims[to] {
                    let v = eq.get(row, var(to, r, k)) - ft.get(k, c);
                    eq.set(row, var(to, r, k), v);
                }
            }
        }
        let restricted = &eq * &solutions.inclusion();
        let kernel = restricted.kernel();
        let next = kernel.basis() * solutions.basis();
        solutions = Subspace::from_row_matrix(&next);
    }

    let basis = solutions
        .basis_vectors()
        .into_iter()
        .map(|v| VectNatTrans {
            components: (0..n_obj)
                .map(|o| {
                    RatMatrix::from_fn(g.dims[o], f.dims[o], |r, c| v[var(o, r, c)].clone())
                })
                .collect(),
        })
        .collect();
    Ok(HomSpace {
        dim: solutions.dim(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::rat;

    fn c2() -> Arc<FinCat> {
        Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn c2_rep(s: RatMatrix) -> VectFunctor {
        let d = s.rows();
        VectFunctor::new(c2(), Variance::Covariant, vec![d], vec![RatMatrix::identity(d), s]).unwrap()
    }

    fn sign() -> VectFunctor {
        c2_rep(RatMatrix::from_i64(1, 1, &[-1]))
    }

    fn regular() -> VectFunctor {
        c2_rep(RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]))
    }

    #[test]
    fn validation_examples() {
        assert!(validate_vect_functor(&VectFunctor::constant(&c2(), Variance::Covariant, 1)).is_empty());
        assert!(validate_vect_functor(&sign()).is_empty());
        let bad = c2_rep(RatMatrix::from_i64(1, 1, &[2]));
        assert_eq!(validate_vect_functor(&bad), vec![VectViolation::Composition { g: 1, f: 1 }]);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let err = VectFunctor::new(
            c2(),
            Variance::Covariant,
            vec![2],
            vec![RatMatrix::identity(2), RatMatrix::identity(1)],
        );
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn limit_of_discrete_diagram_is_product() {
        let d = Arc::new(FinCat::discrete(2));
        let g = VectFunctor::new(d, Variance::Covariant, vec![2, 3], vec![RatMatrix::identity(2), RatMatrix::identity(3)]).unwrap();
        assert_eq!(limit(&g).unwrap().apex_dim(), 5);
        assert_eq!(colimit(&g).unwrap().apex_dim(), 5);
    }

    #[test]
    fn equalizer_of_coordinate_projections() {
        // two objects a, b with two parallel arrows f, g : a -> b
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            crate::fincat::Morphism { label: "ida".into(), dom: 0, cod: 0 },
            crate::fincat::Morphism { label: "idb".into(), dom: 1, cod: 1 },
            crate::fincat::Morphism { label: "f".into(), dom: 0, cod: 1 },
            crate::fincat::Morphism { label: "g".into(), dom: 0, cod: 1 },
        ];
        let cat = Arc::new(
            FinCat::from_fn(objects, morphisms, vec![0, 1], |g, f| {
                if g == 1 { f } else { g }
            })
            .unwrap(),
        );
        let diag = VectFunctor::new(
            cat,
            Variance::Covariant,
            vec![2, 1],
            vec![
                RatMatrix::identity(2),
                RatMatrix::identity(1),
                RatMatrix::from_i64(1, 2, &[1, 0]),
                RatMatrix::from_i64(1, 2, &[0, 1]),
            ],
        )
        .unwrap();
        assert!(validate_vect_functor(&diag).is_empty());
        let lim = limit(&diag).unwrap();
        assert_eq!(lim.apex_dim(), 1);
        // the leg into a is the diagonal x = y
        let leg = &lim.legs[0];
        assert_eq!(leg.get(0, 0), leg.get(1, 0));
    }

    #[test]
    fn limit_through_isomorphism() {
        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let g = VectFunctor::new(
            arrow,
            Variance::Covariant,
            vec![2, 2],
            vec![RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[1, 1, 0, 1]), RatMatrix::identity(2)],
        )
        .unwrap();
        assert_eq!(limit(&g).unwrap().apex_dim(), 2);
        assert_eq!(colimit(&g).unwrap().apex_dim(), 2);
    }

    #[test]
    fn colimit_examples() {
        let one = Arc::new(FinCat::discrete(1));
        let g = VectFunctor::constant(&one, Variance::Covariant, 3);
        assert_eq!(colimit(&g).unwrap().apex, Subspace::full(3));

        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let g = VectFunctor::constant(&arrow, Variance::Covariant, 1);
        let col = colimit(&g).unwrap();
        assert_eq!(col.relations, Subspace::span(2, vec![vec![rat(1, 1), rat(-1, 1)]]));
        assert_eq!(col.apex, Subspace::span(2, vec![vec![rat(1, 1), rat(1, 1)]]));

        // coequalizer of id and -id on Q: the C2 sign diagram
        assert_eq!(colimit(&sign()).unwrap().apex_dim(), 0);
    }

    #[test]
    fn colimit_factorization_is_unique() {
        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let g = VectFunctor::constant(&arrow, Variance::Covariant, 1);
        let col = colimit(&g).unwrap();
        let cocone = ConeData {
            apex: 1,
            legs: vec![RatMatrix::from_i64(1, 1, &[3]), RatMatrix::from_i64(1, 1, &[3])],
        };
        let t = col.factor(&g, &cocone).unwrap();
        for o in 0..2 {
            assert_eq!(&t * &col.injections[o], cocone.legs[o]);
        }
        let bad = ConeData {
            apex: 1,
            legs: vec![RatMatrix::from_i64(1, 1, &[1]), RatMatrix::from_i64(1, 1, &[2])],
        };
        assert!(matches!(col.factor(&g, &bad), Err(Error::NotACone(_))));
    }

    #[test]
    fn hom_space_examples() {
        let triv = VectFunctor::constant(&c2(), Variance::Covariant, 1);
        assert_eq!(hom_space(&triv, &triv).unwrap().dim, 1);
        assert_eq!(hom_space(&triv, &sign()).unwrap().dim, 0);
        let reg = regular();
        let h = hom_space(&reg, &reg).unwrap();
        assert_eq!(h.dim, 2);
        assert!(h.basis.iter().all(|b| b.is_natural(&reg, &reg)));
    }

    #[test]
    fn hom_space_contravariant() {
        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let f = VectFunctor::new(
            arrow.clone(),
            Variance::Contravariant,
            vec![1, 2],
            vec![RatMatrix::identity(1), RatMatrix::from_i64(1, 2, &[1, 1]), RatMatrix::identity(2)],
        )
        .unwrap();
        assert!(validate_vect_functor(&f).is_empty());
        let h = hom_space(&f, &f).unwrap();
        assert!(h.basis.iter().all(|b| b.is_natural(&f, &f)));
        assert!(h.dim >= 1);
    }
}
