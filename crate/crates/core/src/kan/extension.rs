use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::{comma_over, Functor, ObjId, Variance};
use crate::limits::SizeLimits;
use crate::setfun::{hom_functor, SetFunctor};
use crate::vectfun::{self, validate_vect_functor, ColimitResult, VectFunctor, VectNatTrans};

use super::weighted::{
    weighted_colimit_orthogonal, weighted_limit, Cylinder, WeightedColimitResult, WeightedLimitResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Where the fiber at one object of the target came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub object: ObjId,
    /// `(K|c)` for left extensions, `(c|K)` for right ones.
    pub comma: &'static str,
    pub comma_objects: usize,
    /// Dimension of the direct sum the fiber was cut out of.
    pub ambient: usize,
    pub dim: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "object {}: {} with {} objects, ambient {}, dim {}",
            self.object, self.comma, self.comma_objects, self.ambient, self.dim
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KanExtensionResult {
    pub side: Side,
    pub extension: VectFunctor,
    /// Unit `T => LK` for left extensions, counit `RK => T` for right ones.
    pub mediating: VectNatTrans,
    pub provenance: Vec<Provenance>,
}

/// The weight `C(K-, c)` on the source of `K`.
pub fn left_weight(k: &Functor, c: ObjId) -> Result<SetFunctor> {
    hom_functor(k.target(), c, Variance::Contravariant)?.reindex(k)
}

/// The weight `C(c, K-)` on the source of `K`.
pub fn right_weight(k: &Functor, c: ObjId) -> Result<SetFunctor> {
    hom_functor(k.target(), c, Variance::Covariant)?.reindex(k)
}

fn check_inputs(k: &Functor, t: &VectFunctor) -> Result<()> {
    if k.source() != t.source() {
        return Err(Error::SourceMismatch);
    }
    if t.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("Kan extensions of covariant functors only".into()));
    }
    Ok(())
}

/// Position of morphism `f` inside `hom(a, b)`, which is how weight
/// elements are indexed.
fn position(k: &Functor, a: ObjId, b: ObjId, f: usize) -> usize {
    k.target()
        .hom(a, b)
        .iter()
        .position(|&x| x == f)
        .expect("composite lies in the hom-set")
}

/// Pointwise left Kan extension `L(c) = C(K-, c) * T`.
///
/// `L(h)` for `h : c -> c'` is the factorization of the cylinder
/// `lambda'(m, h . f)` through `L(c)`; functoriality of the result and
/// naturality of the unit are checked exactly.
pub fn left_kan(k: &Functor, t: &VectFunctor, limits: &SizeLimits) -> Result<KanExtensionResult> {
    check_inputs(k, t)?;
    let (m_cat, c_cat) = (k.source(), k.target());
    let weights: Vec<SetFunctor> = (0..c_cat.num_objects())
        .map(|c| left_weight(k, c))
        .collect::<Result<_>>()?;
    let fibers: Vec<WeightedColimitResult> = weights
        .iter()
        .map(|w| weighted_colimit_orthogonal(w, t, limits))
        .collect::<Result<_>>()?;

    let mut maps = Vec::with_capacity(c_cat.num_morphisms());
    for h in 0..c_cat.num_morphisms() {
        let (c, c2) = (c_cat.dom(h), c_cat.cod(h));
        let target = &fibers[c2];
        let components = (0..m_cat.num_objects())
            .map(|m| {
                let km = k.object(m);
                c_cat
                    .hom(km, c)
                    .iter()
                    .map(|&f| {
                        let hf = c_cat.compose(h, f);
                        target.universal.components[m][position(k, km, c2, hf)].clone()
                    })
                    .collect()
            })
            .collect();
        let beta = Cylinder {
            vertex: target.apex_dim(),
            components,
            contraction_mode: false,
        };
        maps.push(fibers[c].factor(&weights[c], t, &beta)?.map);
    }
    let dims = fibers.iter().map(WeightedColimitResult::apex_dim).collect();
    let extension = VectFunctor::new(c_cat.clone(), Variance::Covariant, dims, maps)?;
    if let Some(v) = validate_vect_functor(&extension).first() {
        return Err(Error::InvalidFunctor(format!("left Kan extension: {v}")));
    }

    let unit = VectNatTrans {
        components: (0..m_cat.num_objects())
            .map(|m| {
                let km = k.object(m);
                let id = position(k, km, km, c_cat.identity(km));
                fibers[km].universal.components[m][id].clone()
            })
            .collect(),
    };
    let lk = extension.reindex(k)?;
    if !unit.is_natural(t, &lk) {
        return Err(Error::InvalidFunctor("unit of the left Kan extension is not natural".into()));
    }

    let provenance = fibers
        .iter()
        .enumerate()
        .map(|(c, fib)| Provenance {
            object: c,
            comma: "(K|c)",
            comma_objects: weights[c].total_size(),
            ambient: fib.ambient,
            dim: fib.apex_dim(),
        })
        .collect();
    Ok(KanExtensionResult {
        side: Side::Left,
        extension,
        mediating: unit,
        provenance,
    })
}

/// Pointwise right Kan extension `R(c) = {C(c, K-), T}`, computed as a
/// limit over `(c|K)`.
pub fn right_kan(k: &Functor, t: &VectFunctor, limits: &SizeLimits) -> Result<KanExtensionResult> {
    check_inputs(k, t)?;
    let (m_cat, c_cat) = (k.source(), k.target());
    let weights: Vec<SetFunctor> = (0..c_cat.num_objects())
        .map(|c| right_weight(k, c))
        .collect::<Result<_>>()?;
    let fibers: Vec<WeightedLimitResult> = weights
        .iter()
        .map(|w| weighted_limit(w, t, limits))
        .collect::<Result<_>>()?;

    let mut maps = Vec::with_capacity(c_cat.num_morphisms());
    for h in 0..c_cat.num_morphisms() {
        let (c, c2) = (c_cat.dom(h), c_cat.cod(h));
        let source = &fibers[c];
        let components = (0..m_cat.num_objects())
            .map(|m| {
                let km = k.object(m);
                c_cat
                    .hom(c2, km)
                    .iter()
                    .map(|&g| {
                        let gh = c_cat.compose(g, h);
                        source.universal.components[m][position(k, c, km, gh)].clone()
                    })
                    .collect()
            })
            .collect();
        let mu = Cylinder {
            vertex: source.apex_dim(),
            components,
            contraction_mode: false,
        };
        maps.push(fibers[c2].factor(&weights[c2], t, &mu)?);
    }
    let dims = fibers.iter().map(WeightedLimitResult::apex_dim).collect();
    let extension = VectFunctor::new(c_cat.clone(), Variance::Covariant, dims, maps)?;
    if let Some(v) = validate_vect_functor(&extension).first() {
        return Err(Error::InvalidFunctor(format!("right Kan extension: {v}")));
    }

    let counit = VectNatTrans {
        components: (0..m_cat.num_objects())
            .map(|m| {
                let km = k.object(m);
                let id = position(k, km, km, c_cat.identity(km));
                fibers[km].universal.components[m][id].clone()
            })
            .collect(),
    };
    let rk = extension.reindex(k)?;
    if !counit.is_natural(&rk, t) {
        return Err(Error::InvalidFunctor("counit of the right Kan extension is not natural".into()));
    }

    let provenance = fibers
        .iter()
        .enumerate()
        .map(|(c, fib)| Provenance {
            object: c,
            comma: "(c|K)",
            comma_objects: fib.elements.labels.len(),
            ambient: fib.limit.ambient_dim(),
            dim: fib.apex_dim(),
        })
        .collect();
    Ok(KanExtensionResult {
        side: Side::Right,
        extension,
        mediating: counit,
        provenance,
    })
}

/// `L(c)` by the classical pointwise formula: the colimit of `T` over the
/// comma category `(K|c)`.
pub fn left_kan_via_comma(
    k: &Functor,
    t: &VectFunctor,
    c: ObjId,
    limits: &SizeLimits,
) -> Result<ColimitResult> {
    check_inputs(k, t)?;
    let comma = comma_over(k, c, limits)?;
    vectfun::colimit(&t.reindex(&comma.projection)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::qlin::RatMatrix;
    use crate::vectfun::hom_space;
    use std::sync::Arc;

    fn c2() -> Arc<FinCat> {
        Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn limits() -> SizeLimits {
        SizeLimits::default()
    }

    #[test]
    fn along_identity() {
        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let t = VectFunctor::new(
            arrow.clone(),
            Variance::Covariant,
            vec![2, 1],
            vec![RatMatrix::identity(2), RatMatrix::from_i64(1, 2, &[1, -2]), RatMatrix::identity(1)],
        )
        .unwrap();
        let id = Functor::identity(&arrow);
        let l = left_kan(&id, &t, &limits()).unwrap();
        assert_eq!(l.extension.dims(), t.dims());
        assert!(l.mediating.is_isomorphism());
        let r = right_kan(&id, &t, &limits()).unwrap();
        assert_eq!(r.extension.dims(), t.dims());
        assert!(r.mediating.is_isomorphism());
    }

    #[test]
    fn trivial_group_into_c2_gives_regular_rep() {
        let one = Arc::new(FinCat::discrete(1));
        let k = Functor::new(one.clone(), c2(), vec![0], vec![0]).unwrap();
        let t = VectFunctor::constant(&one, Variance::Covariant, 1);
        let l = left_kan(&k, &t, &limits()).unwrap();
        assert_eq!(l.extension.dim(0), 2);
        let s = l.extension.map(1);
        assert_eq!(s.trace(), crate::qlin::rat(0, 1));
        assert!((s * s).is_identity());
        assert_eq!(l.provenance[0].comma_objects, 2);

        let r = right_kan(&k, &t, &limits()).unwrap();
        assert_eq!(r.extension.dim(0), 2);

        let comma = left_kan_via_comma(&k, &t, 0, &limits()).unwrap();
        assert_eq!(comma.apex_dim(), 2);
    }

    #[test]
    fn adjunction_dimensions() {
        let one = Arc::new(FinCat::discrete(1));
        let k = Functor::new(one.clone(), c2(), vec![0], vec![0]).unwrap();
        let t = VectFunctor::constant(&one, Variance::Covariant, 1);
        let l = left_kan(&k, &t, &limits()).unwrap();
        let sign = VectFunctor::new(
            c2(),
            Variance::Covariant,
            vec![1],
            vec![RatMatrix::identity(1), RatMatrix::from_i64(1, 1, &[-1])],
        )
        .unwrap();
        let lhs = hom_space(&l.extension, &sign).unwrap().dim;
        let rhs = hom_space(&t, &sign.reindex(&k).unwrap()).unwrap().dim;
        assert_eq!((lhs, rhs), (1, 1));
    }
}
