//! Representations of finite groups: restriction, induction as a left Kan
//! extension along a subgroup inclusion, and Frobenius reciprocity.

pub mod groups;

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fincat::Variance;
use crate::kan::{left_kan, right_kan};
use crate::limits::SizeLimits;
use crate::qlin::{rat, solve_matrix_equation, MatrixSolution, RatMatrix, Rational};
use crate::vectfun::{hom_space, validate_vect_functor, VectFunctor, VectNatTrans};

pub use groups::{FiniteGroup, SubgroupInclusion};

/// A representation of a finite group on `Q^dim`, with its character
/// indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRep {
    group: Arc<FiniteGroup>,
    rep: VectFunctor,
    character: Vec<Rational>,
}

impl GroupRep {
    /// One matrix per element, in element order.
    pub fn new(group: &Arc<FiniteGroup>, matrices: Vec<RatMatrix>) -> Result<GroupRep> {
        let dim = matrices.first().map_or(0, RatMatrix::rows);
        let rep = VectFunctor::new(group.category().clone(), Variance::Covariant, vec![dim], matrices)?;
        GroupRep::from_functor(group, rep)
    }

    pub fn from_functor(group: &Arc<FiniteGroup>, rep: VectFunctor) -> Result<GroupRep> {
        if rep.source() != group.category() || rep.variance() != Variance::Covariant {
            return Err(Error::SourceMismatch);
        }
        if let Some(v) = validate_vect_functor(&rep).first() {
            return Err(Error::InvalidFunctor(format!("not a representation: {v}")));
        }
        let character = rep.maps().iter().map(RatMatrix::trace).collect();
        Ok(GroupRep {
            group: group.clone(),
            rep,
            character,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> GroupRep {
        GroupRep::new(group, vec![RatMatrix::identity(1); group.order()]).expect("trivial rep")
    }

    /// Left regular representation: `g e_h = e_{gh}`.
    pub fn regular(group: &Arc<FiniteGroup>) -> GroupRep {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| RatMatrix::from_fn(n, n, |r, c| if r == group.mul(g, c) { Rational::one() } else { Rational::zero() }))
            .collect();
        GroupRep::new(group, matrices).expect("regular rep")
    }

    /// One-dimensional representation from a value per element.
    pub fn one_dimensional(group: &Arc<FiniteGroup>, values: &[i64]) -> Result<GroupRep> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        GroupRep::new(group, values.iter().map(|&v| RatMatrix::from_i64(1, 1, &[v])).collect())
    }

    /// Representation of a cyclic group generated by `r -> m`; element `k`
    /// of [`FiniteGroup::cyclic`] goes to `m^k`.
    pub fn cyclic(group: &Arc<FiniteGroup>, m: RatMatrix) -> Result<GroupRep> {
        let mut power = RatMatrix::identity(m.rows());
        let mut matrices = Vec::with_capacity(group.order());
        for _ in 0..group.order() {
            matrices.push(power.clone());
            power = &power * &m;
        }
        GroupRep::new(group, matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn functor(&self) -> &VectFunctor {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim(0)
    }

    pub fn matrix(&self, g: usize) -> &RatMatrix {
        self.rep.map(g)
    }

    pub fn character(&self) -> &[Rational] {
        &self.character
    }

    /// Searches for an invertible intertwiner `self -> other`.
    pub fn isomorphism_to(&self, other: &GroupRep) -> Isomorphism {
        find_isomorphism(&self.rep, &other.rep)
    }
}

/// Sign of a permutation in [`FiniteGroup::symmetric3`]: `(12)` goes to `-1`.
pub fn sign_s3(s3: &Arc<FiniteGroup>) -> GroupRep {
    GroupRep::one_dimensional(s3, &[1, -1, -1, -1, 1, 1]).expect("sign rep of S3")
}

/// Permutation action of `S3` on the sum-zero plane of `Q^3`, in the basis
/// `e1 - e2, e2 - e3`.
pub fn standard_s3(s3: &Arc<FiniteGroup>) -> GroupRep {
    let basis = RatMatrix::from_i64(3, 2, &[1, 0, -1, 1, 0, -1]);
    let matrices = groups::S3_PERMUTATIONS
        .iter()
        .map(|p| {
            let perm = RatMatrix::from_fn(3, 3, |r, c| if r == p[c] { Rational::one() } else { Rational::zero() });
            match solve_matrix_equation(&basis, &(&perm * &basis)) {
                MatrixSolution::Feasible { particular, .. } => particular,
                MatrixSolution::Infeasible { .. } => unreachable!("the sum-zero plane is invariant"),
            }
        })
        .collect();
    GroupRep::new(s3, matrices).expect("standard rep of S3")
}

/// `S . embedding`.
pub fn restrict(s: &GroupRep, inc: &SubgroupInclusion) -> Result<GroupRep> {
    if s.group.as_ref() != inc.sup().as_ref() {
        return Err(Error::SourceMismatch);
    }
    GroupRep::from_functor(inc.sub(), s.rep.reindex(inc.embedding())?)
}

/// Left Kan extension of `t` along the subgroup inclusion, checked against
/// the dimension law `[G : H] dim T`.
pub fn induce(t: &GroupRep, inc: &SubgroupInclusion, limits: &SizeLimits) -> Result<GroupRep> {
    if t.group.as_ref() != inc.sub().as_ref() {
        return Err(Error::SourceMismatch);
    }
    let bound = inc.sup().order() * t.dim();
    limits.check_ambient("induced representation", bound)?;
    let kan = left_kan(inc.embedding(), &t.rep, limits)?;
    let rep = GroupRep::from_functor(inc.sup(), kan.extension)?;
    if rep.dim() != inc.index() * t.dim() {
        return Err(Error::DimensionMismatch(format!(
            "induced dimension {} differs from [G:H] dim V = {}",
            rep.dim(),
            inc.index() * t.dim()
        )));
    }
    Ok(rep)
}

/// Right Kan extension along the inclusion.
pub fn coinduce(t: &GroupRep, inc: &SubgroupInclusion, limits: &SizeLimits) -> Result<GroupRep> {
    if t.group.as_ref() != inc.sub().as_ref() {
        return Err(Error::SourceMismatch);
    }
    let kan = right_kan(inc.embedding(), &t.rep, limits)?;
    GroupRep::from_functor(inc.sup(), kan.extension)
}

/// `(dim Hom_G(Ind V, W), dim Hom_H(V, Res W))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusDims {
    pub induced: usize,
    pub restricted: usize,
}

impl FrobeniusDims {
    pub fn agree(&self) -> bool {
        self.induced == self.restricted
    }
}

pub fn frobenius_dims(
    v: &GroupRep,
    w: &GroupRep,
    inc: &SubgroupInclusion,
    limits: &SizeLimits,
) -> Result<FrobeniusDims> {
    let ind = induce(v, inc, limits)?;
    let res = restrict(w, inc)?;
    Ok(FrobeniusDims {
        induced: hom_space(&ind.rep, &w.rep)?.dim,
        restricted: hom_space(&v.rep, &res.rep)?.dim,
    })
}

/// `chi(g) = (1/|H|) sum over x in G with x^-1 g x in H of chi_V(x^-1 g x)`.
pub fn induced_character_oracle(v: &GroupRep, inc: &SubgroupInclusion) -> Vec<Rational> {
    let g = inc.sup();
    let preimage: Vec<Option<usize>> = (0..g.order())
        .map(|x| (0..inc.sub().order()).find(|&h| inc.image(h) == x))
        .collect();
    let scale = rat(1, inc.sub().order() as i64);
    (0..g.order())
        .map(|e| {
            let sum = (0..g.order())
                .filter_map(|x| preimage[g.mul(g.mul(g.inverse(x), e), x)])
                .fold(Rational::zero(), |acc, h| acc + &v.character[h]);
            sum * &scale
        })
        .collect()
}

/// Result of searching for an invertible intertwiner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism {
    Found(VectNatTrans),
    /// Dimensions or hom-space sizes rule it out.
    Impossible,
    /// No candidate in the deterministic search order was invertible.
    Inconclusive,
}

impl Isomorphism {
    pub fn is_found(&self) -> bool {
        matches!(self, Isomorphism::Found(_))
    }
}

/// Tries each hom-space basis element, then a few fixed combinations:
/// the plain sum, weights `1, 2, 3, ...`, alternating signs and powers of two.
pub fn find_isomorphism(f: &VectFunctor, g: &VectFunctor) -> Isomorphism {
    if f.dims() != g.dims() {
        return Isomorphism::Impossible;
    }
    let basis = match hom_space(f, g) {
        Ok(h) => h.basis,
        Err(_) => return Isomorphism::Impossible,
    };
    if basis.is_empty() {
        return if f.total_dim() == 0 {
            Isomorphism::Found(VectNatTrans::identity(f))
        } else {
            Isomorphism::Impossible
        };
    }
    for b in &basis {
        if b.is_isomorphism() {
            return Isomorphism::Found(b.clone());
        }
    }
    let weightings: [fn(usize) -> i64; 4] = [
        |_| 1,
        |k| k as i64 + 1,
        |k| if k % 2 == 0 { 1 } else { -1 },
        |k| 1i64 << k.min(40),
    ];
    for weight in weightings {
        let combo = combine(&basis, weight);
        if combo.is_isomorphism() {
            return Isomorphism::Found(combo);
        }
    }
    Isomorphism::Inconclusive
}

fn combine(basis: &[VectNatTrans], weight: fn(usize) -> i64) -> VectNatTrans {
    let mut components: Vec<RatMatrix> = basis[0]
        .components
        .iter()
        .map(|c| RatMatrix::zeros(c.rows(), c.cols()))
        .collect();
    for (k, b) in basis.iter().enumerate() {
        let w = rat(weight(k), 1);
        for (acc, c) in components.iter_mut().zip(&b.components) {
            *acc = &*acc + &c.scale(&w);
        }
    }
    VectNatTrans { components }
}

/// Named representations of a cyclic group whose element `k` is `r^k`:
/// trivial, sign (even order), regular, and the rational rotation of order
/// 3 or 4 when it exists.
pub fn cyclic_catalog(g: &Arc<FiniteGroup>) -> Vec<(String, GroupRep)> {
    let n = g.order();
    let mut out = vec![("trivial".to_string(), GroupRep::trivial(g))];
    if n.is_multiple_of(2) {
        let values: Vec<i64> = (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        out.push(("sign".into(), GroupRep::one_dimensional(g, &values).expect("sign character")));
    }
    if n > 1 {
        out.push(("regular".into(), GroupRep::regular(g)));
    }
    let rotation = match n {
        3 => Some(RatMatrix::from_i64(2, 2, &[0, -1, 1, -1])),
        4 => Some(RatMatrix::from_i64(2, 2, &[0, -1, 1, 0])),
        _ => None,
    };
    if let Some(m) = rotation {
        out.push(("rotation".into(), GroupRep::cyclic(g, m).expect("rotation has the right order")));
    }
    out
}

pub fn s3_catalog(s3: &Arc<FiniteGroup>) -> Vec<(String, GroupRep)> {
    vec![
        ("trivial".into(), GroupRep::trivial(s3)),
        ("sign".into(), sign_s3(s3)),
        ("regular".into(), GroupRep::regular(s3)),
        ("standard".into(), standard_s3(s3)),
    ]
}

/// A subgroup inclusion with catalogs of representations on both sides.
#[derive(Debug, Clone)]
pub struct InductionCase {
    pub name: String,
    pub inclusion: SubgroupInclusion,
    pub sub_reps: Vec<(String, GroupRep)>,
    pub sup_reps: Vec<(String, GroupRep)>,
}

/// `(C2, 1)`, `(C4, C2)`, `(S3, C2)` and `(S3, C3)` with their catalogs.
pub fn standard_cases() -> Vec<InductionCase> {
    let trivial = Arc::new(FiniteGroup::trivial());
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let c4 = Arc::new(FiniteGroup::cyclic(4));
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let inclusions = [
        ("C2>1", SubgroupInclusion::new(trivial, c2.clone(), vec![0]).expect("1 <= C2")),
        ("C4>C2", SubgroupInclusion::new(c2, c4, vec![0, 2]).expect("C2 <= C4")),
        ("S3>C2", SubgroupInclusion::from_elements(&s3, &[0, 1]).expect("C2 <= S3")),
        ("S3>C3", SubgroupInclusion::from_elements(&s3, &[0, 4, 5]).expect("C3 <= S3")),
    ];
    inclusions
        .into_iter()
        .map(|(name, inclusion)| {
            let sub_reps = cyclic_catalog(inclusion.sub());
            let sup_reps = if inclusion.sup().name() == "S3" {
                s3_catalog(inclusion.sup())
            } else {
                cyclic_catalog(inclusion.sup())
            };
            InductionCase {
                name: name.to_string(),
                inclusion,
                sub_reps,
                sup_reps,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn s3_setup() -> (Arc<FiniteGroup>, SubgroupInclusion, SubgroupInclusion) {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let c2 = SubgroupInclusion::from_elements(&s3, &[0, 1]).unwrap();
        let c3 = SubgroupInclusion::from_elements(&s3, &[0, 4, 5]).unwrap();
        (s3, c2, c3)
    }

    #[test]
    fn catalog_reps_are_valid() {
        let (s3, _, _) = s3_setup();
        assert_eq!(standard_s3(&s3).character(), &ints(&[2, 0, 0, 0, -1, -1])[..]);
        assert_eq!(sign_s3(&s3).dim(), 1);
        assert_eq!(GroupRep::regular(&s3).character(), &ints(&[6, 0, 0, 0, 0, 0])[..]);
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let rot = GroupRep::cyclic(&c4, RatMatrix::from_i64(2, 2, &[0, -1, 1, 0])).unwrap();
        assert_eq!(rot.character(), &ints(&[2, 0, -2, 0])[..]);
        assert!(GroupRep::cyclic(&c4, RatMatrix::from_i64(1, 1, &[2])).is_err());
    }

    #[test]
    fn restriction_examples() {
        let (s3, c2, _) = s3_setup();
        let res = restrict(&standard_s3(&s3), &c2).unwrap();
        assert_eq!(res.character(), &ints(&[2, 0])[..]);
        let triv = restrict(&GroupRep::trivial(&s3), &c2).unwrap();
        assert_eq!(triv, GroupRep::trivial(c2.sub()));
        let id = SubgroupInclusion::identity(&s3);
        assert_eq!(restrict(&standard_s3(&s3), &id).unwrap(), standard_s3(&s3));
    }

    #[test]
    fn induction_examples() {
        let limits = SizeLimits::default();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let triv = Arc::new(FiniteGroup::trivial());
        let inc = SubgroupInclusion::new(triv.clone(), c2.clone(), vec![0]).unwrap();
        let ind = induce(&GroupRep::trivial(&triv), &inc, &limits).unwrap();
        assert_eq!(ind.character(), &ints(&[2, 0])[..]);
        assert!(ind.isomorphism_to(&GroupRep::regular(&c2)).is_found());

        let (s3, c2s, _) = s3_setup();
        let ind = induce(&GroupRep::trivial(c2s.sub()), &c2s, &limits).unwrap();
        assert_eq!(ind.dim(), 3);
        // classes: identity, transpositions, 3-cycles
        assert_eq!(ind.character(), &ints(&[3, 1, 1, 1, 0, 0])[..]);
        assert_eq!(ind.character(), &induced_character_oracle(&GroupRep::trivial(c2s.sub()), &c2s)[..]);

        let id = SubgroupInclusion::identity(&s3);
        let std = standard_s3(&s3);
        let again = induce(&std, &id, &limits).unwrap();
        assert_eq!(again.character(), std.character());
        assert!(again.isomorphism_to(&std).is_found());
    }

    #[test]
    fn oracle_examples() {
        let (s3, c2, _) = s3_setup();
        let sign_c2 = GroupRep::one_dimensional(c2.sub(), &[1, -1]).unwrap();
        assert_eq!(induced_character_oracle(&sign_c2, &c2), ints(&[3, -1, -1, -1, 0, 0]));
        let id = SubgroupInclusion::identity(&s3);
        assert_eq!(induced_character_oracle(&GroupRep::trivial(&s3), &id), ints(&[1; 6]));
    }

    #[test]
    fn frobenius_examples() {
        let limits = SizeLimits::default();
        let (s3, c2, _) = s3_setup();
        let triv_h = GroupRep::trivial(c2.sub());
        let sign_h = GroupRep::one_dimensional(c2.sub(), &[1, -1]).unwrap();
        let cases = [
            (&triv_h, GroupRep::trivial(&s3), (1, 1)),
            (&triv_h, standard_s3(&s3), (1, 1)),
            (&sign_h, GroupRep::trivial(&s3), (0, 0)),
        ];
        for (v, w, (a, b)) in cases {
            let d = frobenius_dims(v, &w, &c2, &limits).unwrap();
            assert_eq!((d.induced, d.restricted), (a, b));
        }
    }

    #[test]
    fn catalogs() {
        let cases = standard_cases();
        let sizes: Vec<(usize, usize)> = cases.iter().map(|c| (c.sub_reps.len(), c.sup_reps.len())).collect();
        assert_eq!(sizes, vec![(1, 3), (3, 4), (3, 4), (3, 4)]);
    }

    #[test]
    fn coinduction_matches_induction_dimension() {
        let limits = SizeLimits::default();
        let (_, _, c3) = s3_setup();
        let rot = GroupRep::cyclic(c3.sub(), RatMatrix::from_i64(2, 2, &[0, -1, 1, -1])).unwrap();
        assert_eq!(coinduce(&rot, &c3, &limits).unwrap().dim(), induce(&rot, &c3, &limits).unwrap().dim());
    }
}
