//! Functors into finite sets, natural transformations between them, and
//! representable functors.
//!
//! A finite set is read as a discrete space, where every map is smooth, so
//! set-valued functors carry no structure beyond their functions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, MorId, ObjId, Variance};
use crate::limits::SizeLimits;

/// A functor from a finite category into finite sets.
///
/// `maps[f][x]` is the image of element `x` under the function attached to
/// `f`. For a covariant functor that function goes `F(dom f) -> F(cod f)`;
/// for a contravariant one it goes `F(cod f) -> F(dom f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    source: Arc<FinCat>,
    variance: Variance,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    /// Checks shapes and ranges; functoriality is checked by
    /// [`validate_set_functor`].
    pub fn new(
        source: Arc<FinCat>,
        variance: Variance,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<SetFunctor> {
        if sets.len() != source.num_objects() || maps.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor(format!(
                "set functor has {} sets and {} maps, category has {} objects and {} morphisms",
                sets.len(),
                maps.len(),
                source.num_objects(),
                source.num_morphisms()
            )));
        }
        let functor = SetFunctor {
            source,
            variance,
            sets,
            maps,
        };
        for f in 0..functor.maps.len() {
            let (from, to) = functor.map_ends(f);
            let (n_from, n_to) = (functor.sets[from].len(), functor.sets[to].len());
            if functor.maps[f].len() != n_from || functor.maps[f].iter().any(|&y| y >= n_to) {
                return Err(Error::DimensionMismatch(format!(
                    "function for morphism {} must map {} elements into {}",
                    functor.source.morphism(f).label,
                    n_from,
                    n_to
                )));
            }
        }
        Ok(functor)
    }

    /// The functor `Delta 1` sending every object to a one-point set.
    pub fn constant_point(source: &Arc<FinCat>, variance: Variance) -> SetFunctor {
        SetFunctor {
            source: source.clone(),
            variance,
            sets: vec![vec!["*".to_string()]; source.num_objects()],
            maps: vec![vec![0]; source.num_morphisms()],
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn set(&self, o: ObjId) -> &[String] {
        &self.sets[o]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn map(&self, f: MorId) -> &[usize] {
        &self.maps[f]
    }

    pub fn apply(&self, f: MorId, x: usize) -> usize {
        self.maps[f][x]
    }

    /// Objects `(from, to)` whose sets the function attached to `f` maps
    /// between.
    pub fn map_ends(&self, f: MorId) -> (ObjId, ObjId) {
        let m = self.source.morphism(f);
        match self.variance {
            Variance::Covariant => (m.dom, m.cod),
            Variance::Contravariant => (m.cod, m.dom),
        }
    }

    /// Total number of elements over all objects.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// `self . k`, keeping the variance.
    pub fn reindex(&self, k: &Functor) -> Result<SetFunctor> {
        if k.target() != &self.source {
            return Err(Error::SourceMismatch);
        }
        let src = k.source();
        Ok(SetFunctor {
            source: src.clone(),
            variance: self.variance,
            sets: (0..src.num_objects())
                .map(|o| self.sets[k.object(o)].clone())
                .collect(),
            maps: (0..src.num_morphisms())
                .map(|f| self.maps[k.morphism(f)].clone())
                .collect(),
        })
    }
}

/// A functoriality failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetViolation {
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for SetViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetViolation::Identity { object } => {
                write!(out, "identity at object {object} is not sent to the identity function")
            }
            SetViolation::Composition { g, f } => {
                write!(out, "composition ({g}, {f}) is not preserved")
            }
        }
    }
}

/// Exhaustive functoriality check. Empty exactly when `f` is a functor.
pub fn validate_set_functor(f: &SetFunctor) -> Vec<SetViolation> {
    let c = f.source();
    let mut out = Vec::new();
    for o in 0..c.num_objects() {
        let id = c.identity(o);
        if f.maps[id].iter().enumerate().any(|(x, &y)| x != y) {
            out.push(SetViolation::Identity { object: o });
        }
    }
    for a in 0..c.num_morphisms() {
        for &b in c.outgoing(c.cod(a)) {
            let ba = c.compose(b, a);
            // covariant: F(b.a) = F(b) F(a); contravariant: F(b.a) = F(a) F(b)
            let (first, second) = match f.variance {
                Variance::Covariant => (a, b),
                Variance::Contravariant => (b, a),
            };
            let ok = f.maps[ba]
                .iter()
                .enumerate()
                .all(|(x, &y)| f.maps[second][f.maps[first][x]] == y);
            if !ok {
                out.push(SetViolation::Composition { g: b, f: a });
            }
        }
    }
    out
}

/// The representable functor `C(c, -)` (covariant) or `C(-, c)`
/// (contravariant). Elements are morphisms, in id order, labelled by their
/// morphism labels.
pub fn hom_functor(cat: &Arc<FinCat>, c: ObjId, variance: Variance) -> Result<SetFunctor> {
    if c >= cat.num_objects() {
        return Err(Error::UnknownObject(c));
    }
    let homs: Vec<Vec<MorId>> = (0..cat.num_objects())
        .map(|d| match variance {
            Variance::Covariant => cat.hom(c, d),
            Variance::Contravariant => cat.hom(d, c),
        })
        .collect();
    let position = |d: ObjId, m: MorId| homs[d].iter().position(|&x| x == m).expect("hom-set is closed");
    let maps = (0..cat.num_morphisms())
        .map(|tau| {
            let (d, d2) = (cat.dom(tau), cat.cod(tau));
            match variance {
                // tau . f for f : c -> d
                Variance::Covariant => homs[d]
                    .iter()
                    .map(|&f| position(d2, cat.compose(tau, f)))
                    .collect(),
                // f' . tau for f' : d2 -> c
                Variance::Contravariant => homs[d2]
                    .iter()
                    .map(|&f| position(d, cat.compose(f, tau)))
                    .collect(),
            }
        })
        .collect();
    let sets = homs
        .iter()
        .map(|h| h.iter().map(|&m| cat.morphism(m).label.clone()).collect())
        .collect();
    Ok(SetFunctor {
        source: cat.clone(),
        variance,
        sets,
        maps,
    })
}

/// A family of functions `F(o) -> G(o)`, one per object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetNatTrans {
    pub components: Vec<Vec<usize>>,
}

impl SetNatTrans {
    pub fn identity(f: &SetFunctor) -> SetNatTrans {
        SetNatTrans {
            components: f.sets.iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }

    /// Checks every naturality square.
    pub fn is_natural(&self, f: &SetFunctor, g: &SetFunctor) -> bool {
        (0..f.source.num_morphisms()).all(|m| square_commutes(f, g, &self.components, m))
    }
}

fn square_commutes(f: &SetFunctor, g: &SetFunctor, comps: &[Vec<usize>], m: MorId) -> bool {
    let (from, to) = f.map_ends(m);
    (0..f.sets[from].len()).all(|x| g.maps[m][comps[from][x]] == comps[to][f.maps[m][x]])
}

/// Every natural transformation `F => G`, ordered lexicographically by
/// component tables.
///
/// Components are chosen object by object with naturality checked as soon
/// as both ends of a square are assigned. Refuses when the raw search space
/// `prod |G(o)|^|F(o)|` exceeds `limits.max_search`.
pub fn enumerate_nat_transformations(
    f: &SetFunctor,
    g: &SetFunctor,
    limits: &SizeLimits,
) -> Result<Vec<SetNatTrans>> {
    if f.source != g.source {
        return Err(Error::SourceMismatch);
    }
    if f.variance != g.variance {
        return Err(Error::VarianceMismatch(
            "natural transformations need functors of equal variance".into(),
        ));
    }
    let n = f.source.num_objects();
    let space = (0..n).fold(1u128, |acc, o| {
        acc.saturating_mul((g.sets[o].len() as u128).saturating_pow(f.sets[o].len() as u32))
    });
    limits.check_search("natural transformation search space", space)?;

    // squares to check once object `o` is assigned: both ends <= o, one == o
    let cat = &f.source;
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for m in 0..cat.num_morphisms() {
        let last = cat.dom(m).max(cat.cod(m));
        checks[last].push(m);
    }

    let mut out = Vec::new();
    let mut comps: Vec<Vec<usize>> = (0..n).map(|o| vec![0; f.sets[o].len()]).collect();
    search(f, g, &checks, 0, &mut comps, &mut out);
    Ok(out)
}

fn search(
    f: &SetFunctor,
    g: &SetFunctor,
    checks: &[Vec<MorId>],
    o: usize,
    comps: &mut Vec<Vec<usize>>,
    out: &mut Vec<SetNatTrans>,
) {
    if o == comps.len() {
        out.push(SetNatTrans {
            components: comps.clone(),
        });
        return;
    }
    let (domain, codomain) = (f.sets[o].len(), g.sets[o].len());
    if domain > 0 && codomain == 0 {
        return;
    }
    comps[o].iter_mut().for_each(|x| *x = 0);
    loop {
        if checks[o].iter().all(|&m| square_commutes(f, g, comps, m)) {
            search(f, g, checks, o + 1, comps, out);
        }
        // odometer over functions, most significant digit first
        let mut pos = domain;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            comps[o][pos] += 1;
            if comps[o][pos] < codomain {
                break;
            }
            comps[o][pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FinCat> {
        Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn swap(c: &Arc<FinCat>) -> SetFunctor {
        SetFunctor::new(
            c.clone(),
            Variance::Covariant,
            vec![vec!["a".into(), "b".into()]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        let chain = Arc::new(FinCat::preorder(3, &[(0, 1), (1, 2)]));
        assert!(validate_set_functor(&SetFunctor::constant_point(&chain, Variance::Covariant)).is_empty());
        let c = c2();
        assert!(validate_set_functor(&swap(&c)).is_empty());

        // s acts by the constant map to a: not an involution
        let bad = SetFunctor::new(
            c.clone(),
            Variance::Covariant,
            vec![vec!["a".into(), "b".into()]],
            vec![vec![0, 1], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(validate_set_functor(&bad), vec![SetViolation::Composition { g: 1, f: 1 }]);
    }

    #[test]
    fn hom_functor_on_c2() {
        let c = c2();
        let left = hom_functor(&c, 0, Variance::Covariant).unwrap();
        assert_eq!(left.set(0), &["e".to_string(), "s".to_string()]);
        assert_eq!(left.map(1), &[1, 0]);
        assert!(validate_set_functor(&left).is_empty());
        let right = hom_functor(&c, 0, Variance::Contravariant).unwrap();
        assert!(validate_set_functor(&right).is_empty());
    }

    #[test]
    fn hom_functor_on_arrow() {
        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let h = hom_functor(&arrow, 0, Variance::Covariant).unwrap();
        assert_eq!(h.set(0).len(), 1);
        assert_eq!(h.set(1), &["0->1".to_string()]);

        // nothing enters 0 except its identity
        let h = hom_functor(&arrow, 0, Variance::Contravariant).unwrap();
        assert!(h.set(1).is_empty());
        assert!(validate_set_functor(&h).is_empty());
    }

    #[test]
    fn nat_examples() {
        let c = c2();
        let f = swap(&c);
        let nats = enumerate_nat_transformations(&f, &f, &SizeLimits::default()).unwrap();
        assert_eq!(nats.len(), 2);
        assert!(nats.contains(&SetNatTrans::identity(&f)));

        let point = SetFunctor::constant_point(&c, Variance::Covariant);
        let fixed = enumerate_nat_transformations(&point, &f, &SizeLimits::default()).unwrap();
        assert!(fixed.is_empty());
    }

    #[test]
    fn nat_results_are_sorted_and_natural() {
        let chain = Arc::new(FinCat::preorder(3, &[(0, 1), (1, 2)]));
        let h = hom_functor(&chain, 0, Variance::Covariant).unwrap();
        let point = SetFunctor::constant_point(&chain, Variance::Covariant);
        let nats = enumerate_nat_transformations(&h, &point, &SizeLimits::default()).unwrap();
        assert!(nats.windows(2).all(|w| w[0] < w[1]));
        assert!(nats.iter().all(|n| n.is_natural(&h, &point)));
    }

    #[test]
    fn search_guard() {
        let c = c2();
        let f = swap(&c);
        let tight = SizeLimits {
            max_search: 3,
            ..SizeLimits::default()
        };
        assert!(matches!(
            enumerate_nat_transformations(&f, &f, &tight),
            Err(Error::SizeGuard { size: 4, .. })
        ));
    }

    #[test]
    fn mismatched_sources_rejected() {
        let c = c2();
        let other = Arc::new(FinCat::discrete(1));
        let f = swap(&c);
        let g = SetFunctor::constant_point(&other, Variance::Covariant);
        assert_eq!(
            enumerate_nat_transformations(&f, &g, &SizeLimits::default()),
            Err(Error::SourceMismatch)
        );
    }
}
