use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCat, MorId, Morphism, ObjId};
use super::functor::Functor;
use super::Variance;
use crate::error::{Error, Result};
use crate::limits::SizeLimits;
use crate::setfun::SetFunctor;

/// A category lying faithfully over a base category: comma categories and
/// categories of elements.
///
/// Object `k` encodes the pair `labels[k] = (m, tag)`, where `m` is an
/// object of the base and `tag` is a morphism id (comma categories) or an
/// element index (categories of elements). Objects are listed in
/// lexicographic `(m, tag)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommaCat {
    pub cat: Arc<FinCat>,
    pub projection: Functor,
    pub labels: Vec<(ObjId, usize)>,
}

impl CommaCat {
    pub fn index_of(&self, m: ObjId, tag: usize) -> Option<ObjId> {
        self.labels.binary_search(&(m, tag)).ok()
    }
}

struct Arrow {
    src: usize,
    tgt: usize,
    base: MorId,
}

/// Assembles a category whose arrows are determined by (source, target,
/// underlying base arrow). Composites are looked up by composing the
/// underlying arrows; the caller guarantees closure.
fn faithful_over(
    base: &Arc<FinCat>,
    labels: Vec<(ObjId, usize)>,
    object_names: Vec<String>,
    arrows: Vec<Arrow>,
    limits: &SizeLimits,
    what: &'static str,
) -> Result<CommaCat> {
    limits.check_morphisms(what, arrows.len())?;
    let mut index = HashMap::with_capacity(arrows.len());
    for (id, a) in arrows.iter().enumerate() {
        index.insert((a.src, a.tgt, a.base), id);
    }
    let identity = labels
        .iter()
        .enumerate()
        .map(|(k, &(m, _))| {
            index.get(&(k, k, base.identity(m))).copied().ok_or_else(|| {
                Error::MalformedCategory(format!("{what}: object {k} has no identity"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = arrows
        .iter()
        .map(|a| Morphism {
            label: format!(
                "{}:{}->{}",
                base.morphism(a.base).label,
                object_names[a.src],
                object_names[a.tgt]
            ),
            dom: a.src,
            cod: a.tgt,
        })
        .collect();
    let cat = FinCat::from_fn(object_names, morphisms, identity, |g, f| {
        let key = (arrows[f].src, arrows[g].tgt, base.compose(arrows[g].base, arrows[f].base));
        *index.get(&key).expect("category over the base is closed under composition")
    })?;
    let cat = Arc::new(cat);
    let projection = Functor::new(
        cat.clone(),
        base.clone(),
        labels.iter().map(|&(m, _)| m).collect(),
        arrows.iter().map(|a| a.base).collect(),
    )?;
    Ok(CommaCat {
        cat,
        projection,
        labels,
    })
}

/// `(K | c)`: objects `<m, f : Km -> c>`, arrows `tau : m -> m'` with
/// `f' . K tau = f`.
pub fn comma_over(k: &Functor, c: ObjId, limits: &SizeLimits) -> Result<CommaCat> {
    let (m_cat, c_cat) = (k.source(), k.target());
    if c >= c_cat.num_objects() {
        return Err(Error::UnknownObject(c));
    }
    let mut labels = Vec::new();
    for m in 0..m_cat.num_objects() {
        for f in c_cat.hom(k.object(m), c) {
            labels.push((m, f));
        }
    }
    let names = labels
        .iter()
        .map(|&(m, f)| format!("<{},{}>", m_cat.object_label(m), c_cat.morphism(f).label))
        .collect();
    let pos: HashMap<_, _> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arrows = Vec::new();
    for (src, &(m, f)) in labels.iter().enumerate() {
        for &tau in m_cat.outgoing(m) {
            let m2 = m_cat.cod(tau);
            let ktau = k.morphism(tau);
            for f2 in c_cat.hom(k.object(m2), c) {
                if c_cat.compose(f2, ktau) == f {
                    arrows.push(Arrow {
                        src,
                        tgt: pos[&(m2, f2)],
                        base: tau,
                    });
                }
            }
        }
    }
    faithful_over(m_cat, labels, names, arrows, limits, "comma category (K|c)")
}

/// `(c | K)`: objects `<m, f : c -> Km>`, arrows `tau : m -> m'` with
/// `K tau . f = f'`.
pub fn comma_under(c: ObjId, k: &Functor, limits: &SizeLimits) -> Result<CommaCat> {
    let (m_cat, c_cat) = (k.source(), k.target());
    if c >= c_cat.num_objects() {
        return Err(Error::UnknownObject(c));
    }
    let mut labels = Vec::new();
    for m in 0..m_cat.num_objects() {
        for f in c_cat.hom(c, k.object(m)) {
            labels.push((m, f));
        }
    }
    let names = labels
        .iter()
        .map(|&(m, f)| format!("<{},{}>", m_cat.object_label(m), c_cat.morphism(f).label))
        .collect();
    let pos: HashMap<_, _> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arrows = Vec::new();
    for (src, &(m, f)) in labels.iter().enumerate() {
        for &tau in m_cat.outgoing(m) {
            let f2 = c_cat.compose(k.morphism(tau), f);
            arrows.push(Arrow {
                src,
                tgt: pos[&(m_cat.cod(tau), f2)],
                base: tau,
            });
        }
    }
    faithful_over(m_cat, labels, names, arrows, limits, "comma category (c|K)")
}

fn element_labels(f: &SetFunctor) -> (Vec<(ObjId, usize)>, Vec<String>) {
    let src = f.source();
    let mut labels = Vec::new();
    let mut names = Vec::new();
    for m in 0..src.num_objects() {
        for (x, name) in f.set(m).iter().enumerate() {
            labels.push((m, x));
            names.push(format!("<{},{}>", src.object_label(m), name));
        }
    }
    (labels, names)
}

/// Category of elements of a covariant set functor: objects `<m, x in Fm>`,
/// arrows `tau : <m, x> -> <m', F tau (x)>`.
pub fn elements_category(f: &SetFunctor, limits: &SizeLimits) -> Result<CommaCat> {
    if f.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch(
            "elements_category expects a covariant functor".into(),
        ));
    }
    let src = f.source();
    let (labels, names) = element_labels(f);
    let pos: HashMap<_, _> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arrows = Vec::new();
    for (k, &(m, x)) in labels.iter().enumerate() {
        for &tau in src.outgoing(m) {
            arrows.push(Arrow {
                src: k,
                tgt: pos[&(src.cod(tau), f.apply(tau, x))],
                base: tau,
            });
        }
    }
    faithful_over(src, labels, names, arrows, limits, "category of elements")
}

/// Opposite category of elements of a contravariant set functor, presented
/// covariantly over the source: objects `<i, x in Fi>`, arrows
/// `alpha : <i, F alpha (y)> -> <j, y>` for `alpha : i -> j`. For
/// `F = C(K-, c)` this is `(K | c)`.
pub fn elements_category_contra(f: &SetFunctor, limits: &SizeLimits) -> Result<CommaCat> {
    if f.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch(
            "elements_category_contra expects a contravariant functor".into(),
        ));
    }
    let src = f.source();
    let (labels, names) = element_labels(f);
    let pos: HashMap<_, _> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arrows = Vec::new();
    for (k, &(i, x)) in labels.iter().enumerate() {
        for &alpha in src.outgoing(i) {
            let j = src.cod(alpha);
            for y in 0..f.set(j).len() {
                if f.apply(alpha, y) == x {
                    arrows.push(Arrow {
                        src: k,
                        tgt: pos[&(j, y)],
                        base: alpha,
                    });
                }
            }
        }
    }
    faithful_over(src, labels, names, arrows, limits, "category of elements")
}
