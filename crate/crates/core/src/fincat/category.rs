use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category given by a total composition table.
///
/// Object and morphism ids are dense and follow input order. The table is
/// defined exactly on composable pairs; this is enforced at construction,
/// the remaining axioms are checked by [`validate_category`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    outgoing: Vec<Vec<MorId>>,
    out_pos: Vec<usize>,
    // table[f][out_pos[g]] = g . f, for every g with dom g = cod f
    table: Vec<Vec<MorId>>,
}

impl FinCat {
    /// Builds a category from an explicit table of composites keyed by
    /// `(g, f)` meaning `g . f`.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        compose: &HashMap<(MorId, MorId), MorId>,
    ) -> Result<FinCat> {
        check_shape(&objects, &morphisms, &identity)?;
        for (&(g, f), &h) in compose {
            if g >= morphisms.len() || f >= morphisms.len() || h >= morphisms.len() {
                return Err(Error::MalformedCategory(format!(
                    "composition entry ({g}, {f}) -> {h} references an unknown morphism"
                )));
            }
            if morphisms[g].dom != morphisms[f].cod {
                return Err(Error::MalformedCategory(format!(
                    "composition entry given for non-composable pair ({}, {})",
                    morphisms[g].label, morphisms[f].label
                )));
            }
        }
        let mut missing = None;
        let cat = FinCat::assemble(objects, morphisms, identity, |g, f| match compose.get(&(g, f)) {
            Some(&h) => h,
            None => {
                missing.get_or_insert((g, f));
                0
            }
        });
        if let Some((g, f)) = missing {
            return Err(Error::MalformedCategory(format!(
                "composition table is not total: missing {} . {}",
                cat.morphisms[g].label, cat.morphisms[f].label
            )));
        }
        Ok(cat)
    }

    /// Builds a category whose composite for each composable pair is given by
    /// `compose(g, f)`.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Result<FinCat> {
        check_shape(&objects, &morphisms, &identity)?;
        let cat = FinCat::assemble(objects, morphisms, identity, compose);
        if let Some(bad) = cat.table.iter().flatten().find(|&&h| h >= cat.morphisms.len()) {
            return Err(Error::MalformedCategory(format!("composite {bad} out of range")));
        }
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> FinCat {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut out_pos = vec![0; morphisms.len()];
        for (id, m) in morphisms.iter().enumerate() {
            out_pos[id] = outgoing[m.dom].len();
            outgoing[m.dom].push(id);
        }
        let table = morphisms
            .iter()
            .enumerate()
            .map(|(f, mf)| outgoing[mf.cod].iter().map(|&g| compose(g, f)).collect())
            .collect();
        FinCat {
            objects,
            morphisms,
            identity,
            outgoing,
            out_pos,
            table,
        }
    }

    pub fn empty() -> FinCat {
        FinCat::assemble(Vec::new(), Vec::new(), Vec::new(), |_, _| 0)
    }

    /// `n` objects and only identity arrows.
    pub fn discrete(n: usize) -> FinCat {
        FinCat::preorder(n, &[])
    }

    /// The preorder generated by `relations` (pairs `a <= b`) on `n`
    /// objects: one arrow `a -> b` whenever `a <= b` in the reflexive
    /// transitive closure. Arrows are ordered by `(dom, cod)`.
    pub fn preorder(n: usize, relations: &[(ObjId, ObjId)]) -> FinCat {
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via = reach[k].clone();
                    for (r, v) in reach[i].iter_mut().zip(via) {
                        *r |= v;
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for (a, row) in reach.iter().enumerate() {
            for (b, &r) in row.iter().enumerate() {
                if r {
                    index.insert((a, b), morphisms.len());
                    let label = if a == b { format!("id{a}") } else { format!("{a}->{b}") };
                    morphisms.push(Morphism { label, dom: a, cod: b });
                }
            }
        }
        let identity = (0..n).map(|a| index[&(a, a)]).collect();
        let objects = (0..n).map(|a| a.to_string()).collect();
        let ends: Vec<_> = morphisms.iter().map(|m| (m.dom, m.cod)).collect();
        FinCat::from_fn(objects, morphisms, identity, |g, f| index[&(ends[f].0, ends[g].1)])
            .expect("preorder construction is well formed")
    }

    /// A one-object category from a monoid multiplication table
    /// `mult[g][f] = g . f`. Rejects tables that are not monoids.
    pub fn one_object(labels: Vec<String>, mult: &[Vec<usize>]) -> Result<FinCat> {
        let n = labels.len();
        if mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table is not {n} x {n}")));
        }
        if let Some(bad) = mult.iter().flatten().find(|&&e| e >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} is not an element")));
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[a][mult[b][c]] != mult[mult[a][b]][c] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let morphisms = labels
            .into_iter()
            .map(|label| Morphism { label, dom: 0, cod: 0 })
            .collect();
        FinCat::from_fn(vec!["*".to_string()], morphisms, vec![unit], |g, f| mult[g][f])
    }

    /// The one-object category of a group: one arrow per element,
    /// composition is the group product.
    pub fn group(labels: Vec<String>, mult: &[Vec<usize>]) -> Result<FinCat> {
        let n = labels.len();
        let names = labels.clone();
        let cat = FinCat::one_object(labels, mult)?;
        let unit = cat.identity(0);
        for x in 0..n {
            if !(0..n).any(|y| mult[x][y] == unit && mult[y][x] == unit) {
                return Err(Error::InvalidGroup(format!("element {} has no inverse", names[x])));
            }
        }
        Ok(cat)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_by_label(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_by_label(&self, label: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identity
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// `g . f`, or `None` when `cod f != dom g`.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        (self.dom(g) == self.cod(f)).then(|| self.table[f][self.out_pos[g]])
    }

    /// `g . f`. Panics when the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "morphisms {} and {} are not composable",
                self.morphisms[g].label, self.morphisms[f].label
            )
        })
    }

    /// Morphisms with domain `o`, in id order.
    pub fn outgoing(&self, o: ObjId) -> &[MorId] {
        &self.outgoing[o]
    }

    /// Morphisms `a -> b`, in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.outgoing[a].iter().copied().filter(|&f| self.cod(f) == b).collect()
    }

    /// Morphisms with codomain `o`, in id order.
    pub fn incoming(&self, o: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len()).filter(|&f| self.cod(f) == o).collect()
    }

    /// Same objects and arrows with domain and codomain swapped;
    /// `g .op f = f . g`.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                label: m.label.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        FinCat::from_fn(self.objects.clone(), morphisms, self.identity.clone(), |g, f| {
            self.compose(f, g)
        })
        .expect("opposite of a well-formed category is well formed")
    }

    /// Product category. Object `(a, b)` has id `a * |B| + b`, morphism
    /// `(f, g)` has id `f * |Mor B| + g`.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let nb = other.num_objects();
        let mb = other.num_morphisms();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    label: format!("({},{})", f.label, g.label),
                    dom: f.dom * nb + g.dom,
                    cod: f.cod * nb + g.cod,
                })
            })
            .collect();
        let identity = (0..self.num_objects() * nb)
            .map(|o| self.identity(o / nb) * mb + other.identity(o % nb))
            .collect();
        FinCat::from_fn(objects, morphisms, identity, |g, f| {
            self.compose(g / mb, f / mb) * mb + other.compose(g % mb, f % mb)
        })
        .expect("product of well-formed categories is well formed")
    }
}

fn check_shape(objects: &[String], morphisms: &[Morphism], identity: &[MorId]) -> Result<()> {
    if identity.len() != objects.len() {
        return Err(Error::MalformedCategory(format!(
            "{} identities for {} objects",
            identity.len(),
            objects.len()
        )));
    }
    if let Some(m) = morphisms
        .iter()
        .find(|m| m.dom >= objects.len() || m.cod >= objects.len())
    {
        return Err(Error::MalformedCategory(format!(
            "morphism {} has a dangling endpoint",
            m.label
        )));
    }
    if let Some(&bad) = identity.iter().find(|&&i| i >= morphisms.len()) {
        return Err(Error::MalformedCategory(format!("identity {bad} is not a morphism")));
    }
    Ok(())
}

/// A failed category axiom, naming the offending morphism ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IdentityEndpoints { object: ObjId, morphism: MorId },
    CompositeEndpoints { g: MorId, f: MorId, composite: MorId },
    LeftIdentity { f: MorId, composite: MorId },
    RightIdentity { f: MorId, composite: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityEndpoints { object, morphism } => write!(
                out,
                "identity of object {object} is morphism {morphism}, which is not an endomorphism of it"
            ),
            Violation::CompositeEndpoints { g, f, composite } => write!(
                out,
                "composite {g} . {f} = {composite} has the wrong domain or codomain"
            ),
            Violation::LeftIdentity { f, composite } => {
                write!(out, "left identity fails at {f}: id . {f} = {composite}")
            }
            Violation::RightIdentity { f, composite } => {
                write!(out, "right identity fails at {f}: {f} . id = {composite}")
            }
            Violation::Associativity { h, g, f } => {
                write!(out, "associativity fails at ({h}, {g}, {f})")
            }
        }
    }
}

/// Exhaustive axiom scan. Empty exactly when `c` is a category.
pub fn validate_category(c: &FinCat) -> Vec<Violation> {
    let mut out = Vec::new();
    for o in 0..c.num_objects() {
        let i = c.identity(o);
        if c.dom(i) != o || c.cod(i) != o {
            out.push(Violation::IdentityEndpoints { object: o, morphism: i });
        }
    }
    let n = c.num_morphisms();
    for f in 0..n {
        for &g in c.outgoing(c.cod(f)) {
            let h = c.compose(g, f);
            if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                out.push(Violation::CompositeEndpoints { g, f, composite: h });
            }
        }
    }
    for f in 0..n {
        let left = c.try_compose(c.identity(c.cod(f)), f);
        if left != Some(f) {
            out.push(Violation::LeftIdentity {
                f,
                composite: left.unwrap_or(usize::MAX),
            });
        }
        let right = c.try_compose(f, c.identity(c.dom(f)));
        if right != Some(f) {
            out.push(Violation::RightIdentity {
                f,
                composite: right.unwrap_or(usize::MAX),
            });
        }
    }
    for f in 0..n {
        for &g in c.outgoing(c.cod(f)) {
            for &h in c.outgoing(c.cod(g)) {
                let gf = c.compose(g, f);
                let hg = c.compose(h, g);
                let lhs = c.try_compose(h, gf);
                let rhs = c.try_compose(hg, f);
                if lhs.is_none() || lhs != rhs {
                    out.push(Violation::Associativity { h, g, f });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_table() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    fn s3() -> FinCat {
        crate::induce::groups::symmetric3().category().as_ref().clone()
    }

    #[test]
    fn trivial_category_is_valid() {
        let c = FinCat::discrete(1);
        assert_eq!(c.num_morphisms(), 1);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn c2_group_category() {
        let c = FinCat::group(vec!["e".into(), "s".into()], &c2_table()).unwrap();
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_morphisms(), 2);
        assert_eq!(c.compose(1, 1), 0);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn trivial_group() {
        let c = FinCat::group(vec!["e".into()], &[vec![0]]).unwrap();
        assert_eq!(c.num_morphisms(), 1);
    }

    #[test]
    fn s3_group_category_is_valid() {
        let c = s3();
        assert_eq!(c.num_morphisms(), 6);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn idempotent_corruption_is_a_monoid_not_a_group() {
        // s.s = s leaves an associative, unital table: a valid category,
        // but no inverse for s.
        let table = vec![vec![0, 1], vec![1, 1]];
        let monoid = FinCat::one_object(vec!["e".into(), "s".into()], &table).unwrap();
        assert!(validate_category(&monoid).is_empty());
        let err = FinCat::group(vec!["e".into(), "s".into()], &table).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(ref m) if m.contains("inverse")));
    }

    #[test]
    fn corrupted_identity_is_reported() {
        // e.s = e breaks the left identity law at s.
        let mut compose = HashMap::new();
        compose.insert((0, 0), 0);
        compose.insert((0, 1), 0);
        compose.insert((1, 0), 1);
        compose.insert((1, 1), 0);
        let morphisms = vec![
            Morphism { label: "e".into(), dom: 0, cod: 0 },
            Morphism { label: "s".into(), dom: 0, cod: 0 },
        ];
        let c = FinCat::from_table(vec!["*".into()], morphisms, vec![0], &compose).unwrap();
        let report = validate_category(&c);
        assert!(report.contains(&Violation::LeftIdentity { f: 1, composite: 0 }));
    }

    #[test]
    fn non_total_table_is_rejected() {
        let morphisms = vec![Morphism { label: "e".into(), dom: 0, cod: 0 }];
        let err = FinCat::from_table(vec!["*".into()], morphisms, vec![0], &HashMap::new());
        assert!(matches!(err, Err(Error::MalformedCategory(_))));
    }

    #[test]
    fn opposite_examples() {
        let c2 = FinCat::group(vec!["e".into(), "s".into()], &c2_table()).unwrap();
        assert_eq!(c2.opposite(), c2);

        let arrow = FinCat::preorder(2, &[(0, 1)]);
        let op = arrow.opposite();
        let f = arrow.hom(0, 1)[0];
        assert_eq!(op.dom(f), 1);
        assert_eq!(op.cod(f), 0);
        assert!(validate_category(&op).is_empty());

        let s3 = s3();
        let op = s3.opposite();
        for g in 0..6 {
            for f in 0..6 {
                assert_eq!(op.compose(g, f), s3.compose(f, g));
            }
        }
        assert_eq!(op.opposite(), s3);
    }

    #[test]
    fn product_of_arrows_is_a_square() {
        let arrow = FinCat::preorder(2, &[(0, 1)]);
        let sq = arrow.product(&arrow);
        assert_eq!(sq.num_objects(), 4);
        assert_eq!(sq.num_morphisms(), 9);
        assert!(validate_category(&sq).is_empty());
    }

    #[test]
    fn preorder_chain() {
        let chain = FinCat::preorder(3, &[(0, 1), (1, 2)]);
        assert_eq!(chain.num_morphisms(), 6);
        assert_eq!(chain.hom(0, 2).len(), 1);
        assert!(validate_category(&chain).is_empty());
    }
}
