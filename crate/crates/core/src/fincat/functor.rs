use std::fmt;
use std::sync::Arc;

use super::category::{FinCat, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as explicit object and
/// morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl Functor {
    /// Checks that the maps have the right lengths and land in range.
    /// Functoriality itself is checked by [`Functor::validate`].
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Functor> {
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor(format!(
                "maps have {} objects and {} morphisms, source has {} and {}",
                object_map.len(),
                morphism_map.len(),
                source.num_objects(),
                source.num_morphisms()
            )));
        }
        if object_map.iter().any(|&o| o >= target.num_objects())
            || morphism_map.iter().any(|&m| m >= target.num_morphisms())
        {
            return Err(Error::InvalidFunctor("map leaves the target category".into()));
        }
        Ok(Functor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(c: &Arc<FinCat>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn object(&self, o: ObjId) -> ObjId {
        self.object_map[o]
    }

    pub fn morphism(&self, f: MorId) -> MorId {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    /// `self . inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if inner.target != self.source {
            return Err(Error::SourceMismatch);
        }
        Ok(Functor {
            source: inner.source.clone(),
            target: self.target.clone(),
            object_map: inner.object_map.iter().map(|&o| self.object_map[o]).collect(),
            morphism_map: inner.morphism_map.iter().map(|&m| self.morphism_map[m]).collect(),
        })
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.target.num_morphisms()];
        self.morphism_map.iter().all(|&m| !std::mem::replace(&mut seen[m], true))
    }

    /// Exhaustive functoriality check: identities, endpoints, composition.
    pub fn validate(&self) -> Vec<FunctorViolation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for o in 0..s.num_objects() {
            if self.morphism(s.identity(o)) != t.identity(self.object(o)) {
                out.push(FunctorViolation::Identity { object: o });
            }
        }
        for f in 0..s.num_morphisms() {
            let image = self.morphism(f);
            if t.dom(image) != self.object(s.dom(f)) || t.cod(image) != self.object(s.cod(f)) {
                out.push(FunctorViolation::Endpoints { morphism: f });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..s.num_morphisms() {
            for &g in s.outgoing(s.cod(f)) {
                let lhs = self.morphism(s.compose(g, f));
                let rhs = t.compose(self.morphism(g), self.morphism(f));
                if lhs != rhs {
                    out.push(FunctorViolation::Composition { g, f });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    Identity { object: ObjId },
    Endpoints { morphism: MorId },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Identity { object } => {
                write!(out, "identity of object {object} is not preserved")
            }
            FunctorViolation::Endpoints { morphism } => {
                write!(out, "morphism {morphism} is sent to an arrow with wrong endpoints")
            }
            FunctorViolation::Composition { g, f } => {
                write!(out, "composition {g} . {f} is not preserved")
            }
        }
    }
}
