//! Finite groups as one-object categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, MorId};

/// A finite group given by its multiplication table, with `table[a][b] = a b`.
///
/// Elements are the morphisms of [`FiniteGroup::category`], so element ids
/// and morphism ids coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    unit: usize,
    inverses: Vec<usize>,
    category: Arc<FinCat>,
}

impl FiniteGroup {
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let category = Arc::new(FinCat::group(labels, &table)?);
        let unit = category.identity(0);
        let n = table.len();
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == unit).expect("group() checked inverses"))
            .collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            unit,
            inverses,
            category,
        })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// `Z/n` with elements `e, r, r2, ..., r{n-1}`; element `k` is `r^k`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order 0");
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&format!("C{n}"), labels, table).expect("cyclic table is a group")
    }

    /// Permutations of `{1, 2, 3}` composed right to left.
    pub fn symmetric3() -> FiniteGroup {
        let (labels, table) = symmetric3_data();
        FiniteGroup::from_table("S3", labels, table).expect("S3 table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.category.morphism(a).label
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.category.morphism_by_label(label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.category
    }

    /// Smallest `k > 0` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// The six permutations of `{1, 2, 3}` in the order
/// `e, (12), (23), (13), (123), (132)`.
pub(crate) const S3_PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn symmetric3_data() -> (Vec<String>, Vec<Vec<usize>>) {
    let labels = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let index = |p: [usize; 3]| S3_PERMUTATIONS.iter().position(|&q| q == p).unwrap();
    let table = S3_PERMUTATIONS
        .iter()
        .map(|p| {
            S3_PERMUTATIONS
                .iter()
                .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    (labels, table)
}

pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::symmetric3()
}

/// An injective homomorphism `H -> G`, given by where each element of `H`
/// goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupInclusion {
    sub: Arc<FiniteGroup>,
    sup: Arc<FiniteGroup>,
    embedding: Functor,
}

impl SubgroupInclusion {
    pub fn new(sub: Arc<FiniteGroup>, sup: Arc<FiniteGroup>, elements: Vec<usize>) -> Result<SubgroupInclusion> {
        if elements.len() != sub.order() {
            return Err(Error::InvalidInclusion(format!(
                "{} images for a group of order {}",
                elements.len(),
                sub.order()
            )));
        }
        if let Some(&bad) = elements.iter().find(|&&x| x >= sup.order()) {
            return Err(Error::InvalidInclusion(format!("{bad} is not an element of {}", sup.name)));
        }
        let embedding = Functor::new(sub.category.clone(), sup.category.clone(), vec![0], elements)
            .map_err(|e| Error::InvalidInclusion(e.to_string()))?;
        if !embedding.is_injective_on_morphisms() {
            return Err(Error::InvalidInclusion("element map is not injective".into()));
        }
        if let Some(v) = embedding.validate().first() {
            return Err(Error::InvalidInclusion(format!("not a homomorphism: {v}")));
        }
        Ok(SubgroupInclusion { sub, sup, embedding })
    }

    /// The subgroup of `g` on the listed elements, which must be closed
    /// under multiplication; its table is inherited from `g`.
    pub fn from_elements(g: &Arc<FiniteGroup>, elements: &[usize]) -> Result<SubgroupInclusion> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(pos) = elements.iter().position(|&x| x == g.unit) {
            elements.swap(0, pos);
        } else {
            return Err(Error::InvalidInclusion("subset misses the unit".into()));
        }
        let position = |x: usize| elements.iter().position(|&y| y == x);
        let mut table = Vec::with_capacity(elements.len());
        for &a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in &elements {
                let ab = g.mul(a, b);
                row.push(position(ab).ok_or_else(|| {
                    Error::InvalidInclusion(format!("{} {} leaves the subset", g.label(a), g.label(b)))
                })?);
            }
            table.push(row);
        }
        let labels = elements.iter().map(|&a| g.label(a).to_string()).collect();
        let name = format!("{}<{}>", g.name, elements.len());
        let sub = FiniteGroup::from_table(&name, labels, table)?;
        SubgroupInclusion::new(Arc::new(sub), g.clone(), elements)
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> SubgroupInclusion {
        SubgroupInclusion {
            sub: g.clone(),
            sup: g.clone(),
            embedding: Functor::identity(&g.category),
        }
    }

    pub fn sub(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FiniteGroup> {
        &self.sup
    }

    pub fn embedding(&self) -> &Functor {
        &self.embedding
    }

    pub fn image(&self, h: usize) -> MorId {
        self.embedding.morphism(h)
    }

    pub fn index(&self) -> usize {
        self.sup.order() / self.sub.order()
    }

    /// `outer . self`, an inclusion of `self.sub` into `outer.sup`.
    pub fn then(&self, outer: &SubgroupInclusion) -> Result<SubgroupInclusion> {
        let embedding = outer.embedding.after(&self.embedding)?;
        Ok(SubgroupInclusion {
            sub: self.sub.clone(),
            sup: outer.sup.clone(),
            embedding,
        })
    }
}
