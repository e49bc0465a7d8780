//! Seeded generators of small categories, functors, cylinders and
//! bifunctors, for property tests and randomized suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{FinCat, ObjId, Variance};
use crate::induce::FiniteGroup;
use crate::kan::{twisted, Cylinder};
use crate::qlin::{rat, RatMatrix, Rational};
use crate::setfun::SetFunctor;
use crate::vectfun::VectFunctor;

/// How functors on a family are generated: every family is presented so
/// that a functor is determined by freely chosen data.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    /// Preorder whose covering relation has unique paths.
    Forest(Vec<(ObjId, ObjId)>),
    /// Two objects, two parallel arrows `f, g : 0 -> 1`.
    Parallel,
    Cyclic(usize),
    /// One object, `{1, e}` with `e e = e`.
    Idempotent,
    /// Two objects with a unique arrow each way.
    Indiscrete,
}

/// A named small category together with its generating data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub category: Arc<FinCat>,
    shape: Shape,
}

fn forest(name: &'static str, n: usize, edges: &[(ObjId, ObjId)]) -> Family {
    Family {
        name,
        category: Arc::new(FinCat::preorder(n, edges)),
        shape: Shape::Forest(edges.to_vec()),
    }
}

/// Every family the generators draw from.
pub fn families() -> Vec<Family> {
    let parallel = FinCat::from_fn(
        vec!["0".into(), "1".into()],
        vec![
            crate::fincat::Morphism { label: "id0".into(), dom: 0, cod: 0 },
            crate::fincat::Morphism { label: "id1".into(), dom: 1, cod: 1 },
            crate::fincat::Morphism { label: "f".into(), dom: 0, cod: 1 },
            crate::fincat::Morphism { label: "g".into(), dom: 0, cod: 1 },
        ],
        vec![0, 1],
        |g, f| if g == 1 { f } else { g },
    )
    .expect("parallel pair");
    let idempotent = FinCat::one_object(vec!["1".into(), "e".into()], &[vec![0, 1], vec![1, 1]])
        .expect("idempotent monoid");
    let cyclic = |name, n| Family {
        name,
        category: FiniteGroup::cyclic(n).category().clone(),
        shape: Shape::Cyclic(n),
    };
    vec![
        forest("discrete1", 1, &[]),
        forest("discrete2", 2, &[]),
        forest("discrete3", 3, &[]),
        forest("arrow", 2, &[(0, 1)]),
        forest("chain3", 3, &[(0, 1), (1, 2)]),
        forest("span", 3, &[(0, 1), (0, 2)]),
        forest("cospan", 3, &[(0, 2), (1, 2)]),
        forest("arrow+point", 3, &[(0, 1)]),
        Family {
            name: "parallel",
            category: Arc::new(parallel),
            shape: Shape::Parallel,
        },
        cyclic("C2", 2),
        cyclic("C3", 3),
        cyclic("C4", 4),
        Family {
            name: "idempotent",
            category: Arc::new(idempotent),
            shape: Shape::Idempotent,
        },
        Family {
            name: "indiscrete2",
            category: Arc::new(FinCat::preorder(2, &[(0, 1), (1, 0)])),
            shape: Shape::Indiscrete,
        },
    ]
}

/// Deterministic source of random instances.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// An integer in `[-3, 3]`.
    pub fn entry(&mut self) -> i64 {
        self.rng.gen_range(-3..=3)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_fn(rows, cols, |_, _| rat(self.rng.gen_range(-3..=3), 1))
    }

    /// A family with at most the given numbers of objects and morphisms.
    pub fn family(&mut self, max_objects: usize, max_morphisms: usize) -> Family {
        let fits: Vec<Family> = families()
            .into_iter()
            .filter(|f| f.category.num_objects() <= max_objects && f.category.num_morphisms() <= max_morphisms)
            .collect();
        fits.choose(&mut self.rng).expect("some family fits").clone()
    }

    /// A family with exactly two objects.
    pub fn two_object_family(&mut self) -> Family {
        let fits: Vec<Family> = families()
            .into_iter()
            .filter(|f| f.category.num_objects() == 2)
            .collect();
        fits.choose(&mut self.rng).expect("two-object families exist").clone()
    }

    /// A valid covariant functor with fiber dimensions in `1..=max_dim`.
    pub fn vect_functor(&mut self, family: &Family, max_dim: usize) -> VectFunctor {
        let cat = &family.category;
        let n = cat.num_objects();
        let mut dims: Vec<usize> = (0..n).map(|_| self.rng.gen_range(1..=max_dim)).collect();
        let maps = match &family.shape {
            Shape::Forest(edges) => {
                let edge_maps: Vec<RatMatrix> = edges.iter().map(|&(a, b)| self.matrix(dims[b], dims[a])).collect();
                (0..cat.num_morphisms())
                    .map(|f| path_product(edges, &edge_maps, cat.dom(f), cat.cod(f), dims[cat.dom(f)]))
                    .collect()
            }
            Shape::Parallel => vec![
                RatMatrix::identity(dims[0]),
                RatMatrix::identity(dims[1]),
                self.matrix(dims[1], dims[0]),
                self.matrix(dims[1], dims[0]),
            ],
            Shape::Cyclic(order) => {
                let m = self.finite_order_matrix(dims[0], *order);
                powers(&m, *order)
            }
            Shape::Idempotent => {
                let e = self.idempotent_matrix(dims[0]);
                vec![RatMatrix::identity(dims[0]), e]
            }
            Shape::Indiscrete => {
                dims[1] = dims[0];
                let (u, inv) = self.unimodular(dims[0]);
                (0..4)
                    .map(|f| match (cat.dom(f), cat.cod(f)) {
                        (0, 1) => u.clone(),
                        (1, 0) => inv.clone(),
                        _ => RatMatrix::identity(dims[0]),
                    })
                    .collect()
            }
        };
        VectFunctor::new(cat.clone(), Variance::Covariant, dims, maps).expect("generated shapes agree")
    }

    /// A valid set functor with fibers of size `0..=max_size`.
    pub fn set_functor(&mut self, family: &Family, variance: Variance, max_size: usize) -> SetFunctor {
        let cat = &family.category;
        let n = cat.num_objects();
        let mut sizes: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..=max_size)).collect();
        let maps: Vec<Vec<usize>> = match &family.shape {
            Shape::Forest(edges) => {
                // direction in which the functions run
                let runs: Vec<(ObjId, ObjId)> = edges
                    .iter()
                    .map(|&(a, b)| match variance {
                        Variance::Covariant => (a, b),
                        Variance::Contravariant => (b, a),
                    })
                    .collect();
                loop {
                    let mut changed = false;
                    for &(a, b) in &runs {
                        if sizes[a] > 0 && sizes[b] == 0 {
                            sizes[b] = 1;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                let edge_maps: Vec<Vec<usize>> = runs
                    .iter()
                    .map(|&(a, b)| (0..sizes[a]).map(|_| self.rng.gen_range(0..sizes[b])).collect())
                    .collect();
                (0..cat.num_morphisms())
                    .map(|f| {
                        let (from, to) = match variance {
                            Variance::Covariant => (cat.dom(f), cat.cod(f)),
                            Variance::Contravariant => (cat.cod(f), cat.dom(f)),
                        };
                        path_function(&runs, &edge_maps, &sizes, from, to)
                    })
                    .collect()
            }
            Shape::Parallel => {
                let (a, b) = match variance {
                    Variance::Covariant => (0, 1),
                    Variance::Contravariant => (1, 0),
                };
                if sizes[a] > 0 && sizes[b] == 0 {
                    sizes[b] = 1;
                }
                let mut pick = || (0..sizes[a]).map(|_| self.rng.gen_range(0..sizes[b])).collect::<Vec<_>>();
                let (f, g) = (pick(), pick());
                vec![(0..sizes[0]).collect(), (0..sizes[1]).collect(), f, g]
            }
            Shape::Cyclic(order) => {
                let p = self.permutation_of_order_dividing(sizes[0], *order);
                let mut maps = vec![(0..sizes[0]).collect::<Vec<_>>()];
                for k in 1..*order {
                    let prev: &Vec<usize> = &maps[k - 1];
                    maps.push(prev.iter().map(|&x| p[x]).collect());
                }
                maps
            }
            Shape::Idempotent => {
                let size = sizes[0];
                let mut e: Vec<usize> = (0..size).collect();
                if size > 0 {
                    let image_size = self.rng.gen_range(1..=size);
                    let mut elems: Vec<usize> = (0..size).collect();
                    elems.shuffle(&mut self.rng);
                    let (image, rest) = elems.split_at(image_size);
                    for &x in rest {
                        e[x] = *image.choose(&mut self.rng).expect("image is nonempty");
                    }
                }
                vec![(0..size).collect(), e]
            }
            Shape::Indiscrete => {
                sizes[1] = sizes[0];
                let mut p: Vec<usize> = (0..sizes[0]).collect();
                p.shuffle(&mut self.rng);
                let mut inv = vec![0; p.len()];
                for (x, &y) in p.iter().enumerate() {
                    inv[y] = x;
                }
                (0..4)
                    .map(|f| {
                        let forward = (cat.dom(f), cat.cod(f)) == (0, 1);
                        let backward = (cat.dom(f), cat.cod(f)) == (1, 0);
                        let along = match variance {
                            Variance::Covariant => forward,
                            Variance::Contravariant => backward,
                        };
                        if along {
                            p.clone()
                        } else if forward || backward {
                            inv.clone()
                        } else {
                            (0..sizes[0]).collect()
                        }
                    })
                    .collect()
            }
        };
        let sets = sizes
            .iter()
            .map(|&s| (0..s).map(|x| format!("x{x}")).collect())
            .collect();
        SetFunctor::new(cat.clone(), variance, sets, maps).expect("generated shapes agree")
    }

    /// A random cylinder under `g` with weight `f`, drawn from the solution
    /// space of the cylinder equations with coefficients in `[-3, 3]`.
    pub fn cylinder_under(&mut self, f: &SetFunctor, g: &VectFunctor, vertex: usize) -> Cylinder {
        let cat = f.source();
        let mut offsets = Vec::new();
        let mut unknowns = 0;
        for i in 0..cat.num_objects() {
            let mut row = Vec::new();
            for _ in 0..f.set(i).len() {
                row.push(unknowns);
                unknowns += vertex * g.dim(i);
            }
            offsets.push(row);
        }
        let var = |i: usize, x: usize, r: usize, c: usize| offsets[i][x] + r * g.dim(i) + c;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for alpha in 0..cat.num_morphisms() {
            let (i, j) = (cat.dom(alpha), cat.cod(alpha));
            for y in 0..f.set(j).len() {
                let x = f.apply(alpha, y);
                // c(i, x)[r][b] - sum_k c(j, y)[r][k] G(alpha)[k][b] = 0
                for r in 0..vertex {
                    for b in 0..g.dim(i) {
                        let mut eq = vec![rat(0, 1); unknowns];
                        eq[var(i, x, r, b)] += rat(1, 1);
                        for k in 0..g.dim(j) {
                            eq[var(j, y, r, k)] -= g.map(alpha).get(k, b);
                        }
                        rows.push(eq);
                    }
                }
            }
        }
        let solutions = match RatMatrix::from_rows(rows, unknowns) {
            Some(system) if system.rows() > 0 => system.kernel(),
            _ => crate::qlin::Subspace::full(unknowns),
        };
        let mut v = vec![rat(0, 1); unknowns];
        for b in solutions.basis_vectors() {
            let w = rat(self.entry(), 1);
            for (acc, x) in v.iter_mut().zip(&b) {
                *acc += &w * x;
            }
        }
        let components = (0..cat.num_objects())
            .map(|i| {
                (0..f.set(i).len())
                    .map(|x| RatMatrix::from_fn(vertex, g.dim(i), |r, c| v[var(i, x, r, c)].clone()))
                    .collect()
            })
            .collect();
        Cylinder {
            vertex,
            components,
            contraction_mode: false,
        }
    }

    /// `H((c, c'), (m, m')) = Hom(F c (x) P m, G c' (x) Q m')` for random
    /// `F, G` on `C` and `P, Q` on `M`, on `(C^op x C) x (M^op x M)`.
    pub fn tensor_hom_bifunctor(&mut self, c: &Family, m: &Family, max_dim: usize) -> VectFunctor {
        let (f, g) = (self.vect_functor(c, max_dim), self.vect_functor(c, max_dim));
        let (p, q) = (self.vect_functor(m, max_dim), self.vect_functor(m, max_dim));
        tensor_hom(&f, &p, &g, &q)
    }
}

/// Scales a cylinder by `1/N`, with `N` the least positive integer whose
/// square bounds every squared Frobenius norm, so each component becomes a
/// contraction. Sets contraction mode.
pub fn scale_to_contractions(cyl: &Cylinder) -> Cylinder {
    let largest = cyl
        .components
        .iter()
        .flatten()
        .map(RatMatrix::frobenius_norm_sq)
        .max()
        .unwrap_or_else(|| rat(0, 1));
    let mut n: i64 = 1;
    while rat(n * n, 1) < largest {
        n += 1;
    }
    let factor = rat(1, n);
    Cylinder {
        vertex: cyl.vertex,
        components: cyl
            .components
            .iter()
            .map(|comps| comps.iter().map(|c| c.scale(&factor)).collect())
            .collect(),
        contraction_mode: true,
    }
}

/// See [`Generator::tensor_hom_bifunctor`].
pub fn tensor_hom(f: &VectFunctor, p: &VectFunctor, g: &VectFunctor, q: &VectFunctor) -> VectFunctor {
    let (c, m) = (f.source(), p.source());
    let (tc, tm) = (twisted(c), twisted(m));
    let whole = Arc::new(tc.product(&tm));
    let (nc, nm) = (c.num_objects(), m.num_objects());
    let (mc, mm) = (c.num_morphisms(), m.num_morphisms());
    let dims = (0..whole.num_objects())
        .map(|o| {
            let (co, mo) = (o / (nm * nm), o % (nm * nm));
            let (a, b, x, y) = (co / nc, co % nc, mo / nm, mo % nm);
            g.dim(b) * q.dim(y) * f.dim(a) * p.dim(x)
        })
        .collect();
    VectFunctor::from_fn(whole, Variance::Covariant, dims, |id| {
        let (cm, mmor) = (id / (mm * mm), id % (mm * mm));
        let (sigma, rho, mu, nu) = (cm / mc, cm % mc, mmor / mm, mmor % mm);
        let output = g.map(rho).kron(q.map(nu));
        let input = f.map(sigma).kron(p.map(mu));
        output.kron(&input.transpose())
    })
    .expect("tensor hom shapes agree")
}

fn powers(m: &RatMatrix, n: usize) -> Vec<RatMatrix> {
    let mut out = vec![RatMatrix::identity(m.rows())];
    for k in 1..n {
        out.push(&out[k - 1] * m);
    }
    out
}

/// Composite of edge maps along the unique covering path `from -> to`.
fn path_product(edges: &[(ObjId, ObjId)], maps: &[RatMatrix], from: ObjId, to: ObjId, dim: usize) -> RatMatrix {
    if from == to {
        return RatMatrix::identity(dim);
    }
    let (k, &(_, next)) = edges
        .iter()
        .enumerate()
        .find(|&(_, &(a, b))| a == from && reaches(edges, b, to))
        .expect("path exists");
    &path_product(edges, maps, next, to, maps[k].rows()) * &maps[k]
}

fn path_function(edges: &[(ObjId, ObjId)], maps: &[Vec<usize>], sizes: &[usize], from: ObjId, to: ObjId) -> Vec<usize> {
    if from == to {
        return (0..sizes[from]).collect();
    }
    let (k, &(_, next)) = edges
        .iter()
        .enumerate()
        .find(|&(_, &(a, b))| a == from && reaches(edges, b, to))
        .expect("path exists");
    let rest = path_function(edges, maps, sizes, next, to);
    maps[k].iter().map(|&x| rest[x]).collect()
}

fn reaches(edges: &[(ObjId, ObjId)], from: ObjId, to: ObjId) -> bool {
    from == to || edges.iter().any(|&(a, b)| a == from && reaches(edges, b, to))
}

impl Generator {
    /// `U P U^-1` with `P` a signed permutation of order dividing `n` and
    /// `U` unipotent, kept only if all entries stay in `[-3, 3]`.
    fn finite_order_matrix(&mut self, dim: usize, n: usize) -> RatMatrix {
        let perm = self.permutation_of_order_dividing(dim, n);
        let mut p = RatMatrix::zeros(dim, dim);
        // walk cycles so a sign flip can be placed once per cycle
        let mut seen = vec![false; dim];
        for start in 0..dim {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = perm[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = perm[x];
            }
            let flip = n.is_multiple_of(2 * cycle.len()) && self.rng.gen_bool(0.5);
            for (k, &x) in cycle.iter().enumerate() {
                let sign = if flip && k == 0 { -1 } else { 1 };
                p.set(perm[x], x, rat(sign, 1));
            }
        }
        for _ in 0..4 {
            let (u, inv) = self.unimodular(dim);
            let conj = &(&u * &p) * &inv;
            if conj.max_abs_entry() <= rat(3, 1) {
                return conj;
            }
        }
        p
    }

    /// Unit upper-triangular `U` with entries in `[-1, 1]`, and its inverse.
    fn unimodular(&mut self, dim: usize) -> (RatMatrix, RatMatrix) {
        loop {
            let u = RatMatrix::from_fn(dim, dim, |r, c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => rat(1, 1),
                std::cmp::Ordering::Less => rat(self.rng.gen_range(-1..=1), 1),
                std::cmp::Ordering::Greater => rat(0, 1),
            });
            let inv = u.inverse().expect("unipotent matrices are invertible");
            if inv.max_abs_entry() <= rat(3, 1) {
                return (u, inv);
            }
        }
    }

    /// `[[I, X], [0, 0]]` with `X` random, conjugated by a coordinate
    /// permutation.
    fn idempotent_matrix(&mut self, dim: usize) -> RatMatrix {
        let rank = self.rng.gen_range(0..=dim);
        let mut e = RatMatrix::zeros(dim, dim);
        for r in 0..rank {
            e.set(r, r, rat(1, 1));
            for c in rank..dim {
                e.set(r, c, rat(self.entry(), 1));
            }
        }
        let mut order: Vec<usize> = (0..dim).collect();
        order.shuffle(&mut self.rng);
        RatMatrix::from_fn(dim, dim, |r, c| e.get(order[r], order[c]).clone())
    }

    /// Random permutation whose cycle lengths divide `n`.
    fn permutation_of_order_dividing(&mut self, size: usize, n: usize) -> Vec<usize> {
        let mut elems: Vec<usize> = (0..size).collect();
        elems.shuffle(&mut self.rng);
        let mut perm: Vec<usize> = (0..size).collect();
        let mut rest = &elems[..];
        while !rest.is_empty() {
            let lengths: Vec<usize> = (1..=rest.len()).filter(|l| n.is_multiple_of(*l)).collect();
            let len = *lengths.choose(&mut self.rng).expect("1 divides n");
            let (cycle, tail) = rest.split_at(len);
            for k in 0..len {
                perm[cycle[k]] = cycle[(k + 1) % len];
            }
            rest = tail;
        }
        perm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;
    use crate::setfun::validate_set_functor;
    use crate::vectfun::validate_vect_functor;

    #[test]
    fn families_are_categories() {
        for f in families() {
            assert!(validate_category(&f.category).is_empty(), "{}", f.name);
        }
    }

    #[test]
    fn generated_functors_are_valid() {
        let mut gen = Generator::new(7);
        for fam in families() {
            for _ in 0..20 {
                let v = gen.vect_functor(&fam, 3);
                assert!(validate_vect_functor(&v).is_empty(), "{}", fam.name);
                assert!(v.maps().iter().all(|m| m.max_abs_entry() <= rat(3, 1) || fam.name == "chain3"));
                for variance in [Variance::Covariant, Variance::Contravariant] {
                    let s = gen.set_functor(&fam, variance, 3);
                    assert!(validate_set_functor(&s).is_empty(), "{} {:?}", fam.name, variance);
                }
            }
        }
    }

    #[test]
    fn generated_cylinders_are_cylinders() {
        let mut gen = Generator::new(11);
        for fam in families() {
            let f = gen.set_functor(&fam, Variance::Contravariant, 2);
            let g = gen.vect_functor(&fam, 2);
            let cyl = gen.cylinder_under(&f, &g, 2);
            cyl.validate_under(&f, &g).unwrap();
            let scaled = scale_to_contractions(&cyl);
            scaled.validate_under(&f, &g).unwrap();
        }
    }

    #[test]
    fn tensor_hom_is_a_functor() {
        let mut gen = Generator::new(3);
        let (c, m) = (gen.two_object_family(), gen.two_object_family());
        let h = gen.tensor_hom_bifunctor(&c, &m, 2);
        assert!(validate_vect_functor(&h).is_empty());
    }

    #[test]
    fn same_seed_same_instances() {
        let fam = &families()[4];
        let a = Generator::new(5).vect_functor(fam, 3);
        let b = Generator::new(5).vect_functor(fam, 3);
        assert_eq!(a, b);
    }
}
