//! Ends and coends of bifunctors `C^op x C -> Vect` and `-> Set`, given as
//! ordinary functors on the explicit product category.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, ObjId, Variance};
use crate::limits::SizeLimits;
use crate::qlin::{solve_matrix_equation, MatrixSolution, RatMatrix, Rational, Subspace};
use crate::setfun::SetFunctor;
use crate::vectfun::VectFunctor;

/// `C^op x C`. Object `(a, b)` has id `a * |C| + b`; the morphism pairing
/// `sigma` (read in `C^op`) with `rho` has id `sigma * |Mor C| + rho`.
pub fn twisted(c: &FinCat) -> Arc<FinCat> {
    Arc::new(c.opposite().product(c))
}

fn diagonal(c: &FinCat, o: ObjId) -> ObjId {
    o * c.num_objects() + o
}

/// The two legs of the wedge at `tau : a -> b`, as product morphism ids:
/// `H(1, tau) : H(a, a) -> H(a, b)` and `H(tau, 1) : H(b, b) -> H(a, b)`.
fn wedge_legs(c: &FinCat, tau: usize) -> (usize, usize) {
    let m = c.num_morphisms();
    let (a, b) = (c.dom(tau), c.cod(tau));
    (c.identity(a) * m + tau, tau * m + c.identity(b))
}

fn check_bifunctor_source(c: &FinCat, source: &FinCat) -> Result<()> {
    let expected = c.opposite().product(c);
    if source != &expected {
        return Err(Error::SourceMismatch);
    }
    Ok(())
}

/// End of a bifunctor, presented as a subspace of `(+)_c H(c, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndResult {
    pub offsets: Vec<usize>,
    pub apex: Subspace,
    /// Projection `end -> H(c, c)` for each object.
    pub projections: Vec<RatMatrix>,
}

impl EndResult {
    pub fn dim(&self) -> usize {
        self.apex.dim()
    }
}

/// Families `(x_c)` with `H(1, tau) x_a = H(tau, 1) x_b` for every
/// `tau : a -> b`.
pub fn end_vect(c: &FinCat, h: &VectFunctor) -> Result<EndResult> {
    check_bifunctor_source(c, h.source())?;
    if h.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("bifunctor must be covariant on C^op x C".into()));
    }
    let n = c.num_objects();
    let dims: Vec<usize> = (0..n).map(|o| h.dim(diagonal(c, o))).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for &d in &dims {
        offsets.push(total);
        total += d;
    }
    let mut blocks = Vec::new();
    for tau in 0..c.num_morphisms() {
        if c.is_identity(tau) {
            continue;
        }
        let (a, b) = (c.dom(tau), c.cod(tau));
        let (left, right) = wedge_legs(c, tau);
        let mut rows = RatMatrix::zeros(h.map(left).rows(), total);
        rows.set_block(0, offsets[a], h.map(left));
        let minus = -h.map(right);
        // a == b happens for endomorphisms; both legs hit the same block
        let mut existing = rows.block(0, offsets[b], minus.rows(), minus.cols());
        existing = &existing + &minus;
        rows.set_block(0, offsets[b], &existing);
        blocks.push(rows);
    }
    let apex = if blocks.is_empty() {
        Subspace::full(total)
    } else {
        RatMatrix::vstack(total, &blocks.iter().collect::<Vec<_>>()).kernel()
    };
    let inclusion = apex.inclusion();
    let projections = (0..n)
        .map(|o| inclusion.block(offsets[o], 0, dims[o], apex.dim()))
        .collect();
    Ok(EndResult {
        offsets,
        apex,
        projections,
    })
}

/// Coend of a bifunctor, presented as `R^perp` inside `(+)_c H(c, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoendResult {
    pub offsets: Vec<usize>,
    pub relations: Subspace,
    pub apex: Subspace,
    pub coordinates: RatMatrix,
    /// Injection `H(c, c) -> coend` for each object.
    pub injections: Vec<RatMatrix>,
}

impl CoendResult {
    pub fn dim(&self) -> usize {
        self.apex.dim()
    }
}

/// Quotient of `(+)_c H(c, c)` by `H(tau, 1) y - H(1, tau) y` for every
/// `tau : a -> b` and `y in H(b, a)`.
pub fn coend_vect(c: &FinCat, h: &VectFunctor) -> Result<CoendResult> {
    check_bifunctor_source(c, h.source())?;
    if h.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("bifunctor must be covariant on C^op x C".into()));
    }
    let n = c.num_objects();
    let nm = c.num_morphisms();
    let dims: Vec<usize> = (0..n).map(|o| h.dim(diagonal(c, o))).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for &d in &dims {
        offsets.push(total);
        total += d;
    }
    let mut generators = Vec::new();
    for tau in 0..nm {
        if c.is_identity(tau) {
            continue;
        }
        let (a, b) = (c.dom(tau), c.cod(tau));
        // from (b, a): (tau, 1_a) lands in (a, a), (1_b, tau) lands in (b, b)
        let to_a = h.map(tau * nm + c.identity(a));
        let to_b = h.map(c.identity(b) * nm + tau);
        for y in 0..h.dim(b * n + a) {
            let mut v = vec![Rational::zero(); total];
            for r in 0..dims[a] {
                v[offsets[a] + r] += to_a.get(r, y);
            }
            for r in 0..dims[b] {
                v[offsets[b] + r] -= to_b.get(r, y);
            }
            generators.push(v);
        }
    }
    let relations = Subspace::span(total, generators);
    let apex = relations.orthogonal_complement();
    let coordinates = apex.coordinate_map();
    let injections = (0..n)
        .map(|o| coordinates.block(0, offsets[o], apex.dim(), dims[o]))
        .collect();
    Ok(CoendResult {
        offsets,
        relations,
        apex,
        coordinates,
        injections,
    })
}

/// `H(a, b) = Hom(F a, G b)`, with `Hom` flattened row by row; the pair
/// `(sigma, rho)` acts by `X -> G(rho) X F(sigma)`.
pub fn hom_bifunctor(f: &VectFunctor, g: &VectFunctor) -> Result<VectFunctor> {
    if f.source() != g.source() {
        return Err(Error::SourceMismatch);
    }
    if f.variance() != Variance::Covariant || g.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("hom bifunctor of covariant functors".into()));
    }
    let c = f.source();
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let p = twisted(c);
    let dims = (0..n * n).map(|o| g.dim(o % n) * f.dim(o / n)).collect();
    VectFunctor::from_fn(p, Variance::Covariant, dims, |id| {
        let (sigma, rho) = (id / m, id % m);
        g.map(rho).kron(&f.map(sigma).transpose())
    })
}

/// Set-level end: every family `x_c in H(c, c)` satisfying the wedge
/// condition, in lexicographic order.
pub fn end_set(c: &FinCat, h: &SetFunctor, limits: &SizeLimits) -> Result<Vec<Vec<usize>>> {
    check_bifunctor_source(c, h.source())?;
    if h.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("bifunctor must be covariant on C^op x C".into()));
    }
    let n = c.num_objects();
    let sizes: Vec<usize> = (0..n).map(|o| h.set(diagonal(c, o)).len()).collect();
    let space = sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    limits.check_search("set-level end search space", space)?;

    // wedge conditions to check once the later endpoint is assigned
    let mut checks = vec![Vec::new(); n];
    for tau in 0..c.num_morphisms() {
        if !c.is_identity(tau) {
            checks[c.dom(tau).max(c.cod(tau))].push(tau);
        }
    }
    let holds = |x: &[usize], tau: usize| {
        let (left, right) = wedge_legs(c, tau);
        h.apply(left, x[c.dom(tau)]) == h.apply(right, x[c.cod(tau)])
    };
    let mut out = Vec::new();
    let mut x = vec![0; n];
    fn go(
        o: usize,
        sizes: &[usize],
        checks: &[Vec<usize>],
        x: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        holds: &dyn Fn(&[usize], usize) -> bool,
    ) {
        if o == sizes.len() {
            out.push(x.clone());
            return;
        }
        for v in 0..sizes[o] {
            x[o] = v;
            if checks[o].iter().all(|&tau| holds(x, tau)) {
                go(o + 1, sizes, checks, x, out, holds);
            }
        }
    }
    go(0, &sizes, &checks, &mut x, &mut out, &holds);
    Ok(out)
}

/// `H(a, b) = G(b)^F(a)`, functions encoded in base `|G(b)|` with the
/// image of element 0 as the lowest digit.
pub fn function_bifunctor(f: &SetFunctor, g: &SetFunctor, limits: &SizeLimits) -> Result<SetFunctor> {
    if f.source() != g.source() {
        return Err(Error::SourceMismatch);
    }
    if f.variance() != Variance::Covariant || g.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("function bifunctor of covariant functors".into()));
    }
    let c = f.source();
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let count = |a: usize, b: usize| (g.set(b).len() as u128).saturating_pow(f.set(a).len() as u32);
    let total = (0..n * n).fold(0u128, |acc, o| acc.saturating_add(count(o / n, o % n)));
    limits.check_search("function bifunctor size", total)?;

    let decode = |a: usize, b: usize, mut code: usize| -> Vec<usize> {
        let base = g.set(b).len();
        (0..f.set(a).len())
            .map(|_| {
                let d = code % base;
                code /= base;
                d
            })
            .collect()
    };
    let encode = |b: usize, phi: &[usize]| -> usize {
        let base = g.set(b).len();
        phi.iter().rev().fold(0, |acc, &d| acc * base + d)
    };
    let sets = (0..n * n)
        .map(|o| {
            let (a, b) = (o / n, o % n);
            (0..count(a, b) as usize)
                .map(|code| {
                    let phi = decode(a, b, code);
                    let shown: Vec<&str> = phi.iter().map(|&y| g.set(b)[y].as_str()).collect();
                    format!("[{}]", shown.join(","))
                })
                .collect()
        })
        .collect();
    let maps = (0..m * m)
        .map(|id| {
            let (sigma, rho) = (id / m, id % m);
            // sigma : a2 -> a in C, rho : b -> b2
            let (a, a2) = (c.cod(sigma), c.dom(sigma));
            let (b, b2) = (c.dom(rho), c.cod(rho));
            (0..count(a, b) as usize)
                .map(|code| {
                    let phi = decode(a, b, code);
                    let moved: Vec<usize> = (0..f.set(a2).len())
                        .map(|x| g.apply(rho, phi[f.apply(sigma, x)]))
                        .collect();
                    encode(b2, &moved)
                })
                .collect()
        })
        .collect();
    SetFunctor::new(twisted(c), Variance::Covariant, sets, maps)
}

/// Outcome of comparing `int_c int_m H` with `int_m int_c H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FubiniReport {
    /// `int_c int_m`
    pub dim_cm: usize,
    /// `int_m int_c`
    pub dim_mc: usize,
    /// Both iterated ends embed in `(+)_{c, m} H((c, c), (m, m))`; true when
    /// the images coincide.
    pub same_image: bool,
    /// `phi` with `embed_mc . phi = embed_cm`, when it exists.
    pub comparison: Option<RatMatrix>,
}

impl FubiniReport {
    pub fn holds(&self) -> bool {
        self.dim_cm == self.dim_mc
            && self.same_image
            && self.comparison.as_ref().is_some_and(RatMatrix::is_invertible)
    }
}

/// Iterated end of `h` on `(C^op x C) x (M^op x M)`, inner over the second
/// factor, embedded in `(+)_{c, m} H((c, c), (m, m))` ordered by `(c, m)`.
struct Iterated {
    dim: usize,
    /// rows ordered by (outer object, inner object, coordinate)
    embedding: RatMatrix,
    /// `block_offsets[outer][inner]`
    block_offsets: Vec<Vec<usize>>,
}

/// `h` lives on `P x Q` with `P = twisted(outer)` and `Q = twisted(inner)`;
/// `swap` says the product was built as `Q x P`.
fn iterated_end(outer: &FinCat, inner: &FinCat, h: &VectFunctor, swap: bool) -> Result<Iterated> {
    let p = twisted(outer);
    let q = twisted(inner);
    let whole = h.source();
    let (np, nq) = (p.num_objects(), q.num_objects());
    let (mp, mq) = (p.num_morphisms(), q.num_morphisms());
    let obj = |po: usize, qo: usize| if swap { qo * np + po } else { po * nq + qo };
    let mor = |pm: usize, qm: usize| if swap { qm * mp + pm } else { pm * mq + qm };

    // inner ends, one per object of P
    let mut inner_ends = Vec::with_capacity(np);
    for po in 0..np {
        let along = Functor::new(
            q.clone(),
            whole.clone(),
            (0..nq).map(|qo| obj(po, qo)).collect(),
            (0..mq).map(|qm| mor(p.identity(po), qm)).collect(),
        )?;
        inner_ends.push(end_vect(inner, &h.reindex(&along)?)?);
    }

    // E(p) = inner end at p, acting by restriction of H(pm, 1)
    let ni = inner.num_objects();
    let inner_diag: Vec<usize> = (0..ni).map(|x| diagonal(inner, x)).collect();
    let mut maps = Vec::with_capacity(mp);
    for pm in 0..mp {
        let (from, to) = (p.dom(pm), p.cod(pm));
        let blocks: Vec<RatMatrix> = inner_diag
            .iter()
            .map(|&qd| h.map(mor(pm, q.identity(qd))).clone())
            .collect();
        let rows: usize = blocks.iter().map(RatMatrix::rows).sum();
        let cols: usize = blocks.iter().map(RatMatrix::cols).sum();
        let mut ambient = RatMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in &blocks {
            ambient.set_block(r, c, b);
            r += b.rows();
            c += b.cols();
        }
        let image = &ambient * &inner_ends[from].apex.inclusion();
        let target = &inner_ends[to].apex;
        if !target.contains_subspace(&image.image()) {
            return Err(Error::InvalidFunctor(
                "bifunctor does not preserve the inner end".into(),
            ));
        }
        maps.push(&target.coordinate_map() * &image);
    }
    let dims = inner_ends.iter().map(EndResult::dim).collect();
    let e = VectFunctor::new(p.clone(), Variance::Covariant, dims, maps)?;
    let outer_end = end_vect(outer, &e)?;

    // embed into (+)_{c, m} H((c, c), (m, m))
    let no = outer.num_objects();
    let mut block_offsets = vec![vec![0; ni]; no];
    let mut total = 0;
    for (c, row) in block_offsets.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            *slot = total;
            total += h.dim(obj(diagonal(outer, c), inner_diag[x]));
        }
    }
    let mut stacked = RatMatrix::zeros(total, outer_end.dim());
    for c in 0..no {
        let inc = inner_ends[diagonal(outer, c)].apex.inclusion();
        let piece = &inc * &outer_end.projections[c];
        stacked.set_block(block_offsets[c][0], 0, &piece);
    }
    Ok(Iterated {
        dim: outer_end.dim(),
        embedding: stacked,
        block_offsets,
    })
}

/// Computes both iterated ends of `h : (C^op x C) x (M^op x M) -> Vect` and
/// the canonical comparison between them.
pub fn fubini_check(c: &FinCat, m: &FinCat, h: &VectFunctor) -> Result<FubiniReport> {
    let expected = twisted(c).product(&twisted(m));
    if h.source().as_ref() != &expected {
        return Err(Error::SourceMismatch);
    }
    let cm = iterated_end(c, m, h, false)?;
    let mc = iterated_end(m, c, h, true)?;

    // reorder the (m, c) rows into (c, m) order
    let total = cm.embedding.rows();
    let mut reordered = RatMatrix::zeros(total, mc.dim);
    for x in 0..c.num_objects() {
        for y in 0..m.num_objects() {
            let len = h.dim(diagonal(c, x) * twisted(m).num_objects() + diagonal(m, y));
            let block = mc.embedding.block(mc.block_offsets[y][x], 0, len, mc.dim);
            reordered.set_block(cm.block_offsets[x][y], 0, &block);
        }
    }
    let same_image = cm.embedding.image() == reordered.image();
    let comparison = match solve_matrix_equation(&reordered, &cm.embedding) {
        MatrixSolution::Feasible { particular, .. } => Some(particular),
        MatrixSolution::Infeasible { .. } => None,
    };
    Ok(FubiniReport {
        dim_cm: cm.dim,
        dim_mc: mc.dim,
        same_image,
        comparison,
    })
}

/// The bifunctor `H((a, b), (x, y)) = Hom(Q[C(Ky, a)] (x) T(x), S(b))` on
/// `(C^op x C) x (M^op x M)` whose two iterated ends both compute
/// `Nat(T, SK)`.
pub fn kan_adjunction_bifunctor(k: &Functor, t: &VectFunctor, s: &VectFunctor) -> Result<VectFunctor> {
    if k.source() != t.source() || k.target() != s.source() {
        return Err(Error::SourceMismatch);
    }
    let (mc, cc) = (k.source(), k.target());
    let (tc, tm) = (twisted(cc), twisted(mc));
    let whole = Arc::new(tc.product(&tm));
    let (nc, nm) = (cc.num_objects(), mc.num_objects());
    let (mor_c, mor_m) = (cc.num_morphisms(), mc.num_morphisms());
    let tm_objects = nm * nm;
    let tm_morphisms = mor_m * mor_m;
    let homs = |y: usize, a: usize| cc.hom(k.object(y), a);

    let dims = (0..whole.num_objects())
        .map(|o| {
            let (co, mo) = (o / tm_objects, o % tm_objects);
            let (a, b) = (co / nc, co % nc);
            let (x, y) = (mo / nm, mo % nm);
            s.dim(b) * homs(y, a).len() * t.dim(x)
        })
        .collect();
    VectFunctor::from_fn(whole, Variance::Covariant, dims, |id| {
        let (cm, mm) = (id / tm_morphisms, id % tm_morphisms);
        let (sigma, rho) = (cm / mor_c, cm % mor_c);
        let (mu, nu) = (mm / mor_m, mm % mor_m);
        // sigma : a2 -> a, rho : b -> b2, mu : x2 -> x, nu : y -> y2
        let (a, a2) = (cc.cod(sigma), cc.dom(sigma));
        let (y, y2) = (mc.dom(nu), mc.cod(nu));
        let (from, to) = (homs(y, a), homs(y2, a2));
        let mut reindex = RatMatrix::zeros(from.len(), to.len());
        for (col, &f) in to.iter().enumerate() {
            let moved = cc.compose(sigma, cc.compose(f, k.morphism(nu)));
            let row = from.iter().position(|&g| g == moved).expect("composite in hom-set");
            reindex.set(row, col, Rational::one());
        }
        let input = reindex.kron(t.map(mu));
        s.map(rho).kron(&input.transpose())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfun::enumerate_nat_transformations;
    use crate::vectfun::{hom_space, validate_vect_functor};

    fn c2() -> Arc<FinCat> {
        Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn regular_c2() -> VectFunctor {
        VectFunctor::new(
            c2(),
            Variance::Covariant,
            vec![2],
            vec![RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[0, 1, 1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn end_of_hom_is_hom_space() {
        let reg = regular_c2();
        let h = hom_bifunctor(&reg, &reg).unwrap();
        assert!(validate_vect_functor(&h).is_empty());
        let e = end_vect(&c2(), &h).unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.dim(), hom_space(&reg, &reg).unwrap().dim);

        let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
        let f = VectFunctor::new(
            arrow.clone(),
            Variance::Covariant,
            vec![1, 2],
            vec![RatMatrix::identity(1), RatMatrix::from_i64(2, 1, &[1, 2]), RatMatrix::identity(2)],
        )
        .unwrap();
        let h = hom_bifunctor(&f, &f).unwrap();
        assert!(validate_vect_functor(&h).is_empty());
        assert_eq!(end_vect(&arrow, &h).unwrap().dim(), hom_space(&f, &f).unwrap().dim);
    }

    #[test]
    fn end_and_coend_on_one_object() {
        let one = FinCat::discrete(1);
        let h = VectFunctor::constant(&twisted(&one), Variance::Covariant, 3);
        assert_eq!(end_vect(&one, &h).unwrap().dim(), 3);
        assert_eq!(coend_vect(&one, &h).unwrap().dim(), 3);
    }

    #[test]
    fn coend_of_hom_on_c2() {
        // int^c Hom(F c, G c) for F = G = regular: the coinvariants of the
        // conjugation action on 2x2 matrices
        let reg = regular_c2();
        let h = hom_bifunctor(&reg, &reg).unwrap();
        assert_eq!(coend_vect(&c2(), &h).unwrap().dim(), 2);
    }

    #[test]
    fn set_end_counts_nat_transformations() {
        let swap = SetFunctor::new(
            c2(),
            Variance::Covariant,
            vec![vec!["x".into(), "y".into()]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let limits = SizeLimits::default();
        let h = function_bifunctor(&swap, &swap, &limits).unwrap();
        assert!(crate::setfun::validate_set_functor(&h).is_empty());
        let end = end_set(&c2(), &h, &limits).unwrap();
        assert_eq!(end.len(), 2);
        assert_eq!(end.len(), enumerate_nat_transformations(&swap, &swap, &limits).unwrap().len());

        let empty = SetFunctor::new(c2(), Variance::Covariant, vec![vec![]], vec![vec![], vec![]]).unwrap();
        let h = function_bifunctor(&swap, &empty, &limits).unwrap();
        assert!(end_set(&c2(), &h, &limits).unwrap().is_empty());
    }

    #[test]
    fn fubini_on_constant_and_kan_bifunctors() {
        let one = FinCat::discrete(1);
        let whole = Arc::new(twisted(&one).product(&twisted(&one)));
        let h = VectFunctor::constant(&whole, Variance::Covariant, 1);
        let report = fubini_check(&one, &one, &h).unwrap();
        assert_eq!((report.dim_cm, report.dim_mc), (1, 1));
        assert!(report.holds());

        let trivial = Arc::new(FinCat::discrete(1));
        let k = Functor::new(trivial.clone(), c2(), vec![0], vec![0]).unwrap();
        let t = VectFunctor::constant(&trivial, Variance::Covariant, 1);
        let s = regular_c2();
        let h = kan_adjunction_bifunctor(&k, &t, &s).unwrap();
        assert!(validate_vect_functor(&h).is_empty());
        let report = fubini_check(&c2(), &trivial, &h).unwrap();
        let expected = hom_space(&t, &s.reindex(&k).unwrap()).unwrap().dim;
        assert_eq!((report.dim_cm, report.dim_mc), (expected, expected));
        assert!(report.holds());
    }
}
