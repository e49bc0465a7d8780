//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line and fails when the criterion fails.
//!
//! Run with `cargo test --test acceptance -- --nocapture --test-threads=1`
//! to see the lines in order.

use std::sync::Arc;
use std::time::{Duration, Instant};

use kanext::fincat::Variance;
use kanext::induce::{
    find_isomorphism, frobenius_dims, induce, induced_character_oracle, standard_cases, FiniteGroup, GroupRep,
    Isomorphism, SubgroupInclusion,
};
use kanext::kan::{
    compare_weighted_colimits, end_set, fubini_check, function_bifunctor, left_kan, left_kan_via_comma,
    weighted_colimit_orthogonal, weighted_colimit_quotient, weighted_limit, Cylinder,
};
use kanext::qlin::{is_contraction, RatMatrix, Rational};
use kanext::random::{scale_to_contractions, Generator};
use kanext::setfun::{enumerate_nat_transformations, SetFunctor};
use kanext::vectfun::{self, ConeData, VectFunctor};
use kanext::SizeLimits;
use num_traits::{One, Zero};

fn report(n: usize, pass: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

/// Independent model of `F * G` as `V / R` with cosets in normal form: a
/// vector is reduced against the echelon rows of `R` and read off at the
/// non-pivot columns.
struct CosetQuotient {
    ambient: usize,
    offsets: Vec<Vec<usize>>,
    reducer: Vec<(usize, Vec<Rational>)>,
    free: Vec<usize>,
}

impl CosetQuotient {
    fn new(f: &SetFunctor, g: &VectFunctor) -> CosetQuotient {
        let cat = f.source();
        let mut offsets = Vec::new();
        let mut ambient = 0;
        for i in 0..cat.num_objects() {
            offsets.push(
                (0..f.set(i).len())
                    .map(|_| {
                        ambient += g.dim(i);
                        ambient - g.dim(i)
                    })
                    .collect::<Vec<_>>(),
            );
        }
        // relation vectors x(i, F alpha y) . b ~ y(j) . G(alpha) b
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for alpha in 0..cat.num_morphisms() {
            let (i, j) = (cat.dom(alpha), cat.cod(alpha));
            for y in 0..f.set(j).len() {
                let x = f.apply(alpha, y);
                for b in 0..g.dim(i) {
                    let mut v = vec![Rational::zero(); ambient];
                    v[offsets[i][x] + b] += Rational::one();
                    for r in 0..g.dim(j) {
                        v[offsets[j][y] + r] -= g.map(alpha).get(r, b);
                    }
                    rows.push(v);
                }
            }
        }
        // hand-rolled Gauss-Jordan, independent of RatMatrix::rref
        let mut reducer: Vec<(usize, Vec<Rational>)> = Vec::new();
        for mut v in rows {
            for (p, r) in &reducer {
                if !v[*p].is_zero() {
                    let c = v[*p].clone();
                    for k in 0..ambient {
                        v[k] -= &c * &r[k];
                    }
                }
            }
            if let Some(p) = (0..ambient).find(|&k| !v[k].is_zero()) {
                let c = v[p].clone();
                for x in v.iter_mut() {
                    *x /= &c;
                }
                for (_, r) in reducer.iter_mut() {
                    if !r[p].is_zero() {
                        let c = r[p].clone();
                        for k in 0..ambient {
                            let t = &c * &v[k];
                            r[k] -= t;
                        }
                    }
                }
                reducer.push((p, v));
            }
        }
        let pivots: Vec<usize> = reducer.iter().map(|(p, _)| *p).collect();
        let free = (0..ambient).filter(|k| !pivots.contains(k)).collect();
        CosetQuotient {
            ambient,
            offsets,
            reducer,
            free,
        }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    /// Normal-form coordinates of the coset of `v`.
    fn class(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, r) in &self.reducer {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for k in 0..self.ambient {
                    v[k] -= &c * &r[k];
                }
            }
        }
        self.free.iter().map(|&k| v[k].clone()).collect()
    }

    /// Matrix of `V -> V/R` in normal-form coordinates.
    fn quotient_map(&self) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.ambient)
            .map(|k| {
                let mut e = vec![Rational::zero(); self.ambient];
                e[k] = Rational::one();
                self.class(&e)
            })
            .collect();
        RatMatrix::from_fn(self.dim(), self.ambient, |r, c| cols[c][r].clone())
    }
}

#[test]
fn criterion_1_orthogonal_complement_is_the_weighted_colimit() {
    let limits = SizeLimits::default();
    let mut gen = Generator::new(1);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total_dim = 0;
    for case in 0..100 {
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let o = weighted_colimit_orthogonal(&f, &g, &limits).unwrap();
        let q = weighted_colimit_quotient(&f, &g, &limits).unwrap();
        let coset = CosetQuotient::new(&f, &g);
        total_dim += o.apex_dim();

        let mut ok = o.apex_dim() == q.apex_dim() && o.apex_dim() == coset.dim();
        let cmp = compare_weighted_colimits(&o, &q, &f, &g).unwrap();
        ok &= cmp.is_isomorphism() && cmp.commutes(&o.universal, &q.universal);
        // R^perp -> V -> V/R is invertible and carries lambda to the coset
        // of each copy inclusion
        let to_cosets = &coset.quotient_map() * &o.apex.inclusion();
        ok &= to_cosets.is_invertible();
        for (i, comps) in o.universal.components.iter().enumerate() {
            for (x, lambda) in comps.iter().enumerate() {
                let copy = coset.quotient_map().block(0, coset.offsets[i][x], coset.dim(), g.dim(i));
                ok &= &to_cosets * lambda == copy;
            }
        }
        if !ok {
            failures.push(format!("case {case} ({})", fam.name));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(60);
    report(
        1,
        pass,
        &format!(
            "100 instances, {} mismatches, total apex dim {total_dim}, {:.2}s {:?}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_frobenius_reciprocity() {
    let limits = SizeLimits::default();
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for case in standard_cases() {
        for (vn, v) in &case.sub_reps {
            for (wn, w) in &case.sup_reps {
                let d = frobenius_dims(v, w, &case.inclusion, &limits).unwrap();
                checked += 1;
                if !d.agree() {
                    failures.push(format!("{} {vn}/{wn}: {} vs {}", case.name, d.induced, d.restricted));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    report(
        2,
        pass,
        &format!("{checked} (V, W) pairs, {:.2}s {:?}", elapsed.as_secs_f64(), failures),
    );
    assert!(pass);
}

#[test]
fn criterion_3_pointwise_equals_weighted() {
    let limits = SizeLimits::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for case in standard_cases() {
        let inc = &case.inclusion;
        for (vn, v) in &case.sub_reps {
            let kan = left_kan(inc.embedding(), v.functor(), &limits).unwrap();
            let comma = left_kan_via_comma(inc.embedding(), v.functor(), 0, &limits).unwrap();
            let oracle_dim = inc.index() * v.dim();
            let induced = induce(v, inc, &limits).unwrap();
            let oracle_char = induced_character_oracle(v, inc);
            checked += 1;
            let dims = (kan.extension.dim(0), comma.apex_dim(), oracle_dim);
            if dims.0 != dims.1 || dims.1 != dims.2 || induced.character() != &oracle_char[..] {
                failures.push(format!("{} {vn}: dims {dims:?}", case.name));
            }
        }
    }
    let pass = failures.is_empty();
    report(3, pass, &format!("{checked} (G, H, V) triples {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_4_unit_weight_degenerates_to_ordinary_limits() {
    let limits = SizeLimits::default();
    let mut gen = Generator::new(4);
    let mut failures = Vec::new();
    for case in 0..100 {
        let fam = gen.family(3, 6);
        let g = gen.vect_functor(&fam, 3);
        let cat = g.source();

        let point = SetFunctor::constant_point(cat, Variance::Covariant);
        let wl = weighted_limit(&point, &g, &limits).unwrap();
        let lim = vectfun::limit(&g).unwrap();
        let as_cylinder = Cylinder {
            vertex: lim.apex_dim(),
            components: lim.legs.iter().map(|l| vec![l.clone()]).collect(),
            contraction_mode: false,
        };
        let to_weighted = wl.factor(&point, &g, &as_cylinder).unwrap();
        let weighted_cone = ConeData {
            apex: wl.apex_dim(),
            legs: wl.universal.components.iter().map(|c| c[0].clone()).collect(),
        };
        let to_plain = lim.factor(&g, &weighted_cone).unwrap();
        let limit_ok = wl.apex_dim() == lim.apex_dim()
            && (&to_weighted * &to_plain).is_identity()
            && (&to_plain * &to_weighted).is_identity();

        let copoint = SetFunctor::constant_point(cat, Variance::Contravariant);
        let wc = weighted_colimit_orthogonal(&copoint, &g, &limits).unwrap();
        let col = vectfun::colimit(&g).unwrap();
        let as_cylinder = Cylinder {
            vertex: col.apex_dim(),
            components: col.injections.iter().map(|l| vec![l.clone()]).collect(),
            contraction_mode: false,
        };
        let from_weighted = wc.factor(&copoint, &g, &as_cylinder).unwrap().map;
        let weighted_cocone = ConeData {
            apex: wc.apex_dim(),
            legs: wc.universal.components.iter().map(|c| c[0].clone()).collect(),
        };
        let from_plain = col.factor(&g, &weighted_cocone).unwrap();
        let colimit_ok = wc.apex_dim() == col.apex_dim()
            && (&from_weighted * &from_plain).is_identity()
            && (&from_plain * &from_weighted).is_identity();

        if !(limit_ok && colimit_ok) {
            failures.push(format!("case {case} ({}): limit {limit_ok}, colimit {colimit_ok}", fam.name));
        }
    }
    let pass = failures.is_empty();
    report(4, pass, &format!("100 diagrams {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_5_set_end_counts_natural_transformations() {
    let limits = SizeLimits::default();
    let mut gen = Generator::new(5);
    let mut failures = Vec::new();
    let mut total = 0;
    for case in 0..50 {
        let fam = gen.family(3, 8);
        let f = gen.set_functor(&fam, Variance::Covariant, 3);
        let g = gen.set_functor(&fam, Variance::Covariant, 3);
        let h = function_bifunctor(&f, &g, &limits).unwrap();
        let end = end_set(&fam.category, &h, &limits).unwrap();
        let nats = enumerate_nat_transformations(&f, &g, &limits).unwrap();
        total += nats.len();
        if end.len() != nats.len() {
            failures.push(format!("case {case} ({}): {} vs {}", fam.name, end.len(), nats.len()));
        }
    }
    let pass = failures.is_empty();
    report(5, pass, &format!("50 pairs, {total} transformations in all {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_6_contraction_preservation() {
    let limits = SizeLimits::default();
    let mut gen = Generator::new(6);
    let mut lambda_failures = 0;
    let mut lambda_total = 0;
    let mut t_failures = Vec::new();
    for case in 0..50 {
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let vertex = 1 + case % 3;
        let beta = scale_to_contractions(&gen.cylinder_under(&f, &g, vertex));
        beta.validate_under(&f, &g).unwrap();
        assert!(beta.components.iter().flatten().all(|b| is_contraction(b).holds()), "inputs are contractions");

        let o = weighted_colimit_orthogonal(&f, &g, &limits).unwrap();
        for (k, cert) in o.lambda_certificates().into_iter().enumerate() {
            lambda_total += 1;
            let (i, x) = copy_of(&o.copy_offsets, k);
            if !(cert.holds() && cert.verify(&o.lambda_ambient(i, x))) {
                lambda_failures += 1;
            }
        }
        let t = o.factor(&f, &g, &beta).unwrap();
        let ambient_t = &t.map * &o.coordinates;
        assert!(t.contraction.verify(&ambient_t), "certificate must re-check");
        if !t.contraction.holds() {
            t_failures.push(format!("case {case} ({})", fam.name));
        }
    }
    let pass = lambda_failures == 0 && t_failures.is_empty();
    report(
        6,
        pass,
        &format!(
            "{lambda_total} universal components, {lambda_failures} not contractions; \
             50 factored maps, {} not contractions {:?}",
            t_failures.len(),
            t_failures
        ),
    );
    assert!(pass);
}

fn copy_of(offsets: &[Vec<usize>], k: usize) -> (usize, usize) {
    let mut seen = 0;
    for (i, row) in offsets.iter().enumerate() {
        if k < seen + row.len() {
            return (i, k - seen);
        }
        seen += row.len();
    }
    unreachable!("copy index in range")
}

#[test]
fn criterion_7_fubini() {
    let mut gen = Generator::new(7);
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for case in 0..20 {
        let (c, m) = (gen.two_object_family(), gen.two_object_family());
        let h = gen.tensor_hom_bifunctor(&c, &m, 2);
        let r = fubini_check(&c.category, &m.category, &h).unwrap();
        dims.push(r.dim_cm);
        if !r.holds() {
            failures.push(format!("case {case} ({} x {}): {} vs {}", c.name, m.name, r.dim_cm, r.dim_mc));
        }
    }
    let pass = failures.is_empty();
    report(7, pass, &format!("20 bifunctors, end dims {dims:?} {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_8_transitivity_of_induction() {
    let limits = SizeLimits::default();
    let trivial = Arc::new(FiniteGroup::trivial());
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let c4 = Arc::new(FiniteGroup::cyclic(4));
    let lower = SubgroupInclusion::new(trivial.clone(), c2, vec![0]).unwrap();
    let upper = SubgroupInclusion::new(lower.sup().clone(), c4, vec![0, 2]).unwrap();
    let direct = lower.then(&upper).unwrap();
    let v = GroupRep::trivial(&trivial);

    let two_step = induce(&induce(&v, &lower, &limits).unwrap(), &upper, &limits).unwrap();
    let one_step = induce(&v, &direct, &limits).unwrap();
    let same_character = two_step.character() == one_step.character();
    let iso = find_isomorphism(two_step.functor(), one_step.functor());
    let verified = match &iso {
        Isomorphism::Found(t) => t.is_natural(two_step.functor(), one_step.functor()) && t.is_isomorphism(),
        _ => false,
    };
    let pass = same_character && verified;
    report(
        8,
        pass,
        &format!(
            "dims ({}, {}), characters equal {same_character}, intertwiner {}",
            two_step.dim(),
            one_step.dim(),
            if verified { "found" } else { "missing" }
        ),
    );
    assert!(pass);
}
