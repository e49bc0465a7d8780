use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use kanext::fincat::{elements_category, validate_category, Variance};
use kanext::kan::{
    compare_weighted_colimits, left_kan, left_kan_via_comma, right_kan, weighted_colimit_orthogonal,
    weighted_colimit_quotient,
};
use kanext::qlin::{format_rational, is_contraction, parse_rational, psd_certificate, rat, RatMatrix, Subspace};
use kanext::random::Generator;
use kanext::setfun::validate_set_functor;
use kanext::vectfun::{hom_space, validate_vect_functor};
use kanext::SizeLimits;

fn matrix_strategy(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = RatMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec((-bound..=bound, 1..=4i64), r * c)
            .prop_map(move |entries| RatMatrix::from_fn(r, c, |i, j| rat(entries[i * c + j].0, entries[i * c + j].1)))
    })
}

fn to_float(m: &RatMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_f64().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_keeps_the_row_space(m in matrix_strategy(4, 5, 3)) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(m.row_space(), r.matrix.row_space());
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn orthogonal_complement_splits_the_ambient(m in matrix_strategy(3, 5, 3)) {
        let s = Subspace::from_row_matrix(&m);
        let perp = s.orthogonal_complement();
        prop_assert_eq!(s.dim() + perp.dim(), s.ambient_dim());
        prop_assert!(s.is_orthogonal_to(&perp));
        prop_assert!((&s.coordinate_map() * &s.inclusion()).is_identity());
        prop_assert_eq!(perp.orthogonal_complement(), s);
    }

    #[test]
    fn psd_certificates_recheck(m in matrix_strategy(4, 4, 3)) {
        let gram = &m.transpose() * &m;
        let cert = psd_certificate(&gram);
        prop_assert!(cert.is_psd());
        prop_assert!(cert.verify(&gram));
    }

    #[test]
    fn rationals_round_trip_through_text(p in -1000i64..1000, q in 1i64..1000) {
        let x = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn generated_instances_are_valid(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let fam = gen.family(3, 8);
        prop_assert!(validate_category(&fam.category).is_empty());
        prop_assert!(validate_vect_functor(&gen.vect_functor(&fam, 3)).is_empty());
        prop_assert!(validate_set_functor(&gen.set_functor(&fam, Variance::Covariant, 3)).is_empty());
        prop_assert!(validate_set_functor(&gen.set_functor(&fam, Variance::Contravariant, 3)).is_empty());
    }

    #[test]
    fn orthogonal_and_quotient_colimits_agree(seed in any::<u64>()) {
        let limits = SizeLimits::default();
        let mut gen = Generator::new(seed);
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let o = weighted_colimit_orthogonal(&f, &g, &limits).unwrap();
        let q = weighted_colimit_quotient(&f, &g, &limits).unwrap();
        prop_assert_eq!(o.apex_dim(), q.apex_dim());
        prop_assert_eq!(o.relations.dim() + o.apex_dim(), o.ambient);
        let cmp = compare_weighted_colimits(&o, &q, &f, &g).unwrap();
        prop_assert!(cmp.is_isomorphism());
        for cert in o.lambda_certificates() {
            prop_assert!(cert.holds());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Kan extensions along the projection `K` from a category of elements,
    /// which is faithful but in general neither full nor injective on
    /// objects.
    #[test]
    fn kan_extensions_are_adjoint_to_restriction(seed in any::<u64>()) {
        let limits = SizeLimits::default();
        let mut gen = Generator::new(seed);
        let fam = gen.family(3, 6);
        let weight = gen.set_functor(&fam, Variance::Covariant, 2);
        let k = elements_category(&weight, &limits).unwrap().projection;
        let t = gen.vect_functor(&fam, 2).reindex(&k).unwrap();
        let s = gen.vect_functor(&fam, 2);
        let sk = s.reindex(&k).unwrap();

        let lan = left_kan(&k, &t, &limits).unwrap();
        prop_assert_eq!(
            hom_space(&lan.extension, &s).unwrap().dim,
            hom_space(&t, &sk).unwrap().dim
        );
        let ran = right_kan(&k, &t, &limits).unwrap();
        prop_assert_eq!(
            hom_space(&s, &ran.extension).unwrap().dim,
            hom_space(&sk, &t).unwrap().dim
        );
        for c in 0..fam.category.num_objects() {
            let comma = left_kan_via_comma(&k, &t, c, &limits).unwrap();
            prop_assert_eq!(comma.apex_dim(), lan.extension.dim(c));
        }
    }
}

/// Exact contraction verdicts against the largest singular value in
/// floating point, skipping matrices whose norm is within rounding of 1.
#[test]
fn contraction_verdict_matches_float_spectral_norm() {
    let mut gen = Generator::new(2024);
    let mut compared = 0;
    for k in 0..200 {
        let (rows, cols) = (1 + k % 3, 1 + (k / 3) % 3);
        let scale = rat(1, 1 + (k as i64 % 7));
        let m = gen.matrix(rows, cols).scale(&scale);
        let sigma = to_float(&m).singular_values().max();
        if (sigma - 1.0).abs() < 1e-9 {
            continue;
        }
        compared += 1;
        let cert = is_contraction(&m);
        assert_eq!(cert.holds(), sigma < 1.0, "matrix {m:?}, sigma {sigma}");
        assert!(cert.verify(&m));
    }
    assert!(compared > 150, "only {compared} matrices compared");
}

/// Matrices with norm exactly one sit on the boundary.
#[test]
fn boundary_norm_one_is_a_contraction() {
    let rotation = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => rat(3, 5),
        (0, 1) => rat(-4, 5),
        _ => rat(4, 5),
    });
    assert!(is_contraction(&rotation).holds());
    assert!(!is_contraction(&rotation.scale(&rat(101, 100))).holds());
}
