use std::thread;

use crate::fincat::Variance;
use crate::induce::{frobenius_dims, standard_cases};
use crate::kan::{
    compare_weighted_colimits, end_set, fubini_check, function_bifunctor, weighted_colimit_orthogonal,
    weighted_colimit_quotient, Cylinder,
};
use crate::limits::SizeLimits;
use crate::random::{scale_to_contractions, Generator};
use crate::setfun::{enumerate_nat_transformations, SetFunctor};
use crate::vectfun;

use super::report::Report;
use super::{CliError, Options};

/// Outcome of one randomized check.
struct Outcome {
    name: &'static str,
    cases: usize,
    failed: Vec<String>,
}

type Check = fn(&mut Generator, usize, &SizeLimits) -> crate::Result<Outcome>;

const CHECKS: &[(&str, Check)] = &[
    ("orthogonal-vs-quotient", orthogonal_vs_quotient),
    ("unit-weight", unit_weight),
    ("set-end", set_end),
    ("lambda-contraction", lambda_contraction),
    ("factored-contraction", factored_contraction),
    ("fubini", fubini),
    ("frobenius", frobenius),
];

/// Runs every check on its own thread with its own generator, seeded from
/// `seed` and the check's position, and reports them in a fixed order.
pub(super) fn run(seed: u64, cases: usize, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let limits = opts.limits();
    let outcomes: Vec<crate::Result<Outcome>> = thread::scope(|scope| {
        let handles: Vec<_> = CHECKS
            .iter()
            .enumerate()
            .map(|(k, (_, check))| {
                let limits = &limits;
                scope.spawn(move || {
                    let mut gen = Generator::new(seed.wrapping_add(k as u64));
                    check(&mut gen, cases, limits)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite check panicked")).collect()
    });
    report.field("seed", seed);
    report.field("cases", cases);
    for outcome in outcomes {
        let o = outcome?;
        report.field(format!("check.{}.cases", o.name), o.cases);
        report.field(format!("check.{}.failures", o.name), o.failed.len());
        if !o.failed.is_empty() {
            report.field(format!("check.{}.failed", o.name), o.failed.join(" "));
        }
        report.verdict(o.name, o.failed.is_empty());
    }
    Ok(())
}

fn orthogonal_vs_quotient(gen: &mut Generator, cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let o = weighted_colimit_orthogonal(&f, &g, limits)?;
        let q = weighted_colimit_quotient(&f, &g, limits)?;
        let cmp = compare_weighted_colimits(&o, &q, &f, &g)?;
        if o.apex_dim() != q.apex_dim() || !cmp.is_isomorphism() || !cmp.commutes(&o.universal, &q.universal) {
            failed.push(format!("{case}:{}", fam.name));
        }
    }
    Ok(Outcome {
        name: "orthogonal-vs-quotient",
        cases,
        failed,
    })
}

fn unit_weight(gen: &mut Generator, cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let fam = gen.family(3, 6);
        let g = gen.vect_functor(&fam, 3);
        let copoint = SetFunctor::constant_point(g.source(), Variance::Contravariant);
        let wc = weighted_colimit_orthogonal(&copoint, &g, limits)?;
        let col = vectfun::colimit(&g)?;
        let as_cylinder = Cylinder {
            vertex: col.apex_dim(),
            components: col.injections.iter().map(|l| vec![l.clone()]).collect(),
            contraction_mode: false,
        };
        let map = wc.factor(&copoint, &g, &as_cylinder)?.map;
        if wc.apex_dim() != col.apex_dim() || !map.is_invertible() {
            failed.push(format!("{case}:{}", fam.name));
        }
    }
    Ok(Outcome {
        name: "unit-weight",
        cases,
        failed,
    })
}

fn set_end(gen: &mut Generator, cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let fam = gen.family(3, 8);
        let f = gen.set_functor(&fam, Variance::Covariant, 3);
        let g = gen.set_functor(&fam, Variance::Covariant, 3);
        let h = function_bifunctor(&f, &g, limits)?;
        let end = end_set(&fam.category, &h, limits)?;
        let nats = enumerate_nat_transformations(&f, &g, limits)?;
        if end.len() != nats.len() {
            failed.push(format!("{case}:{}", fam.name));
        }
    }
    Ok(Outcome {
        name: "set-end",
        cases,
        failed,
    })
}

fn lambda_contraction(gen: &mut Generator, cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let o = weighted_colimit_orthogonal(&f, &g, limits)?;
        if !o.lambda_certificates().iter().all(|c| c.holds()) {
            failed.push(format!("{case}:{}", fam.name));
        }
    }
    Ok(Outcome {
        name: "lambda-contraction",
        cases,
        failed,
    })
}

/// Factors a cylinder of contractions and asks whether the mediating map
/// is again a contraction. This does not hold in general.
fn factored_contraction(gen: &mut Generator, cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let fam = gen.family(3, 6);
        let f = gen.set_functor(&fam, Variance::Contravariant, 3);
        let g = gen.vect_functor(&fam, 3);
        let beta = scale_to_contractions(&gen.cylinder_under(&f, &g, 1 + case % 3));
        let o = weighted_colimit_orthogonal(&f, &g, limits)?;
        if !o.factor(&f, &g, &beta)?.contraction.holds() {
            failed.push(format!("{case}:{}", fam.name));
        }
    }
    Ok(Outcome {
        name: "factored-contraction",
        cases,
        failed,
    })
}

fn fubini(gen: &mut Generator, cases: usize, _limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    for case in 0..cases {
        let (c, m) = (gen.two_object_family(), gen.two_object_family());
        let h = gen.tensor_hom_bifunctor(&c, &m, 2);
        if !fubini_check(&c.category, &m.category, &h)?.holds() {
            failed.push(format!("{case}:{}x{}", c.name, m.name));
        }
    }
    Ok(Outcome {
        name: "fubini",
        cases,
        failed,
    })
}

/// Fixed catalog; the seed does not enter.
fn frobenius(_gen: &mut Generator, _cases: usize, limits: &SizeLimits) -> crate::Result<Outcome> {
    let mut failed = Vec::new();
    let mut cases = 0;
    for case in standard_cases() {
        for (vn, v) in &case.sub_reps {
            for (wn, w) in &case.sup_reps {
                cases += 1;
                if !frobenius_dims(v, w, &case.inclusion, limits)?.agree() {
                    failed.push(format!("{}:{vn}/{wn}", case.name));
                }
            }
        }
    }
    Ok(Outcome {
        name: "frobenius",
        cases,
        failed,
    })
}
