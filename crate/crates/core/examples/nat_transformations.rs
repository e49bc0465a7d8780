//! Set-valued functors, brute-force enumeration of natural
//! transformations, and the same count read off as an end.
//!
//!     cargo run --example nat_transformations

use std::sync::Arc;

use kanext::fincat::{FinCat, Variance};
use kanext::kan::{end_set, function_bifunctor};
use kanext::setfun::{enumerate_nat_transformations, hom_functor, SetFunctor};
use kanext::SizeLimits;

fn main() -> kanext::Result<()> {
    let limits = SizeLimits::default();
    let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
    let id = |o: usize| arrow.identity(o);

    // F: {p, q} -> {r}, G: {x} -> {y, z} picking y
    let f = SetFunctor::new(
        arrow.clone(),
        Variance::Covariant,
        vec![vec!["p".into(), "q".into()], vec!["r".into()]],
        (0..arrow.num_morphisms())
            .map(|m| if arrow.is_identity(m) { if m == id(0) { vec![0, 1] } else { vec![0] } } else { vec![0, 0] })
            .collect(),
    )?;
    let g = SetFunctor::new(
        arrow.clone(),
        Variance::Covariant,
        vec![vec!["x".into()], vec!["y".into(), "z".into()]],
        (0..arrow.num_morphisms())
            .map(|m| if m == id(1) { vec![0, 1] } else { vec![0] })
            .collect(),
    )?;
    let nats = enumerate_nat_transformations(&f, &g, &limits)?;
    println!("Nat(F, G) has {} elements", nats.len());
    for t in &nats {
        println!("  {:?}", t.components);
    }
    let end = end_set(&arrow, &function_bifunctor(&f, &g, &limits)?, &limits)?;
    println!("end of G^F has {} elements", end.len());

    // Yoneda: Nat(C(a, -), G) = G(a)
    let rep = hom_functor(&arrow, 0, Variance::Covariant)?;
    let yoneda = enumerate_nat_transformations(&rep, &g, &limits)?;
    println!("Nat(C(a, -), G) = {} = |G(a)| = {}", yoneda.len(), g.set(0).len());
    Ok(())
}
