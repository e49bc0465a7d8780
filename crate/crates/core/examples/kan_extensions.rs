//! Pointwise left and right Kan extensions along a functor that skips an
//! object, compared fiber by fiber with the colimit over the comma
//! category and checked against the adjunction.
//!
//!     cargo run --example kan_extensions

use std::sync::Arc;

use kanext::fincat::{FinCat, Functor, Variance};
use kanext::kan::{left_kan, left_kan_via_comma, right_kan};
use kanext::qlin::RatMatrix;
use kanext::vectfun::{hom_space, VectFunctor};
use kanext::SizeLimits;

fn main() -> kanext::Result<()> {
    let limits = SizeLimits::default();
    let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
    let chain = Arc::new(FinCat::preorder(3, &[(0, 1), (1, 2)]));
    let objects = [0, 2];
    let images = arrow.morphisms().iter().map(|m| chain.hom(objects[m.dom], objects[m.cod])[0]).collect();
    let k = Functor::new(arrow.clone(), chain.clone(), objects.to_vec(), images)?;

    // T: Q -> Q^2, x |-> (x, -2x)
    let f = arrow.hom(0, 1)[0];
    let t = VectFunctor::from_fn(arrow.clone(), Variance::Covariant, vec![1, 2], |m| {
        if m == f {
            RatMatrix::from_i64(2, 1, &[1, -2])
        } else {
            RatMatrix::identity([1, 2][arrow.dom(m)])
        }
    })?;

    let lan = left_kan(&k, &t, &limits)?;
    let ran = right_kan(&k, &t, &limits)?;
    for c in 0..chain.num_objects() {
        let comma = left_kan_via_comma(&k, &t, c, &limits)?;
        println!(
            "c = {}: Lan {} (comma colimit {}), Ran {}",
            chain.object_label(c),
            lan.extension.dim(c),
            comma.apex_dim(),
            ran.extension.dim(c)
        );
    }
    for p in &lan.provenance {
        println!("  {p}");
    }
    println!("unit is natural: {}", lan.mediating.is_natural(&t, &lan.extension.reindex(&k)?));

    // Nat(Lan T, S) = Nat(T, S K) for S constant Q
    let s = VectFunctor::constant(&chain, Variance::Covariant, 1);
    let lhs = hom_space(&lan.extension, &s)?.dim;
    let rhs = hom_space(&t, &s.reindex(&k)?)?.dim;
    println!("dim Nat(Lan T, S) = {lhs}, dim Nat(T, SK) = {rhs}");
    Ok(())
}
