//! Building finite categories, checking the axioms, and the derived
//! categories the rest of the crate is made of.
//!
//!     cargo run --example finite_categories

use std::sync::Arc;

use kanext::fincat::{comma_over, validate_category, FinCat, Functor};
use kanext::SizeLimits;

fn main() -> kanext::Result<()> {
    let c2 = FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]])?;
    println!("C2: {} morphisms, violations {:?}", c2.num_morphisms(), validate_category(&c2));

    // s . s = s is still a monoid, so the one-object category is fine
    // while the group constructor refuses it
    let monoid = FinCat::one_object(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 1]])?;
    println!("idempotent monoid violations: {}", validate_category(&monoid).len());
    match FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 1]]) {
        Ok(_) => println!("unexpectedly a group"),
        Err(e) => println!("as a group: {e}"),
    }

    let chain = Arc::new(FinCat::preorder(3, &[(0, 1), (1, 2)]));
    println!("chain: {} morphisms", chain.num_morphisms());
    for m in chain.morphisms() {
        println!("  {} : {} -> {}", m.label, chain.object_label(m.dom), chain.object_label(m.cod));
    }

    let square = chain.product(&chain.opposite());
    println!("chain x chain^op: {} objects, {} morphisms", square.num_objects(), square.num_morphisms());

    // K picks out the ends of the chain; (K | c) lists the arrows K m -> c
    let ends = Arc::new(FinCat::preorder(2, &[(0, 1)]));
    let objects = [0, 2];
    let images = ends.morphisms().iter().map(|m| chain.hom(objects[m.dom], objects[m.cod])[0]).collect();
    let k = Functor::new(ends.clone(), chain.clone(), objects.to_vec(), images)?;
    assert!(k.validate().is_empty());
    for c in 0..chain.num_objects() {
        let comma = comma_over(&k, c, &SizeLimits::default())?;
        println!("(K | {}) has {} objects", chain.object_label(c), comma.cat.num_objects());
    }
    Ok(())
}
