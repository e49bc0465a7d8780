//! Induction along subgroup inclusions as a left Kan extension: the
//! dimension law, the character formula, Frobenius reciprocity and
//! transitivity.
//!
//!     cargo run --example induced_representations

use std::sync::Arc;

use kanext::induce::{
    find_isomorphism, frobenius_dims, induce, induced_character_oracle, s3_catalog, FiniteGroup, GroupRep,
    Isomorphism, SubgroupInclusion,
};
use kanext::qlin::format_rational;
use kanext::SizeLimits;

fn main() -> kanext::Result<()> {
    let limits = SizeLimits::default();
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let transposition = s3.element_by_label("(12)").expect("S3 has (12)");
    let c2 = SubgroupInclusion::from_elements(&s3, &[s3.unit(), transposition])?;

    let trivial = GroupRep::trivial(c2.sub());
    let ind = induce(&trivial, &c2, &limits)?;
    let chars = |c: &[_]| c.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    println!("Ind trivial: dim {}, character [{}]", ind.dim(), chars(ind.character()));
    println!("character formula:       [{}]", chars(&induced_character_oracle(&trivial, &c2)));

    for (name, w) in s3_catalog(&s3) {
        let d = frobenius_dims(&trivial, &w, &c2, &limits)?;
        println!("Hom(Ind 1, {name}) = {}, Hom(1, Res {name}) = {}", d.induced, d.restricted);
    }

    // 1 < C2 < C4 in two steps and in one
    let one = Arc::new(FiniteGroup::trivial());
    let c4 = Arc::new(FiniteGroup::cyclic(4));
    let lower = SubgroupInclusion::new(one.clone(), Arc::new(FiniteGroup::cyclic(2)), vec![0])?;
    let upper = SubgroupInclusion::new(lower.sup().clone(), c4, vec![0, 2])?;
    let v = GroupRep::trivial(&one);
    let two_step = induce(&induce(&v, &lower, &limits)?, &upper, &limits)?;
    let one_step = induce(&v, &lower.then(&upper)?, &limits)?;
    match find_isomorphism(two_step.functor(), one_step.functor()) {
        Isomorphism::Found(_) => println!("Ind Ind 1 = Ind 1 on C4, intertwiner found"),
        other => println!("no intertwiner: {other:?}"),
    }
    Ok(())
}
