//! Limits, colimits and natural-transformation spaces of diagrams of
//! rational vector spaces.
//!
//!     cargo run --example limits_colimits

use std::sync::Arc;

use kanext::fincat::{FinCat, Variance};
use kanext::qlin::RatMatrix;
use kanext::vectfun::{colimit, hom_space, limit, VectFunctor};

fn main() -> kanext::Result<()> {
    // cospan Q^2 -> Q <- Q, a pullback
    let cospan = Arc::new(FinCat::preorder(3, &[(0, 2), (1, 2)]));
    let f = RatMatrix::from_i64(1, 2, &[1, 1]);
    let g = RatMatrix::from_i64(1, 1, &[2]);
    let diagram = VectFunctor::from_fn(cospan.clone(), Variance::Covariant, vec![2, 1, 1], |m| {
        match (cospan.dom(m), cospan.cod(m)) {
            (0, 2) => f.clone(),
            (1, 2) => g.clone(),
            (a, _) => RatMatrix::identity([2, 1, 1][a]),
        }
    })?;
    let lim = limit(&diagram)?;
    println!("pullback: ambient {}, dim {}", lim.ambient_dim(), lim.apex_dim());
    lim.cone().validate_cone(&diagram)?;

    let col = colimit(&diagram)?;
    println!("colimit of the cospan: dim {} (the terminal fiber)", col.apex_dim());

    // C2 acting on Q^2 by swapping, and the sign rep
    let c2 = Arc::new(FinCat::group(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]])?);
    let swap = VectFunctor::new(c2.clone(), Variance::Covariant, vec![2], vec![RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[0, 1, 1, 0])])?;
    let sign = VectFunctor::new(c2.clone(), Variance::Covariant, vec![1], vec![RatMatrix::identity(1), RatMatrix::from_i64(1, 1, &[-1])])?;
    println!("Hom(swap, sign) = {}", hom_space(&swap, &sign)?.dim);
    println!("invariants (limit) {}, coinvariants (colimit) {}", limit(&swap)?.apex_dim(), colimit(&swap)?.apex_dim());
    Ok(())
}
