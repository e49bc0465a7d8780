//! Weighted colimits computed twice: as the orthogonal complement of the
//! relation span, and as an ordinary colimit over the category of
//! elements. Also shows a factored map that fails to be a contraction.
//!
//!     cargo run --example weighted_colimits

use std::sync::Arc;

use kanext::fincat::{FinCat, Variance};
use kanext::kan::{compare_weighted_colimits, weighted_colimit_orthogonal, weighted_colimit_quotient, Cylinder};
use kanext::qlin::{rat, RatMatrix};
use kanext::setfun::SetFunctor;
use kanext::vectfun::VectFunctor;
use kanext::SizeLimits;

fn main() -> kanext::Result<()> {
    let limits = SizeLimits::default();
    let arrow = Arc::new(FinCat::preorder(2, &[(0, 1)]));
    let point = SetFunctor::constant_point(&arrow, Variance::Contravariant);
    let g = VectFunctor::constant(&arrow, Variance::Covariant, 1);

    let o = weighted_colimit_orthogonal(&point, &g, &limits)?;
    println!("V = Q^{}, dim R = {}, dim R^perp = {}", o.ambient, o.relations.dim(), o.apex_dim());
    println!("R^perp basis {:?}", o.apex.basis());
    for cert in o.lambda_certificates() {
        println!("lambda is a contraction: {}", cert.holds());
    }

    let q = weighted_colimit_quotient(&point, &g, &limits)?;
    let cmp = compare_weighted_colimits(&o, &q, &point, &g)?;
    println!("quotient apex dim {}, comparison invertible {}", q.apex_dim(), cmp.is_isomorphism());

    // beta = (1, 1) is a cylinder of contractions, yet the induced map
    // R^perp -> Q has norm sqrt 2 measured on V
    let beta = Cylinder {
        vertex: 1,
        components: vec![vec![RatMatrix::identity(1)], vec![RatMatrix::identity(1)]],
        contraction_mode: true,
    };
    let t = o.factor(&point, &g, &beta)?;
    println!("T = {:?}, contraction: {}", t.map, t.contraction.holds());
    let half = beta.components.iter().map(|c| vec![c[0].scale(&rat(1, 2))]).collect();
    let smaller = Cylinder { components: half, ..beta };
    println!("scaled by 1/2: contraction {}", o.factor(&point, &g, &smaller)?.contraction.holds());
    Ok(())
}
