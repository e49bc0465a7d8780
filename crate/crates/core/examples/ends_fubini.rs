//! Ends and coends of bifunctors on C^op x C, and the Fubini comparison
//! for the bifunctor whose iterated ends both compute Nat(T, SK).
//!
//!     cargo run --example ends_fubini

use std::sync::Arc;

use kanext::fincat::{FinCat, Functor, Variance};
use kanext::kan::{coend_vect, end_vect, fubini_check, hom_bifunctor, kan_adjunction_bifunctor};
use kanext::qlin::RatMatrix;
use kanext::vectfun::{hom_space, VectFunctor};

fn main() -> kanext::Result<()> {
    let c3 = Arc::new(FinCat::group(
        vec!["e".into(), "r".into(), "r2".into()],
        &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    )?);
    let regular = VectFunctor::new(
        c3.clone(),
        Variance::Covariant,
        vec![3],
        vec![
            RatMatrix::identity(3),
            RatMatrix::from_i64(3, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]),
            RatMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]),
        ],
    )?;
    let h = hom_bifunctor(&regular, &regular)?;
    let end = end_vect(&c3, &h)?;
    let coend = coend_vect(&c3, &h)?;
    println!("end of Hom(reg, reg) = {} = dim Nat {}", end.dim(), hom_space(&regular, &regular)?.dim);
    println!("coend dim {}", coend.dim());

    // K: 1 -> C3, T = Q, S = regular
    let one = Arc::new(FinCat::discrete(1));
    let k = Functor::new(one.clone(), c3.clone(), vec![0], vec![0])?;
    let t = VectFunctor::constant(&one, Variance::Covariant, 1);
    let big = kan_adjunction_bifunctor(&k, &t, &regular)?;
    let report = fubini_check(&c3, &one, &big)?;
    println!(
        "iterated ends {} and {}, same image {}, comparison invertible {}",
        report.dim_cm,
        report.dim_mc,
        report.same_image,
        report.holds()
    );
    Ok(())
}
