//! Exact rational matrices: echelon forms, subspaces, orthogonal
//! complements and certified contraction bounds.
//!
//!     cargo run --example exact_linear_algebra

use kanext::qlin::{format_rational, is_contraction, rat, ContractionCertificate, RatMatrix, Subspace};

fn main() {
    let m = RatMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 7]);
    let r = m.rref();
    println!("rank {} pivots {:?}", r.rank, r.pivots);
    println!("kernel dim {}", m.kernel().dim());

    let relations = Subspace::span(2, vec![vec![rat(1, 1), rat(-1, 1)]]);
    let apex = relations.orthogonal_complement();
    println!("R = span(1, -1), R^perp basis {:?}", apex.basis().row(0).iter().map(format_rational).collect::<Vec<_>>());
    println!("projection onto R^perp: {:?}", apex.orthogonal_projection());

    // a rotation by a Pythagorean angle has norm exactly one
    let rotation = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => rat(3, 5),
        (0, 1) => rat(-4, 5),
        _ => rat(4, 5),
    });
    for t in [rotation.clone(), rotation.scale(&rat(11, 10)), RatMatrix::from_i64(1, 2, &[1, 1])] {
        match is_contraction(&t) {
            ContractionCertificate::Contraction { diagonal, .. } => {
                let d: Vec<String> = diagonal.iter().map(format_rational).collect();
                println!("contraction, I - T^T T ~ diag {d:?}");
            }
            ContractionCertificate::Expanding { witness } => {
                let w: Vec<String> = witness.iter().map(format_rational).collect();
                println!("not a contraction, |Tv| > |v| at v = {w:?}");
            }
        }
    }
}
