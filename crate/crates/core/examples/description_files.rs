//! Reading the text format, printing its canonical form, and running a
//! command the way the `kanext` binary does.
//!
//!     cargo run --example description_files

use kanext::cli::{run_with, Workspace};

const TEXT: &str = "\
# the arrow, weighted by a point
CATEGORY arrow
OBJECTS a b
MORPHISMS
  ida : a -> a
  idb : b -> b
  f : a -> b
IDENTITIES
  a : ida
  b : idb
END

SETFUNCTOR point
ON arrow
VARIANCE contravariant
SETS
  a : x
  b : x
MAPS
  f : x
END

VECTFUNCTOR G
ON arrow
VARIANCE covariant
DIMS
  a : 1
  b : 1
MATRIX f
  1
END
";

fn main() {
    let mut ws = Workspace::new();
    ws.parse_str("inline", TEXT).expect("example text parses");
    print!("{}", ws.serialize());

    let bad = TEXT.replace("MATRIX f\n  1", "MATRIX f\n  1 2");
    if let Err(e) = Workspace::new().parse_str("inline", &bad) {
        println!("\n{e}");
    }

    let path = std::env::temp_dir().join("kanext-arrow.kan");
    std::fs::write(&path, TEXT).expect("temp dir is writable");
    let mut out = Vec::new();
    let code = run_with(
        ["kanext", "weighted-colimit", path.to_str().unwrap(), "--method", "orthogonal", "--bases"],
        &mut out,
        &mut std::io::stderr(),
    );
    println!("\n{}exit {code}", String::from_utf8_lossy(&out));
}
