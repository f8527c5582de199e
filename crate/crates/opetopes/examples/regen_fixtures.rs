//! Regenerate the canonical fixture files from the built-in sample values.
//!
//! ```text
//! cargo run -p opetopes --example regen_fixtures
//! ```

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let complex = opetopes::samples::opetope5_complex();
    std::fs::write(
        dir.join("table1.odc"),
        opetopes::io::serialize_complex("table1", &complex),
    )
    .unwrap();
    let sequence = opetopes::samples::opetope5_sequence();
    std::fs::write(
        dir.join("figure1.ops"),
        opetopes::io::serialize_sequence("figure1", &sequence),
    )
    .unwrap();
    println!("wrote {}", dir.display());
}
