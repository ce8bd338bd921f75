//! Regenerates the shipped golden JSON assets from the built-in tables.
//!
//! Run from the repository root:
//!   cargo run -p inh-channel --example regen_goldens

use std::path::Path;

use inh_channel::penetration::MaterialLossTable;
use inh_channel::registry::ParamRegistry;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets");
    std::fs::create_dir_all(&dir).expect("assets dir");
    std::fs::write(
        dir.join("registry.json"),
        ParamRegistry::builtin().to_json_pretty(),
    )
    .expect("write registry.json");
    std::fs::write(
        dir.join("penetration.json"),
        MaterialLossTable::builtin().to_json_pretty(),
    )
    .expect("write penetration.json");
    println!("wrote {}", dir.display());
}
