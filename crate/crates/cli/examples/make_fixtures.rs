//! Regenerates the files under `data/`.

#[path = "../tests/common/fixtures.rs"]
mod fixtures;

fn main() -> std::io::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, bytes) in fixtures::all() {
        std::fs::write(dir.join(name), bytes)?;
        println!("wrote data/{name}");
    }
    Ok(())
}
