use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("ggt.h");
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("GGT_H".to_string()),
        cpp_compat: true,
        documentation: true,
        ..Default::default()
    };
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(err) => {
            // Header generation is best-effort during plain builds (e.g.
            // when the parser trips on an in-progress tree); fail loudly
            // but do not block the Rust build.
            println!("cargo:warning=cbindgen failed: {err}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
