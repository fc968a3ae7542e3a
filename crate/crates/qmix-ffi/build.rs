//! Regenerates the committed C header from the extern "C" surface.

use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir =
        PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR"));
    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml is well-formed");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("the extern surface is representable in C");

    let mut generated = Vec::new();
    bindings.write(&mut generated);

    // rewrite the committed header only when its content actually changes,
    // so untouched builds stay clean
    let header_path = crate_dir.join("include").join("qmix.h");
    if fs::read(&header_path).ok().as_deref() != Some(generated.as_slice()) {
        fs::create_dir_all(header_path.parent().expect("include directory"))
            .expect("include directory is creatable");
        fs::write(&header_path, &generated).expect("header is writable");
    }
}
