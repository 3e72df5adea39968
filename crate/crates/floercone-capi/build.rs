fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.include_guard = Some("FLOERCONE_H".to_string());
    config.cpp_compat = true;
    config.documentation = true;
    config.enumeration.prefix_with_name = true;
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/floercone.h"));
        }
        Err(e) => {
            // Header generation failing must not break the library build
            // (e.g. during `cargo check` of a half-edited file).
            println!("cargo:warning=cbindgen failed: {e}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
