use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

fn listing(dir: &Path, ext: &str) -> String {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == ext))
                .collect()
        })
        .unwrap_or_default();
    files.sort();
    let mut s = String::from("&[\n");
    for f in files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let abs = fs::canonicalize(&f).unwrap();
        let _ = writeln!(s, "    ({name:?}, include_str!({:?})),", abs.display().to_string());
    }
    s.push(']');
    s
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    println!("cargo:rerun-if-changed={}", root.display());
    for sub in ["algebras", "certs", "expected"] {
        println!("cargo:rerun-if-changed={}", root.join(sub).display());
    }
    let mut out = String::new();
    let _ = writeln!(out, "pub static ALGEBRAS: &[(&str, &str)] = {};", listing(&root.join("algebras"), "lie"));
    let _ = writeln!(out, "pub static CERTS: &[(&str, &str)] = {};", listing(&root.join("certs"), "cert"));
    let _ = writeln!(out, "pub static EXPECTED: &[(&str, &str)] = {};", listing(&root.join("expected"), "tsv"));
    let sets = fs::canonicalize(root.join("sets.txt")).unwrap();
    let _ = writeln!(out, "pub static SETS: &str = include_str!({:?});", sets.display().to_string());
    let dest = Path::new(&env::var("OUT_DIR").unwrap()).join("embedded.rs");
    fs::write(dest, out).unwrap();
}
