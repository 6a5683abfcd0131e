//! Drives the `st` command line in-process on the bundled data files.
//!
//! Run with `cargo run --example cli_roundtrip` from `crates/core`.

use hypercone::cli::run;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let commands: Vec<Vec<String>> = vec![
        vec!["safe-radius".into(), "--theta".into(), "1.5707963".into(), "--eps".into(), "1".into()],
        vec!["length".into(), "--surface".into(), format!("{data}/torus_cone.json"), "--word".into(), format!("{data}/dual_word.json")],
        vec!["validate-bending".into(), "--input".into(), format!("{data}/bending.json"), "--certificate".into(), format!("{data}/certificate_nonfilling.json")],
    ];
    for args in commands {
        let code = run(std::iter::once("st".to_string()).chain(args.iter().cloned()));
        eprintln!("st {} -> exit {code}", args.join(" "));
    }
}
