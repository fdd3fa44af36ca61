//! Runs the `verify` command over the bundled corpus, writing certificates to
//! a temporary directory.
//!
//!     cargo run --example verify_corpus [FILE ...]

use std::path::PathBuf;

fn main() {
    let mut files: Vec<String> = std::env::args().skip(1).collect();
    if files.is_empty() {
        let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
        files = ["classical.fib", "mutations.fib"]
            .iter()
            .map(|f| root.join(f).display().to_string())
            .collect();
    }
    let out_dir = std::env::temp_dir().join("horadam-certificates");
    let mut args = vec![
        "horadam".to_string(),
        "verify".to_string(),
        "--cert-out".to_string(),
        out_dir.display().to_string(),
    ];
    args.extend(files);
    let code = horadam::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("certificates in {}; exit code {code}", out_dir.display());
}
