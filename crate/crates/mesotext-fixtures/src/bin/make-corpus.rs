//! Writes a synthetic corpus as plain .txt files, one book per file, for
//! trying the pipeline without hunting down real texts.
//!
//! Usage: make-corpus DIR [COUNT] [SEED]

use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::exit;

fn main() {
    let mut args = env::args().skip(1);
    let dir = match args.next() {
        Some(d) => PathBuf::from(d),
        None => {
            eprintln!("usage: make-corpus DIR [COUNT] [SEED]");
            exit(2);
        }
    };
    let count: usize = args.next().and_then(|v| v.parse().ok()).unwrap_or(6);
    let seed: u64 = args.next().and_then(|v| v.parse().ok()).unwrap_or(1);

    if let Err(e) = fs::create_dir_all(&dir) {
        eprintln!("cannot create {}: {e}", dir.display());
        exit(1);
    }
    for (id, text) in mesotext_fixtures::desk_corpus(count, seed) {
        let path = dir.join(format!("{id}.txt"));
        if let Err(e) = fs::write(&path, text) {
            eprintln!("cannot write {}: {e}", path.display());
            exit(1);
        }
        println!("{}", path.display());
    }
}
