#![allow(dead_code)]

use std::path::PathBuf;

use fixlocus_cli::app::run;
use fixlocus_cli::subject::{subjects, Subject};

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line in-process; `args` excludes the program name.
pub fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fixlocus").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

/// Writes `text` to a per-process scratch file and returns its path.
pub fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fixlocus-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

pub fn corpus_subject(name: &str) -> Subject {
    let entry = fixlocus_cli::corpus::get(name).unwrap_or_else(|| panic!("no corpus entry {name}"));
    let doc = fixlocus_cli::dsl::parse_document(entry.text).unwrap();
    subjects(&doc).unwrap().pop().unwrap()
}
