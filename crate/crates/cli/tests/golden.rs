//! Command outputs on the checked-in specs, compared with stored goldens.
//! `QUIVREL_BLESS=1` rewrites the goldens instead of comparing.

use std::fs;
use std::path::{Path, PathBuf};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cases() -> Vec<(String, Vec<String>)> {
    let manifest = fs::read_to_string(crate_dir().join("tests/golden/manifest.txt")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name | args");
            let args = args
                .split_whitespace()
                .map(|a| {
                    if a.starts_with("specs/") {
                        crate_dir().join(a).display().to_string()
                    } else {
                        a.to_string()
                    }
                })
                .collect();
            (name.trim().to_string(), args)
        })
        .collect()
}

fn render(args: &[String]) -> String {
    let out = quivrel_cli::run(std::iter::once("quivrel".to_string()).chain(args.iter().cloned()));
    format!("exit={}\n{}", out.code, out.stdout)
}

#[test]
fn goldens_match() {
    let bless = std::env::var_os("QUIVREL_BLESS").is_some_and(|v| v == "1");
    let dir = crate_dir().join("tests/golden");
    let mut mismatches = Vec::new();
    for (name, args) in cases() {
        let got = render(&args);
        let path = dir.join(format!("{name}.out"));
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        if got != want {
            mismatches.push(name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn output_is_deterministic() {
    for (_, args) in cases().into_iter().take(12) {
        assert_eq!(render(&args), render(&args));
    }
}

#[test]
fn every_golden_is_listed() {
    let names: Vec<String> = cases().into_iter().map(|(n, _)| n).collect();
    for entry in fs::read_dir(crate_dir().join("tests/golden")).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "out") {
            let stem = p.file_stem().unwrap().to_string_lossy().to_string();
            assert!(names.contains(&stem), "stale golden {}", Path::new(&p).display());
        }
    }
}
