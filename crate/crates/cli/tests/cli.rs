use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const COMMANDS: [&str; 9] = ["check", "hodge", "induce", "verify", "kuranishi", "solve", "locus", "degenerate", "report"];

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn shipped() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    files.sort();
    assert!(files.len() >= 5, "fixtures directory looks incomplete");
    files
}

fn linfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linfty")).args(args).output().unwrap()
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    for file in shipped() {
        let path = file.to_str().unwrap();
        for command in COMMANDS {
            let args = [command, path, "--format", "machine", "--order", "4"];
            let first = linfty(&args);
            let second = linfty(&args);
            assert_eq!(first.status.code(), Some(0), "{command} {path}: {}", String::from_utf8_lossy(&first.stdout));
            assert_eq!(first.stdout, second.stdout, "{command} {path}");
            assert!(serde_json::from_slice::<serde_json::Value>(&first.stdout).is_ok());
        }
    }
}

#[test]
fn heis_report_matches_golden() {
    let dir = fixtures_dir();
    let out = linfty(&["report", dir.join("heis.alg").to_str().unwrap(), "--mode", "0", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = fs::read(dir.join("golden/heis.report.mode0.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), String::from_utf8(golden).unwrap());
}

#[test]
fn shipped_documents_round_trip() {
    for file in shipped() {
        let text = fs::read_to_string(&file).unwrap();
        let doc = linfty::cli::AlgebraDocument::parse(&text).unwrap();
        let again = linfty::cli::AlgebraDocument::parse(&doc.serialize()).unwrap();
        assert_eq!(doc, again, "{}", file.display());
        assert_eq!(doc.serialize(), again.serialize());
    }
}

#[test]
fn generated_fixtures_match_shipped_ones() {
    for (family, seed) in [("end", 0), ("end", 2), ("nil", 1)] {
        let out = linfty(&["fixtures", "--family", family, "--seed", &seed.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        let shipped = fs::read_to_string(fixtures_dir().join(format!("{family}-{seed}.alg"))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), shipped);
    }
}

#[test]
fn exit_codes_distinguish_failures_from_errors() {
    let dir = std::env::temp_dir().join(format!("linfty-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();

    // d c = e but d a = d b = 0, so d is not a derivation at (a, b)
    let broken = dir.join("broken.alg");
    fs::write(&broken, "[basis]\na 1\nb 1\nc 2\ne 3\n\n[d]\nc e\n\n[bracket]\na b = c\n").unwrap();
    let out = linfty(&["check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let malformed = dir.join("malformed.alg");
    fs::write(&malformed, "[basis]\nx 1\ny 1\nz 2\n\n[bracket]\nx w = z\n").unwrap();
    let out = linfty(&["check", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 7"), "{stderr}");

    let out = linfty(&["check", dir.join("missing.alg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(&dir).ok();
}
