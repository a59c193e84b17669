//! Browser front end: validate a document, run a pipeline command on it,
//! or generate a fixture document. The plain functions are what the page
//! calls through the wasm exports below.

use linfty::cli::{fixture_document, run_pipeline, AlgebraDocument, Command, DocumentOptions, FixtureFamily, OutputFormat, RunOptions};
use linfty::mc::FrameMode;
use serde_json::json;
use wasm_bindgen::prelude::*;

const HEIS: &str = include_str!("../../../fixtures/heis.alg");
const HEIS_EXACT: &str = include_str!("../../../fixtures/heis_exact.alg");

/// Larger settings freeze the page for too long.
const MAX_ARITY: usize = 6;
const MAX_ORDER: usize = 6;

/// `{"ok": true, "canonical": ...}` or `{"ok": false, "errors": [{line, message}]}`.
pub fn validate_document(text: &str) -> String {
    let value = match AlgebraDocument::parse(text) {
        Ok(doc) => json!({
            "ok": true,
            "canonical": doc.serialize(),
            "dimension": doc.basis.len(),
        }),
        Err(errors) => json!({
            "ok": false,
            "errors": errors.0.iter().map(|e| json!({"line": e.line, "message": e.message})).collect::<Vec<_>>(),
        }),
    };
    value.to_string()
}

pub fn run_command(text: &str, command: &str, max_arity: usize, order: usize, mode: &str, machine: bool) -> Result<String, String> {
    let doc = AlgebraDocument::parse(text).map_err(|e| e.to_string())?;
    let command = Command::parse(command).ok_or_else(|| format!("unknown command `{command}`"))?;
    let mode = FrameMode::parse(mode).ok_or_else(|| format!("mode must be 0 or Z, not `{mode}`"))?;
    if max_arity == 0 || max_arity > MAX_ARITY || order == 0 || order > MAX_ORDER {
        return Err(format!("arity must lie in 1..={MAX_ARITY} and order in 1..={MAX_ORDER}"));
    }
    let explicit = DocumentOptions { max_arity: Some(max_arity), order: Some(order), mode: Some(mode), seed: None };
    let report = run_pipeline(&doc, command, RunOptions::resolve(&doc.options, &explicit)).map_err(|e| e.to_string())?;
    Ok(report.render(if machine { OutputFormat::Machine } else { OutputFormat::Human }))
}

/// `heis`, `heis_exact`, or a seeded `end` / `nil` fixture.
pub fn fixture_text(family: &str, seed: u64) -> Result<String, String> {
    let family = match family {
        "heis" => return Ok(HEIS.to_string()),
        "heis_exact" => return Ok(HEIS_EXACT.to_string()),
        "end" => FixtureFamily::Endomorphism,
        "nil" => FixtureFamily::Nilpotent,
        other => return Err(format!("unknown fixture family `{other}`")),
    };
    Ok(format!("# fixture {}-{seed}\n{}", family.prefix(), fixture_document(family, seed).serialize()))
}

#[wasm_bindgen]
pub fn validate(text: &str) -> String {
    validate_document(text)
}

#[wasm_bindgen]
pub fn run(text: &str, command: &str, max_arity: usize, order: usize, mode: &str, machine: bool) -> Result<String, JsError> {
    run_command(text, command, max_arity, order, mode, machine).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fixture(family: &str, seed: u64) -> Result<String, JsError> {
    fixture_text(family, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_reports_lines() {
        let v: serde_json::Value = serde_json::from_str(&validate_document("[basis]\nx 1\n\n[bracket]\nx q = x\n")).unwrap();
        assert_eq!(v["ok"], false);
        assert_eq!(v["errors"][0]["line"], 5);
        let v: serde_json::Value = serde_json::from_str(&validate_document(HEIS)).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["dimension"], 3);
    }

    #[test]
    fn heis_report_in_both_formats() {
        let human = run_command(HEIS, "report", 5, 5, "0", false).unwrap();
        assert!(human.contains("2*t1*t2"));
        assert!(human.contains("all checks passed"));
        let machine = run_command(HEIS, "report", 5, 5, "0", true).unwrap();
        let v: serde_json::Value = serde_json::from_str(&machine).unwrap();
        assert_eq!(v["data"]["moduli_dimension"], 2);
        assert!(run_command(HEIS, "report", 9, 5, "0", true).is_err());
        assert!(run_command(HEIS, "bogus", 5, 5, "0", true).is_err());
    }

    #[test]
    fn fixtures_parse() {
        for family in ["heis", "heis_exact", "end", "nil"] {
            let text = fixture_text(family, 3).unwrap();
            assert!(AlgebraDocument::parse(&text).is_ok(), "{family}");
        }
        assert!(fixture_text("other", 0).is_err());
    }
}
