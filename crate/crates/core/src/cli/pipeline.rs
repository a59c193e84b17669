use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::fixtures::{endomorphism_fixture, nilpotent_fixture};
use crate::graded::{GradedSpace, HomogeneousMap, Vector};
use crate::homotopy::{induce_ainfinity, induce_linfinity, kuranishi_morphism, HodgeData};
use crate::mc::{
    degeneration_check, kuranishi_bijection_check, kuranishi_locus, kuranishi_map, mc_residual, moduli_report,
    tensor_with_artin, versal_solution, ArtinAlgebra, FormalSeries, FrameMode, LocusIdeal,
    ParameterFrame, SharedRing,
};
use crate::scalar;
use crate::structures::{DefectReport, Dgla, LInfinityStructure, PolyVectorField};

use super::document::{AlgebraDocument, DocumentOptions};

/// Longest defect listing included in a report.
const DEFECT_LISTING: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Check,
    Hodge,
    Induce,
    Verify,
    Kuranishi,
    Solve,
    Locus,
    Degenerate,
    Report,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Check,
        Command::Hodge,
        Command::Induce,
        Command::Verify,
        Command::Kuranishi,
        Command::Solve,
        Command::Locus,
        Command::Degenerate,
        Command::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Hodge => "hodge",
            Command::Induce => "induce",
            Command::Verify => "verify",
            Command::Kuranishi => "kuranishi",
            Command::Solve => "solve",
            Command::Locus => "locus",
            Command::Degenerate => "degenerate",
            Command::Report => "report",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Machine,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_arity: usize,
    pub order: usize,
    pub mode: FrameMode,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { max_arity: 5, order: 5, mode: FrameMode::Full, seed: 0 }
    }
}

impl RunOptions {
    /// Explicit settings win over the document's `[options]`, which win
    /// over the defaults.
    pub fn resolve(document: &DocumentOptions, explicit: &DocumentOptions) -> Self {
        let d = Self::default();
        Self {
            max_arity: explicit.max_arity.or(document.max_arity).unwrap_or(d.max_arity),
            order: explicit.order.or(document.order).unwrap_or(d.order),
            mode: explicit.mode.or(document.mode).unwrap_or(d.mode),
            seed: explicit.seed.or(document.seed).unwrap_or(d.seed),
        }
    }

    fn to_json(self) -> Value {
        json!({
            "max_arity": self.max_arity,
            "order": self.order,
            "mode": self.mode.as_str(),
            "seed": self.seed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: Command,
    pub options: RunOptions,
    pub verdicts: Vec<Verdict>,
    pub data: Map<String, Value>,
    /// Wall-clock time per stage; shown only in human output.
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// Pretty JSON with sorted keys; no timings, so equal inputs give equal
    /// bytes.
    pub fn to_machine(&self) -> String {
        let verdicts: Map<String, Value> = self
            .verdicts
            .iter()
            .map(|v| (v.name.clone(), json!({ "passed": v.passed, "detail": v.detail })))
            .collect();
        let report = json!({
            "command": self.command.name(),
            "options": self.options.to_json(),
            "passed": self.passed(),
            "verdicts": verdicts,
            "data": self.data,
        });
        let mut out = serde_json::to_string_pretty(&report).expect("JSON values always serialize");
        out.push('\n');
        out
    }

    pub fn to_human(&self) -> String {
        let o = &self.options;
        let mut out = format!(
            "linfty {}  (max-arity {}, order {}, mode {}, seed {})\n",
            self.command.name(),
            o.max_arity,
            o.order,
            o.mode.as_str(),
            o.seed
        );
        let mut lines = Vec::new();
        for (k, v) in &self.data {
            flatten(k, v, &mut lines);
        }
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in lines {
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            let width = self.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &self.verdicts {
                let tag = if v.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("  {tag}  {:<width$}  {}\n", v.name, v.detail));
            }
        }
        let summary = if self.passed() { "all checks passed" } else { "SOME CHECKS FAILED" };
        if self.timings.is_empty() {
            out.push_str(&format!("\n  {summary}\n"));
        } else {
            let total: Duration = self.timings.iter().map(|(_, t)| *t).sum();
            let stages: Vec<String> =
                self.timings.iter().map(|(name, t)| format!("{name} {:.1} ms", t.as_secs_f64() * 1e3)).collect();
            out.push_str(&format!("\n  {summary}  in {:.1} ms ({})\n", total.as_secs_f64() * 1e3, stages.join(", ")));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Machine => self.to_machine(),
            OutputFormat::Human => self.to_human(),
        }
    }
}

fn flatten(key: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if m.is_empty() => out.push((key.to_string(), "-".into())),
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{key}.{k}"), x, out);
            }
        }
        Value::Array(items) if items.is_empty() => out.push((key.to_string(), "-".into())),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array() && !plain(x).contains(' ')) => {
            out.push((key.to_string(), items.iter().map(plain).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                let k = if i == 0 { key.to_string() } else { String::new() };
                match x {
                    Value::Object(_) | Value::Array(_) => flatten(&format!("{key}[{i}]"), x, out),
                    _ => out.push((k, plain(x))),
                }
            }
        }
        _ => out.push((key.to_string(), plain(v))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Shared intermediate results, computed on first use.
struct Run<'a> {
    doc: &'a AlgebraDocument,
    options: RunOptions,
    verdicts: Vec<Verdict>,
    data: Map<String, Value>,
    timings: Vec<(String, Duration)>,
    dgla: Option<Dgla>,
    hodge: Option<HodgeData>,
}

impl<'a> Run<'a> {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        // no monotonic clock on bare wasm
        let start = (!cfg!(all(target_arch = "wasm32", target_os = "unknown"))).then(Instant::now);
        let out = f(self);
        if let Some(start) = start {
            self.timings.push((stage.to_string(), start.elapsed()));
        }
        out
    }

    fn verdict(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed, detail: detail.into() });
    }

    fn put(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    fn dgla(&mut self) -> Result<Dgla> {
        if self.dgla.is_none() {
            self.dgla = Some(self.doc.dgla()?);
        }
        Ok(self.dgla.clone().expect("just set"))
    }

    fn hodge(&mut self) -> Result<HodgeData> {
        if self.hodge.is_none() {
            let a = self.dgla()?;
            self.hodge = Some(self.timed("hodge", |_| HodgeData::build(a.space(), a.d()))?);
        }
        Ok(self.hodge.clone().expect("just set"))
    }

    /// The document's `η` when given, the Hodge one otherwise.
    fn eta(&mut self) -> Result<(HomogeneousMap, &'static str)> {
        match self.doc.eta()? {
            Some(eta) => Ok((eta, "document")),
            None => Ok((self.hodge()?.eta().clone(), "hodge")),
        }
    }

    fn check(&mut self) -> Result<()> {
        let a = self.dgla()?;
        let g = a.space();
        self.put("dimension", json!(g.dim()));
        self.put("degrees", dims_json(&g.dims_by_degree()));
        let report = self.timed("check", |_| Ok(a.check()))?;
        let mut defects = Vec::new();
        for (i, v) in &report.d_squared {
            defects.push(format!("d²({}) = {}", g.label(*i), g.format_vector(v)));
        }
        for (t, v) in &report.leibniz {
            defects.push(format!("Leibniz({}) = {}", labels(g, t), g.format_vector(v)));
        }
        for (t, v) in &report.jacobi {
            defects.push(format!("Jacobi({}) = {}", labels(g, t), g.format_vector(v)));
        }
        let detail = format!(
            "{} d², {} Leibniz, {} Jacobi defects",
            report.d_squared.len(),
            report.leibniz.len(),
            report.jacobi.len()
        );
        self.verdict("dgla", report.is_valid(), detail);
        defects.truncate(DEFECT_LISTING);
        if !defects.is_empty() {
            self.put("dgla_defects", json!(defects));
        }
        if let Some(dga) = self.doc.dga()? {
            let r = self.timed("check dga", |_| Ok(dga.check()))?;
            let detail = format!(
                "{} d², {} Leibniz, {} associativity defects",
                r.d_squared.len(),
                r.leibniz.len(),
                r.associativity.len()
            );
            self.verdict("dga", r.is_valid(), detail);
        }
        Ok(())
    }

    fn hodge_stage(&mut self) -> Result<()> {
        let h = self.hodge()?;
        let g = h.space();
        self.put("cohomology", dims_json(&h.cohomology_dims()));
        self.put("harmonic", harmonic_json(&h));
        self.put("eta", json!(map_entries(g, h.eta())));
        let report = h.verify();
        self.verdict("hodge", report.is_valid(), "dη + ηd = 1 - P_H, P_H² = P_H, dP_H = P_Hd = 0, η² = ηP_H = P_Hη = 0");
        Ok(())
    }

    fn induced(&mut self, cap: usize) -> Result<LInfinityStructure> {
        let a = self.dgla()?;
        let (eta, source) = self.eta()?;
        self.put("eta_source", json!(source));
        let l = induce_linfinity(&a, &eta, cap)?;
        self.timed("induce", |_| {
            for n in 1..=cap {
                l.ensure(n)?;
            }
            Ok(())
        })?;
        Ok(l)
    }

    fn induce(&mut self) -> Result<()> {
        let l = self.induced(self.options.max_arity)?;
        let g = l.space().clone();
        let mut ops = Map::new();
        for n in 1..=self.options.max_arity {
            let entries: Vec<String> = l
                .op(n)?
                .values()
                .iter()
                .map(|(t, v)| format!("mu_{n}({}) = {}", labels(&g, t), g.format_vector(v)))
                .collect();
            ops.insert(n.to_string(), json!(entries));
        }
        self.put("operations", Value::Object(ops));
        Ok(())
    }

    fn verify(&mut self) -> Result<()> {
        let n = self.options.max_arity;
        let l = self.induced(n)?;
        let g = l.space().clone();
        let report = self.timed("verify", |_| l.check(n))?;
        let detail = defect_detail(&report);
        self.put("tuples_checked", per_arity_json(&report));
        let listing = defect_listing(&g, &report);
        if !listing.is_empty() {
            self.put("jacobi_defects", json!(listing));
        }
        self.verdict("jacobi", report.is_valid(), detail);
        let field = PolyVectorField::from_linfinity(&l, n)?;
        let square = self.timed("vector field", |_| Ok(field.square_report()))?;
        self.verdict("vector_field_square", square.is_valid(), defect_detail(&square));
        self.verdict(
            "representations_agree",
            report.is_valid() == square.is_valid(),
            "Jacobi verdict equals [Q,Q] = 0 verdict",
        );
        if let Some(dga) = self.doc.dga()? {
            let (eta, _) = self.eta()?;
            let a = self.timed("induce A∞", |_| induce_ainfinity(&dga, &eta, n))?;
            let r = self.timed("verify A∞", |_| a.check(n))?;
            self.verdict("ainfinity", r.is_valid(), defect_detail(&r));
            let sym = a.symmetrize();
            let r = self.timed("verify symmetrized", |_| sym.check(n))?;
            self.verdict("symmetrized", r.is_valid(), defect_detail(&r));
        }
        Ok(())
    }

    fn kuranishi(&mut self) -> Result<()> {
        let n = self.options.max_arity;
        let a = self.dgla()?;
        let l = self.induced(n)?;
        let (eta, _) = self.eta()?;
        let k = kuranishi_morphism(&a, &eta)?;
        let report = self.timed("morphism", |_| k.check(&l, n))?;
        self.verdict("morphism", report.is_valid(), defect_detail(&report));
        let algebras: [(&str, SharedRing); 4] = [
            ("dual", Arc::new(ArtinAlgebra::dual_numbers())),
            ("t3", Arc::new(ArtinAlgebra::truncated_line(3))),
            ("t4", Arc::new(ArtinAlgebra::truncated_line(4))),
            ("theta", Arc::new(ArtinAlgebra::exterior_line(1))),
        ];
        let mut params = Map::new();
        for (name, b) in algebras {
            let r = self.timed(&format!("bijection {name}"), |_| kuranishi_bijection_check(&a, &eta, b))?;
            params.insert(name.to_string(), json!(r.generic_parameters));
            let detail = match r.intertwining_sign {
                Some(c) => format!("d k(Γ) = R(Γ) {} η[Γ, R(Γ)]; inverse recovers Γ: {}", if c > 0 { "+" } else { "-" }, r.inverse_recovers),
                None => "intertwining identity fails".to_string(),
            };
            self.verdict(format!("bijection_{name}"), r.passes(), detail);
        }
        self.put("generic_parameters", Value::Object(params));
        let tangent = tensor_with_artin(&l, &ArtinAlgebra::dual_numbers())?;
        let linear = (2..=tangent.arity_cap()).all(|m| tangent.op(m).map_or(false, |op| op.is_zero()));
        self.verdict("tangent_linear", linear, "over k[ε]/ε² the equation is dΓ = 0");
        Ok(())
    }

    fn solved(&mut self) -> Result<(Dgla, HodgeData, ParameterFrame, FormalSeries)> {
        let a = self.dgla()?;
        let h = self.hodge()?;
        let frame = ParameterFrame::new(&h, self.options.mode, self.options.order);
        let gamma = self.timed("solve", |_| versal_solution(&a, &h, &frame))?;
        self.put("moduli_dimension", json!(frame.len()));
        self.put("parameters", parameters_json(&h, &frame));
        self.put("versal", json!(gamma.format(a.space(), frame.ring())));
        let bands: Map<String, Value> = (1..=self.options.order)
            .map(|n| (n.to_string(), json!(gamma.band(frame.ring(), n).format(a.space(), frame.ring()))))
            .collect();
        self.put("versal_bands", Value::Object(bands));
        Ok((a, h, frame, gamma))
    }

    fn solve(&mut self) -> Result<()> {
        let (a, h, frame, gamma) = self.solved()?;
        let ring = frame.ring();
        let relation = kuranishi_map(&a, h.eta(), ring, &gamma) == frame.linear_term();
        self.verdict("kuranishi_relation", relation, "Γ + ½η[Γ,Γ] = Σ γ_α t^α");
        let l = induce_linfinity(&a, h.eta(), self.options.order.max(2))?;
        let residual = self.timed("residual", |_| mc_residual(&l, ring, &gamma))?;
        self.verdict("residual_vanishes", residual.is_zero(), format!("through order {}", self.options.order));
        Ok(())
    }

    fn locus(&mut self) -> Result<(Dgla, HodgeData, ParameterFrame, FormalSeries, LocusIdeal)> {
        let (a, h, frame, gamma) = self.solved()?;
        let locus = self.timed("locus", |_| kuranishi_locus(&a, &h, &frame, &gamma))?;
        self.put("locus", locus_json(&h, &frame, &locus));
        self.put("locus_bands", json!(locus.bands(frame.ring())));
        Ok((a, h, frame, gamma, locus))
    }

    fn degenerate(&mut self) -> Result<()> {
        let (a, h, frame, gamma, locus) = self.locus()?;
        let cap = self.options.max_arity;
        let l = induce_linfinity(&a, h.eta(), cap.max(self.options.order))?;
        let r = self.timed("degenerate", |_| degeneration_check(&a, &l, &frame, &gamma, &locus, cap))?;
        self.verdict("degeneration_quadratic", r.quadratic, "μ_2(Γ,Γ) ≡ [Γ,Γ] mod I");
        for (n, ok) in &r.higher {
            self.verdict(format!("degeneration_mu{n}"), *ok, format!("μ_{n}(Γ,...,Γ) ≡ 0 mod I"));
        }
        self.verdict("degeneration_classical", r.classical, "residual ≡ dΓ + ½[Γ,Γ] mod I");
        Ok(())
    }

    fn report(&mut self) -> Result<()> {
        self.check()?;
        self.hodge_stage()?;
        self.verify()?;
        let a = self.dgla()?;
        let h = self.hodge()?;
        let o = self.options;
        let r = self.timed("moduli", |_| moduli_report(&a, &h, o.mode, o.order, o.max_arity))?;
        let g = a.space();
        let ring = r.frame.ring();
        self.put("cohomology", dims_json(&r.cohomology));
        self.put("moduli_dimension", json!(r.moduli_dimension));
        self.put("parameters", parameters_json(&h, &r.frame));
        let obstruction: Vec<Value> = r
            .obstruction
            .entries
            .iter()
            .map(|row| json!(row.iter().map(|c| c.iter().map(scalar::format).collect::<Vec<_>>()).collect::<Vec<_>>()))
            .collect();
        self.put("obstruction", json!(obstruction));
        self.put("versal", json!(r.versal.format(g, ring)));
        self.put("locus", locus_json(&h, &r.frame, &r.locus));
        self.put("mdef0_equals_def0", json!(r.unobstructed));
        self.verdict("kuranishi_relation", r.kuranishi_relation, "Γ + ½η[Γ,Γ] = Σ γ_α t^α");
        self.verdict("residual_vanishes", r.residual_vanishes, format!("through order {}", o.order));
        let higher: Vec<String> = r.degeneration.higher.iter().filter(|(_, ok)| !ok).map(|(n, _)| format!("μ_{n}")).collect();
        let detail = if r.degeneration.passes() {
            format!("modulo the locus the equation is dΓ + ½[Γ,Γ] = 0 (arities ≤ {})", o.max_arity)
        } else {
            format!("quadratic {}, classical {}, failing {}", r.degeneration.quadratic, r.degeneration.classical, higher.join(" "))
        };
        self.verdict("degeneration", r.degeneration.passes(), detail);
        Ok(())
    }
}

fn labels(g: &GradedSpace, t: &[usize]) -> String {
    t.iter().map(|&i| g.label(i)).collect::<Vec<_>>().join(", ")
}

fn dims_json(dims: &std::collections::BTreeMap<i32, usize>) -> Value {
    Value::Object(dims.iter().filter(|(_, n)| **n > 0).map(|(k, n)| (k.to_string(), json!(n))).collect())
}

fn map_entries(g: &GradedSpace, m: &HomogeneousMap) -> Vec<String> {
    let mut out = Vec::new();
    for col in 0..g.dim() {
        let image = Vector::from_coeffs((0..g.dim()).map(|row| m.entry(row, col).clone()).collect());
        if !image.is_zero() {
            out.push(format!("{} -> {}", g.label(col), g.format_vector(&image)));
        }
    }
    out
}

fn class_name(h: &HodgeData, alpha: usize) -> String {
    format!("[{}]", h.space().format_vector(&h.harmonic_basis()[alpha]))
}

fn harmonic_json(h: &HodgeData) -> Value {
    json!((0..h.harmonic_basis().len())
        .map(|a| json!({ "degree": h.harmonic_degree(a), "class": class_name(h, a) }))
        .collect::<Vec<_>>())
}

fn parameters_json(h: &HodgeData, frame: &ParameterFrame) -> Value {
    let ring = frame.ring();
    json!((0..frame.len())
        .map(|i| json!({
            "name": ring.param_name(i),
            "degree": ring.param_degree(i),
            "class": class_name(h, frame.harmonic_index(i)),
        }))
        .collect::<Vec<_>>())
}

fn locus_json(h: &HodgeData, frame: &ParameterFrame, locus: &LocusIdeal) -> Value {
    json!(locus
        .generators
        .iter()
        .map(|g| json!({ "class": class_name(h, g.class), "polynomial": g.polynomial.format(frame.ring()) }))
        .collect::<Vec<_>>())
}

fn per_arity_json<V>(r: &DefectReport<V>) -> Value {
    Value::Object(r.per_arity.iter().map(|a| (a.arity.to_string(), json!(a.tuples_checked))).collect())
}

fn defect_detail<V>(r: &DefectReport<V>) -> String {
    format!("arities 1-{}, {} tuples, {} defects", r.max_arity(), r.tuples_checked(), r.defect_count())
}

fn defect_listing(g: &GradedSpace, r: &DefectReport<Vector>) -> Vec<String> {
    r.per_arity
        .iter()
        .flat_map(|a| a.defects.iter().map(move |(t, v)| format!("arity {}: ({}) -> {}", a.arity, labels(g, t), g.format_vector(v))))
        .take(DEFECT_LISTING)
        .collect()
}

/// Runs one subcommand. Failing identities are reported as verdicts; errors
/// are reserved for inputs the pipeline cannot process.
pub fn run_pipeline(doc: &AlgebraDocument, command: Command, options: RunOptions) -> Result<RunReport> {
    let mut run = Run { doc, options, verdicts: Vec::new(), data: Map::new(), timings: Vec::new(), dgla: None, hodge: None };
    match command {
        Command::Check => run.check()?,
        Command::Hodge => run.hodge_stage()?,
        Command::Induce => run.induce()?,
        Command::Verify => run.verify()?,
        Command::Kuranishi => run.kuranishi()?,
        Command::Solve => run.solve()?,
        Command::Locus => run.locus().map(|_| ())?,
        Command::Degenerate => run.degenerate()?,
        Command::Report => run.report()?,
    }
    Ok(RunReport { command, options, verdicts: run.verdicts, data: run.data, timings: run.timings })
}

/// Seeded fixture families that can be written out as documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureFamily {
    /// Endomorphism algebras of small complexes, with their associative
    /// product.
    Endomorphism,
    /// Nilpotent algebras concentrated in degrees 1 and 2.
    Nilpotent,
}

impl FixtureFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            FixtureFamily::Endomorphism => "end",
            FixtureFamily::Nilpotent => "nil",
        }
    }
}

pub fn fixture_document(family: FixtureFamily, seed: u64) -> AlgebraDocument {
    let mut doc = match family {
        FixtureFamily::Endomorphism => {
            let f = endomorphism_fixture(seed);
            AlgebraDocument::from_structures(&f.dgla, None, Some(&f.dga))
        }
        FixtureFamily::Nilpotent => AlgebraDocument::from_structures(&nilpotent_fixture(seed).dgla, None, None),
    };
    doc.options.seed = Some(seed);
    doc
}

