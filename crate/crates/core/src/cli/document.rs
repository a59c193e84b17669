//! Line-oriented algebra documents.
//!
//! ```text
//! # the Heisenberg algebra
//! [basis]
//! x 1
//! y 1
//! z 2
//! [d]
//! # from to coefficient: d(from) has this coefficient on `to`
//! [bracket]
//! x y = z
//! [options]
//! order = 4
//! ```
//!
//! `[eta]` uses the layout of `[d]`; `[product]` that of `[bracket]`, read
//! as an ordered product. Right-hand sides are combinations such as
//! `2*z - 1/2*w`; coefficients are exact rationals.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::graded::{GradedSpace, HomogeneousMap, MultiMap, TensorMap, Vector};
use crate::mc::FrameMode;
use crate::scalar::{self, Scalar};
use crate::structures::{Dga, Dgla};

pub type Combination = Vec<(String, Scalar)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DocumentOptions {
    pub max_arity: Option<usize>,
    pub order: Option<usize>,
    pub mode: Option<FrameMode>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub basis: Vec<(String, i32)>,
    /// `(from, to, c)`: `d(from)` has coefficient `c` on `to`.
    pub d: Vec<(String, String, Scalar)>,
    pub bracket: Vec<(String, String, Combination)>,
    pub eta: Option<Vec<(String, String, Scalar)>>,
    pub product: Option<Vec<(String, String, Combination)>>,
    pub options: DocumentOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// All problems found in a document, in line order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl std::error::Error for ParseErrors {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Basis,
    D,
    Bracket,
    Eta,
    Product,
    Options,
}

fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

fn parse_combination(text: &str) -> std::result::Result<Combination, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let mut negative = false;
        let mut saw_sign = false;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('-') {
                negative = !negative;
                saw_sign = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                saw_sign = true;
                rest = r;
            } else {
                break;
            }
        }
        if !out.is_empty() && !saw_sign {
            return Err(format!("expected `+` or `-` before `{rest}`"));
        }
        let end = rest.find(|c: char| c.is_whitespace() || c == '+' || c == '-').unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if term.is_empty() {
            return Err("dangling sign".into());
        }
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => (scalar::parse(c).map_err(|e| e.to_string())?, l),
            None => (Scalar::one(), term),
        };
        if !valid_label(label) {
            return Err(format!("malformed term `{term}`"));
        }
        out.push((label.to_string(), if negative { -coeff } else { coeff }));
    }
    Ok(out)
}

fn format_combination(c: &Combination) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (label, coeff)) in c.iter().enumerate() {
        let (sign, magnitude) = if coeff < &Scalar::zero() { ("-", -coeff.clone()) } else { ("+", coeff.clone()) };
        match (i, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            (_, s) => {
                out.push(' ');
                out.push_str(s);
                out.push(' ');
            }
        }
        if !magnitude.is_one() {
            out.push_str(&scalar::format(&magnitude));
            out.push('*');
        }
        out.push_str(label);
    }
    out
}

fn parse_map_entry(fields: &[&str]) -> std::result::Result<(String, String, Scalar), String> {
    match fields {
        [from, to] => Ok((from.to_string(), to.to_string(), Scalar::one())),
        [from, to, c] => Ok((from.to_string(), to.to_string(), scalar::parse(c).map_err(|e| e.to_string())?)),
        _ => Err("expected `from to [coefficient]`".into()),
    }
}

fn parse_binary_entry(line: &str) -> std::result::Result<(String, String, Combination), String> {
    let (lhs, rhs) = line.split_once('=').ok_or("expected `a b = combination`")?;
    let args: Vec<&str> = lhs.split_whitespace().collect();
    let [a, b] = args[..] else {
        return Err("expected two labels before `=`".into());
    };
    Ok((a.to_string(), b.to_string(), parse_combination(rhs)?))
}

struct Checker<'a> {
    labels: &'a [(String, i32)],
    errors: Vec<ParseError>,
}

impl Checker<'_> {
    fn degree(&mut self, line: usize, label: &str) -> Option<i32> {
        let found = self.labels.iter().find(|(l, _)| l == label).map(|(_, d)| *d);
        if found.is_none() {
            self.errors.push(ParseError { line, message: format!("unknown basis label `{label}`") });
        }
        found
    }

    fn map_entry(&mut self, line: usize, (from, to, c): &(String, String, Scalar), shift: i32, name: &str) {
        if let (Some(a), Some(b)) = (self.degree(line, from), self.degree(line, to)) {
            if !c.is_zero() && b != a + shift {
                self.errors.push(ParseError {
                    line,
                    message: format!("{name} entry {from} -> {to} must raise degree by {shift}, but {a} -> {b}"),
                });
            }
        }
    }

    fn binary_entry(&mut self, line: usize, (a, b, rhs): &(String, String, Combination)) {
        let (da, db) = (self.degree(line, a), self.degree(line, b));
        for (label, c) in rhs {
            if let (Some(da), Some(db), Some(dc)) = (da, db, self.degree(line, label)) {
                if !c.is_zero() && dc != da + db {
                    self.errors.push(ParseError {
                        line,
                        message: format!("term `{label}` has degree {dc}, expected {}", da + db),
                    });
                }
            }
        }
    }
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> std::result::Result<Self, ParseErrors> {
        let mut doc = AlgebraDocument::default();
        let mut errors = Vec::new();
        let mut section = Section::None;
        let mut seen = BTreeSet::new();
        // (line, entry) pairs kept for validation once all labels are known
        let mut d_lines = Vec::new();
        let mut eta_lines = Vec::new();
        let mut bracket_lines = Vec::new();
        let mut product_lines = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if content.starts_with('[') {
                section = match content {
                    "[basis]" => Section::Basis,
                    "[d]" => Section::D,
                    "[bracket]" => Section::Bracket,
                    "[eta]" => Section::Eta,
                    "[product]" => Section::Product,
                    "[options]" => Section::Options,
                    _ => {
                        errors.push(ParseError { line, message: format!("unknown section `{content}`") });
                        Section::None
                    }
                };
                if section != Section::None && !seen.insert(content.to_string()) {
                    errors.push(ParseError { line, message: format!("section `{content}` appears twice") });
                }
                match section {
                    Section::Eta => doc.eta = Some(doc.eta.take().unwrap_or_default()),
                    Section::Product => doc.product = Some(doc.product.take().unwrap_or_default()),
                    _ => {}
                }
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let result: std::result::Result<(), String> = match section {
                Section::None => Err("entry outside of any section".into()),
                Section::Basis => parse_basis(&mut doc.basis, &fields),
                Section::D => parse_map_entry(&fields).map(|e| d_lines.push((line, e))),
                Section::Eta => parse_map_entry(&fields).map(|e| eta_lines.push((line, e))),
                Section::Bracket => parse_binary_entry(content).map(|e| bracket_lines.push((line, e))),
                Section::Product => parse_binary_entry(content).map(|e| product_lines.push((line, e))),
                Section::Options => parse_option(&mut doc.options, content),
            };
            if let Err(message) = result {
                errors.push(ParseError { line, message });
            }
        }
        let mut checker = Checker { labels: &doc.basis, errors: Vec::new() };
        let mut pairs = BTreeSet::new();
        for (line, e) in &d_lines {
            checker.map_entry(*line, e, 1, "d");
            if !pairs.insert((e.0.clone(), e.1.clone())) {
                checker.errors.push(ParseError { line: *line, message: format!("d entry {} -> {} given twice", e.0, e.1) });
            }
        }
        pairs.clear();
        for (line, e) in &eta_lines {
            checker.map_entry(*line, e, -1, "eta");
            if !pairs.insert((e.0.clone(), e.1.clone())) {
                checker.errors.push(ParseError { line: *line, message: format!("eta entry {} -> {} given twice", e.0, e.1) });
            }
        }
        pairs.clear();
        for (line, e) in &bracket_lines {
            checker.binary_entry(*line, e);
            let key = if e.0 <= e.1 { (e.0.clone(), e.1.clone()) } else { (e.1.clone(), e.0.clone()) };
            if !pairs.insert(key) {
                checker.errors.push(ParseError { line: *line, message: format!("bracket of {} and {} given twice", e.0, e.1) });
            }
        }
        pairs.clear();
        for (line, e) in &product_lines {
            checker.binary_entry(*line, e);
            if !pairs.insert((e.0.clone(), e.1.clone())) {
                checker.errors.push(ParseError { line: *line, message: format!("product {} {} given twice", e.0, e.1) });
            }
        }
        errors.extend(checker.errors);
        doc.d = d_lines.into_iter().map(|(_, e)| e).collect();
        doc.bracket = bracket_lines.into_iter().map(|(_, e)| e).collect();
        if let Some(eta) = doc.eta.as_mut() {
            eta.extend(eta_lines.into_iter().map(|(_, e)| e));
        }
        if let Some(product) = doc.product.as_mut() {
            product.extend(product_lines.into_iter().map(|(_, e)| e));
        }
        if errors.is_empty() {
            Ok(doc)
        } else {
            errors.sort_by_key(|e| e.line);
            Err(ParseErrors(errors))
        }
    }

    /// Canonical text; parsing it gives back an equal document.
    pub fn serialize(&self) -> String {
        let mut out = String::from("[basis]\n");
        for (label, degree) in &self.basis {
            out.push_str(&format!("{label} {degree}\n"));
        }
        out.push_str("\n[d]\n");
        for (from, to, c) in &self.d {
            out.push_str(&format!("{from} {to} {}\n", scalar::format(c)));
        }
        out.push_str("\n[bracket]\n");
        for (a, b, rhs) in &self.bracket {
            out.push_str(&format!("{a} {b} = {}\n", format_combination(rhs)));
        }
        if let Some(eta) = &self.eta {
            out.push_str("\n[eta]\n");
            for (from, to, c) in eta {
                out.push_str(&format!("{from} {to} {}\n", scalar::format(c)));
            }
        }
        if let Some(product) = &self.product {
            out.push_str("\n[product]\n");
            for (a, b, rhs) in product {
                out.push_str(&format!("{a} {b} = {}\n", format_combination(rhs)));
            }
        }
        let o = &self.options;
        if *o != DocumentOptions::default() {
            out.push_str("\n[options]\n");
            if let Some(n) = o.max_arity {
                out.push_str(&format!("max-arity = {n}\n"));
            }
            if let Some(n) = o.order {
                out.push_str(&format!("order = {n}\n"));
            }
            if let Some(m) = o.mode {
                out.push_str(&format!("mode = {}\n", m.as_str()));
            }
            if let Some(s) = o.seed {
                out.push_str(&format!("seed = {s}\n"));
            }
        }
        out
    }

    pub fn space(&self) -> Result<GradedSpace> {
        GradedSpace::new(self.basis.iter().cloned())
    }

    fn index(space: &GradedSpace, label: &str) -> Result<usize> {
        space.index_of(label).ok_or_else(|| crate::Error::UnknownLabel(label.to_string()))
    }

    fn linear_map(space: &GradedSpace, entries: &[(String, String, Scalar)], degree: i32) -> Result<HomogeneousMap> {
        let mut map = HomogeneousMap::zero(space, space, degree);
        for (from, to, c) in entries {
            map.set_entry(Self::index(space, to)?, Self::index(space, from)?, c.clone())?;
        }
        Ok(map)
    }

    fn vector(space: &GradedSpace, rhs: &Combination) -> Result<Vector> {
        let mut v = space.zero_vector();
        for (label, c) in rhs {
            v.add_coeff(Self::index(space, label)?, c);
        }
        Ok(v)
    }

    pub fn differential(&self) -> Result<HomogeneousMap> {
        Self::linear_map(&self.space()?, &self.d, 1)
    }

    pub fn dgla(&self) -> Result<Dgla> {
        let space = self.space()?;
        let mut bracket = MultiMap::exterior(2, &space, 0);
        for (a, b, rhs) in &self.bracket {
            bracket.set(&[Self::index(&space, a)?, Self::index(&space, b)?], Self::vector(&space, rhs)?)?;
        }
        Dgla::new(&space, self.differential()?, bracket)
    }

    pub fn eta(&self) -> Result<Option<HomogeneousMap>> {
        let space = self.space()?;
        self.eta.as_ref().map(|e| Self::linear_map(&space, e, -1)).transpose()
    }

    pub fn dga(&self) -> Result<Option<Dga>> {
        let Some(entries) = &self.product else {
            return Ok(None);
        };
        let space = self.space()?;
        let mut product = TensorMap::new(2, &space, 0);
        for (a, b, rhs) in entries {
            product.set(&[Self::index(&space, a)?, Self::index(&space, b)?], Self::vector(&space, rhs)?)?;
        }
        Dga::new(&space, self.differential()?, product).map(Some)
    }

    /// Document for a DGLA, optionally with `η` and an associative product
    /// on the same complex.
    pub fn from_structures(a: &Dgla, eta: Option<&HomogeneousMap>, dga: Option<&Dga>) -> Self {
        let g = a.space();
        let map_entries = |m: &HomogeneousMap| {
            let mut out = Vec::new();
            for col in 0..g.dim() {
                for row in 0..g.dim() {
                    let c = m.entry(row, col);
                    if !c.is_zero() {
                        out.push((g.label(col).to_string(), g.label(row).to_string(), c.clone()));
                    }
                }
            }
            out
        };
        let combination = |v: &Vector| -> Combination { v.support().map(|(i, c)| (g.label(i).to_string(), c.clone())).collect() };
        let bracket = a
            .bracket()
            .values()
            .iter()
            .map(|(t, v)| (g.label(t[0]).to_string(), g.label(t[1]).to_string(), combination(v)))
            .collect();
        let product = dga.map(|m| {
            m.product()
                .values()
                .iter()
                .map(|(t, v)| (g.label(t[0]).to_string(), g.label(t[1]).to_string(), combination(v)))
                .collect()
        });
        AlgebraDocument {
            basis: g.basis().iter().map(|b| (b.label.clone(), b.degree)).collect(),
            d: map_entries(a.d()),
            bracket,
            eta: eta.map(map_entries),
            product,
            options: DocumentOptions::default(),
        }
    }
}

fn parse_basis(basis: &mut Vec<(String, i32)>, fields: &[&str]) -> std::result::Result<(), String> {
    let [label, degree] = fields[..] else {
        return Err("expected `label degree`".into());
    };
    let degree: i32 = degree.parse().map_err(|_| format!("malformed degree `{degree}`"))?;
    if !valid_label(label) {
        return Err(format!("malformed label `{label}`"));
    }
    if basis.iter().any(|(l, _)| l == label) {
        return Err(format!("duplicate basis label `{label}`"));
    }
    basis.push((label.to_string(), degree));
    Ok(())
}

fn parse_option(options: &mut DocumentOptions, line: &str) -> std::result::Result<(), String> {
    let (key, value) = line.split_once('=').ok_or("expected `key = value`")?;
    let (key, value) = (key.trim(), value.trim());
    let number = || value.parse::<usize>().map_err(|_| format!("malformed number `{value}`"));
    match key {
        "max-arity" => options.max_arity = Some(number()?),
        "order" => options.order = Some(number()?),
        "mode" => options.mode = Some(FrameMode::parse(value).ok_or(format!("mode must be 0 or Z, not `{value}`"))?),
        "seed" => options.seed = Some(value.parse().map_err(|_| format!("malformed seed `{value}`"))?),
        _ => return Err(format!("unknown option `{key}`")),
    }
    Ok(())
}
