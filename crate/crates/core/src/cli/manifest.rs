//! Line-oriented problem manifests.
//!
//! ```text
//! # comment
//! [problem]
//! field = generic_q
//! n = 1
//! command = cousin
//! filtration = 1, 0
//!
//! [module A]
//! generators = 0
//! relation = 1 | x2          # degree | entry ; entry ; ...
//!
//! [map f]
//! source = K
//! target = A
//! image = x1                 # one line per source generator
//!
//! [ses s]
//! first = f
//! second = g
//!
//! [parameters]
//! pole_max = 4
//! ```
//!
//! Parsing validates everything that can be checked without running a
//! command: names resolve, polynomials parse, relation columns are homogeneous
//! of the stated degree, maps are well defined and declared sequences are
//! exact in the degrees that the commands touch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cech::Support;
use crate::cousin::Filtration;
use crate::modpres::{FreeVector, ModuleError, ModuleMap, PresentedModule, Relation, ShortExactSequence};
use crate::modpres::TorsionMode;
use crate::scalar::{Field, FieldSpec};
use crate::sections::{LemmaParams, Semantics};
use crate::skewalg::{Algebra, SkewPolynomial};
use crate::text::parse_polynomial;

/// Input error with a position and the field it concerns.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {path}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub column: usize,
    pub path: String,
    pub message: String,
}

impl ManifestError {
    fn new(at: Pos, path: impl Into<String>, message: impl Into<String>) -> Self {
        ManifestError { line: at.line, column: at.column, path: path.into(), message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// Source positions by field path. Never part of equality, so a manifest
/// compares equal to its reserialized form.
#[derive(Clone, Debug, Default)]
pub struct Spans(BTreeMap<String, Pos>);

impl PartialEq for Spans {
    fn eq(&self, _: &Spans) -> bool {
        true
    }
}

impl Spans {
    fn get(&self, path: &str) -> Pos {
        self.0.get(path).copied().unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hilbert,
    Sections,
    Cohomology,
    Cousin,
    Verify,
    OracleCompare,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Hilbert,
        Command::Sections,
        Command::Cohomology,
        Command::Cousin,
        Command::Verify,
        Command::OracleCompare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Sections => "sections",
            Command::Cohomology => "cohomology",
            Command::Cousin => "cousin",
            Command::Verify => "verify",
            Command::OracleCompare => "oracle-compare",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}` (expected one of {})", names(Command::ALL.map(Command::name))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Certified,
    Windowed,
}

/// Batteries understood by `verify`.
pub const CHECKS: [&str; 14] =
    ["l1", "l2", "l3", "l4", "l5", "l6", "l7", "emu", "bbiri", "B1", "B2", "cousin", "skew", "structure"];

fn names<const N: usize>(xs: [&str; N]) -> String {
    xs.join(", ")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Parameters {
    pub semantics: Semantics,
    pub pole_max: u32,
    pub window: u32,
    pub mode: Mode,
    pub t_max: i64,
    pub d_max: i64,
    pub seed: u64,
    /// Pole order of the naive kernels on the oracle side of `oracle-compare`.
    pub pole_bound: u32,
}

impl Default for Parameters {
    fn default() -> Self {
        let l = LemmaParams::default();
        Parameters {
            semantics: l.semantics,
            pole_max: l.p_max,
            window: l.window,
            mode: Mode::Certified,
            t_max: l.t_max,
            d_max: l.d_max,
            seed: 0,
            pole_bound: 8,
        }
    }
}

impl Parameters {
    pub fn torsion_mode(&self) -> TorsionMode {
        match self.mode {
            Mode::Certified => TorsionMode::Certified,
            Mode::Windowed => TorsionMode::Windowed { p_max: self.pole_max, window: self.window },
        }
    }

    pub fn lemma_params(&self) -> LemmaParams {
        LemmaParams {
            p_max: self.pole_max,
            window: self.window,
            semantics: self.semantics,
            mode: self.torsion_mode(),
            t_max: self.t_max,
            d_max: self.d_max,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationSpec {
    /// Omitted degrees are inferred from the first nonzero entry.
    pub degree: Option<i64>,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleSpec {
    pub name: String,
    pub generators: Vec<i64>,
    pub relations: Vec<RelationSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub shift: i64,
    pub images: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SesSpec {
    pub name: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub field: FieldSpec,
    pub n: usize,
    pub command: Command,
    /// Module the command acts on; the first declared one when absent.
    pub module: Option<String>,
    pub support: Option<Support>,
    pub lower: Option<Support>,
    pub filtration: Option<Vec<usize>>,
    pub degrees: Option<(i64, i64)>,
    pub checks: Option<Vec<String>>,
    pub format: Format,
    pub parameters: Parameters,
    pub modules: Vec<ModuleSpec>,
    pub maps: Vec<MapSpec>,
    pub sequences: Vec<SesSpec>,
    pub spans: Spans,
}

/// The algebraic objects a manifest describes.
#[derive(Clone, Debug)]
pub struct Problem {
    pub algebra: Algebra,
    pub modules: BTreeMap<String, PresentedModule>,
    pub maps: BTreeMap<String, ModuleMap>,
    pub sequences: BTreeMap<String, ShortExactSequence>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
        parse_manifest(text)
    }

    pub fn module_name(&self) -> &str {
        self.module.as_deref().unwrap_or_else(|| &self.modules[0].name)
    }

    pub fn filtration(&self) -> Filtration {
        match &self.filtration {
            Some(zs) => Filtration::new(self.n, zs.clone()).expect("validated at parse time"),
            None => Filtration::full_flag(self.n),
        }
    }

    pub fn checks(&self) -> Vec<String> {
        match &self.checks {
            Some(c) => c.clone(),
            None => CHECKS.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Degrees in which declared sequences are checked for exactness.
    pub fn ses_degrees(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.modules.iter().flat_map(|m| m.generators.iter().copied()).min().unwrap_or(0).min(0);
        lo..=self.parameters.d_max.max(self.parameters.pole_max as i64 * (self.n as i64 + 1))
    }

    /// Builds every module, map and sequence.
    pub fn resolve(&self) -> Result<Problem, ManifestError> {
        let field = Field::new(self.field)
            .map_err(|e| ManifestError::new(self.spans.get("problem.field"), "problem.field", e.to_string()))?;
        let algebra = Algebra::new(self.n, field);
        let mut modules = BTreeMap::new();
        for spec in &self.modules {
            modules.insert(spec.name.clone(), self.build_module(&algebra, spec)?);
        }
        let mut maps = BTreeMap::new();
        for spec in &self.maps {
            maps.insert(spec.name.clone(), self.build_map(&algebra, &modules, spec)?);
        }
        let mut sequences = BTreeMap::new();
        for spec in &self.sequences {
            let path = format!("ses {}", spec.name);
            let f = maps[&spec.first].clone();
            let g = maps[&spec.second].clone();
            let ses = ShortExactSequence::new(f, g, self.ses_degrees())
                .map_err(|e| ManifestError::new(self.spans.get(&path), path.clone(), e.to_string()))?;
            sequences.insert(spec.name.clone(), ses);
        }
        Ok(Problem { algebra, modules, maps, sequences })
    }

    fn polynomial(&self, alg: &Algebra, text: &str, path: &str) -> Result<SkewPolynomial, ManifestError> {
        parse_polynomial(text, alg).map_err(|e| {
            let at = self.spans.get(path);
            ManifestError::new(Pos { line: at.line, column: at.column + e.column - 1 }, path, e.message)
        })
    }

    /// Relation columns with their degrees, zero columns included.
    pub fn relation_columns(&self, alg: &Algebra, spec: &ModuleSpec) -> Result<Vec<Relation>, ManifestError> {
        let base = format!("module {}", spec.name);
        let rank = spec.generators.len();
        let mut rels = Vec::new();
        for (j, r) in spec.relations.iter().enumerate() {
            let rpath = format!("{base}.relation[{}]", j + 1);
            if r.entries.len() != rank {
                return Err(ManifestError::new(
                    self.spans.get(&rpath),
                    rpath,
                    format!("relation column {} has {} entries, module has {} generators", j + 1, r.entries.len(), rank),
                ));
            }
            let mut entries = Vec::new();
            for (t, e) in r.entries.iter().enumerate() {
                entries.push(self.polynomial(alg, e, &format!("{rpath}.entry[{}]", t + 1))?);
            }
            let inferred = entries
                .iter()
                .zip(&spec.generators)
                .find_map(|(p, d)| p.homogeneous_degree().filter(|_| !p.is_zero()).map(|k| k as i64 + d));
            let degree = r.degree.or(inferred).unwrap_or(0);
            rels.push(Relation { degree, entries });
        }
        Ok(rels)
    }

    fn build_module(&self, alg: &Algebra, spec: &ModuleSpec) -> Result<PresentedModule, ManifestError> {
        let base = format!("module {}", spec.name);
        let rels = self.relation_columns(alg, spec)?;
        PresentedModule::new(alg.clone(), spec.generators.clone(), rels).map_err(|e| match e {
            ModuleError::RelationDegree { column, component, expected, found } => {
                let path = format!("{base}.relation[{}].entry[{}]", column + 1, component + 1);
                ManifestError::new(
                    self.spans.get(&path),
                    path,
                    format!(
                        "relation column {}, entry {}: degree {found}, expected {expected}",
                        column + 1,
                        component + 1
                    ),
                )
            }
            ModuleError::NotHomogeneous { column, component } => {
                let path = format!("{base}.relation[{}].entry[{}]", column + 1, component + 1);
                ManifestError::new(
                    self.spans.get(&path),
                    path,
                    format!("relation column {}, entry {}: not homogeneous", column + 1, component + 1),
                )
            }
            other => ManifestError::new(self.spans.get(&base), base.clone(), other.to_string()),
        })
    }

    fn build_map(
        &self,
        alg: &Algebra,
        modules: &BTreeMap<String, PresentedModule>,
        spec: &MapSpec,
    ) -> Result<ModuleMap, ManifestError> {
        let base = format!("map {}", spec.name);
        let src = modules[&spec.source].clone();
        let tgt = modules[&spec.target].clone();
        if spec.images.len() != src.rank() {
            return Err(ManifestError::new(
                self.spans.get(&base),
                base,
                format!("{} images given, source has {} generators", spec.images.len(), src.rank()),
            ));
        }
        let mut images: Vec<FreeVector> = Vec::new();
        for (i, img) in spec.images.iter().enumerate() {
            let ipath = format!("{base}.image[{}]", i + 1);
            if img.len() != tgt.rank() {
                return Err(ManifestError::new(
                    self.spans.get(&ipath),
                    ipath,
                    format!("image has {} entries, target has {} generators", img.len(), tgt.rank()),
                ));
            }
            let mut v = Vec::new();
            for (t, e) in img.iter().enumerate() {
                v.push(self.polynomial(alg, e, &format!("{ipath}.entry[{}]", t + 1))?);
            }
            images.push(v);
        }
        ModuleMap::new(src, tgt, images, spec.shift).map_err(|e| {
            let path = match &e {
                ModuleError::MapImage { generator, .. } if *generator < spec.images.len() => {
                    format!("{base}.image[{}]", generator + 1)
                }
                _ => base.clone(),
            };
            ManifestError::new(self.spans.get(&path), path, e.to_string())
        })
    }

    /// Canonical text; `parse(serialize(m)) == m`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("[problem]\nfield", self.field.name());
        kv("n", self.n.to_string());
        kv("command", self.command.to_string());
        if let Some(m) = &self.module {
            kv("module", m.clone());
        }
        if let Some(s) = self.support {
            kv("support", s.to_string());
        }
        if let Some(s) = self.lower {
            kv("lower", s.to_string());
        }
        if let Some(f) = &self.filtration {
            kv("filtration", join(f));
        }
        if let Some((a, b)) = self.degrees {
            kv("degrees", format!("{a}..{b}"));
        }
        if let Some(c) = &self.checks {
            kv("checks", c.join(", "));
        }
        kv("format", self.format.to_string());
        let p = &self.parameters;
        kv("\n[parameters]\nsemantics", p.semantics.to_string());
        kv("pole_max", p.pole_max.to_string());
        kv("window", p.window.to_string());
        kv("mode", serde_plain(&p.mode));
        kv("t_max", p.t_max.to_string());
        kv("d_max", p.d_max.to_string());
        kv("seed", p.seed.to_string());
        kv("pole_bound", p.pole_bound.to_string());
        for m in &self.modules {
            kv(&format!("\n[module {}]\ngenerators", m.name), join(&m.generators));
            for r in &m.relations {
                let body = r.entries.join(" ; ");
                kv(
                    "relation",
                    match r.degree {
                        Some(d) => format!("{d} | {body}"),
                        None => body,
                    },
                );
            }
        }
        for m in &self.maps {
            kv(&format!("\n[map {}]\nsource", m.name), m.source.clone());
            kv("target", m.target.clone());
            kv("shift", m.shift.to_string());
            for img in &m.images {
                kv("image", img.join(" ; "));
            }
        }
        for s in &self.sequences {
            kv(&format!("\n[ses {}]\nfirst", s.name), s.first.clone());
            kv("second", s.second.clone());
        }
        out
    }
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => panic!("not a plain string: {other:?}"),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// One `key = value` line with the column where the value starts.
struct Entry<'a> {
    key: &'a str,
    value: &'a str,
    key_at: Pos,
    value_at: Pos,
}

enum Section {
    Problem,
    Parameters,
    Module(String),
    Map(String),
    Ses(String),
}

#[derive(Default)]
struct Builder {
    field: Option<FieldSpec>,
    n: Option<usize>,
    command: Option<Command>,
    module: Option<String>,
    support: Option<Support>,
    lower: Option<Support>,
    filtration: Option<Vec<usize>>,
    degrees: Option<(i64, i64)>,
    checks: Option<Vec<String>>,
    format: Option<Format>,
    parameters: Parameters,
    modules: Vec<ModuleSpec>,
    maps: Vec<(MapSpec, bool)>,
    sequences: Vec<SesSpec>,
    spans: BTreeMap<String, Pos>,
    seen: BTreeSet<String>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_int<T: FromStr>(e: &Entry, path: &str) -> Result<T, ManifestError> {
    e.value.parse().map_err(|_| ManifestError::new(e.value_at, path, format!("expected an integer, found `{}`", e.value)))
}

/// Comma separated integers, optionally in parentheses.
fn parse_list<T: FromStr>(e: &Entry, path: &str) -> Result<Vec<T>, ManifestError> {
    let (body, off) = match e.value.strip_prefix('(') {
        Some(rest) => match rest.strip_suffix(')') {
            Some(b) => (b, 1),
            None => return Err(ManifestError::new(e.value_at, path, "unbalanced parenthesis")),
        },
        None => (e.value, 0),
    };
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = e.value_at.column + off;
    for part in body.split(',') {
        let at = Pos { line: e.value_at.line, column: col + leading_ws(part) };
        let t = part.trim();
        out.push(t.parse().map_err(|_| ManifestError::new(at, path, format!("expected an integer, found `{t}`")))?);
        col += part.chars().count() + 1;
    }
    Ok(out)
}

fn parse_support(e: &Entry, path: &str) -> Result<Support, ManifestError> {
    if e.value == "empty" {
        return Ok(Support::Empty);
    }
    e.value
        .parse()
        .map(Support::Stratum)
        .map_err(|_| ManifestError::new(e.value_at, path, format!("expected a stratum index or `empty`, found `{}`", e.value)))
}

/// Splits on `;`, recording the column of each trimmed piece.
fn split_entries(text: &str, start: Pos) -> Vec<(String, Pos)> {
    let mut out = Vec::new();
    let mut col = start.column;
    for part in text.split(';') {
        out.push((part.trim().to_string(), Pos { line: start.line, column: col + leading_ws(part) }));
        col += part.chars().count() + 1;
    }
    out
}

impl Builder {
    fn once(&mut self, e: &Entry, path: &str) -> Result<(), ManifestError> {
        if !self.seen.insert(path.to_string()) {
            return Err(ManifestError::new(e.key_at, path, format!("duplicate key `{}`", e.key)));
        }
        self.spans.insert(path.to_string(), e.value_at);
        Ok(())
    }

    fn problem(&mut self, e: &Entry) -> Result<(), ManifestError> {
        let path = format!("problem.{}", e.key);
        self.once(e, &path)?;
        let bad = |msg: String| ManifestError::new(e.value_at, &path, msg);
        match e.key {
            "field" => {
                self.field = Some(FieldSpec::parse(e.value).ok_or_else(|| {
                    bad(format!(
                        "unknown field `{}` (expected rationals, q=1, generic_q or cyclotomic:<m>)",
                        e.value
                    ))
                })?)
            }
            "n" => self.n = Some(parse_int(e, &path)?),
            "command" => self.command = Some(e.value.parse().map_err(bad)?),
            "module" => {
                if !is_ident(e.value) {
                    return Err(bad(format!("`{}` is not a name", e.value)));
                }
                self.module = Some(e.value.to_string())
            }
            "support" => self.support = Some(parse_support(e, &path)?),
            "lower" => self.lower = Some(parse_support(e, &path)?),
            "filtration" => self.filtration = Some(parse_list(e, &path)?),
            "degrees" => {
                let (a, b) = e.value.split_once("..").ok_or_else(|| bad("expected a range `lo..hi`".into()))?;
                let a: i64 = a.trim().parse().map_err(|_| bad(format!("bad range start `{}`", a.trim())))?;
                let b: i64 = b.trim().parse().map_err(|_| bad(format!("bad range end `{}`", b.trim())))?;
                if a > b {
                    return Err(bad(format!("empty range {a}..{b}")));
                }
                self.degrees = Some((a, b));
            }
            "checks" => {
                let mut cs = Vec::new();
                for c in e.value.split(',').map(str::trim) {
                    if !CHECKS.contains(&c) {
                        return Err(bad(format!("unknown check `{c}` (expected one of {})", names(CHECKS))));
                    }
                    cs.push(c.to_string());
                }
                self.checks = Some(cs);
            }
            "format" => self.format = Some(e.value.parse().map_err(bad)?),
            _ => return Err(ManifestError::new(e.key_at, path, format!("unknown key `{}`", e.key))),
        }
        Ok(())
    }

    fn parameter(&mut self, e: &Entry) -> Result<(), ManifestError> {
        let path = format!("parameters.{}", e.key);
        self.once(e, &path)?;
        let p = &mut self.parameters;
        match e.key {
            "semantics" => p.semantics = e.value.parse().map_err(|m: String| ManifestError::new(e.value_at, &path, m))?,
            "pole_max" => p.pole_max = parse_int(e, &path)?,
            "window" => p.window = parse_int(e, &path)?,
            "mode" => {
                p.mode = match e.value {
                    "certified" => Mode::Certified,
                    "windowed" => Mode::Windowed,
                    v => {
                        return Err(ManifestError::new(
                            e.value_at,
                            path,
                            format!("unknown mode `{v}` (expected certified or windowed)"),
                        ))
                    }
                }
            }
            "t_max" => p.t_max = parse_int(e, &path)?,
            "d_max" => p.d_max = parse_int(e, &path)?,
            "seed" => p.seed = parse_int(e, &path)?,
            "pole_bound" => p.pole_bound = parse_int(e, &path)?,
            _ => return Err(ManifestError::new(e.key_at, path, format!("unknown key `{}`", e.key))),
        }
        Ok(())
    }

    fn module(&mut self, e: &Entry) -> Result<(), ManifestError> {
        let m = self.modules.last_mut().expect("inside a module section");
        let base = format!("module {}", m.name);
        match e.key {
            "generators" => {
                let path = format!("{base}.generators");
                if !self.seen.insert(path.clone()) {
                    return Err(ManifestError::new(e.key_at, path, "duplicate key `generators`"));
                }
                m.generators = parse_list(e, &path)?;
                self.spans.insert(path, e.value_at);
            }
            "relation" => {
                let j = m.relations.len() + 1;
                let path = format!("{base}.relation[{j}]");
                self.spans.insert(path.clone(), e.value_at);
                let (degree, body, body_at) = match e.value.split_once('|') {
                    Some((d, body)) => {
                        let d: i64 = d.trim().parse().map_err(|_| {
                            ManifestError::new(e.value_at, &path, format!("bad relation degree `{}`", d.trim()))
                        })?;
                        let skip = e.value.find('|').unwrap() + 1;
                        (Some(d), body, Pos { line: e.value_at.line, column: e.value_at.column + skip })
                    }
                    None => (None, e.value, e.value_at),
                };
                let mut entries = Vec::new();
                for (t, (text, at)) in split_entries(body, body_at).into_iter().enumerate() {
                    let epath = format!("{path}.entry[{}]", t + 1);
                    if text.is_empty() {
                        return Err(ManifestError::new(at, epath, "empty entry (write 0 for a zero entry)"));
                    }
                    self.spans.insert(epath, at);
                    entries.push(text);
                }
                m.relations.push(RelationSpec { degree, entries });
            }
            _ => return Err(ManifestError::new(e.key_at, format!("{base}.{}", e.key), format!("unknown key `{}`", e.key))),
        }
        Ok(())
    }

    fn map(&mut self, e: &Entry) -> Result<(), ManifestError> {
        let (m, shift_seen) = self.maps.last_mut().expect("inside a map section");
        let base = format!("map {}", m.name);
        let path = format!("{base}.{}", e.key);
        let name_value = |e: &Entry| -> Result<String, ManifestError> {
            if is_ident(e.value) {
                Ok(e.value.to_string())
            } else {
                Err(ManifestError::new(e.value_at, format!("{base}.{}", e.key), format!("`{}` is not a name", e.value)))
            }
        };
        if e.key != "image" && !self.seen.insert(path.clone()) {
            return Err(ManifestError::new(e.key_at, path, format!("duplicate key `{}`", e.key)));
        }
        match e.key {
            "source" => m.source = name_value(e)?,
            "target" => m.target = name_value(e)?,
            "shift" => {
                m.shift = parse_int(e, &path)?;
                *shift_seen = true;
            }
            "image" => {
                let ipath = format!("{base}.image[{}]", m.images.len() + 1);
                self.spans.insert(ipath.clone(), e.value_at);
                let mut img = Vec::new();
                for (t, (text, at)) in split_entries(e.value, e.value_at).into_iter().enumerate() {
                    let epath = format!("{ipath}.entry[{}]", t + 1);
                    if text.is_empty() {
                        return Err(ManifestError::new(at, epath, "empty entry (write 0 for a zero entry)"));
                    }
                    self.spans.insert(epath, at);
                    img.push(text);
                }
                m.images.push(img);
                return Ok(());
            }
            _ => return Err(ManifestError::new(e.key_at, path, format!("unknown key `{}`", e.key))),
        }
        self.spans.insert(path, e.value_at);
        Ok(())
    }

    fn ses(&mut self, e: &Entry) -> Result<(), ManifestError> {
        let s = self.sequences.last_mut().expect("inside a ses section");
        let path = format!("ses {}.{}", s.name, e.key);
        if !self.seen.insert(path.clone()) {
            return Err(ManifestError::new(e.key_at, path, format!("duplicate key `{}`", e.key)));
        }
        if !is_ident(e.value) {
            return Err(ManifestError::new(e.value_at, path, format!("`{}` is not a name", e.value)));
        }
        match e.key {
            "first" => s.first = e.value.to_string(),
            "second" => s.second = e.value.to_string(),
            _ => return Err(ManifestError::new(e.key_at, path, format!("unknown key `{}`", e.key))),
        }
        self.spans.insert(path, e.value_at);
        Ok(())
    }

    fn missing(&self, path: &str, what: &str) -> ManifestError {
        let at = self.spans.get(path.split('.').next().unwrap_or(path)).copied().unwrap_or_default();
        ManifestError::new(at, path, format!("missing {what}"))
    }

    fn finish(mut self) -> Result<Manifest, ManifestError> {
        let field = self.field.ok_or_else(|| self.missing("problem.field", "key `field`"))?;
        let n = self.n.ok_or_else(|| self.missing("problem.n", "key `n`"))?;
        let command = self.command.ok_or_else(|| self.missing("problem.command", "key `command`"))?;
        let span = |s: &Builder, p: &str| s.spans.get(p).copied().unwrap_or_default();

        // With no module sections the algebra itself is the module `A`.
        if self.modules.is_empty() {
            self.modules.push(ModuleSpec { name: "A".into(), generators: vec![0], relations: Vec::new() });
        }
        let module_names: BTreeSet<&str> = self.modules.iter().map(|m| m.name.as_str()).collect();
        if let Some(m) = &self.module {
            if !module_names.contains(m.as_str()) {
                return Err(ManifestError::new(span(&self, "problem.module"), "problem.module", format!("no module named `{m}`")));
            }
        }
        let map_names: BTreeSet<&str> = self.maps.iter().map(|(m, _)| m.name.as_str()).collect();
        for (m, _) in &self.maps {
            for (key, value) in [("source", &m.source), ("target", &m.target)] {
                let path = format!("map {}.{key}", m.name);
                if value.is_empty() {
                    return Err(ManifestError::new(span(&self, &format!("map {}", m.name)), path, format!("missing key `{key}`")));
                }
                if !module_names.contains(value.as_str()) {
                    return Err(ManifestError::new(span(&self, &path), path, format!("no module named `{value}`")));
                }
            }
        }
        for s in &self.sequences {
            for (key, value) in [("first", &s.first), ("second", &s.second)] {
                let path = format!("ses {}.{key}", s.name);
                if value.is_empty() {
                    return Err(ManifestError::new(span(&self, &format!("ses {}", s.name)), path, format!("missing key `{key}`")));
                }
                if !map_names.contains(value.as_str()) {
                    return Err(ManifestError::new(span(&self, &path), path, format!("no map named `{value}`")));
                }
            }
            let f = self.maps.iter().find(|(m, _)| m.name == s.first).unwrap();
            let g = self.maps.iter().find(|(m, _)| m.name == s.second).unwrap();
            if f.0.target != g.0.source {
                let path = format!("ses {}.second", s.name);
                return Err(ManifestError::new(
                    span(&self, &path),
                    path,
                    format!("`{}` starts at `{}` but `{}` ends at `{}`", g.0.name, g.0.source, f.0.name, f.0.target),
                ));
            }
        }
        for (key, s) in [("support", self.support), ("lower", self.lower)] {
            if let Some(Support::Stratum(z)) = s {
                if z > n {
                    let path = format!("problem.{key}");
                    return Err(ManifestError::new(span(&self, &path), path, format!("stratum {z} exceeds n = {n}")));
                }
            }
        }
        if let (Some(up), Some(lo)) = (self.support, self.lower) {
            if lo > up {
                return Err(ManifestError::new(
                    span(&self, "problem.lower"),
                    "problem.lower",
                    format!("lower support {lo} is above support {up}"),
                ));
            }
        }
        if let Some(f) = &self.filtration {
            Filtration::new(n, f.clone())
                .map_err(|e| ManifestError::new(span(&self, "problem.filtration"), "problem.filtration", e.to_string()))?;
        }
        if self.parameters.pole_max == 0 {
            return Err(ManifestError::new(span(&self, "parameters.pole_max"), "parameters.pole_max", "pole order must be at least 1"));
        }
        if self.parameters.window == 0 {
            return Err(ManifestError::new(span(&self, "parameters.window"), "parameters.window", "window must be at least 1"));
        }
        let manifest = Manifest {
            field,
            n,
            command,
            module: self.module,
            support: self.support,
            lower: self.lower,
            filtration: self.filtration,
            degrees: self.degrees,
            checks: self.checks,
            format: self.format.unwrap_or_default(),
            parameters: self.parameters,
            modules: self.modules,
            maps: self.maps.into_iter().map(|(m, _)| m).collect(),
            sequences: self.sequences,
            spans: Spans(self.spans),
        };
        manifest.resolve()?;
        Ok(manifest)
    }
}

/// Parses and fully validates a manifest.
pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let mut b = Builder::default();
    let mut section: Option<Section> = None;
    let mut names: BTreeSet<String> = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indent = leading_ws(body);
        let at = |col: usize| Pos { line, column: col };
        let t = body.trim();
        if let Some(h) = t.strip_prefix('[') {
            let Some(h) = h.strip_suffix(']') else {
                return Err(ManifestError::new(at(indent + 1), "header", "section header is missing `]`"));
            };
            let mut words = h.split_whitespace();
            let kind = words.next().unwrap_or("");
            let name = words.next();
            if words.next().is_some() {
                return Err(ManifestError::new(at(indent + 1), "header", format!("malformed section header `[{h}]`")));
            }
            let named = |kind: &str| -> Result<String, ManifestError> {
                let name = name.ok_or_else(|| ManifestError::new(at(indent + 1), kind, format!("`[{kind}]` needs a name")))?;
                if !is_ident(name) {
                    return Err(ManifestError::new(at(indent + 2), kind, format!("`{name}` is not a name")));
                }
                Ok(name.to_string())
            };
            let sec = match kind {
                "problem" | "parameters" if name.is_some() => {
                    return Err(ManifestError::new(at(indent + 1), kind, format!("`[{kind}]` takes no name")))
                }
                "problem" => Section::Problem,
                "parameters" => Section::Parameters,
                "module" => Section::Module(named(kind)?),
                "map" => Section::Map(named(kind)?),
                "ses" => Section::Ses(named(kind)?),
                other => {
                    return Err(ManifestError::new(
                        at(indent + 1),
                        "header",
                        format!("unknown section `[{other}]` (expected problem, parameters, module, map or ses)"),
                    ))
                }
            };
            let key = match &sec {
                Section::Problem => "problem".to_string(),
                Section::Parameters => "parameters".to_string(),
                Section::Module(n) => format!("module {n}"),
                Section::Map(n) => format!("map {n}"),
                Section::Ses(n) => format!("ses {n}"),
            };
            if !names.insert(key.clone()) {
                return Err(ManifestError::new(at(indent + 1), key, "section declared twice"));
            }
            b.spans.insert(key, at(indent + 1));
            match &sec {
                Section::Module(n) => b.modules.push(ModuleSpec { name: n.clone(), generators: vec![0], relations: Vec::new() }),
                Section::Map(n) => b.maps.push((
                    MapSpec { name: n.clone(), source: String::new(), target: String::new(), shift: 0, images: Vec::new() },
                    false,
                )),
                Section::Ses(n) => b.sequences.push(SesSpec { name: n.clone(), first: String::new(), second: String::new() }),
                _ => {}
            }
            section = Some(sec);
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(ManifestError::new(at(indent + 1), "line", "expected `key = value` or a section header"));
        };
        let key = body[..eq].trim();
        let value_raw = &body[eq + 1..];
        let value = value_raw.trim();
        let value_col = body[..eq].chars().count() + 2 + leading_ws(value_raw);
        if key.is_empty() {
            return Err(ManifestError::new(at(indent + 1), "line", "missing key before `=`"));
        }
        if value.is_empty() {
            return Err(ManifestError::new(at(value_col), key, format!("missing value for `{key}`")));
        }
        let e = Entry { key, value, key_at: at(indent + 1), value_at: at(value_col) };
        match &section {
            None => return Err(ManifestError::new(e.key_at, key, "key outside of any section")),
            Some(Section::Problem) => b.problem(&e)?,
            Some(Section::Parameters) => b.parameter(&e)?,
            Some(Section::Module(_)) => b.module(&e)?,
            Some(Section::Map(_)) => b.map(&e)?,
            Some(Section::Ses(_)) => b.ses(&e)?,
        }
    }
    if !names.contains("problem") {
        return Err(ManifestError::new(Pos { line: 1, column: 1 }, "problem", "missing `[problem]` section"));
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[problem]\nfield = generic_q\nn = 1\ncommand = hilbert\ndegrees = 0..3\n";

    #[test]
    fn minimal_manifest() {
        let m = parse_manifest(MINIMAL).unwrap();
        assert_eq!(m.field, FieldSpec::GenericQ);
        assert_eq!(m.command, Command::Hilbert);
        assert_eq!(m.degrees, Some((0, 3)));
        assert_eq!(m.module_name(), "A");
        assert_eq!(m.parameters, Parameters::default());
    }

    #[test]
    fn round_trip() {
        let text = "[problem]\nfield = cyclotomic:4\nn = 2\ncommand = verify\nchecks = l6, l7\n\
                    [module M]\ngenerators = 0\nrelation = 1 | x3\n[module F]\ngenerators = 1\n\
                    [map f]\nsource = F\ntarget = A\nshift = 0\nimage = x3\n\
                    [module A]\n[map g]\nsource = A\ntarget = M\nimage = 1\n\
                    [ses s]\nfirst = f\nsecond = g\n[parameters]\npole_max = 2\nsemantics = product\n";
        let m = parse_manifest(text).unwrap();
        let again = parse_manifest(&m.serialize()).unwrap();
        assert_eq!(m, again);
        assert_eq!(m.serialize(), again.serialize());
    }

    #[test]
    fn wrong_degree_names_column() {
        let text = "[problem]\nfield = q=1\nn = 1\ncommand = hilbert\n[module M]\ngenerators = 0, 0\n\
                    relation = 1 | x1 ; x2^2\n";
        let e = parse_manifest(text).unwrap_err();
        assert_eq!(e.path, "module M.relation[1].entry[2]");
        assert!(e.message.contains("relation column 1, entry 2"), "{e}");
        assert_eq!((e.line, e.column), (7, 21));
    }

    #[test]
    fn increasing_filtration() {
        let text = "[problem]\nfield = generic\nn = 2\ncommand = cousin\nfiltration = (0, 2)\n";
        let e = parse_manifest(text).unwrap_err();
        assert_eq!(e.path, "problem.filtration");
        assert!(e.message.contains("filtration not weakly decreasing"), "{e}");
        assert_eq!((e.line, e.column), (5, 14));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_manifest("[problem]\nfield generic_q\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_manifest("[problem]\nfield = generic_q\nn = 1\ncommand = hilbert\n[module M]\nrelation = 1 | x1 +* x2\n")
            .unwrap_err();
        assert_eq!(e.line, 6);
        assert_eq!(e.path, "module M.relation[1].entry[1]");
        let e = parse_manifest("[problem]\nfield = generic_q\nn = 1\ncommand = sideways\n").unwrap_err();
        assert_eq!((e.line, e.column, e.path.as_str()), (4, 11, "problem.command"));
        let e = parse_manifest("[problem]\nfield = generic_q\nn = 1\ncommand = hilbert\nmodule = B\n").unwrap_err();
        assert!(e.message.contains("no module named"));
    }

    #[test]
    fn coefficient_grammar() {
        let text = "[problem]\nfield = generic_q\nn = 1\ncommand = hilbert\n[module M]\n\
                    relation = 1 | 3/2 q^1 x1 + q^-2 x2\n";
        let m = parse_manifest(text).unwrap();
        let p = m.resolve().unwrap();
        assert_eq!(p.modules["M"].hilbert_function(0..=2), vec![1, 1, 1]);
    }

    #[test]
    fn non_exact_sequence_rejected() {
        let text = "[problem]\nfield = q=1\nn = 1\ncommand = verify\n[module A]\n[module M]\nrelation = x1\n\
                    [map f]\nsource = A\ntarget = A\nshift = 1\nimage = x2\n\
                    [map g]\nsource = A\ntarget = M\nimage = 1\n[ses s]\nfirst = f\nsecond = g\n";
        let e = parse_manifest(text).unwrap_err();
        assert_eq!(e.path, "ses s");
    }
}
