//! Command dispatch and report assembly.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cech::les::{delta_natural, ses_les, triple_les, twist_scan, LesReport};
use crate::cech::{complex_cohomology, CechComplex, RelativeComplex, Support};
use crate::cousin::{build_cousin, verify_cousin, Filtration};
use crate::linalg::Echelon;
use crate::modpres::{PresentedModule, TorsionMode};
use crate::oracle::words::word_product;
use crate::oracle::{oracle_dims, CechLevelDims, CommutativeModuleSpec, CousinDims, DimsQuery, DimsReport};
use crate::report::{Finding, Status};
use crate::scalar::FieldSpec;
use crate::sections::{open_sections, quotient_sections, supported_sections, verify_section_lemmas, Semantics};
use crate::skewalg::Monomial;

use super::manifest::{Command, Format, Manifest, ManifestError, Problem};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Anything that maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Rows and columns of a CSV table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: Command,
    pub results: Value,
    pub findings: Vec<Finding>,
    pub table: Table,
    pub echo: Value,
    pub parameters: Value,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.findings.iter().any(Finding::failed) {
            1
        } else {
            0
        }
    }

    pub fn to_value(&self) -> Value {
        let count = |s: Status| self.findings.iter().filter(|f| f.status == s).count();
        json!({
            "command": self.command.name(),
            "engine": { "name": "qcousin", "version": VERSION },
            "problem": self.echo,
            "parameters": self.parameters,
            "results": self.results,
            "findings": self.findings,
            "summary": { "pass": count(Status::Pass), "fail": count(Status::Fail), "info": count(Status::Info) },
            "exit_code": self.exit_code(),
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.table.to_csv(),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn findings_table(findings: &[Finding]) -> Table {
    Table {
        header: ["claim", "status", "level", "detail", "witness"].map(String::from).to_vec(),
        rows: findings
            .iter()
            .map(|f| {
                vec![
                    f.claim.clone(),
                    to_value(&f.status).as_str().unwrap_or_default().to_string(),
                    f.level.map(|p| p.to_string()).unwrap_or_default(),
                    f.detail.clone(),
                    f.witness.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    }
}

/// Rows `i`, columns `p`.
fn level_table(levels: &[(u32, BTreeMap<i64, usize>)]) -> Table {
    let mut header = vec!["i".to_string()];
    header.extend(levels.iter().map(|(p, _)| format!("p={p}")));
    let degrees: std::collections::BTreeSet<i64> = levels.iter().flat_map(|(_, h)| h.keys().copied()).collect();
    let rows = degrees
        .into_iter()
        .map(|i| {
            let mut r = vec![i.to_string()];
            r.extend(levels.iter().map(|(_, h)| h.get(&i).copied().unwrap_or(0).to_string()));
            r
        })
        .collect();
    Table { header, rows }
}

/// Supports from `z = n` down to the empty set.
fn flag(n: usize) -> Vec<Support> {
    (0..=n).rev().map(Support::Stratum).chain(std::iter::once(Support::Empty)).collect()
}

fn pairs(n: usize) -> Vec<(Support, Support)> {
    let f = flag(n);
    let mut out = Vec::new();
    for (i, &a) in f.iter().enumerate() {
        for &b in &f[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

fn triples(n: usize) -> Vec<(Support, Support, Support)> {
    let f = flag(n);
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            for k in j + 1..f.len() {
                out.push((f[i], f[j], f[k]));
            }
        }
    }
    out
}

struct Context<'a> {
    manifest: &'a Manifest,
    problem: Problem,
}

impl<'a> Context<'a> {
    fn module(&self) -> &PresentedModule {
        &self.problem.modules[self.manifest.module_name()]
    }

    fn mode(&self) -> TorsionMode {
        self.manifest.parameters.torsion_mode()
    }

    fn pole_max(&self) -> u32 {
        self.manifest.parameters.pole_max
    }
}

/// Parses nothing; runs a validated manifest.
pub fn run_command(manifest: &Manifest) -> Result<RunReport, CliError> {
    let problem = manifest.resolve()?;
    let cx = Context { manifest, problem };
    let (results, findings, table) = match manifest.command {
        Command::Hilbert => hilbert(&cx),
        Command::Sections => sections(&cx),
        Command::Cohomology => cohomology(&cx),
        Command::Cousin => cousin(&cx),
        Command::Verify => verify(&cx),
        Command::OracleCompare => oracle_compare(&cx)?,
    };
    let table = table.unwrap_or_else(|| findings_table(&findings));
    Ok(RunReport {
        command: manifest.command,
        results,
        findings,
        table,
        echo: echo(manifest),
        parameters: to_value(&manifest.parameters),
    })
}

fn echo(m: &Manifest) -> Value {
    let (lo, hi) = m.degrees.unwrap_or((0, m.parameters.d_max));
    json!({
        "field": m.field.name(),
        "n": m.n,
        "module": m.module_name(),
        "support": m.support.map(|s| to_value(&s)),
        "lower": m.lower.map(|s| to_value(&s)),
        "filtration": m.filtration().entries(),
        "degrees": [lo, hi],
        "checks": m.checks(),
        "format": m.format.to_string(),
        "modules": m.modules.iter().map(|s| s.name.clone()).collect::<Vec<_>>(),
        "maps": m.maps.iter().map(|s| s.name.clone()).collect::<Vec<_>>(),
        "sequences": m.sequences.iter().map(|s| s.name.clone()).collect::<Vec<_>>(),
    })
}

type Outcome = (Value, Vec<Finding>, Option<Table>);

fn hilbert(cx: &Context) -> Outcome {
    let (lo, hi) = cx.manifest.degrees.unwrap_or((0, cx.manifest.parameters.d_max));
    let dims = cx.module().hilbert_function(lo..=hi);
    let table = Table {
        header: vec!["degree".into(), "dim".into()],
        rows: (lo..=hi).zip(&dims).map(|(d, v)| vec![d.to_string(), v.to_string()]).collect(),
    };
    let degrees: Vec<i64> = (lo..=hi).collect();
    (json!({ "degrees": degrees, "dims": dims }), Vec::new(), Some(table))
}

fn sections(cx: &Context) -> Outcome {
    let m = cx.module();
    let sem = cx.manifest.parameters.semantics;
    let strata = match cx.manifest.support {
        Some(s) => vec![s],
        None => flag(cx.manifest.n),
    };
    let mut findings = Vec::new();
    let mut supported = Vec::new();
    let mut table = Table {
        header: ["support", "semantics", "dim", "ambient_dim", "required_level"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    for &z in &strata {
        let r = supported_sections(m, z, sem, cx.mode());
        table.rows.push(vec![
            z.to_string(),
            sem.to_string(),
            r.dim.to_string(),
            r.ambient_dim.to_string(),
            r.required_level().to_string(),
        ]);
        if !r.stable() {
            findings.push(Finding::info(format!("sections {z}"), "windowed kernels did not stabilize"));
        }
        supported.push(to_value(&r));
    }
    let mut quotients = Vec::new();
    let lower = cx.manifest.lower.map(|l| vec![(strata[0], l)]);
    let qpairs = lower.unwrap_or_else(|| strata.windows(2).map(|w| (w[0], w[1])).collect());
    for (a, b) in qpairs {
        match quotient_sections(m, a, b, sem, cx.mode()) {
            Ok(q) => quotients.push(json!({ "upper": a, "lower": b, "dim": q.dim, "basis": q.basis })),
            Err(e) => {
                let w = match &e {
                    crate::sections::SectionsError::InclusionFailure { witness, .. } => Some(witness.clone()),
                    _ => None,
                };
                findings.push(Finding::info(format!("quotient ({a}, {b})"), e.to_string()).with_witness(w.clone()));
                quotients.push(json!({ "upper": a, "lower": b, "error": e.to_string(), "witness": w }));
            }
        }
    }
    let mut open = BTreeMap::new();
    for &z in strata.iter().filter(|z| **z != Support::Empty) {
        let dims: Vec<usize> = (1..=cx.pole_max()).map(|p| open_sections(m, z, p).dim()).collect();
        open.insert(z.to_string(), dims);
    }
    (json!({ "supported": supported, "quotients": quotients, "open_stage_dims": open }), findings, Some(table))
}

fn structural_findings(label: &str, levels: &[crate::cech::LevelReport]) -> Vec<Finding> {
    let mut out = Vec::new();
    for l in levels {
        out.push(Finding::check(format!("{label} d^2 = 0"), l.d_squared_zero, "exact matrix identity").at(l.p));
        out.push(Finding::check(format!("{label} euler"), l.euler_ok, "alternating sums of terms and cohomology agree").at(l.p));
        if let Some(c) = l.transition_commutes {
            out.push(Finding::check(format!("{label} transition"), c, "transition to the next level is a chain map").at(l.p));
        }
    }
    out
}

fn cohomology(cx: &Context) -> Outcome {
    let m = cx.module();
    let z = cx.manifest.support.unwrap_or(Support::Stratum(0));
    let window = cx.manifest.parameters.window;
    let (value, findings, levels) = match cx.manifest.lower {
        None => {
            let t = complex_cohomology(m, z, cx.pole_max(), window);
            let f = structural_findings(&format!("cech {z}"), &t.levels);
            let levels = t.levels.iter().map(|l| (l.p, l.cohomology.clone())).collect::<Vec<_>>();
            (json!({ "support": z, "table": t }), f, levels)
        }
        Some(low) => {
            let rels: Vec<RelativeComplex> =
                (1..=cx.pole_max()).map(|p| RelativeComplex::build(m, z, low, p)).collect();
            let transitions: Vec<_> = rels.windows(2).map(|w| w[0].transition_to(&w[1])).collect();
            let lv: Vec<(u32, crate::complex::Complex)> = rels.iter().map(|r| (r.level(), r.complex().clone())).collect();
            let t = crate::cech::tabulate(&lv, &transitions, window);
            let f = structural_findings(&format!("relative ({z}, {low})"), &t.levels);
            let levels = t.levels.iter().map(|l| (l.p, l.cohomology.clone())).collect::<Vec<_>>();
            (json!({ "support": z, "lower": low, "table": t }), f, levels)
        }
    };
    (value, findings, Some(level_table(&levels)))
}

fn cousin(cx: &Context) -> Outcome {
    let filt = cx.manifest.filtration();
    let r = verify_cousin(cx.module(), &filt, cx.pole_max(), cx.mode());
    let mut header = vec!["term".to_string()];
    header.extend(r.levels.iter().map(|l| format!("p={}", l.p)));
    let width = r.levels.first().map(|l| l.dims.len()).unwrap_or(0);
    let rows = (0..width)
        .map(|k| {
            let name = if k == 0 { "global".to_string() } else { format!("T{}", k - 1) };
            let mut row = vec![name];
            row.extend(r.levels.iter().map(|l| l.dims[k].to_string()));
            row
        })
        .collect();
    let findings = r.findings.clone();
    (json!({ "filtration": r.filtration, "levels": r.levels }), findings, Some(Table { header, rows }))
}

fn les_finding(claim: String, r: &LesReport) -> Finding {
    let bad = r.exact_at.iter().position(|&b| !b);
    let detail = format!("{}: dims {:?}, ranks {:?}", r.label, r.dims, r.ranks);
    let witness = match (r.chain_maps_ok, bad) {
        (false, _) => Some("maps are not chain maps".to_string()),
        (true, Some(k)) => Some(format!("not exact at position {k}")),
        _ => None,
    };
    Finding::check(claim, r.exact, detail).at(r.level).with_witness(witness)
}

fn matches_check(claim: &str, check: &str) -> bool {
    claim == check || claim.starts_with(&format!("{check}(")) || claim.starts_with(&format!("{check} "))
}

fn verify(cx: &Context) -> Outcome {
    let checks = cx.manifest.checks();
    let want = |c: &str| checks.iter().any(|x| x == c);
    let m = cx.module();
    let n = cx.manifest.n;
    let params = &cx.manifest.parameters;
    let mut findings = Vec::new();
    let mut results = BTreeMap::<String, Value>::new();

    let lemma_checks = ["l1", "l2", "l3", "l4", "B1", "B2"];
    if lemma_checks.iter().any(|c| want(c)) {
        let all = verify_section_lemmas(m, &params.lemma_params());
        findings.extend(all.into_iter().filter(|f| checks.iter().any(|c| matches_check(&f.claim, c))));
    }

    let consecutive: Vec<(Support, Support)> = flag(n).windows(2).map(|w| (w[0], w[1])).collect();
    let scan_pairs = match (cx.manifest.support, cx.manifest.lower) {
        (Some(a), Some(b)) => vec![(a, b)],
        _ => consecutive.clone(),
    };
    if want("l5") || want("bbiri") {
        let mut scans = Vec::new();
        for &(a, b) in &scan_pairs {
            let s = twist_scan(m, (a, b), params.t_max, params.pole_max);
            let detail = match s.t0 {
                Some(t) => format!("higher cohomology vanishes at every tested level from t = {t} through {}", s.t_max),
                None => format!("no t <= {} with vanishing higher cohomology at levels 1..={}", s.t_max, params.pole_max),
            };
            findings.push(Finding::info(format!("bbiri ({a}, {b})"), detail));
            scans.push(to_value(&s));
        }
        results.insert("bbiri".into(), Value::Array(scans));
    }
    if want("l5") || want("emu") {
        findings.extend(emu(m, &scan_pairs, params.pole_max, cx.mode()));
    }
    if want("l6") {
        let mut reports = Vec::new();
        for (name, ses) in &cx.problem.sequences {
            for &(a, b) in &pairs(n) {
                for p in 1..=params.pole_max {
                    match ses_les(ses, (a, b), p) {
                        Ok(r) => {
                            findings.push(les_finding(format!("l6 {name}"), &r));
                            reports.push(to_value(&r));
                        }
                        Err(e) => findings.push(Finding::check(format!("l6 {name}"), false, e.to_string()).at(p)),
                    }
                }
            }
        }
        results.insert("l6".into(), Value::Array(reports));
    }
    if want("l7") {
        let mut reports = Vec::new();
        for abc in triples(n) {
            for p in 1..=params.pole_max {
                let r = triple_les(m, abc, p);
                findings.push(les_finding("l7".into(), &r));
                reports.push(to_value(&r));
            }
        }
        for (name, f) in cx.problem.maps.iter().filter(|(_, f)| f.shift() == 0) {
            for abc in triples(n) {
                for p in 1..=params.pole_max {
                    let ok = delta_natural(f, abc, p);
                    findings.push(
                        Finding::check(
                            format!("l7 naturality {name}"),
                            ok,
                            format!("connecting map commutes with {name} on ({}, {}, {})", abc.0, abc.1, abc.2),
                        )
                        .at(p),
                    );
                }
            }
        }
        results.insert("l7".into(), Value::Array(reports));
    }
    if want("cousin") {
        let r = verify_cousin(m, &cx.manifest.filtration(), params.pole_max, cx.mode());
        findings.extend(r.findings.iter().cloned());
        results.insert("cousin".into(), json!({ "filtration": r.filtration, "levels": r.levels }));
    }
    if want("skew") {
        let (f, pairs) = skew_battery(cx, 500);
        findings.push(f);
        results.insert("skew".into(), json!({ "pairs": pairs, "seed": params.seed }));
    }
    if want("structure") {
        for z in 0..=n {
            let t = complex_cohomology(m, Support::Stratum(z), params.pole_max, params.window);
            findings.extend(structural_findings(&format!("cech {z}"), &t.levels));
        }
        for (a, b) in pairs(n) {
            for p in 1..=params.pole_max {
                let r = RelativeComplex::build(m, a, b, p);
                findings.push(
                    Finding::check(format!("relative ({a}, {b}) d^2 = 0"), r.complex().is_complex(), "exact matrix identity")
                        .at(p),
                );
            }
        }
    }
    (Value::Object(results.into_iter().collect()), findings, None)
}

/// `Gamma_{z1} / Gamma_{z2}` injects into `H^0(Rel(z1, z2))` by `m -> [(0, m)]`
/// once the pole order reaches the certified level.
fn emu(m: &PresentedModule, pairs: &[(Support, Support)], p_max: u32, mode: TorsionMode) -> Vec<Finding> {
    let mut out = Vec::new();
    for &(a, b) in pairs {
        let q = match quotient_sections(m, a, b, Semantics::Ideal, mode) {
            Ok(q) => q,
            Err(e) => {
                out.push(Finding::check(format!("emu ({a}, {b})"), false, e.to_string()));
                continue;
            }
        };
        let from = q.upper.required_level().max(q.lower.required_level());
        for p in 1..=p_max {
            let rel = RelativeComplex::build(m, a, b, p);
            let h0 = rel.complex().cohomology(0);
            let zero = crate::linalg::SparseVec::new();
            let classes: Option<Vec<_>> =
                q.quotient.reps().iter().map(|v| h0.class_of(&rel.join(0, &zero, v))).collect();
            let detail = |r: usize| format!("quotient sections {}, image rank {r}, dim H^0 {}", q.dim, h0.dim());
            match classes {
                Some(cs) => {
                    let r = Echelon::from_vectors(h0.dim(), m.field(), cs.iter()).rank();
                    if p >= from {
                        out.push(Finding::check(format!("emu ({a}, {b})"), r == q.dim, detail(r)).at(p));
                    } else {
                        out.push(Finding::info(format!("emu ({a}, {b})"), detail(r)).at(p));
                    }
                }
                None if p >= from => out.push(
                    Finding::check(format!("emu ({a}, {b})"), false, "a section does not give a cycle").at(p),
                ),
                None => out.push(
                    Finding::info(format!("emu ({a}, {b})"), format!("below the certified level {from}")).at(p),
                ),
            }
        }
    }
    out
}

/// Random monomial pairs against the word-rewriting product.
fn skew_battery(cx: &Context, count: usize) -> (Finding, usize) {
    let alg = &cx.problem.algebra;
    let nv = alg.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(cx.manifest.parameters.seed);
    let random = |rng: &mut ChaCha8Rng| {
        let deg = rng.gen_range(0..=6u32);
        let mut e = vec![0u32; nv];
        for _ in 0..deg {
            e[rng.gen_range(0..nv)] += 1;
        }
        Monomial::new(e)
    };
    for _ in 0..count {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let (c, m) = alg.monomial_product(&a, &b);
        let (e, w) = word_product(a.exps(), b.exps());
        if m.exps() != w.as_slice() || c != alg.q_power(e) {
            return (
                Finding::check("skew product", false, format!("{count} random pairs"))
                    .with_witness(Some(format!("{a} * {b}: expected q^{e}"))),
                count,
            );
        }
    }
    (Finding::check("skew product", true, format!("{count} random pairs match word rewriting")), count)
}

/// The engine's side of `oracle-compare`.
pub fn engine_dims(m: &PresentedModule, query: &DimsQuery, mode: TorsionMode) -> DimsReport {
    let n = m.algebra().n();
    let hilbert = m.hilbert_function(0..=query.d_max);
    let mut sections = BTreeMap::new();
    for z in 0..=n {
        for (key, sem) in [("ideal", Semantics::Ideal), ("product", Semantics::Product)] {
            sections.insert(format!("{key}:{z}"), supported_sections(m, Support::Stratum(z), sem, mode).dim);
        }
    }
    let mut cech = BTreeMap::new();
    for z in 0..=n {
        let cs: Vec<CechComplex> = (1..=query.p_max + 1).map(|p| CechComplex::build(m, Support::Stratum(z), p)).collect();
        let top = cs[0].vars().len() as i64;
        let levels = cs
            .windows(2)
            .map(|w| {
                let (c, next) = (w[0].complex(), w[1].complex());
                let tr = w[0].transition_to(&w[1]);
                CechLevelDims {
                    p: w[0].level(),
                    term_dims: (0..=top).map(|k| c.dim(k)).collect(),
                    cohomology: (0..=top).map(|k| c.cohomology(k).dim()).collect(),
                    transition_ranks: (0..=top).map(|k| tr.induced(k, c, next).rank()).collect(),
                }
            })
            .collect();
        cech.insert(z.to_string(), levels);
    }
    let filt = Filtration::new(n, query.filtration.clone()).expect("valid filtration");
    let cousin = (1..=query.p_max)
        .map(|p| {
            let inst = build_cousin(m, &filt, p);
            let mut ranks = vec![inst.e.rank()];
            ranks.extend(inst.d.iter().map(|d| d.rank()));
            CousinDims { p, dims: inst.dims(), ranks, cohomology: inst.cohomology() }
        })
        .collect();
    DimsReport { hilbert, sections, cech, cousin }
}

/// Oracle spec for the manifest's target module.
pub fn oracle_spec(manifest: &Manifest, problem: &Problem) -> Result<CommutativeModuleSpec, CliError> {
    if manifest.field != FieldSpec::Rationals {
        return Err(CliError::Input("oracle supports q=1 only".into()));
    }
    let spec = manifest.modules.iter().find(|s| s.name == manifest.module_name()).expect("resolved");
    let cols = manifest.relation_columns(&problem.algebra, spec)?;
    let rels: Vec<(i64, Vec<String>)> =
        cols.iter().zip(&spec.relations).map(|(c, r)| (c.degree, r.entries.clone())).collect();
    CommutativeModuleSpec::from_text(manifest.field, manifest.n, spec.generators.clone(), &rels)
        .map_err(|e| CliError::Input(e.to_string()))
}

fn oracle_compare(cx: &Context) -> Result<Outcome, CliError> {
    let spec = oracle_spec(cx.manifest, &cx.problem)?;
    let params = &cx.manifest.parameters;
    let query = DimsQuery {
        d_max: params.d_max,
        p_max: params.pole_max,
        filtration: cx.manifest.filtration().entries().to_vec(),
        pole_bound: params.pole_bound,
    };
    let oracle = oracle_dims(&spec, &query);
    let engine = engine_dims(cx.module(), &query, cx.mode());
    let mut findings = Vec::new();
    let cmp = |claim: String, a: Value, b: Value| {
        let ok = a == b;
        Finding::check(claim, ok, if ok { format!("{a}") } else { format!("engine {a}, oracle {b}") })
    };
    findings.push(cmp("oracle hilbert".into(), to_value(&engine.hilbert), to_value(&oracle.hilbert)));
    for (k, v) in &engine.sections {
        findings.push(cmp(format!("oracle sections {k}"), to_value(v), to_value(&oracle.sections.get(k))));
    }
    for (z, levels) in &engine.cech {
        for (l, o) in levels.iter().zip(&oracle.cech[z]) {
            findings.push(cmp(format!("oracle cech {z}"), to_value(l), to_value(o)).at(l.p));
        }
    }
    for (l, o) in engine.cousin.iter().zip(&oracle.cousin) {
        findings.push(cmp("oracle cousin".into(), to_value(l), to_value(o)).at(l.p));
    }
    Ok((json!({ "query": query, "engine": engine, "oracle": oracle }), findings, None))
}
