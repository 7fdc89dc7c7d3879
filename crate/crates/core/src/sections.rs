//! Section functors: global sections, sections on the opens `P^n \ P^z`,
//! sections supported on `P^z` (two semantics), their quotients, and the
//! lemma verifiers built from them.
//!
//! Under *product* semantics a section is supported on `P^z` when a power of
//! the product `u(z)` of the inverted variables kills it, which is the literal
//! iterated-localization kernel. Under *ideal* semantics every inverted
//! variable must kill it separately. The two differ as soon as `|S(z)| > 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cech::{fraction_text, CechComplex, RelativeComplex, Support};
use crate::linalg::{LinMap, Quotient, SparseVec, Subspace};
use crate::modpres::{
    format_terms, torsion_submodule, GradedPiece, ModuleMap, PresentedModule, TorsionMode, WindowStatus,
};
use crate::report::{Finding, Status};
use crate::skewalg::{kappa, Monomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    #[default]
    Ideal,
    Product,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Ideal => "ideal",
            Semantics::Product => "product",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ideal" => Ok(Semantics::Ideal),
            "product" => Ok(Semantics::Product),
            _ => Err(format!("unknown semantics '{}' (expected ideal or product)", s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionsError {
    #[error("supported sections at {lower} are not contained in those at {upper} under {semantics} semantics; witness {witness}")]
    InclusionFailure { upper: Support, lower: Support, semantics: Semantics, witness: String },
    #[error("quotient sections need lower <= upper, got {upper} and {lower}")]
    Order { upper: Support, lower: Support },
}

pub fn global_sections(m: &PresentedModule) -> Arc<GradedPiece> {
    m.piece(0)
}

/// The twist `s^t M = M(t)`, with `(s^t M)_d = M_{t+d}`.
pub fn twist(m: &PresentedModule, t: i64) -> PresentedModule {
    m.twist(t)
}

/// `M / <S(z)> M`, a module over `A_{q,z}` embedded in `A_{q,n}`.
pub fn restrict_to_stratum(m: &PresentedModule, z: usize) -> PresentedModule {
    let vars = Support::Stratum(z).vars(m.algebra().n()).unwrap_or_default();
    if vars.is_empty() {
        return m.clone();
    }
    m.kill_variables(&vars)
}

/// Stage `p` of `(M[S(z)^{-1}])_0`, i.e. `u(z)^{-p} M_{p|S|}`.
#[derive(Clone, Debug)]
pub struct OpenSections {
    pub support: Support,
    pub level: u32,
    pub denom: Monomial,
    pub stage: Arc<GradedPiece>,
    /// `M_0 -> stage`.
    pub restriction: LinMap,
    /// `stage(p) -> stage(p+1)`.
    pub transition: LinMap,
}

impl OpenSections {
    pub fn dim(&self) -> usize {
        self.stage.dim()
    }

    pub fn format(&self, v: &SparseVec, rank: usize) -> String {
        format_terms(
            v.entries().iter().map(|(i, c)| {
                let (t, m) = self.stage.basis_label(*i);
                (c.clone(), fraction_text(&self.denom, m), *t)
            }),
            rank,
        )
    }
}

/// With no inverted variables (`z = n`, or the empty set) the stage is
/// `M_0` and every transition is the identity.
pub fn open_sections(m: &PresentedModule, z: Support, p: u32) -> OpenSections {
    let n = m.algebra().n();
    let vars = z.vars(n).unwrap_or_default();
    let nvars = m.nvars();
    let denom = Monomial::of_vars(nvars, &vars, p);
    let u = Monomial::of_vars(nvars, &vars, 1);
    let degree = p as i64 * vars.len() as i64;
    let stage = m.piece(degree);
    let restriction = m.mult_map(0, &denom).map;
    let c = m.algebra().q_power(kappa(&u, &denom));
    let transition = m.scaled_mult_map(degree, &u, &c).map;
    OpenSections { support: z, level: p, denom, stage, restriction, transition }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub u: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_star: Option<u32>,
    pub revalidated: bool,
    pub status: WindowStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kernel_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub support: Support,
    pub semantics: Semantics,
    pub mode: TorsionMode,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub certificates: Vec<Certificate>,
    #[serde(skip)]
    pub subspace: Subspace,
}

impl SectionsReport {
    /// Pole order from which the stage kernels have reached this subspace.
    pub fn required_level(&self) -> u32 {
        self.certificates
            .iter()
            .map(|c| match (c.p_star, c.status) {
                (Some(p), _) => p,
                (None, WindowStatus::Stable { from }) => from,
                (None, WindowStatus::Unstable) => c.kernel_dims.len() as u32,
            })
            .max()
            .unwrap_or(1)
            .max(1)
    }

    pub fn stable(&self) -> bool {
        self.certificates.iter().all(|c| c.status != WindowStatus::Unstable)
    }
}

fn basis_text(m: &PresentedModule, s: &Subspace) -> Vec<String> {
    let piece = m.piece(0);
    s.basis().iter().map(|v| piece.format(v, m.rank())).collect()
}

fn vector_text(m: &PresentedModule, v: &SparseVec) -> String {
    m.piece(0).format(v, m.rank())
}

/// Degree-zero sections supported on `P^z`; `Stratum(n)` gives `M_0` and
/// the empty set gives `0`.
pub fn supported_sections(m: &PresentedModule, z: Support, semantics: Semantics, mode: TorsionMode) -> SectionsReport {
    let n = m.algebra().n();
    let dim0 = m.piece(0).dim();
    let field = m.field();
    let (subspace, certificates) = match z.vars(n) {
        None => (Subspace::zero(dim0, field), Vec::new()),
        Some(vars) if vars.is_empty() => (Subspace::full(dim0, field), Vec::new()),
        Some(vars) => {
            let monos: Vec<Monomial> = match semantics {
                Semantics::Product => vec![Monomial::of_vars(m.nvars(), &vars, 1)],
                Semantics::Ideal => vars.iter().map(|&x| Monomial::var(m.nvars(), x)).collect(),
            };
            torsion_intersection(m, &monos, mode)
        }
    };
    SectionsReport {
        support: z,
        semantics,
        mode,
        ambient_dim: dim0,
        dim: subspace.dim(),
        basis: basis_text(m, &subspace),
        certificates,
        subspace,
    }
}

fn torsion_intersection(m: &PresentedModule, monos: &[Monomial], mode: TorsionMode) -> (Subspace, Vec<Certificate>) {
    let mut acc = Subspace::full(m.piece(0).dim(), m.field());
    let mut certs = Vec::new();
    for u in monos {
        let r = torsion_submodule(m, u, mode);
        acc = acc.intersect(&r.degree0);
        certs.push(Certificate {
            u: u.to_string(),
            p_star: r.p_star,
            revalidated: r.revalidated,
            status: r.status,
            kernel_dims: r.kernel_dims,
        });
    }
    (acc, certs)
}

/// `Gamma_{P^{z1}} / Gamma_{P^{z2}}` with representatives in `M_0`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientSections {
    pub upper: SectionsReport,
    pub lower: SectionsReport,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub quotient: Quotient,
}

pub fn quotient_sections(
    m: &PresentedModule,
    upper: Support,
    lower: Support,
    semantics: Semantics,
    mode: TorsionMode,
) -> Result<QuotientSections, SectionsError> {
    if lower > upper {
        return Err(SectionsError::Order { upper, lower });
    }
    let sup = supported_sections(m, upper, semantics, mode);
    let sub = supported_sections(m, lower, semantics, mode);
    quotient_of(m, sup, sub)
}

fn quotient_of(m: &PresentedModule, sup: SectionsReport, sub: SectionsReport) -> Result<QuotientSections, SectionsError> {
    if let Some(w) = sub.subspace.witness_not_in(&sup.subspace) {
        return Err(SectionsError::InclusionFailure {
            upper: sup.support,
            lower: sub.support,
            semantics: sup.semantics,
            witness: vector_text(m, w),
        });
    }
    let quotient = Quotient::new(sup.ambient_dim, m.field(), sub.subspace.basis(), sup.subspace.basis());
    let basis = quotient.reps().iter().map(|v| vector_text(m, v)).collect();
    Ok(QuotientSections { dim: quotient.dim(), basis, quotient, upper: sup, lower: sub })
}

/// Truncation and scan parameters for the verifiers.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LemmaParams {
    pub p_max: u32,
    pub window: u32,
    pub semantics: Semantics,
    pub mode: TorsionMode,
    pub t_max: i64,
    pub d_max: i64,
}

impl Default for LemmaParams {
    fn default() -> Self {
        LemmaParams {
            p_max: 4,
            window: 2,
            semantics: Semantics::Ideal,
            mode: TorsionMode::Certified,
            t_max: 3,
            d_max: 6,
        }
    }
}

/// Supported sections for every stratum and the empty set, computed once.
struct SectionTable<'a> {
    m: &'a PresentedModule,
    semantics: Semantics,
    mode: TorsionMode,
    cache: BTreeMap<Support, SectionsReport>,
}

impl<'a> SectionTable<'a> {
    fn new(m: &'a PresentedModule, semantics: Semantics, mode: TorsionMode) -> Self {
        SectionTable { m, semantics, mode, cache: BTreeMap::new() }
    }

    fn get(&mut self, z: Support) -> SectionsReport {
        let (m, s, mode) = (self.m, self.semantics, self.mode);
        self.cache.entry(z).or_insert_with(|| supported_sections(m, z, s, mode)).clone()
    }

    fn quotient(&mut self, upper: Support, lower: Support) -> Result<QuotientSections, SectionsError> {
        let sup = self.get(upper);
        let sub = self.get(lower);
        quotient_of(self.m, sup, sub)
    }
}

fn strata(n: usize) -> Vec<Support> {
    (0..=n).map(Support::Stratum).collect()
}

/// Runs the checks for global/supported/quotient sections at levels `1..=p_max`.
pub fn verify_section_lemmas(m: &PresentedModule, params: &LemmaParams) -> Vec<Finding> {
    let n = m.algebra().n();
    let mut table = SectionTable::new(m, params.semantics, params.mode);
    let mut out = Vec::new();
    let dim0 = m.piece(0).dim();

    let top = table.get(Support::Stratum(n));
    out.push(Finding::check("l1(1)", top.dim == dim0, format!("sections supported on P^{} have dim {} = dim M_0", n, top.dim)));

    let empty = table.get(Support::Empty);
    out.push(Finding::check("l1(2)", empty.dim == 0, "sections supported on the empty set vanish"));
    let all: Vec<Monomial> = (0..m.nvars()).map(|x| Monomial::var(m.nvars(), x)).collect();
    let (irr, _) = torsion_intersection(m, &all, params.mode);
    out.push(Finding::info(
        "l1(2)",
        format!("degree-0 sections killed by powers of every variable (zero in the quotient category): dim {}", irr.dim()),
    ));

    for z in 0..n {
        out.extend(l1_exactness(m, z, params));
    }
    out.extend(l2_checks(&mut table, n));
    for z1 in 1..=n {
        for z2 in 0..z1 {
            out.extend(l3_check(m, z1, z2, params));
        }
    }
    out.extend(ampleness(m, params));
    out
}

/// Left exactness and surjectivity of `0 -> Gamma_{P^z} -> M_0 -> (M[S^{-1}])_0 -> 0`.
fn l1_exactness(m: &PresentedModule, z: usize, params: &LemmaParams) -> Vec<Finding> {
    let mut out = Vec::new();
    let support = Support::Stratum(z);
    let product = supported_sections(m, support, Semantics::Product, params.mode);
    let ideal = supported_sections(m, support, Semantics::Ideal, params.mode);
    let field = m.field();
    let dim0 = m.piece(0).dim();
    let kernel_at = |p: u32| Subspace::span(dim0, field, &open_sections(m, support, p).restriction.kernel());

    let mut ok = ideal.subspace.is_subspace_of(&product.subspace);
    let mut witness = None;
    for p in 1..=params.p_max {
        let k = kernel_at(p);
        if let Some(w) = k.witness_not_in(&product.subspace) {
            ok = false;
            witness = Some(vector_text(m, w));
        }
    }
    let settle = product.required_level();
    let settled = kernel_at(settle) == product.subspace;
    out.push(
        Finding::check(
            "l1(3) left",
            ok && settled,
            format!(
                "stage kernels at z={} lie in the supported sections and reach them at p={}",
                z, settle
            ),
        )
        .with_witness(witness),
    );

    // Colimit check: transport each stage p <= p_max to p_max + 1 and compare
    // with the image of M_0 there.
    let last = params.p_max + 1;
    let top = open_sections(m, support, last);
    let image = Subspace::span(top.dim(), field, top.restriction.columns());
    let mut failure = None;
    'outer: for p in 1..=params.p_max {
        let stage = open_sections(m, support, p);
        let mut carry = LinMap::identity(stage.dim(), field);
        for r in p..last {
            carry = open_sections(m, support, r).transition.compose(&carry).expect("shapes");
        }
        for j in 0..stage.dim() {
            if !image.contains(&carry.apply(&SparseVec::unit(j, field.one()))) {
                let e = SparseVec::unit(j, field.one());
                failure = Some((p, stage.format(&e, m.rank())));
                break 'outer;
            }
        }
    }
    let f = match &failure {
        None => Finding::check(
            "l1(3) surjective",
            true,
            format!("M_0 -> sections on P^{} \\ P^{} is onto stages p <= {}", m.algebra().n(), z, params.p_max),
        ),
        Some((p, w)) => Finding::check(
            "l1(3) surjective",
            false,
            format!("stage {} element not in the image of M_0 (checked at p={})", p, last),
        )
        .at(*p)
        .with_witness(Some(w.clone())),
    };
    out.push(f);
    out
}

fn l2_checks(table: &mut SectionTable<'_>, n: usize) -> Vec<Finding> {
    let mut out = Vec::new();
    let strata = strata(n);
    let sem = table.semantics;

    let mut fails = Vec::new();
    for &z1 in &strata {
        for &z2 in strata.iter().filter(|&&z2| z2 <= z1) {
            if let Err(SectionsError::InclusionFailure { witness, .. }) = table.quotient(z1, z2) {
                fails.push((z1, z2, witness));
            }
        }
    }
    if fails.is_empty() {
        out.push(Finding::check("l2(1)", true, format!("Gamma_(z2) in Gamma_(z1) for all z2 <= z1 ({} semantics)", sem)));
    }
    // One finding per failing pair so every counterexample is named.
    for (z1, z2, w) in fails {
        out.push(
            Finding::check(
                "l2(1)",
                false,
                format!("Gamma_({}) not contained in Gamma_({}) under {} semantics", z2, z1, sem),
            )
            .with_witness(Some(w)),
        );
    }

    let dim0 = table.m.piece(0).dim();
    let ok = table.quotient(Support::Stratum(n), Support::Empty).map(|q| q.dim == dim0).unwrap_or(false);
    let cone_dim = RelativeComplex::build(table.m, Support::Stratum(n), Support::Empty, 1).complex().cohomology(0).dim();
    out.push(Finding::check("l2(2)", ok && cone_dim == dim0, format!("quotient over the empty set and H^0 of the cone both have dim {}", dim0)));

    let ok = strata.iter().all(|&z| table.quotient(z, z).map(|q| q.dim == 0).unwrap_or(false));
    out.push(Finding::check("l2(3)", ok, "equal strata give a zero quotient"));

    let mut checked = 0;
    let mut bad = None;
    for &z1 in &strata {
        for &z2 in strata.iter().filter(|&&z| z <= z1) {
            for &w1 in strata.iter().filter(|&&w| w >= z1) {
                for &w2 in strata.iter().filter(|&&w| w >= z2 && w <= w1) {
                    let (Ok(a), Ok(b)) = (table.quotient(z1, z2), table.quotient(w1, w2)) else {
                        bad.get_or_insert(format!("({}, {}) -> ({}, {}): quotient undefined", z1, z2, w1, w2));
                        continue;
                    };
                    checked += 1;
                    let id = LinMap::identity(dim0, table.m.field());
                    if a.quotient.induced(&id, &b.quotient).is_none() {
                        bad.get_or_insert(format!("({}, {}) -> ({}, {})", z1, z2, w1, w2));
                    }
                }
            }
        }
    }
    out.push(match bad {
        None => Finding::check("l2(4)", true, format!("{} comparison maps well defined", checked)),
        Some(b) => Finding::check("l2(4)", false, format!("comparison map not defined: {}", b)),
    });

    let mut checked = 0;
    let mut bad = None;
    for &z1 in &strata {
        for &z2 in strata.iter().filter(|&&z| z <= z1) {
            for &z3 in strata.iter().filter(|&&z| z <= z2) {
                match l2_5(table, z1, z2, z3) {
                    Ok(true) => checked += 1,
                    Ok(false) => {
                        bad.get_or_insert(format!("({}, {}, {}) not exact", z1, z2, z3));
                    }
                    Err(e) => {
                        bad.get_or_insert(format!("({}, {}, {}): {}", z1, z2, z3, e));
                    }
                }
            }
        }
    }
    out.push(match bad {
        None => Finding::check("l2(5)", true, format!("{} short exact sequences of quotients", checked)),
        Some(b) => Finding::check("l2(5)", false, b),
    });
    out
}

fn l2_5(table: &mut SectionTable<'_>, z1: Support, z2: Support, z3: Support) -> Result<bool, SectionsError> {
    let q23 = table.quotient(z2, z3)?;
    let q13 = table.quotient(z1, z3)?;
    let q12 = table.quotient(z1, z2)?;
    let id = LinMap::identity(table.m.piece(0).dim(), table.m.field());
    let (Some(a), Some(b)) = (q23.quotient.induced(&id, &q13.quotient), q13.quotient.induced(&id, &q12.quotient)) else {
        return Ok(false);
    };
    Ok(a.is_injective() && b.is_surjective() && crate::linalg::exact_at(&a, &b))
}

/// The injection `Gamma_(z1) / Gamma_(z2) -> Ker(Gamma(P^n \ P^{z2}) -> Gamma(P^n \ P^{z1}))`,
/// sections on `P^n \ P^z` being the degree-1 cycles of the Čech complex on `S(z)`.
fn l3_check(m: &PresentedModule, z1: usize, z2: usize, params: &LemmaParams) -> Vec<Finding> {
    let mode = params.mode;
    let g1 = supported_sections(m, Support::Stratum(z1), Semantics::Ideal, mode);
    let g2 = supported_sections(m, Support::Stratum(z2), Semantics::Ideal, mode);
    let p = params.p_max.max(g1.required_level()).max(g2.required_level());
    let c2 = CechComplex::build(m, Support::Stratum(z2), p);
    let c1 = CechComplex::build(m, Support::Stratum(z1), p);
    let field = m.field();
    let gamma = c2.complex().diff(0);
    let c2_1 = c2.complex().dim(1);
    let cycles = Subspace::span(c2_1, field, &c2.complex().diff(1).kernel());
    let restrict = c2.projection_to(&c1).component(1, c2.complex(), c1.complex());
    let restrict_kernel = Subspace::span(c2_1, field, &restrict.kernel());
    let target = cycles.intersect(&restrict_kernel);
    let label = format!("l3 ({}, {})", z1, z2);

    let ker_ok = Subspace::span(gamma.src_dim(), field, &gamma.kernel()) == g2.subspace;
    let image = g1.subspace.image_under(&gamma);
    let lands = image.is_subspace_of(&target);
    let q = g1.subspace.dim().saturating_sub(g2.subspace.dim());
    let injective = ker_ok && g2.subspace.is_subspace_of(&g1.subspace) && image.dim() == q;
    let mut out = vec![Finding::check(
        label.clone(),
        lands && injective,
        format!("quotient of dim {} injects into a target of dim {} at p={}", q, target.dim(), p),
    )
    .at(p)];

    let surjective_restriction = gamma.rank() == cycles.dim();
    out.push(if surjective_restriction {
        Finding::check(
            format!("{} iso", label),
            image.dim() == target.dim(),
            "restriction from M_0 is onto, so the injection should be an isomorphism",
        )
        .at(p)
    } else {
        Finding::info(
            format!("{} iso", label),
            format!("restriction from M_0 not onto (rank {} of {}); isomorphism clause vacuous", gamma.rank(), cycles.dim()),
        )
        .at(p)
    });

    let restricted = restrict_to_stratum(m, z1);
    let between: Vec<usize> = (z2 + 1..=z1).collect();
    if !between.is_empty() {
        let nvars = m.nvars();
        let u = Monomial::of_vars(nvars, &between, 1);
        let stage_dim = restricted.piece(p as i64 * between.len() as i64).dim();
        let next = restricted.mult_map(p as i64 * between.len() as i64, &u).map.rank();
        out.push(
            Finding::info(
                format!("{} restrict-then-localize", label),
                format!("stage dim {} of M/<S({})>M inverting S({})\\S({}), rank {} into the next stage", stage_dim, z1, z2, z1, next),
            )
            .at(p),
        );
    }
    out
}

/// Surjectivity of a map on global, supported and quotient sections after twisting.
#[derive(Clone, Debug, Serialize)]
pub struct EpiRow {
    pub t: i64,
    pub global: bool,
    pub supported: BTreeMap<usize, bool>,
    pub quotient: Vec<(usize, usize, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpiScan {
    pub t_max: i64,
    pub rows: Vec<EpiRow>,
    /// Least `t` from which every tested functor stays onto through `t_max`.
    pub t0_all: Option<i64>,
    /// The same for supported sections on `P^k`, `1 <= k <= n`.
    pub t0_supported: Option<i64>,
}

pub fn epi_scan(g: &ModuleMap, semantics: Semantics, mode: TorsionMode, t_max: i64) -> EpiScan {
    let n = g.source().algebra().n();
    let mut rows = Vec::new();
    for t in 0..=t_max {
        let gt = g.twist(t);
        let f = gt.piece_map(0).map;
        let src = gt.source();
        let tgt = gt.target();
        let mut s_src = SectionTable::new(src, semantics, mode);
        let mut s_tgt = SectionTable::new(tgt, semantics, mode);
        let supported = (0..=n)
            .map(|z| {
                let a = s_src.get(Support::Stratum(z)).subspace.image_under(&f);
                (z, a == s_tgt.get(Support::Stratum(z)).subspace)
            })
            .collect();
        let mut quotient = Vec::new();
        for z1 in 0..=n {
            for z2 in 0..z1 {
                let ok = match (s_src.quotient(Support::Stratum(z1), Support::Stratum(z2)), s_tgt.quotient(Support::Stratum(z1), Support::Stratum(z2))) {
                    (Ok(a), Ok(b)) => a.quotient.induced(&f, &b.quotient).map(|h| h.is_surjective()).unwrap_or(false),
                    _ => false,
                };
                quotient.push((z1, z2, ok));
            }
        }
        rows.push(EpiRow { t, global: f.is_surjective(), supported, quotient });
    }
    let from = |pred: &dyn Fn(&EpiRow) -> bool| {
        (0..rows.len()).find(|&s| rows[s..].iter().all(pred)).map(|s| rows[s].t)
    };
    let t0_all = from(&|r: &EpiRow| r.global && r.supported.values().all(|&b| b) && r.quotient.iter().all(|q| q.2));
    let t0_supported = from(&|r: &EpiRow| r.supported.iter().filter(|(&k, _)| k >= 1).all(|(_, &b)| b));
    EpiScan { t_max, rows, t0_all, t0_supported }
}

/// `⊕ s^{-l_i}(A) -> M` with `l_i` the generator degrees.
pub fn free_cover(m: &PresentedModule) -> ModuleMap {
    let free = PresentedModule::free(m.algebra().clone(), m.degrees().to_vec());
    ModuleMap::canonical_projection(&free, m).expect("generators map onto themselves")
}

fn ampleness(m: &PresentedModule, params: &LemmaParams) -> Vec<Finding> {
    let mut out = Vec::new();
    let cover = free_cover(m);
    let bad = (0..=params.d_max).find(|&d| !cover.piece_map(d).map.is_surjective());
    out.push(Finding::check(
        "B1",
        bad.is_none(),
        match bad {
            None => format!("free cover with l = {:?} is onto in degrees 0..={}", m.degrees(), params.d_max),
            Some(d) => format!("free cover not onto in degree {}", d),
        },
    ));
    if m.degrees().iter().any(|&l| l <= 0) {
        out.push(Finding::info("B1", format!("generator degrees {:?} include non-positive l_i", m.degrees())));
    }
    let scan = epi_scan(&cover, params.semantics, params.mode, params.t_max);
    let show = |t: Option<i64>| t.map(|t| t.to_string()).unwrap_or_else(|| format!("not found <= {}", params.t_max));
    out.push(Finding::info("B2", format!("supported sections of the free cover onto from t0 = {}", show(scan.t0_supported))));
    out.push(Finding::info("l4", format!("global, supported and quotient sections onto from t0 = {}", show(scan.t0_all))));
    out
}

/// Status of a section finding list, for quick summaries.
pub fn summarize(findings: &[Finding]) -> BTreeMap<String, Status> {
    let mut out: BTreeMap<String, Status> = BTreeMap::new();
    for f in findings {
        let e = out.entry(f.claim.clone()).or_insert(f.status);
        if f.status == Status::Fail || (*e == Status::Info && f.status == Status::Pass) {
            *e = f.status;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::Algebra;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn alg(n: usize) -> Algebra {
        Algebra::new(n, Field::generic())
    }

    #[test]
    fn global_sections_examples() {
        assert_eq!(global_sections(&PresentedModule::free(alg(2), vec![0])).dim(), 1);
        assert_eq!(global_sections(&PresentedModule::free(alg(2), vec![1])).dim(), 0);
        assert_eq!(global_sections(&twist(&PresentedModule::free(alg(2), vec![0]), 1)).dim(), 3);
    }

    #[test]
    fn open_sections_line() {
        let a = PresentedModule::free(alg(1), vec![0]);
        let s = open_sections(&a, Support::Stratum(0), 2);
        assert_eq!(s.dim(), 3);
        let q = PresentedModule::cyclic_monomial_quotient(alg(1), &[mono(&[0, 1])]);
        for p in 0..3 {
            assert!(open_sections(&q, Support::Stratum(0), p).transition.is_zero());
        }
        let top = open_sections(&a, Support::Stratum(1), 3);
        assert_eq!(top.transition, LinMap::identity(1, a.field()));
    }

    #[test]
    fn semantics_differ_in_three_dimensions() {
        let q = PresentedModule::cyclic_monomial_quotient(alg(3), &[mono(&[0, 0, 1, 0])]);
        let c = TorsionMode::Certified;
        assert_eq!(supported_sections(&q, Support::Stratum(1), Semantics::Product, c).dim, 1);
        assert_eq!(supported_sections(&q, Support::Stratum(1), Semantics::Ideal, c).dim, 0);
        let err = quotient_sections(&q, Support::Stratum(2), Support::Stratum(1), Semantics::Product, c).unwrap_err();
        assert!(matches!(err, SectionsError::InclusionFailure { ref witness, .. } if witness == "1"));
        assert!(quotient_sections(&q, Support::Stratum(2), Support::Stratum(1), Semantics::Ideal, c).is_ok());
    }

    #[test]
    fn killed_variable_is_supported() {
        let q = PresentedModule::cyclic_monomial_quotient(alg(2), &[mono(&[0, 0, 1])]);
        for s in [Semantics::Ideal, Semantics::Product] {
            assert_eq!(supported_sections(&q, Support::Stratum(1), s, TorsionMode::Certified).dim, 1);
        }
    }

    #[test]
    fn quotient_examples() {
        let a = PresentedModule::free(alg(2), vec![0]);
        let c = TorsionMode::Certified;
        let q = quotient_sections(&a, Support::Stratum(2), Support::Stratum(1), Semantics::Ideal, c).unwrap();
        assert_eq!(q.dim, 1);
        let q = quotient_sections(&a, Support::Stratum(1), Support::Stratum(1), Semantics::Ideal, c).unwrap();
        assert_eq!(q.dim, 0);
    }

    #[test]
    fn restriction_hilbert() {
        let a = PresentedModule::free(alg(2), vec![0]);
        assert_eq!(restrict_to_stratum(&a, 1).hilbert_function(0..=3), vec![1, 2, 3, 4]);
        assert_eq!(restrict_to_stratum(&a, 2).hilbert_function(0..=3), a.hilbert_function(0..=3));
        let q = PresentedModule::cyclic_monomial_quotient(alg(2), &[mono(&[0, 0, 1])]);
        assert_eq!(restrict_to_stratum(&q, 1).hilbert_function(0..=4), q.hilbert_function(0..=4));
    }

    #[test]
    fn line_surjectivity_witness() {
        let a = PresentedModule::free(alg(1), vec![0]);
        let f = verify_section_lemmas(&a, &LemmaParams { p_max: 2, ..Default::default() });
        let s = f.iter().find(|f| f.claim == "l1(3) surjective").unwrap();
        assert_eq!(s.status, Status::Fail);
        assert_eq!(s.witness.as_deref(), Some("x2^-1*x1"));
        for claim in ["l1(1)", "l1(2)", "l1(3) left", "l2(1)", "l2(2)", "l2(3)", "l2(4)", "l2(5)", "l3 (1, 0)", "B1"] {
            let st = summarize(&f);
            assert_eq!(st[claim], Status::Pass, "{}", claim);
        }
    }
}
