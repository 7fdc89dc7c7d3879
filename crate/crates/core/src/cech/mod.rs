//! Pole-order truncations of the degree-zero stable Koszul (Čech) complex.
//!
//! For a variable set `S` and level `p` the term in degree `k` is
//! `⊕_{|J| = k} u_J^{-p} M_{p|J|}`, an element of block `J` being the fraction
//! `D_J^{-1} m` with `D_J = u_J^p`. Rewriting a fraction over a larger
//! denominator `D' = w D` (exponentwise) uses `D' = q^{kappa(w, D)} w * D`, so
//! `D^{-1} m = D'^{-1} (q^{kappa(w, D)} w * m)`. The same rule gives both the
//! differentials and the level transitions, which keeps everything path
//! independent.

pub mod les;
pub mod relative;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{ChainMap, Complex};
use crate::linalg::{offsets, LinMap, SparseVec, Subspace};
use crate::modpres::{format_terms, ModuleMap, PresentedModule};
use crate::scalar::Scalar;
use crate::skewalg::{kappa, Monomial};

pub use relative::RelativeComplex;

/// A stratum `P^z` (inverting `x_{z+2}, ..., x_{n+1}`) or the empty set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Support {
    Empty,
    Stratum(usize),
}

impl Support {
    /// Zero-based indices of the inverted variables; `None` for the empty set.
    pub fn vars(&self, n: usize) -> Option<Vec<usize>> {
        match *self {
            Support::Empty => None,
            Support::Stratum(z) => Some((z + 1..=n).collect()),
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Empty => f.write_str("empty"),
            Support::Stratum(z) => write!(f, "{}", z),
        }
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Support::Empty => s.serialize_str("empty"),
            Support::Stratum(z) => s.serialize_u64(*z as u64),
        }
    }
}

/// Normalized `u_J^p`.
pub fn denominator(nvars: usize, subset: &[usize], p: u32) -> Monomial {
    Monomial::of_vars(nvars, subset, p)
}

/// `q^{kappa(w, D)}`: rewriting over `w D` multiplies numerators by this times `w`.
pub fn reexpress_scalar(m: &PresentedModule, w: &Monomial, d: &Monomial) -> Scalar {
    m.algebra().q_power(kappa(w, d))
}

#[derive(Clone, Debug)]
pub struct Block {
    pub subset: Vec<usize>,
    pub denom: Monomial,
    /// Internal degree of the numerator piece, `p |J|`.
    pub degree: i64,
    pub offset: usize,
    pub dim: usize,
}

/// The truncated Čech complex of `M` at level `p`.
#[derive(Clone, Debug)]
pub struct CechComplex {
    module: PresentedModule,
    support: Support,
    vars: Vec<usize>,
    level: u32,
    blocks: BTreeMap<i64, Vec<Block>>,
    complex: Complex,
}

fn subsets_of_size(vars: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(vars: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..vars.len() {
            cur.push(vars[i]);
            rec(vars, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, k, 0, &mut Vec::new(), &mut out);
    out
}

impl CechComplex {
    pub fn build(m: &PresentedModule, support: Support, p: u32) -> CechComplex {
        let field = m.field();
        let nvars = m.nvars();
        let Some(vars) = support.vars(m.algebra().n()) else {
            return CechComplex {
                module: m.clone(),
                support,
                vars: Vec::new(),
                level: p,
                blocks: BTreeMap::new(),
                complex: Complex::zero(field),
            };
        };
        let mut blocks = BTreeMap::new();
        for k in 0..=vars.len() {
            let mut list = Vec::new();
            let mut offset = 0;
            for subset in subsets_of_size(&vars, k) {
                let degree = p as i64 * k as i64;
                let dim = m.piece(degree).dim();
                list.push(Block { denom: denominator(nvars, &subset, p), subset, degree, offset, dim });
                offset += dim;
            }
            blocks.insert(k as i64, list);
        }
        let dims: Vec<usize> = (0..=vars.len() as i64).map(|k| blocks[&k].iter().map(|b| b.dim).sum()).collect();
        let mut diffs = Vec::new();
        for k in 0..vars.len() as i64 {
            let src = &blocks[&k];
            let tgt = &blocks[&(k + 1)];
            let mut parts: BTreeMap<(usize, usize), LinMap> = BTreeMap::new();
            for (j, b) in src.iter().enumerate() {
                for &x in vars.iter().filter(|x| !b.subset.contains(x)) {
                    let mut bigger = b.subset.clone();
                    bigger.push(x);
                    bigger.sort_unstable();
                    let i = tgt.iter().position(|t| t.subset == bigger).expect("subset present");
                    let before = b.subset.iter().filter(|&&y| y < x).count();
                    let w = Monomial::var(nvars, x).pow(p);
                    let mut c = reexpress_scalar(m, &w, &b.denom);
                    if before % 2 == 1 {
                        c = -c;
                    }
                    parts.insert((i, j), m.scaled_mult_map(b.degree, &w, &c).map);
                }
            }
            let sizes = |l: &Vec<Block>| l.iter().map(|b| b.dim).collect::<Vec<_>>();
            diffs.push(LinMap::from_blocks(&sizes(src), &sizes(tgt), field, |i, j| parts.get(&(i, j)).cloned()));
        }
        let complex = Complex::new(field, 0, dims, diffs);
        CechComplex { module: m.clone(), support, vars, level: p, blocks, complex }
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn blocks(&self, k: i64) -> &[Block] {
        self.blocks.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `C(p) -> C(p+1)`: on block `J`, `m -> q^{kappa(u_J, u_J^p)} u_J * m`.
    pub fn transition_to(&self, next: &CechComplex) -> ChainMap {
        assert_eq!(next.level, self.level + 1);
        let m = &self.module;
        let mut f = ChainMap::new(0);
        for (&k, src) in &self.blocks {
            let tgt = next.blocks(k);
            let maps: Vec<LinMap> = src
                .iter()
                .map(|b| {
                    let u = denominator(m.nvars(), &b.subset, 1);
                    let c = reexpress_scalar(m, &u, &b.denom);
                    m.scaled_mult_map(b.degree, &u, &c).map
                })
                .collect();
            let ss: Vec<usize> = src.iter().map(|b| b.dim).collect();
            let ts: Vec<usize> = tgt.iter().map(|b| b.dim).collect();
            f.maps.insert(k, LinMap::from_blocks(&ss, &ts, m.field(), |i, j| (i == j).then(|| maps[j].clone())));
        }
        f
    }

    /// The projection onto the blocks `J ⊆ S(target)`; needs `S(target) ⊆ S(self)`.
    pub fn projection_to(&self, target: &CechComplex) -> ChainMap {
        assert!(target.vars.iter().all(|v| self.vars.contains(v)) || self.support == Support::Empty);
        let mut f = ChainMap::new(0);
        for (&k, src) in &self.blocks {
            let tgt = target.blocks(k);
            let ss: Vec<usize> = src.iter().map(|b| b.dim).collect();
            let ts: Vec<usize> = tgt.iter().map(|b| b.dim).collect();
            let field = self.module.field();
            let map = LinMap::from_blocks(&ss, &ts, field, |i, j| {
                (tgt[i].subset == src[j].subset).then(|| LinMap::identity(src[j].dim, field))
            });
            f.maps.insert(k, map);
        }
        f
    }

    /// Blockwise action of a degree-zero module map `M -> N` on complexes
    /// built with the same support and level.
    pub fn map_along(f: &ModuleMap, src: &CechComplex, tgt: &CechComplex) -> ChainMap {
        assert_eq!(f.shift(), 0, "chain maps need degree-zero module maps");
        let mut out = ChainMap::new(0);
        for (&k, sb) in &src.blocks {
            let tb = tgt.blocks(k);
            let maps: Vec<LinMap> = sb.iter().map(|b| f.piece_map(b.degree).map).collect();
            let ss: Vec<usize> = sb.iter().map(|b| b.dim).collect();
            let ts: Vec<usize> = tb.iter().map(|b| b.dim).collect();
            out.maps.insert(
                k,
                LinMap::from_blocks(&ss, &ts, src.module.field(), |i, j| (i == j).then(|| maps[j].clone())),
            );
        }
        out
    }

    /// Text form of a degree-`k` vector, e.g. `x2^-1*x1`.
    pub fn format(&self, k: i64, v: &SparseVec) -> String {
        let rank = self.module.rank();
        let mut terms = Vec::new();
        for b in self.blocks(k) {
            let piece = self.module.piece(b.degree);
            for (i, c) in v.slice(b.offset, b.dim).entries() {
                let (t, m) = piece.basis_label(*i);
                terms.push((c.clone(), fraction_text(&b.denom, m), *t));
            }
        }
        format_terms(terms.into_iter(), rank)
    }

    /// `Ker(M_0 -> ⊕_{x in S} x^{-p} M_p)`, the stage-`p` ideal-semantics kernel.
    pub fn single_localization_kernel(&self) -> Subspace {
        let m0 = self.module.piece(0).dim();
        let field = self.module.field();
        if self.support == Support::Empty {
            return Subspace::zero(m0, field);
        }
        Subspace::span(m0, field, &self.complex.diff(0).kernel())
    }
}

/// `x2^-1*x1` style text of `D^{-1} m`.
pub fn fraction_text(denom: &Monomial, m: &Monomial) -> String {
    let mut parts: Vec<String> = denom
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, e)| format!("x{}^-{}", i + 1, e))
        .collect();
    if !m.is_one() || parts.is_empty() {
        parts.push(m.to_string());
    }
    parts.join("*")
}

/// One truncation level of a cohomology table.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub p: u32,
    pub term_dims: BTreeMap<i64, usize>,
    pub cohomology: BTreeMap<i64, usize>,
    pub d_squared_zero: bool,
    pub euler_ok: bool,
    /// Transition to the next level commutes with the differentials.
    pub transition_commutes: Option<bool>,
    /// Ranks of `H^i(p) -> H^i(p+1)`.
    pub transition_ranks: Option<BTreeMap<i64, usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub levels: Vec<LevelReport>,
    /// `Some(d)` when transitions were isomorphisms for `W` consecutive levels.
    pub stabilized: BTreeMap<i64, Option<usize>>,
}

impl CohomologyTable {
    pub fn dims_at(&self, p: u32) -> Option<&BTreeMap<i64, usize>> {
        self.levels.iter().find(|l| l.p == p).map(|l| &l.cohomology)
    }

    pub fn structural_ok(&self) -> bool {
        self.levels.iter().all(|l| l.d_squared_zero && l.euler_ok && l.transition_commutes != Some(false))
    }
}

/// Tabulates cohomology of `complexes[i]` (level `levels[i]`) with the given
/// transitions between consecutive levels.
pub fn tabulate(levels: &[(u32, Complex)], transitions: &[ChainMap], window: u32) -> CohomologyTable {
    let mut out = Vec::new();
    for (idx, (p, c)) in levels.iter().enumerate() {
        let (commutes, ranks) = match (transitions.get(idx), levels.get(idx + 1)) {
            (Some(t), Some((_, next))) => {
                let ranks = c.degrees().chain(next.degrees()).map(|k| (k, t.induced(k, c, next).rank())).collect();
                (Some(t.commutes(c, next, false)), Some(ranks))
            }
            _ => (None, None),
        };
        out.push(LevelReport {
            p: *p,
            term_dims: c.degrees().map(|k| (k, c.dim(k))).collect(),
            cohomology: c.cohomology_dims(),
            d_squared_zero: c.is_complex(),
            euler_ok: c.euler_characteristic() == c.cohomological_euler(),
            transition_commutes: commutes,
            transition_ranks: ranks,
        });
    }
    let mut stabilized = BTreeMap::new();
    let degrees: Vec<i64> = out.iter().flat_map(|l| l.cohomology.keys().copied()).collect();
    for k in degrees {
        let iso: Vec<bool> = out
            .iter()
            .zip(out.iter().skip(1))
            .map(|(a, b)| {
                let da = a.cohomology.get(&k).copied().unwrap_or(0);
                let db = b.cohomology.get(&k).copied().unwrap_or(0);
                let r = a.transition_ranks.as_ref().and_then(|r| r.get(&k).copied()).unwrap_or(0);
                da == db && r == da
            })
            .collect();
        let w = window.max(1) as usize;
        let found = (0..iso.len()).find(|&s| s + w <= iso.len() && iso[s..s + w].iter().all(|&b| b));
        let value = found.map(|s| out[s].cohomology.get(&k).copied().unwrap_or(0));
        stabilized.insert(k, value);
    }
    CohomologyTable { levels: out, stabilized }
}

/// Cohomology table of the absolute complex for `p = 1..=p_max`.
pub fn complex_cohomology(m: &PresentedModule, support: Support, p_max: u32, window: u32) -> CohomologyTable {
    let complexes: Vec<CechComplex> = (1..=p_max).map(|p| CechComplex::build(m, support, p)).collect();
    let transitions: Vec<ChainMap> = complexes.windows(2).map(|w| w[0].transition_to(&w[1])).collect();
    let levels: Vec<(u32, Complex)> = complexes.iter().map(|c| (c.level(), c.complex().clone())).collect();
    tabulate(&levels, &transitions, window)
}

/// Dimensions of the truncated terms, for reports.
pub fn term_offsets(blocks: &[Block]) -> Vec<usize> {
    offsets(&blocks.iter().map(|b| b.dim).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::Algebra;

    fn free(n: usize, f: Field) -> PresentedModule {
        PresentedModule::free(Algebra::new(n, f), vec![0])
    }

    #[test]
    fn term_dimensions_n2() {
        let c = CechComplex::build(&free(2, Field::generic()), Support::Stratum(0), 1);
        let dims: Vec<usize> = (0..=2).map(|k| c.complex().dim(k)).collect();
        assert_eq!(dims, vec![1, 6, 6]);
        assert!(c.complex().is_complex());
    }

    #[test]
    fn projective_line_h1_grows() {
        for f in [Field::rationals(), Field::generic(), Field::cyclotomic(4)] {
            let t = complex_cohomology(&free(1, f), Support::Stratum(0), 5, 2);
            for l in &t.levels {
                assert_eq!(l.cohomology[&0], 0);
                assert_eq!(l.cohomology[&1], l.p as usize);
                assert!(l.d_squared_zero && l.euler_ok);
                assert_ne!(l.transition_commutes, Some(false));
            }
            assert_eq!(t.stabilized[&1], None);
        }
    }

    #[test]
    fn top_stratum_is_m0() {
        let c = CechComplex::build(&free(2, Field::generic()), Support::Stratum(2), 3);
        assert_eq!(c.complex().cohomology_dims(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn transitions_commute_for_n2() {
        let m = free(2, Field::generic());
        let a = CechComplex::build(&m, Support::Stratum(0), 1);
        let b = CechComplex::build(&m, Support::Stratum(0), 2);
        assert!(a.transition_to(&b).commutes(a.complex(), b.complex(), false));
    }

    #[test]
    fn fraction_text_form() {
        let d = Monomial::new(vec![0, 1]);
        assert_eq!(fraction_text(&d, &Monomial::new(vec![1, 0])), "x2^-1*x1");
        assert_eq!(fraction_text(&Monomial::new(vec![0, 0]), &Monomial::new(vec![0, 0])), "1");
    }
}
