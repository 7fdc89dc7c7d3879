//! Connecting homomorphisms and long exact sequences.

use serde::Serialize;

use crate::complex::{ChainMap, Cohomology, Complex};
use crate::linalg::{exact_at, LinMap};
use crate::modpres::{ModuleError, ModuleMap, PresentedModule, ShortExactSequence};

use super::relative::{RelativeComplex, Triple};
use super::Support;

/// A linear map between cohomology spaces, in class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub from_degree: i64,
    pub to_degree: i64,
    pub map: LinMap,
}

/// One long exact sequence at one level: the spaces in order and exactness at
/// every position, ends included (a zero map is attached on both sides).
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub label: String,
    pub level: u32,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub exact_at: Vec<bool>,
    pub chain_maps_ok: bool,
    pub exact: bool,
}

fn assemble(label: String, level: u32, maps: Vec<LinMap>, chain_maps_ok: bool) -> LesReport {
    let field = maps[0].field().clone();
    let mut all = Vec::with_capacity(maps.len() + 2);
    all.push(LinMap::zero(0, maps[0].src_dim(), &field));
    all.extend(maps);
    let last = all.last().expect("nonempty").tgt_dim();
    all.push(LinMap::zero(last, 0, &field));
    let exact_at: Vec<bool> = all.windows(2).map(|w| exact_at(&w[0], &w[1])).collect();
    let dims = all.iter().skip(1).map(|f| f.src_dim()).collect();
    let ranks = all[1..all.len() - 1].iter().map(|f| f.rank()).collect();
    let exact = chain_maps_ok && exact_at.iter().all(|&b| b);
    LesReport { label, level, dims, ranks, exact_at, chain_maps_ok, exact }
}

fn span(cs: &[&Complex]) -> (i64, i64) {
    let lo = cs.iter().map(|c| c.lo()).min().unwrap_or(0);
    let hi = cs.iter().map(|c| c.hi()).max().unwrap_or(0);
    (lo - 1, hi + 1)
}

/// `delta^i: H^i(Rel(a, b)) -> H^{i+1}(Rel(b, c))` of a triple.
pub fn triple_connecting_map(m: &PresentedModule, abc: (Support, Support, Support), i: i64, p: u32) -> CohomologyMap {
    let t = Triple::build(m, abc.0, abc.1, abc.2, p);
    CohomologyMap { from_degree: i, to_degree: i + 1, map: t.delta.induced(i, t.ab.complex(), t.bc.complex()) }
}

/// The sequence `... H^i(bc) -> H^i(ac) -> H^i(ab) -> H^{i+1}(bc) ...`.
pub fn triple_les(m: &PresentedModule, abc: (Support, Support, Support), p: u32) -> LesReport {
    let t = Triple::build(m, abc.0, abc.1, abc.2, p);
    let (lo, hi) = span(&[t.bc.complex(), t.ac.complex(), t.ab.complex()]);
    let mut maps = Vec::new();
    for i in lo..=hi {
        maps.push(t.alpha.induced(i, t.bc.complex(), t.ac.complex()));
        maps.push(t.beta.induced(i, t.ac.complex(), t.ab.complex()));
        if i < hi {
            maps.push(t.delta.induced(i, t.ab.complex(), t.bc.complex()));
        }
    }
    let label = format!("triple ({}, {}, {})", abc.0, abc.1, abc.2);
    assemble(label, p, maps, t.maps_compatible())
}

/// The zig-zag `H^i(C3) -> H^{i+1}(C1)` of a degreewise short exact
/// sequence of complexes: lift along `g`, apply `d`, pull back along `f`.
pub fn zigzag(
    f: &ChainMap,
    g: &ChainMap,
    c1: &Complex,
    c2: &Complex,
    c3: &Complex,
    i: i64,
) -> Option<CohomologyMap> {
    let h3: Cohomology = c3.cohomology(i);
    let h1 = c1.cohomology(i + 1);
    let gi = g.component(i, c2, c3);
    let fi = f.component(i + 1, c1, c2);
    let d2 = c2.diff(i);
    let mut cols = Vec::with_capacity(h3.dim());
    for rep in h3.reps() {
        let b = gi.preimage(rep)?;
        let a = fi.preimage(&d2.apply(&b))?;
        cols.push(h1.class_of(&a)?);
    }
    Some(CohomologyMap {
        from_degree: i,
        to_degree: i + 1,
        map: LinMap::from_columns(h3.dim(), h1.dim(), cols, c1.field()),
    })
}

/// Relative complexes of the three modules of `ses` and the chain maps between them.
pub struct SesComplexes {
    pub r1: RelativeComplex,
    pub r2: RelativeComplex,
    pub r3: RelativeComplex,
    pub f: ChainMap,
    pub g: ChainMap,
}

impl SesComplexes {
    pub fn build(ses: &ShortExactSequence, a: Support, b: Support, p: u32) -> Result<SesComplexes, ModuleError> {
        if ses.f.shift() != 0 || ses.g.shift() != 0 {
            return Err(ModuleError::Composition("short exact sequence maps must have degree zero".into()));
        }
        let n = ses.f.source().algebra().n();
        let top = b.vars(n).map(|v| v.len()).unwrap_or(0) as i64;
        for k in 0..=top {
            ses.check_degree(k * p as i64)?;
        }
        let r1 = RelativeComplex::build(ses.f.source(), a, b, p);
        let r2 = RelativeComplex::build(ses.f.target(), a, b, p);
        let r3 = RelativeComplex::build(ses.g.target(), a, b, p);
        let f = RelativeComplex::map_along(&ses.f, &r1, &r2);
        let g = RelativeComplex::map_along(&ses.g, &r2, &r3);
        Ok(SesComplexes { r1, r2, r3, f, g })
    }
}

/// `delta^i` of a short exact sequence of modules, on `Rel(a, b)` at level `p`.
pub fn ses_connecting_map(
    ses: &ShortExactSequence,
    ab: (Support, Support),
    i: i64,
    p: u32,
) -> Result<CohomologyMap, ModuleError> {
    let s = SesComplexes::build(ses, ab.0, ab.1, p)?;
    zigzag(&s.f, &s.g, s.r1.complex(), s.r2.complex(), s.r3.complex(), i)
        .ok_or(ModuleError::NotExact { degree: i, message: "zig-zag lift failed".into() })
}

/// `... H^i(M1) -> H^i(M2) -> H^i(M3) -> H^{i+1}(M1) ...` on `Rel(a, b)`.
pub fn ses_les(ses: &ShortExactSequence, ab: (Support, Support), p: u32) -> Result<LesReport, ModuleError> {
    let s = SesComplexes::build(ses, ab.0, ab.1, p)?;
    let (c1, c2, c3) = (s.r1.complex(), s.r2.complex(), s.r3.complex());
    let ok = s.f.commutes(c1, c2, false) && s.g.commutes(c2, c3, false);
    let (lo, hi) = span(&[c1, c2, c3]);
    let mut maps = Vec::new();
    for i in lo..=hi {
        maps.push(s.f.induced(i, c1, c2));
        maps.push(s.g.induced(i, c2, c3));
        if i < hi {
            let d = zigzag(&s.f, &s.g, c1, c2, c3, i)
                .ok_or(ModuleError::NotExact { degree: i, message: "zig-zag lift failed".into() })?;
            maps.push(d.map);
        }
    }
    let label = format!("module sequence on ({}, {})", ab.0, ab.1);
    Ok(assemble(label, p, maps, ok))
}

/// Naturality of the triple connecting map along a degree-zero module map.
pub fn delta_natural(f: &ModuleMap, abc: (Support, Support, Support), p: u32) -> bool {
    let t1 = Triple::build(f.source(), abc.0, abc.1, abc.2, p);
    let t2 = Triple::build(f.target(), abc.0, abc.1, abc.2, p);
    let fab = RelativeComplex::map_along(f, &t1.ab, &t2.ab);
    let fbc = RelativeComplex::map_along(f, &t1.bc, &t2.bc);
    let (lo, hi) = span(&[t1.ab.complex(), t1.bc.complex()]);
    (lo..=hi).all(|i| {
        let left = t2
            .delta
            .induced(i, t2.ab.complex(), t2.bc.complex())
            .compose(&fab.induced(i, t1.ab.complex(), t2.ab.complex()))
            .expect("shapes");
        let right = fbc
            .induced(i + 1, t1.bc.complex(), t2.bc.complex())
            .compose(&t1.delta.induced(i, t1.ab.complex(), t1.bc.complex()))
            .expect("shapes");
        left == right
    })
}

/// Result of the `t`-scan: the least `t` with vanishing `H^{>0}` at every tested level.
#[derive(Clone, Debug, Serialize)]
pub struct TwistScan {
    pub upper: Support,
    pub lower: Support,
    pub t_max: i64,
    pub levels: Vec<u32>,
    /// `(t, max over levels of sum_{i>0} dim H^i)`.
    pub higher_dims: Vec<(i64, usize)>,
    pub t0: Option<i64>,
}

pub fn twist_scan(m: &PresentedModule, ab: (Support, Support), t_max: i64, p_max: u32) -> TwistScan {
    let levels: Vec<u32> = (1..=p_max).collect();
    let mut higher_dims = Vec::new();
    for t in 0..=t_max {
        let mt = m.twist(t);
        let worst = levels
            .iter()
            .map(|&p| {
                let r = RelativeComplex::build(&mt, ab.0, ab.1, p);
                r.complex().cohomology_dims().iter().filter(|(&k, _)| k > 0).map(|(_, &d)| d).sum::<usize>()
            })
            .max()
            .unwrap_or(0);
        higher_dims.push((t, worst));
    }
    let t0 = higher_dims.iter().find(|(_, d)| *d == 0).map(|(t, _)| *t);
    TwistScan { upper: ab.0, lower: ab.1, t_max, levels, higher_dims, t0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::{Algebra, Monomial};

    #[test]
    fn triple_les_projective_plane() {
        for f in [Field::rationals(), Field::generic()] {
            let m = PresentedModule::free(Algebra::new(2, f), vec![0]);
            for p in 1..=2 {
                let r = triple_les(&m, (Support::Stratum(2), Support::Stratum(1), Support::Stratum(0)), p);
                assert!(r.exact, "{:?}", r);
            }
        }
    }

    #[test]
    fn ses_les_line() {
        let a = Algebra::new(1, Field::generic());
        let m1 = PresentedModule::free(a.clone(), vec![1]);
        let m2 = PresentedModule::free(a.clone(), vec![0]);
        let m3 = PresentedModule::cyclic_monomial_quotient(a.clone(), &[Monomial::new(vec![1, 0])]);
        let f = ModuleMap::new(m1, m2.clone(), vec![vec![a.var(0)]], 0).unwrap();
        let g = ModuleMap::canonical_projection(&m2, &m3).unwrap();
        let ses = ShortExactSequence::new(f, g, 0..4).unwrap();
        for p in 1..=3 {
            let r = ses_les(&ses, (Support::Stratum(0), Support::Empty), p).unwrap();
            assert!(r.exact, "{:?}", r);
            let r = ses_les(&ses, (Support::Stratum(1), Support::Stratum(0)), p).unwrap();
            assert!(r.exact, "{:?}", r);
        }
    }

    #[test]
    fn triple_delta_rank() {
        let m = PresentedModule::free(Algebra::new(1, Field::generic()), vec![0]);
        for p in 1..=3 {
            let d = triple_connecting_map(&m, (Support::Stratum(1), Support::Stratum(0), Support::Empty), 0, p);
            assert_eq!(d.map.rank(), p as usize);
        }
    }

    #[test]
    fn delta_is_natural_for_projection() {
        let a = Algebra::new(2, Field::generic());
        let free = PresentedModule::free(a.clone(), vec![0]);
        let q = PresentedModule::cyclic_monomial_quotient(a, &[Monomial::new(vec![0, 0, 1])]);
        let pr = ModuleMap::canonical_projection(&free, &q).unwrap();
        for p in 1..=2 {
            assert!(delta_natural(&pr, (Support::Stratum(2), Support::Stratum(1), Support::Stratum(0)), p));
        }
    }
}
