//! Relative complexes `Rel(a, b) = Cone(C_b -> C_a)` for strata `a >= b`, and
//! the three maps attached to a triple `a >= b >= c`:
//!
//! * `alpha: Rel(b, c) -> Rel(a, c)`, `(x, y) -> (x, pi y)`
//! * `beta:  Rel(a, c) -> Rel(a, b)`, `(x, y) -> (pi x, y)`
//! * `delta: Rel(a, b) -> Rel(b, c)[1]`, `(x, y) -> (0, x)`
//!
//! `delta` anticommutes with the differentials; that does not change the
//! induced maps' kernels and images, so the long exact sequence is unaffected.

use std::collections::BTreeMap;

use crate::complex::{cone, ChainMap, Complex};
use crate::linalg::{LinMap, SparseVec};
use crate::modpres::{ModuleMap, PresentedModule};

use super::{CechComplex, Support};

#[derive(Clone, Debug)]
pub struct RelativeComplex {
    upper: Support,
    lower: Support,
    level: u32,
    source: CechComplex,
    target: CechComplex,
    projection: ChainMap,
    cone: Complex,
}

impl RelativeComplex {
    /// Needs `upper >= lower` (the upper stratum inverts fewer variables).
    pub fn build(m: &PresentedModule, upper: Support, lower: Support, p: u32) -> RelativeComplex {
        assert!(upper >= lower, "relative complex needs upper >= lower");
        let source = CechComplex::build(m, lower, p);
        let target = CechComplex::build(m, upper, p);
        RelativeComplex::from_parts(upper, lower, source, target)
    }

    fn from_parts(upper: Support, lower: Support, source: CechComplex, target: CechComplex) -> RelativeComplex {
        let projection = source.projection_to(&target);
        let cone = cone(&projection, source.complex(), target.complex());
        RelativeComplex { upper, lower, level: source.level(), source, target, projection, cone }
    }

    pub fn upper(&self) -> Support {
        self.upper
    }

    pub fn lower(&self) -> Support {
        self.lower
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn source(&self) -> &CechComplex {
        &self.source
    }

    pub fn target(&self) -> &CechComplex {
        &self.target
    }

    pub fn projection(&self) -> &ChainMap {
        &self.projection
    }

    pub fn complex(&self) -> &Complex {
        &self.cone
    }

    /// `(x, y)` with `x` in `source^{k+1}` and `y` in `target^k`.
    pub fn split(&self, k: i64, v: &SparseVec) -> (SparseVec, SparseVec) {
        let a = self.source.complex().dim(k + 1);
        (v.slice(0, a), v.slice(a, self.target.complex().dim(k)))
    }

    pub fn join(&self, k: i64, x: &SparseVec, y: &SparseVec) -> SparseVec {
        x.concat(self.source.complex().dim(k + 1), y)
    }

    pub fn format(&self, k: i64, v: &SparseVec) -> String {
        let (x, y) = self.split(k, v);
        if x.is_zero() {
            return self.target.format(k, &y);
        }
        format!("({}, {})", self.source.format(k + 1, &x), self.target.format(k, &y))
    }

    pub fn transition_to(&self, next: &RelativeComplex) -> ChainMap {
        let fx = self.source.transition_to(&next.source);
        let fy = self.target.transition_to(&next.target);
        cone_map(self, next, &fx, &fy)
    }

    /// Componentwise action of a degree-zero module map.
    pub fn map_along(f: &ModuleMap, src: &RelativeComplex, tgt: &RelativeComplex) -> ChainMap {
        let fx = CechComplex::map_along(f, &src.source, &tgt.source);
        let fy = CechComplex::map_along(f, &src.target, &tgt.target);
        cone_map(src, tgt, &fx, &fy)
    }
}

fn degree_range(a: &Complex, b: &Complex) -> std::ops::RangeInclusive<i64> {
    a.lo().min(b.lo()) - 1..=a.hi().max(b.hi()) + 1
}

/// `(x, y) -> (fx x, fy y)` between two cones.
pub fn cone_map(src: &RelativeComplex, tgt: &RelativeComplex, fx: &ChainMap, fy: &ChainMap) -> ChainMap {
    let field = src.cone.field();
    let mut out = ChainMap::new(0);
    for k in degree_range(&src.cone, &tgt.cone) {
        let x = fx.component(k + 1, src.source.complex(), tgt.source.complex());
        let y = fy.component(k, src.target.complex(), tgt.target.complex());
        let map = LinMap::from_blocks(
            &[x.src_dim(), y.src_dim()],
            &[x.tgt_dim(), y.tgt_dim()],
            field,
            |i, j| match (i, j) {
                (0, 0) => Some(x.clone()),
                (1, 1) => Some(y.clone()),
                _ => None,
            },
        );
        out.maps.insert(k, map);
    }
    out
}

/// The complexes and maps of a triple `a >= b >= c` at one level.
#[derive(Clone, Debug)]
pub struct Triple {
    pub bc: RelativeComplex,
    pub ac: RelativeComplex,
    pub ab: RelativeComplex,
    pub alpha: ChainMap,
    pub beta: ChainMap,
    pub delta: ChainMap,
}

impl Triple {
    pub fn build(m: &PresentedModule, a: Support, b: Support, c: Support, p: u32) -> Triple {
        assert!(a >= b && b >= c, "triple must be weakly decreasing");
        let ca = CechComplex::build(m, a, p);
        let cb = CechComplex::build(m, b, p);
        let cc = CechComplex::build(m, c, p);
        let bc = RelativeComplex::from_parts(b, c, cc.clone(), cb.clone());
        let ac = RelativeComplex::from_parts(a, c, cc.clone(), ca.clone());
        let ab = RelativeComplex::from_parts(a, b, cb.clone(), ca.clone());
        let id_c = identity(cc.complex());
        let id_a = identity(ca.complex());
        let alpha = cone_map(&bc, &ac, &id_c, &cb.projection_to(&ca));
        let beta = cone_map(&ac, &ab, &cc.projection_to(&cb), &id_a);
        let delta = connecting(&ab, &bc);
        Triple { bc, ac, ab, alpha, beta, delta }
    }

    /// `alpha`, `beta` commute and `delta` anticommutes with the differentials.
    pub fn maps_compatible(&self) -> bool {
        self.alpha.commutes(self.bc.complex(), self.ac.complex(), false)
            && self.beta.commutes(self.ac.complex(), self.ab.complex(), false)
            && self.delta.commutes(self.ab.complex(), self.bc.complex(), true)
    }
}

fn identity(c: &Complex) -> ChainMap {
    let mut f = ChainMap::new(0);
    for k in c.degrees() {
        f.maps.insert(k, LinMap::identity(c.dim(k), c.field()));
    }
    f
}

/// `delta: Rel(a, b)^k -> Rel(b, c)^{k+1}`, `(x, y) -> (0, x)`; the `C_b`
/// factor of the first cone is the target factor of the second.
pub fn connecting(ab: &RelativeComplex, bc: &RelativeComplex) -> ChainMap {
    assert_eq!(ab.lower, bc.upper, "connecting map needs Rel(a, b) and Rel(b, c)");
    let field = ab.cone.field();
    let mut out = ChainMap::new(1);
    let cb = ab.source.complex();
    for k in degree_range(&ab.cone, &bc.cone) {
        let x_dim = cb.dim(k + 1);
        let map = LinMap::from_blocks(
            &[x_dim, ab.target.complex().dim(k)],
            &[bc.source.complex().dim(k + 2), x_dim],
            field,
            |i, j| ((i, j) == (1, 0)).then(|| LinMap::identity(x_dim, field)),
        );
        out.maps.insert(k, map);
    }
    out
}

/// `H^0(Rel(a, b))` dimensions keyed by level, convenient for reports.
pub fn h0_dims(m: &PresentedModule, a: Support, b: Support, levels: impl IntoIterator<Item = u32>) -> BTreeMap<u32, usize> {
    levels
        .into_iter()
        .map(|p| (p, RelativeComplex::build(m, a, b, p).complex().cohomology(0).dim()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::Algebra;

    fn free(n: usize) -> PresentedModule {
        PresentedModule::free(Algebra::new(n, Field::generic()), vec![0])
    }

    #[test]
    fn projective_line_relative_h0() {
        let m = free(1);
        for p in 1..=4 {
            let r = RelativeComplex::build(&m, Support::Stratum(1), Support::Stratum(0), p);
            assert!(r.complex().is_complex());
            let dims = r.complex().cohomology_dims();
            assert_eq!(dims[&0], p as usize + 1);
            assert!(dims.iter().all(|(&k, &d)| k == 0 || d == 0));
        }
    }

    #[test]
    fn equal_strata_give_acyclic_cone() {
        let m = free(2);
        let r = RelativeComplex::build(&m, Support::Stratum(1), Support::Stratum(1), 2);
        assert!(r.complex().cohomology_dims().values().all(|&d| d == 0));
    }

    #[test]
    fn empty_lower_is_absolute() {
        let m = free(2);
        let r = RelativeComplex::build(&m, Support::Stratum(0), Support::Empty, 2);
        let c = CechComplex::build(&m, Support::Stratum(0), 2);
        let mut rd = r.complex().cohomology_dims();
        rd.retain(|_, d| *d > 0);
        let mut cd = c.complex().cohomology_dims();
        cd.retain(|_, d| *d > 0);
        assert_eq!(rd, cd);
    }

    #[test]
    fn triple_maps_are_compatible() {
        let m = free(1);
        let t = Triple::build(&m, Support::Stratum(1), Support::Stratum(0), Support::Empty, 3);
        assert!(t.maps_compatible());
        assert_eq!(t.delta.induced(0, t.ab.complex(), t.bc.complex()).rank(), 3);
    }
}
