//! The Cousin complex along a filtration `n = z_0 >= z_1 >= ... >= z_r`, then `∅`:
//!
//! `0 -> M_0 -e-> H^0(Rel(z_0, z_1)) -d_0-> H^1(Rel(z_1, z_2)) -> ... -> H^r(Rel(z_r, ∅)) -> 0`
//!
//! `e` sends `m` to the class of `(0, m)` and `d_i` is the connecting map of
//! the triple `(z_i, z_{i+1}, z_{i+2})`, `(x, y) -> (0, x)` at chain level.

use serde::Serialize;
use thiserror::Error;

use crate::cech::relative::{connecting, cone_map, Triple};
use crate::cech::{RelativeComplex, Support};
use crate::complex::ChainMap;
use crate::linalg::{LinMap, SparseVec, Subspace};
use crate::modpres::{PresentedModule, TorsionMode};
use crate::report::{Finding, Status};
use crate::sections::{supported_sections, Semantics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CousinError {
    #[error("filtration is empty")]
    Empty,
    #[error("filtration must start at n = {n}, found {found}")]
    Start { n: usize, found: usize },
    #[error("filtration entry {value} exceeds n = {n}")]
    Range { n: usize, value: usize },
    #[error("filtration not weakly decreasing at position {position}")]
    NotDecreasing { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filtration(Vec<usize>);

impl Filtration {
    pub fn new(n: usize, zs: Vec<usize>) -> Result<Filtration, CousinError> {
        let first = *zs.first().ok_or(CousinError::Empty)?;
        if let Some(&value) = zs.iter().find(|&&z| z > n) {
            return Err(CousinError::Range { n, value });
        }
        if let Some(i) = zs.windows(2).position(|w| w[1] > w[0]) {
            return Err(CousinError::NotDecreasing { position: i + 1 });
        }
        if first != n {
            return Err(CousinError::Start { n, found: first });
        }
        Ok(Filtration(zs))
    }

    /// `(n, n-1, ..., 0)`.
    pub fn full_flag(n: usize) -> Filtration {
        Filtration((0..=n).rev().collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `s_i` for `i = 0..=len+1`, padded with the empty set.
    fn support(&self, i: usize) -> Support {
        self.0.get(i).map(|&z| Support::Stratum(z)).unwrap_or(Support::Empty)
    }
}

/// All matrices of the Cousin complex at one level.
#[derive(Clone, Debug)]
pub struct CousinInstance {
    pub filtration: Filtration,
    pub level: u32,
    pub rels: Vec<RelativeComplex>,
    pub global_dim: usize,
    pub term_dims: Vec<usize>,
    /// `e: M_0 -> T_0` in class coordinates.
    pub e: LinMap,
    /// `d_i: T_i -> T_{i+1}` for `i < r`.
    pub d: Vec<LinMap>,
}

pub fn build_cousin(m: &PresentedModule, filtration: &Filtration, p: u32) -> CousinInstance {
    let r = filtration.entries().len();
    let rels: Vec<RelativeComplex> = (0..r)
        .map(|i| RelativeComplex::build(m, filtration.support(i), filtration.support(i + 1), p))
        .collect();
    let term_dims: Vec<usize> = rels.iter().enumerate().map(|(i, c)| c.complex().cohomology(i as i64).dim()).collect();
    let field = m.field();
    let dim0 = m.piece(0).dim();
    let h0 = rels[0].complex().cohomology(0);
    let zero = SparseVec::new();
    let cols = (0..dim0)
        .map(|j| h0.class_of(&rels[0].join(0, &zero, &SparseVec::unit(j, field.one()))).expect("(0, m) is a cycle"))
        .collect();
    let e = LinMap::from_columns(dim0, term_dims[0], cols, field);
    let d = (0..r.saturating_sub(1))
        .map(|i| {
            let delta = connecting(&rels[i], &rels[i + 1]);
            delta.induced(i as i64, rels[i].complex(), rels[i + 1].complex())
        })
        .collect();
    CousinInstance { filtration: filtration.clone(), level: p, rels, global_dim: dim0, term_dims, e, d }
}

impl CousinInstance {
    /// `(Gamma, T_0, ..., T_r)`.
    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(self.global_dim).chain(self.term_dims.iter().copied()).collect()
    }

    /// `e, d_0, ..., d_{r-1}` followed by the zero map out of `T_r`.
    fn maps(&self) -> Vec<LinMap> {
        let field = self.e.field();
        let mut maps = vec![self.e.clone()];
        maps.extend(self.d.iter().cloned());
        maps.push(LinMap::zero(*self.term_dims.last().expect("nonempty"), 0, field));
        maps
    }

    pub fn d_squared_zero(&self) -> bool {
        self.maps().windows(2).all(|w| w[1].compose(&w[0]).expect("shapes").is_zero())
    }

    /// Cohomology dimensions at `Gamma, T_0, ..., T_r`.
    pub fn cohomology(&self) -> Vec<usize> {
        let maps = self.maps();
        let mut out = vec![self.global_dim - self.e.rank()];
        for i in 0..self.term_dims.len() {
            let kernel = self.term_dims[i] - maps[i + 1].rank();
            out.push(kernel - maps[i].rank());
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Part1 {
    pub ker_e: usize,
    pub sections: usize,
    /// Pole order from which the stage kernels are known to be final.
    pub required_level: u32,
    pub equal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Part2 {
    pub lhs: usize,
    pub rhs: usize,
    pub e_factors: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Part3 {
    pub i: usize,
    pub lhs: usize,
    pub image_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CousinLevel {
    pub p: u32,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub d_squared_zero: bool,
    pub cohomology: Vec<usize>,
    pub exact: bool,
    pub part1: Part1,
    pub part2: Part2,
    pub part3: Vec<Part3>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CousinReport {
    pub filtration: Filtration,
    pub levels: Vec<CousinLevel>,
    pub findings: Vec<Finding>,
}

/// Verifies one level; `sections` is the ideal-semantics `Gamma_{P^{z_1}}`.
pub fn verify_level(m: &PresentedModule, inst: &CousinInstance, sections: (&Subspace, u32)) -> (CousinLevel, Vec<Finding>) {
    let p = inst.level;
    let field = m.field();
    let f = &inst.filtration;
    let mut findings = Vec::new();

    let dd = inst.d_squared_zero();
    findings.push(Finding::check("cousin d∘d", dd, "d_0 e = 0 and d_(i+1) d_i = 0").at(p));

    let ker_e = Subspace::span(inst.global_dim, field, &inst.e.kernel());
    let (gamma, required) = sections;
    let equal = (p >= required).then(|| ker_e == *gamma);
    let part1 = Part1 { ker_e: ker_e.dim(), sections: gamma.dim(), required_level: required, equal };
    findings.push(match equal {
        Some(ok) => {
            let w = ker_e.witness_not_in(gamma).or_else(|| gamma.witness_not_in(&ker_e)).map(|v| m.piece(0).format(v, m.rank()));
            Finding::check("cousin part 1", ok, format!("Ker e has dim {}, supported sections dim {}", ker_e.dim(), gamma.dim()))
                .at(p)
                .with_witness(w)
        }
        None => Finding::check(
            "cousin part 1",
            ker_e.is_subspace_of(gamma),
            format!("below the certified level {}: Ker e (dim {}) only checked to lie in the sections", required, ker_e.dim()),
        )
        .at(p),
    });

    // Part 2 through the triple (z_0, z_1, z_2).
    let t = Triple::build(m, f.support(0), f.support(1), f.support(2), p);
    let h_ac = t.ac.complex().cohomology(0);
    let zero = SparseVec::new();
    let e_prime: Vec<SparseVec> = (0..inst.global_dim)
        .map(|j| h_ac.class_of(&t.ac.join(0, &zero, &SparseVec::unit(j, field.one()))).expect("(0, m) is a cycle"))
        .collect();
    let e_prime = LinMap::from_columns(inst.global_dim, h_ac.dim(), e_prime, field);
    let alpha = t.alpha.induced(0, t.bc.complex(), t.ac.complex());
    let beta = t.beta.induced(0, t.ac.complex(), t.ab.complex());
    let sum = Subspace::span(h_ac.dim(), field, e_prime.columns()).sum(&Subspace::span(h_ac.dim(), field, alpha.columns()));
    let rhs = h_ac.dim() - sum.dim();
    let lhs = inst.cohomology()[1];
    let e_factors = beta.compose(&e_prime).expect("shapes") == inst.e;
    findings.push(
        Finding::check("cousin part 2", lhs == rhs && e_factors, format!("Ker d_0 / Im e has dim {}, stated quotient dim {}", lhs, rhs)).at(p),
    );
    let part2 = Part2 { lhs, rhs, e_factors };

    let coh = inst.cohomology();
    let mut part3 = Vec::new();
    for i in 1..inst.term_dims.len() {
        let src = RelativeComplex::build(m, f.support(i), f.support(i + 2), p);
        let tgt = RelativeComplex::build(m, f.support(i - 1), f.support(i + 1), p);
        let fx = projection(m, f.support(i + 2), f.support(i + 1), p);
        let fy = projection(m, f.support(i), f.support(i - 1), p);
        let map = cone_map(&src, &tgt, &fx, &fy);
        let image_dim = map.induced(i as i64, src.complex(), tgt.complex()).rank();
        let lhs = coh[i + 1];
        findings.push(
            Finding::new(
                format!("cousin part 3 (i={})", i),
                Status::Info,
                format!("Ker d_{} / Im d_{} has dim {}, comparison image dim {}", i, i - 1, lhs, image_dim),
            )
            .at(p),
        );
        part3.push(Part3 { i, lhs, image_dim });
    }

    let mut ranks = vec![inst.e.rank()];
    ranks.extend(inst.d.iter().map(|d| d.rank()));
    let level = CousinLevel {
        p,
        dims: inst.dims(),
        ranks,
        d_squared_zero: dd,
        exact: coh.iter().all(|&c| c == 0),
        cohomology: coh,
        part1,
        part2,
        part3,
    };
    (level, findings)
}

fn projection(m: &PresentedModule, from: Support, to: Support, p: u32) -> ChainMap {
    let a = crate::cech::CechComplex::build(m, from, p);
    let b = crate::cech::CechComplex::build(m, to, p);
    a.projection_to(&b)
}

/// Builds and verifies the Cousin complex at levels `1..=p_max`.
pub fn verify_cousin(m: &PresentedModule, filtration: &Filtration, p_max: u32, mode: TorsionMode) -> CousinReport {
    let gamma = supported_sections(m, filtration.support(1), Semantics::Ideal, mode);
    let required = gamma.required_level();
    let mut levels = Vec::new();
    let mut findings = Vec::new();
    for p in 1..=p_max {
        let inst = build_cousin(m, filtration, p);
        let (level, f) = verify_level(m, &inst, (&gamma.subspace, required));
        levels.push(level);
        findings.extend(f);
    }
    if p_max < required {
        let inst = build_cousin(m, filtration, required);
        let ker_e = Subspace::span(inst.global_dim, m.field(), &inst.e.kernel());
        findings.push(
            Finding::check("cousin part 1", ker_e == gamma.subspace, format!("checked at the certified level {}", required))
                .at(required),
        );
    }
    CousinReport { filtration: filtration.clone(), levels, findings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::{Algebra, Monomial};

    #[test]
    fn filtration_validation() {
        assert!(Filtration::new(2, vec![2, 1, 0]).is_ok());
        assert!(Filtration::new(2, vec![2, 2, 0]).is_ok());
        let e = Filtration::new(2, vec![2, 0, 1]).unwrap_err();
        assert!(e.to_string().contains("filtration not weakly decreasing"));
        assert!(matches!(Filtration::new(2, vec![1, 0]), Err(CousinError::Start { .. })));
        assert_eq!(Filtration::full_flag(2).entries(), &[2, 1, 0]);
    }

    #[test]
    fn projective_line_dims() {
        for f in [Field::rationals(), Field::generic(), Field::cyclotomic(4)] {
            let a = PresentedModule::free(Algebra::new(1, f), vec![0]);
            let filt = Filtration::new(1, vec![1, 0]).unwrap();
            for p in 1..=4 {
                let c = build_cousin(&a, &filt, p);
                assert_eq!(c.dims(), vec![1, p as usize + 1, p as usize]);
                assert!(c.d_squared_zero());
                assert_eq!(c.cohomology(), vec![0, 0, 0]);
            }
        }
    }

    #[test]
    fn part1_for_killed_variable() {
        let a = Algebra::new(2, Field::generic());
        let q = PresentedModule::cyclic_monomial_quotient(a, &[Monomial::new(vec![0, 0, 1])]);
        let r = verify_cousin(&q, &Filtration::full_flag(2), 2, TorsionMode::Certified);
        assert!(r.findings.iter().all(|f| !f.failed()), "{:?}", r.findings);
        assert_eq!(r.levels[0].part1.ker_e, 1);
    }

    #[test]
    fn zero_module_and_equal_entries() {
        let a = Algebra::new(1, Field::generic());
        let z = PresentedModule::zero(a.clone());
        let c = build_cousin(&z, &Filtration::full_flag(1), 2);
        assert!(c.dims().iter().all(|&d| d == 0));
        let free = PresentedModule::free(a, vec![0]);
        let c = build_cousin(&free, &Filtration::new(1, vec![1, 1, 0]).unwrap(), 2);
        assert_eq!(c.term_dims[0], 0);
        assert!(c.d_squared_zero());
    }
}
