//! `u`-torsion of a presented module.
//!
//! Certified mode walks the colon chain `K_p = (R : u^p)` inside `F0` until the
//! first repeat; a repeat at module level is final, because `u^{p+2} m = 0`
//! puts `u m` in `K_{p+1} = K_p`, hence `m` in `K_{p+1}`. Windowed mode only
//! looks at the degree-zero kernels of `u^p` and never claims more than it saw.

use serde::Serialize;

use crate::linalg::Subspace;
use crate::skewalg::Monomial;

use super::{PresentedModule, Submodule};

/// Safety cap on the certified colon chain.
const MAX_CHAIN: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TorsionMode {
    Certified,
    Windowed { p_max: u32, window: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum WindowStatus {
    /// Kernels agreed from `from` through `from + window`.
    Stable { from: u32 },
    Unstable,
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub u: Monomial,
    pub mode: TorsionMode,
    /// `K_{p*}` in certified mode.
    pub submodule: Option<Submodule>,
    /// First `p >= 1` with `K_p = K_{p+1}`.
    pub p_star: Option<u32>,
    /// `K_{p*+2} = K_{p*+1}` re-checked by one further colon step.
    pub revalidated: bool,
    /// Degree-zero torsion as a subspace of `M_0`.
    pub degree0: Subspace,
    /// Windowed mode: `dim Ker(u^p | M_0)` for `p = 1..=p_max`.
    pub kernel_dims: Vec<usize>,
    pub status: WindowStatus,
}

/// `Ker(u^p * -)` on `M_d`.
pub fn power_kernel(m: &PresentedModule, u: &Monomial, p: u32, d: i64) -> Subspace {
    let f = m.mult_map(d, &u.pow(p));
    Subspace::span(f.map.src_dim(), m.field(), &f.map.kernel())
}

/// Image in `M_d` of a submodule of `F0` containing the relations.
pub fn submodule_in_degree(m: &PresentedModule, k: &Submodule, d: i64) -> Subspace {
    let piece = m.piece(d);
    let vecs: Vec<_> = k.span_in_degree(d).iter().map(|v| piece.coords_of_vector(v)).collect();
    Subspace::span(piece.dim(), m.field(), &vecs)
}

pub fn torsion_submodule(m: &PresentedModule, u: &Monomial, mode: TorsionMode) -> TorsionReport {
    assert!(!u.is_one(), "torsion with respect to the unit monomial");
    match mode {
        TorsionMode::Certified => certified(m, u),
        TorsionMode::Windowed { p_max, window } => windowed(m, u, p_max, window),
    }
}

fn certified(m: &PresentedModule, u: &Monomial) -> TorsionReport {
    let rel = m.relation_submodule();
    let mut cur = rel.colon_monomial(u);
    let mut p = 1;
    let (p_star, revalidated, k) = loop {
        let next = cur.colon_monomial(u);
        if next.is_subset_of(&cur) {
            let again = next.colon_monomial(u);
            let ok = again.is_subset_of(&next);
            break (Some(p), ok, cur);
        }
        if p >= MAX_CHAIN {
            break (None, false, next);
        }
        cur = next;
        p += 1;
    };
    let degree0 = submodule_in_degree(m, &k, 0);
    TorsionReport {
        u: u.clone(),
        mode: TorsionMode::Certified,
        submodule: Some(k),
        p_star,
        revalidated,
        degree0,
        kernel_dims: Vec::new(),
        status: match p_star {
            Some(p) => WindowStatus::Stable { from: p },
            None => WindowStatus::Unstable,
        },
    }
}

fn windowed(m: &PresentedModule, u: &Monomial, p_max: u32, window: u32) -> TorsionReport {
    let mut kernels: Vec<Subspace> = Vec::new();
    for p in 1..=p_max {
        kernels.push(power_kernel(m, u, p, 0));
    }
    let kernel_dims = kernels.iter().map(|k| k.dim()).collect();
    let mut status = WindowStatus::Unstable;
    for start in 0..kernels.len() {
        let end = start + window as usize;
        if end >= kernels.len() {
            break;
        }
        if (start..end).all(|i| kernels[i] == kernels[i + 1]) {
            status = WindowStatus::Stable { from: start as u32 + 1 };
            break;
        }
    }
    let degree0 = kernels.pop().unwrap_or_else(|| Subspace::zero(m.piece(0).dim(), m.field()));
    TorsionReport {
        u: u.clone(),
        mode: TorsionMode::Windowed { p_max, window },
        submodule: None,
        p_star: None,
        revalidated: false,
        degree0,
        kernel_dims,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::Algebra;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn free_module_is_torsion_free() {
        let a = Algebra::new(2, Field::generic());
        let free = PresentedModule::free(a, vec![0]);
        let r = torsion_submodule(&free, &m(&[0, 0, 1]), TorsionMode::Certified);
        assert_eq!(r.p_star, Some(1));
        assert!(r.revalidated);
        assert_eq!(r.degree0.dim(), 0);
    }

    #[test]
    fn killed_variable_gives_full_torsion() {
        let a = Algebra::new(2, Field::generic());
        let q = PresentedModule::cyclic_monomial_quotient(a, &[m(&[0, 0, 1])]);
        let r = torsion_submodule(&q, &m(&[0, 0, 1]), TorsionMode::Certified);
        assert_eq!(r.p_star, Some(1));
        assert_eq!(r.degree0.dim(), 1);
        let k = r.submodule.unwrap();
        assert!(k.contains(&vec![q.algebra().one()]));
    }

    #[test]
    fn torsion_of_a_direct_sum() {
        let a = Algebra::new(2, Field::generic());
        let free = PresentedModule::free(a.clone(), vec![0]);
        let q = PresentedModule::cyclic_monomial_quotient(a.clone(), &[m(&[0, 0, 1])]);
        let sum = free.direct_sum(&q).unwrap();
        let r = torsion_submodule(&sum, &m(&[0, 0, 1]), TorsionMode::Certified);
        let k = r.submodule.unwrap();
        assert!(k.contains(&vec![a.zero(), a.one()]));
        assert!(!k.contains(&vec![a.one(), a.zero()]));
        assert_eq!(r.degree0.dim(), 1);
    }

    #[test]
    fn windowed_agrees_and_flags_instability() {
        let a = Algebra::new(1, Field::generic());
        // A / (x2^2): torsion needs p = 2.
        let q = PresentedModule::cyclic_monomial_quotient(a, &[m(&[0, 2])]);
        let c = torsion_submodule(&q, &m(&[0, 1]), TorsionMode::Certified);
        assert_eq!(c.p_star, Some(2));
        let w = torsion_submodule(&q, &m(&[0, 1]), TorsionMode::Windowed { p_max: 4, window: 2 });
        assert_eq!(w.status, WindowStatus::Stable { from: 2 });
        assert_eq!(w.degree0, c.degree0);
        let short = torsion_submodule(&q, &m(&[0, 1]), TorsionMode::Windowed { p_max: 2, window: 2 });
        assert_eq!(short.status, WindowStatus::Unstable);
    }
}
