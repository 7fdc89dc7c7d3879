//! Bounded cochain complexes of finite-dimensional spaces, their cohomology,
//! chain maps and mapping cones.

use std::collections::BTreeMap;

use crate::linalg::{exact_at, LinMap, Quotient, SparseVec, Subspace};
use crate::scalar::Field;

/// `C^lo -> C^{lo+1} -> ... -> C^hi`.
#[derive(Clone, Debug)]
pub struct Complex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[i]: C^{lo+i} -> C^{lo+i+1}`; one fewer than `dims`.
    diffs: Vec<LinMap>,
}

impl Complex {
    pub fn new(field: &Field, lo: i64, dims: Vec<usize>, diffs: Vec<LinMap>) -> Complex {
        assert_eq!(diffs.len() + 1, dims.len().max(1), "one differential between consecutive terms");
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!((d.src_dim(), d.tgt_dim()), (dims[i], dims[i + 1]), "differential shape");
        }
        Complex { field: field.clone(), lo, dims, diffs }
    }

    pub fn zero(field: &Field) -> Complex {
        Complex { field: field.clone(), lo: 0, dims: vec![0], diffs: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a (possibly zero) stored term.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.dims[(k - self.lo) as usize]
        }
    }

    /// `d^k: C^k -> C^{k+1}` (a zero map outside the stored range).
    pub fn diff(&self, k: i64) -> LinMap {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            LinMap::zero(self.dim(k), self.dim(k + 1), &self.field)
        }
    }

    /// First degree where `d^{k+1} d^k != 0`.
    pub fn d_squared_failure(&self) -> Option<i64> {
        (self.lo..self.hi()).find(|&k| !self.diff(k + 1).compose(&self.diff(k)).expect("shapes").is_zero())
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_failure().is_none()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| sign(k) * self.dim(k) as i64).sum()
    }

    pub fn cohomology(&self, k: i64) -> Cohomology {
        let cycles = self.diff(k).kernel();
        let boundaries = self.diff(k - 1).columns().to_vec();
        let quotient = Quotient::new(self.dim(k), &self.field, &boundaries, &cycles);
        Cohomology { degree: k, cycles, quotient }
    }

    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|k| (k, self.cohomology(k).dim())).collect()
    }

    pub fn cohomological_euler(&self) -> i64 {
        self.degrees().map(|k| sign(k) * self.cohomology(k).dim() as i64).sum()
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `H^k = Z^k / B^k` with representatives chosen among the kernel basis.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub cycles: Vec<SparseVec>,
    pub quotient: Quotient,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn reps(&self) -> &[SparseVec] {
        self.quotient.reps()
    }

    pub fn cycle_space(&self) -> Subspace {
        Subspace::span(self.quotient.ambient_dim(), self.quotient_field(), &self.cycles)
    }

    fn quotient_field(&self) -> &Field {
        self.quotient.field()
    }

    /// Coordinates of the class of a cycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.quotient.coords(v)
    }
}

/// Degree-preserving family of linear maps (or of degree `shift`).
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub shift: i64,
    pub maps: BTreeMap<i64, LinMap>,
}

impl ChainMap {
    pub fn new(shift: i64) -> ChainMap {
        ChainMap { shift, maps: BTreeMap::new() }
    }

    /// Component `C^k -> D^{k+shift}`.
    pub fn component(&self, k: i64, src: &Complex, tgt: &Complex) -> LinMap {
        match self.maps.get(&k) {
            Some(m) => m.clone(),
            None => LinMap::zero(src.dim(k), tgt.dim(k + self.shift), src.field()),
        }
    }

    /// Checks `f d = sign * d f` in every degree, where `sign` is `+1` for
    /// chain maps and `-1` for anticommuting maps such as connecting maps.
    pub fn commutes(&self, src: &Complex, tgt: &Complex, anti: bool) -> bool {
        let lo = src.lo().min(tgt.lo() - self.shift) - 1;
        let hi = src.hi().max(tgt.hi() - self.shift) + 1;
        (lo..=hi).all(|k| {
            let left = self.component(k + 1, src, tgt).compose(&src.diff(k)).expect("shapes");
            let right = tgt.diff(k + self.shift).compose(&self.component(k, src, tgt)).expect("shapes");
            let right = if anti { right.scale(&-src.field().one()) } else { right };
            left == right
        })
    }

    /// The map induced on cohomology, `H^k(C) -> H^{k+shift}(D)`.
    pub fn induced(&self, k: i64, src: &Complex, tgt: &Complex) -> LinMap {
        let hs = src.cohomology(k);
        let ht = tgt.cohomology(k + self.shift);
        induced_on(&self.component(k, src, tgt), &hs, &ht)
    }
}

/// Matrix of `[z] -> [f z]` between cohomology quotients.
pub fn induced_on(f: &LinMap, src: &Cohomology, tgt: &Cohomology) -> LinMap {
    src.quotient.induced(f, &tgt.quotient).expect("map sends cycles to cycles")
}

/// `Cone(f)^k = C^{k+1} ⊕ D^k`, `d(x, y) = (-d x, f x + d y)`.
pub fn cone(f: &ChainMap, src: &Complex, tgt: &Complex) -> Complex {
    assert_eq!(f.shift, 0, "cones of degree-zero maps only");
    let field = src.field();
    let lo = (src.lo() - 1).min(tgt.lo());
    let hi = (src.hi() - 1).max(tgt.hi());
    let dims: Vec<usize> = (lo..=hi).map(|k| src.dim(k + 1) + tgt.dim(k)).collect();
    let diffs = (lo..hi)
        .map(|k| {
            let minus = src.diff(k + 1).scale(&-field.one());
            let fk = f.component(k + 1, src, tgt);
            let dk = tgt.diff(k);
            LinMap::from_blocks(
                &[src.dim(k + 1), tgt.dim(k)],
                &[src.dim(k + 2), tgt.dim(k + 1)],
                field,
                |i, j| match (i, j) {
                    (0, 0) => Some(minus.clone()),
                    (1, 0) => Some(fk.clone()),
                    (1, 1) => Some(dk.clone()),
                    _ => None,
                },
            )
        })
        .collect();
    Complex::new(field, lo, dims, diffs)
}

/// Exactness of a sequence of linear maps at every interior position.
pub fn sequence_exact(maps: &[LinMap]) -> Vec<bool> {
    maps.windows(2).map(|w| exact_at(&w[0], &w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &Field, e: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(i, c)| (i, f.from_int(c))))
    }

    fn two_term(f: &Field) -> Complex {
        // k -> k^2, 1 -> (1, 1)
        let d = LinMap::from_columns(1, 2, vec![v(f, &[(0, 1), (1, 1)])], f);
        Complex::new(f, 0, vec![1, 2], vec![d])
    }

    #[test]
    fn cohomology_of_injection() {
        let f = Field::rationals();
        let c = two_term(&f);
        assert!(c.is_complex());
        assert_eq!(c.cohomology_dims(), BTreeMap::from([(0, 0), (1, 1)]));
        assert_eq!(c.euler_characteristic(), c.cohomological_euler());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let f = Field::generic();
        let c = two_term(&f);
        let mut id = ChainMap::new(0);
        for k in c.degrees() {
            id.maps.insert(k, LinMap::identity(c.dim(k), &f));
        }
        assert!(id.commutes(&c, &c, false));
        let k = cone(&id, &c, &c);
        assert!(k.is_complex());
        assert!(k.cohomology_dims().values().all(|&d| d == 0));
    }

    #[test]
    fn zero_complex() {
        let f = Field::rationals();
        let z = Complex::zero(&f);
        assert_eq!(z.cohomology(0).dim(), 0);
        assert_eq!(z.cohomology(5).dim(), 0);
    }
}
