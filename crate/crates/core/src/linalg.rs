//! Exact sparse linear algebra over [`Scalar`].
//!
//! Everything is built on [`Echelon`], an incrementally maintained
//! semi-reduced row echelon form whose pivot is always the first nonzero
//! column (no magnitude pivoting; cyclotomic fields are unordered). Rows may
//! optionally remember how they were combined from the inserted generators,
//! which yields kernels, preimages and quotient coordinates.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// Sparse vector: sorted `(index, value)` pairs with no zero values.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize, one: Scalar) -> Self {
        SparseVec(vec![(i, one)])
    }

    /// Builds from arbitrary entries, summing duplicates and dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in entries {
            match map.get_mut(&i) {
                Some(v) => *v = &*v + &c,
                None => {
                    map.insert(i, c);
                }
            }
        }
        SparseVec(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.0.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.0[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.0.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, v)| (*i, -v)).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.0.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.one_like(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.0.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&-v.one_like(), other),
        }
    }

    /// Shifts all indices by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, v)| (i + offset, v.clone())).collect())
    }

    /// Restricts to indices in `[start, start + len)` and re-bases them at zero.
    pub fn slice(&self, start: usize, len: usize) -> SparseVec {
        SparseVec(
            self.0
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        )
    }

    /// Concatenation `(self, other)` where `self` lives in dimension `dim`.
    pub fn concat(&self, dim: usize, other: &SparseVec) -> SparseVec {
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|(i, v)| (i + dim, v.clone())));
        SparseVec(out)
    }

    pub fn to_dense(&self, dim: usize, zero: &Scalar) -> Vec<Scalar> {
        let mut out = vec![zero.clone(); dim];
        for (i, v) in &self.0 {
            out[*i] = v.clone();
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Outcome of inserting a generator into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Insert {
    /// The generator was independent and now owns this pivot column.
    Independent { generator: usize, pivot: usize },
    /// The generator was dependent; `relation` (over generator indices,
    /// including this one) sums to zero.
    Dependent { generator: usize, relation: SparseVec },
}

/// Incremental row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    pivots: BTreeMap<usize, usize>,
    generators: usize,
    field: Field,
}

impl Echelon {
    pub fn new(dim: usize, field: &Field) -> Echelon {
        Echelon { dim, rows: Vec::new(), pivots: BTreeMap::new(), generators: 0, field: field.clone() }
    }

    /// Echelon form of the span of `vectors`.
    pub fn from_vectors<'a>(
        dim: usize,
        field: &Field,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Echelon {
        let mut e = Echelon::new(dim, field);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// The echelon rows (each with leading coefficient one).
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|r| &r.vec)
    }

    /// Writes `v = remainder + sum_i coeffs_i * generator_i`; the remainder
    /// vanishes on every pivot column and is zero iff `v` is in the span.
    pub fn decompose(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem: BTreeMap<usize, Scalar> = v.0.iter().cloned().collect();
        let mut coeffs = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, _)| *c);
            let Some(col) = next else { break };
            let c = rem.remove(&col).unwrap();
            let row = &self.rows[self.pivots[&col]];
            for (j, x) in row.vec.0.iter().skip(1) {
                let t = &c * x;
                match rem.get_mut(j) {
                    Some(y) => {
                        let s = &*y - &t;
                        if s.is_zero() {
                            rem.remove(j);
                        } else {
                            *y = s;
                        }
                    }
                    None => {
                        rem.insert(*j, -t);
                    }
                }
            }
            coeffs = coeffs.axpy(&c, &row.combo);
            cursor = col + 1;
        }
        (SparseVec(rem.into_iter().collect()), coeffs)
    }

    /// Remainder of `v` modulo the span (canonical representative).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.decompose(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let g = self.generators;
        self.generators += 1;
        let (rem, coeffs) = self.decompose(v);
        let combo = SparseVec::unit(g, self.field.one()).sub(&coeffs);
        match rem.0.first() {
            None => Insert::Dependent { generator: g, relation: combo },
            Some((pivot, lead)) => {
                let pivot = *pivot;
                let inv = lead.inv().expect("nonzero leading entry");
                let row = Row { vec: rem.scale(&inv), combo: combo.scale(&inv) };
                self.pivots.insert(pivot, self.rows.len());
                self.rows.push(row);
                Insert::Independent { generator: g, pivot }
            }
        }
    }

    /// Fully reduced row echelon basis, ordered by pivot column.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<(usize, SparseVec)> = Vec::new();
        // Back-substitute from the largest pivot down.
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&col, &ri) in self.pivots.iter().rev() {
            let mut v = self.rows[ri].vec.clone();
            loop {
                let hit = v.0.iter().skip(1).find(|(c, _)| done.contains_key(c)).cloned();
                match hit {
                    Some((c, x)) => v = v.axpy(&-x, &done[&c]),
                    None => break,
                }
            }
            done.insert(col, v);
        }
        for (c, v) in done {
            out.push((c, v));
        }
        out.into_iter().map(|(_, v)| v).collect()
    }
}

/// Exact linear map given by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    src_dim: usize,
    tgt_dim: usize,
    cols: Vec<SparseVec>,
    field: Field,
}

impl LinMap {
    pub fn from_columns(src_dim: usize, tgt_dim: usize, cols: Vec<SparseVec>, field: &Field) -> LinMap {
        assert_eq!(cols.len(), src_dim, "column count must equal source dimension");
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < tgt_dim)));
        LinMap { src_dim, tgt_dim, cols, field: field.clone() }
    }

    pub fn zero(src_dim: usize, tgt_dim: usize, field: &Field) -> LinMap {
        LinMap { src_dim, tgt_dim, cols: vec![SparseVec::new(); src_dim], field: field.clone() }
    }

    pub fn identity(dim: usize, field: &Field) -> LinMap {
        let cols = (0..dim).map(|i| SparseVec::unit(i, field.one())).collect();
        LinMap { src_dim: dim, tgt_dim: dim, cols, field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in &v.0 {
            out = out.axpy(c, &self.cols[*j]);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, LinalgError> {
        if inner.tgt_dim != self.src_dim {
            return Err(LinalgError::Dimension { expected: self.src_dim, found: inner.tgt_dim });
        }
        Ok(LinMap {
            src_dim: inner.src_dim,
            tgt_dim: self.tgt_dim,
            cols: inner.cols.iter().map(|c| self.apply(c)).collect(),
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            src_dim: self.src_dim,
            tgt_dim: self.tgt_dim,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, LinalgError> {
        if self.src_dim != other.src_dim || self.tgt_dim != other.tgt_dim {
            return Err(LinalgError::Dimension { expected: self.src_dim, found: other.src_dim });
        }
        Ok(LinMap {
            src_dim: self.src_dim,
            tgt_dim: self.tgt_dim,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
            field: self.field.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Block matrix with row blocks of sizes `tgt_sizes` and column blocks of
    /// sizes `src_sizes`; `block(i, j)` maps source block `j` to target block `i`.
    pub fn from_blocks(
        src_sizes: &[usize],
        tgt_sizes: &[usize],
        field: &Field,
        block: impl Fn(usize, usize) -> Option<LinMap>,
    ) -> LinMap {
        let tgt_off: Vec<usize> = offsets(tgt_sizes);
        let mut cols = Vec::new();
        for (j, &sj) in src_sizes.iter().enumerate() {
            let parts: Vec<Option<LinMap>> = (0..tgt_sizes.len()).map(|i| block(i, j)).collect();
            for c in 0..sj {
                let mut col = SparseVec::new();
                for (i, part) in parts.iter().enumerate() {
                    if let Some(m) = part {
                        debug_assert_eq!((m.src_dim, m.tgt_dim), (sj, tgt_sizes[i]));
                        col = col.add(&m.cols[c].shifted(tgt_off[i]));
                    }
                }
                cols.push(col);
            }
        }
        let src: usize = src_sizes.iter().sum();
        let tgt: usize = tgt_sizes.iter().sum();
        LinMap::from_columns(src, tgt, cols, field)
    }

    pub fn rank(&self) -> usize {
        self.image().rank()
    }

    /// Echelon form of the image; generators are the columns in order.
    pub fn image(&self) -> Echelon {
        Echelon::from_vectors(self.tgt_dim, &self.field, &self.cols)
    }

    /// Kernel basis in source coordinates (one vector per dependent column).
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.tgt_dim, &self.field);
        let mut kernel = Vec::new();
        for c in &self.cols {
            if let Insert::Dependent { relation, .. } = e.insert(c) {
                kernel.push(relation);
            }
        }
        kernel
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.tgt_dim
    }

    /// Some `x` with `self(x) = b`, chosen deterministically from echelon data.
    pub fn preimage(&self, b: &SparseVec) -> Option<SparseVec> {
        let (rem, coeffs) = self.image().decompose(b);
        rem.is_zero().then_some(coeffs)
    }
}

/// Subspace of `k^dim` with a canonical (reduced echelon) basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ech: Echelon,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn span<'a>(
        dim: usize,
        field: &Field,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Subspace {
        let ech = Echelon::from_vectors(dim, field, vectors);
        let basis = ech.reduced_basis();
        Subspace { ech, basis }
    }

    pub fn zero(dim: usize, field: &Field) -> Subspace {
        Subspace { ech: Echelon::new(dim, field), basis: Vec::new() }
    }

    pub fn full(dim: usize, field: &Field) -> Subspace {
        let vs: Vec<SparseVec> = (0..dim).map(|i| SparseVec::unit(i, field.one())).collect();
        Subspace::span(dim, field, &vs)
    }

    pub fn field(&self) -> &Field {
        self.ech.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// First basis vector of `self` that is not in `other`.
    pub fn witness_not_in(&self, other: &Subspace) -> Option<&SparseVec> {
        self.basis.iter().find(|v| !other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient_dim(), self.field(), self.basis.iter().chain(other.basis.iter()))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let dim = self.ambient_dim();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(dim, self.field());
        }
        // Kernel of (a, b) -> sum a_i u_i - sum b_j w_j.
        let cols: Vec<SparseVec> =
            self.basis.iter().cloned().chain(other.basis.iter().map(|w| w.neg())).collect();
        let m = LinMap::from_columns(cols.len(), dim, cols, self.field());
        let vecs: Vec<SparseVec> = m
            .kernel()
            .iter()
            .map(|k| {
                let mut v = SparseVec::new();
                for (i, c) in k.entries() {
                    if *i < self.dim() {
                        v = v.axpy(c, &self.basis[*i]);
                    }
                }
                v
            })
            .collect();
        Subspace::span(dim, self.field(), &vecs)
    }

    pub fn image_under(&self, f: &LinMap) -> Subspace {
        let vs: Vec<SparseVec> = self.basis.iter().map(|v| f.apply(v)).collect();
        Subspace::span(f.tgt_dim(), f.field(), &vs)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.basis == other.basis
    }
}

/// The quotient `sup / sub` of nested subspaces of `k^dim`, with a basis of
/// representatives drawn from the given spanning set of `sup`.
#[derive(Clone, Debug)]
pub struct Quotient {
    dim: usize,
    ech: Echelon,
    sub_rank: usize,
    reps: Vec<SparseVec>,
    rep_of_generator: BTreeMap<usize, usize>,
}

impl Quotient {
    /// `sup_span` spans the larger space, `sub_span` the smaller one; the
    /// caller guarantees `span(sub) ⊆ span(sup)`.
    pub fn new<'a>(
        dim: usize,
        field: &Field,
        sub_span: impl IntoIterator<Item = &'a SparseVec>,
        sup_span: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Quotient {
        let mut ech = Echelon::new(dim, field);
        for v in sub_span {
            ech.insert(v);
        }
        let sub_rank = ech.rank();
        let mut reps = Vec::new();
        let mut rep_of_generator = BTreeMap::new();
        for v in sup_span {
            if let Insert::Independent { generator, .. } = ech.insert(v) {
                rep_of_generator.insert(generator, reps.len());
                reps.push(v.clone());
            }
        }
        Quotient { dim, ech, sub_rank, reps, rep_of_generator }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        self.ech.field()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_rank
    }

    /// Representatives of the quotient basis.
    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of `v + sub` in the representative basis, `None` if `v ∉ sup`.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, coeffs) = self.ech.decompose(v);
        if !rem.is_zero() {
            return None;
        }
        Some(SparseVec::from_entries(
            coeffs
                .entries()
                .iter()
                .filter_map(|(g, c)| self.rep_of_generator.get(g).map(|r| (*r, c.clone()))),
        ))
    }

    /// True when `v ∈ sub`.
    pub fn is_trivial(&self, v: &SparseVec) -> bool {
        self.coords(v).is_some_and(|c| c.is_zero())
    }

    /// Matrix of the map induced on quotients by `f`, which must send
    /// `self`'s `sup` into `target`'s `sup` and `sub` into `sub`.
    pub fn induced(&self, f: &LinMap, target: &Quotient) -> Option<LinMap> {
        let cols = self
            .reps
            .iter()
            .map(|r| target.coords(&f.apply(r)))
            .collect::<Option<Vec<_>>>()?;
        Some(LinMap::from_columns(self.dim(), target.dim(), cols, self.ech.field()))
    }
}

/// Running offsets `[0, s0, s0 + s1, ...]` (without the final total).
pub fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// Checks exactness of `U --f--> V --g--> W` at `V`.
pub fn exact_at(f: &LinMap, g: &LinMap) -> bool {
    match g.compose(f) {
        Ok(c) if c.is_zero() => f.rank() + g.rank() == f.tgt_dim(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &Field, entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, f.from_int(c))))
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = Field::generic();
        let m = LinMap::from_columns(3, 2, vec![SparseVec::new(); 3], &f);
        let k = m.kernel();
        assert_eq!(k.len(), 3);
        let s = Subspace::span(3, &f, &k);
        assert_eq!(s, Subspace::full(3, &f));
    }

    #[test]
    fn rank_kernel_and_preimage() {
        let f = Field::rationals();
        let m = LinMap::from_columns(
            3,
            2,
            vec![v(&f, &[(0, 1), (1, 2)]), v(&f, &[(0, 2), (1, 4)]), v(&f, &[(1, 1)])],
            &f,
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
        let b = v(&f, &[(0, 3), (1, 7)]);
        let x = m.preimage(&b).unwrap();
        assert_eq!(m.apply(&x), b);
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::generic();
        let a = Subspace::span(3, &f, &[v(&f, &[(0, 1)]), v(&f, &[(1, 1)])]);
        let b = Subspace::span(3, &f, &[v(&f, &[(1, 1)]), v(&f, &[(2, 1)])]);
        assert_eq!(a.intersect(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.intersect(&b).is_subspace_of(&a));
    }

    #[test]
    fn quotient_coordinates() {
        let f = Field::rationals();
        let sub = [v(&f, &[(0, 1)])];
        let sup = [v(&f, &[(0, 1)]), v(&f, &[(1, 1)])];
        let q = Quotient::new(2, &f, &sub, &sup);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coords(&v(&f, &[(0, 5), (1, 2)])), Some(v(&f, &[(0, 2)])));
        assert!(q.coords(&v(&f, &[(0, 1), (1, 0)])).unwrap().is_zero());
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let f = Field::rationals();
        let a = Subspace::span(3, &f, &[v(&f, &[(0, 1), (1, 1)]), v(&f, &[(1, 1), (2, 1)])]);
        let b = Subspace::span(3, &f, &[v(&f, &[(0, 1), (2, -1)]), v(&f, &[(0, 2), (1, 1), (2, -1)])]);
        assert_eq!(a, b);
    }
}
