//! Finitely presented graded left modules `M = F0 / A.P` over `A_{q,n}`.
//!
//! Every computation is degree-local: the piece `M_d` is the quotient of the
//! finite-dimensional `(F0)_d` by the span of `m * column_j` over monomials of
//! the right degree. Gröbner bases are only needed for module-level questions
//! (colon ideals, map validation) and live in [`groebner`].

pub mod groebner;
pub mod map;
pub mod torsion;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::linalg::{Echelon, LinMap, SparseVec};
use crate::scalar::{Field, Scalar};
use crate::skewalg::{kappa, AlgebraError, Algebra, Monomial, SkewPolynomial};

pub use groebner::{Submodule, TermOrder};
pub use map::{ModuleMap, ShortExactSequence};
pub use torsion::{torsion_submodule, TorsionMode, TorsionReport, WindowStatus};

/// A vector in a free module: one polynomial per generator.
pub type FreeVector = Vec<SkewPolynomial>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("relation {column} has {found} components, expected {expected}")]
    RelationLength { column: usize, expected: usize, found: usize },
    #[error("relation {column}, component {component}: not homogeneous")]
    NotHomogeneous { column: usize, component: usize },
    #[error("relation {column}, component {component}: degree {found}, expected {expected}")]
    RelationDegree { column: usize, component: usize, expected: i64, found: i64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("modules are defined over different algebras")]
    AlgebraMismatch,
    #[error("image of generator {generator}: {message}")]
    MapImage { generator: usize, message: String },
    #[error("relation {relation} of the source is not mapped into the target relations")]
    MapRelation { relation: usize },
    #[error("maps do not compose: {0}")]
    Composition(String),
    #[error("sequence is not exact in degree {degree}: {message}")]
    NotExact { degree: i64, message: String },
}

/// Free module with generators `e_t` of degree `degrees[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGradedModule {
    degrees: Vec<i64>,
}

impl FreeGradedModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        FreeGradedModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Basis of `(F)_d` as `(generator, monomial)` pairs, sorted.
    pub fn basis(&self, nvars: usize, d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (t, &dt) in self.degrees.iter().enumerate() {
            if d >= dt {
                for m in Monomial::all_of_degree(nvars, (d - dt) as u32) {
                    out.push((t, m));
                }
            }
        }
        out
    }
}

/// A relation column together with its declared degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: i64,
    pub entries: FreeVector,
}

/// Where a [`PieceMap`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Multiplication(Monomial),
    ModuleMap,
    Differential,
    Other(String),
}

/// Linear map between two graded pieces.
#[derive(Clone, Debug)]
pub struct PieceMap {
    pub src_degree: i64,
    pub tgt_degree: i64,
    pub map: LinMap,
    pub provenance: Provenance,
}

impl PieceMap {
    pub fn compose(&self, inner: &PieceMap) -> Option<PieceMap> {
        if inner.tgt_degree != self.src_degree {
            return None;
        }
        Some(PieceMap {
            src_degree: inner.src_degree,
            tgt_degree: self.tgt_degree,
            map: self.map.compose(&inner.map).ok()?,
            provenance: Provenance::Other("composite".into()),
        })
    }
}

/// The degree-`d` piece of a presented module.
#[derive(Debug)]
pub struct GradedPiece {
    degree: i64,
    field: Field,
    ambient: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    relations: Echelon,
    /// Ambient columns that survive in the quotient, in order.
    free_cols: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn ambient_basis(&self) -> &[(usize, Monomial)] {
        &self.ambient
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Labels `(generator, monomial)` of the quotient basis.
    pub fn basis(&self) -> impl Iterator<Item = &(usize, Monomial)> {
        self.free_cols.iter().map(|&c| &self.ambient[c])
    }

    pub fn basis_label(&self, i: usize) -> &(usize, Monomial) {
        &self.ambient[self.free_cols[i]]
    }

    pub fn ambient_index(&self, t: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(t, m.clone())).copied()
    }

    /// Coordinates in the quotient basis of a vector in ambient coordinates.
    pub fn coords(&self, ambient: &SparseVec) -> SparseVec {
        let rem = self.relations.reduce(ambient);
        SparseVec::from_entries(rem.entries().iter().map(|(c, v)| (self.position[c], v.clone())))
    }

    /// Coordinates of `sum c * (x^m e_t)` given as terms.
    pub fn coords_of_terms<'a>(&self, terms: impl IntoIterator<Item = (usize, &'a Monomial, Scalar)>) -> SparseVec {
        let amb = SparseVec::from_entries(terms.into_iter().map(|(t, m, c)| {
            let i = self.ambient_index(t, m).expect("term lies in this piece");
            (i, c)
        }));
        self.coords(&amb)
    }

    /// Coordinates of a free-module element homogeneous of this degree.
    pub fn coords_of_vector(&self, v: &FreeVector) -> SparseVec {
        let terms = v
            .iter()
            .enumerate()
            .flat_map(|(t, p)| p.terms().map(move |(m, c)| (t, m, c.clone())));
        self.coords_of_terms(terms)
    }

    /// Ambient vector of the quotient basis combination `coords`.
    pub fn lift(&self, coords: &SparseVec) -> SparseVec {
        SparseVec::from_entries(coords.entries().iter().map(|(i, c)| (self.free_cols[*i], c.clone())))
    }

    /// Free-module representative of a coordinate vector.
    pub fn representative(&self, coords: &SparseVec, nvars: usize, rank: usize) -> FreeVector {
        let mut out = vec![SkewPolynomial::zero(nvars); rank];
        for (i, c) in coords.entries() {
            let (t, m) = &self.ambient[self.free_cols[*i]];
            out[*t].add_term(m.clone(), c.clone());
        }
        out
    }

    /// Human-readable form, e.g. `2 x1*x2 e1 + x3 e2`; the generator suffix
    /// is dropped for cyclic modules.
    pub fn format(&self, coords: &SparseVec, rank: usize) -> String {
        format_terms(
            coords.entries().iter().map(|(i, c)| {
                let (t, m) = self.basis_label(*i);
                (c.clone(), m.to_string(), *t)
            }),
            rank,
        )
    }
}

/// Joins `(coefficient, monomial text, generator)` triples as a sum.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Scalar, String, usize)>, rank: usize) -> String {
    let mut out = String::new();
    for (c, mono, t) in terms {
        let body = match (c.is_one(), mono.as_str()) {
            (true, m) => m.to_string(),
            (false, "1") => c.to_string(),
            (false, m) if c.is_simple() => format!("{} {}", c, m),
            (false, m) => format!("({}) {}", c, m),
        };
        let gen = if rank > 1 { format!(" e{}", t + 1) } else { String::new() };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&body);
        out.push_str(&gen);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A finitely presented graded module.
#[derive(Clone)]
pub struct PresentedModule {
    alg: Algebra,
    free: FreeGradedModule,
    relations: Vec<Relation>,
    pieces: Arc<Mutex<BTreeMap<i64, Arc<GradedPiece>>>>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.free == other.free && self.relations == other.relations
    }
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule")
            .field("n", &self.alg.n())
            .field("degrees", &self.free.degrees)
            .field("relations", &self.relations.len())
            .finish()
    }
}

impl PresentedModule {
    /// Validates homogeneity of every column; zero columns are dropped.
    pub fn new(alg: Algebra, degrees: Vec<i64>, relations: Vec<Relation>) -> Result<Self, ModuleError> {
        let k = degrees.len();
        let mut kept = Vec::new();
        for (j, r) in relations.into_iter().enumerate() {
            if r.entries.len() != k {
                return Err(ModuleError::RelationLength { column: j, expected: k, found: r.entries.len() });
            }
            for (t, p) in r.entries.iter().enumerate() {
                if p.nvars() != alg.nvars() {
                    return Err(AlgebraError::VariableCount(alg.nvars(), p.nvars()).into());
                }
                if let Some((_, c)) = p.terms().next() {
                    if c.field_spec() != alg.field().spec() {
                        return Err(AlgebraError::FieldMismatch {
                            expected: alg.field().spec(),
                            found: c.field_spec(),
                        }
                        .into());
                    }
                }
                if p.is_zero() {
                    continue;
                }
                let Some(dp) = p.homogeneous_degree() else {
                    return Err(ModuleError::NotHomogeneous { column: j, component: t });
                };
                let expected = r.degree - degrees[t];
                if dp as i64 != expected {
                    return Err(ModuleError::RelationDegree { column: j, component: t, expected, found: dp as i64 });
                }
            }
            if r.entries.iter().any(|p| !p.is_zero()) {
                kept.push(r);
            }
        }
        Ok(PresentedModule {
            alg,
            free: FreeGradedModule::new(degrees),
            relations: kept,
            pieces: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    /// Relation columns whose degree is inferred from the entries.
    pub fn from_columns(alg: Algebra, degrees: Vec<i64>, columns: Vec<FreeVector>) -> Result<Self, ModuleError> {
        let rels = columns
            .into_iter()
            .map(|c| {
                let degree = c
                    .iter()
                    .enumerate()
                    .find_map(|(t, p)| p.homogeneous_degree().filter(|_| !p.is_zero()).map(|dp| dp as i64 + degrees[t]))
                    .unwrap_or(0);
                Relation { degree, entries: c }
            })
            .collect();
        Self::new(alg, degrees, rels)
    }

    pub fn free(alg: Algebra, degrees: Vec<i64>) -> Self {
        Self::new(alg, degrees, Vec::new()).expect("free modules are always valid")
    }

    pub fn zero(alg: Algebra) -> Self {
        Self::free(alg, Vec::new())
    }

    /// `A / (A x_{v1} + A x_{v2} + ...)` with the generator in degree 0.
    pub fn cyclic_monomial_quotient(alg: Algebra, gens: &[Monomial]) -> Self {
        let cols = gens.iter().map(|m| vec![alg.monomial(m.clone())]).collect();
        Self::from_columns(alg, vec![0], cols).expect("monomial relations are homogeneous")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn nvars(&self) -> usize {
        self.alg.nvars()
    }

    pub fn rank(&self) -> usize {
        self.free.rank()
    }

    pub fn degrees(&self) -> &[i64] {
        self.free.degrees()
    }

    pub fn free_module(&self) -> &FreeGradedModule {
        &self.free
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.entries.iter().filter(|p| !p.is_zero()).count() == 1
            && r.entries.iter().all(|p| p.len() <= 1))
    }

    /// Shift `s^t`: generator degrees become `d_i - t`, so `(s^t M)_d = M_{t+d}`.
    pub fn twist(&self, t: i64) -> PresentedModule {
        let degrees = self.free.degrees.iter().map(|d| d - t).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation { degree: r.degree - t, entries: r.entries.clone() })
            .collect();
        PresentedModule::new(self.alg.clone(), degrees, relations).expect("twist preserves validity")
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule, ModuleError> {
        if self.alg != other.alg {
            return Err(ModuleError::AlgebraMismatch);
        }
        let (k1, k2) = (self.rank(), other.rank());
        let zero = self.alg.zero();
        let mut degrees = self.free.degrees.clone();
        degrees.extend(other.free.degrees.iter().copied());
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut e = r.entries.clone();
            e.extend(std::iter::repeat_n(zero.clone(), k2));
            rels.push(Relation { degree: r.degree, entries: e });
        }
        for r in &other.relations {
            let mut e = vec![zero.clone(); k1];
            e.extend(r.entries.iter().cloned());
            rels.push(Relation { degree: r.degree, entries: e });
        }
        PresentedModule::new(self.alg.clone(), degrees, rels)
    }

    /// Adds relations `x_v e_t` for every listed variable and generator.
    pub fn kill_variables(&self, vars: &[usize]) -> PresentedModule {
        let mut rels = self.relations.clone();
        for (t, &dt) in self.free.degrees.iter().enumerate() {
            for &v in vars {
                let mut e = vec![self.alg.zero(); self.rank()];
                e[t] = self.alg.var(v);
                rels.push(Relation { degree: dt + 1, entries: e });
            }
        }
        PresentedModule::new(self.alg.clone(), self.free.degrees.clone(), rels).expect("valid relations")
    }

    /// The relation submodule of `F0` (generators only).
    pub fn relation_submodule(&self) -> Submodule {
        Submodule::new(
            self.alg.clone(),
            self.free.degrees.clone(),
            self.relations.iter().map(|r| r.entries.clone()).collect(),
        )
    }

    /// The graded piece `M_d` (memoized).
    pub fn piece(&self, d: i64) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().expect("piece cache").get(&d) {
            return p.clone();
        }
        let piece = Arc::new(self.compute_piece(d));
        self.pieces.lock().expect("piece cache").entry(d).or_insert(piece).clone()
    }

    fn compute_piece(&self, d: i64) -> GradedPiece {
        let nvars = self.nvars();
        let field = self.field().clone();
        let ambient = self.free.basis(nvars, d);
        let index: HashMap<(usize, Monomial), usize> =
            ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut relations = Echelon::new(ambient.len(), &field);
        for r in &self.relations {
            if r.degree > d {
                continue;
            }
            for m in Monomial::all_of_degree(nvars, (d - r.degree) as u32) {
                let mut entries = Vec::new();
                for (t, p) in r.entries.iter().enumerate() {
                    for (b, c) in p.terms() {
                        let s = self.alg.q_power(-kappa(&m, b));
                        entries.push((index[&(t, m.mul(b))], c * &s));
                    }
                }
                relations.insert(&SparseVec::from_entries(entries));
            }
        }
        let free_cols: Vec<usize> = (0..ambient.len()).filter(|c| !relations.is_pivot(*c)).collect();
        let position = free_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        GradedPiece { degree: d, field, ambient, index, relations, free_cols, position }
    }

    pub fn hilbert_function(&self, range: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        range.map(|d| self.piece(d).dim()).collect()
    }

    /// `M_d -> M_{d + deg u}`, class of `x^m e_t` to class of `u * x^m e_t`.
    pub fn mult_map(&self, d: i64, u: &Monomial) -> PieceMap {
        self.scaled_mult_map(d, u, &self.field().one())
    }

    /// `c * mult_map(d, u)`.
    pub fn scaled_mult_map(&self, d: i64, u: &Monomial, c: &Scalar) -> PieceMap {
        let src = self.piece(d);
        let e = d + u.degree() as i64;
        let tgt = self.piece(e);
        let cols = src
            .basis()
            .map(|(t, m)| {
                let s = &self.alg.q_power(-kappa(u, m)) * c;
                tgt.coords_of_terms([(*t, &u.mul(m), s)])
            })
            .collect();
        PieceMap {
            src_degree: d,
            tgt_degree: e,
            map: LinMap::from_columns(src.dim(), tgt.dim(), cols, self.field()),
            provenance: Provenance::Multiplication(u.clone()),
        }
    }

    /// Degree-`d` coordinates of a homogeneous free-module element.
    pub fn coords(&self, d: i64, v: &FreeVector) -> SparseVec {
        self.piece(d).coords_of_vector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn alg(n: usize) -> Algebra {
        Algebra::new(n, Field::generic())
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn piece_dimensions() {
        let a = alg(2);
        assert_eq!(PresentedModule::free(a.clone(), vec![0]).piece(2).dim(), 6);
        let q = PresentedModule::cyclic_monomial_quotient(a.clone(), &[m(&[0, 0, 1])]);
        assert_eq!(q.piece(3).dim(), 4);
        assert_eq!(PresentedModule::free(a, vec![1]).piece(0).dim(), 0);
    }

    #[test]
    fn hilbert_functions() {
        let a = alg(2);
        assert_eq!(PresentedModule::free(a.clone(), vec![0]).hilbert_function(0..=3), vec![1, 3, 6, 10]);
        let q = PresentedModule::cyclic_monomial_quotient(a.clone(), &[m(&[0, 0, 1])]);
        assert_eq!(q.hilbert_function(0..=3), vec![1, 2, 3, 4]);
        assert_eq!(PresentedModule::free(a, vec![2]).hilbert_function(0..=2), vec![0, 0, 1]);
    }

    #[test]
    fn multiplication_maps() {
        let a = alg(1);
        let free = PresentedModule::free(a.clone(), vec![0]);
        let f = free.mult_map(0, &m(&[1, 0]));
        assert_eq!(f.map.rank(), 1);
        assert!(f.map.is_injective());

        let q = PresentedModule::cyclic_monomial_quotient(alg(2), &[m(&[0, 0, 1])]);
        assert!(q.mult_map(0, &m(&[0, 0, 1])).map.is_zero());

        let x1 = free.mult_map(0, &m(&[1, 0]));
        let x2 = free.mult_map(1, &m(&[0, 1]));
        let both = free.mult_map(0, &m(&[1, 1]));
        let lhs = x2.compose(&x1).unwrap().map;
        assert_eq!(lhs, both.map.scale(&a.q_power(-1)));
    }

    #[test]
    fn bad_relation_degree() {
        let a = alg(1);
        let r = Relation { degree: 2, entries: vec![a.var(0)] };
        let err = PresentedModule::new(a, vec![0], vec![r]).unwrap_err();
        assert!(matches!(err, ModuleError::RelationDegree { column: 0, .. }));
    }

    #[test]
    fn twist_shifts_pieces() {
        let a = alg(2);
        let q = PresentedModule::cyclic_monomial_quotient(a, &[m(&[0, 0, 1])]);
        assert_eq!(q.twist(2).piece(0).dim(), q.piece(2).dim());
        assert_eq!(q.twist(2).twist(-2).hilbert_function(0..=4), q.hilbert_function(0..=4));
        assert_eq!(q.twist(0), q);
    }
}
