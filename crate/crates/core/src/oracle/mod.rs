//! Independent commutative (`q = 1`) reference implementation.
//!
//! Dense matrices, explicit monomial enumeration, textbook Čech complexes.
//! Nothing here calls the skew multiplication, the sparse echelon code or the
//! Gröbner machinery; only the expression parser is shared, for syntax.

pub mod dense;
pub mod words;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::FieldSpec;
use crate::text::{parse_expr, Expr, ParseError};

use dense::{from_columns, null_space, rank, rref, Row};

pub type Exps = Vec<u32>;
/// Commutative polynomial: exponent vector to coefficient.
pub type Poly = BTreeMap<Exps, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle supports q=1 only")]
    UnsupportedQ,
    #[error("relation {relation}: {message}")]
    Relation { relation: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `n`, generator degrees and relation columns over `Q[x_1..x_{n+1}]`.
#[derive(Clone, Debug)]
pub struct CommutativeModuleSpec {
    pub n: usize,
    pub degrees: Vec<i64>,
    pub relations: Vec<(i64, Vec<Poly>)>,
}

fn poly_degree(p: &Poly) -> Option<i64> {
    let mut it = p.keys().map(|e| e.iter().map(|&x| x as i64).sum::<i64>());
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

impl CommutativeModuleSpec {
    pub fn new(n: usize, degrees: Vec<i64>, relations: Vec<(i64, Vec<Poly>)>) -> Result<Self, OracleError> {
        for (j, (deg, col)) in relations.iter().enumerate() {
            let err = |message: String| OracleError::Relation { relation: j, message };
            if col.len() != degrees.len() {
                return Err(err(format!("expected {} entries, found {}", degrees.len(), col.len())));
            }
            for (t, p) in col.iter().enumerate() {
                if p.is_empty() {
                    continue;
                }
                match poly_degree(p) {
                    Some(d) if d + degrees[t] == *deg => {}
                    _ => return Err(err(format!("entry {} is not homogeneous of degree {}", t + 1, deg - degrees[t]))),
                }
            }
        }
        Ok(CommutativeModuleSpec { n, degrees, relations })
    }

    /// Builds the spec from relation text; any field other than `q = 1` is refused.
    pub fn from_text(field: FieldSpec, n: usize, degrees: Vec<i64>, rels: &[(i64, Vec<String>)]) -> Result<Self, OracleError> {
        if field != FieldSpec::Rationals {
            return Err(OracleError::UnsupportedQ);
        }
        let mut relations = Vec::new();
        for (j, (deg, entries)) in rels.iter().enumerate() {
            let mut col = Vec::new();
            for s in entries {
                let e = parse_expr(s)?;
                col.push(eval(&e, n + 1).map_err(|message| OracleError::Relation { relation: j, message })?);
            }
            relations.push((*deg, col));
        }
        CommutativeModuleSpec::new(n, degrees, relations)
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }
}

fn constant(c: BigRational, nvars: usize) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(vec![0; nvars], c);
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let v = out.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c * BigRational::from_integer(sign.into());
        if v.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert_with(BigRational::zero);
            *v += ca * cb;
            if v.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn as_constant(p: &Poly) -> Option<BigRational> {
    match p.len() {
        0 => Some(BigRational::zero()),
        1 => p.iter().next().filter(|(e, _)| e.iter().all(|&x| x == 0)).map(|(_, c)| c.clone()),
        _ => None,
    }
}

fn eval(e: &Expr, nvars: usize) -> Result<Poly, String> {
    Ok(match e {
        Expr::Int(v) => constant(BigRational::from_integer(v.clone()), nvars),
        Expr::Q => constant(BigRational::one(), nvars),
        Expr::Var(i, _) => {
            if *i >= nvars {
                return Err(format!("variable x{} out of range", i + 1));
            }
            let mut exps = vec![0; nvars];
            exps[*i] = 1;
            Poly::from([(exps, BigRational::one())])
        }
        Expr::Neg(a) => add(&Poly::new(), &eval(a, nvars)?, -1),
        Expr::Add(a, b) => add(&eval(a, nvars)?, &eval(b, nvars)?, 1),
        Expr::Sub(a, b) => add(&eval(a, nvars)?, &eval(b, nvars)?, -1),
        Expr::Mul(a, b) => mul(&eval(a, nvars)?, &eval(b, nvars)?),
        Expr::Div(a, b, _) => {
            let d = as_constant(&eval(b, nvars)?).ok_or("division by a non-constant")?;
            if d.is_zero() {
                return Err("division by zero".into());
            }
            let inv = constant(BigRational::one() / d, nvars);
            mul(&eval(a, nvars)?, &inv)
        }
        Expr::Pow(a, k, _) => {
            let base = eval(a, nvars)?;
            if *k < 0 {
                let c = as_constant(&base).filter(|c| !c.is_zero()).ok_or("negative power of a non-unit")?;
                let inv = BigRational::one() / c;
                constant(num_traits::pow(inv, k.unsigned_abs() as usize), nvars)
            } else {
                let mut out = constant(BigRational::one(), nvars);
                for _ in 0..*k {
                    out = mul(&out, &base);
                }
                out
            }
        }
    })
}

/// Exponent vectors of total degree `d` in lexicographic order.
fn monomials(nvars: usize, d: i64) -> Vec<Exps> {
    fn rec(nvars: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() + 1 == nvars {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(nvars, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(nvars, d as u32, &mut Vec::new(), &mut out);
    }
    out
}

/// `M_d` as ambient monomials modulo the relation span, with the non-pivot
/// columns of the reduced relation rows as quotient basis.
struct Piece {
    ambient: Vec<(usize, Exps)>,
    ambient_dim: usize,
    index: HashMap<(usize, Exps), usize>,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    basis: Vec<usize>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn unit(&self, t: usize, e: &Exps) -> Row {
        let mut v = vec![BigRational::zero(); self.ambient_dim];
        v[self.index[&(t, e.clone())]] = BigRational::one();
        v
    }

    /// Quotient coordinates of an ambient vector.
    fn reduce(&self, mut v: Row) -> Row {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= r * &f;
                }
            }
        }
        self.basis.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Linear map as a list of image columns.
#[derive(Clone, Debug)]
struct Map {
    src: usize,
    tgt: usize,
    cols: Vec<Row>,
}

impl Map {
    fn zero(src: usize, tgt: usize) -> Map {
        Map { src, tgt, cols: vec![vec![BigRational::zero(); tgt]; src] }
    }

    fn rank(&self) -> usize {
        rank(&self.cols, self.tgt)
    }

    fn kernel(&self) -> Vec<Row> {
        null_space(&from_columns(&self.cols, self.tgt), self.src)
    }

    fn apply(&self, v: &[BigRational]) -> Row {
        let mut out = vec![BigRational::zero(); self.tgt];
        for (c, x) in self.cols.iter().zip(v) {
            if !x.is_zero() {
                for (o, y) in out.iter_mut().zip(c) {
                    *o += y * x;
                }
            }
        }
        out
    }

    /// Block matrix from `block(i, j)`, `i` indexing target blocks.
    fn blocks(src: &[usize], tgt: &[usize], block: impl Fn(usize, usize) -> Option<Map>) -> Map {
        let ts: usize = tgt.iter().sum();
        let mut cols = Vec::new();
        for (j, &sj) in src.iter().enumerate() {
            for c in 0..sj {
                let mut col = Vec::with_capacity(ts);
                for (i, &ti) in tgt.iter().enumerate() {
                    match block(i, j) {
                        Some(m) => col.extend(m.cols[c].iter().cloned()),
                        None => col.extend(std::iter::repeat_n(BigRational::zero(), ti)),
                    }
                }
                cols.push(col);
            }
        }
        Map { src: src.iter().sum(), tgt: ts, cols }
    }

    fn scaled(&self, s: i64) -> Map {
        let f = BigRational::from_integer(s.into());
        Map { src: self.src, tgt: self.tgt, cols: self.cols.iter().map(|c| c.iter().map(|x| x * &f).collect()).collect() }
    }

    fn identity(n: usize) -> Map {
        let cols = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Map { src: n, tgt: n, cols }
    }
}

/// Cochain complex starting in degree `lo`.
#[derive(Clone, Debug)]
struct Cx {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<Map>,
}

impl Cx {
    fn zero() -> Cx {
        Cx { lo: 0, dims: vec![0], diffs: Vec::new() }
    }

    fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    fn dim(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.dims[(k - self.lo) as usize]
        }
    }

    fn diff(&self, k: i64) -> Map {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            Map::zero(self.dim(k), self.dim(k + 1))
        }
    }

    fn h(&self, k: i64) -> usize {
        self.dim(k) - self.diff(k).rank() - self.diff(k - 1).rank()
    }

    fn cycles(&self, k: i64) -> Vec<Row> {
        self.diff(k).kernel()
    }

    fn boundaries(&self, k: i64) -> Vec<Row> {
        self.diff(k - 1).cols
    }
}

/// Rank of `[z] -> [f z]` from cycles `z` into `H = Z / B`.
fn induced_rank(images: &[Row], boundaries: &[Row], dim: usize) -> usize {
    let mut all = boundaries.to_vec();
    let b = rank(&all, dim);
    all.extend(images.iter().cloned());
    rank(&all, dim) - b
}

/// Naive commutative engine for one module.
pub struct Oracle {
    spec: CommutativeModuleSpec,
    pieces: RefCell<BTreeMap<i64, Rc<Piece>>>,
}

/// Block `J` of a Čech term.
#[derive(Clone, Debug)]
struct Blk {
    subset: Vec<usize>,
    dim: usize,
}

#[derive(Clone, Debug)]
struct Cech {
    blocks: Vec<Vec<Blk>>,
    cx: Cx,
}

fn subsets(vars: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in vars.iter().enumerate() {
        for mut rest in subsets(&vars[i + 1..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

impl Oracle {
    pub fn new(spec: CommutativeModuleSpec) -> Oracle {
        Oracle { spec, pieces: RefCell::new(BTreeMap::new()) }
    }

    fn piece(&self, d: i64) -> Rc<Piece> {
        if let Some(p) = self.pieces.borrow().get(&d) {
            return p.clone();
        }
        let nv = self.spec.nvars();
        let mut ambient = Vec::new();
        for (t, &dt) in self.spec.degrees.iter().enumerate() {
            for e in monomials(nv, d - dt) {
                ambient.push((t, e));
            }
        }
        let index: HashMap<(usize, Exps), usize> = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rows = Vec::new();
        for (deg, col) in &self.spec.relations {
            for m in monomials(nv, d - deg) {
                let mut v = vec![BigRational::zero(); ambient.len()];
                for (t, p) in col.iter().enumerate() {
                    for (e, c) in p {
                        let key: Exps = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                        v[index[&(t, key)]] += c;
                    }
                }
                rows.push(v);
            }
        }
        let pivots = rref(&mut rows, ambient.len());
        let basis = (0..ambient.len()).filter(|c| !pivots.contains(c)).collect();
        let p = Rc::new(Piece { ambient_dim: ambient.len(), ambient, index, rows, pivots, basis });
        self.pieces.borrow_mut().insert(d, p.clone());
        p
    }

    pub fn hilbert(&self, range: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        range.map(|d| self.piece(d).dim()).collect()
    }

    /// Multiplication by `x^w` from `M_d` to `M_{d+|w|}`.
    fn mult(&self, d: i64, w: &Exps) -> Map {
        let src = self.piece(d);
        let dw: i64 = w.iter().map(|&x| x as i64).sum();
        let tgt = self.piece(d + dw);
        let cols = src
            .basis
            .iter()
            .map(|&c| {
                let (t, e) = &src.ambient[c];
                let key: Exps = e.iter().zip(w).map(|(a, b)| a + b).collect();
                tgt.reduce(tgt.unit(*t, &key))
            })
            .collect();
        Map { src: src.dim(), tgt: tgt.dim(), cols }
    }

    fn vars_of(&self, z: Option<usize>) -> Option<Vec<usize>> {
        z.map(|z| (z + 1..=self.spec.n).collect())
    }

    fn exps_of(&self, vars: &[usize], p: u32) -> Exps {
        let mut e = vec![0; self.spec.nvars()];
        for &v in vars {
            e[v] = p;
        }
        e
    }

    /// `dim` of degree-0 sections killed by `u^bound` (product) or by every
    /// `x^bound`, `x` in `S(z)` (ideal).
    pub fn sections_dim(&self, z: Option<usize>, ideal: bool, bound: u32) -> usize {
        let dim0 = self.piece(0).dim();
        let Some(vars) = self.vars_of(z) else {
            return 0;
        };
        if vars.is_empty() {
            return dim0;
        }
        let maps: Vec<Map> = if ideal {
            vars.iter().map(|&v| self.mult(0, &self.exps_of(&[v], bound))).collect()
        } else {
            vec![self.mult(0, &self.exps_of(&vars, bound))]
        };
        let tgt: usize = maps.iter().map(|m| m.tgt).sum();
        let cols = (0..dim0).map(|j| maps.iter().flat_map(|m| m.cols[j].iter().cloned()).collect()).collect();
        Map { src: dim0, tgt, cols }.kernel().len()
    }

    /// Torsion of `M_0` with respect to `x^u`, at pole bound `bound`.
    pub fn torsion_dim(&self, u: &Exps, bound: u32) -> usize {
        let w: Exps = u.iter().map(|&x| x * bound).collect();
        self.mult(0, &w).kernel().len()
    }

    fn cech(&self, z: Option<usize>, p: u32) -> Cech {
        let Some(vars) = self.vars_of(z) else {
            return Cech { blocks: vec![Vec::new()], cx: Cx::zero() };
        };
        let blocks: Vec<Vec<Blk>> = (0..=vars.len())
            .map(|k| {
                subsets(&vars, k)
                    .into_iter()
                    .map(|s| Blk { dim: self.piece(p as i64 * k as i64).dim(), subset: s })
                    .collect()
            })
            .collect();
        let dims = blocks.iter().map(|b| b.iter().map(|x| x.dim).sum()).collect();
        let mut diffs = Vec::new();
        for k in 0..vars.len() {
            let (src, tgt) = (&blocks[k], &blocks[k + 1]);
            let sd: Vec<usize> = src.iter().map(|b| b.dim).collect();
            let td: Vec<usize> = tgt.iter().map(|b| b.dim).collect();
            diffs.push(Map::blocks(&sd, &td, |i, j| {
                let (a, b) = (&src[j].subset, &tgt[i].subset);
                if !a.iter().all(|v| b.contains(v)) {
                    return None;
                }
                let x = *b.iter().find(|v| !a.contains(v)).expect("one new variable");
                let sign = if a.iter().filter(|&&y| y < x).count() % 2 == 0 { 1 } else { -1 };
                Some(self.mult(p as i64 * k as i64, &self.exps_of(&[x], p)).scaled(sign))
            }));
        }
        Cech { blocks, cx: Cx { lo: 0, dims, diffs } }
    }

    /// Projection `C(S') -> C(S)` keeping blocks inside `S`.
    fn projection(a: &Cech, b: &Cech, k: i64) -> Map {
        let src = if k >= 0 { a.blocks.get(k as usize) } else { None };
        let tgt = if k >= 0 { b.blocks.get(k as usize) } else { None };
        let empty = Vec::new();
        let (src, tgt) = (src.unwrap_or(&empty), tgt.unwrap_or(&empty));
        let sd: Vec<usize> = src.iter().map(|x| x.dim).collect();
        let td: Vec<usize> = tgt.iter().map(|x| x.dim).collect();
        Map::blocks(&sd, &td, |i, j| (src[j].subset == tgt[i].subset).then(|| Map::identity(src[j].dim)))
    }

    /// `Cone(C_lower -> C_upper)`.
    fn relative(&self, upper: Option<usize>, lower: Option<usize>, p: u32) -> (Cx, usize) {
        let cu = self.cech(upper, p);
        let cl = self.cech(lower, p);
        let (s, t) = (&cl.cx, &cu.cx);
        let lo = (s.lo - 1).min(t.lo);
        let hi = (s.hi() - 1).max(t.hi());
        let dims = (lo..=hi).map(|k| s.dim(k + 1) + t.dim(k)).collect();
        let diffs = (lo..hi)
            .map(|k| {
                let minus = s.diff(k + 1).scaled(-1);
                let f = Oracle::projection(&cl, &cu, k + 1);
                let dt = t.diff(k);
                Map::blocks(&[s.dim(k + 1), t.dim(k)], &[s.dim(k + 2), t.dim(k + 1)], |i, j| match (i, j) {
                    (0, 0) => Some(minus.clone()),
                    (1, 0) => Some(f.clone()),
                    (1, 1) => Some(dt.clone()),
                    _ => None,
                })
            })
            .collect();
        // Width of the source part in degree 0, used to embed (0, m).
        let width0 = s.dim(1);
        (Cx { lo, dims, diffs }, width0)
    }

    pub fn cech_level(&self, z: Option<usize>, p: u32) -> CechLevelDims {
        let c = self.cech(z, p);
        let next = self.cech(z, p + 1);
        let top = c.cx.hi();
        let cohomology = (0..=top).map(|k| c.cx.h(k)).collect();
        let term_dims = (0..=top).map(|k| c.cx.dim(k)).collect();
        let transition_ranks = (0..=top)
            .map(|k| {
                let blocks = &c.blocks[k as usize];
                let sd: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
                let parts: Vec<Map> =
                    blocks.iter().map(|b| self.mult(p as i64 * k, &self.exps_of(&b.subset, 1))).collect();
                let td: Vec<usize> = parts.iter().map(|m| m.tgt).collect();
                let tr = Map::blocks(&sd, &td, |i, j| (i == j).then(|| parts[j].clone()));
                let images: Vec<Row> = c.cx.cycles(k).iter().map(|z| tr.apply(z)).collect();
                induced_rank(&images, &next.cx.boundaries(k), next.cx.dim(k))
            })
            .collect();
        CechLevelDims { p, term_dims, cohomology, transition_ranks }
    }

    /// Cousin dimensions along `filtration` (padded with the empty set).
    pub fn cousin(&self, filtration: &[usize], p: u32) -> CousinDims {
        let r = filtration.len();
        let s = |i: usize| filtration.get(i).copied();
        let rels: Vec<(Cx, usize)> = (0..r).map(|i| self.relative(s(i), s(i + 1), p)).collect();
        let dim0 = self.piece(0).dim();
        let terms: Vec<usize> = rels.iter().enumerate().map(|(i, (c, _))| c.h(i as i64)).collect();
        let (c0, w0) = &rels[0];
        let e_images: Vec<Row> = (0..dim0)
            .map(|j| {
                let mut v = vec![BigRational::zero(); c0.dim(0)];
                v[w0 + j] = BigRational::one();
                v
            })
            .collect();
        let mut ranks = vec![induced_rank(&e_images, &c0.boundaries(0), c0.dim(0))];
        for i in 0..r.saturating_sub(1) {
            let (a, _) = &rels[i];
            let (b, _) = &rels[i + 1];
            let k = i as i64;
            // (x, y) -> (0, x): x is the first block of a^k, placed after the
            // source block of b^{k+1}.
            let xw = a.dim(k) - self.cech(s(i), p).cx.dim(k);
            let off = b.dim(k + 1) - xw;
            let images: Vec<Row> = a
                .cycles(k)
                .iter()
                .map(|z| {
                    let mut v = vec![BigRational::zero(); b.dim(k + 1)];
                    for (t, x) in z.iter().take(xw).enumerate() {
                        v[off + t] = x.clone();
                    }
                    v
                })
                .collect();
            ranks.push(induced_rank(&images, &b.boundaries(k + 1), b.dim(k + 1)));
        }
        let mut dims = vec![dim0];
        dims.extend(terms.iter().copied());
        let mut cohomology = vec![dim0 - ranks[0]];
        for i in 0..r {
            let out = ranks.get(i + 1).copied().unwrap_or(0);
            cohomology.push(terms[i] - out - ranks[i]);
        }
        CousinDims { p, dims, ranks, cohomology }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CechLevelDims {
    pub p: u32,
    pub term_dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub transition_ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CousinDims {
    pub p: u32,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
}

/// Dimensions compared between the oracle and the main engine; both sides
/// fill this same record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    pub hilbert: Vec<usize>,
    /// Keys `ideal:z` and `product:z`.
    pub sections: BTreeMap<String, usize>,
    /// Key `z`; one entry per level `1..=p_max`.
    pub cech: BTreeMap<String, Vec<CechLevelDims>>,
    pub cousin: Vec<CousinDims>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsQuery {
    pub d_max: i64,
    pub p_max: u32,
    pub filtration: Vec<usize>,
    /// Pole order used for the naive torsion kernels.
    pub pole_bound: u32,
}

/// The full comparison record at `q = 1`.
pub fn oracle_dims(spec: &CommutativeModuleSpec, query: &DimsQuery) -> DimsReport {
    let o = Oracle::new(spec.clone());
    let n = spec.n;
    let hilbert = o.hilbert(0..=query.d_max);
    let mut sections = BTreeMap::new();
    for z in 0..=n {
        sections.insert(format!("ideal:{}", z), o.sections_dim(Some(z), true, query.pole_bound));
        sections.insert(format!("product:{}", z), o.sections_dim(Some(z), false, query.pole_bound));
    }
    let mut cech = BTreeMap::new();
    for z in 0..=n {
        cech.insert(z.to_string(), (1..=query.p_max).map(|p| o.cech_level(Some(z), p)).collect());
    }
    let cousin = (1..=query.p_max).map(|p| o.cousin(&query.filtration, p)).collect();
    DimsReport { hilbert, sections, cech, cousin }
}

/// Single queries of the reference pipeline.
#[derive(Clone, Debug)]
pub enum OracleQuery {
    Hilbert { d_max: i64 },
    Torsion { u: Exps, bound: u32 },
    Cech { z: usize, p_max: u32 },
    Cousin { filtration: Vec<usize>, p_max: u32 },
}

pub fn oracle_pipeline(spec: &CommutativeModuleSpec, query: &OracleQuery) -> serde_json::Value {
    let o = Oracle::new(spec.clone());
    match query {
        OracleQuery::Hilbert { d_max } => serde_json::json!({ "hilbert": o.hilbert(0..=*d_max) }),
        OracleQuery::Torsion { u, bound } => serde_json::json!({ "torsion_dim": o.torsion_dim(u, *bound), "bound": bound }),
        OracleQuery::Cech { z, p_max } => {
            let levels: Vec<CechLevelDims> = (1..=*p_max).map(|p| o.cech_level(Some(*z), p)).collect();
            serde_json::json!({ "levels": levels })
        }
        OracleQuery::Cousin { filtration, p_max } => {
            let levels: Vec<CousinDims> = (1..=*p_max).map(|p| o.cousin(filtration, p)).collect();
            serde_json::json!({ "levels": levels })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, degrees: Vec<i64>, rels: &[(i64, &[&str])]) -> CommutativeModuleSpec {
        let rels: Vec<(i64, Vec<String>)> = rels.iter().map(|(d, e)| (*d, e.iter().map(|s| s.to_string()).collect())).collect();
        CommutativeModuleSpec::from_text(FieldSpec::Rationals, n, degrees, &rels).unwrap()
    }

    #[test]
    fn hilbert_of_plane_ring() {
        let o = Oracle::new(spec(1, vec![0], &[]));
        assert_eq!(o.hilbert(0..=3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn line_cech() {
        let o = Oracle::new(spec(1, vec![0], &[]));
        for p in 1..=5 {
            let l = o.cech_level(Some(0), p);
            assert_eq!(l.cohomology, vec![0, p as usize]);
        }
    }

    #[test]
    fn torsion_of_killed_variable() {
        let o = Oracle::new(spec(1, vec![0], &[(1, &["x2"])]));
        assert_eq!(o.torsion_dim(&vec![0, 1], 4), 1);
        assert_eq!(o.sections_dim(Some(0), true, 4), 1);
    }

    #[test]
    fn line_cousin() {
        let o = Oracle::new(spec(1, vec![0], &[]));
        let c = o.cousin(&[1, 0], 2);
        assert_eq!(c.dims, vec![1, 3, 2]);
        assert_eq!(c.cohomology, vec![0, 0, 0]);
    }

    #[test]
    fn refuses_other_fields() {
        let e = CommutativeModuleSpec::from_text(FieldSpec::GenericQ, 1, vec![0], &[]).unwrap_err();
        assert_eq!(e.to_string(), "oracle supports q=1 only");
    }
}
