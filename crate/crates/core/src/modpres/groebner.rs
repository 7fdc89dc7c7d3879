//! Left Gröbner bases for homogeneous submodules of free `A_{q,n}`-modules.
//!
//! Since `x^w * x^b` is a nonzero scalar times `x^{w+b}`, leading monomials
//! behave exactly as in the commutative case and Buchberger's algorithm only
//! has to carry the extra `q`-powers through S-vectors and reductions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Scalar;
use crate::skewalg::{kappa, Algebra, Monomial, SkewPolynomial};

use super::FreeVector;

/// Degree-reverse-lexicographic order on terms `x^m e_t`, compared by the
/// shifted degree `deg m + d_t`, then reverse-lexicographically along `perm`
/// (its last variable is the smallest), then by generator index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    perm: Vec<usize>,
}

impl TermOrder {
    /// `x1 > x2 > ... > x_{n+1}` in the revlex sense.
    pub fn standard(nvars: usize) -> TermOrder {
        TermOrder { perm: (0..nvars).collect() }
    }

    /// Standard order with variable `v` moved to the smallest position, so that
    /// `x_v` dividing a leading term of a homogeneous vector divides every term.
    pub fn with_last(nvars: usize, v: usize) -> TermOrder {
        let mut perm: Vec<usize> = (0..nvars).filter(|&i| i != v).collect();
        perm.push(v);
        TermOrder { perm }
    }

    pub fn describe(&self) -> String {
        let vars: Vec<String> = self.perm.iter().map(|v| format!("x{}", v + 1)).collect();
        format!("degrevlex({}), term-over-position", vars.join(" > "))
    }

    fn term(&self, degrees: &[i64], t: usize, m: Monomial) -> Term {
        let e = m.exps();
        Term {
            sdeg: m.degree() as i64 + degrees[t],
            key: self.perm.iter().rev().map(|&v| -(e[v] as i64)).collect(),
            pos: t,
            mono: m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Term {
    sdeg: i64,
    key: Vec<i64>,
    pos: usize,
    mono: Monomial,
}

/// Sparse module vector keyed by term order; the leading term is the last.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModVec(BTreeMap<Term, Scalar>);

impl ModVec {
    fn lead(&self) -> Option<(&Term, &Scalar)> {
        self.0.last_key_value()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `self -= c * w * g`.
    fn sub_multiple(&mut self, ctx: &Ctx, c: &Scalar, w: &Monomial, g: &ModVec) {
        for (term, a) in &g.0 {
            let s = ctx.alg.q_power(-kappa(w, &term.mono));
            let t = ctx.order.term(&ctx.degrees, term.pos, w.mul(&term.mono));
            let delta = &(a * &s) * c;
            match self.0.get_mut(&t) {
                Some(v) => {
                    let r = &*v - &delta;
                    if r.is_zero() {
                        self.0.remove(&t);
                    } else {
                        *v = r;
                    }
                }
                None => {
                    self.0.insert(t, -delta);
                }
            }
        }
    }

    fn monic(mut self) -> ModVec {
        if let Some((_, l)) = self.lead() {
            let inv = l.inv().expect("nonzero");
            for v in self.0.values_mut() {
                *v = &*v * &inv;
            }
        }
        self
    }

    fn mul_left(&self, ctx: &Ctx, w: &Monomial) -> ModVec {
        ModVec(
            self.0
                .iter()
                .map(|(term, a)| {
                    let s = ctx.alg.q_power(-kappa(w, &term.mono));
                    (ctx.order.term(&ctx.degrees, term.pos, w.mul(&term.mono)), a * &s)
                })
                .collect(),
        )
    }
}

struct Ctx {
    alg: Algebra,
    degrees: Vec<i64>,
    order: TermOrder,
}

impl Ctx {
    fn to_modvec(&self, v: &FreeVector) -> ModVec {
        let mut out = BTreeMap::new();
        for (t, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                out.insert(self.order.term(&self.degrees, t, m.clone()), c.clone());
            }
        }
        ModVec(out)
    }

    fn to_free(&self, v: &ModVec) -> FreeVector {
        let mut out = vec![self.alg.zero(); self.degrees.len()];
        for (term, c) in &v.0 {
            out[term.pos].add_term(term.mono.clone(), c.clone());
        }
        out
    }

    fn reducer<'a>(&self, basis: &'a [ModVec], term: &Term) -> Option<&'a ModVec> {
        basis.iter().find(|g| {
            let (lt, _) = g.lead().expect("basis elements are nonzero");
            lt.pos == term.pos && lt.mono.divides(&term.mono)
        })
    }

    /// Full normal form of `v` modulo `basis`.
    fn normal_form(&self, v: &ModVec, basis: &[ModVec]) -> ModVec {
        let mut rem = v.clone();
        let mut out = BTreeMap::new();
        while let Some((term, c)) = rem.lead().map(|(t, c)| (t.clone(), c.clone())) {
            match self.reducer(basis, &term) {
                Some(g) => {
                    let (lt, lc) = g.lead().unwrap();
                    let w = lt.mono.quotient_of(&term.mono);
                    let lead_coeff = lc * &self.alg.q_power(-kappa(&w, &lt.mono));
                    let factor = &c / &lead_coeff;
                    rem.sub_multiple(self, &factor, &w, g);
                    debug_assert!(!rem.0.contains_key(&term));
                }
                None => {
                    rem.0.remove(&term);
                    out.insert(term, c);
                }
            }
        }
        ModVec(out)
    }

    fn s_vector(&self, f: &ModVec, g: &ModVec) -> Option<ModVec> {
        let (tf, _) = f.lead()?;
        let (tg, _) = g.lead()?;
        if tf.pos != tg.pos {
            return None;
        }
        let l = tf.mono.lcm(&tg.mono);
        let a = f.mul_left(self, &tf.mono.quotient_of(&l)).monic();
        let b = g.mul_left(self, &tg.mono.quotient_of(&l)).monic();
        let mut s = a;
        s.sub_multiple(self, &self.alg.field().one(), &Monomial::one(self.alg.nvars()), &b);
        Some(s)
    }

    fn pair_degree(&self, f: &ModVec, g: &ModVec) -> Option<i64> {
        let (tf, _) = f.lead()?;
        let (tg, _) = g.lead()?;
        (tf.pos == tg.pos).then(|| tf.mono.lcm(&tg.mono).degree() as i64 + self.degrees[tf.pos])
    }

    fn buchberger(&self, gens: &[FreeVector]) -> Vec<ModVec> {
        let mut input: Vec<ModVec> = gens.iter().map(|g| self.to_modvec(g)).filter(|g| !g.is_zero()).collect();
        input.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
        let mut basis: Vec<ModVec> = Vec::new();
        let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
        let mut pending = input.into_iter().peekable();
        loop {
            // Process inputs and pairs in increasing degree.
            let next_input = pending.peek().map(|g| g.lead().unwrap().0.sdeg);
            let next_pair = pairs.first().map(|p| p.0);
            let candidate = match (next_input, next_pair) {
                (None, None) => break,
                (Some(_), None) => pending.next().unwrap(),
                (Some(a), Some(b)) if a <= b => pending.next().unwrap(),
                _ => {
                    let (_, i, j) = pairs.pop_first().unwrap();
                    if self.chain_skip(&basis, &pairs, i, j) {
                        continue;
                    }
                    match self.s_vector(&basis[i], &basis[j]) {
                        Some(s) => s,
                        None => continue,
                    }
                }
            };
            let r = self.normal_form(&candidate, &basis);
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            let k = basis.len();
            for (i, g) in basis.iter().enumerate() {
                if let Some(d) = self.pair_degree(g, &r) {
                    pairs.insert((d, i, k));
                }
            }
            basis.push(r);
        }
        self.interreduce(basis)
    }

    /// Buchberger's chain criterion: skip `(i, j)` when some `k` has a leading
    /// term dividing `lcm(i, j)` and both `(i, k)` and `(j, k)` were handled.
    fn chain_skip(&self, basis: &[ModVec], pending: &BTreeSet<(i64, usize, usize)>, i: usize, j: usize) -> bool {
        let (ti, _) = basis[i].lead().unwrap();
        let (tj, _) = basis[j].lead().unwrap();
        let l = ti.mono.lcm(&tj.mono);
        let is_pending = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pending.iter().any(|p| p.1 == a && p.2 == b)
        };
        basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let (tk, _) = g.lead().unwrap();
            tk.pos == ti.pos
                && tk.mono.divides(&l)
                && tk.mono.lcm(&ti.mono) != l
                && tk.mono.lcm(&tj.mono) != l
                && !is_pending(i, k)
                && !is_pending(j, k)
        })
    }

    fn interreduce(&self, basis: Vec<ModVec>) -> Vec<ModVec> {
        // Drop elements whose leading term is divisible by another's.
        let mut keep: Vec<ModVec> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let (tg, _) = g.lead().unwrap();
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                if i == j {
                    return false;
                }
                let (th, _) = h.lead().unwrap();
                th.pos == tg.pos && th.mono.divides(&tg.mono) && (th.mono != tg.mono || j < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out: Vec<ModVec> = Vec::new();
        for i in 0..keep.len() {
            let others: Vec<ModVec> =
                keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let (lt, lc) = keep[i].lead().map(|(t, c)| (t.clone(), c.clone())).unwrap();
            let mut tail = keep[i].clone();
            tail.0.remove(&lt);
            let mut r = self.normal_form(&tail, &others);
            r.0.insert(lt, lc);
            out.push(r.monic());
        }
        out.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
        out
    }
}

/// A homogeneous submodule of a free module, given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    alg: Algebra,
    degrees: Vec<i64>,
    gens: Vec<FreeVector>,
}

/// A reduced left Gröbner basis together with its term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx_order: TermOrder,
    alg: Algebra,
    degrees: Vec<i64>,
    elems: Vec<ModVec>,
}

impl Submodule {
    pub fn new(alg: Algebra, degrees: Vec<i64>, gens: Vec<FreeVector>) -> Submodule {
        let gens = gens.into_iter().filter(|g| g.iter().any(|p| !p.is_zero())).collect();
        Submodule { alg, degrees, gens }
    }

    pub fn generators(&self) -> &[FreeVector] {
        &self.gens
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Shifted degree of a nonzero homogeneous vector.
    pub fn vector_degree(&self, v: &FreeVector) -> Option<i64> {
        v.iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .and_then(|(t, p)| p.homogeneous_degree().map(|d| d as i64 + self.degrees[t]))
    }

    fn ctx(&self, order: TermOrder) -> Ctx {
        Ctx { alg: self.alg.clone(), degrees: self.degrees.clone(), order }
    }

    pub fn groebner(&self, order: &TermOrder) -> GroebnerBasis {
        let ctx = self.ctx(order.clone());
        let elems = ctx.buchberger(&self.gens);
        GroebnerBasis { ctx_order: order.clone(), alg: self.alg.clone(), degrees: self.degrees.clone(), elems }
    }

    pub fn standard_groebner(&self) -> GroebnerBasis {
        self.groebner(&TermOrder::standard(self.alg.nvars()))
    }

    /// `{ m : x_v * m in self }`, by dividing the basis elements whose leading
    /// term is divisible by `x_v` under an order making `x_v` smallest.
    pub fn colon_var(&self, v: usize) -> Submodule {
        let order = TermOrder::with_last(self.alg.nvars(), v);
        let gb = self.groebner(&order);
        let ev = Monomial::var(self.alg.nvars(), v);
        let gens = gb
            .elements()
            .into_iter()
            .map(|g| {
                let divisible = g.iter().all(|p| p.terms().all(|(m, _)| ev.divides(m)));
                if divisible {
                    g.iter()
                        .map(|p| {
                            SkewPolynomial::from_terms(
                                p.nvars(),
                                p.terms().map(|(m, c)| {
                                    let rest = ev.quotient_of(m);
                                    (rest.clone(), c * &self.alg.q_power(kappa(&ev, &rest)))
                                }),
                            )
                        })
                        .collect()
                } else {
                    g
                }
            })
            .collect();
        Submodule::new(self.alg.clone(), self.degrees.clone(), gens)
    }

    /// `{ m : u * m in self }` for a monomial `u`, as iterated single-variable
    /// colons taken from the leftmost factor of the normal word.
    pub fn colon_monomial(&self, u: &Monomial) -> Submodule {
        let mut cur = self.clone();
        for (v, &e) in u.exps().iter().enumerate() {
            for _ in 0..e {
                cur = cur.colon_var(v);
            }
        }
        cur
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.standard_groebner().reduces_to_zero(v)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        let gb = other.standard_groebner();
        self.gens.iter().all(|g| gb.reduces_to_zero(g))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// A spanning set of the degree-`d` part.
    pub fn span_in_degree(&self, d: i64) -> Vec<FreeVector> {
        let mut out = Vec::new();
        for g in &self.gens {
            let Some(e) = self.vector_degree(g) else { continue };
            if e > d {
                continue;
            }
            for w in Monomial::all_of_degree(self.alg.nvars(), (d - e) as u32) {
                out.push(g.iter().map(|p| self.alg.mul_monomial_left(&w, p)).collect());
            }
        }
        out
    }
}

impl GroebnerBasis {
    fn ctx(&self) -> Ctx {
        Ctx { alg: self.alg.clone(), degrees: self.degrees.clone(), order: self.ctx_order.clone() }
    }

    pub fn order(&self) -> &TermOrder {
        &self.ctx_order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<FreeVector> {
        let ctx = self.ctx();
        self.elems.iter().map(|g| ctx.to_free(g)).collect()
    }

    /// Leading terms `(generator, monomial)` in basis order.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|g| g.lead().map(|(t, _)| (t.pos, t.mono.clone())).unwrap()).collect()
    }

    pub fn normal_form(&self, v: &FreeVector) -> FreeVector {
        let ctx = self.ctx();
        ctx.to_free(&ctx.normal_form(&ctx.to_modvec(v), &self.elems))
    }

    pub fn reduces_to_zero(&self, v: &FreeVector) -> bool {
        let ctx = self.ctx();
        ctx.normal_form(&ctx.to_modvec(v), &self.elems).is_zero()
    }

    /// Checks that every S-vector reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let ctx = self.ctx();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if let Some(s) = ctx.s_vector(&self.elems[i], &self.elems[j]) {
                    if !ctx.normal_form(&s, &self.elems).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Compares two terms `x^a e_s`, `x^b e_t` under `order` (for tests).
pub fn compare_terms(order: &TermOrder, degrees: &[i64], a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    order.term(degrees, a.0, a.1.clone()).cmp(&order.term(degrees, b.0, b.1.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn alg(n: usize, f: Field) -> Algebra {
        Algebra::new(n, f)
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn monomial_generators_are_a_basis() {
        let a = alg(1, Field::generic());
        let n = Submodule::new(a.clone(), vec![0], vec![vec![a.var(0)], vec![a.var(1)]]);
        let gb = n.standard_groebner();
        assert_eq!(gb.len(), 2);
        assert!(gb.is_groebner());
        let x2x1 = a.multiply(&a.var(1), &a.var(0)).unwrap();
        assert!(gb.reduces_to_zero(&vec![x2x1]));
        assert!(!gb.reduces_to_zero(&vec![a.one()]));
    }

    #[test]
    fn binomial_ideal_closes_under_pairs() {
        let a = alg(2, Field::generic());
        let f = a.parse("x1*x2 - x3^2").unwrap();
        let g = a.parse("x1^2 - x2*x3").unwrap();
        let n = Submodule::new(a.clone(), vec![0], vec![vec![f.clone()], vec![g.clone()]]);
        let gb = n.standard_groebner();
        assert!(gb.is_groebner());
        let h = a.multiply(&a.var(2), &f).unwrap().add(&a.multiply(&a.var(0), &g).unwrap());
        assert!(gb.reduces_to_zero(&vec![h]));
    }

    #[test]
    fn colon_by_variable() {
        let a = alg(2, Field::generic());
        // (x1 x3) : x3 = (x1)
        let n = Submodule::new(a.clone(), vec![0], vec![vec![a.monomial(m(&[1, 0, 1]))]]);
        let c = n.colon_var(2);
        assert!(c.contains(&vec![a.var(0)]));
        assert!(!c.contains(&vec![a.var(1)]));
        // (x3) : x3 = everything
        let n = Submodule::new(a.clone(), vec![0], vec![vec![a.var(2)]]);
        assert!(n.colon_var(2).contains(&vec![a.one()]));
    }

    #[test]
    fn colon_with_q_scalars() {
        let a = alg(1, Field::generic());
        // N = A (x2 x1 - x1^2); x1 * m in N with m = x2 - q x1?
        let f = a.parse("x1*x2 - x1^2").unwrap();
        let n = Submodule::new(a.clone(), vec![0], vec![vec![f.clone()]]);
        let c = n.colon_var(0);
        for g in c.generators() {
            let prod = a.multiply(&a.var(0), &g[0]).unwrap();
            assert!(n.contains(&vec![prod]));
        }
        assert!(!c.contains(&vec![a.one()]));
    }

    #[test]
    fn revlex_with_last_variable() {
        let order = TermOrder::with_last(3, 0);
        // x1 is smallest: x2^2 > x1 x2
        let ord = compare_terms(&order, &[0], (0, &m(&[0, 2, 0])), (0, &m(&[1, 1, 0])));
        assert_eq!(ord, Ordering::Greater);
    }
}
