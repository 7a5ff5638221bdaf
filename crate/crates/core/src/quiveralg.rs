//! Bound quivers and their path algebras with an explicitly computed path basis.
//!
//! Paths are stored in traversal order (first arrow first). The written form
//! follows function composition, so the path "a then b" is written `ba`.

use crate::error::{Error, Result};
use crate::exactlin::{PrimeField, RowSpace};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= vertex_count || a.tgt >= vertex_count {
                return Err(Error::InvalidQuiver(format!("arrow {} out of range", a.name)));
            }
            if a.name.is_empty() || a.name.contains(['~', '·', ' ', '(', ')']) {
                return Err(Error::InvalidQuiver(format!("bad arrow name {:?}", a.name)));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {}", a.name)));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            arrows
                .iter()
                .map(|&(n, s, t)| Arrow { name: n.to_string(), src: s, tgt: t })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
    /// Whether every arrow name is a single character (affects path display).
    fn compact_names(&self) -> bool {
        self.arrows.iter().all(|a| a.name.chars().count() == 1)
    }
}

/// A path in traversal order; trivial paths have no arrows and `src == tgt`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v, tgt: v, arrows: vec![] }
    }

    pub fn arrow(q: &Quiver, i: usize) -> Self {
        let a = q.arrow(i);
        Path { src: a.src, tgt: a.tgt, arrows: vec![i] }
    }

    /// From arrow indices in traversal order.
    pub fn from_traversal(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Invalid("empty path needs a vertex".into()));
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).tgt != q.arrow(w[1]).src {
                return Err(Error::Invalid(format!(
                    "arrows {} and {} do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        let src = q.arrow(first).src;
        let tgt = q.arrow(*arrows.last().unwrap()).tgt;
        Ok(Path { src, tgt, arrows })
    }

    /// From arrow names in written order (the rightmost arrow is traversed first).
    pub fn from_names<S: AsRef<str>>(q: &Quiver, names: &[S]) -> Result<Self> {
        let mut idx = Vec::with_capacity(names.len());
        for n in names.iter().rev() {
            let n = n.as_ref();
            idx.push(
                q.arrow_index(n)
                    .ok_or_else(|| Error::Invalid(format!("unknown arrow {n}")))?,
            );
        }
        Self::from_traversal(q, idx)
    }

    /// Parses a written path such as `ab`, `a2·b2` or `e1`.
    pub fn parse(q: &Quiver, s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix('e').and_then(|r| r.parse::<usize>().ok()) {
            if q.arrow_index(s).is_none() {
                if v >= q.vertex_count() {
                    return Err(Error::Invalid(format!("vertex {v} out of range")));
                }
                return Ok(Path::trivial(v));
            }
        }
        let names = tokenize_arrows(q, s)?;
        Self::from_names(q, &names)
    }

    pub fn src(&self) -> usize {
        self.src
    }
    pub fn tgt(&self) -> usize {
        self.tgt
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }
    /// Arrow indices in traversal order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// The path "self, then other", if composable.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.tgt != other.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { src: self.src, tgt: other.tgt, arrows })
    }

    pub fn contains_subword(&self, w: &[usize]) -> bool {
        !w.is_empty() && self.arrows.windows(w.len()).any(|x| x == w)
    }

    /// Written form: arrows listed last-traversed first.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.src);
        }
        let sep = if q.compact_names() { "" } else { "·" };
        self.arrows
            .iter()
            .rev()
            .map(|&i| q.arrow(i).name.as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Arrow names in written order.
    pub fn names(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().rev().map(|&i| q.arrow(i).name.clone()).collect()
    }

    /// Degree-lexicographic order: length, then written arrow sequence, then vertex.
    pub fn deglex_cmp(&self, other: &Path) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.iter().rev().cmp(other.arrows.iter().rev()))
            .then_with(|| self.src.cmp(&other.src))
    }
}

fn tokenize_arrows(q: &Quiver, s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for chunk in s.split(['·', ' ', '*']).filter(|c| !c.is_empty()) {
        // Greedy longest match, with `x^k` as shorthand for k copies.
        let chars: Vec<char> = chunk.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut best = None;
            for a in q.arrows() {
                let n: Vec<char> = a.name.chars().collect();
                if chars[i..].starts_with(&n) && best.as_ref().is_none_or(|(l, _)| n.len() > *l) {
                    best = Some((n.len(), a.name.clone()));
                }
            }
            let Some((l, name)) = best else {
                return Err(Error::Invalid(format!("cannot parse path {s:?}")));
            };
            i += l;
            let mut reps = 1;
            if i < chars.len() && chars[i] == '^' {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                reps = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent in {s:?}")))?;
                i = end;
            }
            out.extend(std::iter::repeat_n(name, reps));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(u32, Path)>,
}

impl Relation {
    /// Terms sharing endpoints, each of length at least two; like paths are merged.
    pub fn new(field: PrimeField, terms: Vec<(u32, Path)>) -> Result<Self> {
        let mut merged: Vec<(u32, Path)> = Vec::new();
        for (c, p) in terms {
            if p.len() < 2 {
                return Err(Error::Invalid("inadmissible relation: term of length < 2".into()));
            }
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some(t) => t.0 = field.add(t.0, c),
                None => merged.push((c % field.p(), p)),
            }
        }
        merged.retain(|t| t.0 != 0);
        let Some((_, first)) = merged.first() else {
            return Err(Error::Invalid("relation with no nonzero term".into()));
        };
        let (s, t) = (first.src(), first.tgt());
        if merged.iter().any(|(_, p)| p.src() != s || p.tgt() != t) {
            return Err(Error::Invalid("relation terms with different endpoints".into()));
        }
        Ok(Relation { terms: merged })
    }

    /// Convenience constructor from written-order name lists with signed coefficients.
    pub fn from_written(q: &Quiver, field: PrimeField, terms: &[(i64, &[&str])]) -> Result<Self> {
        let mut out = Vec::new();
        for (c, names) in terms {
            out.push((field.from_i64(*c), Path::from_names(q, names)?));
        }
        Self::new(field, out)
    }

    /// Parses e.g. `ab - c^2` or `c2·a2 - a2·c1`.
    pub fn parse(q: &Quiver, field: PrimeField, s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let norm = s.replace('-', " -").replace('+', " +");
        let mut sign = 1i64;
        for tok in norm.split_whitespace() {
            let mut t = tok;
            if let Some(r) = t.strip_prefix('-') {
                sign = -sign;
                t = r;
            } else if let Some(r) = t.strip_prefix('+') {
                t = r;
            }
            if t.is_empty() {
                continue;
            }
            let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
            let (coef, rest) = if digits.is_empty() || q.arrow_index(t).is_some() {
                (1, t)
            } else {
                (digits.parse::<i64>().unwrap(), &t[digits.len()..])
            };
            terms.push((field.from_i64(sign * coef), Path::parse(q, rest)?));
            sign = 1;
        }
        Self::new(field, terms)
    }

    pub fn terms(&self) -> &[(u32, Path)] {
        &self.terms
    }
    pub fn src(&self) -> usize {
        self.terms[0].1.src()
    }
    pub fn tgt(&self) -> usize {
        self.terms[0].1.tgt()
    }
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap()
    }

    pub fn display(&self, q: &Quiver, field: PrimeField) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let v = field.to_signed(*c);
            if i > 0 {
                s.push_str(if v < 0 { " - " } else { " + " });
            } else if v < 0 {
                s.push('-');
            }
            if v.abs() != 1 {
                s.push_str(&v.abs().to_string());
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

/// Quiver, relations and field without a computed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: PrimeField,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: PrimeField) -> Self {
        BoundQuiver { quiver, relations, field }
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows().len()
    }
}

/// JSON form of an algebra presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<TermJson>>,
    pub p: u64,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: i64,
    /// Arrow names in written order.
    pub path: Vec<String>,
}

/// A sparse element: `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, u32)>;

/// Admissible quotient `kQ/I` with a path basis and structure constants.
#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    bq: Arc<BoundQuiver>,
    cap: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    blocks: Vec<Vec<Vec<usize>>>,
    nf: HashMap<Path, Sparse>,
    mult: Vec<Sparse>,
    monomials: Vec<Vec<usize>>,
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.bq == other.bq && self.basis == other.basis
    }
}

fn deglex_desc(a: &Path, b: &Path) -> Ordering {
    b.deglex_cmp(a)
}

impl BoundQuiverAlgebra {
    pub fn build(q: Quiver, rels: Vec<Relation>, field: PrimeField, cap: usize) -> Result<Self> {
        Self::from_bound(Arc::new(BoundQuiver::new(q, rels, field)), cap)
    }

    pub fn from_bound(bq: Arc<BoundQuiver>, cap: usize) -> Result<Self> {
        let alg = Self::build_at(bq.clone(), cap)?;
        // Pivots only certify that long paths rewrite to shorter ones; when some
        // length-cap path survives as a nonzero combination, confirm that one more
        // level of paths adds nothing (then the radical power vanishes).
        let surviving = alg.nf.iter().any(|(p, v)| p.len() == cap && !v.is_empty());
        if surviving {
            let bigger = Self::build_at(bq, cap + 1)?;
            if bigger.dim() != alg.dim() {
                return Err(Error::NotSaturated(cap));
            }
        }
        Ok(alg)
    }

    fn build_at(bq: Arc<BoundQuiver>, cap: usize) -> Result<Self> {
        if cap < 2 {
            return Err(Error::Invalid("length cap must be at least 2".into()));
        }
        let q = &bq.quiver;
        let field = bq.field;
        let n = q.vertex_count();
        let monomials: Vec<Vec<usize>> = bq
            .relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms()[0].1.arrows().to_vec())
            .collect();

        // All paths of length <= cap avoiding monomial relations.
        let mut all: Vec<Path> = (0..n).map(Path::trivial).collect();
        let mut frontier = all.clone();
        for _ in 0..cap {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.src != p.tgt() {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let ends_in_monomial = monomials
                        .iter()
                        .any(|m| arrows.len() >= m.len() && arrows.ends_with(m));
                    if !ends_in_monomial {
                        next.push(Path { src: p.src, tgt: a.tgt, arrows });
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }

        // Columns per block, largest path first.
        let mut cols: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
        for p in &all {
            cols[p.src][p.tgt].push(p.clone());
        }
        let mut col_of: HashMap<Path, usize> = HashMap::new();
        for row in cols.iter_mut() {
            for block in row.iter_mut() {
                block.sort_by(deglex_desc);
                for (i, p) in block.iter().enumerate() {
                    col_of.insert(p.clone(), i);
                }
            }
        }
        let mut spaces: Vec<Vec<RowSpace>> = (0..n)
            .map(|s| (0..n).map(|t| RowSpace::new(field, cols[s][t].len())).collect())
            .collect();

        // Span closure of the truncated relations under multiplication by arrows.
        let to_vec = |terms: &[(u32, Path)], s: usize, t: usize| -> Vec<u32> {
            let mut v = vec![0u32; cols[s][t].len()];
            for (c, p) in terms {
                if let Some(&i) = col_of.get(p) {
                    v[i] = field.add(v[i], *c);
                }
            }
            v
        };
        let mut queue: Vec<(usize, usize, Vec<u32>)> = bq
            .relations
            .iter()
            .map(|r| (r.src(), r.tgt(), to_vec(r.terms(), r.src(), r.tgt())))
            .collect();
        while let Some((s, t, v)) = queue.pop() {
            if spaces[s][t].is_full() || !spaces[s][t].insert(v.clone()) {
                continue;
            }
            let support: Vec<(u32, &Path)> = v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (c, &cols[s][t][i]))
                .collect();
            for (ai, a) in q.arrows().iter().enumerate() {
                let ap = Path::arrow(q, ai);
                if a.src == t {
                    let terms: Vec<(u32, Path)> =
                        support.iter().map(|(c, p)| (*c, p.then(&ap).unwrap())).collect();
                    queue.push((s, a.tgt, to_vec(&terms, s, a.tgt)));
                }
                if a.tgt == s {
                    let terms: Vec<(u32, Path)> =
                        support.iter().map(|(c, p)| (*c, ap.then(p).unwrap())).collect();
                    queue.push((a.src, t, to_vec(&terms, a.src, t)));
                }
            }
        }

        // Basis = non-pivot columns; saturation = every length-cap path is a pivot.
        let mut basis: Vec<Path> = Vec::new();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let block = &cols[s][t];
                let mut members: Vec<&Path> = block
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !spaces[s][t].is_pivot(*i))
                    .map(|(_, p)| p)
                    .collect();
                if members.iter().any(|p| p.len() == cap) {
                    return Err(Error::NotSaturated(cap));
                }
                members.reverse();
                for p in members {
                    blocks[s][t].push(basis.len());
                    basis.push(p.clone());
                }
            }
        }
        let index: HashMap<Path, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        let mut nf: HashMap<Path, Sparse> = HashMap::with_capacity(all.len());
        for p in &all {
            let (s, t) = (p.src, p.tgt);
            let c = col_of[p];
            let v = match spaces[s][t].pivot_row(c) {
                None => vec![(index[p], 1)],
                Some(row) => row
                    .iter()
                    .enumerate()
                    .filter(|&(j, &x)| j != c && x != 0)
                    .map(|(j, &x)| (index[&block_path(&cols, s, t, j)], field.neg(x)))
                    .collect(),
            };
            nf.insert(p.clone(), v);
        }

        let mut alg = BoundQuiverAlgebra {
            bq,
            cap,
            basis,
            index,
            blocks,
            nf,
            mult: Vec::new(),
            monomials,
        };
        alg.mult = alg.structure_constants();
        Ok(alg)
    }

    fn structure_constants(&self) -> Vec<Sparse> {
        let nb = self.basis.len();
        let mut mult = vec![Vec::new(); nb * nb];
        for i in 0..nb {
            for j in 0..nb {
                // b_i · b_j = "b_j, then b_i"
                if let Some(p) = self.basis[j].then(&self.basis[i]) {
                    mult[i * nb + j] = self.reduce_path(&p);
                }
            }
        }
        mult
    }

    /// Normal form of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> Sparse {
        if p.len() <= self.cap {
            return self.nf.get(p).cloned().unwrap_or_default();
        }
        if self.monomials.iter().any(|m| p.contains_subword(m)) {
            return Vec::new();
        }
        let head = Path {
            src: p.src,
            tgt: self.bq.quiver.arrow(p.arrows[self.cap - 1]).tgt,
            arrows: p.arrows[..self.cap].to_vec(),
        };
        let tail = Path {
            src: head.tgt,
            tgt: p.tgt,
            arrows: p.arrows[self.cap..].to_vec(),
        };
        let f = self.field();
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for (bi, c) in self.reduce_path(&head) {
            let joined = self.basis[bi].then(&tail).unwrap();
            for (k, d) in self.reduce_path(&joined) {
                let e = acc.entry(k).or_insert(0);
                *e = f.add(*e, f.mul(c, d));
            }
        }
        let mut out: Sparse = acc.into_iter().filter(|x| x.1 != 0).collect();
        out.sort_unstable();
        out
    }

    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.bq
    }
    pub fn quiver(&self) -> &Quiver {
        &self.bq.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.bq.relations
    }
    pub fn field(&self) -> PrimeField {
        self.bq.field
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn vertex_count(&self) -> usize {
        self.bq.quiver.vertex_count()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }
    /// Global indices of basis paths from `s` to `t`, i.e. a basis of `e_t A e_s`.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }
    /// Structure constants for `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i * self.basis.len() + j]
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn idempotent(&self, v: usize) -> Vec<u32> {
        self.path_elem(&Path::trivial(v))
    }

    pub fn arrow_elem(&self, name: &str) -> Option<Vec<u32>> {
        let i = self.quiver().arrow_index(name)?;
        Some(self.path_elem(&Path::arrow(self.quiver(), i)))
    }

    pub fn path_elem(&self, p: &Path) -> Vec<u32> {
        let mut v = self.zero();
        for (i, c) in self.reduce_path(p) {
            v[i] = c;
        }
        v
    }

    /// Element given by a written path, e.g. `"ab"`; panics on parse errors.
    pub fn elem(&self, written: &str) -> Vec<u32> {
        self.path_elem(&Path::parse(self.quiver(), written).expect("invalid path"))
    }

    pub fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field();
        u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field();
        u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    pub fn scale(&self, u: &[u32], s: u32) -> Vec<u32> {
        let f = self.field();
        u.iter().map(|&a| f.mul(a, s)).collect()
    }

    /// The product `uv` (traverse `v`, then `u`).
    pub fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let nb = self.dim();
        let mut out = vec![0u32; nb];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.mult[i * nb + j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self, u: &[u32]) -> bool {
        u.iter().all(|&x| x == 0)
    }

    /// True iff no trivial path occurs in `u`.
    pub fn radical_membership(&self, u: &[u32]) -> bool {
        u.iter().enumerate().all(|(i, &c)| c == 0 || !self.basis[i].is_trivial())
    }

    /// Evaluates a relation inside the algebra.
    pub fn eval_relation(&self, r: &Relation) -> Vec<u32> {
        let mut acc = self.zero();
        for (c, p) in r.terms() {
            acc = self.add(&acc, &self.scale(&self.path_elem(p), *c));
        }
        acc
    }

    pub fn display_elem(&self, u: &[u32]) -> String {
        let f = self.field();
        let parts: Vec<String> = u
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let p = self.basis[i].display(self.quiver());
                match f.to_signed(c) {
                    1 => p,
                    -1 => format!("-{p}"),
                    k => format!("{k}{p}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Quotient by the idempotents of `kill`; survivors keep their relative order.
    pub fn delete_vertices(&self, kill: &[usize]) -> Result<BoundQuiverAlgebra> {
        let n = self.vertex_count();
        let keep: Vec<usize> = (0..n).filter(|v| !kill.contains(v)).collect();
        if keep.is_empty() {
            return Err(Error::Invalid("all vertices killed".into()));
        }
        let new_v: Vec<Option<usize>> =
            (0..n).map(|v| keep.iter().position(|&k| k == v)).collect();
        let q = self.quiver();
        let mut arrow_map = vec![None; q.arrows().len()];
        let mut arrows = Vec::new();
        for (i, a) in q.arrows().iter().enumerate() {
            if let (Some(s), Some(t)) = (new_v[a.src], new_v[a.tgt]) {
                arrow_map[i] = Some(arrows.len());
                arrows.push(Arrow { name: a.name.clone(), src: s, tgt: t });
            }
        }
        let nq = Quiver::new(keep.len(), arrows)?;
        let mut rels = Vec::new();
        for r in self.relations() {
            let terms: Vec<(u32, Path)> = r
                .terms()
                .iter()
                .filter_map(|(c, p)| {
                    let idx: Option<Vec<usize>> = p.arrows().iter().map(|&a| arrow_map[a]).collect();
                    idx.map(|idx| (*c, Path::from_traversal(&nq, idx).unwrap()))
                })
                .collect();
            if !terms.is_empty() {
                rels.push(Relation::new(self.field(), terms)?);
            }
        }
        BoundQuiverAlgebra::build(nq, rels, self.field(), self.cap)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let q = self.quiver();
        AlgebraJson {
            vertices: q.vertex_count(),
            arrows: q.arrows().to_vec(),
            relations: self
                .relations()
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(c, p)| TermJson {
                            coef: self.field().to_signed(*c),
                            path: p.names(q),
                        })
                        .collect()
                })
                .collect(),
            p: self.field().p() as u64,
            cap: self.cap,
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let field = PrimeField::new(j.p)?;
        let q = Quiver::new(j.vertices, j.arrows.clone())?;
        let mut rels = Vec::new();
        for r in &j.relations {
            let mut terms = Vec::new();
            for t in r {
                terms.push((field.from_i64(t.coef), Path::from_names(&q, &t.path)?));
            }
            rels.push(Relation::new(field, terms)?);
        }
        Self::build(q, rels, field, j.cap)
    }
}

fn block_path(cols: &[Vec<Vec<Path>>], s: usize, t: usize, j: usize) -> Path {
    cols[s][t][j].clone()
}

impl fmt::Display for BoundQuiverAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quiver();
        writeln!(f, "algebra over F_{} with {} vertices, dim {}", self.field().p(), q.vertex_count(), self.dim())?;
        for r in self.relations() {
            writeln!(f, "  relation {}", r.display(q, self.field()))?;
        }
        for s in 0..q.vertex_count() {
            for t in 0..q.vertex_count() {
                let b = self.block(s, t);
                if b.is_empty() {
                    continue;
                }
                let names: Vec<String> = b.iter().map(|&i| self.basis[i].display(q)).collect();
                writeln!(f, "  {s} -> {t}: {}", names.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn truncated_polynomial() {
        let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
        let r = Relation::parse(&q, fld(5), "x^5").unwrap();
        let a = BoundQuiverAlgebra::build(q, vec![r], fld(5), 5).unwrap();
        assert_eq!(a.dim(), 5);
        let names: Vec<String> = a.basis().iter().map(|p| p.display(a.quiver())).collect();
        assert_eq!(names, ["e0", "x", "xx", "xxx", "xxxx"]);
    }

    #[test]
    fn two_cycle_with_ba() {
        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let r = Relation::parse(&q, fld(2), "ba").unwrap();
        let a = BoundQuiverAlgebra::build(q, vec![r], fld(2), 3).unwrap();
        assert_eq!(a.dim(), 5);
        assert!(a.is_zero(&a.mul(&a.elem("b"), &a.elem("a"))));
        assert_eq!(a.mul(&a.elem("a"), &a.elem("b")), a.elem("ab"));
        assert!(!a.is_zero(&a.elem("ab")));
    }

    #[test]
    fn unsaturated_cap_is_rejected() {
        let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
        let r = Relation::parse(&q, fld(3), "x^5").unwrap();
        assert_eq!(
            BoundQuiverAlgebra::build(q, vec![r], fld(3), 4).unwrap_err(),
            Error::NotSaturated(4)
        );
    }

    #[test]
    fn mixed_length_rewrite_keeps_nonzero_long_path() {
        // x^3 = y^2 is nonzero; everything of length 4 vanishes.
        let q = Quiver::from_triples(1, &[("x", 0, 0), ("y", 0, 0)]).unwrap();
        let f = fld(3);
        let rels = ["x^3 - y^2", "xy", "yx", "y^3"]
            .iter()
            .map(|s| Relation::parse(&q, f, s).unwrap())
            .collect();
        let a = BoundQuiverAlgebra::build(q, rels, f, 3).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.elem("xxx"), a.elem("yy"));
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let r = Relation::parse(&q, fld(3), "ba").unwrap();
        let a = BoundQuiverAlgebra::build(q, vec![r], fld(3), 3).unwrap();
        let (e0, e1) = (a.idempotent(0), a.idempotent(1));
        assert_eq!(a.mul(&e0, &e0), e0);
        assert!(a.is_zero(&a.mul(&e0, &e1)));
        assert!(!a.radical_membership(&e1));
        assert!(a.radical_membership(&a.elem("a")));
    }
}
