//! Bounded complexes of finitely generated projectives, their realization as
//! representations of `A ⊗ (chain with d² = 0)`, and homotopy strings over gentle
//! algebras.
//!
//! A map `P_v → P_w` is right multiplication by an element of `e_v A e_w`, i.e. a
//! combination of paths `w → v`. Differentials lower the degree.

use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, RowSpace};
use crate::quiveralg::{Arrow, BoundQuiver, BoundQuiverAlgebra, Path, Quiver, Relation, TermJson};
use crate::repcat::{decompose, hom_basis, is_isomorphic, Representation};
use crate::strings::{classify_type, AlgebraType};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::sync::Arc;

/// Dense algebra element in basis coordinates.
pub type Elem = Vec<u32>;

#[derive(Clone, Debug)]
pub struct ProjComplex {
    alg: Arc<BoundQuiverAlgebra>,
    lo: i32,
    /// Summand vertices per degree `lo..=hi`, sorted.
    summands: Vec<Vec<usize>>,
    /// `diff[k]` maps degree `lo + k + 1` to `lo + k`; entries `[target][source]`.
    diff: Vec<Vec<Vec<Elem>>>,
}

impl ProjComplex {
    /// Builds and checks shapes, block membership and `d² = 0`.
    pub fn new(
        alg: Arc<BoundQuiverAlgebra>,
        lo: i32,
        summands: Vec<Vec<usize>>,
        diff: Vec<Vec<Vec<Elem>>>,
    ) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Invalid("a complex needs at least one degree".into()));
        }
        if diff.len() + 1 != summands.len() {
            return Err(Error::DimensionMismatch("one differential per adjacent degree pair".into()));
        }
        for (k, d) in diff.iter().enumerate() {
            let (tgt, src) = (&summands[k], &summands[k + 1]);
            if d.len() != tgt.len() || d.iter().any(|row| row.len() != src.len()) {
                return Err(Error::DimensionMismatch(format!("differential at degree {}", lo + k as i32 + 1)));
            }
            for (t, row) in d.iter().enumerate() {
                for (s, x) in row.iter().enumerate() {
                    if x.len() != alg.dim() || !in_block(&alg, x, tgt[t], src[s]) {
                        return Err(Error::Invalid(format!(
                            "entry ({t},{s}) at degree {} is not a map P{} → P{}",
                            lo + k as i32 + 1,
                            src[s],
                            tgt[t]
                        )));
                    }
                }
            }
        }
        let cx = ProjComplex { alg, lo, summands, diff };
        for k in 1..cx.diff.len() {
            let sq = compose_blocks(&cx.alg, &cx.diff[k], &cx.diff[k - 1]);
            if sq.iter().flatten().any(|x| !cx.alg.is_zero(x)) {
                return Err(Error::DifferentialSquare(lo + k as i32 + 1));
            }
        }
        Ok(cx)
    }

    /// `P_v` in degree 0.
    pub fn stalk(alg: Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        ProjComplex { alg, lo: 0, summands: vec![vec![v]], diff: vec![] }
    }

    pub fn zero(alg: Arc<BoundQuiverAlgebra>) -> Self {
        ProjComplex { alg, lo: 0, summands: vec![vec![]], diff: vec![] }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.alg
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    pub fn hi(&self) -> i32 {
        self.lo + self.summands.len() as i32 - 1
    }
    pub fn summands(&self, deg: i32) -> &[usize] {
        self.index(deg).map_or(&[], |k| &self.summands[k])
    }
    /// Multiplicity of each `P_i` in degree `deg`.
    pub fn mult(&self, deg: i32) -> Vec<usize> {
        let mut m = vec![0; self.alg.vertex_count()];
        for &v in self.summands(deg) {
            m[v] += 1;
        }
        m
    }
    /// Number of indecomposable projective summands per degree, `lo..=hi`.
    pub fn ranks(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.len()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.summands.iter().all(|s| s.is_empty())
    }
    /// Differential out of degree `deg`, entries `[target][source]`.
    pub fn differential(&self, deg: i32) -> Option<&Vec<Vec<Elem>>> {
        let k = deg - self.lo;
        (k >= 1 && (k as usize) <= self.diff.len()).then(|| &self.diff[k as usize - 1])
    }
    fn index(&self, deg: i32) -> Option<usize> {
        let k = deg - self.lo;
        (k >= 0 && (k as usize) < self.summands.len()).then_some(k as usize)
    }

    pub fn shift(&self, k: i32) -> Self {
        ProjComplex { lo: self.lo + k, ..self.clone() }
    }

    /// Pads with zero terms so that the degree range covers `lo..=hi`.
    pub fn widen(&self, lo: i32, hi: i32) -> Self {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let mut summands = Vec::new();
        let mut diff = Vec::new();
        for d in lo..=hi {
            summands.push(self.summands(d).to_vec());
            if d > lo {
                diff.push(match self.differential(d) {
                    Some(m) => m.clone(),
                    None => {
                        let (t, s) = (self.summands(d - 1).len(), self.summands(d).len());
                        vec![vec![self.alg.zero(); s]; t]
                    }
                });
            }
        }
        ProjComplex { alg: self.alg.clone(), lo, summands, diff }
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Self {
        if self.is_zero() {
            return ProjComplex::zero(self.alg.clone());
        }
        let first = self.summands.iter().position(|s| !s.is_empty()).unwrap();
        let last = self.summands.iter().rposition(|s| !s.is_empty()).unwrap();
        ProjComplex {
            alg: self.alg.clone(),
            lo: self.lo + first as i32,
            summands: self.summands[first..=last].to_vec(),
            diff: self.diff[first..last].to_vec(),
        }
    }

    pub fn direct_sum(&self, other: &ProjComplex) -> Result<ProjComplex> {
        if *self.alg != *other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let (x, y) = (self.widen(lo, hi), other.widen(lo, hi));
        let mut summands = Vec::new();
        let mut perms = Vec::new();
        for k in 0..x.summands.len() {
            let mut tagged: Vec<(usize, usize)> =
                x.summands[k].iter().chain(&y.summands[k]).copied().enumerate().map(|(i, v)| (v, i)).collect();
            tagged.sort();
            perms.push(tagged.iter().map(|t| t.1).collect::<Vec<_>>());
            summands.push(tagged.iter().map(|t| t.0).collect());
        }
        let z = self.alg.zero();
        let mut diff = Vec::new();
        for k in 0..x.diff.len() {
            let (nt_x, ns_x) = (x.summands[k].len(), x.summands[k + 1].len());
            let entry = |t: usize, s: usize| -> Elem {
                match (t < nt_x, s < ns_x) {
                    (true, true) => x.diff[k][t][s].clone(),
                    (false, false) => y.diff[k][t - nt_x][s - ns_x].clone(),
                    _ => z.clone(),
                }
            };
            diff.push(
                perms[k]
                    .iter()
                    .map(|&t| perms[k + 1].iter().map(|&s| entry(t, s)).collect())
                    .collect(),
            );
        }
        ProjComplex::new(self.alg.clone(), lo, summands, diff)
    }

    /// Every differential entry lies in the radical.
    pub fn is_minimal(&self) -> bool {
        self.diff.iter().flatten().flatten().all(|x| self.alg.radical_membership(x))
    }

    /// Dimension table `[degree][vertex]` of the cohomology, degrees `lo..=hi`.
    pub fn cohomology_dims(&self) -> Vec<Vec<usize>> {
        let rep = self.to_representation_of_tensor();
        let n = self.alg.vertex_count();
        let q = &rep.bound_quiver().quiver;
        let span = self.summands.len();
        (0..span)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        let v = k * n + i;
                        let out_rank = if k > 0 {
                            rep.map(q.arrow_index(&diff_name(i, self.lo + k as i32)).unwrap()).rank()
                        } else {
                            0
                        };
                        let in_rank = if k + 1 < span {
                            rep.map(q.arrow_index(&diff_name(i, self.lo + k as i32 + 1)).unwrap()).rank()
                        } else {
                            0
                        };
                        rep.dims()[v] - out_rank - in_rank
                    })
                    .collect()
            })
            .collect()
    }

    /// The complex as a representation of the tensor bound quiver.
    pub fn to_representation_of_tensor(&self) -> Representation {
        let bq = tensor_quiver(&self.alg, self.lo, self.hi());
        let alg = &self.alg;
        let q = alg.quiver();
        let n = alg.vertex_count();
        let f = alg.field();
        // vertex (i, d): ⊕_s (P_{v_s})_i, basis = paths v_s → i
        let offsets = |k: usize, i: usize| -> Vec<usize> {
            let mut off = vec![0];
            for &v in &self.summands[k] {
                off.push(off.last().unwrap() + alg.block(v, i).len());
            }
            off
        };
        let mut dims = Vec::new();
        for k in 0..self.summands.len() {
            for i in 0..n {
                dims.push(*offsets(k, i).last().unwrap());
            }
        }
        let mut maps = Vec::new();
        for k in 0..self.summands.len() {
            for (ai, a) in q.arrows().iter().enumerate() {
                let (os, ot) = (offsets(k, a.src), offsets(k, a.tgt));
                let mut m = FpMatrix::zeros(f, *ot.last().unwrap(), *os.last().unwrap());
                let ap = Path::arrow(q, ai);
                for (s, &v) in self.summands[k].iter().enumerate() {
                    let (sb, tb) = (alg.block(v, a.src), alg.block(v, a.tgt));
                    for (c, &bi) in sb.iter().enumerate() {
                        let p = alg.basis_path(bi).then(&ap).unwrap();
                        for (b, coef) in alg.reduce_path(&p) {
                            let r = tb.iter().position(|&x| x == b).unwrap();
                            m.set(ot[s] + r, os[s] + c, coef);
                        }
                    }
                }
                maps.push(m);
            }
        }
        for k in 1..self.summands.len() {
            for i in 0..n {
                let (os, ot) = (offsets(k, i), offsets(k - 1, i));
                let mut m = FpMatrix::zeros(f, *ot.last().unwrap(), *os.last().unwrap());
                for (s, &v) in self.summands[k].iter().enumerate() {
                    for (t, &w) in self.summands[k - 1].iter().enumerate() {
                        let x = &self.diff[k - 1][t][s];
                        if alg.is_zero(x) {
                            continue;
                        }
                        let (sb, tb) = (alg.block(v, i), alg.block(w, i));
                        for (c, &bi) in sb.iter().enumerate() {
                            let u = alg.mul(&unit(alg, bi), x);
                            for (r, &bj) in tb.iter().enumerate() {
                                if u[bj] != 0 {
                                    m.set(ot[t] + r, os[s] + c, u[bj]);
                                }
                            }
                        }
                    }
                }
                maps.push(m);
            }
        }
        Representation::new(bq, dims, maps).expect("tensor representation shapes")
    }

    /// Recovers a complex from a representation of the tensor quiver whose terms are
    /// projective. The summand order within a degree is by vertex.
    pub fn from_representation_of_tensor(
        alg: Arc<BoundQuiverAlgebra>,
        lo: i32,
        rep: &Representation,
    ) -> Result<Self> {
        let n = alg.vertex_count();
        let span = rep.dims().len() / n;
        let q = alg.quiver();
        let tq = &rep.bound_quiver().quiver;
        let f = alg.field();
        let arrow_map = |k: usize, ai: usize| rep.map(tq.arrow_index(&format!("{}@{}", q.arrow(ai).name, lo + k as i32)).unwrap());
        // generators: complement of the radical at each vertex
        let mut summands: Vec<Vec<usize>> = Vec::new();
        let mut gens: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut coords: Vec<Vec<FpMatrix>> = Vec::new();
        for k in 0..span {
            let mut sv = Vec::new();
            let mut gv = Vec::new();
            for i in 0..n {
                let dim = rep.dims()[k * n + i];
                let mut rad = RowSpace::new(f, dim);
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.tgt == i {
                        let m = arrow_map(k, ai);
                        for c in 0..m.cols() {
                            rad.insert(m.column(c));
                        }
                    }
                }
                for e in 0..dim {
                    let mut v = vec![0; dim];
                    v[e] = 1;
                    if rad.insert(v.clone()) {
                        sv.push(i);
                        gv.push(v);
                    }
                }
            }
            // Φ at vertex j: columns = generator s pushed along basis paths v_s → j
            let mut phis = Vec::new();
            for j in 0..n {
                let mut cols = Vec::new();
                for (s, &v) in sv.iter().enumerate() {
                    for &bi in alg.block(v, j) {
                        let p = alg.basis_path(bi);
                        let mut w = gv[s].clone();
                        for &ai in p.arrows() {
                            w = arrow_map(k, ai).mul_vec(&w);
                        }
                        cols.push(w);
                    }
                }
                let phi = FpMatrix::from_columns(f, rep.dims()[k * n + j], &cols);
                let inv = phi
                    .inverse()
                    .ok_or_else(|| Error::Invalid(format!("degree {} is not projective", lo + k as i32)))?;
                phis.push(inv);
            }
            summands.push(sv);
            gens.push(gv);
            coords.push(phis);
        }
        let mut diff = Vec::new();
        for k in 1..span {
            let mut blk = vec![vec![alg.zero(); summands[k].len()]; summands[k - 1].len()];
            for (s, &v) in summands[k].iter().enumerate() {
                let dmap = rep.map(tq.arrow_index(&diff_name(v, lo + k as i32)).unwrap());
                let image = coords[k - 1][v].mul_vec(&dmap.mul_vec(&gens[k][s]));
                let mut off = 0;
                for (t, &w) in summands[k - 1].iter().enumerate() {
                    for &bi in alg.block(w, v) {
                        blk[t][s][bi] = image[off];
                        off += 1;
                    }
                }
            }
            diff.push(blk);
        }
        ProjComplex::new(alg, lo, summands, diff)
    }

    pub fn to_json(&self) -> ComplexJson {
        let q = self.alg.quiver();
        let f = self.alg.field();
        let enc = |x: &Elem| -> Vec<TermJson> {
            x.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| TermJson { coef: f.to_signed(c), path: self.alg.basis_path(i).names(q) })
                .collect()
        };
        ComplexJson {
            degrees: [self.lo, self.hi()],
            mult: (self.lo..=self.hi()).map(|d| self.mult(d)).collect(),
            diff: (self.lo + 1..=self.hi())
                .map(|d| DiffJson {
                    deg: d,
                    blocks: self.differential(d).unwrap().iter().map(|r| r.iter().map(enc).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: Arc<BoundQuiverAlgebra>, j: &ComplexJson) -> Result<Self> {
        let [lo, hi] = j.degrees;
        if hi < lo || j.mult.len() != (hi - lo + 1) as usize {
            return Err(Error::Invalid("degree range and multiplicities disagree".into()));
        }
        let summands: Vec<Vec<usize>> = j
            .mult
            .iter()
            .map(|m| m.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat_n(v, c)).collect())
            .collect();
        let f = alg.field();
        let mut diff: Vec<Vec<Vec<Elem>>> = (lo + 1..=hi)
            .map(|d| {
                let (t, s) = (summands[(d - 1 - lo) as usize].len(), summands[(d - lo) as usize].len());
                vec![vec![alg.zero(); s]; t]
            })
            .collect();
        for dj in &j.diff {
            if dj.deg <= lo || dj.deg > hi {
                return Err(Error::Invalid(format!("differential degree {} out of range", dj.deg)));
            }
            let k = (dj.deg - lo - 1) as usize;
            if dj.blocks.len() != diff[k].len() {
                return Err(Error::DimensionMismatch(format!("differential at degree {}", dj.deg)));
            }
            for (t, row) in dj.blocks.iter().enumerate() {
                if row.len() != diff[k][t].len() {
                    return Err(Error::DimensionMismatch(format!("differential at degree {}", dj.deg)));
                }
                for (s, terms) in row.iter().enumerate() {
                    let mut x = alg.zero();
                    for term in terms {
                        let p = if term.path.is_empty() {
                            Path::trivial(summands[(dj.deg - lo) as usize][s])
                        } else {
                            Path::from_names(alg.quiver(), &term.path)?
                        };
                        x = alg.add(&x, &alg.scale(&alg.path_elem(&p), f.from_i64(term.coef)));
                    }
                    diff[k][t][s] = x;
                }
            }
        }
        ProjComplex::new(alg, lo, summands, diff)
    }
}

/// JSON: `{"degrees": [lo, hi], "mult": [[...]], "diff": [{"deg": d, "blocks": [[element]]}]}`,
/// an element being a list of `{"coef", "path"}` terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: [i32; 2],
    pub mult: Vec<Vec<usize>>,
    pub diff: Vec<DiffJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiffJson {
    pub deg: i32,
    pub blocks: Vec<Vec<Vec<TermJson>>>,
}

fn unit(alg: &BoundQuiverAlgebra, i: usize) -> Elem {
    let mut u = alg.zero();
    u[i] = 1;
    u
}

/// `x ∈ e_src A e_tgt`: supported on paths `tgt → src`.
fn in_block(alg: &BoundQuiverAlgebra, x: &Elem, tgt: usize, src: usize) -> bool {
    let blk = alg.block(tgt, src);
    x.iter().enumerate().all(|(i, &c)| c == 0 || blk.contains(&i))
}

/// `(second ∘ first)[t][s] = Σ_k first[k][s] · second[t][k]`.
fn compose_blocks(alg: &BoundQuiverAlgebra, first: &[Vec<Elem>], second: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let ns = first.first().map_or(0, |r| r.len());
    second
        .iter()
        .map(|row| {
            (0..ns)
                .map(|s| {
                    let mut acc = alg.zero();
                    for (k, y) in row.iter().enumerate() {
                        let x = &first[k][s];
                        if !alg.is_zero(x) && !alg.is_zero(y) {
                            acc = alg.add(&acc, &alg.mul(x, y));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn diff_name(i: usize, deg: i32) -> String {
    format!("d{i}@{deg}")
}

/// Vertices `(i, d)` numbered `(d - lo)·n + i`; arrows `α@d` and `d{i}@{d}: (i, d) → (i, d-1)`.
pub fn tensor_quiver(alg: &BoundQuiverAlgebra, lo: i32, hi: i32) -> Arc<BoundQuiver> {
    let q = alg.quiver();
    let n = alg.vertex_count();
    let f = alg.field();
    let span = (hi - lo + 1) as usize;
    let vid = |i: usize, d: i32| (d - lo) as usize * n + i;
    let mut arrows = Vec::new();
    for d in lo..=hi {
        for a in q.arrows() {
            arrows.push(Arrow { name: format!("{}@{d}", a.name), src: vid(a.src, d), tgt: vid(a.tgt, d) });
        }
    }
    for d in lo + 1..=hi {
        for i in 0..n {
            arrows.push(Arrow { name: diff_name(i, d), src: vid(i, d), tgt: vid(i, d - 1) });
        }
    }
    let tq = Quiver::new(span * n, arrows).expect("tensor quiver");
    let idx = |name: String| tq.arrow_index(&name).unwrap();
    let mut rels = Vec::new();
    for d in lo..=hi {
        for r in alg.relations() {
            let terms = r
                .terms()
                .iter()
                .map(|(c, p)| {
                    let tr: Vec<usize> = p.arrows().iter().map(|&a| idx(format!("{}@{d}", q.arrow(a).name))).collect();
                    (*c, Path::from_traversal(&tq, tr).unwrap())
                })
                .collect();
            rels.push(Relation::new(f, terms).unwrap());
        }
    }
    for d in lo + 1..=hi {
        for a in q.arrows() {
            let left = vec![idx(format!("{}@{d}", a.name)), idx(diff_name(a.tgt, d))];
            let right = vec![idx(diff_name(a.src, d)), idx(format!("{}@{}", a.name, d - 1))];
            rels.push(
                Relation::new(
                    f,
                    vec![
                        (1, Path::from_traversal(&tq, left).unwrap()),
                        (f.neg(1), Path::from_traversal(&tq, right).unwrap()),
                    ],
                )
                .unwrap(),
            );
        }
        if d > lo + 1 {
            for i in 0..n {
                let p = Path::from_traversal(&tq, vec![idx(diff_name(i, d)), idx(diff_name(i, d - 1))]).unwrap();
                rels.push(Relation::new(f, vec![(1, p)]).unwrap());
            }
        }
    }
    Arc::new(BoundQuiver::new(tq, rels, f))
}

/// Dimension of the space of chain maps `C → D`, solved directly on projective blocks.
pub fn chain_map_dim(c: &ProjComplex, d: &ProjComplex) -> Result<usize> {
    if *c.alg != *d.alg {
        return Err(Error::AlgebraMismatch);
    }
    let alg = &c.alg;
    let lo = c.lo.min(d.lo);
    let hi = c.hi().max(d.hi());
    let (c, d) = (c.widen(lo, hi), d.widen(lo, hi));
    // unknowns: per degree and summand pair (t ∈ D, s ∈ C), the basis paths w_t → v_s
    let mut vars: Vec<(usize, usize, usize, usize)> = Vec::new(); // (k, t, s, basis index)
    for k in 0..c.summands.len() {
        for (t, &w) in d.summands[k].iter().enumerate() {
            for (s, &v) in c.summands[k].iter().enumerate() {
                for &bi in alg.block(w, v) {
                    vars.push((k, t, s, bi));
                }
            }
        }
    }
    if vars.is_empty() {
        return Ok(0);
    }
    let nb = alg.dim();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for k in 1..c.summands.len() {
        let (dc, dd) = (&c.diff[k - 1], &d.diff[k - 1]);
        // equation block (t', s) for t' ∈ D_{k-1}, s ∈ C_k: each is an algebra element
        let nt = d.summands[k - 1].len();
        let ns = c.summands[k].len();
        let mut eq = vec![vec![0u32; vars.len()]; nt * ns * nb];
        for (vi, &(kk, t, s, bi)) in vars.iter().enumerate() {
            let x = unit(alg, bi);
            if kk == k {
                // d^D ∘ f_k : Σ_t f[t][s] · dD[t'][t]
                for tp in 0..nt {
                    let y = alg.mul(&x, &dd[tp][t]);
                    for (e, &val) in y.iter().enumerate() {
                        if val != 0 {
                            let row = &mut eq[(tp * ns + s) * nb + e];
                            row[vi] = alg.field().add(row[vi], val);
                        }
                    }
                }
            }
            if kk == k - 1 {
                // − f_{k-1} ∘ d^C : Σ_{s'} dC[s'][s] · f[t'][s']
                let (tp, sp) = (t, s);
                for s2 in 0..ns {
                    let y = alg.mul(&dc[sp][s2], &x);
                    for (e, &val) in y.iter().enumerate() {
                        if val != 0 {
                            let row = &mut eq[(tp * ns + s2) * nb + e];
                            row[vi] = alg.field().sub(row[vi], val);
                        }
                    }
                }
            }
        }
        rows.extend(eq.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
    }
    let mut span = RowSpace::new(alg.field(), vars.len());
    for r in rows {
        span.insert(r);
    }
    Ok(vars.len() - span.dim())
}

/// Decomposition of a minimal complex into indecomposable complexes.
pub fn decompose_complex(cx: &ProjComplex) -> Result<Vec<ProjComplex>> {
    if !cx.is_minimal() {
        return Err(Error::Invalid("complex is not minimal".into()));
    }
    let rep = cx.to_representation_of_tensor();
    let dec = decompose(&rep)?;
    dec.pieces
        .iter()
        .map(|p| ProjComplex::from_representation_of_tensor(cx.alg.clone(), cx.lo, &p.rep).map(|c| c.trimmed()))
        .collect()
}

pub fn is_indecomposable_complex(cx: &ProjComplex) -> Result<bool> {
    Ok(decompose_complex(cx)?.len() == 1)
}

/// Isomorphism of minimal complexes (equivalently, homotopy equivalence).
pub fn is_isomorphic_complex(x: &ProjComplex, y: &ProjComplex) -> Result<bool> {
    if !x.is_minimal() || !y.is_minimal() {
        return Err(Error::Invalid("complex is not minimal".into()));
    }
    if *x.alg != *y.alg {
        return Err(Error::AlgebraMismatch);
    }
    let (x, y) = (x.trimmed(), y.trimmed());
    if x.is_zero() || y.is_zero() {
        return Ok(x.is_zero() && y.is_zero());
    }
    if x.lo != y.lo || x.hi() != y.hi() || (x.lo..=x.hi()).any(|d| x.mult(d) != y.mult(d)) {
        return Ok(false);
    }
    is_isomorphic(&x.to_representation_of_tensor(), &y.to_representation_of_tensor())
}

/// Dimension of chain maps computed through the tensor representations.
pub fn tensor_hom_dim(x: &ProjComplex, y: &ProjComplex) -> Result<usize> {
    let lo = x.lo.min(y.lo);
    let hi = x.hi().max(y.hi());
    let (a, b) = (x.widen(lo, hi), y.widen(lo, hi));
    Ok(hom_basis(&a.to_representation_of_tensor(), &b.to_representation_of_tensor())?.dim())
}

/// A nonzero path used as a letter, walked forwards or backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HLetter {
    pub path: Path,
    pub inverse: bool,
}

impl HLetter {
    fn start(&self) -> usize {
        if self.inverse { self.path.tgt() } else { self.path.src() }
    }
    fn end(&self) -> usize {
        if self.inverse { self.path.src() } else { self.path.tgt() }
    }
    fn flipped(&self) -> Self {
        HLetter { path: self.path.clone(), inverse: !self.inverse }
    }
}

/// Homotopy letters in traversal order; `start` fixes the vertex of the trivial string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomotopyString {
    pub start: usize,
    pub letters: Vec<HLetter>,
}

impl HomotopyString {
    pub fn trivial(v: usize) -> Self {
        HomotopyString { start: v, letters: vec![] }
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn end(&self) -> usize {
        self.letters.last().map_or(self.start, |l| l.end())
    }
    pub fn inverse(&self) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        HomotopyString { start: self.end(), letters: self.letters.iter().rev().map(|l| l.flipped()).collect() }
    }

    /// Written form: letters last-walked first, e.g. `(b)(ab)(a)`; inverse letters `(ab)~`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("(e{})", self.start);
        }
        self.letters
            .iter()
            .rev()
            .map(|l| format!("({}){}", l.path.display(q), if l.inverse { "~" } else { "" }))
            .collect()
    }

    pub fn parse(alg: &BoundQuiverAlgebra, s: &str) -> Result<Self> {
        let q = alg.quiver();
        let mut letters = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| Error::Invalid(format!("cannot parse homotopy string {s:?}")))?;
            let body = &rest[1..body_end + 1];
            rest = &rest[body_end + 2..];
            let inverse = rest.starts_with('~');
            if inverse {
                rest = &rest[1..];
            }
            let path = Path::parse(q, body)?;
            if path.is_trivial() {
                if !letters.is_empty() || !rest.is_empty() {
                    return Err(Error::Invalid("trivial letter inside a homotopy string".into()));
                }
                return Ok(HomotopyString::trivial(path.src()));
            }
            letters.push(HLetter { path, inverse });
        }
        letters.reverse();
        let Some(first) = letters.first() else {
            return Err(Error::Invalid("empty homotopy string".into()));
        };
        let hs = HomotopyString { start: first.start(), letters };
        if !is_homotopy_string(alg, &hs.letters) {
            return Err(Error::Invalid(format!("{s} is not a homotopy string")));
        }
        Ok(hs)
    }

    /// Degree of each position, anchored so the last-walked (leftmost written) end is 0.
    pub fn degrees(&self) -> Vec<i32> {
        let mut deg = vec![0i32];
        for l in &self.letters {
            let d = *deg.last().unwrap();
            deg.push(if l.inverse { d - 1 } else { d + 1 });
        }
        let top = *deg.last().unwrap();
        deg.iter().map(|d| d - top).collect()
    }

    fn key(&self, q: &Quiver) -> (usize, usize, Vec<(String, bool)>) {
        (
            self.letters.len(),
            self.letters.iter().filter(|l| l.inverse).count(),
            self.letters.iter().rev().map(|l| (l.path.display(q), l.inverse)).collect(),
        )
    }
}

fn homotopy_cmp(q: &Quiver, a: &HomotopyString, b: &HomotopyString) -> Ordering {
    a.key(q).cmp(&b.key(q)).then_with(|| a.start.cmp(&b.start))
}

fn nonzero(alg: &BoundQuiverAlgebra, p: &Path) -> bool {
    !alg.reduce_path(p).is_empty()
}

fn junction_ok(alg: &BoundQuiverAlgebra, x: &HLetter, y: &HLetter) -> bool {
    if x.end() != y.start() {
        return false;
    }
    match (x.inverse, y.inverse) {
        (false, false) => !nonzero(alg, &x.path.then(&y.path).unwrap()),
        (true, true) => !nonzero(alg, &y.path.then(&x.path).unwrap()),
        // both paths end at the junction: their last arrows must differ
        (false, true) => x.path.arrows().last() != y.path.arrows().last(),
        // both paths start at the junction: their first arrows must differ
        (true, false) => x.path.arrows().first() != y.path.arrows().first(),
    }
}

fn is_homotopy_string(alg: &BoundQuiverAlgebra, letters: &[HLetter]) -> bool {
    letters.iter().all(|l| !l.path.is_empty() && nonzero(alg, &l.path))
        && letters.windows(2).all(|w| junction_ok(alg, &w[0], &w[1]))
}

fn homotopy_letters(alg: &BoundQuiverAlgebra) -> Vec<HLetter> {
    alg.basis()
        .iter()
        .filter(|p| !p.is_trivial())
        .flat_map(|p| [false, true].map(|inverse| HLetter { path: p.clone(), inverse }))
        .collect()
}

#[derive(Clone, Debug)]
pub struct HomotopyEnumeration {
    pub strings: Vec<HomotopyString>,
    pub bands: Vec<HomotopyString>,
}

/// Homotopy strings with at most `max_letters` letters (one per `{w, w⁻¹}`) and
/// primitive homotopy bands up to rotation and inversion.
pub fn enumerate_homotopy_strings(alg: &BoundQuiverAlgebra, max_letters: usize) -> Result<HomotopyEnumeration> {
    if classify_type(alg) != AlgebraType::Gentle {
        return Err(Error::NotGentle("homotopy strings need a gentle algebra".into()));
    }
    let q = alg.quiver();
    let letters = homotopy_letters(alg);
    let mut strings: Vec<HomotopyString> = (0..alg.vertex_count()).map(HomotopyString::trivial).collect();
    let mut bands: Vec<HomotopyString> = Vec::new();
    let mut level: Vec<Vec<HLetter>> = letters.iter().map(|l| vec![l.clone()]).collect();
    for len in 1..=max_letters {
        for w in &level {
            let hs = HomotopyString { start: w[0].start(), letters: w.clone() };
            if homotopy_cmp(q, &hs, &hs.inverse()) != Ordering::Greater {
                strings.push(hs.clone());
            }
            if let Some(b) = as_band(alg, &hs) {
                if !bands.contains(&b) {
                    bands.push(b);
                }
            }
        }
        if len == max_letters {
            break;
        }
        let mut next = Vec::new();
        for w in &level {
            for l in &letters {
                if junction_ok(alg, w.last().unwrap(), l) {
                    let mut e = w.clone();
                    e.push(l.clone());
                    next.push(e);
                }
            }
        }
        level = next;
    }
    strings.sort_by(|a, b| homotopy_cmp(q, a, b));
    bands.sort_by(|a, b| homotopy_cmp(q, a, b));
    Ok(HomotopyEnumeration { strings, bands })
}

/// Canonical form when `hs` closes up into a primitive homotopy band of total degree 0.
fn as_band(alg: &BoundQuiverAlgebra, hs: &HomotopyString) -> Option<HomotopyString> {
    let w = &hs.letters;
    let n = w.len();
    if hs.start != hs.end() || !junction_ok(alg, &w[n - 1], &w[0]) {
        return None;
    }
    let up = w.iter().filter(|l| !l.inverse).count();
    if 2 * up != n {
        return None;
    }
    if (1..n).any(|d| n.is_multiple_of(d) && w[..n - d] == w[d..]) {
        return None;
    }
    let q = alg.quiver();
    let inv = hs.inverse();
    let mut best: Option<HomotopyString> = None;
    for base in [w, &inv.letters] {
        for r in 0..n {
            let rot: Vec<HLetter> = base[r..].iter().chain(&base[..r]).cloned().collect();
            let cand = HomotopyString { start: rot[0].start(), letters: rot };
            if best.as_ref().is_none_or(|b| homotopy_cmp(q, &cand, b) == Ordering::Less) {
                best = Some(cand);
            }
        }
    }
    best
}

/// One projective per position of the walk; direct letters map the later position
/// to the earlier one, inverse letters the earlier to the later.
pub fn string_complex(alg: Arc<BoundQuiverAlgebra>, hs: &HomotopyString) -> Result<ProjComplex> {
    if !hs.letters.is_empty() && !is_homotopy_string(&alg, &hs.letters) {
        return Err(Error::Invalid(format!("{} is not a homotopy string", hs.display(alg.quiver()))));
    }
    let verts: Vec<usize> = std::iter::once(hs.start).chain(hs.letters.iter().map(|l| l.end())).collect();
    let deg = hs.degrees();
    let lo = *deg.iter().min().unwrap();
    let hi = *deg.iter().max().unwrap();
    // positions per degree, ordered by (vertex, position)
    let mut slot = vec![0usize; verts.len()];
    let mut summands = Vec::new();
    for d in lo..=hi {
        let mut pos: Vec<usize> = (0..verts.len()).filter(|&k| deg[k] == d).collect();
        pos.sort_by_key(|&k| (verts[k], k));
        for (i, &k) in pos.iter().enumerate() {
            slot[k] = i;
        }
        summands.push(pos.iter().map(|&k| verts[k]).collect::<Vec<_>>());
    }
    let mut diff: Vec<Vec<Vec<Elem>>> = (lo + 1..=hi)
        .map(|d| {
            let (t, s) = (summands[(d - 1 - lo) as usize].len(), summands[(d - lo) as usize].len());
            vec![vec![alg.zero(); s]; t]
        })
        .collect();
    for (k, l) in hs.letters.iter().enumerate() {
        let (src, tgt) = if l.inverse { (k, k + 1) } else { (k + 1, k) };
        let kk = (deg[src] - lo - 1) as usize;
        diff[kk][slot[tgt]][slot[src]] = alg.path_elem(&l.path);
    }
    ProjComplex::new(alg, lo, summands, diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::coh_mackey_cyclic;

    fn c2() -> Arc<BoundQuiverAlgebra> {
        Arc::new(coh_mackey_cyclic(2, 1).unwrap().algebra)
    }

    #[test]
    fn ba_string_is_three_term() {
        let a = c2();
        let hs = HomotopyString::parse(&a, "(b)(a)").unwrap();
        let cx = string_complex(a.clone(), &hs).unwrap();
        assert_eq!((cx.lo(), cx.hi()), (-2, 0));
        assert_eq!(cx.summands(0), &[0]);
        assert_eq!(cx.summands(-1), &[1]);
        assert_eq!(cx.summands(-2), &[0]);
        assert!(cx.is_minimal());
        assert!(cx.to_representation_of_tensor().validate());
    }

    #[test]
    fn tensor_roundtrip_and_hom_agreement() {
        let a = c2();
        let hs = HomotopyString::parse(&a, "(b)(ab)(a)").unwrap();
        let cx = string_complex(a.clone(), &hs).unwrap();
        let rep = cx.to_representation_of_tensor();
        let back = ProjComplex::from_representation_of_tensor(a.clone(), cx.lo(), &rep).unwrap();
        assert!(is_isomorphic_complex(&cx, &back).unwrap());
        assert_eq!(chain_map_dim(&cx, &cx).unwrap(), tensor_hom_dim(&cx, &cx).unwrap());
    }

    #[test]
    fn enumeration_matches_families() {
        let a = c2();
        let e = enumerate_homotopy_strings(&a, 3).unwrap();
        let names: Vec<String> = e.strings.iter().map(|s| s.display(a.quiver())).collect();
        assert_eq!(
            names,
            vec![
                "(e0)", "(e1)", "(a)", "(ab)", "(b)", "(ab)(a)", "(ab)(ab)", "(b)(a)", "(b)(ab)",
                "(ab)(ab)(a)", "(ab)(ab)(ab)", "(b)(ab)(a)", "(b)(ab)(ab)"
            ]
        );
        assert!(e.bands.is_empty());
    }

    #[test]
    fn cohomology_of_cone_of_identity_vanishes() {
        let a = c2();
        let e1 = a.idempotent(1);
        let cx = ProjComplex::new(a.clone(), 0, vec![vec![1], vec![1]], vec![vec![vec![e1]]]).unwrap();
        assert!(!cx.is_minimal());
        assert!(cx.cohomology_dims().iter().flatten().all(|&d| d == 0));
        let stalk = ProjComplex::stalk(a.clone(), 1);
        assert_eq!(stalk.cohomology_dims(), vec![vec![1, 2]]);
    }

    #[test]
    fn json_roundtrip() {
        let a = c2();
        let cx = string_complex(a.clone(), &HomotopyString::parse(&a, "(ab)(a)").unwrap()).unwrap();
        let j = serde_json::to_string(&cx.to_json()).unwrap();
        let back = ProjComplex::from_json(a, &serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.to_json().mult, cx.to_json().mult);
        assert!(is_isomorphic_complex(&cx, &back).unwrap());
    }

    #[test]
    fn sums_decompose() {
        let a = c2();
        let cx = string_complex(a.clone(), &HomotopyString::parse(&a, "(b)(a)").unwrap()).unwrap();
        let sum = cx.direct_sum(&cx.shift(1)).unwrap();
        assert_eq!(decompose_complex(&sum).unwrap().len(), 2);
        assert!(is_indecomposable_complex(&cx).unwrap());
    }
}
