//! Representations of bound quivers: validation, Hom spaces, projectives and
//! Krull–Schmidt decomposition.

mod decompose;

pub use decompose::{
    decompose, decompose_with_end, end_profile, is_isomorphic, is_isomorphic_decomposed, Decomposition, EndAlgebraProfile,
    Piece,
};

use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField};
use crate::quiveralg::{BoundQuiver, BoundQuiverAlgebra, Path};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Representation {
    bq: Arc<BoundQuiver>,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.bq, &other.bq) && self.dims == other.dims && self.maps == other.maps
    }
}

pub(crate) fn same_quiver(a: &Arc<BoundQuiver>, b: &Arc<BoundQuiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// JSON form: `{"dims": [...], "maps": {"a": [[...]], ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: Vec<usize>,
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Representation {
    pub fn new(bq: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Self> {
        let q = &bq.quiver;
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("vertex or arrow count".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.tgt], dims[a.src]) || m.field() != bq.field {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} expects {}x{}, got {}x{}",
                    a.name,
                    dims[a.tgt],
                    dims[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { bq, dims, maps })
    }

    pub fn zero(bq: Arc<BoundQuiver>, dims: Vec<usize>) -> Self {
        let maps = bq
            .quiver
            .arrows()
            .iter()
            .map(|a| FpMatrix::zeros(bq.field, dims[a.tgt], dims[a.src]))
            .collect();
        Representation { bq, dims, maps }
    }

    /// Arrows not listed are zero.
    pub fn from_named(
        bq: Arc<BoundQuiver>,
        dims: Vec<usize>,
        named: Vec<(&str, FpMatrix)>,
    ) -> Result<Self> {
        let mut r = Self::zero(bq, dims.clone());
        let mut maps = std::mem::take(&mut r.maps);
        for (n, m) in named {
            let i = r
                .bq
                .quiver
                .arrow_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown arrow {n}")))?;
            maps[i] = m;
        }
        Self::new(r.bq, dims, maps)
    }

    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.bq
    }
    pub fn field(&self) -> PrimeField {
        self.bq.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }
    pub fn map(&self, i: usize) -> &FpMatrix {
        &self.maps[i]
    }
    pub fn map_named(&self, name: &str) -> Option<&FpMatrix> {
        self.bq.quiver.arrow_index(name).map(|i| &self.maps[i])
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of a path (last arrow leftmost).
    pub fn eval_path(&self, p: &Path) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.field(), self.dims[p.src()]);
        for &a in p.arrows() {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    pub fn validate(&self) -> bool {
        self.bq.relations.iter().all(|r| {
            let f = self.field();
            let mut acc = FpMatrix::zeros(f, self.dims[r.tgt()], self.dims[r.src()]);
            for (c, p) in r.terms() {
                acc.axpy(*c, &self.eval_path(p));
            }
            acc.is_zero()
        })
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        if parts.iter().any(|r| !same_quiver(&r.bq, &first.bq)) {
            return Err(Error::AlgebraMismatch);
        }
        let n = first.dims.len();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let maps = (0..first.maps.len())
            .map(|a| {
                let blocks: Vec<&FpMatrix> = parts.iter().map(|r| &r.maps[a]).collect();
                FpMatrix::block_diag(first.field(), &blocks)
            })
            .collect();
        Ok(Representation { bq: first.bq.clone(), dims, maps })
    }

    /// The representation transported along per-vertex invertible matrices `t`:
    /// the new arrow maps are `t_tgt X t_src^{-1}`.
    pub fn transport(&self, t: &[FpMatrix]) -> Result<Representation> {
        let inv: Option<Vec<FpMatrix>> = t.iter().map(|m| m.inverse()).collect();
        let inv = inv.ok_or_else(|| Error::Invalid("base change not invertible".into()))?;
        let q = &self.bq.quiver;
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, x)| t[a.tgt].mul(x).mul(&inv[a.src]))
            .collect();
        Representation::new(self.bq.clone(), self.dims.clone(), maps)
    }

    /// Subrepresentation spanned by the columns of `bases` given left inverses `lefts`.
    pub(crate) fn restrict(&self, bases: &[FpMatrix], lefts: &[FpMatrix]) -> Representation {
        let q = &self.bq.quiver;
        let dims = bases.iter().map(|b| b.cols()).collect();
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, x)| lefts[a.tgt].mul(&x.mul(&bases[a.src])))
            .collect();
        Representation { bq: self.bq.clone(), dims, maps }
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            dims: self.dims.clone(),
            maps: self
                .bq
                .quiver
                .arrows()
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| (a.name.clone(), m.to_signed_rows()))
                .collect(),
        }
    }

    pub fn from_json(bq: Arc<BoundQuiver>, j: &RepJson) -> Result<Self> {
        let f = bq.field;
        let mut named = Vec::new();
        for (name, rows) in &j.maps {
            let i = bq
                .quiver
                .arrow_index(name)
                .ok_or_else(|| Error::Invalid(format!("unknown arrow {name}")))?;
            let a = bq.quiver.arrow(i);
            let m = if rows.is_empty() {
                FpMatrix::zeros(f, j.dims[a.tgt], j.dims[a.src])
            } else {
                if rows.iter().any(|r| r.len() != rows[0].len()) {
                    return Err(Error::DimensionMismatch(format!("ragged matrix for {name}")));
                }
                FpMatrix::from_rows(f, rows)
            };
            named.push((i, m));
        }
        let mut r = Self::zero(bq.clone(), j.dims.clone());
        let mut maps = std::mem::take(&mut r.maps);
        for (i, m) in named {
            maps[i] = m;
        }
        Self::new(bq, j.dims.clone(), maps)
    }
}

/// Per-vertex linear maps between two representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub maps: Vec<FpMatrix>,
}

impl RepMorphism {
    pub fn identity(m: &Representation) -> Self {
        RepMorphism { maps: m.dims.iter().map(|&d| FpMatrix::identity(m.field(), d)).collect() }
    }

    pub fn zero(dom: &Representation, cod: &Representation) -> Self {
        RepMorphism {
            maps: dom
                .dims
                .iter()
                .zip(&cod.dims)
                .map(|(&d, &c)| FpMatrix::zeros(dom.field(), c, d))
                .collect(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &RepMorphism) -> RepMorphism {
        RepMorphism { maps: self.maps.iter().zip(&f.maps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, o: &RepMorphism) -> RepMorphism {
        RepMorphism { maps: self.maps.iter().zip(&o.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: u32) -> RepMorphism {
        RepMorphism { maps: self.maps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.rank() == m.rows())
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn from_flat(field: PrimeField, shapes: &[(usize, usize)], v: &[u32]) -> RepMorphism {
        let mut off = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let m = FpMatrix::from_vec(field, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        RepMorphism { maps }
    }

    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.maps.iter().map(|m| m.shape()).collect()
    }

    pub fn is_morphism(&self, dom: &Representation, cod: &Representation) -> bool {
        let q = &dom.bq.quiver;
        self.maps.len() == dom.dims.len()
            && self
                .maps
                .iter()
                .enumerate()
                .all(|(v, m)| m.shape() == (cod.dims[v], dom.dims[v]))
            && q.arrows().iter().enumerate().all(|(i, a)| {
                self.maps[a.tgt].mul(&dom.maps[i]) == cod.maps[i].mul(&self.maps[a.src])
            })
    }
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<RepMorphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of the stacked intertwiner system `φ_t X_α = Y_α φ_s`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if !same_quiver(&m.bq, &n.bq) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let nvars = offset[nv];
    let q = &m.bq.quiver;
    let nrows: usize = q.arrows().iter().map(|a| n.dims[a.tgt] * m.dims[a.src]).sum();
    let mut sys = FpMatrix::zeros(f, nrows, nvars);
    let mut row0 = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.src, a.tgt);
        let x = &m.maps[ai];
        let y = &n.maps[ai];
        let (ms, nt, mt, ns) = (m.dims[s], n.dims[t], m.dims[t], n.dims[s]);
        for r in 0..nt {
            for c in 0..ms {
                let row = row0 + r * ms + c;
                // (φ_t X)[r][c] = Σ_k φ_t[r][k] X[k][c]
                for k in 0..mt {
                    let v = x.get(k, c);
                    if v != 0 {
                        let col = offset[t] + r * mt + k;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                // −(Y φ_s)[r][c] = −Σ_k Y[r][k] φ_s[k][c]
                for k in 0..ns {
                    let v = y.get(r, k);
                    if v != 0 {
                        let col = offset[s] + k * ms + c;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
            }
        }
        row0 += nt * ms;
    }
    let kernel = sys.kernel_basis();
    let shapes: Vec<(usize, usize)> = (0..nv).map(|v| (n.dims[v], m.dims[v])).collect();
    let basis = (0..kernel.cols())
        .map(|j| RepMorphism::from_flat(f, &shapes, &kernel.column(j)))
        .collect();
    Ok(HomSpace { basis })
}

/// The indecomposable projective `P_i = A e_i`: at vertex `j` the paths `i → j`,
/// arrows acting by left composition.
pub fn projective(alg: &BoundQuiverAlgebra, i: usize) -> Representation {
    let q = alg.quiver();
    let f = alg.field();
    let n = q.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| alg.block(i, j).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let src_block = alg.block(i, a.src);
            let tgt_block = alg.block(i, a.tgt);
            let ap = Path::arrow(q, ai);
            let mut m = FpMatrix::zeros(f, tgt_block.len(), src_block.len());
            for (c, &bi) in src_block.iter().enumerate() {
                let p = alg.basis_path(bi).then(&ap).unwrap();
                for (k, coef) in alg.reduce_path(&p) {
                    let r = tgt_block.iter().position(|&x| x == k).unwrap();
                    m.set(r, c, coef);
                }
            }
            m
        })
        .collect();
    Representation { bq: alg.bound_quiver().clone(), dims, maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{Quiver, Relation};

    fn c2() -> BoundQuiverAlgebra {
        let f = PrimeField::new(2).unwrap();
        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let r = Relation::parse(&q, f, "ba").unwrap();
        BoundQuiverAlgebra::build(q, vec![r], f, 3).unwrap()
    }

    #[test]
    fn projectives_validate_and_have_block_dims() {
        let a = c2();
        let p0 = projective(&a, 0);
        let p1 = projective(&a, 1);
        assert!(p0.validate() && p1.validate());
        assert_eq!(p0.dims(), &[1, 1]);
        assert_eq!(p1.dims(), &[1, 2]);
        // Hom(P_i, M) = M_i
        assert_eq!(hom_basis(&p1, &p1).unwrap().dim(), 2);
        assert_eq!(hom_basis(&p0, &p1).unwrap().dim(), 1);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let a = c2();
        let p1 = projective(&a, 1);
        let p0 = projective(&a, 0);
        for (m, n) in [(&p0, &p1), (&p1, &p0), (&p1, &p1)] {
            for h in hom_basis(m, n).unwrap().basis {
                assert!(h.is_morphism(m, n));
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let a = c2();
        let p1 = projective(&a, 1);
        let j = p1.to_json();
        let back = Representation::from_json(a.bound_quiver().clone(), &j).unwrap();
        assert_eq!(back, p1);
    }
}
