//! Embedding functors and strict families of complexes used to witness
//! (derived) wildness, with a finite verification harness.
//!
//! `Γ` is the path algebra of `0 ⇉ 1 → 2` with arrows `a`, `b: 0 → 1` and
//! `w: 1 → 2`; `Σ = k⟨x, y⟩` is the free algebra on two generators.

use crate::complexes::{Elem, ProjComplex};
use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField};
use crate::mackey::mackey_c2;
use crate::quiveralg::{BoundQuiver, BoundQuiverAlgebra, Path, Quiver, Relation};
use crate::repcat::{decompose, is_isomorphic_decomposed, Decomposition, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A module over `k⟨x, y⟩`: a space of dimension `v` with two endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaModule {
    pub field: PrimeField,
    pub v: usize,
    pub x: FpMatrix,
    pub y: FpMatrix,
}

impl SigmaModule {
    pub fn new(x: FpMatrix, y: FpMatrix) -> Result<Self> {
        if !x.is_square() || x.shape() != y.shape() {
            return Err(Error::DimensionMismatch("Σ-module matrices must be square of equal size".into()));
        }
        Ok(SigmaModule { field: x.field(), v: x.rows(), x, y })
    }

    pub fn zero(field: PrimeField) -> Self {
        SigmaModule { field, v: 0, x: FpMatrix::zeros(field, 0, 0), y: FpMatrix::zeros(field, 0, 0) }
    }

    /// As a representation of the one-vertex quiver with loops `x`, `y`.
    pub fn to_representation(&self) -> Representation {
        Representation::new(sigma_quiver(self.field), vec![self.v], vec![self.x.clone(), self.y.clone()])
            .expect("shapes checked at construction")
    }
}

/// A representation of `0 ⇉ 1 → 2`: dims `(r, s, t)`, `A, B: k^r → k^s`, `W: k^s → k^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    pub field: PrimeField,
    pub dims: [usize; 3],
    pub a: FpMatrix,
    pub b: FpMatrix,
    pub w: FpMatrix,
}

impl GammaModule {
    pub fn new(dims: [usize; 3], a: FpMatrix, b: FpMatrix, w: FpMatrix) -> Result<Self> {
        let [r, s, t] = dims;
        if a.shape() != (s, r) || b.shape() != (s, r) || w.shape() != (t, s) {
            return Err(Error::DimensionMismatch(format!("Γ-module with dims ({r},{s},{t})")));
        }
        Ok(GammaModule { field: a.field(), dims, a, b, w })
    }

    pub fn zero(field: PrimeField) -> Self {
        let z = FpMatrix::zeros(field, 0, 0);
        GammaModule { field, dims: [0; 3], a: z.clone(), b: z.clone(), w: z }
    }

    pub fn to_representation(&self) -> Representation {
        Representation::new(
            gamma_quiver(self.field),
            self.dims.to_vec(),
            vec![self.a.clone(), self.b.clone(), self.w.clone()],
        )
        .expect("shapes checked at construction")
    }

    pub fn from_representation(rep: &Representation) -> Result<Self> {
        if rep.dims().len() != 3 || rep.maps().len() != 3 {
            return Err(Error::AlgebraMismatch);
        }
        let d = rep.dims();
        GammaModule::new([d[0], d[1], d[2]], rep.map(0).clone(), rep.map(1).clone(), rep.map(2).clone())
    }
}

pub fn sigma_quiver(field: PrimeField) -> Arc<BoundQuiver> {
    let q = Quiver::from_triples(1, &[("x", 0, 0), ("y", 0, 0)]).unwrap();
    Arc::new(BoundQuiver::new(q, vec![], field))
}

pub fn gamma_quiver(field: PrimeField) -> Arc<BoundQuiver> {
    let q = Quiver::from_triples(3, &[("a", 0, 1), ("b", 0, 1), ("w", 1, 2)]).unwrap();
    Arc::new(BoundQuiver::new(q, vec![], field))
}

/// `k⟨x_1, …, x_n⟩ → k⟨x, y⟩`: `V ↦ V^n` with `x` block lower-bidiagonal
/// (`X_i` on the diagonal, identities below) and `y = diag(1, 0, 1, 0, …)`.
pub fn free_to_sigma(field: PrimeField, v: usize, xs: &[FpMatrix]) -> Result<SigmaModule> {
    let n = xs.len();
    if n <= 1 {
        return Err(Error::Invalid("the free algebra needs at least two generators".into()));
    }
    if xs.iter().any(|x| x.shape() != (v, v)) {
        return Err(Error::DimensionMismatch(format!("generators must be {v}×{v}")));
    }
    let id = FpMatrix::identity(field, v);
    let mut a = FpMatrix::zeros(field, n * v, n * v);
    let mut b = FpMatrix::zeros(field, n * v, n * v);
    for (i, x) in xs.iter().enumerate() {
        a.set_block(i * v, i * v, x);
        if i + 1 < n {
            a.set_block((i + 1) * v, i * v, &id);
        }
        if i % 2 == 0 {
            b.set_block(i * v, i * v, &id);
        }
    }
    SigmaModule::new(a, b)
}

/// `P ⊗_Σ −`: `V² ⇉ V² → V` with `a = (X Y; 1 0)`, `b = 1`, `w = (0 1)`.
pub fn sigma_to_gamma(sm: &SigmaModule) -> GammaModule {
    let (f, v) = (sm.field, sm.v);
    let id = FpMatrix::identity(f, v);
    let z = FpMatrix::zeros(f, v, v);
    let a = FpMatrix::vstack(&[&FpMatrix::hstack(&[&sm.x, &sm.y]), &FpMatrix::hstack(&[&id, &z])]);
    let b = FpMatrix::identity(f, 2 * v);
    let w = FpMatrix::hstack(&[&z, &id]);
    GammaModule::new([2 * v, 2 * v, v], a, b, w).expect("shapes by construction")
}

/// `dim Hom_Σ(V, U)`: matrices `φ` with `φX_V = X_Uφ` and `φY_V = Y_Uφ`.
pub fn sigma_hom_dim(v: &SigmaModule, u: &SigmaModule) -> usize {
    let (m, n) = (u.v, v.v);
    if m == 0 || n == 0 {
        return 0;
    }
    let f = v.field;
    // unknown φ[i][j] at column i*n + j; one equation per entry per generator
    let mut eqs = FpMatrix::zeros(f, 2 * m * n, m * n);
    for (g, (xv, xu)) in [(&v.x, &u.x), (&v.y, &u.y)].into_iter().enumerate() {
        for i in 0..m {
            for j in 0..n {
                let row = g * m * n + i * n + j;
                // (φ X_V)[i][j] = Σ_k φ[i][k] X_V[k][j]
                for k in 0..n {
                    let c = eqs.get(row, i * n + k);
                    eqs.set(row, i * n + k, f.add(c, xv.get(k, j)));
                }
                // − (X_U φ)[i][j] = − Σ_k X_U[i][k] φ[k][j]
                for k in 0..m {
                    let c = eqs.get(row, k * n + j);
                    eqs.set(row, k * n + j, f.sub(c, xu.get(i, k)));
                }
            }
        }
    }
    m * n - eqs.rank()
}

/// Every Σ-module of dimension `v` over `field` (`p^{2v²}` of them).
pub fn sigma_modules(field: PrimeField, v: usize) -> Vec<SigmaModule> {
    let p = field.p() as usize;
    let cells = 2 * v * v;
    let total = p.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut data = Vec::with_capacity(cells);
            for _ in 0..cells {
                data.push((code % p) as u32);
                code /= p;
            }
            let y = data.split_off(v * v);
            SigmaModule::new(FpMatrix::from_vec(field, v, v, data), FpMatrix::from_vec(field, v, v, y)).unwrap()
        })
        .collect()
}

fn general_linear(field: PrimeField, v: usize) -> Vec<(FpMatrix, FpMatrix)> {
    let p = field.p() as usize;
    (0..p.pow((v * v) as u32))
        .filter_map(|mut code| {
            let data: Vec<u32> = (0..v * v)
                .map(|_| {
                    let d = (code % p) as u32;
                    code /= p;
                    d
                })
                .collect();
            let g = FpMatrix::from_vec(field, v, v, data);
            g.inverse().map(|gi| (g, gi))
        })
        .collect()
}

/// One representative per isomorphism class among the given modules of a common
/// dimension, by exhaustive base change (`X ↦ gXg⁻¹`); the orbit minimum is the key.
pub fn sigma_orbit_representatives(mods: &[SigmaModule]) -> Vec<SigmaModule> {
    let Some(first) = mods.first() else { return vec![] };
    let gl = general_linear(first.field, first.v);
    let mut seen: BTreeMap<Vec<u32>, SigmaModule> = BTreeMap::new();
    for m in mods {
        let key = gl
            .iter()
            .map(|(g, gi)| {
                let mut k = g.mul(&m.x).mul(gi).into_data();
                k.extend(g.mul(&m.y).mul(gi).into_data());
                k
            })
            .min()
            .unwrap_or_default();
        seen.entry(key).or_insert_with(|| m.clone());
    }
    seen.into_values().collect()
}

/// The nine-vertex commutative-squares quiver carrying the `D̃̃₇`-type embedding.
///
/// Vertices, top to bottom and left to right in the diagram: `0: Σ²`, `1: Σ²`,
/// `2: Σ⁴`, `3: Σ²`, `4: Σ²`, `5: Σ⁴`, `6: Σ²`, `7: Σ`, `8: Σ²`.
pub fn d7_quiver(field: PrimeField) -> Arc<BoundQuiver> {
    let q = Quiver::from_triples(
        9,
        &[
            ("u0", 0, 2),
            ("u1", 0, 3),
            ("u2", 1, 4),
            ("u3", 1, 5),
            ("u4", 2, 5),
            ("u5", 2, 6),
            ("u6", 3, 6),
            ("u7", 3, 7),
            ("u8", 4, 8),
            ("u9", 5, 8),
        ],
    )
    .unwrap();
    let rels = vec![
        Relation::parse(&q, field, "u5u0 - u6u1").unwrap(),
        Relation::parse(&q, field, "u9u3 - u8u2").unwrap(),
    ];
    Arc::new(BoundQuiver::new(q, rels, field))
}

/// Tensor with the `D̃̃₇` bimodule: `Σ` becomes the module's space, `x, y` its matrices.
pub fn d7_embed(sm: &SigmaModule) -> Representation {
    let (f, v) = (sm.field, sm.v);
    let i = FpMatrix::identity(f, v);
    let z = FpMatrix::zeros(f, v, v);
    let i2 = FpMatrix::identity(f, 2 * v);
    let z2 = FpMatrix::zeros(f, 2 * v, 2 * v);
    let grid = |rows: &[&[&FpMatrix]]| {
        let rs: Vec<FpMatrix> = rows.iter().map(|r| FpMatrix::hstack(r)).collect();
        FpMatrix::vstack(&rs.iter().collect::<Vec<_>>())
    };
    let maps = vec![
        grid(&[&[&i, &z], &[&z, &sm.y], &[&z, &i], &[&i, &sm.x]]),
        i2.clone(),
        i2.clone(),
        FpMatrix::vstack(&[&i2, &i2]),
        FpMatrix::identity(f, 4 * v),
        FpMatrix::hstack(&[&z2, &i2]),
        grid(&[&[&z, &i], &[&i, &sm.x]]),
        FpMatrix::hstack(&[&z, &i]),
        i2.clone(),
        FpMatrix::hstack(&[&i2, &z2]),
    ];
    let dims = [2, 2, 4, 2, 2, 4, 2, 1, 2].iter().map(|d| d * v).collect();
    Representation::new(d7_quiver(f), dims, maps).expect("shapes by construction")
}

/// `k[c]/(c^{n+1})`.
pub fn trunc_poly_algebra(field: PrimeField, n: usize) -> Result<BoundQuiverAlgebra> {
    let q = Quiver::from_triples(1, &[("c", 0, 0)])?;
    let rel = Relation::new(field, vec![(1, Path::from_traversal(&q, vec![0; n + 1])?)])?;
    BoundQuiverAlgebra::build(q, vec![rel], field, n + 1)
}

/// `k[s, t]/(sⁿ, tⁿ, st − ts)`.
pub fn two_vars_algebra(field: PrimeField, n: usize) -> Result<BoundQuiverAlgebra> {
    let q = Quiver::from_triples(1, &[("s", 0, 0), ("t", 0, 0)])?;
    let rels = vec![
        Relation::new(field, vec![(1, Path::from_traversal(&q, vec![0; n])?)])?,
        Relation::new(field, vec![(1, Path::from_traversal(&q, vec![1; n])?)])?,
        Relation::parse(&q, field, "st - ts")?,
    ];
    BoundQuiverAlgebra::build(q, rels, field, 2 * n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    TruncPoly(usize),
    TwoVars(usize),
    MackeyC2,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::TruncPoly(n) => write!(f, "trunc-poly({n})"),
            Family::TwoVars(n) => write!(f, "two-vars({n})"),
            Family::MackeyC2 => write!(f, "mackey-c2"),
        }
    }
}

/// `Σ λ ⊗ γ` with `λ` in the target algebra and `γ` a path of `Γ`.
type Label = Vec<(Elem, Path)>;

/// A bounded complex of `Λ`–`Γ`-bimodules `Λe_i ⊗ e_jΓ`, degrees `0..` increasing
/// to the left as displayed; differentials lower the degree.
#[derive(Clone, Debug)]
pub struct StrictFamilySpec {
    pub family: Family,
    algebra: Arc<BoundQuiverAlgebra>,
    /// `(Λ-vertex, Γ-vertex)` per summand, per degree.
    terms: Vec<Vec<(usize, usize)>>,
    /// `diff[k]`: degree `k + 1 → k`, entries `[target][source]`.
    diff: Vec<Vec<Vec<Label>>>,
}

impl StrictFamilySpec {
    pub fn new(family: Family, field: PrimeField) -> Result<Self> {
        let gamma = gamma_quiver(field);
        let gq = &gamma.quiver;
        let e = |v| Path::trivial(v);
        let ga = Path::parse(gq, "a")?;
        let gb = Path::parse(gq, "b")?;
        let gw = Path::parse(gq, "w")?;
        let spec = match family {
            Family::TruncPoly(n) => {
                if n < 2 {
                    return Err(Error::Invalid("trunc-poly needs n ≥ 2".into()));
                }
                let alg = trunc_poly_algebra(field, n)?;
                let c = |k: usize| alg.elem(&"c".repeat(k));
                let (cn, cm) = (c(n), c(n - 1));
                let neg_cm = alg.scale(&cm, field.neg(1));
                let z = alg.zero();
                let one = |x: &Elem| vec![(x.clone(), e(0))];
                let nil: Label = vec![(z.clone(), e(0))];
                let terms = vec![
                    vec![(0, 2)],
                    vec![(0, 1)],
                    vec![(0, 0), (0, 0)],
                    vec![(0, 0), (0, 0)],
                    vec![(0, 0), (0, 0)],
                    vec![(0, 0), (0, 0)],
                    vec![(0, 0)],
                ];
                let diff = vec![
                    vec![vec![vec![(cn.clone(), gw)]]],
                    vec![vec![vec![(cm.clone(), ga)], vec![(cn.clone(), gb)]]],
                    vec![vec![one(&cn), nil.clone()], vec![nil.clone(), one(&cm)]],
                    vec![vec![one(&cn), nil.clone()], vec![nil.clone(), one(&cn)]],
                    vec![vec![one(&neg_cm), one(&cn)], vec![one(&cm), nil]],
                    vec![vec![one(&cn)], vec![one(&cm)]],
                ];
                StrictFamilySpec { family, algebra: Arc::new(alg), terms, diff }
            }
            Family::TwoVars(n) => {
                if n < 2 {
                    return Err(Error::Invalid("two-vars needs n ≥ 2".into()));
                }
                let alg = two_vars_algebra(field, n)?;
                let st = alg.elem(&"st".repeat(n - 1));
                let terms = vec![vec![(0, 2)], vec![(0, 1)], vec![(0, 0)]];
                let diff = vec![
                    vec![vec![vec![(st, gw)]]],
                    vec![vec![vec![(alg.elem("s"), ga), (alg.elem("t"), gb)]]],
                ];
                StrictFamilySpec { family, algebra: Arc::new(alg), terms, diff }
            }
            Family::MackeyC2 => {
                if field.p() != 2 {
                    return Err(Error::InvalidField(field.p() as u64));
                }
                let alg = mackey_c2()?.algebra;
                let el = |s: &str| alg.elem(s);
                let one = |s: &str| vec![(el(s), e(0))];
                let nil = |v: usize| vec![(alg.zero(), e(v))];
                let terms = vec![
                    vec![(1, 2)],
                    vec![(1, 1)],
                    vec![(0, 0), (1, 0)],
                    vec![(0, 0), (0, 0)],
                    vec![(0, 0), (0, 0)],
                    vec![(1, 0), (0, 0)],
                    vec![(1, 0)],
                ];
                let diff = vec![
                    vec![vec![vec![(el("ab"), gw)]]],
                    vec![vec![vec![(el("b"), ga)], vec![(el("ab"), gb)]]],
                    vec![vec![one("ba"), nil(0)], vec![nil(0), one("b")]],
                    vec![vec![one("ba"), nil(0)], vec![nil(0), one("ba")]],
                    vec![vec![one("a"), one("ba")], vec![one("a"), nil(0)]],
                    vec![vec![one("ab")], vec![one("a")]],
                ];
                StrictFamilySpec { family, algebra: Arc::new(alg), terms, diff }
            }
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    /// Number of bimodule summands per degree, leftmost (highest) degree first.
    pub fn displayed_shape(&self) -> Vec<usize> {
        self.terms.iter().rev().map(Vec::len).collect()
    }

    /// `d² = 0` in `Λ ⊗ Γ`: composites are grouped by their `Γ`-path, which form a basis.
    fn check(&self) -> Result<()> {
        let alg = &*self.algebra;
        for (k, d) in self.diff.iter().enumerate() {
            let (tgt, src) = (&self.terms[k], &self.terms[k + 1]);
            if d.len() != tgt.len() || d.iter().any(|r| r.len() != src.len()) {
                return Err(Error::DimensionMismatch(format!("template differential at degree {}", k + 1)));
            }
            for (t, row) in d.iter().enumerate() {
                for (s, label) in row.iter().enumerate() {
                    for (x, g) in label {
                        let ok_l = alg.is_zero(x) || alg.mul(&alg.mul(&alg.idempotent(src[s].0), x), &alg.idempotent(tgt[t].0)) == *x;
                        if !ok_l || g.src() != src[s].1 || g.tgt() != tgt[t].1 {
                            return Err(Error::Invalid(format!("template entry ({t},{s}) at degree {}", k + 1)));
                        }
                    }
                }
            }
        }
        for k in 1..self.diff.len() {
            let (second, first) = (&self.diff[k - 1], &self.diff[k]);
            for row in second {
                for s in 0..first[0].len() {
                    let mut acc: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
                    for mid in 0..first.len() {
                        for (x1, g1) in &first[mid][s] {
                            for (x2, g2) in &row[mid] {
                                if let Some(g) = g1.then(g2) {
                                    let key = std::iter::once(g.src()).chain(g.arrows().iter().copied()).collect();
                                    let e = acc.entry(key).or_insert_with(|| alg.zero());
                                    *e = alg.add(e, &alg.mul(x1, x2));
                                }
                            }
                        }
                    }
                    if acc.values().any(|x| !alg.is_zero(x)) {
                        return Err(Error::DifferentialSquare(k as i32 + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `P• ⊗_Γ M`. Summands of each degree are listed by `Λ`-vertex, stably.
pub fn strict_apply(spec: &StrictFamilySpec, gm: &GammaModule) -> Result<ProjComplex> {
    if gm.field != spec.field() {
        return Err(Error::InvalidField(gm.field.p() as u64));
    }
    let alg = &spec.algebra;
    let rep = gm.to_representation();
    // per degree: (Λ-vertex, template summand, copy)
    let expanded: Vec<Vec<(usize, usize, usize)>> = spec
        .terms
        .iter()
        .map(|deg| {
            let mut v: Vec<_> = deg
                .iter()
                .enumerate()
                .flat_map(|(i, &(lv, gv))| (0..gm.dims[gv]).map(move |c| (lv, i, c)))
                .collect();
            v.sort_by_key(|&(lv, _, _)| lv);
            v
        })
        .collect();
    let mut cache: BTreeMap<(usize, usize, usize), Vec<FpMatrix>> = BTreeMap::new();
    let mut diff = Vec::with_capacity(spec.diff.len());
    for (k, d) in spec.diff.iter().enumerate() {
        let (tgt, src) = (&expanded[k], &expanded[k + 1]);
        let mut block = vec![vec![alg.zero(); src.len()]; tgt.len()];
        for (ti, &(_, tt, tc)) in tgt.iter().enumerate() {
            for (si, &(_, ss, sc)) in src.iter().enumerate() {
                let mats = cache
                    .entry((k, tt, ss))
                    .or_insert_with(|| d[tt][ss].iter().map(|(_, g)| rep.eval_path(g)).collect());
                let mut x = alg.zero();
                for ((lam, _), m) in d[tt][ss].iter().zip(mats.iter()) {
                    let c = m.get(tc, sc);
                    if c != 0 {
                        x = alg.add(&x, &alg.scale(lam, c));
                    }
                }
                block[ti][si] = x;
            }
        }
        diff.push(block);
    }
    let summands = expanded.iter().map(|d| d.iter().map(|&(lv, _, _)| lv).collect()).collect();
    ProjComplex::new(alg.clone(), 0, summands, diff)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyFailure {
    pub kind: String,
    pub modules: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub pass: bool,
    pub modules: usize,
    pub pairs_checked: usize,
    pub failures: Vec<FamilyFailure>,
    pub seed: Option<u64>,
}

/// Checks iso-reflection on every pair and indecomposability preservation on every
/// indecomposable module of `test_set`.
pub fn verify_strict_family(
    spec: &StrictFamilySpec,
    test_set: &[GammaModule],
    seed: Option<u64>,
) -> Result<FamilyReport> {
    let complexes: Vec<ProjComplex> = test_set
        .par_iter()
        .map(|m| strict_apply(spec, m).map(|c| c.trimmed()))
        .collect::<Result<_>>()?;
    if let Some(i) = complexes.iter().position(|c| !c.is_minimal()) {
        return Err(Error::Invalid(format!("image of module {i} is not minimal")));
    }
    // every module and complex is decomposed once; pairs reuse the decompositions
    let reps: Vec<Representation> = test_set.iter().map(GammaModule::to_representation).collect();
    let tensors: Vec<Representation> = complexes.iter().map(ProjComplex::to_representation_of_tensor).collect();
    let dec_m: Vec<Decomposition> = reps.par_iter().map(decompose).collect::<Result<_>>()?;
    let dec_c: Vec<Decomposition> = tensors.par_iter().map(decompose).collect::<Result<_>>()?;
    let indec: Vec<Option<FamilyFailure>> = (0..test_set.len())
        .map(|i| {
            let preserved = reps[i].is_zero() || dec_m[i].pieces.len() != 1 || dec_c[i].pieces.len() == 1;
            (!preserved).then(|| FamilyFailure {
                kind: "indecomposability".into(),
                modules: vec![i],
                detail: format!("module {i} is indecomposable but its complex splits"),
            })
        })
        .collect();
    let same_shape = |x: &ProjComplex, y: &ProjComplex| {
        (x.is_zero() && y.is_zero())
            || (!x.is_zero()
                && !y.is_zero()
                && x.lo() == y.lo()
                && x.hi() == y.hi()
                && (x.lo()..=x.hi()).all(|d| x.mult(d) == y.mult(d)))
    };
    let pairs: Vec<(usize, usize)> =
        (0..test_set.len()).flat_map(|i| (i + 1..test_set.len()).map(move |j| (i, j))).collect();
    let iso: Vec<Option<FamilyFailure>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<FamilyFailure>> {
            let m = is_isomorphic_decomposed(&reps[i], &dec_m[i], &reps[j], &dec_m[j])?;
            let c = same_shape(&complexes[i], &complexes[j])
                && (complexes[i].is_zero()
                    || is_isomorphic_decomposed(&tensors[i], &dec_c[i], &tensors[j], &dec_c[j])?);
            Ok((m != c).then(|| FamilyFailure {
                kind: "iso-reflection".into(),
                modules: vec![i, j],
                detail: format!("modules isomorphic: {m}, complexes isomorphic: {c}"),
            }))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<FamilyFailure> = indec.into_iter().chain(iso).flatten().collect();
    Ok(FamilyReport {
        family: spec.family.to_string(),
        pass: failures.is_empty(),
        modules: test_set.len(),
        pairs_checked: pairs.len(),
        failures,
        seed,
    })
}

fn matrices(field: PrimeField, rows: usize, cols: usize) -> Vec<FpMatrix> {
    let p = field.p() as usize;
    (0..p.pow((rows * cols) as u32))
        .map(|mut code| {
            let data = (0..rows * cols)
                .map(|_| {
                    let d = (code % p) as u32;
                    code /= p;
                    d
                })
                .collect();
            FpMatrix::from_vec(field, rows, cols, data)
        })
        .collect()
}

/// Every Γ-module with dims bounded componentwise by `max`.
pub fn gamma_modules_exhaustive(field: PrimeField, max: [usize; 3]) -> Vec<GammaModule> {
    let mut out = Vec::new();
    for r in 0..=max[0] {
        for s in 0..=max[1] {
            for t in 0..=max[2] {
                let ms = matrices(field, s, r);
                let ws = matrices(field, t, s);
                for a in &ms {
                    for b in &ms {
                        for w in &ws {
                            out.push(GammaModule::new([r, s, t], a.clone(), b.clone(), w.clone()).unwrap());
                        }
                    }
                }
            }
        }
    }
    out
}

/// `count` distinct seeded-random Γ-modules with dims bounded by `max`.
pub fn gamma_modules_sample(field: PrimeField, max: [usize; 3], count: usize, seed: u64) -> Vec<GammaModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.p();
    let rand_mat = |rng: &mut ChaCha8Rng, r: usize, c: usize| {
        FpMatrix::from_vec(field, r, c, (0..r * c).map(|_| rng.gen_range(0..p)).collect())
    };
    let mut out: Vec<GammaModule> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let dims = [rng.gen_range(0..=max[0]), rng.gen_range(0..=max[1]), rng.gen_range(0..=max[2])];
        let [r, s, t] = dims;
        let a = rand_mat(&mut rng, s, r);
        let b = rand_mat(&mut rng, s, r);
        let w = rand_mat(&mut rng, t, s);
        let m = GammaModule::new(dims, a, b, w).unwrap();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::is_isomorphic_complex;
    use crate::complexes::decompose_complex;
    use crate::repcat::{end_profile, hom_basis};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn free_to_sigma_block_shape() {
        let f = f2();
        let z = FpMatrix::zeros(f, 1, 1);
        let sm = free_to_sigma(f, 1, &[z.clone(), z.clone()]).unwrap();
        assert_eq!(sm.x, FpMatrix::from_rows(f, &[vec![0, 0], vec![1, 0]]));
        assert_eq!(sm.y, FpMatrix::from_rows(f, &[vec![1, 0], vec![0, 0]]));
        assert!(free_to_sigma(f, 1, &[z]).is_err());
        let empty = FpMatrix::zeros(f, 0, 0);
        assert_eq!(free_to_sigma(f, 0, &[empty.clone(), empty]).unwrap().v, 0);
    }

    #[test]
    fn free_to_sigma_keeps_indecomposable() {
        let f = f2();
        // k⟨x₁, x₂⟩-module on F_2²: x₁ a Jordan block, x₂ = 0
        let j = FpMatrix::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        let z = FpMatrix::zeros(f, 2, 2);
        let sm = free_to_sigma(f, 2, &[j, z]).unwrap();
        assert!(end_profile(&sm.to_representation()).unwrap().is_local);
    }

    #[test]
    fn sigma_to_gamma_displayed_matrices() {
        let f = f2();
        let sm = SigmaModule::new(FpMatrix::zeros(f, 1, 1), FpMatrix::zeros(f, 1, 1)).unwrap();
        let gm = sigma_to_gamma(&sm);
        assert_eq!(gm.dims, [2, 2, 1]);
        assert_eq!(gm.a, FpMatrix::from_rows(f, &[vec![0, 0], vec![1, 0]]));
        assert_eq!(gm.b, FpMatrix::identity(f, 2));
        assert_eq!(gm.w, FpMatrix::from_rows(f, &[vec![0, 1]]));
        assert!(sigma_to_gamma(&SigmaModule::zero(f)).to_representation().is_zero());
    }

    #[test]
    fn sigma_to_gamma_full_faithfulness_small() {
        let f = f2();
        let mods: Vec<SigmaModule> = (0..=1).flat_map(|v| sigma_modules(f, v)).collect();
        for v in &mods {
            for u in &mods {
                let g = hom_basis(&sigma_to_gamma(v).to_representation(), &sigma_to_gamma(u).to_representation())
                    .unwrap()
                    .dim();
                assert_eq!(g, sigma_hom_dim(v, u));
            }
        }
    }

    #[test]
    fn orbit_representatives_count() {
        // pairs of 1×1 matrices over F_2 are four pairwise non-isomorphic modules
        let f = f2();
        assert_eq!(sigma_orbit_representatives(&sigma_modules(f, 1)).len(), 4);
        // GL₂(F_2) acting on pairs of 2×2 matrices: orbits are fewer than 256
        let reps = sigma_orbit_representatives(&sigma_modules(f, 2));
        assert!(reps.len() < 256 && reps.len() >= 256 / 6);
    }

    #[test]
    fn d7_embedding_validates_and_keeps_indecomposables() {
        let f = f2();
        for sm in sigma_modules(f, 1) {
            let rep = d7_embed(&sm);
            assert!(rep.validate());
            assert_eq!(rep.dims(), &[2, 2, 4, 2, 2, 4, 2, 1, 2]);
            assert!(end_profile(&rep).unwrap().is_local);
        }
        assert!(d7_embed(&SigmaModule::zero(f)).is_zero());
    }

    #[test]
    fn trunc_poly_shape() {
        let f = f2();
        let spec = StrictFamilySpec::new(Family::TruncPoly(2), f).unwrap();
        assert_eq!(spec.displayed_shape(), vec![1, 2, 2, 2, 2, 1, 1]);
        let one = FpMatrix::identity(f, 1);
        let gm = GammaModule::new([1, 1, 1], one.clone(), one.clone(), one).unwrap();
        let cx = strict_apply(&spec, &gm).unwrap();
        let mut ranks = cx.ranks();
        ranks.reverse();
        assert_eq!(ranks, vec![1, 2, 2, 2, 2, 1, 1]);
        assert!(cx.is_minimal());
        assert!(strict_apply(&spec, &GammaModule::zero(f)).unwrap().is_zero());
    }

    #[test]
    fn two_vars_three_terms() {
        let f = f2();
        let spec = StrictFamilySpec::new(Family::TwoVars(2), f).unwrap();
        let one = FpMatrix::identity(f, 1);
        let gm = GammaModule::new([1, 1, 1], one.clone(), one.clone(), one).unwrap();
        let cx = strict_apply(&spec, &gm).unwrap();
        assert_eq!(cx.ranks(), vec![1, 1, 1]);
        let alg = spec.algebra();
        assert_eq!(cx.differential(2).unwrap()[0][0], alg.add(&alg.elem("s"), &alg.elem("t")));
        assert_eq!(cx.differential(1).unwrap()[0][0], alg.elem("st"));
    }

    #[test]
    fn mackey_template_needs_char_two() {
        assert!(StrictFamilySpec::new(Family::MackeyC2, PrimeField::new(3).unwrap()).is_err());
        assert!(StrictFamilySpec::new(Family::MackeyC2, f2()).is_ok());
        assert!(StrictFamilySpec::new(Family::TruncPoly(1), f2()).is_err());
    }

    #[test]
    fn apply_commutes_with_sums() {
        let f = f2();
        let spec = StrictFamilySpec::new(Family::TruncPoly(2), f).unwrap();
        let mods = gamma_modules_exhaustive(f, [1, 1, 1]);
        let (m, n) = (&mods[5], &mods[17]);
        let sum = Representation::direct_sum(&[&m.to_representation(), &n.to_representation()]).unwrap();
        let lhs = strict_apply(&spec, &GammaModule::from_representation(&sum).unwrap()).unwrap();
        let rhs = strict_apply(&spec, m).unwrap().direct_sum(&strict_apply(&spec, n).unwrap()).unwrap();
        assert!(is_isomorphic_complex(&lhs, &rhs).unwrap());
        assert_eq!(decompose_complex(&lhs).unwrap().len(), decompose(&sum).unwrap().pieces.len());
    }

    #[test]
    fn exhaustive_small_set_passes() {
        let f = f2();
        let mods = gamma_modules_exhaustive(f, [1, 1, 1]);
        assert_eq!(mods.len(), 19);
        let spec = StrictFamilySpec::new(Family::TruncPoly(2), f).unwrap();
        let rep = verify_strict_family(&spec, &mods, None).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.pairs_checked, 19 * 18 / 2);
        let single = verify_strict_family(&spec, &[GammaModule::zero(f)], None).unwrap();
        assert!(single.pass);
    }
}
