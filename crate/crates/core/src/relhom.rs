//! Relative homological algebra over the Klein four group algebra (the `F_M` exact
//! structure making the permutation modules projective) and the combinatorial
//! singularity categories of cohomological Mackey algebras of cyclic `p`-groups.
//!
//! Klein words are read left to right as walks: `ab~` goes down `a` and back up `b`,
//! so `M((ab~)^n)` has `n + 1` top vectors and `n` socle vectors.

use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, Poly, PrimeField, RowSpace};
use crate::mackey::klein_four_algebra;
use crate::quiveralg::BoundQuiverAlgebra;
use crate::repcat::{hom_basis, is_isomorphic, projective, RepMorphism, Representation};
use crate::strings::{
    associated_string_algebra, band_module, special_biserial_indecomposables, BandParam, BandWord, Letter,
    SbBounds, StringWord,
};
use rayon::prelude::*;
use serde::Serialize;

pub struct KleinContext {
    pub algebra: BoundQuiverAlgebra,
    string_algebra: BoundQuiverAlgebra,
    pub regular: Representation,
    pub m_a: Representation,
    pub m_b: Representation,
    pub m_ab: Representation,
    pub simple: Representation,
    pub tau_s: Representation,
    /// `M_a ⊕ M_b ⊕ M_ab`.
    pub middle: Representation,
    /// `S → M_a ⊕ M_b ⊕ M_ab`, onto the socles.
    pub iota: RepMorphism,
    /// Cokernel of `iota`, isomorphic to `τS`.
    pub quotient: Representation,
    pub pi: RepMorphism,
}

/// Column labels of the Hom table.
pub const KLEIN_COLUMNS: [&str; 5] = ["S", "M_a", "M_b", "M_ab", "τS"];

impl KleinContext {
    pub fn new() -> Result<Self> {
        let algebra = klein_four_algebra();
        let string_algebra = associated_string_algebra(&algebra)?;
        let f = algebra.field();
        let mut ctx = KleinContext {
            regular: projective(&algebra, 0),
            m_a: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            m_b: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            m_ab: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            simple: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            tau_s: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            middle: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            iota: RepMorphism { maps: vec![FpMatrix::zeros(f, 0, 0)] },
            quotient: Representation::zero(algebra.bound_quiver().clone(), vec![0]),
            pi: RepMorphism { maps: vec![FpMatrix::zeros(f, 0, 0)] },
            algebra,
            string_algebra,
        };
        ctx.m_a = ctx.string("a")?;
        ctx.m_b = ctx.string("b")?;
        ctx.m_ab = ctx.band(1, &BandParam::jordan(f, 1, 1)?)?;
        ctx.simple = ctx.string("")?;
        ctx.tau_s = ctx.string("ab~ab~")?;
        ctx.middle = Representation::direct_sum(&[&ctx.m_a, &ctx.m_b, &ctx.m_ab])?;
        let socles: Vec<FpMatrix> = [&ctx.m_a, &ctx.m_b, &ctx.m_ab]
            .iter()
            .map(|m| {
                let h = hom_basis(&ctx.simple, m)?;
                if h.dim() != 1 {
                    return Err(Error::Invalid("permutation module with non-simple socle".into()));
                }
                Ok(h.basis[0].maps[0].clone())
            })
            .collect::<Result<_>>()?;
        ctx.iota = RepMorphism { maps: vec![FpMatrix::vstack(&socles.iter().collect::<Vec<_>>())] };
        if !ctx.iota.is_morphism(&ctx.simple, &ctx.middle) || ctx.iota.maps[0].rank() != 1 {
            return Err(Error::NotAMorphism("S → M_a ⊕ M_b ⊕ M_ab".into()));
        }
        let (q, pi) = cokernel(&ctx.middle, &ctx.iota)?;
        // exactness: 1 − 6 + 5 = 0 and the cokernel is τS
        if q.total_dim() != ctx.tau_s.total_dim() || !is_isomorphic(&q, &ctx.tau_s)? {
            return Err(Error::Invalid("the F_M-injective resolution of S is not exact".into()));
        }
        ctx.quotient = q;
        ctx.pi = pi;
        Ok(ctx)
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    fn lift(&self, m: Representation) -> Result<Representation> {
        Representation::new(self.algebra.bound_quiver().clone(), m.dims().to_vec(), m.maps().to_vec())
    }

    /// The string module of a word read left to right (`""` is the simple module).
    pub fn string(&self, word: &str) -> Result<Representation> {
        let q = self.string_algebra.quiver();
        let letters = walk_letters(&self.string_algebra, word)?;
        let w = if letters.is_empty() { StringWord::trivial(0) } else { StringWord::from_letters(q, letters)? };
        self.lift(crate::strings::string_module(&self.string_algebra, &w)?)
    }

    /// `M((ab~)^k, A)` with `A` the companion matrix of the parameter.
    pub fn band(&self, k: usize, param: &BandParam) -> Result<Representation> {
        let letters = walk_letters(&self.string_algebra, &"ab~".repeat(k))?;
        let word = StringWord::from_letters(self.string_algebra.quiver(), letters)?;
        self.lift(band_module(&self.string_algebra, &BandWord { word }, param)?)
    }

    fn columns(&self) -> [&Representation; 5] {
        [&self.simple, &self.m_a, &self.m_b, &self.m_ab, &self.tau_s]
    }

    /// The summands of `M`.
    pub fn add_m(&self) -> [&Representation; 5] {
        [&self.regular, &self.m_a, &self.m_b, &self.m_ab, &self.simple]
    }

    pub fn hom_row(&self, x: &Representation) -> Result<[usize; 5]> {
        let mut out = [0; 5];
        for (c, y) in self.columns().iter().enumerate() {
            out[c] = hom_basis(x, y)?.dim();
        }
        Ok(out)
    }
}

fn walk_letters(alg: &BoundQuiverAlgebra, word: &str) -> Result<Vec<Letter>> {
    let q = alg.quiver();
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let a = q
            .arrow_index(&chars[i].to_string())
            .ok_or_else(|| Error::Invalid(format!("unknown letter in {word:?}")))?;
        let inv = chars.get(i + 1) == Some(&'~');
        out.push(if inv { Letter::inv(a) } else { Letter::direct(a) });
        i += 1 + inv as usize;
    }
    Ok(out)
}

/// Cokernel of `f: X → Y` with its projection `Y → Y / im f`.
pub fn cokernel(y: &Representation, f: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let fld = y.field();
    let mut pis = Vec::new();
    let mut secs = Vec::new();
    for (v, &d) in y.dims().iter().enumerate() {
        let img = f.maps[v].image_basis();
        let mut span = RowSpace::new(fld, d);
        for c in 0..img.cols() {
            span.insert(img.column(c));
        }
        let comp: Vec<usize> = (0..d).filter(|&j| !span.is_pivot(j)).collect();
        let mut cols: Vec<Vec<u32>> = (0..img.cols()).map(|c| img.column(c)).collect();
        let sec: Vec<Vec<u32>> = comp
            .iter()
            .map(|&j| {
                let mut e = vec![0; d];
                e[j] = 1;
                e
            })
            .collect();
        cols.extend(sec.iter().cloned());
        let full = FpMatrix::from_columns(fld, d, &cols);
        let inv = full.inverse().ok_or_else(|| Error::Invalid("image complement is not a basis".into()))?;
        pis.push(inv.submatrix(img.cols(), 0, comp.len(), d));
        secs.push(FpMatrix::from_columns(fld, d, &sec));
    }
    let q = &y.bound_quiver().quiver;
    let maps = q.arrows().iter().enumerate().map(|(i, a)| pis[a.tgt].mul(y.map(i)).mul(&secs[a.src])).collect();
    let dims = pis.iter().map(|p| p.rows()).collect();
    let quot = Representation::new(y.bound_quiver().clone(), dims, maps)?;
    let pi = RepMorphism { maps: pis };
    if !pi.is_morphism(y, &quot) {
        return Err(Error::NotAMorphism("cokernel projection".into()));
    }
    Ok((quot, pi))
}

/// Row families of the Hom and Ext tables.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum KleinFamily {
    /// `M((ab~)^n)`
    Zigzag,
    /// `M((b~a)^n)`
    ZigzagDual,
    /// `M((ab~)^n a)`
    ZigzagA,
    /// `M((b~a)^n b~)`
    ZigzagB,
    /// `M(ab~, J_n(1))`
    BandUnipotent,
    /// `M(ab~, A)`, `A` indecomposable without eigenvalue 1
    BandOther,
}

impl KleinFamily {
    pub const ALL: [KleinFamily; 6] = [
        KleinFamily::Zigzag,
        KleinFamily::ZigzagDual,
        KleinFamily::ZigzagA,
        KleinFamily::ZigzagB,
        KleinFamily::BandUnipotent,
        KleinFamily::BandOther,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            KleinFamily::Zigzag => "M((ab~)^n)",
            KleinFamily::ZigzagDual => "M((b~a)^n)",
            KleinFamily::ZigzagA => "M((ab~)^n a)",
            KleinFamily::ZigzagB => "M((b~a)^n b~)",
            KleinFamily::BandUnipotent => "M(ab~, J_n(1))",
            KleinFamily::BandOther => "M(ab~, A)",
        }
    }

    /// Closed forms for `dim Hom(X, Y)`, `Y` over the table columns.
    pub fn expected_hom(&self, n: usize) -> [usize; 5] {
        match self {
            KleinFamily::Zigzag => [n + 1, n + 1, n + 1, n + 1, 3 * n + 1],
            KleinFamily::ZigzagDual => [n, n + 1, n + 1, n + 1, 3 * n + 2],
            KleinFamily::ZigzagA => [n + 1, n + 2, n + 1, n + 1, 3 * n + 3],
            KleinFamily::ZigzagB => [n + 1, n + 1, n + 2, n + 1, 3 * n + 3],
            KleinFamily::BandUnipotent => [n, n, n, n + 1, 3 * n],
            KleinFamily::BandOther => [n, n, n, n, 3 * n],
        }
    }

    pub fn expected_ext(&self, n: usize) -> usize {
        match self {
            KleinFamily::Zigzag | KleinFamily::ZigzagDual | KleinFamily::BandUnipotent => n - 1,
            _ => n,
        }
    }
}

/// One module of a table row: the family, `n`, and for band rows the parameter.
#[derive(Clone, Debug)]
pub struct KleinModule {
    pub family: KleinFamily,
    pub n: usize,
    pub param: Option<BandParam>,
    pub module: Representation,
}

impl KleinModule {
    pub fn param_label(&self) -> String {
        self.param.as_ref().map_or(String::new(), |p| format!("({})^{}", p.phi, p.e))
    }
}

/// Matrices `A` of size `n` over `field`: companions of `φ^e` with `deg φ^e = n`, `φ ≠ t, t − 1`.
pub fn no_eigenvalue_one_params(field: PrimeField, n: usize) -> Vec<BandParam> {
    let one = Poly::new(field, vec![field.neg(1), 1]);
    let mut out = Vec::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        for phi in Poly::monic_irreducibles(field, d) {
            if phi.coeffs()[0] == 0 || phi == one {
                continue;
            }
            out.push(BandParam::new(phi, n / d).expect("monic irreducible"));
        }
    }
    out
}

/// Every module of the six row families for `1 ≤ n ≤ n_max`; rows with no admissible
/// band parameter over the field are absent.
pub fn klein_modules(ctx: &KleinContext, n_max: usize) -> Result<Vec<KleinModule>> {
    let mut out = Vec::new();
    for family in KleinFamily::ALL {
        for n in 1..=n_max {
            let push = |out: &mut Vec<KleinModule>, param: Option<BandParam>, module| {
                out.push(KleinModule { family: family.clone(), n, param, module })
            };
            match family {
                KleinFamily::Zigzag => push(&mut out, None, ctx.string(&"ab~".repeat(n))?),
                KleinFamily::ZigzagDual => push(&mut out, None, ctx.string(&"b~a".repeat(n))?),
                KleinFamily::ZigzagA => push(&mut out, None, ctx.string(&format!("{}a", "ab~".repeat(n)))?),
                KleinFamily::ZigzagB => push(&mut out, None, ctx.string(&format!("{}b~", "b~a".repeat(n)))?),
                KleinFamily::BandUnipotent => {
                    let p = BandParam::jordan(ctx.field(), 1, n)?;
                    let m = ctx.band(1, &p)?;
                    push(&mut out, Some(p), m);
                }
                KleinFamily::BandOther => {
                    for p in no_eigenvalue_one_params(ctx.field(), n) {
                        let m = ctx.band(1, &p)?;
                        push(&mut out, Some(p), m);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HomTableRow {
    pub family: String,
    pub n: usize,
    pub param: String,
    pub cells: [usize; 5],
    pub expected: [usize; 5],
}

impl HomTableRow {
    pub fn matches(&self) -> bool {
        self.cells == self.expected
    }
}

/// `dim Hom(X, Y)` for the table rows and columns.
pub fn hom_table(ctx: &KleinContext, n_max: usize) -> Result<Vec<HomTableRow>> {
    klein_modules(ctx, n_max)?
        .par_iter()
        .map(|km| {
            Ok(HomTableRow {
                family: km.family.label().into(),
                n: km.n,
                param: km.param_label(),
                cells: ctx.hom_row(&km.module)?,
                expected: km.family.expected_hom(km.n),
            })
        })
        .collect()
}

/// `dim Ext¹_{F_M}(X, S)` two ways: from the Hom dimensions along the resolution, and as
/// the cokernel of `Hom(X, M_a ⊕ M_b ⊕ M_ab) → Hom(X, τS)`.
pub fn ext1_fm(ctx: &KleinContext, x: &Representation) -> Result<(usize, usize)> {
    let h = |y: &Representation| hom_basis(x, y).map(|b| b.dim());
    let method1 = (h(&ctx.simple)? + h(&ctx.tau_s)?) as isize - h(&ctx.middle)? as isize;
    let to_q = hom_basis(x, &ctx.quotient)?.dim();
    let mut span = RowSpace::new(ctx.field(), ctx.quotient.total_dim() * x.total_dim());
    for g in hom_basis(x, &ctx.middle)?.basis {
        span.insert(ctx.pi.after(&g).flatten());
    }
    let method2 = to_q - span.dim();
    if method1 < 0 || method1 as usize != method2 {
        return Err(Error::Invalid(format!("Ext¹ methods disagree: {method1} vs {method2}")));
    }
    Ok((method1 as usize, method2))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtTableRow {
    pub family: String,
    pub n: usize,
    pub param: String,
    pub method1: usize,
    pub method2: usize,
    pub expected: usize,
}

impl ExtTableRow {
    pub fn matches(&self) -> bool {
        self.method1 == self.expected && self.method2 == self.expected
    }
}

pub fn ext_table(ctx: &KleinContext, n_max: usize) -> Result<Vec<ExtTableRow>> {
    klein_modules(ctx, n_max)?
        .par_iter()
        .map(|km| {
            let (method1, method2) = ext1_fm(ctx, &km.module)?;
            Ok(ExtTableRow {
                family: km.family.label().into(),
                n: km.n,
                param: km.param_label(),
                method1,
                method2,
                expected: km.family.expected_ext(km.n),
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CmSurvivor {
    pub label: String,
    pub module: Representation,
}

/// Indecomposables within the bounds (band length 2, i.e. the single band) that are
/// `F_M`-orthogonal to `M` and not in `add M`.
pub fn cm_scan(ctx: &KleinContext, string_len_max: usize, band_deg_max: usize) -> Result<Vec<CmSurvivor>> {
    let bounds = SbBounds { max_string_len: string_len_max, max_band_len: 2, max_band_degree: band_deg_max };
    let all = special_biserial_indecomposables(&ctx.algebra, bounds)?;
    let q = ctx.string_algebra.quiver();
    let checked: Vec<Option<CmSurvivor>> = all
        .par_iter()
        .map(|ind| -> Result<Option<CmSurvivor>> {
            let x = &ind.module;
            for m in ctx.add_m() {
                if m.dims() == x.dims() && is_isomorphic(m, x)? {
                    return Ok(None);
                }
            }
            let (e, _) = ext1_fm(ctx, x)?;
            Ok((e == 0).then(|| CmSurvivor { label: ind.label(q), module: x.clone() }))
        })
        .collect::<Result<_>>()?;
    Ok(checked.into_iter().flatten().collect())
}

/// `dim Hom(X, Y)` modulo maps factoring through `add M`.
pub fn stable_hom_dim(ctx: &KleinContext, x: &Representation, y: &Representation) -> Result<usize> {
    let all = hom_basis(x, y)?.dim();
    let mut span = RowSpace::new(ctx.field(), x.total_dim() * y.total_dim());
    for m in ctx.add_m() {
        let into = hom_basis(x, m)?.basis;
        let out = hom_basis(m, y)?.basis;
        for g in &out {
            for f in &into {
                span.insert(g.after(f).flatten());
            }
        }
    }
    Ok(all - span.dim())
}

/// The chain `1..n` with some vertices killed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainQuotient {
    pub n: usize,
    pub deleted: Vec<usize>,
    /// Maximal surviving intervals `[lo, hi]`.
    pub components: Vec<(usize, usize)>,
}

impl ChainQuotient {
    pub fn objects(&self) -> usize {
        self.components.iter().map(|(a, b)| b - a + 1).sum()
    }

    /// Number of surviving vertices strictly between consecutive deleted vertices.
    pub fn gaps(&self) -> Vec<usize> {
        self.deleted.windows(2).map(|w| w[1] - w[0] - 1).collect()
    }
}

pub fn sing_chain_quotient(n: usize, summand_dims: &[usize]) -> Result<ChainQuotient> {
    if summand_dims.iter().any(|&d| d == 0 || d > n) {
        return Err(Error::Invalid(format!("summand dimensions must lie in 1..={n}")));
    }
    let mut deleted = summand_dims.to_vec();
    deleted.sort_unstable();
    deleted.dedup();
    let mut components = Vec::new();
    let mut start = None;
    for v in 1..=n + 1 {
        let alive = v <= n && deleted.binary_search(&v).is_err();
        match (alive, start) {
            (true, None) => start = Some(v),
            (false, Some(s)) => {
                components.push((s, v - 1));
                start = None;
            }
            _ => {}
        }
    }
    Ok(ChainQuotient { n, deleted, components })
}

/// Component sizes of the singularity category of `μ^coh(C_{p^m})`: the gaps left in
/// `1..p^m` after deleting every power of `p`, empty gaps reported as 0.
pub fn sing_cat_cyclic(p: u64, m: u32) -> Result<Vec<usize>> {
    PrimeField::new(p)?;
    let powers: Vec<usize> = (0..=m).map(|j| (p as usize).pow(j)).collect();
    Ok(sing_chain_quotient(*powers.last().unwrap(), &powers)?.gaps())
}
