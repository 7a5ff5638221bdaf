//! Concrete algebras and representations: (cohomological) Mackey algebras of cyclic
//! p-groups, the Klein four group algebra, Lewis-diagram representations and the
//! infinite families over μ^coh(C_4) and μ^coh(C_{p^m}).
//!
//! Vertex `i` of μ^coh(C_{p^m}) is the orbit `G/H_i` with `|H_i| = p^{m-i}`; so
//! vertex `m` is the free orbit and vertex `0` the fixed one. `a_i: i-1 → i` is
//! restriction, `b_i: i → i-1` transfer and `c_i` the loop `1 - γ`.

use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField};
use crate::quiveralg::{Arrow, BoundQuiverAlgebra, Path, Quiver, Relation};
use crate::repcat::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Cohomological,
    Full,
    GroupAlgebra,
}

#[derive(Clone, Debug)]
pub struct MackeyPresentation {
    pub name: String,
    pub flavor: Flavor,
    pub algebra: BoundQuiverAlgebra,
    /// `(symbol, arrow or expression)`, e.g. `("res_1", "a")`.
    pub symbols: Vec<(String, String)>,
}

impl MackeyPresentation {
    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }
}

fn ipow(p: u64, e: u32) -> usize {
    p.pow(e) as usize
}

/// A written monomial as a list of arrow names; `None` encodes a zero factor.
type Word = Option<Vec<String>>;

struct CohBuilder {
    p: u64,
    names: Vec<(String, String, String)>,
}

impl CohBuilder {
    fn a(&self, i: usize) -> String {
        self.names[i - 1].0.clone()
    }
    fn b(&self, i: usize) -> String {
        self.names[i - 1].1.clone()
    }
    /// The loop `c_i` as a word (`c_0 = 0`, and `c_1 = a_1 b_1` when p = 2).
    fn c(&self, i: usize) -> Word {
        if i == 0 {
            None
        } else if self.p == 2 && i == 1 {
            Some(vec![self.a(1), self.b(1)])
        } else {
            Some(vec![self.names[i - 1].2.clone()])
        }
    }
    fn c_pow(&self, i: usize, e: usize) -> Word {
        let c = self.c(i)?;
        Some(c.iter().cloned().cycle().take(c.len() * e).collect())
    }
}

fn cat(ws: &[Word]) -> Word {
    let mut out = Vec::new();
    for w in ws {
        out.extend(w.clone()?);
    }
    Some(out)
}

fn contains(hay: &[String], needle: &[String]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

/// Cohomological Mackey algebra μ^coh_{F_p}(C_{p^m}).
pub fn coh_mackey_cyclic(p: u64, m: usize) -> Result<MackeyPresentation> {
    let field = PrimeField::new(p)?;
    if m == 0 {
        let q = Quiver::new(1, vec![])?;
        let algebra = BoundQuiverAlgebra::build(q, vec![], field, 2)?;
        return Ok(MackeyPresentation {
            name: format!("coh-mackey {p} 0"),
            flavor: Flavor::Cohomological,
            algebra,
            symbols: vec![],
        });
    }
    let names: Vec<(String, String, String)> = (1..=m)
        .map(|i| {
            if m == 1 {
                ("a".into(), "b".into(), "c".into())
            } else {
                (format!("a{i}"), format!("b{i}"), format!("c{i}"))
            }
        })
        .collect();
    let bld = CohBuilder { p, names };
    let mut arrows = Vec::new();
    let mut symbols = Vec::new();
    for i in 1..=m {
        arrows.push(Arrow { name: bld.a(i), src: i - 1, tgt: i });
        arrows.push(Arrow { name: bld.b(i), src: i, tgt: i - 1 });
        symbols.push((format!("res_{i}"), bld.a(i)));
        symbols.push((format!("tr_{i}"), bld.b(i)));
        if !(p == 2 && i == 1) {
            arrows.push(Arrow { name: bld.names[i - 1].2.clone(), src: i, tgt: i });
            symbols.push((format!("1-γ_{i}"), bld.names[i - 1].2.clone()));
        } else {
            symbols.push((format!("1-γ_{i}"), format!("{}{}", bld.a(1), bld.b(1))));
        }
    }
    let q = Quiver::new(m + 1, arrows)?;

    // Each relation as signed written words; zero words are dropped.
    let mut raw: Vec<Vec<(i64, Word)>> = Vec::new();
    for i in 1..=m {
        let pi = ipow(p, i as u32);
        let pi1 = ipow(p, i as u32 - 1);
        let (a, b) = (Some(vec![bld.a(i)]), Some(vec![bld.b(i)]));
        raw.push(vec![(1, bld.c_pow(i, pi))]);
        raw.push(vec![(1, cat(&[b.clone(), a.clone()]))]);
        raw.push(vec![(1, cat(&[a.clone(), b.clone()])), (-1, bld.c_pow(i, pi - pi1))]);
        raw.push(vec![(1, cat(&[bld.c(i), a.clone()])), (-1, cat(&[a.clone(), bld.c(i - 1)]))]);
        raw.push(vec![(1, cat(&[bld.c(i - 1), b.clone()])), (-1, cat(&[b.clone(), bld.c(i)]))]);
    }
    let raw: Vec<Vec<(i64, Vec<String>)>> = raw
        .into_iter()
        .map(|r| r.into_iter().filter_map(|(c, w)| w.map(|w| (c, w))).collect())
        .collect();
    let monomials: Vec<Vec<String>> =
        raw.iter().filter(|r| r.len() == 1).map(|r| r[0].1.clone()).collect();
    let mut rels = Vec::new();
    for r in raw {
        let mut terms: Vec<(i64, Vec<String>)> = r
            .into_iter()
            .filter(|(_, w)| !monomials.iter().any(|mono| mono.len() < w.len() && contains(w, mono)))
            .collect();
        // identities such as `ab - ab` after substitution
        if terms.len() == 2 && terms[0].1 == terms[1].1 {
            continue;
        }
        if terms.is_empty() || terms.iter().any(|(_, w)| w.len() < 2) {
            continue;
        }
        if terms.len() == 1 {
            terms[0].0 = 1;
        }
        let written: Vec<(i64, Vec<&str>)> =
            terms.iter().map(|(c, w)| (*c, w.iter().map(|s| s.as_str()).collect())).collect();
        let borrowed: Vec<(i64, &[&str])> = written.iter().map(|(c, w)| (*c, w.as_slice())).collect();
        let rel = Relation::from_written(&q, field, &borrowed)?;
        if !rels.contains(&rel) {
            rels.push(rel);
        }
    }
    let cap = ipow(p, m as u32) + 1;
    let algebra = BoundQuiverAlgebra::build(q, rels, field, cap)?;
    Ok(MackeyPresentation {
        name: format!("coh-mackey {p} {m}"),
        flavor: Flavor::Cohomological,
        algebra,
        symbols,
    })
}

/// Full Mackey algebra μ_{F_p}(C_p); for p = 2 this is [`mackey_c2`].
pub fn mackey_cp(p: u64) -> Result<MackeyPresentation> {
    if p == 2 {
        return mackey_c2();
    }
    let field = PrimeField::new(p)?;
    let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0), ("c", 1, 1)])?;
    let rels = vec![
        Relation::parse(&q, field, &format!("c^{p}"))?,
        Relation::parse(&q, field, "ca")?,
        Relation::parse(&q, field, "bc")?,
        Relation::parse(&q, field, &format!("ab - c^{}", p - 1))?,
    ];
    let algebra = BoundQuiverAlgebra::build(q, rels, field, p as usize + 2)?;
    Ok(MackeyPresentation {
        name: format!("mackey-cp {p}"),
        flavor: Flavor::Full,
        algebra,
        symbols: vec![
            ("res".into(), "a".into()),
            ("tr".into(), "b".into()),
            ("1-γ".into(), "c".into()),
        ],
    })
}

/// Full Mackey algebra μ_{F_2}(C_2): relations `aba`, `bab`.
pub fn mackey_c2() -> Result<MackeyPresentation> {
    let field = PrimeField::new(2)?;
    let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)])?;
    let rels = vec![Relation::parse(&q, field, "aba")?, Relation::parse(&q, field, "bab")?];
    let algebra = BoundQuiverAlgebra::build(q, rels, field, 4)?;
    Ok(MackeyPresentation {
        name: "mackey-c2".into(),
        flavor: Flavor::Full,
        algebra,
        symbols: vec![
            ("res".into(), "a".into()),
            ("tr".into(), "b".into()),
            ("1-γ".into(), "ab".into()),
        ],
    })
}

/// `F_2[a, b]/(a², b²) ≅ F_2[C_2 × C_2]`.
pub fn klein_four_algebra() -> BoundQuiverAlgebra {
    let field = PrimeField::new(2).unwrap();
    let q = Quiver::from_triples(1, &[("a", 0, 0), ("b", 0, 0)]).unwrap();
    let rels = ["aa", "bb", "ab - ba"]
        .iter()
        .map(|s| Relation::parse(&q, field, s).unwrap())
        .collect();
    BoundQuiverAlgebra::build(q, rels, field, 5).unwrap()
}

/// Underline F_p as a representation of μ(C_p): res = 1, tr = 0, γ = 1.
pub fn constant_mackey_rep(p: u64) -> Result<Representation> {
    let pres = mackey_cp(p)?;
    let f = pres.field();
    Representation::from_named(
        pres.algebra.bound_quiver().clone(),
        vec![1, 1],
        vec![("a", FpMatrix::identity(f, 1))],
    )
}

/// The fixed point functor of a k[C_p]-module given by the action matrix `gamma`:
/// vertex 0 carries `V^G`, vertex 1 carries `V`; res is the inclusion, tr the norm
/// `Σ γ^i` and `c = 1 - γ`.
pub fn fixed_point_rep(p: u64, gamma: &FpMatrix) -> Result<Representation> {
    let pres = mackey_cp(p)?;
    let f = pres.field();
    if gamma.field() != f || !gamma.is_square() {
        return Err(Error::Invalid("action matrix must be square over F_p".into()));
    }
    let n = gamma.rows();
    if !gamma.pow(p).is_identity() {
        return Err(Error::Invalid("γ^p ≠ 1".into()));
    }
    let id = FpMatrix::identity(f, n);
    let c = id.sub(gamma);
    let k = c.kernel_basis();
    let mut norm = FpMatrix::zeros(f, n, n);
    let mut g = id.clone();
    for _ in 0..p {
        norm = norm.add(&g);
        g = g.mul(gamma);
    }
    // the norm lands in V^G; express it in the basis K
    let tr = k.solve(&norm)?.expect("norm image is fixed");
    let mut named = vec![("a", k.clone()), ("b", tr)];
    if p != 2 {
        named.push(("c", c));
    }
    Representation::from_named(pres.algebra.bound_quiver().clone(), vec![k.cols(), n], named)
}

fn jordan_nilpotent(f: PrimeField, n: usize) -> FpMatrix {
    FpMatrix::from_fn(f, n, n, |i, j| u32::from(j == i + 1))
}

/// `[[0, X], [0, 0]]` with `n×n` blocks.
fn upper_block(f: PrimeField, x: &FpMatrix) -> FpMatrix {
    let n = x.rows();
    let mut m = FpMatrix::zeros(f, 2 * n, 2 * n);
    m.set_block(0, n, x);
    m
}

/// The family over μ^coh_{F_2}(C_4) indexed by `V = k[x]/(x^n)`; dims `(n, 2n, 2n)`.
pub fn infinite_family_c4(n: usize) -> Result<Representation> {
    if n == 0 {
        return Err(Error::Invalid("family index must be ≥ 1".into()));
    }
    let pres = coh_mackey_cyclic(2, 2)?;
    let f = pres.field();
    let id = FpMatrix::identity(f, n);
    let x = jordan_nilpotent(f, n);
    let ac = upper_block(f, &id);
    let d = FpMatrix::vstack(&[&id, &FpMatrix::zeros(f, n, n)]);
    let e = FpMatrix::hstack(&[&FpMatrix::zeros(f, n, n), &id]);
    Representation::from_named(
        pres.algebra.bound_quiver().clone(),
        vec![n, 2 * n, 2 * n],
        vec![
            ("a2", ac.clone()),
            ("c2", ac),
            ("b2", upper_block(f, &x)),
            ("a1", d),
            ("b1", e),
        ],
    )
}

/// The family over μ^coh_{F_p}(C_{p^m}) supported on vertices `m - 1` and `m`.
pub fn infinite_family_cpm(p: u64, m: usize, n: usize) -> Result<Representation> {
    if m < 2 || p.pow(m as u32) <= 4 || n == 0 {
        return Err(Error::Invalid("family needs m ≥ 2, p^m > 4 and n ≥ 1".into()));
    }
    let pres = coh_mackey_cyclic(p, m)?;
    let f = pres.field();
    let id = FpMatrix::identity(f, n);
    let x = jordan_nilpotent(f, n);
    let u = upper_block(f, &id);
    let mut dims = vec![0; m + 1];
    dims[m] = 2 * n;
    dims[m - 1] = 2 * n;
    let (am, bm, cm, cm1) = (format!("a{m}"), format!("b{m}"), format!("c{m}"), format!("c{}", m - 1));
    let mut named = vec![(am.as_str(), u.clone()), (cm.as_str(), u.clone()), (bm.as_str(), upper_block(f, &x))];
    // for p = 2, m = 2 the loop c_1 is not an arrow (excluded by p^m > 4 anyway)
    if pres.algebra.quiver().arrow_index(&cm1).is_some() {
        named.push((cm1.as_str(), u));
    }
    Representation::from_named(pres.algebra.bound_quiver().clone(), dims, named)
}

/// Evaluates a written path expression on a representation (`None` if it does not parse).
pub fn eval_written(rep: &Representation, written: &str) -> Option<FpMatrix> {
    let p = Path::parse(&rep.bound_quiver().quiver, written).ok()?;
    Some(rep.eval_path(&p))
}
