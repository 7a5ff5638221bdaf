//! Krull–Schmidt decomposition driven by an explicit basis of the endomorphism ring.
//!
//! Each step either finds an endomorphism whose minimal polynomial has two coprime
//! factors (and splits along its Fitting decomposition), or certifies that the
//! endomorphism ring is local: a nilpotent two-sided ideal `J` whose quotient is a
//! field generated by a single element.

use super::{hom_basis, same_quiver, RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, Poly, PrimeField, RowSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xC0FFEE;

/// An indecomposable summand together with its embedding into the parent module.
#[derive(Clone, Debug)]
pub struct Piece {
    pub rep: Representation,
    /// piece → parent
    pub incl: RepMorphism,
    /// parent → piece, with `proj ∘ incl = id`
    pub proj: RepMorphism,
    end: Vec<RepMorphism>,
    rad_dim: usize,
}

impl Piece {
    /// A basis of the endomorphism ring of the piece.
    pub fn end_basis(&self) -> &[RepMorphism] {
        &self.end
    }
    /// Dimension of the residue field of the (local) endomorphism ring.
    pub fn residue_degree(&self) -> usize {
        self.end.len() - self.rad_dim
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// Per-vertex matrices `[incl_1 | incl_2 | ...]`, each invertible.
    pub witness: Vec<FpMatrix>,
    /// Isomorphism class index of each piece, numbered in order of first appearance.
    pub classes: Vec<usize>,
    end_dim: usize,
}

impl Decomposition {
    pub fn is_indecomposable(&self) -> bool {
        self.pieces.len() == 1
    }

    /// One representative per isomorphism class with its multiplicity.
    pub fn summands(&self) -> Vec<(&Representation, usize)> {
        let n_classes = self.classes.iter().max().map_or(0, |m| m + 1);
        (0..n_classes)
            .map(|c| {
                let first = self.classes.iter().position(|&k| k == c).unwrap();
                let mult = self.classes.iter().filter(|&&k| k == c).count();
                (&self.pieces[first].rep, mult)
            })
            .collect()
    }

    pub fn end_dim(&self) -> usize {
        self.end_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebraProfile {
    pub dim: usize,
    pub radical_dim: usize,
    pub is_local: bool,
    pub idempotent: Option<RepMorphism>,
}

enum Outcome {
    Split(Vec<FpMatrix>, Vec<FpMatrix>),
    Local { rad_dim: usize },
    Undecided,
}

fn compose_all(g: &RepMorphism, f: &RepMorphism) -> RepMorphism {
    g.after(f)
}

fn random_combination<R: Rng>(field: PrimeField, basis: &[RepMorphism], rng: &mut R) -> RepMorphism {
    let mut acc = basis[0].scale(rng.gen_range(0..field.p()));
    for b in &basis[1..] {
        let c = rng.gen_range(0..field.p());
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn min_poly_endo(field: PrimeField, z: &RepMorphism, modulo: Option<&RowSpace>) -> Poly {
    let id = RepMorphism { maps: z.maps.iter().map(|m| FpMatrix::identity(field, m.rows())).collect() };
    let width = id.flatten().len();
    let mut span = RowSpace::tracked(field, width);
    let mut cur = id;
    loop {
        let mut v = cur.flatten();
        if let Some(j) = modulo {
            j.reduce(&mut v);
        }
        if let Some(dep) = span.insert_tracked(v) {
            let mut c: Vec<u32> = dep.iter().map(|&x| field.neg(x)).collect();
            c.push(1);
            return Poly::new(field, c);
        }
        cur = z.after(&cur);
    }
}

fn eval_endo(field: PrimeField, z: &RepMorphism, f: &Poly) -> RepMorphism {
    RepMorphism { maps: z.maps.iter().map(|m| m.eval_poly(f)).collect() }
    .with_field(field)
}

impl RepMorphism {
    fn with_field(self, _field: PrimeField) -> Self {
        self
    }
}

struct Analysis<'a> {
    field: PrimeField,
    end: &'a [RepMorphism],
    identity: RepMorphism,
    generators: Option<Vec<RepMorphism>>,
}

impl<'a> Analysis<'a> {
    /// A set of algebra generators of the endomorphism ring.
    fn algebra_generators(&mut self, rng: &mut ChaCha8Rng) -> Vec<RepMorphism> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let n = self.end.len();
        let width = self.identity.flatten().len();
        let mut sub = RowSpace::new(self.field, width);
        let mut sub_basis = Vec::new();
        sub.insert(self.identity.flatten());
        sub_basis.push(self.identity.clone());
        let mut gens: Vec<RepMorphism> = Vec::new();
        let mut candidates: Vec<RepMorphism> =
            (0..2).map(|_| random_combination(self.field, self.end, rng)).collect();
        candidates.extend(self.end.iter().cloned());
        for c in candidates {
            if sub.dim() == n {
                break;
            }
            if sub.contains(&c.flatten()) {
                continue;
            }
            gens.push(c.clone());
            let mut queue: Vec<RepMorphism> = sub_basis.iter().map(|v| c.after(v)).collect();
            while let Some(w) = queue.pop() {
                if sub.insert(w.flatten()) {
                    for s in &gens {
                        queue.push(s.after(&w));
                    }
                    sub_basis.push(w);
                }
            }
        }
        self.generators = Some(gens.clone());
        gens
    }

    fn certify(&mut self, seeds: &[RepMorphism], rng: &mut ChaCha8Rng) -> Option<usize> {
        let n = self.end.len();
        let gens = self.algebra_generators(rng);
        let width = self.identity.flatten().len();
        let mut j_space = RowSpace::new(self.field, width);
        let mut j_basis = Vec::new();
        let mut queue: Vec<RepMorphism> = seeds.to_vec();
        while let Some(v) = queue.pop() {
            if j_space.insert(v.flatten()) {
                for s in &gens {
                    queue.push(s.after(&v));
                    queue.push(v.after(s));
                }
                j_basis.push(v);
                if j_space.dim() == n {
                    return None;
                }
            }
        }
        if !acts_nilpotently(self.field, &j_basis, &self.identity) {
            return None;
        }
        let d = n - j_space.dim();
        if d == 1 {
            return Some(j_space.dim());
        }
        for attempt in 0..(2 * n + 16) {
            let z = if attempt < n {
                self.end[attempt].clone()
            } else {
                random_combination(self.field, self.end, rng)
            };
            let g = min_poly_endo(self.field, &z, Some(&j_space));
            if g.degree() == Some(d) && g.is_irreducible() {
                return Some(j_space.dim());
            }
        }
        None
    }
}

/// Whether the span of `elems` acts nilpotently on the underlying space.
fn acts_nilpotently(field: PrimeField, elems: &[RepMorphism], identity: &RepMorphism) -> bool {
    let dims: Vec<usize> = identity.maps.iter().map(|m| m.rows()).collect();
    let total: usize = dims.iter().sum();
    let apply = |e: &RepMorphism, w: &[u32]| -> Vec<u32> {
        let mut out = Vec::with_capacity(total);
        let mut off = 0;
        for (m, &d) in e.maps.iter().zip(&dims) {
            out.extend(m.mul_vec(&w[off..off + d]));
            off += d;
        }
        out
    };
    let mut w_basis: Vec<Vec<u32>> = (0..total)
        .map(|i| {
            let mut v = vec![0; total];
            v[i] = 1;
            v
        })
        .collect();
    loop {
        let mut next = RowSpace::new(field, total);
        let mut next_basis = Vec::new();
        'outer: for e in elems {
            for w in &w_basis {
                let v = apply(e, w);
                if next.insert(v.clone()) {
                    next_basis.push(v);
                    if next.dim() == w_basis.len() {
                        break 'outer;
                    }
                }
            }
        }
        if next.dim() == 0 {
            return true;
        }
        if next.dim() == w_basis.len() {
            return false;
        }
        w_basis = next_basis;
    }
}

fn analyze(rep: &Representation, end: &[RepMorphism], rng: &mut ChaCha8Rng) -> Outcome {
    let field = rep.field();
    let n = end.len();
    if n == 1 {
        return Outcome::Local { rad_dim: 0 };
    }
    let mut an = Analysis { field, end, identity: RepMorphism::identity(rep), generators: None };
    let budget = 64 * n;
    let width = an.identity.flatten().len();
    let mut seeds: Vec<RepMorphism> = Vec::new();
    let mut seed_space = RowSpace::new(field, width);
    let mut next_check = n;
    for tried in 1..=budget {
        let z = if tried <= n { end[tried - 1].clone() } else { random_combination(field, end, rng) };
        let mu = min_poly_endo(field, &z, None);
        let r = mu.radical();
        if r.degree() != Some(1) && !r.is_irreducible() {
            let g = r.nontrivial_factor(rng).expect("reducible radical has a factor");
            let y = eval_endo(field, &z, &g);
            let mut kers = Vec::new();
            let mut ims = Vec::new();
            for m in &y.maps {
                let (_, k, i) = m.fitting_power().expect("square");
                kers.push(k);
                ims.push(i);
            }
            return Outcome::Split(kers, ims);
        }
        let y = eval_endo(field, &z, &r);
        if !y.is_zero() && seed_space.insert(y.flatten()) {
            seeds.push(y);
        }
        if tried == next_check {
            if let Some(rad_dim) = an.certify(&seeds, rng) {
                return Outcome::Local { rad_dim };
            }
            next_check += n.max(8);
        }
    }
    Outcome::Undecided
}

fn restrict_end(
    field: PrimeField,
    end: &[RepMorphism],
    bases: &[FpMatrix],
    lefts: &[FpMatrix],
) -> Vec<RepMorphism> {
    let b = RepMorphism { maps: bases.to_vec() };
    let l = RepMorphism { maps: lefts.to_vec() };
    let mut out = Vec::new();
    let mut span: Option<RowSpace> = None;
    for e in end {
        let r = l.after(&compose_all(e, &b));
        let flat = r.flatten();
        let s = span.get_or_insert_with(|| RowSpace::new(field, flat.len()));
        if s.insert(flat) {
            out.push(r);
        }
    }
    out
}

/// Decomposes `m` using a caller-supplied basis of `End(m)`.
pub fn decompose_with_end(m: &Representation, end: Vec<RepMorphism>) -> Result<Decomposition> {
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let end_dim = end.len();
    let mut work = vec![Piece {
        rep: m.clone(),
        incl: RepMorphism::identity(m),
        proj: RepMorphism::identity(m),
        end: end.clone(),
        rad_dim: 0,
    }];
    let mut done: Vec<Piece> = Vec::new();
    while let Some(piece) = work.pop() {
        if piece.rep.is_zero() {
            continue;
        }
        match analyze(&piece.rep, &piece.end, &mut rng) {
            Outcome::Undecided => return Err(Error::Undecided),
            Outcome::Local { rad_dim } => done.push(Piece { rad_dim, ..piece }),
            Outcome::Split(kers, ims) => {
                let mut lk = Vec::new();
                let mut li = Vec::new();
                for (k, i) in kers.iter().zip(&ims) {
                    let t = FpMatrix::hstack(&[k, i]);
                    let inv = t.inverse().expect("Fitting bases are complementary");
                    lk.push(inv.submatrix(0, 0, k.cols(), inv.cols()));
                    li.push(inv.submatrix(k.cols(), 0, i.cols(), inv.cols()));
                }
                for (bases, lefts) in [(kers, lk), (ims, li)] {
                    let rep = piece.rep.restrict(&bases, &lefts);
                    let end = restrict_end(field, &piece.end, &bases, &lefts);
                    let incl = piece.incl.after(&RepMorphism { maps: bases });
                    let proj = RepMorphism { maps: lefts }.after(&piece.proj);
                    work.push(Piece { rep, incl, proj, end, rad_dim: 0 });
                }
            }
        }
    }
    done.sort_by_key(piece_key);

    let nv = m.dims().len();
    let witness: Vec<FpMatrix> = (0..nv)
        .map(|v| {
            let blocks: Vec<&FpMatrix> = done.iter().map(|p| &p.incl.maps[v]).collect();
            if blocks.is_empty() {
                FpMatrix::zeros(field, m.dims()[v], 0)
            } else {
                FpMatrix::hstack(&blocks)
            }
        })
        .collect();
    debug_assert!(witness.iter().all(|w| w.inverse().is_some()));

    let classes = classify_pieces(&done, &done, &end, |i, j, e| {
        done[j].proj.after(e).after(&done[i].incl)
    }, true);
    Ok(Decomposition { pieces: done, witness, classes, end_dim })
}

fn piece_key(p: &Piece) -> (usize, Vec<usize>, Vec<Vec<u32>>) {
    (
        p.rep.total_dim(),
        p.rep.dims().to_vec(),
        p.rep.maps().iter().map(|m| m.data().to_vec()).collect(),
    )
}

/// Isomorphism classes for pieces drawn from one module (`same == true`), or a
/// matching table between two modules. `hom(i, j, e)` maps a Hom generator to a
/// morphism from piece `i` to piece `j`.
fn classify_pieces(
    left: &[Piece],
    _right: &[Piece],
    end: &[RepMorphism],
    hom: impl Fn(usize, usize, &RepMorphism) -> RepMorphism,
    _same: bool,
) -> Vec<usize> {
    let mut classes: Vec<usize> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..left.len() {
        let found = reps.iter().position(|&r| {
            left[r].rep.dims() == left[i].rep.dims() && {
                let f: Vec<RepMorphism> = end.iter().map(|e| hom(r, i, e)).collect();
                let g: Vec<RepMorphism> = end.iter().map(|e| hom(i, r, e)).collect();
                local_iso(&f, &g)
            }
        });
        match found {
            Some(c) => classes.push(c),
            None => {
                classes.push(reps.len());
                reps.push(i);
            }
        }
    }
    classes
}

/// For local objects `K`, `L` with `f` spanning `Hom(K, L)` and `g` spanning
/// `Hom(L, K)`: `K ≅ L` iff some `g_j ∘ f_i` is invertible.
fn local_iso(f: &[RepMorphism], g: &[RepMorphism]) -> bool {
    let f: Vec<&RepMorphism> = f.iter().filter(|x| !x.is_zero()).collect();
    let g: Vec<&RepMorphism> = g.iter().filter(|x| !x.is_zero()).collect();
    f.iter().any(|fi| g.iter().any(|gj| gj.after(fi).is_iso()))
}

pub fn decompose(m: &Representation) -> Result<Decomposition> {
    let end = hom_basis(m, m)?.basis;
    decompose_with_end(m, end)
}

pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    if !same_quiver(m.bound_quiver(), n.bound_quiver()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    is_isomorphic_decomposed(m, &dm, n, &dn)
}

/// [`is_isomorphic`] with decompositions already at hand, for repeated comparisons.
pub fn is_isomorphic_decomposed(m: &Representation, dm: &Decomposition, n: &Representation, dn: &Decomposition) -> Result<bool> {
    if !same_quiver(m.bound_quiver(), n.bound_quiver()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() || dm.pieces.len() != dn.pieces.len() || dm.end_dim != dn.end_dim {
        return Ok(false);
    }
    let shape = |d: &Decomposition| {
        let mut v: Vec<(Vec<usize>, usize)> = d.pieces.iter().map(|p| (p.rep.dims().to_vec(), p.end.len())).collect();
        v.sort_unstable();
        v
    };
    if shape(dm) != shape(dn) {
        return Ok(false);
    }
    let mn = hom_basis(m, n)?.basis;
    let nm = hom_basis(n, m)?.basis;
    Ok(match_pieces(dm, dn, &mn, &nm))
}

/// Greedy matching of indecomposable summands, given bases of `Hom(M, N)` and `Hom(N, M)`.
pub(crate) fn match_pieces(
    dm: &Decomposition,
    dn: &Decomposition,
    mn: &[RepMorphism],
    nm: &[RepMorphism],
) -> bool {
    if dm.pieces.len() != dn.pieces.len() {
        return false;
    }
    let mut used = vec![false; dn.pieces.len()];
    for k in &dm.pieces {
        let hit = dn.pieces.iter().enumerate().position(|(j, l)| {
            !used[j] && k.rep.dims() == l.rep.dims() && {
                let f: Vec<RepMorphism> = mn.iter().map(|h| l.proj.after(h).after(&k.incl)).collect();
                let g: Vec<RepMorphism> = nm.iter().map(|h| k.proj.after(h).after(&l.incl)).collect();
                local_iso(&f, &g)
            }
        });
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

pub fn end_profile(m: &Representation) -> Result<EndAlgebraProfile> {
    let d = decompose(m)?;
    let dim = d.end_dim();
    let mut semisimple = 0;
    for (c, &(_, mult)) in d.summands().iter().enumerate() {
        let first = d.classes.iter().position(|&k| k == c).unwrap();
        semisimple += mult * mult * d.pieces[first].residue_degree();
    }
    let idempotent = (d.pieces.len() > 1).then(|| d.pieces[0].incl.after(&d.pieces[0].proj));
    Ok(EndAlgebraProfile {
        dim,
        radical_dim: dim - semisimple,
        is_local: d.pieces.len() == 1,
        idempotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{BoundQuiverAlgebra, Quiver, Relation};
    use crate::repcat::projective;

    fn kronecker(p: u64) -> BoundQuiverAlgebra {
        let f = PrimeField::new(p).unwrap();
        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        BoundQuiverAlgebra::build(q, vec![], f, 2).unwrap()
    }

    #[test]
    fn regular_module_splits_into_projectives() {
        let f = PrimeField::new(2).unwrap();
        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let r = Relation::parse(&q, f, "ba").unwrap();
        let alg = BoundQuiverAlgebra::build(q, vec![r], f, 3).unwrap();
        let p0 = projective(&alg, 0);
        let p1 = projective(&alg, 1);
        let sum = Representation::direct_sum(&[&p0, &p1, &p0]).unwrap();
        let d = decompose(&sum).unwrap();
        assert_eq!(d.pieces.len(), 3);
        let mut mults: Vec<usize> = d.summands().iter().map(|s| s.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        assert!(d.witness.iter().all(|w| w.inverse().is_some()));
        assert!(is_isomorphic(&sum, &Representation::direct_sum(&[&p1, &p0, &p0]).unwrap()).unwrap());
        assert!(!is_isomorphic(&sum, &Representation::direct_sum(&[&p1, &p1]).unwrap()).unwrap_or(true));
    }

    #[test]
    fn kronecker_band_with_irreducible_parameter_is_local() {
        // (1, t) with t the companion of an irreducible quadratic over F_2
        let alg = kronecker(2);
        let f = alg.field();
        let c = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 1]]);
        let m = Representation::from_named(
            alg.bound_quiver().clone(),
            vec![2, 2],
            vec![("a", FpMatrix::identity(f, 2)), ("b", c)],
        )
        .unwrap();
        let prof = end_profile(&m).unwrap();
        assert!(prof.is_local);
        assert_eq!((prof.dim, prof.radical_dim), (2, 0));
    }

    #[test]
    fn kronecker_split_band_decomposes() {
        let alg = kronecker(3);
        let f = alg.field();
        let m = Representation::from_named(
            alg.bound_quiver().clone(),
            vec![2, 2],
            vec![
                ("a", FpMatrix::identity(f, 2)),
                ("b", FpMatrix::from_rows(f, &[vec![1, 0], vec![0, 2]])),
            ],
        )
        .unwrap();
        let d = decompose(&m).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert_eq!(d.summands().len(), 2);
        let prof = end_profile(&m).unwrap();
        assert!(!prof.is_local && prof.idempotent.is_some());
    }

    #[test]
    fn zero_module_has_no_pieces() {
        let alg = kronecker(2);
        let z = Representation::zero(alg.bound_quiver().clone(), vec![0, 0]);
        assert!(decompose(&z).unwrap().pieces.is_empty());
    }
}
