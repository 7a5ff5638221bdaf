//! Univariate polynomials over `F_p`, coefficients stored lowest degree first.

use super::PrimeField;
use rand::Rng;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    c: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}t", a)?,
                (_, 1) => write!(f, "t^{}", i)?,
                _ => write!(f, "{}t^{}", a, i)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: PrimeField, c: Vec<u32>) -> Self {
        let p = field.p();
        let mut c: Vec<u32> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly { field, c: vec![] }
    }
    pub fn one(field: PrimeField) -> Self {
        Poly::new(field, vec![1])
    }
    /// The indeterminate `t`.
    pub fn t(field: PrimeField) -> Self {
        Poly::new(field, vec![0, 1])
    }
    pub fn constant(field: PrimeField, a: u32) -> Self {
        Poly::new(field, vec![a])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    fn lead(&self) -> u32 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, s: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.c.iter().map(|&a| f.mul(a, s)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let k = f.mul(r[i], inv);
            if k == 0 {
                continue;
            }
            q[i - dd] = k;
            for j in 0..=dd {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(k, d.c[j]));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let p = f.p() as usize;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, (i % p) as u32))
            .collect();
        Poly::new(f, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// For a polynomial in `t^p`, the polynomial `g` with `g(t)^p = self`.
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        Poly::new(self.field, self.c.iter().step_by(p).copied().collect())
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Poly {
        assert!(!self.is_zero(), "radical of zero polynomial");
        let f = self.monic();
        if f.degree() == Some(0) {
            return Poly::one(self.field);
        }
        let d = f.derivative();
        if d.is_zero() {
            return f.pth_root().radical();
        }
        // f / gcd(f, f') collects the factors whose multiplicity is prime to p.
        let mut rest = f.gcd(&d);
        let r1 = f.divrem(&rest).0;
        loop {
            let h = rest.gcd(&r1);
            if h.degree() == Some(0) {
                break;
            }
            rest = rest.divrem(&h).0;
        }
        if rest.degree() == Some(0) {
            r1
        } else {
            // What remains is a p-th power with factors disjoint from r1.
            r1.mul(&rest.pth_root().radical()).monic()
        }
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let p = self.field.p() as u64;
        let x = Poly::t(self.field);
        let frob = |k: usize| {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.pow_mod(p, &f);
            }
            h
        };
        if frob(n).sub(&x).rem(&f).is_zero() {
            for q in prime_divisors(n) {
                let g = frob(n / q).sub(&x).gcd(&f);
                if g.degree() != Some(0) {
                    return false;
                }
            }
            true
        } else {
            false
        }
    }

    /// A proper nontrivial monic factor of a reducible polynomial, if any.
    pub fn nontrivial_factor<R: Rng>(&self, rng: &mut R) -> Option<Poly> {
        let n = self.degree()?;
        if n <= 1 {
            return None;
        }
        let f = self.monic();
        let r = f.radical();
        if r.degree() != Some(n) {
            return Some(if r.degree().unwrap() == 0 { f.clone() } else { r });
        }
        let p = self.field.p() as u64;
        let x = Poly::t(self.field);
        let mut h = x.clone();
        for i in 1..=n {
            h = h.pow_mod(p, &f);
            let g = h.sub(&x).gcd(&f);
            let dg = g.degree().unwrap_or(n);
            if dg == 0 {
                continue;
            }
            if dg < n {
                return Some(g);
            }
            if i == n {
                return None;
            }
            return Some(f.equal_degree_split(i, rng));
        }
        None
    }

    /// Splits a squarefree product of distinct irreducibles of common degree `d`.
    fn equal_degree_split<R: Rng>(&self, d: usize, rng: &mut R) -> Poly {
        let f = self;
        let n = f.degree().unwrap();
        let fld = self.field;
        let p = fld.p() as u64;
        loop {
            let a = Poly::new(fld, (0..n).map(|_| rng.gen_range(0..fld.p())).collect());
            if a.degree().is_none_or(|k| k == 0) {
                continue;
            }
            let g = a.gcd(f);
            if g.degree().is_some_and(|k| k > 0 && k < n) {
                return g;
            }
            let b = if p == 2 {
                // Trace map a + a^2 + ... + a^{2^{d-1}}.
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(f);
                    s = s.add(&t);
                }
                s
            } else {
                // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
                let mut t = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    t = t.pow_mod(p, f);
                    norm = norm.mul(&t).rem(f);
                }
                norm.pow_mod((p - 1) / 2, f).sub(&Poly::one(fld))
            };
            let g = b.gcd(f);
            if g.degree().is_some_and(|k| k > 0 && k < n) {
                return g;
            }
        }
    }

    /// All monic irreducible polynomials of degree `d`, in lexicographic order of coefficients.
    pub fn monic_irreducibles(field: PrimeField, d: usize) -> Vec<Poly> {
        let p = field.p() as u64;
        let count = p.checked_pow(d as u32).expect("too many polynomials");
        let mut out = Vec::new();
        for code in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                c.push((x % p) as u32);
                x /= p;
            }
            c.push(1);
            let f = Poly::new(field, c);
            if f.is_irreducible() {
                out.push(f);
            }
        }
        out
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fld(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    // Exhaustive oracle: irreducible iff no monic divisor of degree 1..=n/2.
    fn irreducible_oracle(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        if n == 0 {
            return false;
        }
        let p = f.field().p() as u64;
        for d in 1..=n / 2 {
            for code in 0..p.pow(d as u32) {
                let mut c = Vec::new();
                let mut x = code;
                for _ in 0..d {
                    c.push((x % p) as u32);
                    x /= p;
                }
                c.push(1);
                if f.rem(&Poly::new(f.field(), c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_counts_match_oracle() {
        for p in [2u64, 3, 5] {
            for d in 1..=4usize {
                if p.pow(d as u32) > 700 {
                    continue;
                }
                let fast = Poly::monic_irreducibles(fld(p), d);
                let mut slow = 0;
                for code in 0..p.pow(d as u32) {
                    let mut c = Vec::new();
                    let mut x = code;
                    for _ in 0..d {
                        c.push((x % p) as u32);
                        x /= p;
                    }
                    c.push(1);
                    if irreducible_oracle(&Poly::new(fld(p), c)) {
                        slow += 1;
                    }
                }
                assert_eq!(fast.len(), slow, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn radical_strips_multiplicities() {
        let f = fld(3);
        let t = Poly::t(f);
        let a = t.add(&Poly::one(f)); // t+1
        let b = t.mul(&t).add(&Poly::one(f)); // t^2+1, irreducible over F_3
        let g = a.pow(3).mul(&b.pow(2)).mul(&t.pow(4));
        assert_eq!(g.radical(), a.mul(&b).mul(&t).monic());
        assert_eq!(b.pow(9).radical(), b);
    }

    #[test]
    fn splits_reducible_squarefree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 7] {
            let f = fld(p);
            let deg = if p == 2 { 3 } else { 2 };
            let irr2 = Poly::monic_irreducibles(f, deg);
            let g = irr2[0].mul(&irr2[1]);
            let h = g.nontrivial_factor(&mut rng).unwrap();
            let d = h.degree().unwrap();
            assert!(d > 0 && d < 2 * deg && g.rem(&h).is_zero());
            assert!(irr2[0].nontrivial_factor(&mut rng).is_none());
        }
    }
}
