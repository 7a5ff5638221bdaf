use super::PrimeField;

/// Incrementally maintained subspace of `F_p^width`, kept in reduced echelon form.
///
/// With tracking enabled, each stored row remembers how it was combined from the
/// independent vectors inserted so far, so linear dependencies can be read off.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    row_of_col: Vec<usize>,
    track: Option<Vec<Vec<u32>>>,
}

const NONE: usize = usize::MAX;

impl RowSpace {
    pub fn new(field: PrimeField, width: usize) -> Self {
        RowSpace {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NONE; width],
            track: None,
        }
    }

    pub fn tracked(field: PrimeField, width: usize) -> Self {
        RowSpace { track: Some(Vec::new()), ..Self::new(field, width) }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn width(&self) -> usize {
        self.width
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NONE
    }
    /// Stored row whose pivot is `col`.
    pub fn pivot_row(&self, col: usize) -> Option<&[u32]> {
        match self.row_of_col[col] {
            NONE => None,
            r => Some(&self.rows[r]),
        }
    }

    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let k = v[pc];
            if k != 0 {
                let nk = f.neg(k);
                for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nk, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates with respect to `basis()`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        if self.track.is_some() {
            return self.insert_tracked(v).is_none();
        }
        let mut v = v;
        self.reduce(&mut v);
        self.push_reduced(v, None)
    }

    /// Tracked insertion. Returns `Some(c)` with `v = Σ c_i u_i` over the previously
    /// accepted vectors `u_i` when `v` is dependent; otherwise stores `v` and returns `None`.
    pub fn insert_tracked(&mut self, v: Vec<u32>) -> Option<Vec<u32>> {
        let f = self.field;
        let n = self.rows.len();
        let track = self.track.as_ref().expect("tracking disabled");
        let mut v = v;
        let mut combo = vec![0u32; n + 1];
        combo[n] = 1;
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let k = v[pc];
            if k != 0 {
                let nk = f.neg(k);
                for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nk, r));
                    }
                }
                for (x, &t) in combo.iter_mut().zip(&track[i]) {
                    if t != 0 {
                        *x = f.add(*x, f.mul(nk, t));
                    }
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            combo.pop();
            return Some(combo.into_iter().map(|x| f.neg(x)).collect());
        }
        self.push_reduced(v, Some(combo));
        None
    }

    fn push_reduced(&mut self, mut v: Vec<u32>, combo: Option<Vec<u32>>) -> bool {
        let f = self.field;
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let mut combo = combo;
        if let Some(c) = combo.as_mut() {
            c.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        }
        // Keep the stored rows fully reduced.
        let n_old = self.rows.len();
        for i in 0..n_old {
            let k = self.rows[i][pc];
            if k != 0 {
                let nk = f.neg(k);
                for (x, &r) in self.rows[i].iter_mut().zip(&v).skip(pc) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nk, r));
                    }
                }
                if let (Some(track), Some(c)) = (self.track.as_mut(), combo.as_ref()) {
                    let t = &mut track[i];
                    t.resize(c.len(), 0);
                    for (x, &y) in t.iter_mut().zip(c) {
                        if y != 0 {
                            *x = f.add(*x, f.mul(nk, y));
                        }
                    }
                }
            }
        }
        self.row_of_col[pc] = self.rows.len();
        self.rows.push(v);
        self.pivots.push(pc);
        if let (Some(track), Some(c)) = (self.track.as_mut(), combo) {
            track.push(c);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_dependencies() {
        let f = PrimeField::new(5).unwrap();
        let mut s = RowSpace::tracked(f, 3);
        assert!(s.insert_tracked(vec![1, 2, 0]).is_none());
        assert!(s.insert_tracked(vec![0, 1, 1]).is_none());
        // 2*(1,2,0) + 3*(0,1,1) = (2, 2, 3)
        assert_eq!(s.insert_tracked(vec![2, 2, 3]), Some(vec![2, 3]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 2, 3]));
        assert!(!s.contains(&[0, 0, 1]));
    }
}
