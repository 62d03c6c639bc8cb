//! Sparse exact linear algebra over [`Cyclotomic`]: vectors, reduced row
//! echelon subspaces, kernels and linear solves.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Cyclotomic;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Cyclotomic)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Cyclotomic::one())],
        }
    }

    pub fn single(i: usize, c: Cyclotomic) -> Self {
        let mut v = SparseVec::new();
        if !c.is_zero() {
            v.entries.push((i, c));
        }
        v
    }

    pub fn from_map(map: BTreeMap<usize, Cyclotomic>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Cyclotomic)>) -> Self {
        let mut map: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_default() += &c;
        }
        Self::from_map(map)
    }

    pub fn from_dense(d: &[Cyclotomic]) -> Self {
        SparseVec {
            entries: d
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Cyclotomic> {
        let mut d = vec![Cyclotomic::zero(); n];
        for (i, c) in &self.entries {
            d[*i] = c.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Option<&Cyclotomic> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Cyclotomic)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, s: &Cyclotomic) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, other: &SparseVec, s: &Cyclotomic) -> SparseVec {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * s));
                        b.next();
                    } else {
                        let v = x + &(y * s);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * s));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Cyclotomic::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Cyclotomic::from_int(-1))
    }

    /// Re-indexes entries through `f`, summing collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(*i))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*b{i}")?;
        }
        Ok(())
    }
}

/// A subspace of `k^n` kept in reduced row echelon form.
///
/// Rows are normalized with leading coefficient one and every pivot column is
/// zero in all other rows, so two subspaces are equal iff their rows are.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.basis() == other.basis()
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(SparseVec::unit))
    }

    pub fn spanned_by(ambient: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Basis rows ordered by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots
            .values()
            .map(|&r| self.rows[r].clone())
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Cyclotomic)> = v
            .iter()
            .filter_map(|(i, c)| self.pivots.get(&i).map(|&r| (r, c.clone())))
            .collect();
        let mut out = v.clone();
        for (r, c) in hits {
            out = out.add_scaled(&self.rows[r], &-&c);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row = r.scale(&inv);
        for existing in self.rows.iter_mut() {
            if let Some(c) = existing.get(p) {
                let c = c.clone();
                *existing = existing.add_scaled(&row, &-&c);
            }
        }
        self.rows.push(row);
        self.pivots.insert(p, self.rows.len() - 1);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j ; kernel of [U | -W]
        let u = self.basis();
        let w = other.basis();
        let cols: Vec<SparseVec> = u
            .iter()
            .cloned()
            .chain(w.iter().map(|x| x.scale(&Cyclotomic::from_int(-1))))
            .collect();
        let ker = kernel(&cols, self.ambient);
        Subspace::spanned_by(
            self.ambient,
            ker.iter().map(|k| {
                k.iter()
                    .filter(|(i, _)| *i < u.len())
                    .fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(&u[i], c))
            }),
        )
    }

    /// Vectors extending this subspace's basis to a basis of `k^n`: the
    /// unit vectors of the non-pivot columns.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.is_pivot(*c)).collect()
    }
}

/// Augments each column with its identity tag and row-reduces.
fn augmented(cols: &[SparseVec], rows: usize) -> Subspace {
    let n = cols.len();
    let mut s = Subspace::zero(rows + n);
    for (j, c) in cols.iter().enumerate() {
        let mut v: Vec<(usize, Cyclotomic)> = c.iter().map(|(i, x)| (i, x.clone())).collect();
        v.push((rows + j, Cyclotomic::one()));
        s.insert(SparseVec { entries: v });
    }
    s
}

/// Basis of `{x ∈ k^n : Σ x_j cols[j] = 0}` where each column lives in `k^rows`.
pub fn kernel(cols: &[SparseVec], rows: usize) -> Vec<SparseVec> {
    let s = augmented(cols, rows);
    s.basis()
        .into_iter()
        .filter(|r| r.leading().is_some_and(|(p, _)| p >= rows))
        .map(|r| r.map_indices(|i| i - rows))
        .collect()
}

/// Rank of the matrix with the given columns.
pub fn rank(cols: &[SparseVec], rows: usize) -> usize {
    Subspace::spanned_by(rows, cols.iter().cloned()).dim()
}

/// Some `x` with `Σ x_j cols[j] = rhs`, or `None` when inconsistent.
pub fn solve(cols: &[SparseVec], rows: usize, rhs: &SparseVec) -> Option<SparseVec> {
    let s = augmented(cols, rows);
    let rem = s.reduce(rhs);
    if rem.iter().any(|(i, _)| i < rows) {
        return None;
    }
    Some(
        rem.map_indices(|i| i - rows)
            .scale(&Cyclotomic::from_int(-1)),
    )
}

/// Small dense matrix, used for representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diag(d: Vec<Cyclotomic>) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, c) in d.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Cyclotomic) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn column(&self, c: usize) -> SparseVec {
        SparseVec::from_pairs((0..self.rows).map(|r| (r, self.get(r, c).clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(
            &xs.iter()
                .map(|&x| Cyclotomic::from_int(x))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Subspace::spanned_by(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::spanned_by(3, [v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_and_solve() {
        // columns (1,0), (0,1), (1,1)
        let cols = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let k = kernel(&cols, 2);
        assert_eq!(k.len(), 1);
        let combo = k[0]
            .iter()
            .fold(SparseVec::new(), |acc, (j, c)| acc.add_scaled(&cols[j], c));
        assert!(combo.is_zero());
        let x = solve(&cols, 2, &v(&[3, 5])).unwrap();
        let combo = x
            .iter()
            .fold(SparseVec::new(), |acc, (j, c)| acc.add_scaled(&cols[j], c));
        assert_eq!(combo, v(&[3, 5]));
        assert!(solve(&[v(&[1, 0])], 2, &v(&[0, 1])).is_none());
    }

    #[test]
    fn intersection() {
        let a = Subspace::spanned_by(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::spanned_by(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::spanned_by(3, [v(&[0, 1, 0])]));
    }
}
