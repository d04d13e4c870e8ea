//! Exact sparse linear algebra over the rationals.
//!
//! Every Hom, Ext and Tor dimension in the crate bottoms out in the
//! [`Echelon`] elimination below. Vectors are sorted `(index, value)` lists
//! with no stored zeros; matrices are stored column-major because module
//! actions are applied to basis vectors, i.e. to columns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(numerator, denominator)` as machine integers, if they fit.
pub fn to_pair(q: &Rational) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

pub fn from_pair(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Decode("zero denominator".into()));
    }
    Ok(ratio(num, den))
}

pub fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

/// Accumulator for building sparse vectors out of scaled sums.
#[derive(Default)]
pub struct Accum {
    work: BTreeMap<usize, Rational>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.work.entry(i).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.work.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, x: &SparseVec, a: &Rational) {
        if a.is_zero() {
            return;
        }
        for (i, v) in x {
            self.add(*i, &(v * a));
        }
    }

    pub fn finish(self) -> SparseVec {
        self.work.into_iter().collect()
    }
}

pub fn vec_get(v: &SparseVec, i: usize) -> Rational {
    match v.binary_search_by_key(&i, |(j, _)| *j) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Rational::zero(),
    }
}

pub fn vec_scale(v: &SparseVec, a: &Rational) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * a)).collect()
}

/// `y + a·x`
pub fn vec_axpy(y: &SparseVec, a: &Rational, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut p, mut q) = (0, 0);
    while p < y.len() || q < x.len() {
        let iy = y.get(p).map(|e| e.0).unwrap_or(usize::MAX);
        let ix = x.get(q).map(|e| e.0).unwrap_or(usize::MAX);
        if iy < ix {
            out.push(y[p].clone());
            p += 1;
        } else if ix < iy {
            let v = &x[q].1 * a;
            if !v.is_zero() {
                out.push((ix, v));
            }
            q += 1;
        } else {
            let v = &y[p].1 + &x[q].1 * a;
            if !v.is_zero() {
                out.push((iy, v));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

pub fn vec_sub(y: &SparseVec, x: &SparseVec) -> SparseVec {
    vec_axpy(y, &-Rational::one(), x)
}

pub fn vec_dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut p, mut q) = (0, 0);
    let mut acc = Rational::zero();
    while p < a.len() && q < b.len() {
        match a[p].0.cmp(&b[q].0) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[p].1 * &b[q].1;
                p += 1;
                q += 1;
            }
        }
    }
    acc
}

/// Remap indices through `map`; entries mapped to `None` must be zero.
pub fn vec_reindex(v: &SparseVec, map: impl Fn(usize) -> Option<usize>) -> Option<SparseVec> {
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        out.push((map(*i)?, x.clone()));
    }
    out.sort_by_key(|e| e.0);
    Some(out)
}

/// Column-major sparse rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            cols: (0..n).map(unit_vec).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.iter().all(|(i, v)| *i < nrows && !v.is_zero())));
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        Self {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    /// Duplicate coordinates are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut acc: Vec<Accum> = (0..ncols).map(|_| Accum::new()).collect();
        for (r, c, v) in entries {
            if r >= nrows || c >= ncols {
                return Err(Error::SizeMismatch(format!(
                    "entry ({r}, {c}) outside {nrows}x{ncols}"
                )));
            }
            acc[c].add(r, &v);
        }
        Ok(Self {
            nrows,
            ncols,
            cols: acc.into_iter().map(Accum::finish).collect(),
        })
    }

    /// Matrix sending basis vector `j` to basis vector `image[j]` (or to zero).
    pub fn from_index_map(nrows: usize, image: &[Option<usize>]) -> Self {
        let cols = image
            .iter()
            .map(|t| match t {
                Some(i) => unit_vec(*i),
                None => Vec::new(),
            })
            .collect();
        Self::from_columns(nrows, cols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        vec_get(&self.cols[c], r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (j, a) in x {
            acc.add_scaled(&self.cols[*j], a);
        }
        acc.finish()
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix::from_columns(self.nrows, cols))
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.axpy(&-Rational::one(), other)
    }

    /// `self + a·other`
    pub fn axpy(&self, a: &Rational, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::SizeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| vec_axpy(x, a, y))
            .collect();
        Ok(SparseMatrix::from_columns(self.nrows, cols))
    }

    pub fn scale(&self, a: &Rational) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.nrows,
            self.cols.iter().map(|c| vec_scale(c, a)).collect(),
        )
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols: rows,
        }
    }

    pub fn pow(&self, k: usize) -> Result<SparseMatrix> {
        let mut out = SparseMatrix::identity(self.nrows);
        for _ in 0..k {
            out = self.mul(&out)?;
        }
        Ok(out)
    }

    /// For a 0/1 permutation matrix, the image index of each basis vector.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.nrows != self.ncols {
            return None;
        }
        let mut seen = vec![false; self.nrows];
        let mut image = Vec::with_capacity(self.ncols);
        for col in &self.cols {
            if col.len() != 1 || !col[0].1.is_one() || seen[col[0].0] {
                return None;
            }
            seen[col[0].0] = true;
            image.push(col[0].0);
        }
        Some(image)
    }

    pub fn block_diag(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let mut cols = Vec::new();
        let mut off = 0;
        for b in blocks {
            for c in &b.cols {
                cols.push(c.iter().map(|(r, v)| (r + off, v.clone())).collect());
            }
            off += b.nrows;
        }
        SparseMatrix::from_columns(nrows, cols)
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let ncols = blocks.first().map(|b| b.ncols).unwrap_or(0);
        if blocks.iter().any(|b| b.ncols != ncols) {
            return Err(Error::SizeMismatch("vstack column counts differ".into()));
        }
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let mut cols: Vec<SparseVec> = vec![Vec::new(); ncols];
        let mut off = 0;
        for b in blocks {
            for (j, c) in b.cols.iter().enumerate() {
                cols[j].extend(c.iter().map(|(r, v)| (r + off, v.clone())));
            }
            off += b.nrows;
        }
        Ok(SparseMatrix::from_columns(nrows, cols))
    }

    pub fn hstack(blocks: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let nrows = blocks.first().map(|b| b.nrows).unwrap_or(0);
        if blocks.iter().any(|b| b.nrows != nrows) {
            return Err(Error::SizeMismatch("hstack row counts differ".into()));
        }
        let cols = blocks.iter().flat_map(|b| b.cols.iter().cloned()).collect();
        Ok(SparseMatrix::from_columns(nrows, cols))
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.nrows);
        let mut cols: Vec<&SparseVec> = self.cols.iter().collect();
        cols.sort_by_key(|c| c.len());
        for c in cols {
            ech.insert(c.clone());
        }
        ech.rank()
    }

    /// Basis of `{x : A x = 0}`, each vector carrying a 1 at its own free
    /// column and 0 at every other free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        nullspace_of_rows(self.ncols, self.transpose().cols)
    }

    pub fn kernel_subspace(&self) -> Subspace {
        let (pivots, basis) = kernel_with_free_columns(self.ncols, self.transpose().cols);
        Subspace::from_parts(self.ncols, basis, pivots)
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.nrows, self.cols.iter().cloned())
    }

    /// `(row, col, num, den)` coordinate list; fails if an entry does not fit `i64`.
    pub fn to_coordinates(&self) -> Result<Vec<(usize, usize, i64, i64)>> {
        self.triplets()
            .map(|(r, c, v)| {
                let (n, d) = to_pair(v)
                    .ok_or_else(|| Error::InvalidParameter("entry too large to encode".into()))?;
                Ok((r, c, n, d))
            })
            .collect()
    }

    pub fn from_coordinates(
        nrows: usize,
        ncols: usize,
        coords: &[(usize, usize, i64, i64)],
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(coords.len());
        for &(r, c, n, d) in coords {
            entries.push((r, c, from_pair(n, d)?));
        }
        Self::from_triplets(nrows, ncols, entries)
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.triplets()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Kernel of the matrix whose rows are given, in `ncols` unknowns.
/// Vectors fixed by every operator in `ops`.
pub fn fixed_space(dim: usize, ops: &[SparseMatrix]) -> Result<Subspace> {
    if ops.is_empty() {
        return Ok(Subspace::full(dim));
    }
    let id = SparseMatrix::identity(dim);
    let blocks = ops.iter().map(|g| g.sub(&id)).collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::vstack(&blocks.iter().collect::<Vec<_>>())?.kernel_subspace())
}

pub fn nullspace_of_rows(ncols: usize, rows: Vec<SparseVec>) -> Vec<SparseVec> {
    kernel_with_free_columns(ncols, rows).1
}

/// Kernel basis together with the free column each vector is normalised at.
pub fn kernel_with_free_columns(
    ncols: usize,
    mut rows: Vec<SparseVec>,
) -> (Vec<usize>, Vec<SparseVec>) {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| r.len());
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    let (pivots, reduced) = ech.into_rref();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
    for (p, row) in pivots.iter().zip(&reduced) {
        for (c, v) in row {
            if c != p {
                kernel_entries[*c].push((*p, -v.clone()));
            }
        }
    }
    let mut free = Vec::new();
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = std::mem::take(&mut kernel_entries[f]);
        v.push((f, Rational::one()));
        v.sort_by_key(|e| e.0);
        free.push(f);
        out.push(v);
    }
    (free, out)
}

/// Incremental row echelon form with unit leading entries.
///
/// Rows are reduced on insertion by sweeping their support in increasing
/// column order; every stored row's support starts at its pivot, so the
/// sweep never revisits a column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

const NO_PIVOT: usize = usize::MAX;

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let Some((&c, coef)) = work.range(cursor..).next() else {
                break;
            };
            cursor = c + 1;
            let r = self.pivot_row[c];
            if r == NO_PIVOT {
                continue;
            }
            let coef = coef.clone();
            for (j, a) in &self.rows[r] {
                let e = work.entry(*j).or_insert_with(Rational::zero);
                *e -= &coef * a;
                if e.is_zero() {
                    work.remove(j);
                }
            }
        }
        work.into_iter().collect()
    }

    /// Returns `true` when `v` was independent of the rows already present.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let red = self.reduce(&v);
        let Some((lead, lead_val)) = red.first().cloned() else {
            return false;
        };
        let inv = lead_val.recip();
        let row: SparseVec = red.into_iter().map(|(i, x)| (i, x * &inv)).collect();
        self.pivot_row[lead] = self.rows.len();
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced rows sorted by pivot: `(pivots, rows)`.
    pub fn into_rref(self) -> (Vec<usize>, Vec<SparseVec>) {
        let Echelon {
            rows, pivot_row, ..
        } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(rows[i][0].0));
        let mut rows: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
        let mut done: Vec<Option<SparseVec>> = vec![None; rows.len()];
        for &i in &order {
            let row = rows[i].take().expect("row visited twice");
            let pivot = row[0].0;
            let mut acc: BTreeMap<usize, Rational> = row.into_iter().collect();
            let keys: Vec<usize> = acc.range(pivot + 1..).map(|(k, _)| *k).collect();
            for c in keys {
                let r = pivot_row[c];
                if r == NO_PIVOT {
                    continue;
                }
                let Some(coef) = acc.get(&c).cloned() else {
                    continue;
                };
                let other = done[r].as_ref().expect("larger pivots reduced first");
                for (j, a) in other {
                    let e = acc.entry(*j).or_insert_with(Rational::zero);
                    *e -= &coef * a;
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
            }
            done[i] = Some(acc.into_iter().collect());
        }
        let mut pairs: Vec<(usize, SparseVec)> = done
            .into_iter()
            .map(|r| {
                let r = r.expect("all rows reduced");
                (r[0].0, r)
            })
            .collect();
        pairs.sort_by_key(|p| p.0);
        pairs.into_iter().unzip()
    }
}

/// A linear subspace with a reduced basis: `basis[i]` has a 1 at
/// `pivots[i]` and a 0 at every other pivot, so coordinates of a member
/// vector are read off at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_pos: Vec<usize>,
}

impl Subspace {
    fn from_parts(ambient: usize, basis: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let mut pivot_pos = vec![NO_PIVOT; ambient];
        for (k, &p) in pivots.iter().enumerate() {
            pivot_pos[p] = k;
        }
        Self {
            ambient,
            basis,
            pivots,
            pivot_pos,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_parts(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_parts(ambient, (0..ambient).map(unit_vec).collect(), (0..ambient).collect())
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate(ambient: usize, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self::from_parts(ambient, indices.iter().map(|&i| unit_vec(i)).collect(), indices)
    }

    pub fn from_spanning(ambient: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut vecs: Vec<SparseVec> = vecs.into_iter().filter(|v| !v.is_empty()).collect();
        vecs.sort_by_key(|v| v.len());
        let mut ech = Echelon::new(ambient);
        for v in vecs {
            ech.insert(v);
        }
        let (pivots, basis) = ech.into_rref();
        Self::from_parts(ambient, basis, pivots)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Coordinates of `v`, assuming `v` lies in the subspace.
    pub fn coords_unchecked(&self, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .filter(|(i, _)| self.pivot_pos[*i] != NO_PIVOT)
            .map(|(i, x)| (self.pivot_pos[*i], x.clone()))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.coords_unchecked(v);
        let mut rebuilt = Accum::new();
        for (k, x) in &c {
            rebuilt.add_scaled(&self.basis[*k], x);
        }
        if rebuilt.finish() == *v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coords(v).is_some()
    }

    pub fn from_coords(&self, c: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (k, x) in c {
            acc.add_scaled(&self.basis[*k], x);
        }
        acc.finish()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }

    /// Reduce `v` modulo the subspace; the result vanishes at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let c = self.coords_unchecked(v);
        let mut acc = Accum::new();
        acc.add_scaled(v, &Rational::one());
        for (k, x) in &c {
            acc.add_scaled(&self.basis[*k], &-x.clone());
        }
        acc.finish()
    }

    /// Matrix of the operator `op` restricted to this (op-stable) subspace,
    /// in subspace coordinates.
    pub fn restrict(&self, op: &SparseMatrix) -> Result<SparseMatrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = op.apply(b);
            let c = self.coords(&img).ok_or_else(|| {
                Error::AxiomViolation("subspace is not stable under operator".into())
            })?;
            cols.push(c);
        }
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }
}

/// Quotient `outer / inner` of nested subspaces of a common ambient space,
/// with a basis given by the complement of `inner`'s pivots in `outer`
/// coordinates.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    outer: Subspace,
    inner_in_outer: Subspace,
    kept: Vec<usize>,
    pos: Vec<usize>,
}

impl SubQuotient {
    pub fn new(outer: Subspace, inner: &Subspace) -> Result<Self> {
        let mut inner_coords = Vec::with_capacity(inner.dim());
        for v in inner.basis() {
            inner_coords.push(
                outer
                    .coords(v)
                    .ok_or_else(|| Error::InvalidParameter("inner not contained in outer".into()))?,
            );
        }
        let inner_in_outer = Subspace::from_spanning(outer.dim(), inner_coords);
        let mut is_pivot = vec![false; outer.dim()];
        for &p in inner_in_outer.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..outer.dim()).filter(|&i| !is_pivot[i]).collect();
        let mut pos = vec![usize::MAX; outer.dim()];
        for (k, &i) in kept.iter().enumerate() {
            pos[i] = k;
        }
        Ok(Self {
            outer,
            inner_in_outer,
            kept,
            pos,
        })
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn outer(&self) -> &Subspace {
        &self.outer
    }

    /// Class of an ambient vector lying in `outer`, in quotient coordinates.
    pub fn class_of(&self, v: &SparseVec) -> Result<SparseVec> {
        let c = self
            .outer
            .coords(v)
            .ok_or_else(|| Error::InvalidParameter("vector not in outer subspace".into()))?;
        let red = self.inner_in_outer.reduce(&c);
        Ok(red.into_iter().map(|(i, x)| (self.pos[i], x)).collect())
    }

    /// Ambient representative of quotient basis vector `k`.
    pub fn representative(&self, k: usize) -> SparseVec {
        self.outer.basis()[self.kept[k]].clone()
    }

    /// Induced operator on the quotient of an operator preserving both subspaces.
    pub fn induced(&self, op: &SparseMatrix) -> Result<SparseMatrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            cols.push(self.class_of(&op.apply(&self.representative(k)))?);
        }
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows[0].len();
        SparseMatrix::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(move |(c, v)| (r, c, rat(*v)))
            }),
        )
        .unwrap()
    }

    #[test]
    fn rank_and_kernel_small() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let z = SparseMatrix::zeros(2, 3);
        assert_eq!(z.kernel().len(), 3);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn subspace_coordinates_roundtrip() {
        let s = Subspace::from_spanning(
            4,
            vec![
                vec![(0, rat(1)), (1, rat(1))],
                vec![(1, rat(2)), (3, rat(-1))],
            ],
        );
        assert_eq!(s.dim(), 2);
        let v = vec![(0, rat(3)), (1, rat(5)), (3, rat(-1))];
        let c = s.coords(&v).unwrap();
        assert_eq!(s.from_coords(&c), v);
        assert!(!s.contains(&unit_vec(2)));
    }

    #[test]
    fn subquotient_of_chain() {
        let outer = Subspace::full(3);
        let inner = Subspace::from_spanning(3, vec![vec![(0, rat(1)), (2, rat(1))]]);
        let q = SubQuotient::new(outer, &inner).unwrap();
        assert_eq!(q.dim(), 2);
        let c = q.class_of(&vec![(0, rat(1)), (2, rat(1))]).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn permutation_detection() {
        let p = SparseMatrix::from_index_map(3, &[Some(1), Some(0), Some(2)]);
        assert_eq!(p.as_permutation(), Some(vec![1, 0, 2]));
        assert!(p.scale(&rat(2)).as_permutation().is_none());
    }

    // Dense fraction-based elimination, used as an independent rank oracle.
    fn dense_rank(m: &SparseMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.ncols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..m.ncols() {
                        let t = &a[rank][k] * &f;
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rank_matches_dense_and_kernel_is_annihilated(
            entries in proptest::collection::vec((0usize..6, 0usize..7, -3i64..4), 0..30)
        ) {
            let m = SparseMatrix::from_triplets(6, 7, entries.into_iter().map(|(r, c, v)| (r, c, rat(v)))).unwrap();
            let rank = m.rank();
            prop_assert_eq!(rank, dense_rank(&m));
            let k = m.kernel();
            prop_assert_eq!(k.len() + rank, 7);
            for v in &k {
                prop_assert!(m.apply(v).is_empty());
            }
            prop_assert_eq!(m.image().dim(), rank);
        }
    }
}
