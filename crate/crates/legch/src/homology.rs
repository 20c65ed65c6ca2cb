//! Exact linear algebra over Z/2: bit matrices, graded chain complexes,
//! homology, mapping cones, and the forced-rank exactness solver for long
//! exact sequences of finite-dimensional Z/2 vector spaces.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("boundary composite is nonzero in degree {0}: not a complex")]
    NotAComplex(i64),
    #[error("map does not commute with the boundaries in degree {0}: not a chain map")]
    NotChainMap(i64),
}

/// Dense bit matrix over Z/2, rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows written as strings of `0` and `1`.
    pub fn from_rows(rows: usize, cols: usize, lines: &[&str]) -> Result<Self, HomologyError> {
        if lines.len() != rows {
            return Err(HomologyError::Shape(format!(
                "expected {rows} rows, got {}",
                lines.len()
            )));
        }
        let mut m = Self::zero(rows, cols);
        for (i, line) in lines.iter().enumerate() {
            let bits: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if bits.len() != cols {
                return Err(HomologyError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    bits.len()
                )));
            }
            for (j, c) in bits.iter().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => {
                        return Err(HomologyError::Shape(format!(
                            "row {i} contains '{c}', expected 0/1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.data[i * self.words_per_row + j / 64];
        (w >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn row_xor(&mut self, dst: usize, src: usize) {
        let (w, stride) = (self.words_per_row, self.words_per_row);
        for k in 0..w {
            let s = self.data[src * stride + k];
            self.data[dst * stride + k] ^= s;
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Gf2Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..other.words_per_row {
                        let s = other.data[k * other.words_per_row + w];
                        out.data[i * out.words_per_row + w] ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.data.swap(pivot * m.words_per_row, rank * m.words_per_row);
            for k in 1..m.words_per_row {
                m.data
                    .swap(pivot * m.words_per_row + k, rank * m.words_per_row + k);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.row_xor(r, rank);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the null space, one column vector per basis element.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        // Reduce a copy, remembering pivot columns.
        let mut m = self.clone();
        let mut pivot_col_of_row = Vec::new();
        let mut pivot_cols = vec![false; m.cols];
        let mut rank = 0;
        #[allow(clippy::needless_range_loop)]
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            for k in 0..m.words_per_row {
                m.data
                    .swap(pivot * m.words_per_row + k, rank * m.words_per_row + k);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.row_xor(r, rank);
                }
            }
            pivot_col_of_row.push(col);
            pivot_cols[col] = true;
            rank += 1;
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols[free] {
                continue;
            }
            let mut v = vec![false; m.cols];
            v[free] = true;
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                if m.get(row, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![false; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = false;
            for (j, &b) in v.iter().enumerate() {
                if b && self.get(i, j) {
                    acc = !acc;
                }
            }
            *o = acc;
        }
        out
    }

    /// Rank of the matrix whose columns are the given vectors.
    pub fn rank_of_columns(cols: &[Vec<bool>], dim: usize) -> usize {
        let mut m = Gf2Matrix::zero(dim, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), dim);
            for (i, &b) in v.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        m.rank()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Graded dimension counts of a homology computation, i.e. the coefficients
/// of the Poincare polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PoincarePolynomial(pub BTreeMap<i64, usize>);

impl PoincarePolynomial {
    pub fn dim(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&d| d == 0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        PoincarePolynomial(pairs.iter().copied().filter(|&(_, d)| d > 0).collect())
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&k, &d)| {
                if d == 1 {
                    format!("t^{k}")
                } else {
                    format!("{d}*t^{k}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Finite Z-graded chain complex of Z/2 vector spaces.
///
/// `boundary[k]` is the map from degree `k` to degree `k-1`; its shape is
/// `dim(k-1) x dim(k)`. Degrees outside the stored support are zero spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    dims: BTreeMap<i64, usize>,
    boundary: BTreeMap<i64, Gf2Matrix>,
}

impl GradedComplex {
    /// Validates shapes and that consecutive boundaries compose to zero.
    pub fn new(
        dims: BTreeMap<i64, usize>,
        boundary: BTreeMap<i64, Gf2Matrix>,
    ) -> Result<Self, HomologyError> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim_at = |k: i64| dims.get(&k).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (k, m) in boundary {
            if m.rows() != dim_at(k - 1) || m.cols() != dim_at(k) {
                return Err(HomologyError::Shape(format!(
                    "boundary at degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim_at(k - 1),
                    dim_at(k)
                )));
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        let complex = GradedComplex {
            dims,
            boundary: kept,
        };
        for &k in complex.boundary.keys() {
            let a = complex.boundary_at(k - 1);
            let b = complex.boundary_at(k);
            if !a.mul(&b).expect("validated shapes").is_zero() {
                return Err(HomologyError::NotAComplex(k));
            }
        }
        Ok(complex)
    }

    pub fn zero() -> Self {
        GradedComplex {
            dims: BTreeMap::new(),
            boundary: BTreeMap::new(),
        }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.dims.keys().next()?;
        let hi = *self.dims.keys().last()?;
        Some((lo, hi))
    }

    pub fn boundary_at(&self, k: i64) -> Gf2Matrix {
        self.boundary
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Gf2Matrix::zero(self.dim(k - 1), self.dim(k)))
    }

    /// Graded homology dimensions: `dim H_k = dim ker d_k - rank d_{k+1}`.
    pub fn homology(&self) -> PoincarePolynomial {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else {
            return PoincarePolynomial::default();
        };
        for k in lo..=hi {
            let dk = self.boundary_at(k);
            let dk1 = self.boundary_at(k + 1);
            let kernel = self.dim(k) - dk.rank();
            let image = dk1.rank();
            debug_assert!(kernel >= image);
            let h = kernel - image;
            if h > 0 {
                out.insert(k, h);
            }
        }
        PoincarePolynomial(out)
    }

    /// The transpose complex: degree `k` here becomes degree `-k`, so the
    /// co-differential (degree +1) is stored as an honest boundary again.
    pub fn transpose(&self) -> GradedComplex {
        let dims: BTreeMap<i64, usize> = self.dims.iter().map(|(&k, &d)| (-k, d)).collect();
        let mut boundary = BTreeMap::new();
        for (&k, m) in &self.boundary {
            // d_k : C_k -> C_{k-1}; transpose: C_{k-1} -> C_k, i.e. from
            // transpose-degree -(k-1) down to -k.
            boundary.insert(-(k - 1), m.transpose());
        }
        GradedComplex::new(dims, boundary).expect("transpose of a complex is a complex")
    }
}

/// Degree-0 chain map between graded complexes.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: GradedComplex,
    pub target: GradedComplex,
    pub blocks: BTreeMap<i64, Gf2Matrix>,
}

impl ChainMap {
    pub fn block(&self, k: i64) -> Gf2Matrix {
        self.blocks
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Gf2Matrix::zero(self.target.dim(k), self.source.dim(k)))
    }

    /// Checks `f . d = d . f` in every degree.
    pub fn validate(&self) -> Result<(), HomologyError> {
        let degs: Vec<i64> = self
            .source
            .dims()
            .keys()
            .chain(self.target.dims().keys())
            .copied()
            .collect();
        for &k in &degs {
            let lhs = self.block(k - 1).mul(&self.source.boundary_at(k))?;
            let rhs = self.target.boundary_at(k).mul(&self.block(k))?;
            if lhs != rhs {
                return Err(HomologyError::NotChainMap(k));
            }
        }
        Ok(())
    }

    /// Rank of the induced map on degree-k homology.
    pub fn induced_rank(&self, k: i64) -> usize {
        let cycles = self.source.boundary_at(k).kernel_basis();
        let image_basis: Vec<Vec<bool>> = {
            let d = self.target.boundary_at(k + 1);
            let mut cols = Vec::new();
            for j in 0..d.cols() {
                let mut v = vec![false; d.rows()];
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi = d.get(i, j);
                }
                cols.push(v);
            }
            cols
        };
        let f = self.block(k);
        let mapped: Vec<Vec<bool>> = cycles.iter().map(|v| f.apply(v)).collect();
        let dim = self.target.dim(k);
        let base = Gf2Matrix::rank_of_columns(&image_basis, dim);
        let mut all = image_basis;
        all.extend(mapped);
        Gf2Matrix::rank_of_columns(&all, dim) - base
    }

    /// True when the induced map on homology is an isomorphism in every degree.
    pub fn is_quasi_iso(&self) -> bool {
        let hs = self.source.homology();
        let ht = self.target.homology();
        let mut degs: Vec<i64> = hs.0.keys().chain(ht.0.keys()).copied().collect();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter().all(|k| {
            let r = self.induced_rank(k);
            r == hs.dim(k) && r == ht.dim(k)
        })
    }
}

/// Mapping cone of a degree-0 chain map `f : A -> B`.
///
/// `Cone(f)_k = A_{k-1} (+) B_k` with block boundary `[[d_A, 0], [f, d_B]]`.
pub fn mapping_cone(f: &ChainMap) -> Result<GradedComplex, HomologyError> {
    f.validate()?;
    let a = &f.source;
    let b = &f.target;
    let mut dims = BTreeMap::new();
    let mut degs: Vec<i64> = Vec::new();
    for (&k, &d) in a.dims() {
        *dims.entry(k + 1).or_insert(0) += d;
        degs.push(k + 1);
    }
    for (&k, &d) in b.dims() {
        *dims.entry(k).or_insert(0) += d;
        degs.push(k);
    }
    degs.sort_unstable();
    degs.dedup();
    let dim_at = |k: i64| -> (usize, usize) { (a.dim(k - 1), b.dim(k)) };
    let mut boundary = BTreeMap::new();
    for &k in &degs {
        let (sa, sb) = dim_at(k);
        let (ta, tb) = dim_at(k - 1);
        let da = a.boundary_at(k - 1);
        let db = b.boundary_at(k);
        let fb = f.block(k - 1);
        let mut m = Gf2Matrix::zero(ta + tb, sa + sb);
        for i in 0..ta {
            for j in 0..sa {
                if da.get(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        for i in 0..tb {
            for j in 0..sa {
                if fb.get(i, j) {
                    m.set(ta + i, j, true);
                }
            }
            for j in 0..sb {
                if db.get(i, j) {
                    m.set(ta + i, sa + j, true);
                }
            }
        }
        boundary.insert(k, m);
    }
    GradedComplex::new(dims, boundary)
}

/// Exactness feasibility for a finite sequence of dimensions, read as
/// `0 -> V_1 -> V_2 -> ... -> V_n -> 0`.
///
/// The ranks of the maps in an exact sequence are forced: `r_i = dims_i -
/// r_{i-1}` with `r_0 = 0`. The sequence is feasible exactly when every
/// forced rank is nonnegative and the last one is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesFeasibility {
    pub feasible: bool,
    pub ranks: Vec<i64>,
}

pub fn les_feasible(dims: &[usize]) -> LesFeasibility {
    let mut ranks = Vec::with_capacity(dims.len());
    let mut prev: i64 = 0;
    let mut ok = true;
    for &d in dims {
        let r = d as i64 - prev;
        if r < 0 {
            ok = false;
        }
        ranks.push(r);
        prev = r;
    }
    let feasible = ok && prev == 0;
    // The returned ranks are the connecting ranks between consecutive spaces.
    let ranks = if ranks.is_empty() {
        ranks
    } else {
        ranks[..ranks.len() - 1].to_vec()
    };
    LesFeasibility {
        feasible,
        ranks: if feasible { ranks } else { Vec::new() },
    }
}
