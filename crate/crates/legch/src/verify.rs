//! Structural checks combining computed linearized data with user-supplied
//! filling data: Seidel's isomorphism, the duality exact sequence, two-copy
//! block complexes, and wrapped-Floer acyclicity.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::homology::{
    les_feasible, ChainMap, Gf2Matrix, GradedComplex, HomologyError, LesFeasibility,
    PoincarePolynomial,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("block shape mismatch: {0}")]
    Shape(String),
    #[error("assembled differential does not square to zero (degree {0})")]
    DSquared(i64),
    #[error("delta is not a chain map (degree {0})")]
    NotChainMap(i64),
    #[error("filling data invalid: {0}")]
    BadFilling(String),
}

impl From<HomologyError> for VerifyError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Shape(s) => VerifyError::Shape(s),
            HomologyError::NotAComplex(k) => VerifyError::DSquared(k),
            HomologyError::NotChainMap(k) => VerifyError::NotChainMap(k),
        }
    }
}

/// Topological input for the filling-level checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingData {
    /// Dimension of the Legendrian.
    pub n: i64,
    /// Z/2 Betti numbers of the filling surface L.
    pub betti_l: BTreeMap<i64, usize>,
    /// Z/2 Betti numbers of the Legendrian itself.
    pub betti_lambda: BTreeMap<i64, usize>,
    /// Which augmentation (by enumeration index) is claimed filling-induced.
    pub aug_index: usize,
}

impl FillingData {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.betti_lambda.get(&0).copied().unwrap_or(0) == 0 && !self.betti_lambda.is_empty() {
            return Err(VerifyError::BadFilling(
                "a closed manifold has dim H_0 >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-degree mismatch between computed cohomology and the filling homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeidelDelta {
    pub degree: i64,
    pub hcl_co: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeidelReport {
    pub pass: bool,
    pub deltas: Vec<SeidelDelta>,
}

/// Checks `dim HCL^k = dim H_{n-k}(L)` for every degree.
pub fn seidel_check(hcl_co: &PoincarePolynomial, fd: &FillingData) -> SeidelReport {
    let mut degrees: Vec<i64> = hcl_co.0.keys().copied().collect();
    for &k in fd.betti_l.keys() {
        degrees.push(fd.n - k);
    }
    degrees.sort_unstable();
    degrees.dedup();
    let mut deltas = Vec::new();
    for k in degrees {
        let got = hcl_co.dim(k);
        let want = fd.betti_l.get(&(fd.n - k)).copied().unwrap_or(0);
        if got != want {
            deltas.push(SeidelDelta {
                degree: k,
                hcl_co: got,
                expected: want,
            });
        }
    }
    SeidelReport {
        pass: deltas.is_empty(),
        deltas,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub feasible: bool,
    /// The assembled dimension sequence, highest degree first.
    pub dims: Vec<usize>,
    pub ranks: Vec<i64>,
}

/// Assembles the duality long exact sequence
/// `... -> H_{k+1}(L) -> HCL^{n-k-1} -> HCL_k -> H_k(L) -> ...` (with the
/// Legendrian's homology in the outer terms) into one finite dimension
/// sequence and runs the forced-rank exactness solver on it.
pub fn duality_check(
    hcl: &PoincarePolynomial,
    hcl_co: &PoincarePolynomial,
    fd: &FillingData,
) -> DualityReport {
    let mut ks: Vec<i64> = Vec::new();
    for &j in fd.betti_lambda.keys() {
        ks.push(j); // appears as H_k at position k = j
        ks.push(j - 1); // and as H_{k+1}
    }
    for &j in hcl.0.keys() {
        ks.push(j);
    }
    for &j in hcl_co.0.keys() {
        ks.push(fd.n - 1 - j);
    }
    let (lo, hi) = match (ks.iter().min(), ks.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo - 1, hi + 1),
        _ => (0, 0),
    };
    let b = |k: i64| fd.betti_lambda.get(&k).copied().unwrap_or(0);
    let mut dims = Vec::new();
    dims.push(b(hi + 1));
    let mut k = hi;
    while k >= lo {
        dims.push(hcl_co.dim(fd.n - k - 1));
        dims.push(hcl.dim(k));
        dims.push(b(k));
        k -= 1;
    }
    let LesFeasibility { feasible, ranks } = les_feasible(&dims);
    DualityReport {
        feasible,
        dims,
        ranks,
    }
}

/// Which two-copy complex to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    Plus,
    Infinity,
}

/// Block data for the two-copy complexes, graded by the co-degree `j`.
///
/// The infinity complex is `dual(j) (+) morse(j) (+) co(j)` where `dual(j)`
/// holds the degree `n-2-j` part of the linearized complex, `morse(j)` the
/// degree `j+1` Morse co-complex of the small function on the Legendrian, and
/// `co(j)` the degree `j` linearized co-complex. All maps raise `j` by one:
/// the diagonals `d_p`, `d_f`, `d_q`, and the lower-triangular geometric
/// blocks `rho`, `sigma`, `eta` (plus `gamma`/`g_map` kept for wrapped
/// fixtures).
#[derive(Debug, Clone, Default)]
pub struct TwoCopyBlocks {
    pub n: i64,
    pub dual_dims: BTreeMap<i64, usize>,
    pub morse_dims: BTreeMap<i64, usize>,
    pub co_dims: BTreeMap<i64, usize>,
    pub d_p: BTreeMap<i64, Gf2Matrix>,
    pub d_f: BTreeMap<i64, Gf2Matrix>,
    pub d_q: BTreeMap<i64, Gf2Matrix>,
    pub rho: BTreeMap<i64, Gf2Matrix>,
    pub sigma: BTreeMap<i64, Gf2Matrix>,
    pub eta: BTreeMap<i64, Gf2Matrix>,
    pub gamma: BTreeMap<i64, Gf2Matrix>,
    pub g_map: BTreeMap<i64, Gf2Matrix>,
}

fn dim_of(map: &BTreeMap<i64, usize>, j: i64) -> usize {
    map.get(&j).copied().unwrap_or(0)
}

fn block_or_zero(
    blocks: &BTreeMap<i64, Gf2Matrix>,
    j: i64,
    rows: usize,
    cols: usize,
    name: &str,
) -> Result<Gf2Matrix, VerifyError> {
    match blocks.get(&j) {
        None => Ok(Gf2Matrix::zero(rows, cols)),
        Some(m) => {
            if m.rows() != rows || m.cols() != cols {
                Err(VerifyError::Shape(format!(
                    "{name} at degree {j} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )))
            } else {
                Ok(m.clone())
            }
        }
    }
}

/// A cochain complex assembled in the co-degree `j`; stored homologically
/// (degree `-j`) together with the summand layout.
#[derive(Debug, Clone)]
pub struct AssembledComplex {
    pub complex: GradedComplex,
    pub which: Which,
}

impl AssembledComplex {
    /// Homology reported in the co-degree grading.
    pub fn homology(&self) -> PoincarePolynomial {
        let h = self.complex.homology();
        PoincarePolynomial(h.0.into_iter().map(|(k, d)| (-k, d)).collect())
    }
}

/// Assembles the chosen two-copy complex and verifies it squares to zero.
pub fn twocopy_assemble(
    b: &TwoCopyBlocks,
    which: Which,
) -> Result<AssembledComplex, VerifyError> {
    // Total dimension per j, with summands ordered dual, morse, co.
    let mut js: Vec<i64> = b
        .dual_dims
        .keys()
        .chain(b.morse_dims.keys())
        .chain(b.co_dims.keys())
        .copied()
        .collect();
    js.sort_unstable();
    js.dedup();
    let use_dual = which == Which::Infinity;
    let total = |j: i64| -> usize {
        let d = if use_dual { dim_of(&b.dual_dims, j) } else { 0 };
        d + dim_of(&b.morse_dims, j) + dim_of(&b.co_dims, j)
    };
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for &j in &js {
        if total(j) > 0 {
            dims.insert(-j, total(j));
        }
    }
    let mut boundary: BTreeMap<i64, Gf2Matrix> = BTreeMap::new();
    for &j in &js {
        // Differential from co-degree j to j+1; homologically from -j to
        // -(j+1), i.e. the boundary at homological degree -j.
        let (sd, sm, sc) = (
            if use_dual { dim_of(&b.dual_dims, j) } else { 0 },
            dim_of(&b.morse_dims, j),
            dim_of(&b.co_dims, j),
        );
        let (td, tm, tc) = (
            if use_dual {
                dim_of(&b.dual_dims, j + 1)
            } else {
                0
            },
            dim_of(&b.morse_dims, j + 1),
            dim_of(&b.co_dims, j + 1),
        );
        let (rows, cols) = (td + tm + tc, sd + sm + sc);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = Gf2Matrix::zero(rows, cols);
        let mut paste = |block: &Gf2Matrix, row0: usize, col0: usize| {
            for i in 0..block.rows() {
                for jj in 0..block.cols() {
                    if block.get(i, jj) {
                        m.set(row0 + i, col0 + jj, true);
                    }
                }
            }
        };
        match which {
            Which::Infinity => {
                let dp = block_or_zero(&b.d_p, j, td, sd, "d_p")?;
                let rho = block_or_zero(&b.rho, j, tm, sd, "rho")?;
                let eta = block_or_zero(&b.eta, j, tc, sd, "eta")?;
                let df = block_or_zero(&b.d_f, j, tm, sm, "d_f")?;
                let sigma = block_or_zero(&b.sigma, j, tc, sm, "sigma")?;
                let dq = block_or_zero(&b.d_q, j, tc, sc, "d_q")?;
                paste(&dp, 0, 0);
                paste(&rho, td, 0);
                paste(&eta, td + tm, 0);
                paste(&df, td, sd);
                paste(&sigma, td + tm, sd);
                paste(&dq, td + tm, sm + sd);
            }
            Which::Plus => {
                let df = block_or_zero(&b.d_f, j, tm, sm, "d_f")?;
                let rho = block_or_zero(&b.rho, j, tc, sm, "rho")?;
                let dq = block_or_zero(&b.d_q, j, tc, sc, "d_q")?;
                paste(&df, 0, 0);
                paste(&rho, tm, 0);
                paste(&dq, tm, sm);
            }
        }
        boundary.insert(-j, m);
    }
    let complex = GradedComplex::new(dims, boundary)?;
    Ok(AssembledComplex { complex, which })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WrappedReport {
    pub acyclic: bool,
    pub quasi_iso: bool,
}

/// Builds the cone of `delta : cf0 -> cf_inf` (a degree -1 map of the stored
/// homological complexes) and reports acyclicity together with whether the
/// map induces isomorphisms on homology.
pub fn wrapped_cone_check(
    cf0: &GradedComplex,
    cf_inf: &GradedComplex,
    delta: &BTreeMap<i64, Gf2Matrix>,
) -> Result<WrappedReport, VerifyError> {
    // Shift cf_inf up by one so delta becomes a degree-0 chain map.
    let shifted_dims: BTreeMap<i64, usize> =
        cf_inf.dims().iter().map(|(&k, &d)| (k + 1, d)).collect();
    let mut shifted_bnd = BTreeMap::new();
    let Some((lo, hi)) = cf_inf.degree_range() else {
        let h = cf0.homology();
        return Ok(WrappedReport {
            acyclic: h.is_zero(),
            quasi_iso: h.is_zero(),
        });
    };
    for k in lo..=hi + 1 {
        let m = cf_inf.boundary_at(k);
        if !m.is_zero() {
            shifted_bnd.insert(k + 1, m);
        }
    }
    let shifted = GradedComplex::new(shifted_dims, shifted_bnd)?;
    let mut blocks = BTreeMap::new();
    for (&k, m) in delta {
        // delta : cf0_k -> cf_inf_{k-1} = shifted_k.
        if m.rows() != shifted.dim(k) || m.cols() != cf0.dim(k) {
            return Err(VerifyError::Shape(format!(
                "delta at degree {k} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                shifted.dim(k),
                cf0.dim(k)
            )));
        }
        blocks.insert(k, m.clone());
    }
    let f = ChainMap {
        source: cf0.clone(),
        target: shifted,
        blocks,
    };
    let cone = crate::homology::mapping_cone(&f)?;
    let acyclic = cone.homology().is_zero();
    let quasi_iso = f.is_quasi_iso();
    Ok(WrappedReport { acyclic, quasi_iso })
}

/// Passes exactly when the mixed-chord cohomology vanishes identically.
pub fn vanishing_link_check(hcl_mixed: &PoincarePolynomial) -> bool {
    hcl_mixed.is_zero()
}
