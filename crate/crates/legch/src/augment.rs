//! Augmentations of a Z/2 DGA and the linearized (co)complexes they induce.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::dga::{AlgebraElement, Dga, DgaError, DSquaredReport, GenId};
use crate::homology::{Gf2Matrix, GradedComplex, HomologyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugmentError {
    #[error("too many grading-0 generators ({count} > cap {cap}) for exhaustive enumeration")]
    TooBig { count: usize, cap: usize },
    #[error("assignment is not an augmentation: constant part survives at `{0}`")]
    NotAugmentation(String),
    #[error("the DGA does not satisfy d^2 = 0 (fails at `{0}`)")]
    DSquared(String),
    #[error("linearization requires a Z-graded DGA (modulus is {0})")]
    NotZGraded(i64),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Default cap on the number of grading-0 generators enumerated over.
pub const DEFAULT_AUG_CAP: usize = 24;

/// A Z/2 augmentation: unital algebra map to Z/2 supported on grading-0
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Augmentation {
    /// Generators sent to 1, as ids of the owning DGA.
    support: Vec<GenId>,
}

impl Augmentation {
    pub fn zero() -> Self {
        Augmentation {
            support: Vec::new(),
        }
    }

    pub fn from_support(mut support: Vec<GenId>) -> Self {
        support.sort_unstable();
        support.dedup();
        Augmentation { support }
    }

    pub fn value(&self, g: GenId) -> bool {
        self.support.binary_search(&g).is_ok()
    }

    pub fn support(&self) -> &[GenId] {
        &self.support
    }

    /// Multiplicative extension to an algebra element.
    pub fn eval(&self, x: &AlgebraElement) -> bool {
        let mut acc = false;
        for w in x.words() {
            if w.iter().all(|&g| self.value(g)) {
                acc = !acc;
            }
        }
        acc
    }

    /// Bit-vector over the name-sorted grading-0 generators.
    pub fn bits(&self, dga: &Dga) -> String {
        degree_zero_ids(dga)
            .iter()
            .map(|&g| if self.value(g) { '1' } else { '0' })
            .collect()
    }
}

/// Grading-0 generator ids, sorted by name.
pub fn degree_zero_ids(dga: &Dga) -> Vec<GenId> {
    dga.ids_by_name()
        .into_iter()
        .filter(|&g| dga.generator(g).grading == 0)
        .collect()
}

/// Exhaustively enumerates the augmentations of `dga`, in binary counting
/// order over the name-sorted grading-0 generators (first generator is the
/// least significant bit).
pub fn enumerate_augmentations(dga: &Dga, cap: usize) -> Result<Vec<Augmentation>, AugmentError> {
    if let DSquaredReport::Fails { generator, .. } = dga.verify_d_squared() {
        return Err(AugmentError::DSquared(generator));
    }
    let zero_ids = degree_zero_ids(dga);
    if zero_ids.len() > cap {
        return Err(AugmentError::TooBig {
            count: zero_ids.len(),
            cap,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << zero_ids.len()) {
        let support: Vec<GenId> = zero_ids
            .iter()
            .enumerate()
            .filter(|&(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &g)| g)
            .collect();
        let aug = Augmentation::from_support(support);
        let ok = (0..dga.generators().len()).all(|g| !aug.eval(dga.diff_of(g)));
        if ok {
            out.push(aug);
        }
    }
    Ok(out)
}

/// Conjugates the differential by the automorphism sending each generator
/// `a` to `a + eps(a)`. The constant part of the result must vanish.
pub fn conjugate(dga: &Dga, eps: &Augmentation) -> Result<Dga, AugmentError> {
    let mut out = dga.clone();
    for g in 0..dga.generators().len() {
        // Psi is an involution, and constants are closed, so the conjugated
        // differential on a generator is Psi(d(g + eps(g))) = Psi(d g).
        let mut acc = AlgebraElement::zero();
        for w in dga.diff_of(g).words() {
            // Substitute a -> a + eps(a) letter by letter.
            let mut terms = vec![Vec::new()];
            for &letter in w {
                let mut next = Vec::with_capacity(terms.len() * 2);
                for t in &terms {
                    let mut with = t.clone();
                    with.push(letter);
                    next.push(with);
                    if eps.value(letter) {
                        next.push(t.clone());
                    }
                }
                terms = next;
            }
            for t in terms {
                acc.toggle(t);
            }
        }
        if acc.constant_part() {
            return Err(AugmentError::NotAugmentation(
                dga.generator(g).name.clone(),
            ));
        }
        out.set_diff(g, acc);
    }
    Ok(out)
}

/// The linearized complex and co-complex induced by an augmentation.
#[derive(Debug, Clone)]
pub struct LinearizedComplex {
    /// Generator names per degree, the basis of each graded piece.
    pub basis: BTreeMap<i64, Vec<String>>,
    /// Chain complex with the degree -1 differential (word-length-1 part of
    /// the conjugated differential).
    pub complex: GradedComplex,
    /// The transpose co-complex, stored with negated degrees so that its
    /// degree +1 co-differential is again a boundary. Dimension of the
    /// co-complex in degree k is `cocomplex.dim(-k)`.
    pub cocomplex: GradedComplex,
}

impl LinearizedComplex {
    /// Homology dimensions of the chain complex, per degree.
    pub fn homology(&self) -> crate::homology::PoincarePolynomial {
        self.complex.homology()
    }

    /// Cohomology dimensions per degree (of the co-complex, reported in the
    /// original grading).
    pub fn cohomology(&self) -> crate::homology::PoincarePolynomial {
        let h = self.cocomplex.homology();
        crate::homology::PoincarePolynomial(h.0.into_iter().map(|(k, d)| (-k, d)).collect())
    }
}

/// Extracts the linearized complex of `dga` at the augmentation `eps`.
pub fn linearize(dga: &Dga, eps: &Augmentation) -> Result<LinearizedComplex, AugmentError> {
    if dga.modulus != 0 {
        return Err(AugmentError::NotZGraded(dga.modulus));
    }
    let conj = conjugate(dga, eps)?;
    // Basis per degree: generators in name order.
    let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut index: BTreeMap<GenId, (i64, usize)> = BTreeMap::new();
    for g in conj.ids_by_name() {
        let gen = conj.generator(g);
        let entry = basis.entry(gen.grading).or_default();
        index.insert(g, (gen.grading, entry.len()));
        entry.push(gen.name.clone());
    }
    let dims: BTreeMap<i64, usize> = basis.iter().map(|(&k, v)| (k, v.len())).collect();
    let dim = |k: i64| dims.get(&k).copied().unwrap_or(0);
    let mut boundary: BTreeMap<i64, Gf2Matrix> = BTreeMap::new();
    for &k in dims.keys() {
        boundary.insert(k, Gf2Matrix::zero(dim(k - 1), dim(k)));
    }
    for g in conj.ids_by_name() {
        let (k, col) = index[&g];
        for target in conj.diff_of(g).linear_part() {
            let (tk, row) = index[&target];
            debug_assert_eq!(tk, k - 1, "linearized differential must have degree -1");
            boundary
                .get_mut(&k)
                .expect("degree present")
                .set(row, col, true);
        }
    }
    let complex = GradedComplex::new(dims, boundary)?;
    let cocomplex = complex.transpose();
    Ok(LinearizedComplex {
        basis,
        complex,
        cocomplex,
    })
}

impl fmt::Display for Augmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps{:?}", self.support)
    }
}
