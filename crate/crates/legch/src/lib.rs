//! A workbench for Legendrian contact homology of Legendrian links in the
//! standard contact 3-space, computed from front diagrams.
//!
//! The pipeline is:
//!
//! 1. [`front`] parses a plat-style front diagram, validates it, and computes
//!    the classical invariants (Thurston-Bennequin number, rotation number)
//!    together with Maslov potentials on the strands.
//! 2. [`diagram`] resolves the front into a Lagrangian projection diagram:
//!    graded crossings (the Reeb chords), oriented edges, and the planar face
//!    structure.
//! 3. [`discs`] enumerates rigid convex-corner immersed polygons with one
//!    positive corner and assembles the Chekanov-Eliashberg differential
//!    over Z/2.
//! 4. [`dga`] is the free unital noncommutative graded Z/2 algebra with its
//!    Leibniz-extended degree -1 differential.
//! 5. [`augment`] enumerates augmentations and produces linearized chain
//!    complexes and co-complexes.
//! 6. [`homology`] is exact linear algebra over Z/2: ranks, graded homology,
//!    mapping cones, and an exactness-feasibility solver.
//! 7. [`verify`] checks the structural statements relating the above to
//!    filling data: Seidel's isomorphism, the duality exact sequence,
//!    two-copy block complexes and wrapped-Floer acyclicity.
//!
//! The `legch` binary ties the pipeline together; see [`cli`].

pub mod augment;
pub mod cli;
pub mod dga;
pub mod diagram;
pub mod discs;
pub mod fixtures;
pub mod front;
pub mod homology;
pub mod verify;

pub use augment::{Augmentation, LinearizedComplex};
pub use dga::{AlgebraElement, Dga, Generator, Word};
pub use diagram::{Crossing, CrossingKind, LagrangianDiagram};
pub use discs::{differential, enumerate_discs, DiscRecord};
pub use front::{ClassicalInvariants, Event, FrontDiagram};
pub use homology::{Gf2Matrix, GradedComplex, PoincarePolynomial};
