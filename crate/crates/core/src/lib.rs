//! Exact Chvátal-Gomory cuts and closures of convex sets.
//!
//! All arithmetic is exact: rationals are arbitrary precision and support
//! values of the curved and irrational body classes live in a real quadratic
//! field `ℚ(√d)`. Polyhedra are converted between inequality and generator
//! form by double description.

pub mod arith;
pub mod bodies;
pub mod certify;
pub mod cgengine;
pub mod conegeom;
pub mod config;
pub mod diophantine;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod sample;

pub use arith::{ExtValue, Field, IntVec, QuadValue, Rational};
pub use bodies::{BodySupport, ConvexBody, Recession};
pub use certify::{Certificate, FaceCut, FaceCutFamily, Verdict};
pub use cgengine::{CGCut, ClosureReport, Exactness, HullReport, LatticeBox, GroupedCutWitness, RankReport};
pub use conegeom::{CutFamily, LinealityDecomposition};
pub use diophantine::{Approximant, VpiSubspace, ZeroCombination, ZeroTerm};
pub use error::{Error, Result};
pub use hilbert::{ChainWitness, RationalCone};
pub use polytope::{Containment, HPolyhedron, Sup, VPolyhedron};
