//! Exact `F_p[G]`-module machinery for `G` cyclic of order `p` and checkers
//! for the Hilbert 90 criteria on extension models, with synthetic
//! generators and arithmetic backends (finite fields, the reals, local
//! fields).

pub mod backends;
pub mod checks;
pub mod cyclic;
pub mod error;
pub mod format;
pub mod gfp;
pub mod model;
pub mod report;
pub mod synth;

pub use cyclic::{CyclicModule, Decomposition, JordanProfile, H1};
pub use error::{Error, Result};
pub use gfp::{Fp, Matrix, Subspace};
pub use model::{validate_model, Axiom, ExtensionModel, Flags};
pub use report::{Clause, TheoremReport, Verdict, Witness};
