//! Exact-arithmetic toolkit for quantum complete intersection algebras.
//!
//! Everything is computed over a prime field F_p with explicit u64 residues:
//! the algebra and its Frobenius/Nakayama structure (`qalgebra`), modules as
//! action-matrix tuples (`modrep`), syzygies and stable Ext (`homology`),
//! Krull-Schmidt decomposition (`decomp`), rank varieties and Jordan types
//! (`rankvariety`), and stable Auslander-Reiten component exploration
//! (`artranslate`). The `verify` module packages the whole battery of
//! structural checks into a machine-readable report.

pub mod artranslate;
pub mod decomp;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod modrep;
pub mod qalgebra;
pub mod rankvariety;
pub mod scalars;
pub mod seeds;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::Mat;
pub use scalars::{Field, Scalar};
