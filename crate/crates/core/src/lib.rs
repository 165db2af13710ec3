//! Exact spectral analysis of generalized Boolean functions
//! `f: F_2^n → Z_{2^k}`.
//!
//! Spectra live in `Z[ζ_{2^k}]`, stored as integer coefficient vectors in
//! the power basis, so every classification decision is an exact equality
//! test.
//!
//! ```
//! use gbent::{classify, GbfTable};
//!
//! let f: GbfTable = "2:2:0,0,0,2".parse().unwrap();
//! assert!(classify::is_gbent(&f));
//! let dual = classify::regular_dual(&f).unwrap();
//! assert_eq!(dual.dual().unwrap().values(), &[0, 0, 0, 2]);
//! ```

pub mod classify;
pub mod cyclotomic;
pub mod error;
pub mod search;
pub mod suites;
pub mod table;
pub mod theorems;
pub mod transform;

pub use classify::{BoolClass, DualResult, PlateauResult};
pub use cyclotomic::{CycInt, Level};
pub use error::{Error, Result};
pub use table::{BoolTable, GbfTable};
pub use theorems::TheoremVerdict;
pub use transform::{GwhtSpectrum, IntSpectrum};
