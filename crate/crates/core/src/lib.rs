//! Deciding affine-linearity of functions `R^n -> R` from their restrictions
//! to lines, in exact arithmetic over `Z/m`, finite fields and the rationals.
//!
//! The entry point is [`recovery::recover`], which checks coordinate lines and
//! a set of radial lines and returns a [`recovery::Certificate`]. The
//! [`sharpness`] module gives the matching lower bound on the number of
//! directions, [`bh_sets`] builds direction sets that meet it, and
//! [`vonstaudt`] recovers semilinear maps `F^d -> F^e` from how they move
//! lines.
//!
//! ```
//! use affine_lines::multiaffine::{FunctionOracle, MultiAffinePoly};
//! use affine_lines::recovery::{moment_directions, recover, RecoverOptions};
//! use affine_lines::ring::Ring;
//!
//! let f5 = Ring::prime_field(5)?;
//! let s: Vec<_> = [1, 2, 4].iter().map(|&x| f5.from_int(x)).collect();
//! let dirs = moment_directions(&f5, &s, 3)?;
//! let p = MultiAffinePoly::from_terms(&f5, 3, [(0b001, f5.one()), (0b110, f5.from_int(2))])?;
//! assert!(!recover(&FunctionOracle::Poly(p), &dirs, RecoverOptions::default())?.is_affine());
//! # Ok::<(), affine_lines::Error>(())
//! ```

pub mod bh_sets;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod multiaffine;
pub mod recovery;
pub mod ring;
pub mod sharpness;
pub mod vonstaudt;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/multiaffine.md")]
    mod multiaffine {}
    #[doc = include_str!("../../../book/src/recovery.md")]
    mod recovery {}
    #[doc = include_str!("../../../book/src/directions.md")]
    mod directions {}
    #[doc = include_str!("../../../book/src/bh_sets.md")]
    mod bh_sets {}
    #[doc = include_str!("../../../book/src/vonstaudt.md")]
    mod vonstaudt {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
