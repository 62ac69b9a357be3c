//! Exact-arithmetic geometry of collinearity on cubic surfaces.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`): scalars
//! over Q and Q(i), canonical projective objects in P³, cubic surfaces with
//! their third-intersection structure, Geiser involutions and fixed-point
//! words, the Picard lattice of a cubic surface, plane cubic group laws,
//! quadric reflections, and finite orchard configurations with collinear
//! triple counting.
//!
//! File formats, sampling, parallel drivers and the command line live in the
//! `collinear` companion crate.
#![no_std]

extern crate alloc;

pub mod curve;
pub mod error;
pub mod field;
pub mod forms;
pub mod geiser;
pub mod orchard;
pub mod picard;
pub mod proj;
pub mod quadric;
pub mod surface;

pub use error::{Error, Result};
pub use field::{GaussRat, Rat, Scalar, UniPoly};
pub use proj::{LineP3, PlaneP3, ProjPoint, ProjPoint2};
pub use surface::{CubicForm, CubicSurface};
