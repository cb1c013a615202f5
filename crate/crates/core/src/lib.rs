//! Induced representations of finite groups and Fourier-Stieltjes transforms
//! of vector-valued measures over them.

pub mod catalog;
pub mod error;
pub mod group;
pub mod induce;
pub mod io;
pub mod linalg;
pub mod repr;
pub mod spaces;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use group::{CosetStructure, FiniteGroup, HaarWeights, Subgroup};
pub use induce::{CTensor, EquivariantFunction, InducedRep};
pub use linalg::{CMat, CVec};
pub use num_complex::Complex64;
pub use repr::{IrrepFamily, UnitaryRep};
pub use spaces::{BlockNorm, Exponent, SNorm};
pub use transform::{
    CoefficientSpace, SpectralBlock, SpectralField, VectorFunction, VectorMeasure,
};
