//! Exact algebra for immanant varieties: permutation groups acting on
//! multi-indices, characters, symmetrized tensors, immanants, the posets of
//! orbit representatives, and their strata and order complexes.

pub mod bounds;
pub mod bposet;
pub mod character;
pub mod chimatroid;
pub mod complexes;
pub mod error;
pub mod exactalg;
pub mod immanant;
pub mod permgrp;
pub mod strata;
pub mod suites;
pub mod symtensor;

pub use bounds::Bounds;
pub use bposet::BPoset;
pub use character::Character;
pub use chimatroid::SubsetB;
pub use complexes::{Shelling, SimplicialComplex};
pub use error::{Error, Result};
pub use exactalg::{CycloNum, IntPoly, MVPoly, Monomial, Rat};
pub use immanant::MatrixR;
pub use permgrp::{MultiIndex, Perm, PermGroup};
pub use strata::Stratum;
pub use symtensor::SymTensor;
