//! Exact computations with finite-dimensional representations of bound quiver
//! algebras over prime fields: path bases, decompositions, string and band
//! modules, perfect complexes over gentle algebras, and the Mackey-algebra
//! families built on top of them.

pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod quiveralg;
pub mod relhom;
pub mod mackey;
pub mod repcat;
pub mod strings;
pub mod wildfam;

pub use error::{Error, Result};
pub use exactlin::{FpMatrix, Poly, PrimeField, RowSpace};
pub use quiveralg::{Arrow, BoundQuiver, BoundQuiverAlgebra, Path, Quiver, Relation};
pub use complexes::{HomotopyString, ProjComplex};
pub use mackey::MackeyPresentation;
pub use repcat::{Decomposition, RepMorphism, Representation};
pub use strings::{AlgebraType, BandParam, BandWord, StringWord};
pub use wildfam::{Family, GammaModule, SigmaModule, StrictFamilySpec};
