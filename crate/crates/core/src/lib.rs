//! Right-preordered groups: finite and symbolic models, the quasivariety
//! presentation, normal subobjects, Schreier points and internal structures.

pub mod bitset;
pub mod corpus;
pub mod error;
pub mod finite;
pub mod gallery;
pub mod internal;
pub mod io;
pub mod quasivariety;
pub mod schreier;
pub mod subobjects;
pub mod symbolic;
pub mod verdict;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use finite::{Cone, FiniteGroup, FiniteRpoGroup, RpoMorphism};
pub use verdict::{Basis, Binding, Verdict, Witness};
