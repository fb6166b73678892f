//! Exact-arithmetic rpo groups on infinite carriers, checked by sampling and
//! by evaluating fixed witnesses.

pub mod element;
pub mod examples;
pub mod graph;
pub mod group;
pub mod rpo;

pub use element::SymbolicElement;
pub use examples::{build_example, ExampleId, SymbolicObject};
pub use graph::{SymbolicGraph, SymbolicPoint};
pub use group::SymbolicGroup;
pub use rpo::{eval_witness, sampled_validate, Expr, SampleConfig, SymbolicCone, SymbolicMorphism, SymbolicRpoGroup, WitnessValue};
