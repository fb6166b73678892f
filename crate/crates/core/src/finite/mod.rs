pub mod catalog;
pub mod enumerate;
pub mod group;
pub mod perm;
pub mod rpo;

pub use enumerate::{
    automorphisms, enumerate_cones, find_group_isomorphism, find_isomorphism, homomorphisms,
    monotone_automorphisms, normal_subgroups, subgroups,
};
pub use group::FiniteGroup;
pub use rpo::{Cone, FiniteRpoGroup, RpoMorphism};
