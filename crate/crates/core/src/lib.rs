//! Finite group computations and saturated fusion systems over p-groups.

pub mod catalog;
pub mod element;
pub mod error;
pub mod fusion;
pub mod group;
pub mod lattice;
pub mod morphism;
pub mod structure;
pub mod table;
pub mod theorems;

pub use element::{Element, Matrix, Perm};
pub use error::{Error, Result};
pub use group::{Caps, Group, GroupKind, Subgroup, SubgroupKey};
pub use fusion::{FusionSystem, PGroup};
pub use morphism::GroupMorphism;
