//! Finite marked simplicial and bisimplicial sets, classification diagrams
//! of marked simplicial sets, and checks of lifting properties.

pub mod anodyne;
pub mod bisimplicial;
pub mod catkit;
pub mod classification;
pub mod error;
pub mod hom;
pub mod invariants;
pub mod marked;
pub mod ops;
pub mod presentation;
pub mod search;
pub mod sset;
pub mod table;

pub use error::{Error, Result};
pub use ops::{Injection, Monotone, Surjection, MAX_DIM};
pub use presentation::{Generator, Presentation, Simplex};
pub use sset::{SimplicialMap, SimplicialSet};
pub use table::Table;
