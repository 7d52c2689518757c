//! Cluster-tilted algebras of Dynkin type and the nilpotency index of their
//! radical.

#![allow(clippy::needless_range_loop)]

pub mod ar;
pub mod cluster;
pub mod dynkin;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod radical;
pub mod verify;

pub use ar::{build_derived_window, knit_ar_quiver, ArQuiver, ArVertex, ArWindow, BaseModule};
pub use cluster::{
    exchange_permutation, CTAlgebra, ClusterCategory, Enumeration, ModMorphism, ObjectRef, TiltingObject,
};
pub use dynkin::{mutation_class, DynkinType, Family, Quiver, DEFAULT_CLASS_BOUND};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Subspace, Vector};
pub use mesh::{CArrow, CMorphism, HomBlock, MeshCategory, MorphSpace, Morphism, OrbitCategory};
pub use radical::{
    CompositeCheck, DegreeReport, IrrArrow, OrbitGraph, RadicalTable, Route, TranslationQuiver, VertexBound,
};
pub use verify::{AlgebraSummary, CheckRecord, Mode, Selection, VerificationReport};
