//! Exact computations for the flat model of 5-dimensional 2-nondegenerate CR
//! manifolds: the graded algebra so(3,2), its Tanaka prolongation, Kostant
//! normalization, tube-model CR invariants and the flat structure equations.

pub mod cochain;
pub mod exact;
pub mod filtration;
pub mod model;
pub mod prolong;
pub mod report;
pub mod so32;
pub mod structeq;
