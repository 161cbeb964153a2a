//! Local crossing number toolkit.
//!
//! Exact k-planarity testing by planarization search, subdivision and spoke
//! transforms, kernelization for vertex cover and neighborhood diversity,
//! hardness gadget generators with forward witnesses, and a small exact
//! bin-packing solver.

pub mod graph;
pub mod kernel;
pub mod planarity;
pub mod transforms;
pub mod plan;
pub mod witness;
pub mod oracle;
pub mod gadgets;
pub mod ubp;
