//! Graphs labelled by groups, complements, the criterion for a free
//! subgroup in the kernel of a graph product onto the direct sum, and
//! stabilization of increasing graph sequences.

mod criterion;
mod free_product;
mod graph;
mod stabilization;

pub use criterion::{kernel_free_subgroup_criterion, FreeWitness, KernelVerdict, WitnessCase};
pub use free_product::{ball_sizes, FreeProductElement, Syllable};
pub use graph::{VertexGraph, VertexLabel};
pub use stabilization::{detect_stabilization, GraphSequence, Stabilization};
