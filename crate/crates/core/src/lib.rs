//! Temporal knowledge graph construction from heterogeneous sources, rule
//! based fusion with named-graph provenance, and biographical timeline
//! generation by distant supervision.

pub mod eval;
pub mod fuse;
pub mod ingest;
pub mod integrate;
pub mod interlink;
pub mod kg;
pub mod pipeline;
pub mod timeline;
