pub mod cli;
pub mod corpus;
pub mod error;
pub mod extension;
pub mod forbidden;
pub mod geom;
pub mod ids;
pub mod ingest;
pub mod kn;
pub mod obstruction;
pub mod planegraph;
pub mod stringset;
