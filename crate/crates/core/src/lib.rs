pub mod cli;
pub mod correspondence;
pub mod error;
pub mod graph;
pub mod perm;
pub mod split;
pub mod universal_graph;
pub mod universal_perm;
