//! Constructive covers and packings: the LP-guided `K_k` deletion process,
//! partition covers, greedy packings and designed decompositions.

mod cut;
mod packing;
mod process;

pub use cut::{bipartize, kpartition_cover, local_partition, CutResult};
pub use packing::{complete_graph_decomposition, greedy_packing, steiner_triple_system};
pub use process::{
    is_halting_state, kk_cover_process, kk_cover_process_on, zero_edge_trigger, Deletion, ProcessOptions,
    ProcessTrace,
};
