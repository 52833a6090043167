//! graph6 codec plus seed and snapshot files.

pub mod files;
pub mod graph6;

pub use files::{load_seed_store, read_graph6_file, save_store_snapshot, snapshot_file_name};
pub use graph6::{decode_graph6, encode_graph6};
