//! Library half of the `ans` command-line tool: caching, egg-box rendering
//! and the verification pipeline.

pub mod cache;
pub mod eggbox;
pub mod verify;
