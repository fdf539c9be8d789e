//! Doctest harness for the book under `book/`.
//!
//! Each chapter's markdown is attached verbatim as the documentation of an
//! empty module, so `cargo test -p tqd-book` compiles and runs every Rust
//! code block in the book. A snippet that drifts out of sync with the
//! library fails here, and the module name points at the chapter to fix.
//!
//! This crate exports nothing and is never published.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}

#[doc = include_str!("../../../book/src/models.md")]
pub mod models {}

#[doc = include_str!("../../../book/src/discord.md")]
pub mod discord {}

#[doc = include_str!("../../../book/src/sweeps.md")]
pub mod sweeps {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
