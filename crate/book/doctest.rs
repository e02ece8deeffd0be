// mdbook cannot run snippets that depend on a local crate, so each chapter is
// pulled in here as a module doc and `cargo test --doc` runs the code blocks.
// One module per chapter keeps failures traceable to their file.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/algebra.md")]
pub mod algebra {}
#[doc = include_str!("src/simplices.md")]
pub mod simplices {}
#[doc = include_str!("src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("src/slicing.md")]
pub mod slicing {}
#[doc = include_str!("src/inertia.md")]
pub mod inertia {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
