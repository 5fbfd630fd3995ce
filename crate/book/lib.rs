// mdbook cannot test snippets that depend on a workspace crate, so each
// chapter is included as the docs of an empty module and `cargo test --doc`
// runs the code blocks.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/circuits.md")]
pub mod circuits {}
#[doc = include_str!("src/reducibility.md")]
pub mod reducibility {}
#[doc = include_str!("src/compiling.md")]
pub mod compiling {}
#[doc = include_str!("src/verification.md")]
pub mod verification {}
#[doc = include_str!("src/benchmarks.md")]
pub mod benchmarks {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
