//! Benchmark-only crate. The measurements live in `benches/gaps.rs`; this
//! library exists so the workspace member has a compilation unit.
