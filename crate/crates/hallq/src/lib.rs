//! Exact computations in the bounded derived category of quiver representations
//! over small finite fields.
//!
//! The crate computes Hom and Ext spaces of explicit representations, mapping
//! cones of chain maps between complexes of projectives, derived Hall numbers
//! by exact morphism counting (both normalisations, cross-checked), and the
//! rational functions in the field cardinality that those numbers trace out
//! across ground fields.  Everything is exact: field arithmetic is table-driven
//! GF(p^r), counts are big integers, Hall numbers are big rationals, and the
//! fitter runs exact rational linear algebra.
//!
//! Entry points:
//!
//! * [`quiverrep::QuiverPreset`] — the supported quivers (type A with any
//!   orientation, cyclic, Kronecker, the acyclic three-vertex tame quiver).
//! * [`hallengine::Engine`] — derived Hall numbers, middle terms and the
//!   identity-check suites over one preset and one field.
//! * [`genericfit`] — multi-field sweeps and exact rational interpolation.
//! * [`cli`] — the batch command-line interface used by the `hallq` binary.
//!
//! The `examples/` directory walks through each capability; `cargo run
//! --example hall_number` is a good place to start.

pub mod cli;
pub mod derived;
pub mod finfield;
pub mod genericfit;
pub mod hallengine;
pub mod objspec;
pub mod quiverrep;
