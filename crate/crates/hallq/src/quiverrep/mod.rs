//! Quiver presets, explicit representations over a finite field, Hom/Ext
//! computation, Krull–Schmidt recognition against a catalogue of
//! indecomposables, automorphism counting, and a submodule-counting oracle
//! for classical Hall numbers.

mod catalogue;
mod context;
mod oracle;
mod preset;
mod rep;

pub use catalogue::{Catalogue, IndecLabel, PriClass, RegPoint, TubePos};
pub use context::{FingerprintKey, LabelMultiset, RecognizeError, RepContext};
pub use oracle::submodule_hall_oracle;
pub use preset::{preset_make, PresetError, PresetKind, QuiverPreset};
pub use rep::{
    euler_form, hom_basis, hom_ext_dims, morphism_kernel_cokernel, quotient_rep, sub_rep,
    KerCokerIm, Rep, RepError, RepMap, VertexBases,
};
