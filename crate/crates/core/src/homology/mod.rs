//! Homological machinery: structure-constant algebras, finite-dimensional
//! right modules, minimal projective resolutions, and the detectors built on
//! graded Betti data.

pub mod bimodule;
pub mod detect;
pub mod fdmodule;
pub mod overlaps;
pub mod resolution;
pub mod structured;

pub use bimodule::{verify_bimodule_ledger, BimoduleLedger};
pub use detect::{
    detect_d_koszul, detect_da_stacked, stacked_degree, verify_transport, DKoszulVerdict,
    StackedVerdict, TransportReport,
};
pub use fdmodule::{
    dual_regular, quotient_by_ideal_module, regular_module, simple_top, FDModule,
};
pub use overlaps::{overlap_chains, ChainGenerator};
pub use resolution::{
    generator_elements, injective_dimension_bounded, minimal_resolution, pdim_bounded, BettiData,
    Generator, MinimalResolution, PdimBound, ProjSpace,
};
pub use structured::{HomologyError, StructuredAlgebra};
