//! Bipath persistent homology.
//!
//! Sublevel filtrations over the bipath poset, decomposition of the resulting
//! persistence modules into interval modules, and bottleneck distances between
//! the diagrams, with decorated endpoints throughout.

pub mod bottleneck;
pub mod cli;
pub mod decomp;
pub mod diagram;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod poset;
pub mod stability;

use thiserror::Error;

pub use bottleneck::{bottleneck, bottleneck_distance, brute_force_bottleneck, BottleneckResult, Certificate};
pub use decomp::{decompose, hom_dim, realize, validate_module, verify_bottleneck_interleaving, BipathModule, GridDiagram};
pub use diagram::{ContinuousInterval, Diagram};
pub use homology::{build_filtration, compute_module, sup_distance, BValue, BipathFiltration, BipathFunction, SimplicialComplex};
pub use linalg::{Matrix, PrimeField};
pub use poset::{Dec, DecValue, GridInterval, GridPoset, GridShape, IntervalClass};
pub use stability::{stability_report, StabilityReport};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poset(#[from] poset::PosetError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Module(#[from] decomp::ModuleError),
    #[error(transparent)]
    Homology(#[from] homology::HomologyError),
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Bottleneck(#[from] bottleneck::BottleneckError),
    #[error(transparent)]
    Stability(#[from] stability::StabilityError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
}

impl Error {
    /// Errors that can only come from a bug or an inconsistent module, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        use decomp::ModuleError as M;
        matches!(
            self,
            Error::Module(M::HomCycle(_) | M::NegativeMultiplicity { .. } | M::DimensionMismatch { .. })
                | Error::Linalg(_)
        )
    }
}
