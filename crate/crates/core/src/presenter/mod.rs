//! The Dynkin diagram of `y³ + x^{ν+1}`, the group presentation read off
//! from it, and oracles for that presentation: abelianization, coset
//! enumeration of finite quotients and homomorphism counts into `S_n`.

mod abelian;
mod diagram;
mod exchange;
mod homs;
mod presentation;
mod todd_coxeter;

pub use abelian::{abelianization, smith_normal_form, AbelianInvariants};
pub use diagram::{bp_diagram, DynkinDiagram, Vertex};
pub use exchange::{parse_gap, parse_plain, to_gap, to_plain, ExchangeError};
pub use homs::{hom_count, hom_count_exhaustive, HomError};
pub use presentation::{presentation, squares, GroupPresentation, Letter, Relator, RelatorCensus, RelatorKind, Word};
pub use todd_coxeter::{todd_coxeter, CosetStatus, CosetTable, EnumerationError, DEFAULT_COSET_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PresenterError {
    #[error("nu must be at least 1, got {0}")]
    NuTooSmall(u32),
}
