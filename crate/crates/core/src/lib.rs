//! Free strict ω-categories presented by polygraphs: words and their
//! elementary moves, abelianization and polygraphic homology, nerves of
//! finite (2-)categories, Conduché functors and slices.

pub mod abelianize;
pub mod conduche;
pub mod error;
pub mod formats;
pub mod homology;
pub mod nerve;
pub mod polygraph;
pub mod rewrite;
pub mod term;
pub mod zoo;

pub use abelianize::{
    abelianize, abelianize_functor, weight, weight_vector, ChainMap, WeightVector,
};
pub use conduche::{check_conduche, pullback, slice, slice_over, FiniteFunctor};
pub use error::{Error, Result};
pub use formats::{
    parse_2category, parse_category, parse_functor_spec, parse_polygraph, FunctorSpec,
};
pub use homology::{smith_normal_form, ChainComplex, HomologyGroup, IntMatrix, SnfResult};
pub use nerve::{CellRef, Finite2Category, FiniteCategory, SimplicialTruncation};
pub use polygraph::{PolyFunctor, Polygraph};
pub use rewrite::{Budget, ElementaryMove, Verdict};
pub use term::{CellTerm, GeneratorId};
