//! The extended reflection equation algebra and truncated normal forms.

mod algebra;
mod element;
mod ideal;
mod relations;
mod word;

pub use algebra::{binomial, classical_coranks, Centrality, Presentation};
pub use element::{AlgMatrix, AlgebraElement};
pub use ideal::TruncatedIdeal;
pub use relations::{extract_relations, RelationSet};
pub use word::{Generator, Word, WordIndex};
