//! Braid monodromy of univariate fewnomials.

pub mod braid;
pub mod error;

pub use braid::{ArtinWord, GarsideNormalForm};
pub mod annular;

pub use annular::{AnnularWord, WreathElement};
pub mod loops;
pub mod monodromy;
pub mod simple;
pub mod tropical;
