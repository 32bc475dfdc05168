//! Simple braids `b_J`, the bullet product, support shifting and the
//! Euclidean algorithm in `B_d^★`.

mod euclid;
mod genword;
mod shift;
mod support;
mod witness;

pub use euclid::{euclid_branch, euclid_word, Branch};
pub use genword::{given_simple, Expr, GeneratorWord, Step, StepCheck, StepKind, Verification};
pub use shift::{append_shift, shift_path, shift_word, ShiftMode};
pub use support::{b_kj, bullet_support, simple_braid, Support};
pub use witness::{atom_classes, generation_witness};
