//! Group algebras kG, their centers on the class-sum basis, and blocks.

mod blocks;
pub mod cache;
mod central;
mod element;
mod idempotents;

pub use blocks::{blocks, Block, GroupBlocks};
pub use cache::BlockCache;
pub use central::{class_sum_algebra, CentralAlgebra};
pub use element::GroupAlgebraElement;
pub use idempotents::{
    brute_force_central_idempotents, min_poly, min_poly_in, primitive_idempotents, semisimple_part,
    DEFAULT_ORACLE_BOUND,
};
