// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod factor;
pub mod field;
pub mod ideal;
pub mod ideal_zeta;
pub mod linalg;
pub mod literal;
pub mod poly;
pub mod ring;
pub mod ringfile;
pub mod search;
pub mod semigroup;
pub mod theorems;
pub mod zeta;
