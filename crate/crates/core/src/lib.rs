pub mod characters;
pub mod error;
pub mod partitions;
pub mod perm;
pub mod qsim;
pub mod tableaux;
pub mod wreath;
pub mod yor;

pub use error::{Error, Result};
pub use partitions::{Composition, CycleType, Partition};
pub use perm::Permutation;
