//! Finite group construction and generating-pair analysis.

pub mod beauville;
pub mod dsl;
pub mod error;
pub mod fp;
pub mod group;
pub mod perm;
pub mod render;
pub mod set;
pub mod verify;
pub mod util;
pub mod word;

pub use beauville::{
    beauville_dimension, brute_dimension, check_structure, enumerate_sigma_records,
    is_faithfully_represented, lift_structure, sigma, Classification, DimensionResult,
    GeneratingPair, SigmaRecord, StructureFamily,
};
pub use dsl::{build, build_quotient_map, parse_spec, render_spec, BuildError, BuildOptions, GroupSpec};
pub use error::{BeauvilleError, EnumError, GroupError};
pub use group::{ConjugacyClasses, GroupTable, QuotientMap};
pub use set::ElementSet;
pub use word::Word;
