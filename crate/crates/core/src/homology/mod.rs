//! Weight-graded abelianizations: bracket spans, Smith normal form, rank mod
//! p with early exit, coinvariants and the split-sequence assembly.

mod cache;
mod coinv;
mod h1;
pub mod linalg;
mod profile;
mod span;
mod weight2;

pub use cache::{cache_key, h1_weight_cached};
pub use coinv::{
    abelianization_module, coinvariants, direct_sum, power_module, trivial_module, wedge2_mod_omega, Coinvariants,
    ModuleSpec, MODULE_GUARD,
};
pub use h1::{
    h1_weight, rank_mod_p, rational_span_rank, smith_normal_form, H1Config, H1Report, Mode, Ring, DEFAULT_BLOCK_GUARD,
};
pub use linalg::{SnfResult, SparseColumn, DEFAULT_PRIMES};
pub use profile::{generation_profile, ProfileRow};
pub use span::{
    all_partitions, bracket_span, check_range, normalize_partitions, Algebra, ColumnTag, GradedBasis, Partition,
    SpanMatrix,
};
pub use weight2::{c13_projection, weight_two_check, WeightTwoCheck};
