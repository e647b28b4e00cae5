//! Independent checks: partition sums over nilpotent representations and
//! brute-force point counts over finite fields.

pub mod count;
pub mod nilpotent;
pub mod nsigma;
pub mod partitions;
pub mod suites;
pub mod verify;

pub use count::{count_commuting_pairs, count_representations, CountProblem};
pub use nilpotent::{ChainModule, SpecialQuiver};
pub use nsigma::{n_sigma_closed, n_sigma_via_partitions, verify_factorization, DifferenceSource};
pub use partitions::{partition_m, partitions_of, partitions_up_to, Partition, PartitionTuple};
pub use verify::{theorem_a_check, theorem_a_suite, CheckRecord, Status};
