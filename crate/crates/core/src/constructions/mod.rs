//! The three-loop graphs, their joins, partition-driven targets and the lower bounds.

pub mod bounds;
pub mod gns;
pub mod join;
pub mod partition;

pub use bounds::{lower_bound_check, BoundReport, Inequality, Oscillation};
pub use gns::{build_gns, GnsLayout, GnsSpec};
pub use join::{check_join_hypotheses, join, JoinFacts};
pub use partition::{build_extender_target, build_follower_target, PartitionSpec};
