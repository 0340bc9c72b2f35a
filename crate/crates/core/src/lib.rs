//! Follower and extender set sequences of sofic shifts presented by labeled graphs.

pub mod cli;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod graph;
pub mod predicates;
pub mod render;
pub mod shift;
pub mod sturmian;
pub mod verify;

pub use engine::{Analysis, EngineConfig, Quantity, SequenceReport};
pub use error::{Error, Result};
pub use graph::{parse_word, validate_essential, Label, LabeledGraph};
pub use shift::{PresentedShift, SyncLoop};
