//! Cycle-aware scheduling of ZZ-crosstalk-safe quantum circuits.
//!
//! A circuit is first split into crosstalk-safe layers separated by full
//! barriers. The layers are turned into a time and distance dependency graph,
//! and barriers are then punched on the qubits whose gates may overlap the
//! next layer, shortening the program without letting nearby gates from
//! different layers run together.
//!
//! ```
//! use cyco::fixtures::{table1_durations, worked_example};
//! use cyco::pipeline::{run_pipeline, PipelineOptions};
//! use cyco::topology::Topology;
//!
//! let out = run_pipeline(&worked_example(), &Topology::grid(3, 4), &table1_durations(),
//!                        &PipelineOptions::default()).unwrap();
//! assert_eq!((out.baseline.program_cycle, out.schedule.program_cycle), (12, 8));
//! ```

pub mod baseline;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod metrics;
pub mod pipeline;
pub mod profiles;
pub mod qasm;
pub mod random;
pub mod scheduler;
pub mod tddg;
pub mod topology;

pub use circuit::{Circuit, DurationTable, GateInstance, GateKind};
pub use error::{Error, Result};
pub use pipeline::{run_pipeline, PipelineOptions, PipelineOutput};
pub use scheduler::Schedule;
pub use topology::Topology;
