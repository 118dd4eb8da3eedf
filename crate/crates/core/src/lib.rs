//! Traveling thief problem with time windows (TTPTW).
//!
//! A thief visits every city once, starting and ending at city 1, and
//! chooses which items to steal. Carried weight slows the thief down, the
//! knapsack is rented by the time unit, and each city may only be entered
//! inside its time window: arriving early means waiting, arriving late is a
//! constraint violation.
//!
//! The crate provides
//!
//! * [`instance`]: CEC-2014 TTP files, time windows and their file format;
//! * [`evaluation`]: arrival times, objective, violation and the
//!   constraint-dominance ordering, metered by an evaluation budget;
//! * [`twgen`]: nested time-window generation;
//! * [`tourinit`]: scored nearest-neighbour tour construction;
//! * [`packing`]: Pack, PackIterative and Repack;
//! * [`operators`]: Topo, Rain, ITP, IIP and swap mutation;
//! * [`dsea`]: the dual search evolutionary algorithm and a random-restart
//!   baseline.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases below fix it to `f64`, which is what the CLI and the reports use.

pub mod dsea;
pub mod evaluation;
pub mod fixtures;
pub mod instance;
pub mod operators;
pub mod packing;
pub mod rng;
pub mod scalar;
pub mod tourinit;
pub mod twgen;

pub use evaluation::{
    compare, evaluate, evaluate_into, is_feasible, ttp_objective, BudgetExhausted, EvaluationBudget, Fitness,
    PackingPlan, Tour, TourError,
};
pub use instance::{
    attach_windows, instance_alias, parse_window_file, write_window_file, EdgeWeightKind, InstanceError, Item,
    TtpData, WindowHeader, WindowType,
};
pub use scalar::Scalar;

pub type TtpInstance = instance::TtpInstance<f64>;
pub type TtptwInstance = instance::TtptwInstance<f64>;
pub type TimeWindows = instance::TimeWindows<f64>;
pub type Window = instance::Window<f64>;
pub type Evaluation = evaluation::Evaluation<f64>;
pub type RunResult = dsea::RunResult<f64>;
pub type ReferenceTimes = twgen::ReferenceTimes<f64>;
pub type WindowFamily = twgen::WindowFamily<f64>;
