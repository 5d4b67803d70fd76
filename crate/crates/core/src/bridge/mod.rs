//! The discrete–continuous dictionary: step functions built from sets,
//! local averages, inclusion probabilities and torus functions.

pub mod averages;
mod lag;
pub mod step;
pub mod torus;

pub use averages::{
    averages_to_probs, local_averages, local_averages_with, window_half_width, AveragesConditions,
    AveragesOptions, AveragesSeq, LagCondition, ProbCorrelation, ProbSeq, DEFAULT_PRODUCT_BUDGET,
};
pub use step::{set_to_step, ConvolutionVerdict, Extremum, ExtremumMethod, StepFunction};
pub use torus::{group_set_to_torus, TorusMinimum, TorusStepFunction};
