//! The explicit and probabilistic constructions: parabola unions in
//! `(Z/pZ)²`, the lift to `Z/p²sZ`, the blow-up composition, seeded random
//! subsets and their Monte Carlo validation.

pub mod blowup;
pub mod chernoff;
pub mod legendre;
pub mod lift;
pub mod montecarlo;
pub mod parabola;
pub mod random;

pub use blowup::blow_up;
pub use chernoff::{chernoff_bound, chernoff_bound_raw};
pub use legendre::{check_odd_prime, is_prime, legendre_symbol};
pub use lift::{cyclic_pipeline, lift_to_cyclic, PipelineReport};
pub use montecarlo::{
    monte_carlo_validate, Aggregate, MonteCarloConfig, MonteCarloReport, RandomModel, TailCheck,
    Thresholds, TrialRecord,
};
pub use parabola::{
    best_shift, best_shift_union, best_shift_union_with, guaranteed_g, pair_rep_count,
    parabola_set, shift_score, union_for_shift, GuaranteeStatus, PairCount, PairCountMethod,
    ParabolaUnion, UnionOptions, Verification,
};
pub use random::{
    random_group_subset, random_group_subset_with, sequence_random_set, sequence_random_set_with,
    trial_seed, IndexedUniforms,
};
