//! Exact small values of `η_g(N)`, `γ_g(G)`, `β_g(N)` and `α_g(G)`.
//!
//! All four searches are depth-first over sets listed in increasing order,
//! so the first witness found at the optimal size is the lexicographically
//! smallest one among those the symmetry reduction keeps. The first branching
//! level is split into independent subtrees that may run in parallel. Each
//! subtree gets an equal share of the node budget, which keeps node counts and
//! witnesses independent of the schedule.

mod eta;
mod gamma;
mod report;
mod sidon;

use serde::Serialize;

use crate::par::Execution;
use crate::sets::{GroupSpec, GroupSubset, IntSet};

pub use eta::eta_exact;
pub use gamma::gamma_exact;
pub use report::{ratio_report, Flag, RatioRow, RatioTable, CSV_HEADER};
pub use sidon::{alpha_exact, beta_exact};

/// Default node budget shared by the subtrees of one search level.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest element allowed in an `η` witness (minimum fixed at 0).
    /// `None` uses a window large enough for a complete search.
    pub window: Option<u64>,
    pub node_budget: u64,
    /// Keep only witnesses whose gap sequence is no larger than its reverse.
    pub reflection: bool,
    pub exec: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            window: None,
            node_budget: DEFAULT_NODE_BUDGET,
            reflection: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Eta,
    Gamma,
    Beta,
    Alpha,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Eta => "eta",
            Quantity::Gamma => "gamma",
            Quantity::Beta => "beta",
            Quantity::Alpha => "alpha",
        }
    }

    /// Whether the quantity is a minimum (difference sets) or a maximum.
    pub fn is_minimum(self) -> bool {
        matches!(self, Quantity::Eta | Quantity::Gamma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExtremalWitness {
    Int(IntSet),
    Group(GroupSubset),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub quantity: Quantity,
    pub g: u64,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub value: u64,
    pub witness: ExtremalWitness,
    /// True when every alternative was ruled out within the search space.
    pub exhaustive: bool,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
}

impl ExtremalResult {
    /// `N` for interval quantities, `|G|` for group quantities.
    pub fn size_param(&self) -> u64 {
        match (&self.n, &self.group) {
            (Some(n), _) => *n,
            (None, Some(g)) => g.order() as u64,
            _ => 0,
        }
    }

    /// Re-checks the witness through the certificate layer.
    pub fn verify_witness(&self) -> crate::Result<bool> {
        use crate::sets::{
            verify_difference_group, verify_difference_interval, verify_sidon_group,
            verify_sidon_interval,
        };
        let ok = match (&self.quantity, &self.witness) {
            (Quantity::Eta, ExtremalWitness::Int(a)) => {
                verify_difference_interval(a, self.g, self.size_param())?.passed
            }
            (Quantity::Beta, ExtremalWitness::Int(a)) => {
                verify_sidon_interval(a, self.g, self.size_param())?.passed
            }
            (Quantity::Gamma, ExtremalWitness::Group(a)) => {
                verify_difference_group(a, self.g).passed
            }
            (Quantity::Alpha, ExtremalWitness::Group(a)) => verify_sidon_group(a, self.g).passed,
            _ => false,
        };
        let size = match &self.witness {
            ExtremalWitness::Int(a) => a.len(),
            ExtremalWitness::Group(a) => a.len(),
        };
        Ok(ok && size as u64 == self.value)
    }
}

/// Splits `total` evenly over `parts` subtrees.
pub(crate) fn budget_share(total: u64, parts: usize) -> u64 {
    (total / parts.max(1) as u64).max(1)
}
