use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, q_frac, SqrtScaled, Q};
use crate::sets::GroupSpec;

/// Known numerical ranges for the extremal constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsLedger {
    /// `σ ∈ [1.147, 1.252]`.
    #[serde(with = "qpair")]
    pub sigma_interval: (Q, Q),
    /// `τ ∈ (1.560, 1.643]`.
    #[serde(with = "qpair")]
    pub tau_interval: (Q, Q),
    /// For `g = 2`, `√(2.435 N) ≤ η_2(N) ≤ √(2.645 N)` for large `N`.
    #[serde(with = "qpair")]
    pub g2_constants: (Q, Q),
}

impl Default for BoundsLedger {
    fn default() -> Self {
        BoundsLedger {
            sigma_interval: (q_frac(1147, 1000), q_frac(1252, 1000)),
            tau_interval: (q_frac(1560, 1000), q_frac(1643, 1000)),
            g2_constants: (q_frac(2435, 1000), q_frac(2645, 1000)),
        }
    }
}

impl BoundsLedger {
    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [
            ("sigma", &self.sigma_interval),
            ("tau", &self.tau_interval),
            ("g2", &self.g2_constants),
        ] {
            if lo >= hi {
                return Err(Error::InvalidParameter(format!(
                    "{name} interval is empty: [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    pub fn tau_lower(&self) -> &Q {
        &self.tau_interval.0
    }
}

mod qpair {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &(Q, Q), s: S) -> std::result::Result<S::Ok, S::Error> {
        [p.0.to_string(), p.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<(Q, Q), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| crate::rational::parse_rational(s).map_err(serde::de::Error::custom);
        Ok((parse(&a)?, parse(&b)?))
    }
}

/// What the trivial bounds are computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundTarget {
    /// The interval `[N]`.
    Interval(u64),
    Group(GroupSpec),
}

/// Trivial size bounds from pair counting.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum TrivialBounds {
    Interval(IntervalBounds),
    Group(GroupBounds),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalBounds {
    pub g: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// `√(2gN)`, exact.
    pub sqrt_2gn: SqrtScaled,
    pub sqrt_2gn_approx: f64,
    /// `η_g(N) ≥ ⌈√(2gN)⌉`.
    pub eta_lb: u64,
    /// `β_g(N) ≤ ⌊√(2gN)⌋`.
    pub beta_ub: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupBounds {
    pub g: u64,
    pub order: u64,
    /// `√(g|G|)`, exact.
    pub sqrt_g_order: SqrtScaled,
    pub sqrt_g_order_approx: f64,
    /// `γ_g(G) ≥ ⌈√(g|G|)⌉`.
    pub gamma_lb: u64,
    /// `α_g(G) ≤ ⌊√(g|G|)⌋`.
    pub alpha_ub: u64,
    /// `1/2 + √(g(|G|−1))`, as a float for display.
    pub gamma_sharp_value: f64,
    /// Smallest integer strictly above `1/2 + √(g(|G|−1))`.
    pub gamma_lb_sharp: u64,
    pub warning: Option<String>,
}

pub fn trivial_bounds(g: u64, target: &BoundTarget) -> Result<TrivialBounds> {
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    match target {
        BoundTarget::Interval(n) => {
            if *n == 0 {
                return Err(Error::InvalidParameter("N must be at least 1".into()));
            }
            let r = SqrtScaled::new(q(1), q((2 * g * n) as i64));
            Ok(TrivialBounds::Interval(IntervalBounds {
                g,
                n: *n,
                sqrt_2gn_approx: r.to_f64(),
                eta_lb: r.ceil().to_u64().expect("fits"),
                beta_ub: r.floor().to_u64().expect("fits"),
                sqrt_2gn: r,
            }))
        }
        BoundTarget::Group(group) => {
            let order = group.order() as u64;
            let r = SqrtScaled::new(q(1), q((g * order) as i64));
            let m = (g * (order - 1)) as u128;
            let s = crate::rational::isqrt_u128(m);
            // ⌊1/2 + √m⌋ is s+1 exactly when √m ≥ s + 1/2, i.e. m > s(s+1).
            let floor_sharp = if m > s * (s + 1) { s + 1 } else { s };
            let warning =
                (g > order).then(|| format!("γ_{g}(G) may not exist: g exceeds |G| = {order}"));
            Ok(TrivialBounds::Group(GroupBounds {
                g,
                order,
                sqrt_g_order_approx: r.to_f64(),
                gamma_lb: r.ceil().to_u64().expect("fits"),
                alpha_ub: r.floor().to_u64().expect("fits"),
                gamma_sharp_value: 0.5 + (m as f64).sqrt(),
                gamma_lb_sharp: (floor_sharp + 1) as u64,
                sqrt_g_order: r,
                warning,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(g: u64, n: u64) -> IntervalBounds {
        match trivial_bounds(g, &BoundTarget::Interval(n)).unwrap() {
            TrivialBounds::Interval(b) => b,
            _ => unreachable!(),
        }
    }

    fn group(g: u64, n: u64) -> GroupBounds {
        match trivial_bounds(g, &BoundTarget::Group(GroupSpec::cyclic(n).unwrap())).unwrap() {
            TrivialBounds::Group(b) => b,
            _ => unreachable!(),
        }
    }

    #[test]
    fn interval_examples() {
        let b = interval(1, 3);
        assert_eq!(b.eta_lb, 3);
        assert!((b.sqrt_2gn_approx - 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(interval(1, 1).eta_lb, 2);
        assert_eq!(interval(1, 1).beta_ub, 1);
        // √(2·2·4) = 4 exactly.
        assert_eq!(interval(2, 4).eta_lb, 4);
        assert_eq!(interval(2, 4).beta_ub, 4);
    }

    #[test]
    fn group_examples() {
        let b = group(1, 7);
        assert_eq!(b.gamma_lb, 3);
        assert_eq!(b.gamma_lb_sharp, 3);
        assert!((b.gamma_sharp_value - 2.949).abs() < 1e-3);
        assert_eq!(b.alpha_ub, 2);
        assert!(b.warning.is_none());
        assert!(group(9, 7).warning.is_some());
        // 1/2 + √(1·2) ≈ 1.914 → 2; 1/2 + √(2·1) for |G| = 2.
        assert_eq!(group(1, 3).gamma_lb_sharp, 2);
        assert_eq!(group(1, 1).gamma_lb_sharp, 1);
    }

    #[test]
    fn sharp_bound_matches_float_rounding() {
        for g in 1..20u64 {
            for n in 1..200u64 {
                let b = group(g, n);
                let x = 0.5 + ((g * (n - 1)) as f64).sqrt();
                assert_eq!(b.gamma_lb_sharp, x.floor() as u64 + 1, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn ledger_is_consistent() {
        let l = BoundsLedger::default();
        l.validate().unwrap();
        assert_eq!(l.tau_lower(), &q_frac(39, 25));
        let bad = BoundsLedger {
            tau_interval: (q(2), q(1)),
            ..BoundsLedger::default()
        };
        assert!(bad.validate().is_err());
    }
}
