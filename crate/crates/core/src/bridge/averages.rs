//! Local averages of a function with `f⋆f ≥ 1` on `[0,1]`, and the
//! inclusion probabilities derived from them.
//!
//! With `L = ⌈(τ̂/2)·N^{2/3}⌉` the averages are
//! `a_i = (N/2L) ∫_{(i−L)/N}^{(i+L)/N} f`. Every point is covered by exactly
//! `2L` windows, so `Σ a_i = N ∫ f`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bridge::lag::min_lag_product;
use crate::bridge::step::StepFunction;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rational::{
    bigint_to_i64, floor_q, parse_rational, q, q_to_f64, qstr, CubeRootScaled, SqrtScaled, Q,
};

/// Default cap on `support × lags` for the exact lagged-product minimum.
pub const DEFAULT_PRODUCT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug)]
pub struct AveragesOptions {
    pub stretch: bool,
    /// Condition (3) is evaluated only when `support · lags` stays below this.
    pub product_budget: u64,
    pub exec: Execution,
}

impl Default for AveragesOptions {
    fn default() -> Self {
        AveragesOptions {
            stretch: false,
            product_budget: DEFAULT_PRODUCT_BUDGET,
            exec: Execution::default(),
        }
    }
}

/// `min_{1≤m≤M} Σ a_i a_{i+m}` against `((2L−1)/2L)·N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagCondition {
    pub m_max: u64,
    #[serde(with = "qstr")]
    pub min: Q,
    pub argmin: u64,
    #[serde(with = "qstr")]
    pub bound: Q,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AveragesConditions {
    /// `Σ a_i`.
    pub sum: SqrtScaled,
    /// `N τ̂ (1+ε)` with the realized `ε`.
    #[serde(with = "qstr")]
    pub sum_target: Q,
    pub sum_within: bool,
    pub max_a: SqrtScaled,
    pub max_at: i64,
    /// `max a_i ≤ Σ a_i / (τ̂ N^{2/3})`, decided exactly.
    pub max_within: bool,
    /// `None` when the instance exceeds the product budget.
    pub lag: Option<LagCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragesSeq {
    pub n: u64,
    pub l: u64,
    pub tau_hat: Q,
    /// Horizontal dilation applied to `f` first (1 when not stretched).
    pub stretch_applied: Q,
    /// `stretch_applied − 1`.
    pub realized_epsilon: Q,
    /// Radicand carried by `f`: the true average is `a_i · √scale`.
    pub scale: Q,
    start: i64,
    values: Vec<Q>,
    pub conditions: AveragesConditions,
}

impl AveragesSeq {
    /// Coefficient of `√scale` for `a_i`.
    pub fn get(&self, i: i64) -> Q {
        usize::try_from(i - self.start)
            .ok()
            .and_then(|k| self.values.get(k).cloned())
            .unwrap_or_else(Q::zero)
    }

    /// Nonzero coefficients in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Q)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (self.start + k as i64, v))
    }

    pub fn support_len(&self) -> usize {
        self.iter().count()
    }

    /// `Σ a_i` as a coefficient of `√scale`.
    pub fn sum_coeff(&self) -> Q {
        self.values.iter().sum()
    }
}

impl Serialize for AveragesSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(rename = "N")]
            n: u64,
            #[serde(rename = "L")]
            l: u64,
            tau_hat: String,
            stretch_applied: String,
            realized_epsilon: String,
            scale_sqrt: String,
            a: Vec<(i64, String)>,
            conditions: &'a AveragesConditions,
        }
        Out {
            n: self.n,
            l: self.l,
            tau_hat: self.tau_hat.to_string(),
            stretch_applied: self.stretch_applied.to_string(),
            realized_epsilon: self.realized_epsilon.to_string(),
            scale_sqrt: self.scale.to_string(),
            a: self.iter().map(|(i, v)| (i, v.to_string())).collect(),
            conditions: &self.conditions,
        }
        .serialize(s)
    }
}

/// `L = ⌈(τ̂/2)·N^{2/3}⌉`.
pub fn window_half_width(n: u64, tau_hat: &Q) -> u64 {
    CubeRootScaled::new(tau_hat / q(2), n, 2)
        .ceil()
        .to_u64()
        .expect("window fits in u64")
}

pub fn local_averages(f: &StepFunction, n: u64, tau_hat: &Q, stretch: bool) -> Result<AveragesSeq> {
    local_averages_with(
        f,
        n,
        tau_hat,
        &AveragesOptions {
            stretch,
            ..AveragesOptions::default()
        },
    )
}

pub fn local_averages_with(
    f: &StepFunction,
    n: u64,
    tau_hat: &Q,
    opts: &AveragesOptions,
) -> Result<AveragesSeq> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    if !tau_hat.is_positive() {
        return Err(Error::InvalidParameter("tau_hat must be positive".into()));
    }
    let (in_family, m) = f.in_correlation_family(opts.exec);
    if !in_family {
        return Err(Error::CertificateFailed {
            what: format!("f⋆f = {} < 1 on [0,1]", m.value),
            witness: m.at.to_string(),
        });
    }
    let l = window_half_width(n, tau_hat);
    if 2 * l - 1 >= n {
        return Err(Error::WindowTooLarge { n, l });
    }
    let lambda = if opts.stretch {
        Q::new((n as i64).into(), ((n - 2 * l + 1) as i64).into())
    } else {
        Q::one()
    };
    let g = f.dilate(&lambda)?;
    let (start, values) = match g.support() {
        None => (0, Vec::new()),
        Some((lo, hi)) => {
            let nq = q(n as i64);
            let li = l as i64;
            let i_min = bigint_to_i64(&floor_q(&(&lo * &nq))) - li + 1;
            let i_max = bigint_to_i64(&crate::rational::ceil_q(&(&hi * &nq))) + li - 1;
            let cum = g.cumulative_grid(n, i_min - li, i_max + li);
            let factor = Q::new((n as i64).into(), (2 * li).into());
            let values = (0..=(i_max - i_min) as usize)
                .map(|k| (&cum[k + 2 * l as usize] - &cum[k]) * &factor)
                .collect();
            (i_min, values)
        }
    };
    let scale = g.radicand();
    let realized_epsilon = &lambda - Q::one();

    let sum: Q = values.iter().sum();
    let sum_target = q(n as i64) * tau_hat * &lambda;
    let sum_within =
        SqrtScaled::new(sum.clone(), scale.clone()).cmp_rational(&sum_target) != Ordering::Greater;
    let (max_at, max_a) =
        values
            .iter()
            .enumerate()
            .fold((0usize, Q::zero()), |(bi, bv), (i, v)| {
                if *v > bv {
                    (i, v.clone())
                } else {
                    (bi, bv)
                }
            });
    // τ̂ N^{2/3} max ≤ Σ; the radicand is common to both sides.
    let max_within =
        CubeRootScaled::new(tau_hat * &max_a, n, 2).cmp_rational(&sum) != Ordering::Greater;

    let m_max = if opts.stretch { n } else { n - 2 * l + 1 };
    let lag = if (values.len() as u64).saturating_mul(m_max) <= opts.product_budget {
        min_lag_product(&values, 1, m_max as usize, opts.exec).map(|(min, at)| {
            let min = min * &scale;
            let bound = Q::new(((2 * l - 1) as i64).into(), ((2 * l) as i64).into()) * q(n as i64);
            LagCondition {
                m_max,
                holds: min >= bound,
                min,
                argmin: at as u64,
                bound,
            }
        })
    } else {
        None
    };

    Ok(AveragesSeq {
        n,
        l,
        tau_hat: tau_hat.clone(),
        stretch_applied: lambda,
        realized_epsilon,
        conditions: AveragesConditions {
            sum: SqrtScaled::new(sum, scale.clone()),
            sum_target,
            sum_within,
            max_a: SqrtScaled::new(max_a, scale.clone()),
            max_at: start + max_at as i64,
            max_within,
            lag,
        },
        scale,
        start,
        values,
    })
}

/// Inclusion probabilities `p_i = w_i · c · B^{e/3}`.
///
/// Probabilities produced from averages keep `c·B^{e/3} = τ̂ N^{2/3}` and
/// `w_i = a_i / Σ a_j` separate, so every identity stays exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbSeq {
    weights: BTreeMap<i64, Q>,
    mass: CubeRootScaled,
}

/// `min_{1≤m≤N} Σ p_i p_{i+m}` against `((1−ε)/(1+ε)²)·N^{1/3}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbCorrelation {
    pub n: u64,
    /// `min Σ w_i w_{i+m}`; multiply by the squared mass for `Σ p_i p_{i+m}`.
    #[serde(with = "qstr")]
    pub min_weight_product: Q,
    pub argmin: u64,
    /// `min Σ p_i p_{i+m} / N^{1/3}`, rounded.
    pub ratio: f64,
    #[serde(with = "qstr")]
    pub target: Q,
    pub holds: bool,
}

impl ProbSeq {
    /// Probabilities given directly; each must lie in `[0, 1]`.
    pub fn from_probabilities(p: BTreeMap<i64, Q>) -> Result<Self> {
        if let Some((_, bad)) = p.iter().find(|(_, v)| v.is_negative() || **v > Q::one()) {
            return Err(Error::ProbabilityOutOfRange(bad.to_string()));
        }
        Ok(ProbSeq {
            weights: p.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            mass: CubeRootScaled::new(Q::one(), 1, 0),
        })
    }

    pub fn weights(&self) -> &BTreeMap<i64, Q> {
        &self.weights
    }

    pub fn mass(&self) -> &CubeRootScaled {
        &self.mass
    }

    /// `Σ w_i`; equals 1 for sequences built from averages.
    pub fn weight_sum(&self) -> Q {
        self.weights.values().sum()
    }

    /// `Σ p_i` as `weight_sum · mass`.
    pub fn total(&self) -> CubeRootScaled {
        CubeRootScaled::new(
            &self.mass.coeff * self.weight_sum(),
            self.mass.base,
            self.mass.exponent,
        )
    }

    pub fn probability_f64(&self, i: i64) -> f64 {
        self.weights
            .get(&i)
            .map(|w| (q_to_f64(w) * self.mass.to_f64()).min(1.0))
            .unwrap_or(0.0)
    }

    /// Nonzero probabilities in increasing index order.
    pub fn probabilities_f64(&self) -> Vec<(i64, f64)> {
        let m = self.mass.to_f64();
        self.weights
            .iter()
            .map(|(&i, w)| (i, (q_to_f64(w) * m).min(1.0)))
            .collect()
    }

    /// The first index whose probability exceeds 1, decided exactly.
    pub fn first_excess(&self) -> Option<i64> {
        self.weights.iter().find_map(|(&i, w)| {
            let p = CubeRootScaled::new(w * &self.mass.coeff, self.mass.base, self.mass.exponent);
            (p.cmp_rational(&Q::one()) == Ordering::Greater).then_some(i)
        })
    }

    fn dense(&self) -> (i64, Vec<Q>) {
        let (Some((&lo, _)), Some((&hi, _))) = (
            self.weights.first_key_value(),
            self.weights.last_key_value(),
        ) else {
            return (0, Vec::new());
        };
        let mut v = vec![Q::zero(); (hi - lo + 1) as usize];
        for (&i, w) in &self.weights {
            v[(i - lo) as usize] = w.clone();
        }
        (lo, v)
    }

    /// Exact check of `Σ p_i p_{i+m} ≥ ((1−ε)/(1+ε)²)·N^{1/3}` for `m ∈ [1, N]`.
    ///
    /// `None` when `span · N` exceeds `budget`.
    pub fn correlation_check(
        &self,
        n: u64,
        epsilon: &Q,
        budget: u64,
        exec: Execution,
    ) -> Result<Option<ProbCorrelation>> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        if epsilon.is_negative() || *epsilon >= Q::one() {
            return Err(Error::InvalidParameter("epsilon must lie in [0, 1)".into()));
        }
        let (_, dense) = self.dense();
        if (dense.len() as u64).saturating_mul(n) > budget {
            return Ok(None);
        }
        let Some((min, at)) = min_lag_product(&dense, 1, n as usize, exec) else {
            return Ok(None);
        };
        let one_plus = Q::one() + epsilon;
        let target = (Q::one() - epsilon) / (&one_plus * &one_plus);
        // coeff² B^{2e/3} S ≥ t N^{1/3}  ⇔  coeff⁶ B^{2e} S³ ≥ t³ N
        let c = &self.mass.coeff;
        let lhs = CubeRootScaled::new(c * c * &min, self.mass.base, 2 * self.mass.exponent);
        let rhs = CubeRootScaled::new(target.clone(), n, 1);
        let holds = cube_ge(&lhs, &rhs);
        let ratio = lhs.to_f64() / (n as f64).cbrt();
        Ok(Some(ProbCorrelation {
            n,
            min_weight_product: min,
            argmin: at as u64,
            ratio,
            target,
            holds,
        }))
    }
}

/// `x ≥ y` for nonnegative cube-root values.
fn cube_ge(x: &CubeRootScaled, y: &CubeRootScaled) -> bool {
    let cube = |v: &CubeRootScaled| {
        let c = &v.coeff;
        c * c
            * c
            * Q::from_integer(num_traits::pow(
                num_bigint::BigInt::from(v.base),
                v.exponent as usize,
            ))
    };
    cube(x) >= cube(y)
}

/// `p_i = τ̂ N^{2/3} a_i / Σ a_j`, rejecting any `p_i > 1`.
pub fn averages_to_probs(a: &AveragesSeq) -> Result<ProbSeq> {
    let sum = a.sum_coeff();
    if !sum.is_positive() {
        return Err(Error::InvalidParameter("averages sum to zero".into()));
    }
    let seq = ProbSeq {
        weights: a.iter().map(|(i, v)| (i, v / &sum)).collect(),
        mass: CubeRootScaled::new(a.tau_hat.clone(), a.n, 2),
    };
    if let Some(i) = seq.first_excess() {
        return Err(Error::AveragesNotAdmissible(i));
    }
    Ok(seq)
}

#[derive(Serialize, Deserialize)]
struct MassJson {
    coeff: String,
    base: u64,
    exponent: u32,
}

impl Serialize for ProbSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            mass: MassJson,
            weights: Vec<(i64, String)>,
        }
        Out {
            mass: MassJson {
                coeff: self.mass.coeff.to_string(),
                base: self.mass.base,
                exponent: self.mass.exponent,
            },
            weights: self
                .weights
                .iter()
                .map(|(i, w)| (*i, w.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

/// Accepts either the serialized form or plain probabilities
/// `{"p": [[i, "p/q"], …]}`.
impl<'de> Deserialize<'de> for ProbSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum In {
            Weighted {
                mass: MassJson,
                weights: Vec<(i64, String)>,
            },
            Plain {
                p: Vec<(i64, String)>,
            },
        }
        let parse = |v: Vec<(i64, String)>| -> Result<BTreeMap<i64, Q>> {
            v.into_iter()
                .map(|(i, s)| Ok((i, parse_rational(&s)?)))
                .collect()
        };
        let out = match In::deserialize(d)? {
            In::Plain { p } => parse(p).and_then(ProbSeq::from_probabilities),
            In::Weighted { mass, weights } => (|| {
                let weights = parse(weights)?;
                if weights.values().any(Signed::is_negative) {
                    return Err(Error::InvalidParameter("negative weight".into()));
                }
                let seq = ProbSeq {
                    weights: weights.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
                    mass: CubeRootScaled::new(
                        parse_rational(&mass.coeff)?,
                        mass.base,
                        mass.exponent,
                    ),
                };
                match seq.first_excess() {
                    Some(i) => Err(Error::ProbabilityOutOfRange(format!("p_{i}"))),
                    None => Ok(seq),
                }
            })(),
        };
        out.map_err(serde::de::Error::custom)
    }
}
