//! Nonnegative step functions on the real line with exact integrals,
//! autocorrelation `(f⋆f)(x) = ∫ f(t) f(x+t) dt` and autoconvolution
//! `(f*f)(x) = ∫ f(t) f(x−t) dt`.
//!
//! A function is stored as rational breakpoints `b_0 < … < b_k`, rational
//! coefficients `v_1, …, v_k` and an optional radicand `s`: the value on
//! `[b_{i−1}, b_i)` is `v_i·√s`. Quadratic quantities such as `f⋆f` are
//! therefore rational, while `∫f` is a rational multiple of `√s`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rational::{q, q_frac, qvec, SqrtScaled, Q};
use crate::sets::IntSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Q>,
    values: Vec<Q>,
    scale: Option<Q>,
}

/// An extremum of a piecewise-linear function and where it is attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremum {
    #[serde(with = "crate::rational::qstr")]
    pub value: Q,
    #[serde(with = "crate::rational::qstr")]
    pub at: Q,
    pub method: ExtremumMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumMethod {
    /// Only the grid points `j/N` were evaluated.
    Grid,
    /// Every breakpoint of the piecewise-linear function was evaluated.
    Breakpoints,
}

/// Membership verdict for the family of functions on `[0,1]` with `f*f ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionVerdict {
    pub max: Extremum,
    pub in_family: bool,
}

fn overlap(a0: &Q, a1: &Q, b0: &Q, b1: &Q) -> Q {
    let lo = if a0 > b0 { a0 } else { b0 };
    let hi = if a1 < b1 { a1 } else { b1 };
    if hi > lo {
        hi - lo
    } else {
        Q::zero()
    }
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Q>, values: Vec<Q>, scale: Option<Q>) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(StepFunction::zero());
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidParameter("values must be nonnegative".into()));
        }
        if let Some(s) = &scale {
            if !s.is_positive() {
                return Err(Error::InvalidParameter(
                    "scale radicand must be positive".into(),
                ));
            }
        }
        Ok(StepFunction {
            breakpoints,
            values,
            scale: scale.filter(|s| !s.is_one()),
        })
    }

    pub fn zero() -> Self {
        StepFunction {
            breakpoints: Vec::new(),
            values: Vec::new(),
            scale: None,
        }
    }

    /// `value` on `[lo, hi)`.
    pub fn constant(lo: Q, hi: Q, value: Q) -> Result<Self> {
        StepFunction::new(vec![lo, hi], vec![value], None)
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn scale(&self) -> Option<&Q> {
        self.scale.as_ref()
    }

    /// The radicand `s` (1 when the function carries no root factor).
    pub fn radicand(&self) -> Q {
        self.scale.clone().unwrap_or_else(Q::one)
    }

    fn pieces(&self) -> impl Iterator<Item = (&Q, &Q, &Q)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (&self.breakpoints[i], &self.breakpoints[i + 1], v))
    }

    fn nonzero_pieces(&self) -> Vec<(&Q, &Q, &Q)> {
        self.pieces().filter(|(_, _, v)| !v.is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Closed hull of the set where `f > 0`.
    pub fn support(&self) -> Option<(Q, Q)> {
        let nz = self.nonzero_pieces();
        Some((nz.first()?.0.clone(), nz.last()?.1.clone()))
    }

    /// Coefficient value at `x` (multiply by `√s` for the true value).
    pub fn coeff_at(&self, x: &Q) -> Q {
        self.pieces()
            .find(|(lo, hi, _)| *lo <= x && x < *hi)
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(Q::zero)
    }

    /// `∫ f` as `coeff · √s`.
    pub fn l1(&self) -> SqrtScaled {
        let coeff = self.pieces().map(|(lo, hi, v)| v * (hi - lo)).sum();
        SqrtScaled::new(coeff, self.radicand())
    }

    /// `∫_{-∞}^{x} f` as a coefficient of `√s`.
    pub fn cumulative(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for (lo, hi, v) in self.pieces() {
            if x <= lo {
                break;
            }
            let top = if x < hi { x } else { hi };
            acc += v * (top - lo);
        }
        acc
    }

    /// `∫_{-∞}^{j/N} f` for `j = j0, …, j1` in one sweep.
    pub fn cumulative_grid(&self, n: u64, j0: i64, j1: i64) -> Vec<Q> {
        let den = n as i64;
        let pieces: Vec<_> = self.pieces().collect();
        let mut out = Vec::with_capacity((j1 - j0 + 1).max(0) as usize);
        let mut done = Q::zero();
        let mut k = 0;
        for j in j0..=j1 {
            let x = q_frac(j, den);
            while k < pieces.len() && pieces[k].1 <= &x {
                done += pieces[k].2 * (pieces[k].1 - pieces[k].0);
                k += 1;
            }
            let partial = match pieces.get(k) {
                Some((lo, _, v)) if *lo < &x => *v * (&x - *lo),
                _ => Q::zero(),
            };
            out.push(&done + partial);
        }
        out
    }

    /// `∫_{lo}^{hi} f` as a coefficient of `√s`.
    pub fn integral(&self, lo: &Q, hi: &Q) -> Q {
        self.cumulative(hi) - self.cumulative(lo)
    }

    /// `x ↦ f(x/λ)`.
    pub fn dilate(&self, lambda: &Q) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::InvalidParameter(
                "dilation factor must be positive".into(),
            ));
        }
        Ok(StepFunction {
            breakpoints: self.breakpoints.iter().map(|b| b * lambda).collect(),
            values: self.values.clone(),
            scale: self.scale.clone(),
        })
    }

    /// `(f⋆f)(x) = ∫ f(t) f(x+t) dt`, exactly.
    pub fn autocorrelation(&self, x: &Q) -> Q {
        let nz = self.nonzero_pieces();
        let mut acc = Q::zero();
        for &(a0, a1, va) in &nz {
            for &(b0, b1, vb) in &nz {
                let len = overlap(a0, a1, &(b0 - x), &(b1 - x));
                if !len.is_zero() {
                    acc += va * vb * len;
                }
            }
        }
        acc * self.radicand()
    }

    /// `(f*f)(x) = ∫ f(t) f(x−t) dt`, exactly.
    pub fn autoconvolution(&self, x: &Q) -> Q {
        let nz = self.nonzero_pieces();
        let mut acc = Q::zero();
        for &(a0, a1, va) in &nz {
            for &(b0, b1, vb) in &nz {
                let len = overlap(a0, a1, &(x - b1), &(x - b0));
                if !len.is_zero() {
                    acc += va * vb * len;
                }
            }
        }
        acc * self.radicand()
    }

    /// Points where `f⋆f` can change slope, restricted to `[lo, hi]`, plus the endpoints.
    fn correlation_kinks(&self, lo: &Q, hi: &Q) -> Vec<Q> {
        let mut xs = vec![lo.clone(), hi.clone()];
        for a in &self.breakpoints {
            for b in &self.breakpoints {
                let d = b - a;
                if &d >= lo && &d <= hi {
                    xs.push(d);
                }
            }
        }
        xs.sort();
        xs.dedup();
        xs
    }

    /// Minimum of `f⋆f` over `[lo, hi]`; ties go to the smallest point.
    ///
    /// `f⋆f` is piecewise linear with kinks at differences of breakpoints,
    /// so evaluating those differences and the endpoints is exact.
    pub fn autocorrelation_min(&self, lo: &Q, hi: &Q, exec: Execution) -> Extremum {
        let xs = self.correlation_kinks(lo, hi);
        self.min_over(xs, exec, ExtremumMethod::Breakpoints)
    }

    /// Minimum of `f⋆f` over `[0, 1]` using the grid `j/N` when every
    /// breakpoint lies on that grid; otherwise falls back to
    /// [`StepFunction::autocorrelation_min`].
    pub fn autocorrelation_min_grid(&self, n: u64, exec: Execution) -> Extremum {
        let on_grid = n > 0
            && self
                .breakpoints
                .iter()
                .all(|b| (b * q(n as i64)).is_integer());
        if !on_grid {
            return self.autocorrelation_min(&q(0), &q(1), exec);
        }
        let xs: Vec<Q> = (0..=n as i64).map(|j| q_frac(j, n as i64)).collect();
        self.min_over(xs, exec, ExtremumMethod::Grid)
    }

    fn min_over(&self, xs: Vec<Q>, exec: Execution, method: ExtremumMethod) -> Extremum {
        let vals = exec.map_slice(&xs, |x| self.autocorrelation(x));
        let (i, v) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .expect("at least the endpoints");
        Extremum {
            value: v.clone(),
            at: xs[i].clone(),
            method,
        }
    }

    /// Maximum of `f*f` over the real line; attained at a sum of breakpoints.
    pub fn autoconvolution_max(&self, exec: Execution) -> Extremum {
        let mut xs: Vec<Q> = Vec::new();
        for a in &self.breakpoints {
            for b in &self.breakpoints {
                xs.push(a + b);
            }
        }
        xs.sort();
        xs.dedup();
        if xs.is_empty() {
            return Extremum {
                value: Q::zero(),
                at: Q::zero(),
                method: ExtremumMethod::Breakpoints,
            };
        }
        let vals = exec.map_slice(&xs, |x| self.autoconvolution(x));
        let (i, v) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty");
        Extremum {
            value: v.clone(),
            at: xs[i].clone(),
            method: ExtremumMethod::Breakpoints,
        }
    }

    /// Checks `supp f ⊆ [0, 1]` and `f*f ≤ 1` everywhere.
    pub fn convolution_family_check(&self, exec: Execution) -> Result<ConvolutionVerdict> {
        if let Some((lo, hi)) = self.support() {
            if lo < q(0) || hi > q(1) {
                return Err(Error::SupportOutsideUnit);
            }
        }
        let max = self.autoconvolution_max(exec);
        let in_family = max.value <= q(1);
        Ok(ConvolutionVerdict { max, in_family })
    }

    /// `f⋆f ≥ 1` on `[0, 1]`.
    pub fn in_correlation_family(&self, exec: Execution) -> (bool, Extremum) {
        let m = self.autocorrelation_min(&q(0), &q(1), exec);
        (m.value >= q(1), m)
    }
}

/// `f = √(N/g)` on `⋃_{a∈A} [a/N, (a+1)/N)` and 0 elsewhere.
///
/// Runs of consecutive elements become single pieces; gaps are zero pieces.
pub fn set_to_step(a: &IntSet, g: u64, n: u64) -> Result<StepFunction> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if g == 0 || n == 0 {
        return Err(Error::InvalidParameter("g and N must be positive".into()));
    }
    let den = n as i64;
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    let el = a.elements();
    let mut i = 0;
    while i < el.len() {
        let start = el[i];
        let mut end = start + 1;
        while i + 1 < el.len() && el[i + 1] == end {
            i += 1;
            end += 1;
        }
        if let Some(last) = breakpoints.last() {
            if *last != q_frac(start, den) {
                values.push(Q::zero());
                breakpoints.push(q_frac(start, den));
            }
        } else {
            breakpoints.push(q_frac(start, den));
        }
        values.push(Q::one());
        breakpoints.push(q_frac(end, den));
        i += 1;
    }
    StepFunction::new(breakpoints, values, Some(q_frac(n as i64, g as i64)))
}

#[derive(Serialize, Deserialize)]
struct ScaleJson {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    #[serde(with = "qvec")]
    breakpoints: Vec<Q>,
    #[serde(with = "qvec")]
    values: Vec<Q>,
    scale_sqrt: Option<ScaleJson>,
}

pub(crate) fn scale_to_json(s: Option<&Q>) -> Option<(i64, i64)> {
    s.map(|s| {
        (
            s.numer().to_i64().expect("radicand numerator fits in i64"),
            s.denom()
                .to_i64()
                .expect("radicand denominator fits in i64"),
        )
    })
}

pub(crate) fn scale_from_json(num: i64, den: i64) -> Result<Q> {
    if den == 0 {
        return Err(Error::Parse("zero denominator in scale_sqrt".into()));
    }
    Ok(Q::new(BigInt::from(num), BigInt::from(den)))
}

impl Serialize for StepFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepJson {
            breakpoints: self.breakpoints.clone(),
            values: self.values.clone(),
            scale_sqrt: scale_to_json(self.scale.as_ref()).map(|(num, den)| ScaleJson { num, den }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = StepJson::deserialize(d)?;
        let scale = raw
            .scale_sqrt
            .map(|s| scale_from_json(s.num, s.den))
            .transpose()
            .map_err(serde::de::Error::custom)?;
        StepFunction::new(raw.breakpoints, raw.values, scale).map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Extremum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}
