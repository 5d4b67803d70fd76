//! Step functions on the torus `T^d` that are constant on the cells of a
//! finite abelian group `G = ⊕ Z/n_iZ`.
//!
//! Cell `c` is the box `∏ [c_i/n_i, (c_i+1)/n_i)` of volume `1/|G|`. The
//! function takes the value `v(c)·√s` there. Its autocorrelation at the grid
//! point of `x ∈ G` is `(s/|G|) Σ_c v(c) v(c+x)`; between grid points it is
//! multilinear in each cell, so the minimum over `T^d` is a grid value.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bridge::step::{scale_from_json, scale_to_json};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rational::{q, qvec, SqrtScaled, Q};
use crate::sets::{GroupSpec, GroupSubset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusStepFunction {
    group: GroupSpec,
    values: Vec<Q>,
    scale: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusMinimum {
    #[serde(with = "crate::rational::qstr")]
    pub value: Q,
    pub at: Vec<u64>,
}

impl TorusStepFunction {
    pub fn new(group: GroupSpec, values: Vec<Q>, scale: Option<Q>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "{} cell values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("values must be nonnegative".into()));
        }
        if scale.as_ref().is_some_and(|s| !s.is_positive()) {
            return Err(Error::InvalidParameter(
                "scale radicand must be positive".into(),
            ));
        }
        Ok(TorusStepFunction {
            group,
            values,
            scale: scale.filter(|s| !s.is_one()),
        })
    }

    pub fn constant(group: GroupSpec, value: Q) -> Result<Self> {
        let n = group.order();
        TorusStepFunction::new(group, vec![value; n], None)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Coefficient on the cell with the given index.
    pub fn cell_value(&self, index: usize) -> &Q {
        &self.values[index]
    }

    pub fn radicand(&self) -> Q {
        self.scale.clone().unwrap_or_else(Q::one)
    }

    /// `∫ h = (Σ v(c) / |G|) · √s`.
    pub fn l1(&self) -> SqrtScaled {
        let total: Q = self.values.iter().sum();
        SqrtScaled::new(total / q(self.group.order() as i64), self.radicand())
    }

    /// Autocorrelation at the grid point of `x`.
    pub fn autocorrelation_at_index(&self, x: usize) -> Q {
        let g = &self.group;
        let mut acc = Q::zero();
        for (c, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                let w = &self.values[g.add(c, x)];
                if !w.is_zero() {
                    acc += v * w;
                }
            }
        }
        acc * self.radicand() / q(g.order() as i64)
    }

    /// Autocorrelation at a rational point of `T^d` (coordinates taken mod 1).
    pub fn autocorrelation_at(&self, point: &[Q]) -> Result<Q> {
        let g = &self.group;
        let f = g.factors();
        if point.len() != f.len() {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, the torus has {}",
                point.len(),
                f.len()
            )));
        }
        let mut base = Vec::with_capacity(f.len());
        let mut frac = Vec::with_capacity(f.len());
        for (t, &n) in point.iter().zip(f) {
            let scaled = t * q(n as i64);
            let fl = scaled.floor();
            base.push(fl.to_integer());
            frac.push(scaled - fl);
        }
        let mut acc = Q::zero();
        for corner in 0..(1usize << f.len()) {
            let mut weight = Q::one();
            let mut coords = Vec::with_capacity(f.len());
            for k in 0..f.len() {
                let up = corner >> k & 1 == 1;
                weight *= if up {
                    frac[k].clone()
                } else {
                    Q::one() - &frac[k]
                };
                let c = &base[k] + if up { 1 } else { 0 };
                coords.push(num_traits::ToPrimitive::to_i64(&c).expect("coordinate fits in i64"));
            }
            if !weight.is_zero() {
                acc += weight * self.autocorrelation_at_index(g.encode(&coords)?);
            }
        }
        Ok(acc)
    }

    /// Minimum over the torus; ties go to the smallest index.
    pub fn min_autocorrelation(&self, exec: Execution) -> TorusMinimum {
        let vals = exec.map_range(self.group.order(), |x| self.autocorrelation_at_index(x));
        let mut best = 0;
        for (i, v) in vals.iter().enumerate() {
            if *v < vals[best] {
                best = i;
            }
        }
        TorusMinimum {
            value: vals[best].clone(),
            at: self.group.decode(best),
        }
    }

    /// When `min h⋆h ≥ 1`, whether `∫ h ≥ 1` as Cauchy–Schwarz demands.
    /// `None` when the premise fails.
    pub fn cauchy_schwarz_check(&self, exec: Execution) -> Option<bool> {
        let m = self.min_autocorrelation(exec);
        (m.value >= Q::one()).then(|| self.l1().cmp_rational(&Q::one()) != Ordering::Less)
    }
}

/// `h = √(|G|/g)` on the cells of `A` and 0 elsewhere.
pub fn group_set_to_torus(a: &GroupSubset, g: u64) -> Result<TorusStepFunction> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    let n = a.group().order();
    let mut values = vec![Q::zero(); n];
    for &i in a.indices() {
        values[i] = Q::one();
    }
    TorusStepFunction::new(
        a.group().clone(),
        values,
        Some(Q::new((n as i64).into(), (g as i64).into())),
    )
}

#[derive(Serialize, Deserialize)]
struct ScaleJson {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct TorusJson {
    invariant_factors: Vec<u64>,
    elements: Vec<Vec<u64>>,
    #[serde(with = "qvec")]
    cell_values: Vec<Q>,
    scale_sqrt: Option<ScaleJson>,
}

impl Serialize for TorusStepFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let support: Vec<usize> = (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect();
        TorusJson {
            invariant_factors: self.group.factors().to_vec(),
            elements: support.iter().map(|&i| self.group.decode(i)).collect(),
            cell_values: support.iter().map(|&i| self.values[i].clone()).collect(),
            scale_sqrt: scale_to_json(self.scale.as_ref()).map(|(num, den)| ScaleJson { num, den }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusStepFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TorusJson::deserialize(d)?;
        let build = || -> Result<TorusStepFunction> {
            let group = GroupSpec::new(raw.invariant_factors)?;
            if raw.elements.len() != raw.cell_values.len() {
                return Err(Error::Parse(
                    "elements and cell_values differ in length".into(),
                ));
            }
            let mut values = vec![Q::zero(); group.order()];
            for (e, v) in raw.elements.iter().zip(raw.cell_values) {
                if e.len() != group.rank() || e.iter().zip(group.factors()).any(|(c, n)| c >= n) {
                    return Err(Error::ElementOutsideGroup {
                        element: format!("{e:?}"),
                        factors: group.factors().to_vec(),
                    });
                }
                let coords: Vec<i64> = e.iter().map(|&c| c as i64).collect();
                values[group.encode(&coords)?] = v;
            }
            let scale = raw
                .scale_sqrt
                .map(|s| scale_from_json(s.num, s.den))
                .transpose()?;
            TorusStepFunction::new(group, values, scale)
        };
        build().map_err(serde::de::Error::custom)
    }
}
