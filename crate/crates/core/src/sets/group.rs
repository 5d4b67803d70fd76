use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `Z/n_1 × … × Z/n_d` in invariant-factor form.
///
/// Elements are addressed by a mixed-radix index in `0..order`, with the last
/// coordinate varying fastest, so index order is lexicographic order on
/// coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl GroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no invariant factors".into()));
        }
        if let Some(&n) = factors.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!(
                "factor {n} must be at least 1"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(GroupSpec {
            factors,
            strides,
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        GroupSpec::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// Index of a coordinate vector, reducing each coordinate.
    pub fn encode(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(Error::ElementOutsideGroup {
                element: format!("{coords:?}"),
                factors: self.factors.clone(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&x, &n), &s)| x.rem_euclid(n as i64) as usize * s)
            .sum())
    }

    pub fn decode(&self, index: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((index / s) % n as usize) as u64)
            .collect()
    }

    pub fn coord(&self, index: usize, axis: usize) -> u64 {
        ((index / self.strides[axis]) % self.factors[axis] as usize) as u64
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.is_cyclic() {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| {
                let n = n as usize;
                (((a / s) % n + (b / s) % n) % n) * s
            })
            .sum()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        if self.is_cyclic() {
            return if a >= b { a - b } else { a + self.order - b };
        }
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| {
                let n = n as usize;
                (((a / s) % n + n - (b / s) % n) % n) * s
            })
            .sum()
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    /// Order of the element with the given index.
    pub fn element_order(&self, a: usize) -> u64 {
        self.factors
            .iter()
            .enumerate()
            .map(|(axis, &n)| {
                let x = self.coord(a, axis);
                n / num_integer::gcd(n, x)
            })
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}Z")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GroupSpec::new(Vec::<u64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A subset of a finite abelian group, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSubset {
    group: GroupSpec,
    elements: Vec<usize>,
}

impl GroupSubset {
    /// Builds a subset from element indices; repeats are rejected.
    pub fn from_indices(group: GroupSpec, mut elements: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = elements.iter().find(|&&i| i >= group.order()) {
            return Err(Error::ElementOutsideGroup {
                element: bad.to_string(),
                factors: group.factors().to_vec(),
            });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(format!("{:?}", group.decode(w[0]))));
        }
        Ok(GroupSubset { group, elements })
    }

    /// Builds a subset from coordinate vectors, reducing every coordinate.
    pub fn from_coords(group: GroupSpec, coords: &[Vec<i64>]) -> Result<Self> {
        let idx = coords
            .iter()
            .map(|c| group.encode(c))
            .collect::<Result<Vec<_>>>()?;
        GroupSubset::from_indices(group, idx)
    }

    /// A subset of `Z/nZ` given by integer representatives.
    pub fn cyclic(n: u64, residues: &[i64]) -> Result<Self> {
        let group = GroupSpec::cyclic(n)?;
        let idx = residues
            .iter()
            .map(|&r| r.rem_euclid(n as i64) as usize)
            .collect();
        GroupSubset::from_indices(group, idx)
    }

    pub fn full(group: GroupSpec) -> Self {
        let elements = (0..group.order()).collect();
        GroupSubset { group, elements }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.elements.binary_search(&index).is_ok()
    }

    pub fn coords(&self) -> Vec<Vec<u64>> {
        self.elements
            .iter()
            .map(|&i| self.group.decode(i))
            .collect()
    }

    /// Indicator vector over the whole group.
    pub fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.group.order()];
        for &i in &self.elements {
            v[i] = true;
        }
        v
    }

    pub fn translate(&self, t: usize) -> GroupSubset {
        let elements = self
            .elements
            .iter()
            .map(|&a| self.group.add(a, t))
            .collect();
        GroupSubset::from_indices(self.group.clone(), elements).expect("translation is a bijection")
    }
}

#[derive(Serialize, Deserialize)]
struct GroupSubsetJson {
    invariant_factors: Vec<u64>,
    elements: Vec<Vec<i64>>,
}

impl Serialize for GroupSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupSubsetJson {
            invariant_factors: self.group.factors().to_vec(),
            elements: self
                .coords()
                .into_iter()
                .map(|c| c.into_iter().map(|x| x as i64).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GroupSubsetJson::deserialize(d)?;
        let group = GroupSpec::new(raw.invariant_factors).map_err(serde::de::Error::custom)?;
        GroupSubset::from_coords(group, &raw.elements).map_err(serde::de::Error::custom)
    }
}
