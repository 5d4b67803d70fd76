use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite set of integers, stored strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSet {
    elements: Vec<i64>,
}

impl IntSet {
    /// Builds a set, sorting the input. Repeated values are rejected.
    pub fn new(mut elements: Vec<i64>) -> Result<Self> {
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].to_string()));
        }
        Ok(IntSet { elements })
    }

    /// Builds a set from arbitrary values, dropping repeats.
    pub fn from_unsorted(mut elements: Vec<i64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntSet { elements }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<i64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        IntSet { elements }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn translate(&self, t: i64) -> IntSet {
        IntSet::from_sorted_unchecked(self.elements.iter().map(|a| a + t).collect())
    }

    /// The reflection `max(A) + min(A) - A`, which has the same difference profile.
    pub fn reflect(&self) -> IntSet {
        let (Some(lo), Some(hi)) = (self.min(), self.max()) else {
            return self.clone();
        };
        IntSet::from_sorted_unchecked(self.elements.iter().rev().map(|a| lo + hi - a).collect())
    }

    /// True when every element lies in `[lo, hi]`.
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.min().is_none_or(|m| m >= lo) && self.max().is_none_or(|m| m <= hi)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elements.iter().copied()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        IntSet::new(v).map_err(serde::de::Error::custom)
    }
}
