//! `γ_g(G)`: the fewest elements of `A ⊆ G` with `r_A(x) ≥ g` for every `x`.
//!
//! `r_A` is translation invariant, so `0 ∈ A` is assumed.

use crate::error::{Error, Result};
use crate::extremal::{budget_share, ExtremalResult, ExtremalWitness, Quantity, SearchConfig};
use crate::sets::{GroupSpec, GroupSubset};

struct Search<'a> {
    group: &'a GroupSpec,
    g: u32,
    k: usize,
    budget: u64,
    nodes: u64,
    exceeded: bool,
    elems: Vec<usize>,
    r: Vec<u32>,
    /// `Σ_{x≠0} max(0, g − r(x))`.
    deficit: u64,
}

impl<'a> Search<'a> {
    fn new(group: &'a GroupSpec, g: u32, k: usize, budget: u64) -> Self {
        let n = group.order();
        Search {
            group,
            g,
            k,
            budget,
            nodes: 0,
            exceeded: false,
            elems: Vec::with_capacity(k),
            r: vec![0; n],
            deficit: g as u64 * (n as u64 - 1),
        }
    }

    fn bump(&mut self, d: usize) {
        self.r[d] += 1;
        if self.r[d] <= self.g {
            self.deficit -= 1;
        }
    }

    fn unbump(&mut self, d: usize) {
        if self.r[d] <= self.g {
            self.deficit += 1;
        }
        self.r[d] -= 1;
    }

    fn push(&mut self, y: usize) {
        for i in 0..self.elems.len() {
            let a = self.elems[i];
            self.bump(self.group.sub(y, a));
            self.bump(self.group.sub(a, y));
        }
        self.elems.push(y);
    }

    fn pop(&mut self) {
        let y = self.elems.pop().expect("nonempty");
        for i in 0..self.elems.len() {
            let a = self.elems[i];
            self.unbump(self.group.sub(y, a));
            self.unbump(self.group.sub(a, y));
        }
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return false;
        }
        let s = self.elems.len();
        if s == self.k {
            return self.deficit == 0;
        }
        let j = (self.k - s) as u64;
        if self.deficit > 2 * s as u64 * j + j * (j - 1) {
            return false;
        }
        let n = self.group.order();
        let last = *self.elems.last().expect("0 is always present");
        for y in last + 1..n {
            if n - y < j as usize {
                break;
            }
            self.push(y);
            if self.dfs() {
                return true;
            }
            self.pop();
            if self.exceeded {
                return false;
            }
        }
        false
    }
}

/// Smallest `k ≥ g` with `k(k−1) ≥ g(|G|−1)`.
fn lower_bound(g: u64, order: u64) -> u64 {
    let m = g * (order - 1);
    let mut k = crate::rational::isqrt_u128(m as u128) as u64;
    while k * k.saturating_sub(1) < m {
        k += 1;
    }
    k.max(g).max(1)
}

pub fn gamma_exact(g: u64, group: &GroupSpec, cfg: &SearchConfig) -> Result<ExtremalResult> {
    let n = group.order();
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    if g > n as u64 {
        return Err(Error::GExceedsOrder { g, order: n as u64 });
    }
    let g32 = g as u32;
    let mut nodes = 0u64;
    let mut complete = true;
    let mut k = lower_bound(g, n as u64);
    loop {
        if k as usize >= n {
            let full = GroupSubset::full(group.clone());
            return Ok(result(g, group, full, complete, nodes));
        }
        let (found, level_nodes, exceeded) = if k == 1 {
            let mut s = Search::new(group, g32, 1, 1);
            s.push(0);
            (s.dfs().then(|| s.elems.clone()), 1, false)
        } else {
            let seconds = n - 1;
            let budget = budget_share(cfg.node_budget, seconds);
            let parts = cfg.exec.map_range(seconds, |i| {
                let mut s = Search::new(group, g32, k as usize, budget);
                s.push(0);
                s.push(i + 1);
                let ok = s.dfs();
                (ok.then(|| s.elems.clone()), s.nodes, s.exceeded)
            });
            let mut found = None;
            let mut nodes = 0;
            let mut exceeded = false;
            for (f, c, e) in parts {
                nodes += c;
                if found.is_none() {
                    exceeded |= e && f.is_none();
                    found = f;
                }
            }
            (found, nodes, exceeded)
        };
        nodes += level_nodes;
        if let Some(elems) = found {
            let set = GroupSubset::from_indices(group.clone(), elems)?;
            return Ok(result(g, group, set, complete, nodes));
        }
        complete &= !exceeded;
        k += 1;
    }
}

fn result(
    g: u64,
    group: &GroupSpec,
    set: GroupSubset,
    exhaustive: bool,
    nodes: u64,
) -> ExtremalResult {
    ExtremalResult {
        quantity: Quantity::Gamma,
        g,
        n: None,
        group: Some(group.clone()),
        value: set.len() as u64,
        witness: ExtremalWitness::Group(set),
        exhaustive,
        nodes,
        window: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Execution;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn examples() {
        let r = gamma_exact(1, &cyc(7), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 3);
        match &r.witness {
            ExtremalWitness::Group(a) => assert_eq!(a.indices(), &[0, 1, 3]),
            _ => unreachable!(),
        }
        assert!(r.exhaustive && r.verify_witness().unwrap());
        assert_eq!(
            gamma_exact(1, &cyc(2), &SearchConfig::default())
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            gamma_exact(5, &cyc(5), &SearchConfig::default())
                .unwrap()
                .value,
            5
        );
        assert_eq!(
            gamma_exact(1, &cyc(1), &SearchConfig::default())
                .unwrap()
                .value,
            1
        );
        assert!(matches!(
            gamma_exact(8, &cyc(7), &SearchConfig::default()),
            Err(Error::GExceedsOrder { .. })
        ));
    }

    /// Brute force over all subsets containing 0.
    fn oracle(g: u64, group: &GroupSpec) -> u64 {
        let n = group.order();
        let mut best = n as u64;
        for mask in 0u64..(1 << (n - 1)) {
            let elems: Vec<usize> = std::iter::once(0)
                .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1))
                .collect();
            if elems.len() as u64 >= best {
                continue;
            }
            let ok = (0..n).all(|x| {
                elems
                    .iter()
                    .filter(|&&a| elems.contains(&group.add(a, x)))
                    .count() as u64
                    >= g
            });
            if ok {
                best = elems.len() as u64;
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        for factors in [
            vec![4],
            vec![2, 2],
            vec![6],
            vec![8],
            vec![2, 4],
            vec![9],
            vec![3, 3],
            vec![12],
        ] {
            let group = GroupSpec::new(factors).unwrap();
            for g in 1..=3.min(group.order() as u64) {
                let r = gamma_exact(g, &group, &SearchConfig::default()).unwrap();
                assert_eq!(r.value, oracle(g, &group), "{group} g={g}");
                assert!(r.verify_witness().unwrap());
                let seq = SearchConfig {
                    exec: Execution::Sequential,
                    ..SearchConfig::default()
                };
                assert_eq!(gamma_exact(g, &group, &seq).unwrap(), r);
            }
        }
    }
}
