//! `η_g(N)`: the fewest elements of a set with `r_A(m) ≥ g` for `1 ≤ m ≤ N`.
//!
//! Translate so that `min A = 0`. If two consecutive elements are more than
//! `N + 1` apart, the gap can be shrunk to `N + 1` without changing any
//! difference in `[1, N]`. Hence some minimal set has all gaps in
//! `[1, N + 1]` and diameter at most `(k−1)(N+1)`, and searching those gap
//! sequences size by size is complete.

use crate::error::{Error, Result};
use crate::extremal::{budget_share, ExtremalResult, ExtremalWitness, Quantity, SearchConfig};
use crate::sets::IntSet;

struct Search {
    n: usize,
    g: u32,
    k: usize,
    window: u64,
    reflection: bool,
    budget: u64,
    nodes: u64,
    exceeded: bool,
    elems: Vec<u64>,
    /// `r[m]` for `1 ≤ m ≤ N`.
    r: Vec<u32>,
    deficit: u64,
}

impl Search {
    fn new(n: usize, g: u32, k: usize, window: u64, reflection: bool, budget: u64) -> Self {
        Search {
            n,
            g,
            k,
            window,
            reflection,
            budget,
            nodes: 0,
            exceeded: false,
            elems: Vec::with_capacity(k),
            r: vec![0; n + 1],
            deficit: g as u64 * n as u64,
        }
    }

    fn push(&mut self, x: u64) {
        for &a in self.elems.iter().rev() {
            let d = (x - a) as usize;
            if d > self.n {
                break;
            }
            self.r[d] += 1;
            if self.r[d] <= self.g {
                self.deficit -= 1;
            }
        }
        self.elems.push(x);
    }

    fn pop(&mut self) {
        let x = self.elems.pop().expect("nonempty");
        for &a in self.elems.iter().rev() {
            let d = (x - a) as usize;
            if d > self.n {
                break;
            }
            if self.r[d] <= self.g {
                self.deficit += 1;
            }
            self.r[d] -= 1;
        }
    }

    /// Gap sequence no larger than its reverse.
    fn canonical(&self) -> bool {
        let gaps: Vec<u64> = self.elems.windows(2).map(|w| w[1] - w[0]).collect();
        let rev: Vec<u64> = gaps.iter().rev().copied().collect();
        gaps <= rev
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return false;
        }
        let s = self.elems.len();
        if s == self.k {
            return self.deficit == 0 && (!self.reflection || self.canonical());
        }
        // Each future element adds at most one difference per earlier element.
        let j = (self.k - s) as u64;
        if self.deficit > s as u64 * j + j * (j - 1) / 2 {
            return false;
        }
        let last = *self.elems.last().expect("0 is always present");
        for gap in 1..=self.n as u64 + 1 {
            let x = last + gap;
            if x > self.window {
                break;
            }
            self.push(x);
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

struct Level {
    found: Option<Vec<u64>>,
    nodes: u64,
    exceeded: bool,
}

fn search_level(n: usize, g: u32, k: usize, window: u64, cfg: &SearchConfig) -> Level {
    if k == 1 {
        // A single point has no positive differences.
        return Level {
            found: None,
            nodes: 1,
            exceeded: false,
        };
    }
    let first_gaps = (n + 1).min(window as usize);
    let budget = budget_share(cfg.node_budget, first_gaps);
    let parts = cfg.exec.map_range(first_gaps, |i| {
        let mut s = Search::new(n, g, k, window, cfg.reflection, budget);
        s.push(0);
        s.push(i as u64 + 1);
        let ok = s.dfs();
        (ok.then(|| s.elems.clone()), s.nodes, s.exceeded)
    });
    let mut level = Level {
        found: None,
        nodes: 0,
        exceeded: false,
    };
    for (found, nodes, exceeded) in parts {
        level.nodes += nodes;
        if level.found.is_none() {
            level.found = found;
            // Budget overruns in later subtrees do not matter once a
            // lexicographically earlier subtree has succeeded.
            level.exceeded |= exceeded && level.found.is_none();
        }
    }
    level
}

/// Smallest `k` with `k(k−1)/2 ≥ gN`, the pair-counting lower bound.
fn counting_lower_bound(g: u64, n: u64) -> u64 {
    let mut k = crate::rational::isqrt_u128(2 * g as u128 * n as u128) as u64;
    while k * k.saturating_sub(1) < 2 * g * n {
        k += 1;
    }
    k.max(2)
}

pub fn eta_exact(g: u64, n: u64, cfg: &SearchConfig) -> Result<ExtremalResult> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidParameter("g and N must be at least 1".into()));
    }
    if let Some(w) = cfg.window {
        if w < n {
            return Err(Error::InvalidParameter(format!(
                "window {w} is smaller than N = {n}"
            )));
        }
    }
    let g32 = u32::try_from(g).map_err(|_| Error::InvalidParameter("g too large".into()))?;
    let nu = usize::try_from(n).map_err(|_| Error::InvalidParameter("N too large".into()))?;
    // [0, N+g−1] always works.
    let k_max = n + g;
    let mut nodes = 0u64;
    let mut complete = true;
    let mut k = counting_lower_bound(g, n);
    loop {
        let full = (k - 1) * (n + 1);
        let window = cfg.window.map_or(full, |w| w.min(full));
        let level = search_level(nu, g32, k as usize, window, cfg);
        nodes += level.nodes;
        if let Some(found) = level.found {
            return Ok(result(g, n, k, found, complete, nodes, cfg.window));
        }
        complete &= !level.exceeded && window >= full;
        if k >= k_max {
            let interval: Vec<u64> = (0..k_max).collect();
            return Ok(result(g, n, k_max, interval, false, nodes, cfg.window));
        }
        k += 1;
    }
}

fn result(
    g: u64,
    n: u64,
    k: u64,
    elems: Vec<u64>,
    exhaustive: bool,
    nodes: u64,
    window: Option<u64>,
) -> ExtremalResult {
    let set =
        IntSet::new(elems.into_iter().map(|x| x as i64).collect()).expect("distinct elements");
    ExtremalResult {
        quantity: Quantity::Eta,
        g,
        n: Some(n),
        group: None,
        value: k,
        witness: ExtremalWitness::Int(set),
        exhaustive,
        nodes,
        window,
    }
}
