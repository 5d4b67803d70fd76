//! `β_g(N)` and `α_g(G)`: the largest sets with `q_A ≤ g` everywhere.
//!
//! Branch and bound over sets listed in increasing order. A subtree is cut
//! when even taking every remaining candidate cannot beat the subtree's own
//! incumbent, or cannot reach the greedy lower bound computed up front. The
//! greedy bound is deterministic, so the search does not depend on the
//! schedule.

use crate::error::{Error, Result};
use crate::extremal::{budget_share, ExtremalResult, ExtremalWitness, Quantity, SearchConfig};
use crate::sets::{GroupSpec, GroupSubset, IntSet};

/// The ambient structure: sums of candidates `0..len` and their count table.
trait SumSpace: Sync {
    fn candidates(&self) -> usize;
    fn table_len(&self) -> usize;
    fn sum(&self, a: usize, b: usize) -> usize;
}

/// `[1, N]` with candidate `c` standing for `c + 1`; sums are shifted by 2.
struct Interval(usize);

impl SumSpace for Interval {
    fn candidates(&self) -> usize {
        self.0
    }
    fn table_len(&self) -> usize {
        2 * self.0 - 1
    }
    fn sum(&self, a: usize, b: usize) -> usize {
        a + b
    }
}

impl SumSpace for GroupSpec {
    fn candidates(&self) -> usize {
        self.order()
    }
    fn table_len(&self) -> usize {
        self.order()
    }
    fn sum(&self, a: usize, b: usize) -> usize {
        self.add(a, b)
    }
}

struct Search<'a, S: SumSpace> {
    space: &'a S,
    g: u32,
    q: Vec<u32>,
    elems: Vec<usize>,
    best: Vec<usize>,
    /// Subtrees that cannot reach this size are cut.
    floor: usize,
    budget: u64,
    nodes: u64,
    exceeded: bool,
}

impl<'a, S: SumSpace> Search<'a, S> {
    fn new(space: &'a S, g: u32, floor: usize, budget: u64) -> Self {
        Search {
            space,
            g,
            q: vec![0; space.table_len()],
            elems: Vec::new(),
            best: Vec::new(),
            floor,
            budget,
            nodes: 0,
            exceeded: false,
        }
    }

    /// The sums `x + a` for `a ∈ A ∪ {x}` are pairwise distinct, so each
    /// table entry is touched once.
    fn fits(&self, x: usize) -> bool {
        self.q[self.space.sum(x, x)] < self.g
            && self
                .elems
                .iter()
                .all(|&a| self.q[self.space.sum(x, a)] + 2 <= self.g)
    }

    fn push(&mut self, x: usize) {
        for i in 0..self.elems.len() {
            let s = self.space.sum(x, self.elems[i]);
            self.q[s] += 2;
        }
        let s = self.space.sum(x, x);
        self.q[s] += 1;
        self.elems.push(x);
    }

    fn pop(&mut self) {
        let x = self.elems.pop().expect("nonempty");
        for i in 0..self.elems.len() {
            let s = self.space.sum(x, self.elems[i]);
            self.q[s] -= 2;
        }
        let s = self.space.sum(x, x);
        self.q[s] -= 1;
    }

    fn dfs(&mut self, start: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return;
        }
        if self.elems.len() > self.best.len() {
            self.best = self.elems.clone();
        }
        let n = self.space.candidates();
        for x in start..n {
            let reach = self.elems.len() + (n - x);
            if reach <= self.best.len() || reach < self.floor {
                break;
            }
            if self.fits(x) {
                self.push(x);
                self.dfs(x + 1);
                self.pop();
                if self.exceeded {
                    return;
                }
            }
        }
    }
}

fn greedy<S: SumSpace>(space: &S, g: u32, first: usize) -> Vec<usize> {
    let mut s = Search::new(space, g, 0, u64::MAX);
    for x in first..space.candidates() {
        if s.fits(x) {
            s.push(x);
        }
    }
    s.elems
}

struct Outcome {
    best: Vec<usize>,
    nodes: u64,
    exhaustive: bool,
}

/// Maximum over sets whose smallest candidate is `fixed_first`, or any
/// smallest candidate when `None`.
fn maximize<S: SumSpace>(
    space: &S,
    g: u32,
    fixed_first: Option<usize>,
    cfg: &SearchConfig,
) -> Outcome {
    let n = space.candidates();
    let lower = greedy(space, g, fixed_first.unwrap_or(0));
    let floor = lower.len();
    // Subtrees are keyed by the first free choice.
    let (prefix, roots): (Vec<usize>, Vec<usize>) = match fixed_first {
        Some(f) => (vec![f], (f + 1..n).collect()),
        None => (Vec::new(), (0..n).collect()),
    };
    let budget = budget_share(cfg.node_budget, roots.len().max(1));
    let parts = cfg.exec.map_slice(&roots, |&root| {
        let mut s = Search::new(space, g, floor, budget);
        for &p in &prefix {
            s.push(p);
        }
        if !s.fits(root) {
            return (Vec::new(), 1, false);
        }
        s.push(root);
        s.dfs(root + 1);
        (s.best, s.nodes, s.exceeded)
    });
    let mut best = prefix.clone();
    let mut nodes = 1;
    let mut exhaustive = true;
    for (b, c, e) in parts {
        nodes += c;
        exhaustive &= !e;
        if b.len() > best.len() {
            best = b;
        }
    }
    if best.len() < floor {
        best = lower;
    }
    Outcome {
        best,
        nodes,
        exhaustive,
    }
}

pub fn beta_exact(g: u64, n: u64, cfg: &SearchConfig) -> Result<ExtremalResult> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidParameter("g and N must be at least 1".into()));
    }
    let g32 = u32::try_from(g.min(u32::MAX as u64 / 2)).expect("clamped");
    let space = Interval(n as usize);
    let out = maximize(&space, g32, None, cfg);
    let set = IntSet::new(out.best.iter().map(|&c| c as i64 + 1).collect())?;
    Ok(ExtremalResult {
        quantity: Quantity::Beta,
        g,
        n: Some(n),
        group: None,
        value: set.len() as u64,
        witness: ExtremalWitness::Int(set),
        exhaustive: out.exhaustive,
        nodes: out.nodes,
        window: None,
    })
}

/// `q_{A+t}(x) = q_A(x − 2t)`, so `0 ∈ A` is assumed.
pub fn alpha_exact(g: u64, group: &GroupSpec, cfg: &SearchConfig) -> Result<ExtremalResult> {
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    let g32 = u32::try_from(g.min(u32::MAX as u64 / 2)).expect("clamped");
    let out = maximize(group, g32, Some(0), cfg);
    let set = GroupSubset::from_indices(group.clone(), out.best)?;
    Ok(ExtremalResult {
        quantity: Quantity::Alpha,
        g,
        n: None,
        group: Some(group.clone()),
        value: set.len() as u64,
        witness: ExtremalWitness::Group(set),
        exhaustive: out.exhaustive,
        nodes: out.nodes,
        window: None,
    })
}
