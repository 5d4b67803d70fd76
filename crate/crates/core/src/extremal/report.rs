//! Ratio tables `value/√(gN)` and `value/√(g|G|)` with consistency flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::extremal::{ExtremalResult, Quantity};
use crate::rational::{q, SqrtScaled};
use crate::sets::{trivial_bounds, BoundTarget, BoundsLedger, TrivialBounds};

pub const CSV_HEADER: &str = "quantity,g,param,value,ratio,flag";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Flag {
    Ok,
    /// An exhaustive `η` below the lower end of the `τ` interval.
    Fatal,
    /// The value violates its trivial bound.
    Bound,
    /// The value decreases where the quantity is monotone.
    Nonmonotone,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Ok => "ok",
            Flag::Fatal => "FATAL",
            Flag::Bound => "BOUND",
            Flag::Nonmonotone => "NONMONOTONE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub quantity: Quantity,
    pub g: u64,
    /// `N`, or the group written as `Z/n1Z x Z/n2Z ...`.
    pub param: String,
    pub value: u64,
    #[serde(serialize_with = "six_decimals")]
    pub ratio: f64,
    pub exhaustive: bool,
    pub flag: Flag,
}

fn six_decimals<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((x * 1e6).round() / 1e6)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioTable {
    pub tau_lower: String,
    pub rows: Vec<RatioRow>,
    pub flagged: usize,
}

impl RatioTable {
    pub fn is_clean(&self) -> bool {
        self.flagged == 0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.6},{}",
                r.quantity.name(),
                r.g,
                r.param,
                r.value,
                r.ratio,
                r.flag.as_str()
            );
        }
        out
    }
}

/// `gN` for interval quantities, `g|G|` for group quantities.
fn normaliser(r: &ExtremalResult) -> u64 {
    r.g * r.size_param()
}

fn param(r: &ExtremalResult) -> String {
    match (&r.n, &r.group) {
        (Some(n), _) => n.to_string(),
        (None, Some(g)) => g.to_string(),
        _ => String::new(),
    }
}

fn respects_trivial_bound(r: &ExtremalResult) -> bool {
    let target = match (&r.n, &r.group) {
        (Some(n), _) => BoundTarget::Interval(*n),
        (None, Some(g)) => BoundTarget::Group(g.clone()),
        _ => return false,
    };
    match (r.quantity, trivial_bounds(r.g, &target)) {
        (Quantity::Eta, Ok(TrivialBounds::Interval(b))) => r.value >= b.eta_lb,
        (Quantity::Beta, Ok(TrivialBounds::Interval(b))) => r.value <= b.beta_ub,
        (Quantity::Gamma, Ok(TrivialBounds::Group(b))) => r.value >= b.gamma_lb,
        (Quantity::Alpha, Ok(TrivialBounds::Group(b))) => r.value <= b.alpha_ub,
        _ => false,
    }
}

/// `value ≥ τ_lo·√(gN)`, decided by squaring.
fn above_tau(r: &ExtremalResult, ledger: &BoundsLedger) -> bool {
    let rhs = SqrtScaled::new(
        ledger.tau_lower().clone(),
        q(r.g as i64 * r.size_param() as i64),
    );
    rhs.cmp_rational(&q(r.value as i64)).is_le()
}

/// Marks results whose value drops as a monotone parameter grows. Only
/// exhaustive results are compared, since the others are one-sided bounds.
fn monotonicity_violations(results: &[ExtremalResult]) -> Vec<bool> {
    let mut bad = vec![false; results.len()];
    // (quantity, fixed parameter, varying parameter) groupings.
    let mut chains: BTreeMap<(Quantity, u8, String), Vec<(u64, usize)>> = BTreeMap::new();
    for (i, r) in results.iter().enumerate() {
        if !r.exhaustive {
            continue;
        }
        match r.quantity {
            Quantity::Eta | Quantity::Beta => {
                chains
                    .entry((r.quantity, 0, format!("g={}", r.g)))
                    .or_default()
                    .push((r.size_param(), i));
                chains
                    .entry((r.quantity, 1, param(r)))
                    .or_default()
                    .push((r.g, i));
            }
            Quantity::Gamma | Quantity::Alpha => {
                chains
                    .entry((r.quantity, 1, param(r)))
                    .or_default()
                    .push((r.g, i));
            }
        }
    }
    // All four quantities are nondecreasing in each parameter.
    for (_, mut chain) in chains {
        chain.sort();
        for w in chain.windows(2) {
            let (a, b) = (&results[w[0].1], &results[w[1].1]);
            if w[0].0 < w[1].0 && b.value < a.value {
                bad[w[1].1] = true;
            }
        }
    }
    bad
}

pub fn ratio_report(results: &[ExtremalResult], ledger: &BoundsLedger) -> RatioTable {
    let nonmono = monotonicity_violations(results);
    let rows: Vec<RatioRow> = results
        .iter()
        .zip(nonmono)
        .map(|(r, nonmono)| {
            let flag = if r.quantity == Quantity::Eta && r.exhaustive && !above_tau(r, ledger) {
                Flag::Fatal
            } else if !respects_trivial_bound(r) {
                Flag::Bound
            } else if nonmono {
                Flag::Nonmonotone
            } else {
                Flag::Ok
            };
            RatioRow {
                quantity: r.quantity,
                g: r.g,
                param: param(r),
                value: r.value,
                ratio: r.value as f64 / (normaliser(r) as f64).sqrt(),
                exhaustive: r.exhaustive,
                flag,
            }
        })
        .collect();
    let flagged = rows.iter().filter(|r| r.flag != Flag::Ok).count();
    RatioTable {
        tau_lower: ledger.tau_lower().to_string(),
        rows,
        flagged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{eta_exact, gamma_exact, ExtremalWitness, SearchConfig};
    use crate::sets::{GroupSpec, IntSet};

    fn fake_eta(g: u64, n: u64, value: u64) -> ExtremalResult {
        ExtremalResult {
            quantity: Quantity::Eta,
            g,
            n: Some(n),
            group: None,
            value,
            witness: ExtremalWitness::Int(IntSet::new((0..value as i64).collect()).unwrap()),
            exhaustive: true,
            nodes: 0,
            window: None,
        }
    }

    #[test]
    fn examples() {
        let cfg = SearchConfig::default();
        let rows = vec![
            eta_exact(1, 1, &cfg).unwrap(),
            eta_exact(1, 3, &cfg).unwrap(),
            gamma_exact(1, &GroupSpec::cyclic(7).unwrap(), &cfg).unwrap(),
        ];
        let t = ratio_report(&rows, &BoundsLedger::default());
        assert!(t.is_clean());
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "eta,1,1,2,2.000000,ok");
        assert_eq!(lines[2], "eta,1,3,3,1.732051,ok");
        assert_eq!(lines[3], "gamma,1,Z/7Z,3,1.133893,ok");
    }

    #[test]
    fn flags() {
        let ledger = BoundsLedger::default();
        // 3 < 1.56·√4 = 3.12.
        let t = ratio_report(&[fake_eta(1, 4, 3)], &ledger);
        assert_eq!(t.rows[0].flag, Flag::Fatal);
        let mut r = fake_eta(1, 4, 3);
        r.exhaustive = false;
        // Not exhaustive, and 3 ≥ ⌈√8⌉.
        assert!(ratio_report(&[r.clone()], &ledger).is_clean());
        r.value = 2;
        assert_eq!(ratio_report(&[r], &ledger).rows[0].flag, Flag::Bound);
        let t = ratio_report(&[fake_eta(1, 5, 5), fake_eta(1, 6, 4)], &ledger);
        assert_eq!(t.rows[1].flag, Flag::Nonmonotone);
        assert_eq!(t.flagged, 1);
    }
}
