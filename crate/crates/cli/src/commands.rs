use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use diffset::bridge::{
    averages_to_probs, group_set_to_torus, local_averages_with, set_to_step, AveragesOptions, AveragesSeq, ProbSeq,
    StepFunction,
};
use diffset::constructions::{
    best_shift_union_with, blow_up, cyclic_pipeline, lift_to_cyclic, monte_carlo_validate, random_group_subset_with,
    sequence_random_set_with, MonteCarloConfig, RandomModel, UnionOptions,
};
use diffset::extremal::{
    alpha_exact, beta_exact, eta_exact, gamma_exact, ratio_report, ExtremalResult, ExtremalWitness, SearchConfig,
};
use diffset::rational::{parse_rational, Q};
use diffset::sets::{
    group_rep_profile_with, rep_diff_profile_with, rep_sum_profile, trivial_bounds, verify_certificate, BoundTarget,
    BoundsLedger, CertDomain, CertMode, CertSet, GroupSpec, GroupSubset, IntSet, Mode, Verdict,
};
use diffset::Execution;

use crate::output::sha256_hex;
use crate::{
    oracle, AveragesArgs, BridgeCmd, CertModeArg, Command, ConstructCmd, GlobalArgs, Outcome, ProfileModeArg,
    RandomCmd, ReportCmd, SearchArgs, SolveCmd, TrialArgs, Violation,
};

pub(crate) struct Context {
    pub seed: u64,
    pub oracle: bool,
    pub exec: Execution,
    /// Input path → SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
}

impl Context {
    pub fn new(g: &GlobalArgs) -> Self {
        Context {
            seed: g.seed,
            oracle: g.oracle,
            exec: if g.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
            inputs: BTreeMap::new(),
        }
    }

    fn read_value(&mut self, path: &Path) -> Result<Value> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        let v: Value = serde_json::from_slice(&bytes).with_context(|| format!("{} is not valid JSON", path.display()))?;
        // Command outputs wrap their set in a "set" field; accept those too.
        Ok(match v {
            Value::Object(mut m) if m.contains_key("set") => m.remove("set").expect("checked"),
            other => other,
        })
    }

    fn read<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let v = self.read_value(path)?;
        serde_json::from_value(v).with_context(|| format!("cannot parse {}", path.display()))
    }

    fn read_set(&mut self, path: &Path) -> Result<AnySet> {
        let v = self.read_value(path)?;
        let parsed = if v.is_array() {
            serde_json::from_value(v).map(AnySet::Int)
        } else {
            serde_json::from_value(v).map(AnySet::Group)
        };
        parsed.with_context(|| format!("cannot parse a set from {}", path.display()))
    }
}

enum AnySet {
    Int(IntSet),
    Group(GroupSubset),
}

pub(crate) fn parse_group(s: &str) -> Result<GroupSpec> {
    let factors = s
        .split([',', 'x'])
        .map(|t| t.trim().parse::<u64>().map_err(|_| anyhow!("bad group factor {t:?} in {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::new(factors)?)
}

fn rational(s: &str) -> Result<Q> {
    parse_rational(s).map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

fn value<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

pub(crate) fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Outcome> {
    match cmd {
        Command::Verify { set, mode, g, n } => verify(ctx, set, *mode, *g, *n),
        Command::Profile { set, mode, lo, hi } => profile(ctx, set, *mode, *lo, *hi),
        Command::Construct(c) => construct(ctx, c),
        Command::Random(r) => random(ctx, r),
        Command::Bridge(b) => bridge(ctx, b),
        Command::Solve(s) => solve(ctx, s),
        Command::Report(r) => report(ctx, r),
        Command::Bounds { g, n, group } => bounds(*g, *n, group.as_deref()),
    }
}

fn verdict_text(what: &str, v: &Verdict) -> String {
    match (&v.passed, &v.witness) {
        (true, _) => format!("PASS {what}: achieved g = {}\n", v.achieved_g),
        (false, Some(w)) => format!("FAIL {what}: achieved g = {}, violated at {w}\n", v.achieved_g),
        (false, None) => format!("FAIL {what}: achieved g = {}\n", v.achieved_g),
    }
}

fn verify(ctx: &mut Context, path: &Path, mode: CertModeArg, g: u64, n: Option<u64>) -> Result<Outcome> {
    let set = ctx.read_set(path)?;
    let cert_mode = match mode {
        CertModeArg::Difference => CertMode::Difference,
        CertModeArg::Sidon => CertMode::Sidon,
    };
    let (verdict, what) = match (&set, n) {
        (AnySet::Int(a), Some(n)) => {
            let v = verify_certificate(CertSet::Int(a), g, CertDomain::Interval(n), cert_mode)?;
            if ctx.oracle && oracle::small_enough(a.len()) {
                let brute = match cert_mode {
                    CertMode::Difference => oracle::int_min_difference(a, n),
                    CertMode::Sidon => oracle::int_max_sum(a),
                };
                oracle::check("achieved g", v.achieved_g, brute)?;
            }
            (v, format!("{g}-{} set for [{n}]", mode_name(cert_mode)))
        }
        (AnySet::Int(_), None) => bail!("--N is required for integer sets"),
        (AnySet::Group(a), _) => {
            let v = verify_certificate(CertSet::Group(a), g, CertDomain::WholeGroup, cert_mode)?;
            if ctx.oracle && oracle::small_enough(a.len()) {
                let brute = match cert_mode {
                    CertMode::Difference => oracle::group_min_difference(a),
                    CertMode::Sidon => oracle::group_max_sum(a),
                };
                oracle::check("achieved g", v.achieved_g, brute)?;
            }
            (v, format!("{g}-{} set of {}", mode_name(cert_mode), a.group()))
        }
    };
    Ok(Outcome {
        json: json!({ "mode": cert_mode, "g": g, "N": n, "verdict": verdict }),
        text: verdict_text(&what, &verdict),
        violation: !verdict.passed,
    })
}

fn mode_name(m: CertMode) -> &'static str {
    match m {
        CertMode::Difference => "difference",
        CertMode::Sidon => "Sidon",
    }
}

fn profile(ctx: &mut Context, path: &Path, mode: ProfileModeArg, lo: Option<i64>, hi: Option<i64>) -> Result<Outcome> {
    let set = ctx.read_set(path)?;
    let prof = match set {
        AnySet::Int(a) => {
            let (min, max) = match a.elements() {
                [] => bail!("empty set"),
                e => (e[0], e[e.len() - 1]),
            };
            match mode {
                ProfileModeArg::Difference => {
                    rep_diff_profile_with(&a, lo.unwrap_or(1), hi.unwrap_or((max - min).max(1)), ctx.exec)?
                }
                ProfileModeArg::Sum => rep_sum_profile(&a, lo.unwrap_or(2 * min), hi.unwrap_or(2 * max))?,
            }
        }
        AnySet::Group(a) => {
            let m = match mode {
                ProfileModeArg::Difference => Mode::Difference,
                ProfileModeArg::Sum => Mode::Sum,
            };
            group_rep_profile_with(&a, m, ctx.exec)
        }
    };
    let text = format!(
        "{:?} profile: min {}, max {}, {} points\n",
        prof.mode,
        prof.min_count,
        prof.max_count,
        prof.counts().len()
    );
    Ok(Outcome {
        json: value(&prof)?,
        text,
        violation: false,
    })
}

fn construct(ctx: &mut Context, cmd: &ConstructCmd) -> Result<Outcome> {
    match cmd {
        ConstructCmd::Parabola {
            p,
            k,
            enumeration_cap,
            sample_targets,
        } => {
            let opts = UnionOptions {
                enumeration_cap: *enumeration_cap,
                sample_targets: *sample_targets,
                seed: ctx.seed,
                exec: ctx.exec,
            };
            let u = best_shift_union_with(*p, *k, &opts)?;
            let set = u.set();
            if ctx.oracle && oracle::small_enough(set.len()) {
                let brute = oracle::group_min_nonzero_difference(&set);
                match u.verification {
                    diffset::constructions::Verification::Exhaustive => oracle::check("verified g", u.verified_g, brute),
                    diffset::constructions::Verification::Sampled { .. } => {
                        if brute > u.verified_g {
                            Err(Violation(format!("sampled minimum {} below the true minimum {brute}", u.verified_g)).into())
                        } else {
                            Ok(())
                        }
                    }
                }?;
            }
            let text = format!(
                "p={} k={} t={} S_t={} size={} guaranteed_g={} ({:?}) verified_g={} proof_bound={} holds={}\n",
                u.p,
                u.k,
                u.t,
                u.score,
                set.len(),
                u.guaranteed_g,
                u.guarantee,
                u.verified_g,
                u.proof_bound,
                u.proof_inequality_holds
            );
            let mut j = value(&u)?;
            j["set"] = value(&set)?;
            Ok(Outcome {
                json: j,
                text,
                violation: !u.proof_inequality_holds,
            })
        }
        ConstructCmd::Lift { a, s } => {
            let a: GroupSubset = ctx.read(a)?;
            let g = oracle_or_library_group_min(&a, ctx.exec);
            let c = lift_to_cyclic(&a, *s)?;
            let verdict = verify_certificate(CertSet::Group(&c), g * (s - 1), CertDomain::WholeGroup, CertMode::Difference)?;
            if ctx.oracle && oracle::small_enough(c.len()) {
                oracle::check("lifted g", verdict.achieved_g, oracle::group_min_difference(&c))
                    ?;
            }
            let text = format!(
                "lifted {} elements to {} in {}: input g = {g}, required {} , achieved {}\n",
                a.len(),
                c.len(),
                c.group(),
                g * (s - 1),
                verdict.achieved_g
            );
            Ok(Outcome {
                json: json!({ "input_g": g, "s": s, "size": c.len(), "verdict": verdict, "set": c }),
                text,
                violation: !verdict.passed,
            })
        }
        ConstructCmd::Pipeline { k, s, p } => {
            let opts = UnionOptions {
                seed: ctx.seed,
                exec: ctx.exec,
                ..UnionOptions::default()
            };
            let r = cyclic_pipeline(*k, *s, *p, &opts)?;
            if ctx.oracle && oracle::small_enough(r.set.len()) {
                oracle::check("verified g", r.verified_g, oracle::group_min_difference(&r.set))
                    ?;
            }
            let text = format!(
                "Z/{}Z: size {} (expected {}), verified g {} (lifted guarantee {}), ratio {}\n",
                r.modulus,
                r.size,
                r.expected_size,
                r.verified_g,
                r.lifted_guarantee,
                r.ratio.map_or("n/a".into(), |x| format!("{x:.6}"))
            );
            Ok(Outcome {
                violation: r.verified_g < r.lifted_guarantee,
                json: value(&r)?,
                text,
            })
        }
        ConstructCmd::Blowup { a, n, c, q, g1, g2 } => {
            let a: IntSet = ctx.read(a)?;
            let c: GroupSubset = ctx.read(c)?;
            if let Some(q) = q {
                if c.group().order() as u64 != *q || !c.group().is_cyclic() {
                    bail!("C lives in {}, not Z/{q}Z", c.group());
                }
            }
            let g1 = match g1 {
                Some(g) => *g,
                None => rep_diff_profile_with(&a, 1, *n as i64, ctx.exec)?.min_count,
            };
            let g2 = match g2 {
                Some(g) => *g,
                None => group_rep_profile_with(&c, Mode::Difference, ctx.exec).min_count,
            };
            if g1 == 0 || g2 == 0 {
                return Err(Violation(format!("inputs are not difference sets (g1 = {g1}, g2 = {g2})")).into());
            }
            let b = blow_up(&a, g1, *n, &c, g2)?;
            let qn = c.group().order() as u64 * n;
            let verdict = verify_certificate(CertSet::Int(&b), g1 * g2, CertDomain::Interval(qn), CertMode::Difference)?;
            if ctx.oracle && oracle::small_enough(b.len()) {
                oracle::check("blow-up g", verdict.achieved_g, oracle::int_min_difference(&b, qn))
                    ?;
            }
            let text = format!(
                "B has {} elements, a {}-difference set for [{qn}] (achieved {})\n",
                b.len(),
                g1 * g2,
                verdict.achieved_g
            );
            Ok(Outcome {
                json: json!({ "g1": g1, "g2": g2, "N": qn, "size": b.len(), "verdict": verdict, "set": b }),
                text,
                violation: !verdict.passed,
            })
        }
    }
}

fn oracle_or_library_group_min(a: &GroupSubset, exec: Execution) -> u64 {
    group_rep_profile_with(a, Mode::Difference, exec).min_count
}

fn mc_config(ctx: &Context, t: &TrialArgs, trials: u64) -> Result<MonteCarloConfig> {
    Ok(MonteCarloConfig {
        trials,
        seed: ctx.seed,
        delta: rational(&t.delta)?,
        epsilon: rational(&t.epsilon)?,
        probes: t.probes,
        exec: ctx.exec,
    })
}

fn mc_outcome(report: diffset::constructions::MonteCarloReport) -> Result<Outcome> {
    let a = &report.aggregate;
    let text = format!(
        "{}: {}/{} trials succeed (rate {:.6}); sizes {}..{} (bound {:.6}); min achieved g {} (required {}); tails ok: {}\n",
        report.model,
        a.successes,
        report.trials,
        a.success_rate,
        a.min_size,
        a.max_size,
        report.thresholds.size_bound,
        a.min_achieved_g,
        report.thresholds.required_g,
        a.tails_ok
    );
    Ok(Outcome {
        json: value(&report)?,
        text,
        violation: false,
    })
}

fn random(ctx: &mut Context, cmd: &RandomCmd) -> Result<Outcome> {
    match cmd {
        RandomCmd::Group { group, g, trials } => {
            let group = parse_group(group)?;
            if let Some(t) = trials.trials {
                let model = RandomModel::Group { group, g: *g };
                return mc_outcome(monte_carlo_validate(&model, &mc_config(ctx, trials, t)?)?);
            }
            let a = random_group_subset_with(&group, *g, ctx.seed, ctx.exec)?;
            let achieved = group_rep_profile_with(&a, Mode::Difference, ctx.exec).min_count;
            let expected = ((*g * group.order() as u64) as f64).sqrt();
            Ok(Outcome {
                text: format!("{} elements of {group} (expected {expected:.6}); min r = {achieved}\n", a.len()),
                json: json!({ "seed": ctx.seed, "size": a.len(), "expected_size": expected, "achieved_g": achieved, "set": a }),
                violation: false,
            })
        }
        RandomCmd::Sequence { probs, n, tau_hat, trials } => {
            let probs: ProbSeq = ctx.read(probs)?;
            let tau_hat = rational(tau_hat)?;
            if let Some(t) = trials.trials {
                let model = RandomModel::Sequence { probs, n: *n, tau_hat };
                return mc_outcome(monte_carlo_validate(&model, &mc_config(ctx, trials, t)?)?);
            }
            let a = sequence_random_set_with(&probs, ctx.seed, ctx.exec)?;
            let achieved = if a.is_empty() {
                0
            } else {
                rep_diff_profile_with(&a, 1, *n as i64, ctx.exec)?.min_count
            };
            Ok(Outcome {
                text: format!("{} elements; min r on [1, {n}] = {achieved}\n", a.len()),
                json: json!({ "seed": ctx.seed, "N": n, "size": a.len(), "achieved_g": achieved, "set": a }),
                violation: false,
            })
        }
    }
}

fn averages(ctx: &mut Context, args: &AveragesArgs) -> Result<AveragesSeq> {
    let f: StepFunction = ctx.read(&args.function)?;
    let tau_hat = rational(&args.tau_hat)?;
    let opts = AveragesOptions {
        stretch: args.stretch,
        product_budget: args.product_budget,
        exec: ctx.exec,
    };
    Ok(local_averages_with(&f, args.n, &tau_hat, &opts)?)
}

fn bridge(ctx: &mut Context, cmd: &BridgeCmd) -> Result<Outcome> {
    match cmd {
        BridgeCmd::SetToFn { set, g, n } => {
            let a: IntSet = ctx.read(set)?;
            let f = set_to_step(&a, *g, *n)?;
            let (in_family, m) = f.in_correlation_family(ctx.exec);
            Ok(Outcome {
                text: format!(
                    "{} pieces; L1 = {}; min of the autocorrelation on [0,1] = {} at {}\n",
                    f.values().len(),
                    f.l1(),
                    m.value,
                    m.at
                ),
                json: json!({ "function": f, "l1": f.l1(), "l1_approx": f.l1().to_f64(), "min_autocorrelation": m, "in_family": in_family }),
                violation: !in_family,
            })
        }
        BridgeCmd::FnCheck { function } => {
            let f: StepFunction = ctx.read(function)?;
            let (in_family, m) = f.in_correlation_family(ctx.exec);
            let conv = match f.convolution_family_check(ctx.exec) {
                Ok(v) => value(&v)?,
                Err(diffset::Error::SupportOutsideUnit) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let mut text = format!(
                "L1 = {}; min autocorrelation on [0,1] = {} at {} ({})\n",
                f.l1(),
                m.value,
                m.at,
                if in_family { "in family" } else { "NOT in family" }
            );
            if conv.is_null() {
                text.push_str("support leaves [0,1]; autoconvolution check skipped\n");
            }
            Ok(Outcome {
                json: json!({ "l1": f.l1(), "l1_approx": f.l1().to_f64(), "min_autocorrelation": m, "in_correlation_family": in_family, "convolution": conv }),
                text,
                violation: !in_family,
            })
        }
        BridgeCmd::Averages(args) => {
            let a = averages(ctx, args)?;
            let c = &a.conditions;
            let mut text = format!(
                "N={} L={} stretch={} support={}\nsum a_i = {} (<= {}: {})\nmax a_i = {} at {} (within: {})\n",
                a.n,
                a.l,
                a.stretch_applied,
                a.support_len(),
                c.sum,
                c.sum_target,
                c.sum_within,
                c.max_a,
                c.max_at,
                c.max_within
            );
            match &c.lag {
                Some(l) => {
                    let _ = writeln!(text, "min lagged product {} at m={} (bound {}: {})", l.min, l.argmin, l.bound, l.holds);
                }
                None => text.push_str("lagged products skipped (over budget)\n"),
            }
            let violation = !c.sum_within || !c.max_within || c.lag.as_ref().is_some_and(|l| !l.holds);
            Ok(Outcome {
                json: value(&a)?,
                text,
                violation,
            })
        }
        BridgeCmd::Probs { avg, epsilon } => {
            let a = averages(ctx, avg)?;
            let p = averages_to_probs(&a)?;
            let mut j = json!({ "probs": p, "expected_size": p.total().to_f64() });
            let mut violation = false;
            let mut text = format!("{} probabilities, expected size {:.6}\n", p.weights().len(), p.total().to_f64());
            if let Some(eps) = epsilon {
                let eps = rational(eps)?;
                let check = p.correlation_check(avg.n, &eps, avg.product_budget, ctx.exec)?;
                match &check {
                    Some(c) => {
                        violation = !c.holds;
                        let _ = writeln!(text, "lagged product ratio {:.6} at m={} (holds: {})", c.ratio, c.argmin, c.holds);
                    }
                    None => text.push_str("lagged product check skipped (over budget)\n"),
                }
                j["correlation"] = value(&check)?;
            }
            Ok(Outcome { json: j, text, violation })
        }
        BridgeCmd::Torus { set, g } => {
            let a: GroupSubset = ctx.read(set)?;
            let h = group_set_to_torus(&a, *g)?;
            let m = h.min_autocorrelation(ctx.exec);
            let cs = h.cauchy_schwarz_check(ctx.exec);
            Ok(Outcome {
                text: format!("L1 = {}; min autocorrelation = {} at {:?}\n", h.l1(), m.value, m.at),
                json: json!({ "function": h, "l1": h.l1(), "l1_approx": h.l1().to_f64(), "min_autocorrelation": m, "cauchy_schwarz": cs }),
                violation: cs == Some(false),
            })
        }
    }
}

fn search_config(ctx: &Context, s: &SearchArgs) -> SearchConfig {
    SearchConfig {
        node_budget: s.budget,
        exec: ctx.exec,
        ..SearchConfig::default()
    }
}

fn result_text(r: &ExtremalResult) -> String {
    let param = match (&r.n, &r.group) {
        (Some(n), _) => format!("N={n}"),
        (_, Some(g)) => g.to_string(),
        _ => String::new(),
    };
    let witness = match &r.witness {
        ExtremalWitness::Int(a) => format!("{:?}", a.elements()),
        ExtremalWitness::Group(a) => format!("{:?}", a.coords()),
    };
    format!(
        "{} g={} {param}: {} ({}, {} nodes)\nwitness {witness}\n",
        r.quantity.name(),
        r.g,
        r.value,
        if r.exhaustive { "exhaustive" } else { "NOT exhaustive" },
        r.nodes
    )
}

fn solve(ctx: &mut Context, cmd: &SolveCmd) -> Result<Outcome> {
    let r = match cmd {
        SolveCmd::Eta {
            g,
            n,
            window,
            reflection,
            search,
        } => {
            let cfg = SearchConfig {
                window: *window,
                reflection: *reflection,
                ..search_config(ctx, search)
            };
            eta_exact(*g, *n, &cfg)?
        }
        SolveCmd::Gamma { g, group, search } => gamma_exact(*g, &parse_group(group)?, &search_config(ctx, search))?,
        SolveCmd::Beta { g, n, search } => beta_exact(*g, *n, &search_config(ctx, search))?,
        SolveCmd::Alpha { g, group, search } => alpha_exact(*g, &parse_group(group)?, &search_config(ctx, search))?,
    };
    if !r.verify_witness()? {
        return Err(Violation(format!("witness for {} does not verify", r.quantity.name())).into());
    }
    Ok(Outcome {
        text: result_text(&r),
        json: value(&r)?,
        violation: false,
    })
}

fn report(ctx: &mut Context, cmd: &ReportCmd) -> Result<Outcome> {
    let ReportCmd::Ratios {
        g_max,
        n_max,
        groups,
        search,
    } = cmd;
    let cfg = search_config(ctx, search);
    let mut results = Vec::new();
    for g in 1..=*g_max {
        for n in 1..=*n_max {
            results.push(eta_exact(g, n, &cfg)?);
        }
    }
    for g in 1..=*g_max {
        for n in 1..=*n_max {
            results.push(beta_exact(g, n, &cfg)?);
        }
    }
    for spec in groups {
        let group = parse_group(spec)?;
        for g in 1..=(*g_max).min(group.order() as u64) {
            results.push(gamma_exact(g, &group, &cfg)?);
        }
    }
    for spec in groups {
        let group = parse_group(spec)?;
        for g in 1..=*g_max {
            results.push(alpha_exact(g, &group, &cfg)?);
        }
    }
    let table = ratio_report(&results, &BoundsLedger::default());
    Ok(Outcome {
        text: table.to_csv(),
        violation: !table.is_clean(),
        json: value(&table)?,
    })
}

fn bounds(g: Option<u64>, n: Option<u64>, group: Option<&str>) -> Result<Outcome> {
    let ledger = BoundsLedger::default();
    ledger.validate()?;
    let mut j = json!({ "ledger": ledger });
    let mut text = format!(
        "sigma in [{}, {}]\ntau in ({}, {}]\ng=2 constants {} and {}\n",
        ledger.sigma_interval.0,
        ledger.sigma_interval.1,
        ledger.tau_interval.0,
        ledger.tau_interval.1,
        ledger.g2_constants.0,
        ledger.g2_constants.1
    );
    let target = match (n, group) {
        (Some(_), Some(_)) => bail!("give either --N or --group, not both"),
        (Some(n), None) => Some(BoundTarget::Interval(n)),
        (None, Some(s)) => Some(BoundTarget::Group(parse_group(s)?)),
        (None, None) => None,
    };
    if let Some(target) = target {
        let g = g.ok_or_else(|| anyhow!("--g is required with --N or --group"))?;
        let b = trivial_bounds(g, &target)?;
        j["trivial"] = value(&b)?;
        match &b {
            diffset::sets::TrivialBounds::Interval(b) => {
                let _ = writeln!(text, "eta_{g}({}) >= {}, beta_{g}({}) <= {}", b.n, b.eta_lb, b.n, b.beta_ub);
            }
            diffset::sets::TrivialBounds::Group(b) => {
                let _ = writeln!(
                    text,
                    "gamma >= {} (sharper: {}), alpha <= {}",
                    b.gamma_lb, b.gamma_lb_sharp, b.alpha_ub
                );
            }
        }
    }
    Ok(Outcome {
        json: j,
        text,
        violation: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_parsing() {
        assert_eq!(parse_group("7").unwrap().order(), 7);
        assert_eq!(parse_group("2,4").unwrap().factors(), &[2, 4]);
        assert_eq!(parse_group("2x4").unwrap().factors(), &[2, 4]);
        assert!(parse_group("4,2").is_err());
        assert!(parse_group("a").is_err());
    }
}
