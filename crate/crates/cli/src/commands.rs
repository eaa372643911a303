//! Subcommand definitions and their execution.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fodepth::construction::{
    below_one, graph_of_order, growth_table, sample_seed_family, seed_inequality_value, DEFAULT_ORDER_CAP,
};
use fodepth::decomposition::{
    cocomponents, decompose, inclusion_witness, is_complement_connected, rank, uniformity_witness,
};
use fodepth::game::{
    play_match, Duplicator, GameConfig, GameValue, OptimalDuplicator, RandomDuplicator, Solver, SolverSpoiler, Variant,
};
use fodepth::graph::{enumerate_nonisomorphic, is_isomorphic, UNDIRECTED_ENUM_CAP};
use fodepth::harness::{corpus_build, run_acceptance, run_criterion, succinctness_survey, Check, RunReport};
use fodepth::logic::hintikka::{hintikka_descriptions, QuantifierPattern};
use fodepth::logic::{
    enumerate_qf_configurations, enumerate_qf_types, evaluate, to_prenex, trivial_defining_sentence, Assignment,
    Formula,
};
use fodepth::strategy::{strategy_main, validate_strategy, BoundSource};
use fodepth::{Error, GraphData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::PathBuf;

/// An invocation that parses but makes no sense.
#[derive(Debug)]
pub struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(
    name = "fodepth",
    version,
    about = "First-order definability of graphs without quantifier alternation"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GraphIn {
    /// Graph file, text or JSON format.
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Adversary {
    Optimal,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Acceptance,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decomposition layers and cocomponents.
    Decompose(GraphIn),
    /// Rank of the decomposition.
    Rank(GraphIn),
    /// Connectivity, uniformity and inclusion-freeness predicates; fails
    /// unless all hold.
    Check(GraphIn),
    /// A connected uniform inclusion-free graph of the given order.
    Construct {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 10)]
        c: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        attempts: usize,
        /// Also write the graph in text format here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// The growth table n_i, r_i, m_i and Tower(i).
    Growth {
        #[arg(long, default_value_t = 10)]
        c: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Sample a seed family.
    Seeds {
        #[arg(long, default_value_t = 10)]
        c: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        attempts: usize,
        /// Re-check every invariant and report all defects.
        #[arg(long)]
        verify: bool,
    },
    /// Game value with a principal variation.
    D0 {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// The unrestricted game instead of the 0-alternation game.
        #[arg(long)]
        full: bool,
    },
    /// The generic defining sentence of a graph.
    Define(GraphIn),
    /// Prenex form of a sentence, checked on all small graphs.
    Prenex {
        /// The sentence in s-expression syntax.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        formula: Option<String>,
        /// File holding the sentence.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Models are all graphs of order 1 up to this.
        #[arg(long, default_value_t = 4)]
        models: usize,
    },
    /// Quantifier-free types of k-tuples.
    Types {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        loops: bool,
        /// Configurations of distinct vertices up to relabelling instead of
        /// ordered diagrams.
        #[arg(long)]
        configurations: bool,
    },
    /// Hintikka descriptions over all graphs up to an order.
    Hintikka {
        #[arg(long)]
        k: usize,
        /// `all`, `zero`, `half`, or a comma-separated list such as `EA,EE`.
        #[arg(long, default_value = "all")]
        pattern: String,
        #[arg(long, default_value_t = 2)]
        family_order: usize,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        loops: bool,
        /// Include every class with its formula.
        #[arg(long)]
        full: bool,
    },
    /// Play the main strategy on a graph against an opponent graph.
    Strategy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        opponent: PathBuf,
        #[arg(long, default_value_t = 5)]
        c: usize,
        #[arg(long, value_enum, default_value_t = Adversary::Optimal)]
        adversary: Adversary,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, required_if_eq("adversary", "random"))]
        seed: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long)]
        criterion: Vec<usize>,
        /// Run criteria one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
    },
    /// Write all non-isomorphic graphs up to an order, with a manifest.
    Corpus {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Upper and lower estimates around q_0(n) for one order.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        c: usize,
        #[arg(long, default_value_t = 4)]
        family_cap: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn read_graph(path: &PathBuf) -> Result<GraphData> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GraphData::parse_any(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn all_graphs(max_order: usize, directed: bool, loops: bool) -> Result<Vec<GraphData>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(enumerate_nonisomorphic(n, directed, loops)?);
    }
    Ok(out)
}

pub fn run(cmd: Command) -> Result<RunReport> {
    match cmd {
        Command::Decompose(a) => {
            let g = read_graph(&a.input)?;
            let report = decompose(&g, None)?.report();
            Ok(RunReport::new(
                "decompose",
                json!({"in": path_str(&a.input)}),
                serde_json::to_value(report)?,
                vec![],
            ))
        }
        Command::Rank(a) => {
            let g = read_graph(&a.input)?;
            Ok(RunReport::new(
                "rank",
                json!({"in": path_str(&a.input)}),
                json!({"rank": rank(&g)?}),
                vec![],
            ))
        }
        Command::Check(a) => check(&a.input),
        Command::Construct {
            order,
            c,
            seed,
            attempts,
            graph_out,
        } => {
            let seeds = sample_seed_family(c, seed, attempts)?;
            let (g, cert) = graph_of_order(order, &seeds, DEFAULT_ORDER_CAP)?;
            if let Some(p) = &graph_out {
                std::fs::write(p, g.to_text()).with_context(|| format!("writing {}", p.display()))?;
            }
            let checks = vec![
                Check::new("exact order", g.order() == order),
                Check::new("certificate within log*(n) + 22", cert.within_bound),
            ];
            let params =
                json!({"order": order, "c": c, "seed": seed, "attempts": attempts, "order_cap": DEFAULT_ORDER_CAP});
            let results = json!({"certificate": cert, "seed_attempts": seeds.attempts(), "graph": g.to_json()});
            Ok(RunReport::new("construct", params, results, checks))
        }
        Command::Growth { c, depth } => {
            let t = growth_table(c, depth)?;
            let rows = t.rows();
            let checks = vec![Check::new(
                "m_i > Tower(i) for every row",
                rows.iter().all(|r| r.m_exceeds_tower),
            )];
            Ok(RunReport::new(
                "growth",
                json!({"c": c, "depth": depth}),
                json!({"rows": rows}),
                checks,
            ))
        }
        Command::Seeds {
            c,
            seed,
            attempts,
            verify,
        } => seeds(c, seed, attempts, verify),
        Command::D0 { left, right, full } => d0(&left, &right, full),
        Command::Define(a) => define(&a.input),
        Command::Prenex { formula, input, models } => {
            let (text, source) = match (formula, input) {
                (Some(f), _) => (f, json!({"formula": "argument"})),
                (None, Some(p)) => (
                    std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?,
                    json!({"in": path_str(&p)}),
                ),
                (None, None) => return Err(UsageError("give --formula or --in".into()).into()),
            };
            prenex(text.trim(), source, models)
        }
        Command::Types {
            k,
            directed,
            loops,
            configurations,
        } => {
            let types = if configurations {
                enumerate_qf_configurations(k, directed, loops)?
            } else {
                enumerate_qf_types(k, directed, loops)?
            };
            let params = json!({"k": k, "directed": directed, "loops": loops, "configurations": configurations});
            Ok(RunReport::new(
                "types",
                params,
                json!({"count": types.len(), "types": types}),
                vec![],
            ))
        }
        Command::Hintikka {
            k,
            pattern,
            family_order,
            directed,
            loops,
            full,
        } => hintikka(k, &pattern, family_order, directed, loops, full),
        Command::Strategy {
            graph,
            opponent,
            c,
            adversary,
            trials,
            seed,
        } => strategy(&graph, &opponent, c, adversary, trials, seed),
        Command::Verify {
            suite: Suite::Acceptance,
            seed,
            criterion,
            sequential,
        } => {
            let outcomes = if criterion.is_empty() {
                run_acceptance(seed, !sequential)
            } else {
                criterion
                    .iter()
                    .map(|&id| run_criterion(id, seed))
                    .collect::<fodepth::Result<_>>()?
            };
            let checks = outcomes
                .iter()
                .map(|o| Check::new(format!("{} {}", o.id, o.name), o.passed))
                .collect();
            let params = json!({"suite": "acceptance", "seed": seed, "criteria": criterion});
            Ok(RunReport::new("verify", params, json!({"criteria": outcomes}), checks))
        }
        Command::Corpus { max_order, out_dir } => {
            let m = corpus_build(max_order, &out_dir)?;
            let checks = vec![Check::new(
                "manifest total matches counts",
                m.total == m.counts.iter().map(|c| c.count).sum::<usize>(),
            )];
            let params = json!({"max_order": max_order, "out_dir": path_str(&out_dir)});
            Ok(RunReport::new("corpus", params, serde_json::to_value(m)?, checks))
        }
        Command::Survey { n, c, family_cap, seed } => {
            let r = succinctness_survey(n, c, family_cap, seed)?;
            let mut checks = vec![];
            if let Some(lo) = r.lower_estimate {
                checks.push(Check::new(
                    "lower estimate at most upper certificate",
                    lo <= r.upper_certificate,
                ));
            }
            if let Some(w) = r.within_log_star_bound {
                checks.push(Check::new("certificate within log*(n) + 22", w));
            }
            let params = json!({"n": n, "c": c, "family_cap": family_cap, "seed": seed});
            Ok(RunReport::new("survey", params, serde_json::to_value(r)?, checks))
        }
    }
}

fn check(path: &PathBuf) -> Result<RunReport> {
    let g = read_graph(path)?;
    let connected = g.is_connected();
    let (uniform, inclusion_free, rk, cocos) = if connected && !g.is_directed() {
        let uw = uniformity_witness(&g)?;
        let iw = inclusion_witness(&g)?;
        let sizes: Vec<usize> = cocomponents(&g)?.iter().map(|c| c.0.len()).collect();
        (
            json!({"holds": uw.is_none(), "witness": uw.map(|w| format!("{w:?}"))}),
            json!({"holds": iw.is_none(), "witness": iw.map(|w| format!("{w:?}"))}),
            Some(rank(&g)?),
            sizes,
        )
    } else {
        (json!({"holds": false}), json!({"holds": false}), None, vec![])
    };
    let checks = vec![
        Check::new("connected", connected),
        Check::new("uniform", uniform["holds"] == true),
        Check::new("inclusion-free", inclusion_free["holds"] == true),
    ];
    let results = json!({
        "order": g.order(),
        "connected": connected,
        "complement_connected": !g.is_directed() && is_complement_connected(&g),
        "rank": rk,
        "uniform": uniform,
        "inclusion_free": inclusion_free,
        "cocomponent_sizes": cocos,
    });
    Ok(RunReport::new("check", json!({"in": path_str(path)}), results, checks))
}

fn seeds(c: usize, seed: u64, attempts: usize, verify: bool) -> Result<RunReport> {
    let v = seed_inequality_value(c as u64)?;
    let fam = sample_seed_family(c, seed, attempts)?;
    let graphs: Vec<Value> = fam
        .iter()
        .map(|(i, j, g)| json!({"i": i, "j": j, "graph": g.to_json()}))
        .collect();
    let mut checks = vec![Check::new("seed inequality below 1", below_one(&v))];
    let mut results = json!({
        "inequality": {"numerator": v.numer().to_string(), "denominator": v.denom().to_string(), "below_one": below_one(&v)},
        "attempts": fam.attempts(),
        "graphs": graphs,
    });
    if verify {
        let defects: Vec<String> = fam.defects(false).iter().map(|d| format!("{d:?}")).collect();
        checks.push(Check::new("every seed invariant holds", defects.is_empty()));
        results["defects"] = json!(defects);
    }
    let params = json!({"c": c, "seed": seed, "attempts": attempts, "verify": verify});
    Ok(RunReport::new("seeds", params, results, checks))
}

fn d0(left: &PathBuf, right: &PathBuf, full: bool) -> Result<RunReport> {
    let g = read_graph(left)?;
    let h = read_graph(right)?;
    let variant = if full { Variant::Full } else { Variant::ZeroAlternation };
    let params = json!({"left": path_str(left), "right": path_str(right), "variant": variant});
    if is_isomorphic(&g, &h) {
        return Ok(RunReport::new(
            "d0",
            params,
            json!({"isomorphic": true, "value": null, "pv": []}),
            vec![],
        ));
    }
    let mut solver = Solver::new(&g, &h, variant)?;
    let cap = solver.limits().max_rounds;
    let value = match solver.game_value()? {
        GameValue::Within(k) => k,
        GameValue::Beyond(k) => return Err(Error::SizeLimit(format!("no Spoiler win within {k} rounds")).into()),
    };
    // Optimal play on both sides gives a principal variation.
    let mut spoiler = SolverSpoiler::new(solver);
    let mut dup = OptimalDuplicator::new(Solver::new(&g, &h, variant)?, cap);
    let t = play_match(
        &mut spoiler,
        &mut dup,
        &GameConfig::new(g.clone(), h.clone(), variant),
        value,
    )?;
    let checks = vec![Check::new("principal variation has the game value", t.rounds == value)];
    Ok(RunReport::new(
        "d0",
        params,
        json!({"isomorphic": false, "value": value, "pv": t.picks, "moves": t.moves}),
        checks,
    ))
}

fn define(path: &PathBuf) -> Result<RunReport> {
    let g = read_graph(path)?;
    let phi = trivial_defining_sentence(&g);
    let empty = Assignment::new();
    let mut checks = vec![Check::new("true on the graph", evaluate(&g, &phi, &empty)?)];
    let mut compared = None;
    // Every other graph of order at most n + 1 must falsify it; checked
    // while enumeration reaches that order.
    if !g.is_directed() && !g.loops_allowed() && g.order() < UNDIRECTED_ENUM_CAP {
        let others = all_graphs(g.order() + 1, false, false)?;
        let mut ok = true;
        for h in others.iter().filter(|h| !is_isomorphic(h, &g)) {
            ok &= !evaluate(h, &phi, &empty)?;
        }
        checks.push(Check::new("false on every other graph of order at most n + 1", ok));
        compared = Some(others.len() - 1);
    }
    let results = json!({"formula": phi.to_string(), "metrics": phi.metrics(), "compared_graphs": compared});
    Ok(RunReport::new("define", json!({"in": path_str(path)}), results, checks))
}

fn prenex(text: &str, source: Value, models: usize) -> Result<RunReport> {
    let phi: Formula = text.parse()?;
    let psi = to_prenex(&phi)?;
    let family = all_graphs(models, false, false)?;
    let empty = Assignment::new();
    let mut mismatches = Vec::new();
    for (i, h) in family.iter().enumerate() {
        if evaluate(h, &phi, &empty)? != evaluate(h, &psi, &empty)? {
            mismatches.push(i);
        }
    }
    let checks = vec![Check::new("truth preserved on every model", mismatches.is_empty())];
    let mut params = source;
    params["models"] = json!(models);
    let results = json!({
        "input": phi.to_string(),
        "prenex": psi.to_string(),
        "metrics": psi.metrics(),
        "models_checked": family.len(),
        "mismatches": mismatches,
    });
    Ok(RunReport::new("prenex", params, results, checks))
}

fn parse_pattern(k: usize, spec: &str) -> Result<QuantifierPattern> {
    Ok(match spec {
        "all" => QuantifierPattern::all(k),
        "zero" => QuantifierPattern::zero_alternation(k),
        "half" => QuantifierPattern::lambda_half(k),
        list => QuantifierPattern::new(k, list.split(',').map(str::trim))?,
    })
}

fn hintikka(
    k: usize,
    pattern: &str,
    family_order: usize,
    directed: bool,
    loops: bool,
    full: bool,
) -> Result<RunReport> {
    let p = parse_pattern(k, pattern)?;
    let family = all_graphs(family_order, directed, loops)?;
    let table = hintikka_descriptions(&family, &p)?;
    let violations = table.count_violations();
    let within = table.lengths_within_bounds();
    let checks = vec![
        Check::new("class counts within bounds", violations.is_empty()),
        Check::new("lengths within the l(k,s) column", within),
    ];
    let levels: Vec<Value> = table
        .levels
        .iter()
        .map(|l| {
            json!({
                "s": l.s,
                "sigma": l.sigma,
                "classes": l.classes.len(),
                "max_length": l.classes.iter().map(|c| c.length).max().unwrap_or(0),
            })
        })
        .collect();
    let mut results = json!({
        "family_size": family.len(),
        "levels": levels,
        "bounds": table.bounds,
        "count_violations": violations,
        "sentence_classes": table.sentences().classes.iter().map(|c| json!({
            "id": c.id,
            "members": c.members.iter().map(|m| m.0).collect::<Vec<_>>(),
            "length": c.length,
        })).collect::<Vec<_>>(),
    });
    if full {
        results["table"] = serde_json::to_value(&table)?;
    }
    let params = json!({
        "k": k, "pattern": pattern, "family_order": family_order, "directed": directed, "loops": loops, "full": full,
    });
    Ok(RunReport::new("hintikka", params, results, checks))
}

fn strategy(
    graph: &PathBuf,
    opponent: &PathBuf,
    c: usize,
    adversary: Adversary,
    trials: usize,
    seed: Option<u64>,
) -> Result<RunReport> {
    let g = read_graph(graph)?;
    let h = read_graph(opponent)?;
    let st = strategy_main(&g, c)?;
    let mut agent = st.against(&h)?;
    let cfg = GameConfig::new(g.clone(), h.clone(), Variant::ZeroAlternation);
    let mut adversaries: Vec<Box<dyn Duplicator>> = match adversary {
        Adversary::Optimal => vec![Box::new(OptimalDuplicator::new(
            Solver::new(&g, &h, Variant::ZeroAlternation)?,
            st.bound() + 1,
        ))],
        Adversary::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.expect("clap requires a seed for random play"));
            (0..trials.max(1))
                .map(|_| Box::new(RandomDuplicator::new(rng.gen())) as Box<dyn Duplicator>)
                .collect()
        }
    };
    let params = json!({
        "graph": path_str(graph),
        "opponent": path_str(opponent),
        "c": c,
        "adversary": format!("{adversary:?}").to_lowercase(),
        "trials": trials,
        "seed": seed,
    });
    match validate_strategy(&mut agent, &cfg, st.bound(), BoundSource::Main, &mut adversaries) {
        Ok(cert) => {
            let checks = vec![Check::new(
                "won within the bound in every match",
                cert.actual_moves <= cert.claimed_bound,
            )];
            let results = json!({
                "case": agent.case(),
                "rank": st.rank(),
                "certificate": cert,
                "trace_of_last_match": agent.trace(),
            });
            Ok(RunReport::new("strategy", params, results, checks))
        }
        Err(Error::GuaranteeViolation { detail, transcript }) => {
            let checks = vec![Check::new("won within the bound in every match", false)];
            let results = json!({"case": agent.case(), "violation": detail, "transcript": transcript});
            Ok(RunReport::new("strategy", params, results, checks))
        }
        Err(e) => Err(e.into()),
    }
}
