//! The on-disk graph corpus and the succinctness survey.

use super::to_sorted_json;
use crate::construction::{graph_of_order, log_star_u64, sample_seed_family, DEFAULT_ORDER_CAP};
use crate::error::{invalid, Error, Result};
use crate::game::{d0_lower_bound_with, SolveLimits};
use crate::graph::{enumerate_nonisomorphic, UNDIRECTED_ENUM_CAP};
use crate::GraphData;
use serde::Serialize;
use std::fs;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCount {
    pub order: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusManifest {
    pub schema: u32,
    pub max_order: usize,
    pub counts: Vec<OrderCount>,
    pub total: usize,
    /// File names relative to the corpus directory, in enumeration order.
    pub files: Vec<String>,
}

/// Writes every non-isomorphic undirected graph of order `1..=max_order` to
/// `out_dir` in the text format, plus `manifest.json`. Output is identical
/// across runs.
pub fn corpus_build(max_order: usize, out_dir: &Path) -> Result<CorpusManifest> {
    if max_order > UNDIRECTED_ENUM_CAP {
        return Err(Error::SizeLimit(format!(
            "corpus order {max_order} above the cap {UNDIRECTED_ENUM_CAP}"
        )));
    }
    if max_order == 0 {
        return Err(invalid!("the corpus needs max_order >= 1"));
    }
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write {}: {e}", out_dir.display()));
    fs::create_dir_all(out_dir).map_err(io)?;
    let mut counts = Vec::new();
    let mut files = Vec::new();
    for n in 1..=max_order {
        let graphs = enumerate_nonisomorphic(n, false, false)?;
        for (i, g) in graphs.iter().enumerate() {
            let name = format!("n{n}_{i:04}.graph");
            fs::write(out_dir.join(&name), g.to_text()).map_err(io)?;
            files.push(name);
        }
        counts.push(OrderCount {
            order: n,
            count: graphs.len(),
        });
    }
    let manifest = CorpusManifest {
        schema: super::SCHEMA,
        max_order,
        total: files.len(),
        counts,
        files,
    };
    fs::write(out_dir.join("manifest.json"), to_sorted_json(&manifest)).map_err(io)?;
    Ok(manifest)
}

/// Bounds around the quantity `q_0(n)`: an upper certificate for one graph
/// of order `n` and a solver lower estimate for the same graph. Neither is
/// the exact minimum over all graphs of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuccinctnessReport {
    pub n: usize,
    pub c: usize,
    /// `"construction"` for `n > 2c`, `"trivial"` otherwise.
    pub route: String,
    /// Seed of the seed family, for the construction route.
    pub rng_seed: Option<u64>,
    /// Upper estimate: `rank + 2c + 2` for the constructed graph, or
    /// `n + 1` on the trivial route (which applies to every graph).
    pub upper_certificate: usize,
    /// `rank + largest cocomponent + 1` for the constructed graph.
    pub main_lemma_bound: Option<usize>,
    pub log_star: usize,
    /// `upper_certificate <= log*(n) + 22` on the construction route.
    pub within_log_star_bound: Option<bool>,
    pub family_cap: usize,
    pub family_size: usize,
    /// Lower estimate: the largest pair value of the graph against the
    /// enumerated family. `None` when the graph exceeds the solver caps.
    pub lower_estimate: Option<usize>,
    /// Why no lower estimate was computed.
    pub lower_estimate_skipped: Option<String>,
    /// Order and edge count of the graph both estimates refer to.
    pub graph_order: usize,
    pub graph_edges: usize,
}

/// Surveys order `n`. Above `2c` the graph is `graph_of_order(n)` over a
/// seed family sampled with `rng_seed`; at most `2c` it is the path `P_n`,
/// covered by the bound `D_0(G) <= n + 1`.
pub fn succinctness_survey(n: usize, c: usize, family_cap: usize, rng_seed: u64) -> Result<SuccinctnessReport> {
    if n == 0 {
        return Err(invalid!("order must be positive"));
    }
    if family_cap > UNDIRECTED_ENUM_CAP {
        return Err(Error::SizeLimit(format!(
            "family cap {family_cap} above the enumeration cap {UNDIRECTED_ENUM_CAP}"
        )));
    }
    let (g, route, seed, upper, main, within): (GraphData, &str, _, _, _, _) = if n > 2 * c {
        let seeds = sample_seed_family(c, rng_seed, 50)?;
        let (g, cert) = graph_of_order(n, &seeds, DEFAULT_ORDER_CAP)?;
        let within = Some(cert.within_bound);
        (
            g,
            "construction",
            Some(rng_seed),
            cert.certificate,
            Some(cert.main_lemma_bound),
            within,
        )
    } else {
        (GraphData::path(n), "trivial", None, n + 1, None, None)
    };
    let mut family = Vec::new();
    for m in 1..=family_cap {
        family.extend(enumerate_nonisomorphic(m, false, false)?);
    }
    let limits = SolveLimits::default();
    let (lower, skipped) = if g.order() > limits.max_large_order {
        (
            None,
            Some(format!(
                "order {} above the solver cap {}",
                g.order(),
                limits.max_large_order
            )),
        )
    } else if family_cap > limits.max_small_order {
        (
            None,
            Some(format!("family cap above the solver cap {}", limits.max_small_order)),
        )
    } else {
        (Some(d0_lower_bound_with(&g, &family, limits)?.value), None)
    };
    Ok(SuccinctnessReport {
        n,
        c,
        route: route.to_string(),
        rng_seed: seed,
        upper_certificate: upper,
        main_lemma_bound: main,
        log_star: log_star_u64(n as u64),
        within_log_star_bound: within,
        family_cap,
        family_size: family.len(),
        lower_estimate: lower,
        lower_estimate_skipped: skipped,
        graph_order: g.order(),
        graph_edges: g.edge_count(),
    })
}
