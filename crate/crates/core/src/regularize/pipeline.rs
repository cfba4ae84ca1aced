use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::almost_regular::{almost_regular_subdigraph, RegularizeResult};
use super::extract::{extract_bipartite, DEFAULT_EXTRACT_ATTEMPTS};
use super::zoom::{random_zoom, ZoomConfig, DEFAULT_MAX_RETRIES};
use crate::digraph::{BipartiteDigraph, BipartiteSummary, Digraph, LargeOrientedGraph};
use crate::error::{Error, Result};
use crate::homomorphism::VertexMap;

/// Knobs for [`faks_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub r: usize,
    pub seed: u64,
    /// Bucket parameter for the almost-regular stage; required when `r = 1`.
    pub t_override: Option<usize>,
    pub max_attempts: usize,
    pub max_retries: usize,
}

impl PipelineConfig {
    pub fn new(r: usize, seed: u64) -> Self {
        Self {
            r,
            seed,
            t_override: None,
            max_attempts: DEFAULT_EXTRACT_ATTEMPTS,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractDiagnostics {
    pub input_vertices: usize,
    pub input_arcs: usize,
    pub quarter_bound: usize,
    pub result: BipartiteSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZoomDiagnostics {
    pub input: BipartiteSummary,
    pub config: ZoomConfig,
    pub feasible: bool,
    pub retries: Option<usize>,
    pub rejected_samples: Option<usize>,
    pub w_sample: Option<usize>,
    pub u_sample: Option<usize>,
    pub w_bound_ok: Option<bool>,
    pub u_bound_ok: Option<bool>,
}

/// Everything a pipeline run measured, plus the copy it found.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub pattern: BipartiteSummary,
    /// `(pattern vertex, host vertex)` pairs, by pattern label.
    pub embedding: Option<Vec<(usize, usize)>>,
    pub failed_stage: Option<&'static str>,
    pub reason: Option<String>,
    pub extract: Option<ExtractDiagnostics>,
    pub regularize: Option<RegularizeResult>,
    /// Density constant `c(H)` built from the measured `K1`, `K2`.
    pub c_h: Option<f64>,
    /// Whether `|E(G)| ≥ c(H)·n^(2-1/r)`.
    pub density_hypothesis: Option<bool>,
    pub zoom: Option<ZoomDiagnostics>,
}

impl PipelineReport {
    fn failed(&mut self, stage: &'static str, reason: String) {
        self.failed_stage = Some(stage);
        self.reason = Some(reason);
    }

    /// The embedding as a map from pattern indices to host vertex ids.
    pub fn vertex_map(&self, pattern: &BipartiteDigraph, host_order: usize) -> Option<VertexMap> {
        let pairs = self.embedding.as_ref()?;
        let mut map = VertexMap::new(pattern.order(), host_order);
        for v in 0..pattern.order() {
            let label = pattern.label(v);
            map.assignment[v] = pairs.iter().find(|(a, _)| *a == label).map(|&(_, b)| b);
        }
        Some(map)
    }
}

/// `max{20, h}·20·K1^(1+1/r)·(K2/4h)^(1/r)·(K1/(K1+K2))^(1-1/r)`.
pub fn density_constant(h: usize, r: usize, k1: f64, k2: f64) -> f64 {
    let (h, r) = (h as f64, r as f64);
    h.max(20.0) * 20.0 * k1.powf(1.0 + 1.0 / r) * (k2 / (4.0 * h)).powf(1.0 / r) * (k1 / (k2 + k1)).powf(1.0 - 1.0 / r)
}

fn staged(stage: &'static str) -> impl Fn(Error) -> Error {
    move |e| Error::Stage {
        stage,
        source: Box::new(e),
    }
}

/// Finds a copy of the antidirected `pattern` (`A -> B`, every `A` vertex of
/// out-degree at most `r`) in `g`: extract a dense bipartite part, shrink it
/// to an almost-regular piece, then zoom in on a rich set.
///
/// A stage whose hypotheses fail at this size ends the run with
/// `embedding: None` and the stage named in the report; other errors are
/// returned wrapped in [`Error::Stage`]. A returned copy has been checked
/// arc by arc against `g`.
pub fn faks_pipeline<G: Digraph>(g: &G, pattern: &BipartiteDigraph, cfg: &PipelineConfig) -> Result<PipelineReport> {
    if cfg.r == 0 || pattern.max_u_out_degree() > cfg.r {
        return Err(Error::BadParams(format!(
            "pattern has A out-degree {} but r = {}",
            pattern.max_u_out_degree(),
            cfg.r
        )));
    }
    let mut report = PipelineReport {
        config: cfg.clone(),
        pattern: pattern.summary(),
        embedding: None,
        failed_stage: None,
        reason: None,
        extract: None,
        regularize: None,
        c_h: None,
        density_hypothesis: None,
        zoom: None,
    };

    let bip = extract_bipartite(g, cfg.seed, cfg.max_attempts).map_err(staged("extract"))?;
    report.extract = Some(ExtractDiagnostics {
        input_vertices: g.vertex_count(),
        input_arcs: g.arc_count(),
        quarter_bound: g.arc_count().div_ceil(4),
        result: bip.summary(),
    });

    let n = bip.order();
    let eps = 1.0 - 1.0 / cfg.r as f64;
    let c = 4.0 * bip.arc_count() as f64 / (n as f64).powf(1.0 + eps);
    let reg = match almost_regular_subdigraph(&bip, c, cfg.r, cfg.t_override) {
        Ok(reg) => reg,
        Err(Error::TooSmall(why)) => {
            report.failed("regularize", why);
            return Ok(report);
        }
        Err(e) => return Err(staged("regularize")(e)),
    };
    let c_h = density_constant(pattern.order(), cfg.r, reg.k1, reg.k2);
    report.c_h = c_h.is_finite().then_some(c_h);
    report.density_hypothesis =
        Some(g.arc_count() as f64 >= c_h * (g.vertex_count() as f64).powf(2.0 - 1.0 / cfg.r as f64));
    let hs = reg.subgraph.clone();
    report.regularize = Some(reg);

    let mut zcfg = ZoomConfig::new(&hs, pattern, cfg.r, cfg.seed.wrapping_add(1));
    zcfg.max_retries = cfg.max_retries;
    let mut zdiag = ZoomDiagnostics {
        input: hs.summary(),
        config: zcfg.clone(),
        feasible: zcfg.infeasibility().is_none(),
        retries: None,
        rejected_samples: None,
        w_sample: None,
        u_sample: None,
        w_bound_ok: None,
        u_bound_ok: None,
    };
    match random_zoom(&hs, pattern, &zcfg) {
        Ok(out) => {
            zdiag.retries = Some(out.retries);
            zdiag.rejected_samples = Some(out.rejected_samples);
            zdiag.w_sample = Some(out.w_sample);
            zdiag.u_sample = Some(out.u_sample);
            zdiag.w_bound_ok = Some(out.w_bound_ok);
            zdiag.u_bound_ok = Some(out.u_bound_ok);
            let mut pairs = Vec::with_capacity(pattern.order());
            for (v, image) in out.embedding.assignment.iter().enumerate() {
                let image = image.ok_or_else(|| Error::InvariantViolation("partial embedding".into()))?;
                pairs.push((pattern.label(v), hs.label(image)));
            }
            let host_map = {
                let mut m = VertexMap::new(pattern.order(), g.vertex_count());
                for (v, &(_, b)) in pairs.iter().enumerate() {
                    m.assignment[v] = Some(b);
                }
                m
            };
            if !host_map.is_embedding(pattern, g) {
                return Err(staged("zoom")(Error::InvariantViolation(
                    "embedding is not a copy of the pattern in the host".into(),
                )));
            }
            report.embedding = Some(pairs);
        }
        Err(Error::InfeasibleConfig(why)) => report.failed("zoom", why),
        Err(Error::RetriesExhausted(k)) => report.failed("zoom", format!("no usable sample in {k} retries")),
        Err(e) => return Err(staged("zoom")(e)),
    }
    report.zoom = Some(zdiag);
    Ok(report)
}

/// A random antidirected host: two sides of `side` vertices, each cross pair
/// joined from the first side to the second with probability `density`,
/// vertex ids shuffled.
pub fn dense_bipartite_host(side: usize, density: f64, seed: u64) -> Result<LargeOrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..2 * side).collect();
    ids.shuffle(&mut rng);
    let mut arcs = Vec::new();
    for i in 0..side {
        for j in 0..side {
            if rng.random::<f64>() < density {
                arcs.push((ids[i], ids[side + j]));
            }
        }
    }
    LargeOrientedGraph::from_arcs(2 * side, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::OrientedGraph;

    fn single_arc() -> BipartiteDigraph {
        BipartiteDigraph::from_local(1, 1, &[(0, 0)]).unwrap()
    }

    #[test]
    fn sparse_host_fails_with_a_stage_label() {
        let g = OrientedGraph::directed_cycle(12);
        let mut cfg = PipelineConfig::new(1, 3);
        cfg.t_override = Some(2);
        let report = faks_pipeline(&g, &single_arc(), &cfg).unwrap();
        assert!(report.embedding.is_none());
        assert!(report.failed_stage.is_some());
    }

    #[test]
    fn rejects_wrong_shape() {
        let star = BipartiteDigraph::from_local(1, 2, &[(0, 0), (0, 1)]).unwrap();
        let g = OrientedGraph::directed_cycle(5);
        assert!(matches!(
            faks_pipeline(&g, &star, &PipelineConfig::new(1, 0)),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn r_one_needs_t() {
        let g = OrientedGraph::transitive_tournament(8);
        match faks_pipeline(&g, &single_arc(), &PipelineConfig::new(1, 0)) {
            Err(Error::Stage { stage, source }) => {
                assert_eq!(stage, "regularize");
                assert!(matches!(*source, Error::BadParams(_)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dense_host_yields_a_verified_copy() {
        let g = dense_bipartite_host(1400, 0.9, 7).unwrap();
        let mut cfg = PipelineConfig::new(1, 42);
        cfg.t_override = Some(2);
        let report = faks_pipeline(&g, &single_arc(), &cfg).unwrap();
        let map = report
            .vertex_map(&single_arc(), g.vertex_count())
            .unwrap_or_else(|| panic!("{}", serde_json::to_string_pretty(&report).unwrap()));
        assert!(map.is_embedding(&single_arc(), &g));
        let again = faks_pipeline(&g, &single_arc(), &cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }
}
