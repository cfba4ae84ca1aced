use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rich::{embed_via_rich_set, find_rich_set};
use crate::digraph::BipartiteDigraph;
use crate::error::{Error, Result};
use crate::homomorphism::VertexMap;

/// Default retry cap for [`random_zoom`].
pub const DEFAULT_MAX_RETRIES: usize = 1024;

/// Parameters of one zooming run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZoomConfig {
    pub r: usize,
    pub h: usize,
    /// Minimum out-degree over the (possibly truncated) `U` side.
    pub d: usize,
    pub p: f64,
    pub seed: u64,
    pub max_retries: usize,
    /// Size `U` is cut down to before sampling.
    pub u_used: usize,
}

impl ZoomConfig {
    /// Derives `h`, `d` and `p` for embedding `pattern` into `g`.
    ///
    /// If `|U|` exceeds `4h(2|W|)^r` only the first that many `U` vertices are
    /// used, which makes `p = 1`.
    pub fn new(g: &BipartiteDigraph, pattern: &BipartiteDigraph, r: usize, seed: u64) -> Self {
        let h = pattern.order();
        let nw = g.w_len();
        let cap = (2.0 * nw as f64).powi(r as i32) * 4.0 * h as f64;
        let u_used = if (g.u_len() as f64) > cap {
            cap as usize
        } else {
            g.u_len()
        };
        let p = if nw == 0 || h == 0 {
            0.0
        } else {
            ((u_used as f64 / (4.0 * h as f64)).powf(1.0 / r as f64) / (2.0 * nw as f64)).min(1.0)
        };
        let d = (0..u_used).map(|u| g.out_of(u).len()).min().unwrap_or(0);
        Self {
            r,
            h,
            d,
            p,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            u_used,
        }
    }

    /// Why this configuration may not run, if it may not.
    pub fn infeasibility(&self) -> Option<String> {
        if self.r == 0 {
            return Some("r must be at least 1".into());
        }
        let need_d = 40.max(2 * self.h);
        if self.d < need_d {
            return Some(format!("min out-degree d = {} below max(40, 2h) = {need_d}", self.d));
        }
        let need = 20.max(self.h) as f64;
        if self.p * self.d as f64 / 2.0 < need {
            return Some(format!(
                "p·d/2 = {:.3} below max(20, h) = {need}",
                self.p * self.d as f64 / 2.0
            ));
        }
        None
    }
}

/// A successful zoom with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZoomOutcome {
    pub embedding: VertexMap,
    /// Samples drawn before the successful one.
    pub retries: usize,
    pub rejected_samples: usize,
    pub w_sample: usize,
    pub u_sample: usize,
    pub w_bound_ok: bool,
    pub u_bound_ok: bool,
}

/// Embeds `pattern` into `g` by sampling a `p`-random `W' ⊆ W`, keeping the
/// `U` vertices with at least `p·d/2` out-neighbours in `W'`, and looking for
/// a rich set there. The embedding is in terms of `g`'s
/// [`Digraph`](crate::digraph::Digraph) indices.
pub fn random_zoom(g: &BipartiteDigraph, pattern: &BipartiteDigraph, cfg: &ZoomConfig) -> Result<ZoomOutcome> {
    if let Some(why) = cfg.infeasibility() {
        return Err(Error::InfeasibleConfig(why));
    }
    if pattern.max_u_out_degree() > cfg.r {
        return Err(Error::BadParams(format!(
            "pattern needs A out-degrees at most r = {}",
            cfg.r
        )));
    }
    let nw = g.w_len();
    let threshold = cfg.p * cfg.d as f64 / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rejected = 0;
    for attempt in 0..cfg.max_retries {
        let ws: Vec<usize> = (0..nw).filter(|_| rng.random::<f64>() < cfg.p).collect();
        let mut in_sample = vec![false; nw];
        for &w in &ws {
            in_sample[w] = true;
        }
        let us: Vec<usize> = (0..cfg.u_used)
            .filter(|&u| g.out_of(u).iter().filter(|&&w| in_sample[w]).count() as f64 >= threshold)
            .collect();
        let w_ok = ws.len() as f64 <= 2.0 * cfg.p * nw as f64;
        let u_ok = 4 * us.len() >= cfg.u_used;
        if !(w_ok && u_ok) {
            rejected += 1;
            continue;
        }
        let sub = g.induced(&us, &ws);
        let Some(cert) = find_rich_set(&sub, cfg.r, cfg.h) else {
            continue;
        };
        let local = embed_via_rich_set(&sub, pattern, &cert)?;
        let nu_sub = sub.u_len();
        let mut embedding = VertexMap::new(pattern.order(), g.order());
        for (slot, image) in embedding.assignment.iter_mut().zip(&local.assignment) {
            *slot = image.map(|x| if x < nu_sub { us[x] } else { g.u_len() + ws[x - nu_sub] });
        }
        if !embedding.is_embedding(pattern, g) {
            return Err(Error::InvariantViolation("zoomed embedding failed verification".into()));
        }
        return Ok(ZoomOutcome {
            embedding,
            retries: attempt,
            rejected_samples: rejected,
            w_sample: ws.len(),
            u_sample: us.len(),
            w_bound_ok: w_ok,
            u_bound_ok: u_ok,
        });
    }
    Err(Error::RetriesExhausted(cfg.max_retries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(nu: usize, nw: usize) -> BipartiteDigraph {
        let arcs: Vec<_> = (0..nu).flat_map(|i| (0..nw).map(move |j| (i, j))).collect();
        BipartiteDigraph::from_local(nu, nw, &arcs).unwrap()
    }

    fn single_arc() -> BipartiteDigraph {
        BipartiteDigraph::from_local(1, 1, &[(0, 0)]).unwrap()
    }

    #[test]
    fn truncation_gives_p_one() {
        let g = complete(4 * 2 * 2 * 40, 40);
        let cfg = ZoomConfig::new(&g, &single_arc(), 1, 0);
        assert_eq!(cfg.u_used, 640);
        assert_eq!(cfg.p, 1.0);
        let bigger = complete(1000, 40);
        let cfg = ZoomConfig::new(&bigger, &single_arc(), 1, 0);
        assert_eq!((cfg.u_used, cfg.p), (640, 1.0));
    }

    #[test]
    fn single_arc_in_complete_host() {
        let g = complete(800, 45);
        let cfg = ZoomConfig::new(&g, &single_arc(), 1, 5);
        assert!(cfg.infeasibility().is_none());
        let out = random_zoom(&g, &single_arc(), &cfg).unwrap();
        assert!(out.embedding.is_embedding(&single_arc(), &g));
        assert_eq!(out.w_sample, 45);
    }

    #[test]
    fn sampled_run_with_p_below_one() {
        let pattern = BipartiteDigraph::from_local(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let g = complete(1200, 60);
        let cfg = ZoomConfig::new(&g, &pattern, 1, 11);
        assert!(cfg.p < 1.0);
        let out = random_zoom(&g, &pattern, &cfg).unwrap();
        assert!(out.embedding.is_embedding(&pattern, &g));
        assert!(out.w_bound_ok && out.u_bound_ok);
        assert!(4 * out.u_sample >= cfg.u_used);
        assert_eq!(out, random_zoom(&g, &pattern, &cfg).unwrap());
    }

    #[test]
    fn infeasible_configs_are_refused() {
        let g = complete(50, 10);
        let cfg = ZoomConfig::new(&g, &single_arc(), 1, 0);
        assert!(matches!(
            random_zoom(&g, &single_arc(), &cfg),
            Err(Error::InfeasibleConfig(_))
        ));
    }
}
