use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::digraph::BipartiteDigraph;
use crate::error::{Error, Result};
use crate::homomorphism::VertexMap;

/// Most `r`-subsets for which witness lists are stored.
pub const MAX_STORED_WITNESSES: u128 = 1_000_000;

/// An `(r, h)`-rich subset `R` of the `W` side: every `r`-subset of `R` has at
/// least `h` common in-neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichSetCertificate {
    /// `W` indices, ascending.
    pub subset: Vec<usize>,
    pub r: usize,
    pub h: usize,
    /// For every `r`-subset of `subset` (lexicographic order), its first `h`
    /// common in-neighbours; empty when there are too many subsets to store.
    pub witnesses: Vec<(Vec<usize>, Vec<usize>)>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Greedy rich-set search.
///
/// Scans `U` in index order, colouring each `u` with the first `r`-subset of
/// its out-neighbourhood (lexicographically) used fewer than `h` times. The
/// first vertex of out-degree at least `h` left uncoloured sees only
/// saturated subsets, so its first `h` out-neighbours form a rich set.
pub fn find_rich_set(g: &BipartiteDigraph, r: usize, h: usize) -> Option<RichSetCertificate> {
    if h == 0 || r == 0 || r > h {
        return None;
    }
    let mut used: HashMap<Vec<usize>, usize> = HashMap::new();
    for u in 0..g.u_len() {
        let nbrs = g.out_of(u);
        if nbrs.len() < r {
            continue;
        }
        let fresh = nbrs
            .iter()
            .copied()
            .combinations(r)
            .find(|s| used.get(s).is_none_or(|&k| k < h));
        match fresh {
            Some(s) => *used.entry(s).or_insert(0) += 1,
            None if nbrs.len() >= h => {
                let cert = certify(g, nbrs[..h].to_vec(), r, h);
                debug_assert!(cert.as_ref().is_some_and(|c| verify_rich_set(g, c)));
                return cert;
            }
            None => {}
        }
    }
    None
}

fn certify(g: &BipartiteDigraph, subset: Vec<usize>, r: usize, h: usize) -> Option<RichSetCertificate> {
    let store = binomial(subset.len(), r) <= MAX_STORED_WITNESSES;
    let mut witnesses = Vec::new();
    if store {
        for s in subset.iter().copied().combinations(r) {
            let common = g.common_in_neighbors(&s);
            if common.len() < h {
                return None;
            }
            witnesses.push((s, common[..h].to_vec()));
        }
    }
    Some(RichSetCertificate {
        subset,
        r,
        h,
        witnesses,
    })
}

/// Independent check of a certificate: size, every `r`-subset's common
/// in-neighbourhood, and every stored witness list.
pub fn verify_rich_set(g: &BipartiteDigraph, cert: &RichSetCertificate) -> bool {
    let RichSetCertificate {
        subset,
        r,
        h,
        witnesses,
    } = cert;
    if subset.len() < *h || subset.iter().any(|&w| w >= g.w_len()) || !subset.windows(2).all(|p| p[0] < p[1]) {
        return false;
    }
    for s in subset.iter().copied().combinations(*r) {
        let count = (0..g.u_len())
            .filter(|&u| s.iter().all(|w| g.out_of(u).binary_search(w).is_ok()))
            .count();
        if count < *h {
            return false;
        }
    }
    witnesses.iter().all(|(s, us)| {
        us.len() >= *h
            && us
                .iter()
                .all(|&u| u < g.u_len() && s.iter().all(|w| g.out_of(u).binary_search(w).is_ok()))
    })
}

/// Embeds `pattern` (`A -> B`, every `A` vertex of out-degree at most `r`)
/// into `g` using a rich set: `B` goes onto the certificate's subset in
/// order, then each `A` vertex takes the lowest unused common in-neighbour of
/// its out-neighbours' images.
///
/// The map runs from [`Digraph`](crate::digraph::Digraph) indices of
/// `pattern` to those of `g`.
pub fn embed_via_rich_set(
    g: &BipartiteDigraph,
    pattern: &BipartiteDigraph,
    cert: &RichSetCertificate,
) -> Result<VertexMap> {
    if pattern.max_u_out_degree() > cert.r {
        return Err(Error::BadParams(format!(
            "pattern has an A vertex of out-degree {} above r = {}",
            pattern.max_u_out_degree(),
            cert.r
        )));
    }
    if cert.h < pattern.order() || cert.subset.len() < pattern.w_len() {
        return Err(Error::BadParams(format!(
            "certificate with h = {} cannot host a pattern on {} vertices",
            cert.h,
            pattern.order()
        )));
    }
    let (pa, nu) = (pattern.u_len(), g.u_len());
    let mut map = VertexMap::new(pattern.order(), g.order());
    for b in 0..pattern.w_len() {
        map.assignment[pa + b] = Some(nu + cert.subset[b]);
    }
    let mut taken = vec![false; nu];
    for a in 0..pa {
        let images: Vec<usize> = pattern.out_of(a).iter().map(|&b| cert.subset[b]).collect();
        let pick = g
            .common_in_neighbors(&images)
            .into_iter()
            .find(|&u| !taken[u])
            .ok_or(Error::CertificateInsufficient(pattern.u_label(a)))?;
        taken[pick] = true;
        map.assignment[a] = Some(pick);
    }
    Ok(map)
}
