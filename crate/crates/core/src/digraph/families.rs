use super::{OrientedGraph, MAX_VERTICES};

fn sized(n: usize) -> OrientedGraph {
    assert!(n <= MAX_VERTICES, "family member with {n} vertices exceeds the cap");
    OrientedGraph::empty(n).expect("size checked")
}

impl OrientedGraph {
    /// P_k: 0 -> 1 -> ... -> k-1.
    pub fn directed_path(k: usize) -> Self {
        let mut g = sized(k);
        for v in 1..k {
            g.insert_arc_unchecked(v - 1, v);
        }
        g
    }

    /// C_k for k >= 3: 0 -> 1 -> ... -> k-1 -> 0.
    pub fn directed_cycle(k: usize) -> Self {
        assert!(k >= 3, "directed cycle needs at least 3 vertices");
        let mut g = Self::directed_path(k);
        g.insert_arc_unchecked(k - 1, 0);
        g
    }

    /// T_k: i -> j for every i < j.
    pub fn transitive_tournament(k: usize) -> Self {
        let mut g = sized(k);
        for i in 0..k {
            for j in i + 1..k {
                g.insert_arc_unchecked(i, j);
            }
        }
        g
    }

    /// S_{p,q}: centre 0 with in-leaves 1..=p and out-leaves p+1..=p+q.
    pub fn star(p: usize, q: usize) -> Self {
        let mut g = sized(p + q + 1);
        for leaf in 1..=p {
            g.insert_arc_unchecked(leaf, 0);
        }
        for leaf in p + 1..=p + q {
            g.insert_arc_unchecked(0, leaf);
        }
        g
    }

    /// M_k: arcs 2i -> 2i+1 for i < k.
    pub fn matching(k: usize) -> Self {
        let mut g = sized(2 * k);
        for i in 0..k {
            g.insert_arc_unchecked(2 * i, 2 * i + 1);
        }
        g
    }

    /// Antidirected path on k vertices: 0 -> 1 <- 2 -> 3 <- ...
    pub fn antidirected_path(k: usize) -> Self {
        let mut g = sized(k);
        for v in 1..k {
            if v % 2 == 1 {
                g.insert_arc_unchecked(v - 1, v);
            } else {
                g.insert_arc_unchecked(v, v - 1);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert_eq!(OrientedGraph::directed_path(4).arcs(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(OrientedGraph::directed_cycle(3).arc_count(), 3);
        assert_eq!(OrientedGraph::transitive_tournament(5).arc_count(), 10);
        let s = OrientedGraph::star(1, 2);
        assert_eq!(s.in_degree(0), 1);
        assert_eq!(s.out_degree(0), 2);
        assert_eq!(OrientedGraph::matching(3).arc_count(), 3);
        assert_eq!(OrientedGraph::antidirected_path(4).arcs(), vec![(0, 1), (2, 1), (2, 3)]);
    }
}
