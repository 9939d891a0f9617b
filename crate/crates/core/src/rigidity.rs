//! Generic rigidity in the plane through the (2,3)-pebble game.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::plane_graph::PlaneGraph;

/// An abstract simple graph given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph { n, edges }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        Graph {
            n: self.n - 1,
            edges: self
                .edges
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (relabel(a), relabel(b)))
                .collect(),
        }
    }
}

impl From<&PlaneGraph> for Graph {
    fn from(g: &PlaneGraph) -> Self {
        Graph { n: g.n(), edges: g.edges().to_vec() }
    }
}

/// State of the (2,3)-pebble game.
///
/// Every vertex owns two pebbles; a pebble is either free on its vertex or
/// covers one accepted edge, which is then oriented away from that vertex.
#[derive(Debug, Clone)]
pub struct PebbleState {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: Vec<(usize, usize)>,
    rejected: Vec<(usize, usize)>,
}

impl PebbleState {
    pub fn new(n: usize) -> Self {
        PebbleState {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            accepted: Vec::new(),
            rejected: Vec::new(),
        }
    }

    /// Runs the game over all edges of `g` in input order.
    pub fn saturate(g: &Graph) -> Self {
        let mut st = PebbleState::new(g.n);
        for &(u, v) in &g.edges {
            st.insert(u, v);
        }
        st
    }

    pub fn n(&self) -> usize {
        self.pebbles.len()
    }

    pub fn pebbles(&self, v: usize) -> u8 {
        self.pebbles[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn accepted(&self) -> &[(usize, usize)] {
        &self.accepted
    }

    pub fn rejected(&self) -> &[(usize, usize)] {
        &self.rejected
    }

    /// Free pebbles left in the whole graph.
    pub fn free_pebbles(&self) -> usize {
        self.pebbles.iter().map(|&p| p as usize).sum()
    }

    /// Moves one free pebble onto `target` by reversing a directed path,
    /// never touching vertices marked in `blocked`.
    fn fetch(&mut self, target: usize, blocked: &[usize]) -> bool {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[target] = true;
        for &b in blocked {
            seen[b] = true;
        }
        let mut stack = vec![target];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                stack.push(y);
            }
        }
        let Some(mut y) = found else { return false };
        self.pebbles[y] -= 1;
        while y != target {
            let x = parent[y];
            let pos = self.out[x].iter().position(|&z| z == y).unwrap();
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[target] += 1;
        true
    }

    /// Collects as many pebbles as possible on `u` and `v` (at most 4).
    fn gather(&mut self, u: usize, v: usize) -> usize {
        while self.pebbles[u] < 2 && self.fetch(u, &[v]) {}
        while self.pebbles[v] < 2 && self.fetch(v, &[u]) {}
        (self.pebbles[u] + self.pebbles[v]) as usize
    }

    /// Offers edge `uv`; returns whether it was accepted as independent.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "loops are not allowed");
        if self.gather(u, v) == 4 {
            self.pebbles[u] -= 1;
            self.out[u].push(v);
            self.accepted.push((u, v));
            true
        } else {
            self.rejected.push((u, v));
            false
        }
    }

    /// Whether `uv` would be accepted, without recording it.
    pub fn is_independent(&self, u: usize, v: usize) -> bool {
        let mut probe = self.clone();
        probe.gather(u, v) == 4
    }

    /// Vertex set of the rigid component spanned by the accepted edge `uv`.
    fn component_of(&mut self, u: usize, v: usize) -> Vec<usize> {
        self.gather(u, v);
        let n = self.n();
        let mut comp = vec![u, v];
        for w in 0..n {
            if w == u || w == v || self.pebbles[w] > 0 {
                continue;
            }
            let mut seen = vec![false; n];
            seen[u] = true;
            seen[v] = true;
            seen[w] = true;
            let mut stack = vec![w];
            let mut free = false;
            while let Some(x) = stack.pop() {
                for &y in &self.out[x] {
                    if !seen[y] {
                        if self.pebbles[y] > 0 {
                            free = true;
                            break;
                        }
                        seen[y] = true;
                        stack.push(y);
                    }
                }
                if free {
                    break;
                }
            }
            if !free {
                comp.push(w);
            }
        }
        comp.sort_unstable();
        comp
    }
}

/// Outcome of a rigidity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub rigid: bool,
    /// A maximal independent edge set; a spanning Laman subgraph when rigid.
    pub laman_edges: Vec<(usize, usize)>,
    pub redundant_edges: Vec<(usize, usize)>,
    /// Degrees of freedom beyond the trivial motions: `2n - 3 - |laman_edges|`.
    pub deficiency: usize,
}

pub fn is_generically_rigid(g: &Graph) -> RigidityVerdict {
    let st = PebbleState::saturate(g);
    let target = (2 * g.n).saturating_sub(3);
    let rank = st.accepted().len();
    RigidityVerdict {
        rigid: rank == target,
        laman_edges: st.accepted().to_vec(),
        redundant_edges: st.rejected().to_vec(),
        deficiency: target - rank,
    }
}

/// True iff adding `ab` to `g` yields a generically rigid graph.
pub fn restores_rigidity(g: &Graph, a: usize, b: usize) -> bool {
    let st = PebbleState::saturate(g);
    let target = (2 * g.n).saturating_sub(3);
    let rank = st.accepted().len() + usize::from(st.is_independent(a, b));
    rank == target
}

/// Maximal rigid vertex sets. Every edge lies in exactly one of them.
pub fn rigid_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut st = PebbleState::saturate(g);
    let accepted = st.accepted().to_vec();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    for (u, v) in accepted {
        if covered.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        let comp = st.component_of(u, v);
        let set: HashSet<usize> = comp.iter().copied().collect();
        for &(a, b) in &g.edges {
            if set.contains(&a) && set.contains(&b) {
                covered.insert((a.min(b), a.max(b)));
            }
        }
        comps.push(comp);
    }
    comps
}

/// True iff all of `s` lies inside one rigid component.
pub fn moves_rigidly_together(g: &Graph, s: &[usize]) -> bool {
    rigid_components(g).iter().any(|c| s.iter().all(|x| c.binary_search(x).is_ok()))
}
