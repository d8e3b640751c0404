//! Dynamic undirected graph with vertex weights and dense, positional edge ids.
//!
//! Vertices are `1..=n` and fixed for the lifetime of a graph. Edges live in a
//! dense vector: insertion appends, removal swap-removes and reports which
//! edge moved so that per-edge solution vectors can be compacted the same way.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Position of an edge in the current edge vector (`0..m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// Undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalised edge; endpoints may be given in either order.
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    #[inline]
    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Outcome of [`Graph::remove_edge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub removed: Edge,
    /// `Some((old, new))` when the last edge was moved into the vacated slot.
    pub moved: Option<(EdgeId, EdgeId)>,
}

impl Removal {
    /// New position of an edge that survived the removal.
    pub fn remap(&self, old: EdgeId) -> EdgeId {
        match self.moved {
            Some((from, to)) if from == old => to,
            _ => old,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    weights: Vec<u64>,
    m_max: usize,
    edges: Vec<Edge>,
    lookup: HashMap<Edge, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.m_max == other.m_max
            && self.weights == other.weights
            && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` unit-weight vertices that may hold up to `m_max` edges.
    pub fn new(n: usize, m_max: usize) -> Self {
        Graph {
            n,
            weights: vec![1; n],
            m_max,
            edges: Vec::new(),
            lookup: HashMap::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn with_weights(weights: Vec<u64>, m_max: usize) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::BadWeight(i + 1));
        }
        let mut g = Graph::new(weights.len(), m_max);
        g.weights = weights;
        Ok(g)
    }

    /// Builds a graph from an edge list, failing on the first invalid edge.
    pub fn from_edges(n: usize, m_max: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n, m_max);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of possible vertex pairs, the size of the edge universe.
    pub fn pair_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id.0]
    }

    pub fn get_edge(&self, id: EdgeId) -> Result<Edge> {
        self.edges
            .get(id.0)
            .copied()
            .ok_or(Error::InvalidEdgeId { id: id.0, m: self.m() })
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<EdgeId> {
        self.lookup.get(&Edge::new(a, b)).map(|&i| EdgeId(i))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.lookup.contains_key(&Edge::new(a, b))
    }

    #[inline]
    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v - 1]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn set_weight(&mut self, v: usize, w: u64) -> Result<()> {
        self.check_vertex(v)?;
        if w == 0 {
            return Err(Error::BadWeight(v));
        }
        self.weights[v - 1] = w;
        Ok(())
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> Result<u64> {
        self.weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::Overflow("total vertex weight"))
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::BadVertex { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Ids of edges incident to `v`, in no particular order. Panics on a bad vertex.
    #[inline]
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v - 1]
    }

    pub fn incident_edges(&self, v: usize) -> Result<Vec<EdgeId>> {
        self.check_vertex(v)?;
        Ok(self.incidence[v - 1].iter().map(|&i| EdgeId(i)).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v - 1].len()
    }

    /// Appends `{a, b}` at position `m`; existing ids are untouched.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<EdgeId> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let e = Edge::new(a, b);
        if self.lookup.contains_key(&e) {
            return Err(Error::DuplicateEdge(e.u, e.v));
        }
        if self.edges.len() >= self.m_max {
            return Err(Error::UniverseFull(self.m_max));
        }
        let id = self.edges.len();
        self.edges.push(e);
        self.lookup.insert(e, id);
        self.incidence[e.u - 1].push(id);
        self.incidence[e.v - 1].push(id);
        Ok(EdgeId(id))
    }

    /// Swap-removes an edge: the last edge takes over the vacated position.
    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Removal> {
        let removed = self.get_edge(id)?;
        let last = self.edges.len() - 1;
        detach(&mut self.incidence[removed.u - 1], id.0);
        detach(&mut self.incidence[removed.v - 1], id.0);
        self.lookup.remove(&removed);
        self.edges.swap_remove(id.0);
        let moved = if id.0 != last {
            let e = self.edges[id.0];
            for x in [e.u, e.v] {
                for slot in self.incidence[x - 1].iter_mut() {
                    if *slot == last {
                        *slot = id.0;
                    }
                }
            }
            self.lookup.insert(e, id.0);
            Some((EdgeId(last), id))
        } else {
            None
        };
        Ok(Removal { removed, moved })
    }

    /// Writes the line-oriented text form read back by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("graph {} {}\n", self.n, self.m_max);
        for (i, &w) in self.weights.iter().enumerate() {
            if w != 1 {
                out.push_str(&format!("vw {} {}\n", i + 1, w));
            }
        }
        for e in &self.edges {
            out.push_str(&format!("e {} {}\n", e.u, e.v));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let tag = fields.next().unwrap_or_default();
            let nums = fields
                .map(|f| {
                    f.parse::<u64>()
                        .map_err(|_| Error::parse(line, format!("expected an integer, got `{f}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let at_line = |e: Error| Error::parse(line, e.to_string());
            match (tag, graph.as_mut()) {
                ("graph", None) => {
                    let [n, m_max] = nums[..] else {
                        return Err(Error::parse(line, "expected `graph <n> <m_max>`"));
                    };
                    graph = Some(Graph::new(n as usize, m_max as usize));
                }
                ("graph", Some(_)) => return Err(Error::parse(line, "duplicate header")),
                (_, None) => return Err(Error::parse(line, "missing `graph <n> <m_max>` header")),
                ("vw", Some(g)) => {
                    let [v, w] = nums[..] else {
                        return Err(Error::parse(line, "expected `vw <v> <w>`"));
                    };
                    g.set_weight(v as usize, w).map_err(at_line)?;
                }
                ("e", Some(g)) => {
                    let [u, v] = nums[..] else {
                        return Err(Error::parse(line, "expected `e <u> <v>`"));
                    };
                    g.add_edge(u as usize, v as usize).map_err(at_line)?;
                }
                (other, Some(_)) => {
                    return Err(Error::parse(line, format!("unknown record `{other}`")))
                }
            }
        }
        graph.ok_or_else(|| Error::parse(0, "empty graph file"))
    }
}

fn detach(list: &mut Vec<usize>, id: usize) {
    if let Some(pos) = list.iter().position(|&x| x == id) {
        list.swap_remove(pos);
    }
}
