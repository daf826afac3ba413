use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactlin::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at line {line}, column {col}: {reason}")]
    ParseError {
        line: usize,
        col: usize,
        reason: String,
    },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex `{0}`")]
    UnknownVertexInEdge(String),
    #[error("orbifold weight for `{0}` must be >= 1")]
    NonPositiveWeight(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`--`{1}`")]
    UnknownEdge(String, String),
    #[error("self-loops are not allowed (`{0}`)")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`--`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex `{0}` cannot be blown down: {1}")]
    NotBlowDownable(String, String),
    #[error("special (decorated) vertex `{0}` is not a leaf")]
    DecoratedInterior(String),
}

/// Weighted graph of exceptional curves: vertex id -> Euler number, plus a
/// set of unordered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: BTreeMap<String, BigInt>,
    edges: BTreeSet<(String, String)>,
}

fn norm_edge(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl PlumbingGraph {
    pub fn new() -> Self {
        PlumbingGraph {
            vertices: BTreeMap::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn add_vertex(&mut self, id: &str, euler: BigInt) -> Result<(), GraphError> {
        if self.vertices.contains_key(id) {
            return Err(GraphError::DuplicateVertex(id.to_string()));
        }
        self.vertices.insert(id.to_string(), euler);
        Ok(())
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        for v in [a, b] {
            if !self.vertices.contains_key(v) {
                return Err(GraphError::UnknownVertexInEdge(v.to_string()));
            }
        }
        let e = norm_edge(a, b);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&norm_edge(a, b))
    }

    /// Vertex ids in canonical (lexicographic) order.
    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.keys().cloned().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(String, String)> {
        self.edges.iter()
    }

    pub fn euler(&self, id: &str) -> Result<&BigInt, GraphError> {
        self.vertices
            .get(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn set_euler(&mut self, id: &str, euler: BigInt) -> Result<(), GraphError> {
        match self.vertices.get_mut(id) {
            Some(e) => {
                *e = euler;
                Ok(())
            }
            None => Err(GraphError::UnknownVertex(id.to_string())),
        }
    }

    pub fn remove_vertex(&mut self, id: &str) {
        self.vertices.remove(id);
        self.edges
            .retain(|(a, b)| a != id && b != id);
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) {
        self.edges.remove(&norm_edge(a, b));
    }

    /// Neighbors in canonical order.
    pub fn neighbors(&self, id: &str) -> Vec<String> {
        let mut out: Vec<String> = self
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.clone())
                } else if b == id {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn valence(&self, id: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == id || b == id).count()
    }

    /// Leaves: vertices of valence <= 1 (the single vertex of a one-vertex
    /// graph counts as a leaf).
    pub fn leaves(&self) -> Vec<String> {
        self.vertex_ids()
            .into_iter()
            .filter(|v| self.valence(v) <= 1)
            .collect()
    }

    /// Nodes: vertices of valence >= 3.
    pub fn nodes(&self) -> Vec<String> {
        self.vertex_ids()
            .into_iter()
            .filter(|v| self.valence(v) >= 3)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let ids = self.vertex_ids();
        if ids.is_empty() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![ids[0].clone()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            stack.extend(self.neighbors(&v));
        }
        seen.len() == ids.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.num_edges() + 1 == self.num_vertices()
    }

    /// Canonical index of a vertex in the sorted id order.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.keys().position(|k| k == id)
    }

    /// Symmetric intersection matrix in canonical vertex order:
    /// `M_ii = euler(i)`, `M_ij = 1` iff `i -- j` is an edge.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let ids = self.vertex_ids();
        IntMatrix::from_fn(ids.len(), ids.len(), |i, j| {
            if i == j {
                self.vertices[&ids[i]].clone()
            } else if self.has_edge(&ids[i], &ids[j]) {
                BigInt::one()
            } else {
                BigInt::from(0)
            }
        })
    }

    /// Connected component of `start` in the graph with `removed` deleted.
    pub fn component_without(&self, start: &str, removed: &str) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start.to_string()];
        while let Some(v) = stack.pop() {
            if v == removed || !seen.insert(v.clone()) {
                continue;
            }
            stack.extend(self.neighbors(&v).into_iter().filter(|n| n != removed));
        }
        seen.into_iter().collect()
    }

    /// Induced subgraph on the given vertex set.
    pub fn induced_subgraph(&self, ids: &[String]) -> PlumbingGraph {
        let keep: BTreeSet<&String> = ids.iter().collect();
        let mut g = PlumbingGraph::new();
        for id in ids {
            g.add_vertex(id, self.vertices[id].clone()).expect("unique ids");
        }
        for (a, b) in &self.edges {
            if keep.contains(a) && keep.contains(b) {
                g.add_edge(a, b).expect("valid edge");
            }
        }
        g
    }

    /// Unique path between two vertices of a tree.
    pub fn tree_path(&self, from: &str, to: &str) -> Option<Vec<String>> {
        let mut stack = vec![vec![from.to_string()]];
        while let Some(path) = stack.pop() {
            let last = path.last().unwrap().clone();
            if last == to {
                return Some(path);
            }
            for n in self.neighbors(&last) {
                if path.len() >= 2 && n == path[path.len() - 2] {
                    continue;
                }
                if path.contains(&n) {
                    continue;
                }
                let mut next = path.clone();
                next.push(n);
                stack.push(next);
            }
        }
        None
    }
}

impl Default for PlumbingGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// A plumbing graph together with orbifold weights `n_i >= 1`.
/// Missing weights default to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    graph: PlumbingGraph,
    weights: BTreeMap<String, BigInt>,
}

impl DecoratedGraph {
    pub fn new(graph: PlumbingGraph) -> Self {
        DecoratedGraph {
            graph,
            weights: BTreeMap::new(),
        }
    }

    pub fn with_weights<I>(graph: PlumbingGraph, weights: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (String, BigInt)>,
    {
        let mut d = DecoratedGraph::new(graph);
        for (id, n) in weights {
            d.set_weight(&id, n)?;
        }
        Ok(d)
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn graph_mut(&mut self) -> &mut PlumbingGraph {
        &mut self.graph
    }

    pub fn weight(&self, id: &str) -> BigInt {
        self.weights.get(id).cloned().unwrap_or_else(BigInt::one)
    }

    pub fn set_weight(&mut self, id: &str, n: BigInt) -> Result<(), GraphError> {
        if !self.graph.contains_vertex(id) {
            return Err(GraphError::UnknownVertex(id.to_string()));
        }
        if n < BigInt::one() {
            return Err(GraphError::NonPositiveWeight(id.to_string()));
        }
        if n.is_one() {
            self.weights.remove(id);
        } else {
            self.weights.insert(id.to_string(), n);
        }
        Ok(())
    }

    /// Vertices with weight > 1, in canonical order.
    pub fn special_vertices(&self) -> Vec<String> {
        self.weights.keys().cloned().collect()
    }

    /// Special vertices that are not leaves.
    pub fn decorated_interior_vertices(&self) -> Vec<String> {
        self.special_vertices()
            .into_iter()
            .filter(|v| self.graph.valence(v) > 1)
            .collect()
    }

    /// Errors with `DecoratedInterior` unless all special vertices are leaves.
    pub fn require_special_leaves(&self) -> Result<(), GraphError> {
        match self.decorated_interior_vertices().into_iter().next() {
            Some(v) => Err(GraphError::DecoratedInterior(v)),
            None => Ok(()),
        }
    }

    /// Weights in canonical vertex order (defaulting to one).
    pub fn weight_vector(&self) -> Vec<BigInt> {
        self.graph.vertex_ids().iter().map(|v| self.weight(v)).collect()
    }

    fn fresh_id(&self, base: &str) -> String {
        let mut k = 1usize;
        loop {
            let id = format!("{base}_b{k}");
            if !self.graph.contains_vertex(&id) {
                return id;
            }
            k += 1;
        }
    }

    /// Blow up a free point on `v`: new `-1` vertex attached to `v`,
    /// `euler(v)` drops by one.
    pub fn blow_up_free(&self, v: &str) -> Result<DecoratedGraph, GraphError> {
        let mut out = self.clone();
        let e = out.graph.euler(v)?.clone();
        let u = out.fresh_id(v);
        out.graph.add_vertex(&u, BigInt::from(-1)).expect("fresh id");
        out.graph.add_edge(&u, v).expect("valid edge");
        out.graph.set_euler(v, e - 1)?;
        Ok(out)
    }

    /// Blow up the intersection point of the edge `v -- w`.
    pub fn blow_up_edge(&self, v: &str, w: &str) -> Result<DecoratedGraph, GraphError> {
        if !self.graph.has_edge(v, w) {
            return Err(GraphError::UnknownEdge(v.to_string(), w.to_string()));
        }
        let mut out = self.clone();
        let u = out.fresh_id(v);
        out.graph.remove_edge(v, w);
        out.graph.add_vertex(&u, BigInt::from(-1)).expect("fresh id");
        out.graph.add_edge(&u, v).expect("valid edge");
        out.graph.add_edge(&u, w).expect("valid edge");
        let ev = out.graph.euler(v)?.clone();
        out.graph.set_euler(v, ev - 1)?;
        let ew = out.graph.euler(w)?.clone();
        out.graph.set_euler(w, ew - 1)?;
        Ok(out)
    }

    /// Blow down an undecorated `-1` vertex of valence <= 2.
    pub fn blow_down(&self, u: &str) -> Result<DecoratedGraph, GraphError> {
        let e = self.graph.euler(u)?;
        if *e != BigInt::from(-1) {
            return Err(GraphError::NotBlowDownable(
                u.to_string(),
                format!("euler number is {e}, not -1"),
            ));
        }
        if !self.weight(u).is_one() {
            return Err(GraphError::NotBlowDownable(
                u.to_string(),
                "vertex carries an orbifold weight".into(),
            ));
        }
        let nbrs = self.graph.neighbors(u);
        if nbrs.len() > 2 {
            return Err(GraphError::NotBlowDownable(
                u.to_string(),
                format!("valence {} > 2", nbrs.len()),
            ));
        }
        if nbrs.len() == 2 && self.graph.has_edge(&nbrs[0], &nbrs[1]) {
            return Err(GraphError::NotBlowDownable(
                u.to_string(),
                "neighbors are already adjacent".into(),
            ));
        }
        let mut out = self.clone();
        out.graph.remove_vertex(u);
        out.weights.remove(u);
        for n in &nbrs {
            let e = out.graph.euler(n)?.clone();
            out.graph.set_euler(n, e + 1)?;
        }
        if nbrs.len() == 2 {
            out.graph.add_edge(&nbrs[0], &nbrs[1])?;
        }
        Ok(out)
    }
}
