//! Splice diagrams, the semigroup and congruence conditions, and splice
//! equations with orbifold power substitution.
//!
//! The splice diagram of a tree collapses every maximal chain of valence-2
//! vertices; its vertices are the nodes (valence >= 3) and leaves of the
//! original graph. The end of an edge at a node `v` carries the weight
//! `|det|` of the piece of the original graph cut off in that direction.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlin::GroupElement;
use crate::graphs::{validate, DecoratedGraph, GraphError};
use crate::homology::{discriminant_group, HomologyError};
use crate::reps::{monomial_character, RepsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpliceError {
    #[error("graph has no vertex of valence >= 3; the splice diagram is empty")]
    NoNodes,
    #[error("graph is not a valid base (tree, negative definite): {0}")]
    InvalidBaseGraph(String),
    #[error("no admissible monomial at node `{node}` toward `{toward}`")]
    NoAdmissibleMonomial { node: String, toward: String },
    #[error("`{0}` is not a node of the splice diagram")]
    NotANode(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Reps(#[from] RepsError),
}

/// Splice diagram of a plumbing tree: nodes, leaves, and edge weights at the
/// node ends. Vertex ids are the ids of the underlying plumbing vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceDiagram {
    nodes: Vec<String>,
    leaves: Vec<String>,
    adjacency: BTreeMap<String, BTreeSet<String>>,
    /// Weight of the `(node, neighbor)` edge end.
    edge_weights: BTreeMap<(String, String), BigInt>,
}

impl SpliceDiagram {
    /// Nodes in canonical order.
    pub fn node_ids(&self) -> &[String] {
        &self.nodes
    }

    /// Leaves in canonical order.
    pub fn leaf_ids(&self) -> &[String] {
        &self.leaves
    }

    pub fn neighbors(&self, v: &str) -> Vec<String> {
        self.adjacency
            .get(v)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default()
    }

    pub fn valence(&self, v: &str) -> usize {
        self.adjacency.get(v).map_or(0, |s| s.len())
    }

    pub fn is_node(&self, v: &str) -> bool {
        self.nodes.iter().any(|n| n == v)
    }

    /// Weight at the `v` end of the edge `v -- w`; `v` must be a node.
    pub fn edge_weight(&self, v: &str, w: &str) -> Option<&BigInt> {
        self.edge_weights.get(&(v.to_string(), w.to_string()))
    }

    /// Product of the edge weights around a node.
    pub fn node_determinant(&self, v: &str) -> Option<BigInt> {
        if !self.is_node(v) {
            return None;
        }
        Some(
            self.neighbors(v)
                .iter()
                .map(|w| self.edge_weight(v, w).unwrap())
                .product(),
        )
    }

    /// Unique path in the diagram tree, endpoints included.
    pub fn path(&self, from: &str, to: &str) -> Option<Vec<String>> {
        let mut prev: BTreeMap<String, String> = BTreeMap::new();
        let mut queue = VecDeque::from([from.to_string()]);
        let mut seen = BTreeSet::from([from.to_string()]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![v];
                while let Some(p) = prev.get(path.last().unwrap()) {
                    path.push(p.clone());
                }
                path.reverse();
                return Some(path);
            }
            for n in self.neighbors(&v) {
                if seen.insert(n.clone()) {
                    prev.insert(n.clone(), v.clone());
                    queue.push_back(n);
                }
            }
        }
        None
    }

    /// Product over the nodes on `path` of the weights of their edges not
    /// lying on the path, skipping the contribution of `skip` if given.
    fn off_path_product(&self, path: &[String], skip: Option<&str>) -> BigInt {
        let mut acc = BigInt::one();
        for (i, y) in path.iter().enumerate() {
            if !self.is_node(y) || Some(y.as_str()) == skip {
                continue;
            }
            let on_path: BTreeSet<&String> = [
                i.checked_sub(1).map(|k| &path[k]),
                path.get(i + 1),
            ]
            .into_iter()
            .flatten()
            .collect();
            for w in self.neighbors(y) {
                if !on_path.contains(&w) {
                    acc *= self.edge_weight(y, &w).unwrap();
                }
            }
        }
        acc
    }

    /// `|det| * linking number` of the two leaves: the product of all edge
    /// weights adjacent to (but not on) the path between them.
    pub fn leaf_linking_numerator(&self, v: &str, w: &str) -> Option<BigInt> {
        let path = self.path(v, w)?;
        Some(self.off_path_product(&path, None))
    }

    /// Leaves lying in the direction of the edge `v -> toward`.
    pub fn leaves_beyond(&self, v: &str, toward: &str) -> Vec<String> {
        self.leaves
            .iter()
            .filter(|w| {
                w.as_str() == toward
                    || self
                        .path(v, w)
                        .is_some_and(|p| p.len() > 1 && p[1] == toward)
            })
            .cloned()
            .collect()
    }
}

/// Collapse all valence-2 chains of a validated plumbing tree.
pub fn splice_diagram(d: &DecoratedGraph) -> Result<SpliceDiagram, SpliceError> {
    let g = d.graph();
    let report = validate(d);
    if !(report.is_tree && report.is_negative_definite) {
        return Err(SpliceError::InvalidBaseGraph(
            report.violations.join("; "),
        ));
    }
    let nodes = g.nodes();
    if nodes.is_empty() {
        return Err(SpliceError::NoNodes);
    }
    let leaves = g.leaves();
    let mut adjacency: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for v in nodes.iter().chain(leaves.iter()) {
        adjacency.entry(v.clone()).or_default();
    }
    let mut edge_weights = BTreeMap::new();
    for v in &nodes {
        for u in g.neighbors(v) {
            // follow the chain of valence-2 vertices to the next node or leaf
            let mut prev = v.clone();
            let mut cur = u.clone();
            while g.valence(&cur) == 2 {
                let next = g
                    .neighbors(&cur)
                    .into_iter()
                    .find(|n| *n != prev)
                    .expect("valence-2 vertex has a second neighbor");
                prev = cur;
                cur = next;
            }
            adjacency.get_mut(v).unwrap().insert(cur.clone());
            adjacency.get_mut(&cur).unwrap().insert(v.clone());
            let side = g.component_without(&u, v);
            let det = g.induced_subgraph(&side).intersection_matrix().det();
            edge_weights.insert((v.clone(), cur), det.magnitude().clone().into());
        }
    }
    Ok(SpliceDiagram {
        nodes,
        leaves,
        adjacency,
        edge_weights,
    })
}

/// Leaf weights of a node `v`: for each leaf `w`, the product of the edge
/// weights adjacent to but not on the path from `v` to `w`, over the nodes of
/// the path. `full` includes the contribution of `v` itself, `reduced` omits
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafWeights {
    pub node: String,
    pub full: BTreeMap<String, BigInt>,
    pub reduced: BTreeMap<String, BigInt>,
}

pub fn leaf_weights(sd: &SpliceDiagram, node: &str) -> Result<LeafWeights, SpliceError> {
    if !sd.is_node(node) {
        return Err(SpliceError::NotANode(node.to_string()));
    }
    let mut full = BTreeMap::new();
    let mut reduced = BTreeMap::new();
    for w in sd.leaf_ids() {
        let path = sd.path(node, w).expect("diagram is connected");
        full.insert(w.clone(), sd.off_path_product(&path, None));
        reduced.insert(w.clone(), sd.off_path_product(&path, Some(node)));
    }
    Ok(LeafWeights {
        node: node.to_string(),
        full,
        reduced,
    })
}

/// Is `target` a non-negative integer combination of `gens`? Exact, via a
/// shortest-path table over the residues modulo the smallest generator.
pub fn representable(target: &BigInt, gens: &[BigInt]) -> bool {
    assert!(gens.iter().all(|g| g.is_positive()), "generators must be positive");
    if target.is_zero() {
        return true;
    }
    if target.is_negative() || gens.is_empty() {
        return false;
    }
    if gens.iter().any(|g| g.is_one()) {
        return true;
    }
    let a = gens
        .iter()
        .min()
        .unwrap()
        .to_usize()
        .expect("semigroup generator out of range");
    // dist[r] = least representable number congruent to r mod a
    let mut dist: Vec<Option<BigInt>> = vec![None; a];
    dist[0] = Some(BigInt::zero());
    let mut heap = BinaryHeap::from([Reverse((BigInt::zero(), 0usize))]);
    while let Some(Reverse((dv, r))) = heap.pop() {
        if dist[r].as_ref() != Some(&dv) {
            continue;
        }
        for g in gens {
            let nr = ((BigInt::from(r) + g) % BigInt::from(a)).to_usize().unwrap();
            let nd = &dv + g;
            if dist[nr].as_ref().map_or(true, |cur| nd < *cur) {
                dist[nr] = Some(nd.clone());
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let r = (target % BigInt::from(a)).to_usize().unwrap();
    dist[r].as_ref().is_some_and(|d| d <= target)
}

/// One semigroup condition: the weight of the edge end `node -> toward` must
/// be a non-negative combination of the reduced leaf weights in that
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupCheck {
    pub node: String,
    pub toward: String,
    pub target: BigInt,
    pub generators: Vec<BigInt>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupReport {
    pub checks: Vec<SemigroupCheck>,
    pub pass: bool,
}

pub fn semigroup_check(sd: &SpliceDiagram) -> SemigroupReport {
    let mut checks = Vec::new();
    for v in sd.node_ids() {
        let lw = leaf_weights(sd, v).expect("v is a node");
        for u in sd.neighbors(v) {
            let target = sd.edge_weight(v, &u).unwrap().clone();
            let generators: Vec<BigInt> = sd
                .leaves_beyond(v, &u)
                .iter()
                .map(|w| lw.reduced[w].clone())
                .collect();
            let pass = representable(&target, &generators);
            checks.push(SemigroupCheck {
                node: v.clone(),
                toward: u,
                target,
                generators,
                pass,
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    SemigroupReport { checks, pass }
}

/// Monomial in the leaf variables; exponents are non-negative, zero exponents
/// are dropped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MonomialExponent {
    exps: BTreeMap<String, u64>,
}

impl MonomialExponent {
    pub fn new<I: IntoIterator<Item = (String, u64)>>(pairs: I) -> Self {
        MonomialExponent {
            exps: pairs.into_iter().filter(|(_, e)| *e > 0).collect(),
        }
    }

    pub fn exponent(&self, leaf: &str) -> u64 {
        self.exps.get(leaf).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &u64)> {
        self.exps.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn to_bigint_map(&self) -> BTreeMap<String, BigInt> {
        self.exps
            .iter()
            .map(|(w, e)| (w.clone(), BigInt::from(*e)))
            .collect()
    }

    fn render(&self, prefix: &str) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|(w, e)| {
                if *e == 1 {
                    format!("{prefix}_{w}")
                } else {
                    format!("{prefix}_{w}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// All monomials in the leaves beyond `toward` whose reduced-leaf-weight
/// degree equals the edge weight, in canonical order. The second component is
/// true when enumeration stopped at `cap`.
pub fn admissible_monomials(
    sd: &SpliceDiagram,
    node: &str,
    toward: &str,
    cap: usize,
) -> Result<(Vec<MonomialExponent>, bool), SpliceError> {
    let lw = leaf_weights(sd, node)?;
    let target = sd
        .edge_weight(node, toward)
        .ok_or_else(|| SpliceError::NotANode(node.to_string()))?
        .clone();
    let leaves = sd.leaves_beyond(node, toward);
    let weights: Vec<BigInt> = leaves.iter().map(|w| lw.reduced[w].clone()).collect();
    let mut out = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(usize, BigInt, Vec<(String, u64)>)> =
        vec![(0, target, Vec::new())];
    // depth-first with descending exponent pushed last, so monomials come out
    // with early leaves' exponents ascending
    while let Some((i, remaining, partial)) = stack.pop() {
        if out.len() >= cap {
            truncated = true;
            break;
        }
        if i == leaves.len() {
            if remaining.is_zero() {
                out.push(MonomialExponent::new(partial));
            }
            continue;
        }
        let max = (&remaining / &weights[i])
            .to_u64()
            .expect("exponent out of range");
        for e in (0..=max).rev() {
            let rest = &remaining - BigInt::from(e) * &weights[i];
            let mut next = partial.clone();
            next.push((leaves[i].clone(), e));
            stack.push((i + 1, rest, next));
        }
    }
    out.sort();
    Ok((out, truncated))
}

/// Congruence data of one node: a choice of admissible monomial per edge, all
/// with the same character in the discriminant group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCongruence {
    pub node: String,
    pub pass: bool,
    pub character: Option<GroupElement>,
    /// Edge (by far endpoint) -> chosen monomial.
    pub chosen: BTreeMap<String, MonomialExponent>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub nodes: Vec<NodeCongruence>,
    pub pass: bool,
}

/// Default enumeration cap for the congruence search.
pub const DEFAULT_MONOMIAL_CAP: usize = 4096;

pub fn congruence_check(
    d: &DecoratedGraph,
    sd: &SpliceDiagram,
    cap: usize,
) -> Result<CongruenceReport, SpliceError> {
    let group = discriminant_group(d.graph())?;
    let mut nodes = Vec::new();
    for v in sd.node_ids() {
        let mut truncated = false;
        // per edge: character -> least admissible monomial with it
        let mut per_edge: Vec<(String, BTreeMap<GroupElement, MonomialExponent>)> = Vec::new();
        for u in sd.neighbors(v) {
            let (monos, cut) = admissible_monomials(sd, v, &u, cap)?;
            truncated |= cut;
            let mut by_char: BTreeMap<GroupElement, MonomialExponent> = BTreeMap::new();
            for m in monos {
                let c = monomial_character(d, &group, &m.to_bigint_map())?;
                by_char.entry(c.element).or_insert(m);
            }
            per_edge.push((u, by_char));
        }
        let mut common: Option<BTreeSet<GroupElement>> = None;
        for (_, by_char) in &per_edge {
            let chars: BTreeSet<GroupElement> = by_char.keys().cloned().collect();
            common = Some(match common {
                None => chars,
                Some(acc) => acc.intersection(&chars).cloned().collect(),
            });
        }
        let character = common.and_then(|s| s.into_iter().next());
        let (pass, chosen) = match &character {
            Some(c) => (
                true,
                per_edge
                    .iter()
                    .map(|(u, by_char)| (u.clone(), by_char[c].clone()))
                    .collect(),
            ),
            None => (false, BTreeMap::new()),
        };
        nodes.push(NodeCongruence {
            node: v.clone(),
            pass,
            character,
            chosen,
            truncated,
        });
    }
    let pass = nodes.iter().all(|n| n.pass);
    Ok(CongruenceReport { nodes, pass })
}

/// A formal sum of monomials attached to a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceEquation {
    pub node: String,
    pub terms: Vec<(BigInt, MonomialExponent)>,
}

/// Splice equations, `valence - 2` per node, in variables `x_<leaf>` (or
/// `z_<leaf>` after power substitution).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceEquationSet {
    pub variable_prefix: String,
    pub equations: Vec<SpliceEquation>,
}

impl SpliceEquationSet {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for eq in &self.equations {
            let terms: Vec<String> = eq
                .terms
                .iter()
                .map(|(c, m)| {
                    let body = m.render(&self.variable_prefix);
                    if c.is_one() {
                        body
                    } else if m.is_constant() {
                        c.to_string()
                    } else {
                        format!("{c}*{body}")
                    }
                })
                .collect();
            out.push_str(&format!("{}: {}\n", eq.node, terms.join(" + ")));
        }
        out
    }
}

impl std::fmt::Display for SpliceEquationSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Build the splice equations: at each node of valence `k`, equations
/// `M_i + c_i M_{k-2} + c_i^2 M_{k-1}` for `i = 0..k-2` with `c_i = i + 1`,
/// where `M_0, ..., M_{k-1}` are admissible monomials for the edges in
/// canonical order. When the congruence condition holds at a node, the
/// congruence witnesses are used; otherwise the least admissible monomials.
pub fn generate_equations(
    d: &DecoratedGraph,
    sd: &SpliceDiagram,
    cap: usize,
) -> Result<SpliceEquationSet, SpliceError> {
    let congruence = congruence_check(d, sd, cap)?;
    let mut equations = Vec::new();
    for (v, nc) in sd.node_ids().iter().zip(&congruence.nodes) {
        let neighbors = sd.neighbors(v);
        let mut monomials = Vec::new();
        for u in &neighbors {
            let m = if nc.pass {
                nc.chosen[u].clone()
            } else {
                let (monos, _) = admissible_monomials(sd, v, u, cap)?;
                monos
                    .into_iter()
                    .next()
                    .ok_or_else(|| SpliceError::NoAdmissibleMonomial {
                        node: v.clone(),
                        toward: u.clone(),
                    })?
            };
            monomials.push(m);
        }
        let k = neighbors.len();
        for i in 0..k.saturating_sub(2) {
            let c = BigInt::from(i as u64 + 1);
            equations.push(SpliceEquation {
                node: v.clone(),
                terms: vec![
                    (BigInt::one(), monomials[i].clone()),
                    (c.clone(), monomials[k - 2].clone()),
                    (&c * &c, monomials[k - 1].clone()),
                ],
            });
        }
    }
    Ok(SpliceEquationSet {
        variable_prefix: "x".to_string(),
        equations,
    })
}

/// Replace each `x_w` by `z_w^{n_w}`: multiply the exponent of leaf `w` by
/// its orbifold weight.
pub fn substitute_powers(
    set: &SpliceEquationSet,
    d: &DecoratedGraph,
) -> Result<SpliceEquationSet, SpliceError> {
    d.require_special_leaves()?;
    let equations = set
        .equations
        .iter()
        .map(|eq| SpliceEquation {
            node: eq.node.clone(),
            terms: eq
                .terms
                .iter()
                .map(|(c, m)| {
                    let scaled = MonomialExponent::new(m.iter().map(|(w, e)| {
                        let n = d.weight(w).to_u64().expect("weight out of range");
                        (w.clone(), e * n)
                    }));
                    (c.clone(), scaled)
                })
                .collect(),
        })
        .collect();
    Ok(SpliceEquationSet {
        variable_prefix: "z".to_string(),
        equations,
    })
}

/// Every monomial of every equation must transform by the same character of
/// the acting group: under the diagonal action of the discriminant group for
/// `x`-equations, of the orbifold group for `z`-equations. A monomial
/// `prod v_w^{b_w}` transforms on a group element `g` by
/// `sum b_w rho(g)_w mod 1`; the values must agree across the terms of each
/// equation for every generator.
pub fn verify_equivariance(
    d: &DecoratedGraph,
    set: &SpliceEquationSet,
) -> Result<bool, SpliceError> {
    let rep = if set.variable_prefix == "z" {
        crate::reps::orbifold_diagonal_rep(d)?
    } else {
        crate::reps::diagonal_rep(d)?
    };
    let pairing = |m: &MonomialExponent, g: &crate::reps::QmodZVector| {
        let mut acc = num_rational::BigRational::zero();
        for (j, w) in rep.leaf_order.iter().enumerate() {
            acc += g.entry(j) * num_rational::BigRational::from_integer(m.exponent(w).into());
        }
        &acc - acc.floor()
    };
    for k in 0..rep.group.coord_len() {
        let gen = &rep.generator_images[k];
        for eq in &set.equations {
            let values: Vec<_> = eq.terms.iter().map(|(_, m)| pairing(m, gen)).collect();
            if values.windows(2).any(|w| w[0] != w[1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;

    fn e237() -> DecoratedGraph {
        parse_graph(
            "vertex n -1\nvertex l2 -2\nvertex l3 -3\nvertex l7 -7\n\
             edge n l2\nedge n l3\nedge n l7\n",
        )
        .unwrap()
    }

    fn two_node_example() -> DecoratedGraph {
        parse_graph(
            "vertex c -4\nvertex b -2\nvertex x1 -2\nvertex x2 -2\nvertex x3 -2\n\
             vertex x4 -2\nvertex x5 -1\n\
             edge c x1\nedge c x2\nedge c x3\nedge c b\nedge b x4\nedge b x5\n\
             weight x2 3\nweight x5 5\n",
        )
        .unwrap()
    }

    fn w(sd: &SpliceDiagram, v: &str, u: &str) -> i64 {
        i64::try_from(sd.edge_weight(v, u).unwrap()).unwrap()
    }

    #[test]
    fn e237_diagram() {
        let d = e237();
        let sd = splice_diagram(&d).unwrap();
        assert_eq!(sd.node_ids(), &["n".to_string()]);
        assert_eq!(sd.leaf_ids().len(), 3);
        assert_eq!(w(&sd, "n", "l2"), 2);
        assert_eq!(w(&sd, "n", "l3"), 3);
        assert_eq!(w(&sd, "n", "l7"), 7);
        assert_eq!(sd.node_determinant("n").unwrap(), BigInt::from(42));
    }

    #[test]
    fn chain_collapses() {
        // a -- m -- b with m of valence 2: the diagram skips m entirely
        let d = parse_graph(
            "vertex a -2\nvertex m -2\nvertex c -5\nvertex p -2\nvertex q -3\nvertex r -7\n\
             edge a m\nedge m c\nedge c p\nedge c q\nedge c r\n",
        )
        .unwrap();
        let sd = splice_diagram(&d).unwrap();
        assert_eq!(sd.node_ids(), &["c".to_string()]);
        assert!(sd.neighbors("c").contains(&"a".to_string()));
        assert!(!sd.adjacency.contains_key("m"));
        // weight toward a is |det| of the a--m chain
        assert_eq!(w(&sd, "c", "a"), 3);
    }

    #[test]
    fn no_nodes_is_an_error() {
        let d = parse_graph("vertex a -2\nvertex b -2\nedge a b\n").unwrap();
        assert!(matches!(splice_diagram(&d), Err(SpliceError::NoNodes)));
    }

    #[test]
    fn two_node_edge_weights() {
        let d = two_node_example();
        let sd = splice_diagram(&d).unwrap();
        assert_eq!(sd.node_ids(), &["b".to_string(), "c".to_string()]);
        assert_eq!(w(&sd, "c", "x1"), 2);
        assert_eq!(w(&sd, "c", "x2"), 2);
        assert_eq!(w(&sd, "c", "x3"), 2);
        assert_eq!(w(&sd, "c", "b"), 1);
        assert_eq!(w(&sd, "b", "c"), 20);
        assert_eq!(w(&sd, "b", "x4"), 2);
        assert_eq!(w(&sd, "b", "x5"), 1);
    }

    #[test]
    fn two_node_leaf_weights() {
        let d = two_node_example();
        let sd = splice_diagram(&d).unwrap();
        let lw = leaf_weights(&sd, "c").unwrap();
        assert_eq!(lw.full["x1"], BigInt::from(4)); // 2*2*1 at c
        assert_eq!(lw.reduced["x1"], BigInt::one());
        assert_eq!(lw.reduced["x4"], BigInt::one()); // off-path at b: x5
        assert_eq!(lw.reduced["x5"], BigInt::from(2)); // off-path at b: x4
        let lwb = leaf_weights(&sd, "b").unwrap();
        assert_eq!(lwb.reduced["x1"], BigInt::from(4)); // x2, x3 at c
        assert_eq!(lwb.full["x4"], BigInt::from(20)); // 20 * 1 at b
    }

    #[test]
    fn representable_small_cases() {
        let b = |n: i64| BigInt::from(n);
        assert!(representable(&b(12), &[b(2), b(3)]));
        assert!(!representable(&b(1), &[b(2), b(3)]));
        assert!(!representable(&b(7), &[b(4), b(6)])); // gcd 2 does not divide 7
        assert!(representable(&b(0), &[b(5)]));
        assert!(representable(&b(43), &[b(6), b(10), b(15)]));
        assert!(!representable(&b(29), &[b(6), b(10), b(15)]));
    }

    #[test]
    fn semigroup_passes_on_examples() {
        for d in [e237(), two_node_example()] {
            let sd = splice_diagram(&d).unwrap();
            let report = semigroup_check(&sd);
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn semigroup_fails_after_blowing_up_a_leaf_twice() {
        // same as e237 but with two extra curves attached to the -7 leaf,
        // which becomes a (1, 1, 1) node
        let d = parse_graph(
            "vertex n -1\nvertex l2 -2\nvertex l3 -3\nvertex l7 -9\n\
             vertex u1 -1\nvertex u2 -1\n\
             edge n l2\nedge n l3\nedge n l7\nedge l7 u1\nedge l7 u2\n",
        )
        .unwrap();
        let sd = splice_diagram(&d).unwrap();
        assert_eq!(w(&sd, "l7", "n"), 1);
        assert_eq!(w(&sd, "l7", "u1"), 1);
        assert_eq!(w(&sd, "n", "l7"), 7);
        let report = semigroup_check(&sd);
        assert!(!report.pass);
        let failing: Vec<&SemigroupCheck> =
            report.checks.iter().filter(|c| !c.pass).collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].node, "l7");
        assert_eq!(failing[0].toward, "n");
        assert_eq!(failing[0].target, BigInt::one());
        let mut gens = failing[0].generators.clone();
        gens.sort();
        assert_eq!(gens, vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn e237_equations() {
        let d = e237();
        let sd = splice_diagram(&d).unwrap();
        let (monos, truncated) =
            admissible_monomials(&sd, "n", "l3", DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(!truncated);
        assert_eq!(monos, vec![MonomialExponent::new([("l3".to_string(), 3)])]);
        let report = congruence_check(&d, &sd, DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(report.pass); // trivial discriminant group
        let eqs = generate_equations(&d, &sd, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(eqs.to_text(), "n: x_l2^2 + x_l3^3 + x_l7^7\n");
        assert!(verify_equivariance(&d, &eqs).unwrap());
    }

    #[test]
    fn two_node_congruence_and_equations() {
        let d = two_node_example();
        let sd = splice_diagram(&d).unwrap();
        let report = congruence_check(&d, &sd, DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(report.pass, "{report:?}");
        let eqs = generate_equations(&d, &sd, DEFAULT_MONOMIAL_CAP).unwrap();
        // valence 3 at b, valence 4 at c: 1 + 2 equations
        assert_eq!(eqs.equations.len(), 3);
        assert!(verify_equivariance(&d, &eqs).unwrap());
        let z = substitute_powers(&eqs, &d).unwrap();
        assert_eq!(z.variable_prefix, "z");
        assert!(verify_equivariance(&d, &z).unwrap());
        // exponent of x5 gets multiplied by its weight 5
        for (eq, zeq) in eqs.equations.iter().zip(&z.equations) {
            for ((_, m), (_, zm)) in eq.terms.iter().zip(&zeq.terms) {
                assert_eq!(zm.exponent("x5"), 5 * m.exponent("x5"));
                assert_eq!(zm.exponent("x4"), m.exponent("x4"));
            }
        }
    }

    #[test]
    fn full_and_reduced_leaf_weights_are_proportional() {
        // l_vw * d_ve == l'_vw * d_v for every leaf w beyond edge e at v, so
        // the two forms of the semigroup condition coincide
        for d in [e237(), two_node_example()] {
            let sd = splice_diagram(&d).unwrap();
            for v in sd.node_ids() {
                let lw = leaf_weights(&sd, v).unwrap();
                let dv = sd.node_determinant(v).unwrap();
                for u in sd.neighbors(v) {
                    let dve = sd.edge_weight(v, &u).unwrap();
                    for w in sd.leaves_beyond(v, &u) {
                        assert_eq!(&lw.full[&w] * dve, &lw.reduced[&w] * &dv);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_generators_fail_equivariance() {
        // x_e1 + x_e2 over the order-four group: e1 and e2 have different
        // characters
        let d = parse_graph(
            "vertex f -2\nvertex e1 -2\nvertex e2 -2\nvertex e3 -2\n\
             edge f e1\nedge f e2\nedge f e3\n",
        )
        .unwrap();
        let set = SpliceEquationSet {
            variable_prefix: "x".to_string(),
            equations: vec![SpliceEquation {
                node: "f".to_string(),
                terms: vec![
                    (BigInt::one(), MonomialExponent::new([("e1".to_string(), 1)])),
                    (BigInt::one(), MonomialExponent::new([("e2".to_string(), 1)])),
                ],
            }],
        };
        assert!(!verify_equivariance(&d, &set).unwrap());
    }

    #[test]
    fn equation_count_is_leaves_minus_two() {
        for d in [e237(), two_node_example()] {
            let sd = splice_diagram(&d).unwrap();
            let eqs = generate_equations(&d, &sd, DEFAULT_MONOMIAL_CAP).unwrap();
            assert_eq!(eqs.equations.len(), sd.leaf_ids().len() - 2);
        }
    }

    #[test]
    fn linking_numerator_matches_det_times_linking() {
        use num_rational::BigRational;
        let d = two_node_example();
        let sd = splice_diagram(&d).unwrap();
        let g = d.graph();
        let det = validate(&d).determinant.magnitude().clone();
        let link = crate::homology::linking_matrix(g).unwrap();
        for v in sd.leaf_ids() {
            for u in sd.leaf_ids() {
                if v >= u {
                    continue;
                }
                let lhs = sd.leaf_linking_numerator(v, u).unwrap();
                let rhs = BigRational::from_integer(det.clone().into())
                    * link.get(g.index_of(v).unwrap(), g.index_of(u).unwrap());
                assert_eq!(BigRational::from_integer(lhs), rhs);
            }
        }
    }
}
