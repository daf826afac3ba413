use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::model::DecoratedGraph;

/// Outcome of structural checks on a decorated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_tree: bool,
    pub is_negative_definite: bool,
    pub is_quasi_minimal: bool,
    /// `det(E_i . E_j)` in canonical vertex order.
    pub determinant: BigInt,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.is_tree && self.is_negative_definite && self.is_quasi_minimal
    }
}

/// Check tree-ness, negative definiteness (Sylvester: all leading principal
/// minors of `-M` positive, exact arithmetic) and quasi-minimality (every
/// maximal string contains no `-1` vertex or is a single `-1` vertex).
pub fn validate(d: &DecoratedGraph) -> ValidationReport {
    let g = d.graph();
    let mut violations = Vec::new();

    let is_tree = g.is_tree();
    if !is_tree {
        violations.push("graph is not a tree (must be connected and acyclic)".to_string());
    }

    let m = g.intersection_matrix();
    let determinant = if g.num_vertices() > 0 {
        m.det()
    } else {
        BigInt::zero()
    };

    let neg = m.to_rational().neg().to_integer().expect("integral");
    let mut is_negative_definite = g.num_vertices() > 0;
    for k in 1..=g.num_vertices() {
        if !neg.leading_principal_minor(k).is_positive() {
            is_negative_definite = false;
            let ids = g.vertex_ids();
            violations.push(format!(
                "not negative definite: leading principal minor of order {k} \
                 (through vertex `{}`) is not positive",
                ids[k - 1]
            ));
            break;
        }
    }

    // Maximal strings: connected components of the subgraph induced on
    // vertices of valence <= 2.
    let ids = g.vertex_ids();
    let string_vertices: Vec<String> = ids
        .iter()
        .filter(|v| g.valence(v) <= 2)
        .cloned()
        .collect();
    let string_set: BTreeSet<&String> = string_vertices.iter().collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut is_quasi_minimal = true;
    for start in &string_vertices {
        if seen.contains(start) {
            continue;
        }
        let mut component = Vec::new();
        let mut stack = vec![start.clone()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            component.push(v.clone());
            for n in g.neighbors(&v) {
                if string_set.contains(&n) {
                    stack.push(n);
                }
            }
        }
        let minus_ones: Vec<&String> = component
            .iter()
            .filter(|v| *g.euler(v).unwrap() == BigInt::from(-1))
            .collect();
        let ok = minus_ones.is_empty() || component.len() == 1;
        if !ok {
            is_quasi_minimal = false;
            let mut names: Vec<String> = minus_ones.iter().map(|s| s.to_string()).collect();
            names.sort();
            violations.push(format!(
                "not quasi-minimal: string of length {} contains -1 vertices [{}]",
                component.len(),
                names.join(", ")
            ));
        }
    }

    ValidationReport {
        is_tree,
        is_negative_definite,
        is_quasi_minimal,
        determinant,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;

    #[test]
    fn e237_graph_is_valid() {
        // -1 node with leaves -2, -3, -7
        let d = parse_graph(
            "vertex n -1\nvertex l2 -2\nvertex l3 -3\nvertex l7 -7\nedge n l2\nedge n l3\nedge n l7\n",
        )
        .unwrap();
        let r = validate(&d);
        assert!(r.is_tree);
        assert!(r.is_negative_definite);
        assert!(r.is_quasi_minimal);
        assert_eq!(r.determinant.abs(), BigInt::from(1));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn interior_minus_one_breaks_quasi_minimality() {
        let d = parse_graph("vertex a -2\nvertex b -1\nvertex c -3\nedge a b\nedge b c\n").unwrap();
        let r = validate(&d);
        assert!(r.is_negative_definite);
        assert!(!r.is_quasi_minimal);
    }

    #[test]
    fn lone_minus_one_string_is_fine() {
        // an isolated -1 leaf is its own maximal string and is allowed
        let d = parse_graph("vertex a -1\n").unwrap();
        let r = validate(&d);
        assert!(r.is_quasi_minimal);
        assert!(r.is_negative_definite);
    }

    #[test]
    fn zero_vertex_is_not_negative_definite() {
        let d = parse_graph("vertex a 0\n").unwrap();
        let r = validate(&d);
        assert!(!r.is_negative_definite);
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn disconnected_is_not_a_tree() {
        let d = parse_graph("vertex a -2\nvertex b -2\n").unwrap();
        let r = validate(&d);
        assert!(!r.is_tree);
    }
}
