//! Discriminant and orbifold homology groups from plumbing graphs.
//!
//! The discriminant group is the cokernel of the intersection matrix; the
//! orbifold homology of a decorated graph is the cokernel of the same matrix
//! with row `i` multiplied by the orbifold weight `n_i`. The projection from
//! the orbifold group to the plain one has kernel isomorphic to the direct
//! sum of the `Z/(n_i)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{
    cokernel, column_span_basis, integer_kernel, solve_exact_matrix, AbelianGroupPresentation,
    GroupElement, IntMatrix, RatMatrix,
};
use crate::graphs::{validate, DecoratedGraph, GraphError, PlumbingGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("graph is not negative definite")]
    NotNegativeDefinite,
    #[error("`{0}` is not an interior vertex (and the graph has more than two vertices)")]
    NoInteriorVertex(String),
    #[error("selected generators fail to generate (implementation bug)")]
    GenerationFailure,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The relation matrix of orbifold homology: row `i` of the intersection
/// matrix scaled by the orbifold weight `n_i`.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    pub matrix: IntMatrix,
    pub weights: Vec<BigInt>,
    pub vertex_order: Vec<String>,
}

pub fn relation_system(d: &DecoratedGraph) -> RelationSystem {
    let m = d.graph().intersection_matrix();
    let weights = d.weight_vector();
    let matrix = IntMatrix::from_fn(m.rows(), m.cols(), |i, j| &weights[i] * m.get(i, j));
    RelationSystem {
        matrix,
        weights,
        vertex_order: d.graph().vertex_ids(),
    }
}

fn require_negative_definite(d: &DecoratedGraph) -> Result<(), HomologyError> {
    if validate(d).is_negative_definite {
        Ok(())
    } else {
        Err(HomologyError::NotNegativeDefinite)
    }
}

/// `D(Gamma)`: cokernel of the intersection matrix, isomorphic to
/// `H_1` of the link.
pub fn discriminant_group(g: &PlumbingGraph) -> Result<AbelianGroupPresentation, HomologyError> {
    require_negative_definite(&DecoratedGraph::new(g.clone()))?;
    Ok(cokernel(&g.intersection_matrix()))
}

/// `D(Gamma*)`: cokernel of the row-scaled intersection matrix; its order is
/// `|det| * prod(n_i)`.
pub fn orbifold_homology(d: &DecoratedGraph) -> Result<AbelianGroupPresentation, HomologyError> {
    require_negative_definite(d)?;
    Ok(cokernel(&relation_system(d).matrix))
}

/// Linking matrix `-(E_i . E_j)^{-1}`; entries are the linking numbers of the
/// meridian knots and are all positive for negative definite graphs.
pub fn linking_matrix(g: &PlumbingGraph) -> Result<RatMatrix, HomologyError> {
    require_negative_definite(&DecoratedGraph::new(g.clone()))?;
    let inv = crate::exactlin::rational_inverse(&g.intersection_matrix())
        .expect("negative definite matrices are invertible");
    Ok(inv.neg())
}

/// Homomorphism between two groups in canonical form, given by the images of
/// the source's canonical generators.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: AbelianGroupPresentation,
    pub target: AbelianGroupPresentation,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        assert_eq!(x.coords.len(), self.source.coord_len());
        let mut acc = self.target.zero();
        for (k, c) in x.coords.iter().enumerate() {
            acc = self
                .target
                .add(&acc, &self.target.scale(c, &self.images[k]));
        }
        acc
    }

    /// A hom is well defined iff every source relation maps to zero.
    pub fn is_well_defined(&self) -> bool {
        let torsion = self.source.invariant_factors();
        self.images.iter().enumerate().all(|(k, img)| {
            if k < torsion.len() {
                self.target.scale(&torsion[k], img).is_zero()
            } else {
                true // free generator: nothing to check
            }
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generated_by(&self.images)
    }
}

/// The natural surjection `Phi: D(Gamma*) -> D(Gamma)` sending the class of
/// `e_j` upstairs to the class of `e_j` downstairs.
pub fn projection_hom(d: &DecoratedGraph) -> Result<GroupHom, HomologyError> {
    let source = orbifold_homology(d)?;
    let target = discriminant_group(d.graph())?;
    let images = (0..source.coord_len())
        .map(|k| target.image_of_vector(source.generator_lift(k)))
        .collect();
    Ok(GroupHom {
        source,
        target,
        images,
    })
}

/// Abstract type of `ker h`, computed by lattice arithmetic: the lattice
/// `L = { x : F x in Lambda_target }` modulo the source relation lattice.
pub fn kernel_type(h: &GroupHom) -> AbelianGroupPresentation {
    assert!(
        h.source.is_finite() && h.target.is_finite(),
        "kernel_type expects finite groups"
    );
    let s = h.source.coord_len();
    if s == 0 {
        return AbelianGroupPresentation::trivial(1);
    }
    let t = h.target.coord_len();
    let diag_a = IntMatrix::from_fn(s, s, |i, j| {
        if i == j {
            h.source.invariant_factors()[i].clone()
        } else {
            BigInt::zero()
        }
    });
    let basis = if t == 0 {
        IntMatrix::identity(s)
    } else {
        // x in L  iff  F x = diag(b) y for some integer y
        let stacked = IntMatrix::from_fn(t, s + t, |i, j| {
            if j < s {
                h.images[j].coords[i].clone()
            } else if j - s == i {
                h.target.invariant_factors()[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let ker = integer_kernel(&stacked);
        // generators of L: the x-part of the kernel, plus diag(a) (contained
        // in L, and it forces full rank)
        let gens = IntMatrix::from_fn(s, ker.cols() + s, |i, j| {
            if j < ker.cols() {
                ker.get(i, j).clone()
            } else {
                diag_a.get(i, j - ker.cols()).clone()
            }
        });
        column_span_basis(&gens)
    };
    assert_eq!(basis.cols(), s, "kernel lattice must have full rank");
    // relations of L / Lambda_source: diag(a) in the basis of L
    let x = solve_exact_matrix(&basis, &diag_a)
        .expect("basis is invertible")
        .to_integer()
        .expect("sublattice coordinates are integral");
    cokernel(&x.transpose())
}

/// Generator selection: orient the tree away from `center`,
/// marking at every interior vertex one "red" arrow (to the lexicographically
/// least non-parent neighbor) and "green" arrows to the rest. The classes of
/// the green vertices (one per leaf) generate `D(Gamma*)`.
pub fn select_generators(
    d: &DecoratedGraph,
    center: &str,
) -> Result<Vec<GroupElement>, HomologyError> {
    let g = d.graph();
    if !g.contains_vertex(center) {
        return Err(GraphError::UnknownVertex(center.to_string()).into());
    }
    d.require_special_leaves()?;
    if g.num_vertices() > 2 && g.valence(center) < 2 {
        return Err(HomologyError::NoInteriorVertex(center.to_string()));
    }
    let group = orbifold_homology(d)?;

    let mut red: Vec<String> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((center.to_string(), None::<String>));
    let mut visited = std::collections::BTreeSet::new();
    while let Some((v, parent)) = queue.pop_front() {
        if !visited.insert(v.clone()) {
            continue;
        }
        let children: Vec<String> = g
            .neighbors(&v)
            .into_iter()
            .filter(|n| Some(n) != parent.as_ref())
            .collect();
        if g.valence(&v) >= 2 {
            // one red arrow per interior vertex, to the least eligible child
            if let Some(first) = children.first() {
                red.push(first.clone());
            }
        }
        for c in children {
            queue.push_back((c, Some(v.clone())));
        }
    }

    let ids = g.vertex_ids();
    let greens: Vec<String> = ids
        .iter()
        .filter(|v| !red.contains(v))
        .cloned()
        .collect();
    let elems: Vec<GroupElement> = greens
        .iter()
        .map(|v| {
            let idx = g.index_of(v).expect("green vertex exists");
            group.generator_image(idx).clone()
        })
        .collect();
    if !group.generated_by(&elems) {
        return Err(HomologyError::GenerationFailure);
    }
    Ok(elems)
}

/// Ids of the green vertices chosen by [`select_generators`], in canonical
/// order; handy for reports and tests.
pub fn select_generator_ids(d: &DecoratedGraph, center: &str) -> Result<Vec<String>, HomologyError> {
    let g = d.graph();
    if !g.contains_vertex(center) {
        return Err(GraphError::UnknownVertex(center.to_string()).into());
    }
    if g.num_vertices() > 2 && g.valence(center) < 2 {
        return Err(HomologyError::NoInteriorVertex(center.to_string()));
    }
    let mut red: Vec<String> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((center.to_string(), None::<String>));
    let mut visited = std::collections::BTreeSet::new();
    while let Some((v, parent)) = queue.pop_front() {
        if !visited.insert(v.clone()) {
            continue;
        }
        let children: Vec<String> = g
            .neighbors(&v)
            .into_iter()
            .filter(|n| Some(n) != parent.as_ref())
            .collect();
        if g.valence(&v) >= 2 {
            if let Some(first) = children.first() {
                red.push(first.clone());
            }
        }
        for c in children {
            queue.push_back((c, Some(v.clone())));
        }
    }
    Ok(g.vertex_ids().into_iter().filter(|v| !red.contains(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;
    use num_traits::Signed;

    fn d4() -> DecoratedGraph {
        parse_graph(
            "vertex f -2\nvertex e1 -2\nvertex e2 -2\nvertex e3 -2\n\
             edge f e1\nedge f e2\nedge f e3\n\
             weight e1 2\nweight e2 2\nweight e3 2\n",
        )
        .unwrap()
    }

    fn factors(g: &AbelianGroupPresentation) -> Vec<i64> {
        g.invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn d4_discriminant_is_2_2() {
        let d = d4();
        let g = discriminant_group(d.graph()).unwrap();
        assert_eq!(factors(&g), vec![2, 2]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn d4_orbifold_is_2_4_4() {
        let g = orbifold_homology(&d4()).unwrap();
        assert_eq!(factors(&g), vec![2, 4, 4]);
        assert_eq!(g.order().unwrap(), BigInt::from(32));
    }

    #[test]
    fn d4_linking_entries() {
        use num_rational::BigRational;
        let d = d4();
        let l = linking_matrix(d.graph()).unwrap();
        // order e1, e2, e3, f
        assert_eq!(l.get(0, 1), &BigRational::new(1.into(), 2.into()));
        assert_eq!(l.get(3, 3), &BigRational::from_integer(2.into()));
        assert!(l.all_entries_positive());
    }

    #[test]
    fn d4_projection_kernel_is_2_2_2() {
        let h = projection_hom(&d4()).unwrap();
        assert!(h.is_well_defined());
        assert!(h.is_surjective());
        let k = kernel_type(&h);
        assert_eq!(factors(&k), vec![2, 2, 2]);
    }

    #[test]
    fn unimodular_chain_orbifold_is_cyclic() {
        // |det| = 1, so the orbifold group collapses to the product of the
        // leaf weights: Z/2 + Z/3 + Z/5 + Z/7 = Z/210.
        let d = parse_graph(
            "vertex a1 -1\nvertex a2 -5\nvertex a3 -2\nvertex a4 -1\nvertex a5 -1\nvertex a6 -2\n\
             edge a1 a2\nedge a2 a3\nedge a3 a4\nedge a2 a5\nedge a3 a6\n\
             weight a1 2\nweight a4 3\nweight a5 5\nweight a6 7\n",
        )
        .unwrap();
        let report = validate(&d);
        assert_eq!(report.determinant.abs(), BigInt::from(1));
        let plain = discriminant_group(d.graph()).unwrap();
        assert!(plain.is_trivial());
        let orb = orbifold_homology(&d).unwrap();
        assert_eq!(factors(&orb), vec![210]);
        let k = kernel_type(&projection_hom(&d).unwrap());
        assert_eq!(factors(&k), vec![210]);
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

    #[test]
    fn two_node_orbifold_is_2_30() {
        let d = two_node_example();
        assert_eq!(validate(&d).determinant.abs(), BigInt::from(4));
        let orb = orbifold_homology(&d).unwrap();
        assert_eq!(factors(&orb), vec![2, 30]);
        let h = projection_hom(&d).unwrap();
        assert!(h.is_well_defined());
        assert!(h.is_surjective());
        // kernel is Z/3 + Z/5
        assert_eq!(factors(&kernel_type(&h)), vec![15]);
    }

    #[test]
    fn d4_green_vertices() {
        let d = d4();
        let greens = select_generator_ids(&d, "f").unwrap();
        assert_eq!(greens, vec!["e2", "e3", "f"]);
        let gens = select_generators(&d, "f").unwrap();
        assert_eq!(gens.len(), 3);
        let group = orbifold_homology(&d).unwrap();
        assert!(group.generated_by(&gens));
    }

    #[test]
    fn leaf_center_rejected_on_big_graph() {
        let d = d4();
        assert!(matches!(
            select_generators(&d, "e1"),
            Err(HomologyError::NoInteriorVertex(_))
        ));
        assert!(matches!(
            select_generators(&d, "zz"),
            Err(HomologyError::Graph(GraphError::UnknownVertex(_)))
        ));
    }

    #[test]
    fn generator_count_equals_leaf_count() {
        let d = two_node_example();
        let gens = select_generators(&d, "c").unwrap();
        assert_eq!(gens.len(), d.graph().leaves().len());
    }

    #[test]
    fn indefinite_graph_rejected() {
        let d = parse_graph("vertex a 0\n").unwrap();
        assert!(matches!(
            orbifold_homology(&d),
            Err(HomologyError::NotNegativeDefinite)
        ));
    }
}
