//! Shared fixtures, a random graph generator and independent oracles for the
//! integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

use orbsplice_core::exactlin::cokernel;
use orbsplice_core::graphs::parse_graph;
use orbsplice_core::{AbelianGroupPresentation, DecoratedGraph, IntMatrix};

/// Three `-2` leaves with orbifold weight 2 around a `-2` center.
pub fn d4() -> DecoratedGraph {
    parse_graph(
        "vertex f -2\nvertex e1 -2\nvertex e2 -2\nvertex e3 -2\n\
         edge f e1\nedge f e2\nedge f e3\n\
         weight e1 2\nweight e2 2\nweight e3 2\n",
    )
    .unwrap()
}

/// Unimodular tree with four decorated leaves (weights in canonical leaf
/// order a1, a4, a5, a6).
pub fn intro(weights: [u32; 4]) -> DecoratedGraph {
    let mut d = parse_graph(
        "vertex a1 -1\nvertex a2 -5\nvertex a3 -2\nvertex a4 -1\nvertex a5 -1\nvertex a6 -2\n\
         edge a1 a2\nedge a2 a3\nedge a3 a4\nedge a2 a5\nedge a3 a6\n",
    )
    .unwrap();
    for (leaf, w) in ["a1", "a4", "a5", "a6"].iter().zip(weights) {
        d.set_weight(leaf, BigInt::from(w)).unwrap();
    }
    d
}

/// Two-node graph with determinant 4: center `c` (-4) with three -2 leaves,
/// side node `b` (-2) with a -2 and a -1 leaf. Weight `p` on x2, `q` on x5.
pub fn two_node(p: u32, q: u32) -> DecoratedGraph {
    let mut d = parse_graph(
        "vertex c -4\nvertex b -2\nvertex x1 -2\nvertex x2 -2\nvertex x3 -2\n\
         vertex x4 -2\nvertex x5 -1\n\
         edge c x1\nedge c x2\nedge c x3\nedge c b\nedge b x4\nedge b x5\n",
    )
    .unwrap();
    d.set_weight("x2", BigInt::from(p)).unwrap();
    d.set_weight("x5", BigInt::from(q)).unwrap();
    d
}

/// Minimal resolution of the (2,3,7) Brieskorn singularity link.
pub fn e237() -> DecoratedGraph {
    parse_graph(
        "vertex n -1\nvertex l2 -2\nvertex l3 -3\nvertex l7 -7\n\
         edge n l2\nedge n l3\nedge n l7\n",
    )
    .unwrap()
}

/// Four -1 lines through a smooth point: star with center -5, leaves with the
/// given orbifold weights.
pub fn star4(weights: [u32; 4]) -> DecoratedGraph {
    let mut d = parse_graph(
        "vertex c -5\nvertex l1 -1\nvertex l2 -1\nvertex l3 -1\nvertex l4 -1\n\
         edge c l1\nedge c l2\nedge c l3\nedge c l4\n",
    )
    .unwrap();
    for (leaf, w) in ["l1", "l2", "l3", "l4"].iter().zip(weights) {
        d.set_weight(leaf, BigInt::from(w)).unwrap();
    }
    d
}

/// Random negative definite decorated tree: 3..=max_vertices vertices, every
/// Euler number at most -(valence + 1) (strict diagonal dominance), orbifold
/// weights 2..=6 sprinkled on leaves.
pub fn random_decorated_tree<R: Rng>(rng: &mut R, max_vertices: usize) -> DecoratedGraph {
    let k = rng.gen_range(3..=max_vertices);
    let mut g = orbsplice_core::PlumbingGraph::new();
    let ids: Vec<String> = (0..k).map(|i| format!("v{i:02}")).collect();
    for id in &ids {
        g.add_vertex(id, BigInt::from(-1)).unwrap();
    }
    for i in 1..k {
        let parent = rng.gen_range(0..i);
        g.add_edge(&ids[i], &ids[parent]).unwrap();
    }
    for id in &ids {
        let e = -(g.valence(id) as i64 + 1 + rng.gen_range(0..3));
        g.set_euler(id, BigInt::from(e)).unwrap();
    }
    let leaves = g.leaves();
    let mut d = DecoratedGraph::new(g);
    for leaf in leaves {
        if rng.gen_bool(0.5) {
            d.set_weight(&leaf, BigInt::from(rng.gen_range(2..=6)))
                .unwrap();
        }
    }
    d
}

/// Brute-force numerical semigroup membership for small targets.
pub fn exhaustive_representable(target: u64, gens: &[u64]) -> bool {
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for s in 0..=t {
        if !reach[s] {
            continue;
        }
        for &g in gens {
            let n = s + g as usize;
            if n <= t {
                reach[n] = true;
            }
        }
    }
    reach[t]
}

/// Abstract type of the direct sum of the orbifold weights > 1.
pub fn direct_sum_of_weights(d: &DecoratedGraph) -> AbelianGroupPresentation {
    let special = d.special_vertices();
    if special.is_empty() {
        return AbelianGroupPresentation::trivial(1);
    }
    let n = special.len();
    let diag = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            d.weight(&special[i])
        } else {
            BigInt::from(0)
        }
    });
    cokernel(&diag)
}

pub fn factors(g: &AbelianGroupPresentation) -> Vec<i64> {
    g.invariant_factors()
        .iter()
        .map(|d| i64::try_from(d).unwrap())
        .collect()
}
