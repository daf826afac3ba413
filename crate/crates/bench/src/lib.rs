//! Graph builders shared by the benchmarks.

use num_bigint::BigInt;
use orbsplice_core::graphs::DecoratedGraph;
use orbsplice_core::{IntMatrix, PlumbingGraph};

/// Star with `arms` legs of length `len` around a central vertex; all Euler
/// numbers chosen diagonally dominant, leaves decorated with small weights.
pub fn star_graph(arms: usize, len: usize) -> DecoratedGraph {
    let mut g = PlumbingGraph::new();
    g.add_vertex("c", BigInt::from(-(arms as i64) - 1)).unwrap();
    for a in 0..arms {
        let mut prev = "c".to_string();
        for k in 0..len {
            let id = format!("a{a}_{k}");
            g.add_vertex(&id, BigInt::from(-3)).unwrap();
            g.add_edge(&prev, &id).unwrap();
            prev = id;
        }
    }
    let mut d = DecoratedGraph::new(g);
    for (i, leaf) in d.graph().leaves().into_iter().enumerate() {
        d.set_weight(&leaf, BigInt::from(2 + (i % 4) as i64)).unwrap();
    }
    d
}

/// Dense-ish integer matrix with entries cycling through small values.
pub fn test_matrix(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::from(-10)
        } else {
            BigInt::from(((i * 7 + j * 3) % 5) as i64 - 2)
        }
    })
}
