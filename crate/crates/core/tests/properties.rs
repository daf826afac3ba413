//! Randomized invariants over the whole pipeline. Seeded generators keep the
//! runs deterministic.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exhaustive_representable, random_decorated_tree};
use orbsplice_core::exactlin::{smith_normal_form, IntMatrix};
use orbsplice_core::graphs::{parse_graph, serialize, validate};
use orbsplice_core::homology::{
    kernel_type, linking_matrix, orbifold_homology, projection_hom, select_generators,
};
use orbsplice_core::reps::{diagonal_rep, orbifold_diagonal_rep, power_map_square_check};
use orbsplice_core::splice::{representable, splice_diagram, SpliceError};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    ((1usize..=5, 1usize..=5)).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #[test]
    fn snf_decomposition_identities(m in small_matrix()) {
        let dec = smith_normal_form(&m);
        prop_assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.s.clone());
        prop_assert!(dec.u.det().abs().is_one());
        prop_assert!(dec.v.det().abs().is_one());
        let diag = dec.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero(), "zero before nonzero: {:?}", diag);
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero(), "divisibility broken: {:?}", diag);
            }
        }
    }

    #[test]
    fn semigroup_membership_matches_brute_force(
        target in 0u64..=200,
        gens in proptest::collection::vec(1u64..=40, 1..=4),
    ) {
        let big: Vec<BigInt> = gens.iter().map(|&g| BigInt::from(g)).collect();
        prop_assert_eq!(
            representable(&BigInt::from(target), &big),
            exhaustive_representable(target, &gens)
        );
    }
}

#[test]
fn random_trees_are_valid_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let d = random_decorated_tree(&mut rng, 12);
        let report = validate(&d);
        assert!(report.is_tree && report.is_negative_definite, "{report:?}");
        let text = serialize(&d);
        assert_eq!(parse_graph(&text).unwrap(), d);
    }
}

#[test]
fn orbifold_order_and_kernel_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let d = random_decorated_tree(&mut rng, 12);
        let det = validate(&d).determinant.abs();
        let orb = orbifold_homology(&d).unwrap();
        let weight_product: BigInt = d.weight_vector().iter().product();
        assert_eq!(orb.order().unwrap(), det * weight_product);
        let h = projection_hom(&d).unwrap();
        assert!(h.is_well_defined());
        assert!(h.is_surjective());
        assert!(kernel_type(&h).same_type(&common::direct_sum_of_weights(&d)));
    }
}

#[test]
fn representations_inject_and_square_commutes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cap = BigInt::from(10_000);
    for _ in 0..60 {
        let d = random_decorated_tree(&mut rng, 10);
        assert!(power_map_square_check(&d).unwrap());
        let rho_star = orbifold_diagonal_rep(&d).unwrap();
        if rho_star.group.order().unwrap() <= cap {
            assert!(rho_star.is_injective());
            assert!(diagonal_rep(&d).unwrap().is_injective());
        }
    }
}

#[test]
fn blow_ups_preserve_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let d = random_decorated_tree(&mut rng, 10);
        let det = validate(&d).determinant.abs();
        let orb = orbifold_homology(&d).unwrap();
        let ids = d.graph().vertex_ids();
        let v = &ids[rng.gen_range(0..ids.len())];
        let blown = if rng.gen_bool(0.5) || d.graph().valence(v) == 0 {
            d.blow_up_free(v).unwrap()
        } else {
            let nbrs = d.graph().neighbors(v);
            d.blow_up_edge(v, &nbrs[rng.gen_range(0..nbrs.len())]).unwrap()
        };
        assert_eq!(validate(&blown).determinant.abs(), det);
        assert!(orbifold_homology(&blown).unwrap().same_type(&orb));
    }
}

#[test]
fn green_generators_generate_and_count_leaves() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for _ in 0..80 {
        let d = random_decorated_tree(&mut rng, 12);
        let g = d.graph();
        let center = match g.nodes().first() {
            Some(c) => c.clone(),
            None => continue, // strings have no interior center with valence >= 2
        };
        let gens = select_generators(&d, &center).unwrap();
        let t = g.leaves().len();
        assert_eq!(gens.len(), t);
        let orb = orbifold_homology(&d).unwrap();
        assert!(orb.invariant_factors().len() <= t);
        assert!(orb.generated_by(&gens));
        checked += 1;
    }
    assert!(checked >= 30, "too few graphs with a node: {checked}");
}

#[test]
fn linking_matrix_is_positive_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..50 {
        let d = random_decorated_tree(&mut rng, 10);
        let l = linking_matrix(d.graph()).unwrap();
        assert!(l.all_entries_positive());
        for i in 0..l.rows() {
            for j in 0..i {
                assert_eq!(l.get(i, j), l.get(j, i));
            }
        }
    }
}

#[test]
fn splice_edge_weights_match_linking_identity() {
    // product of the weights adjacent to the path between two leaves equals
    // |det| times their linking number — an independent route through the
    // rational inverse
    use num_rational::BigRational;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for _ in 0..80 {
        let d = random_decorated_tree(&mut rng, 12);
        let sd = match splice_diagram(&d) {
            Ok(sd) => sd,
            Err(SpliceError::NoNodes) => continue,
            Err(e) => panic!("{e}"),
        };
        let g = d.graph();
        let det = BigRational::from_integer(validate(&d).determinant.abs());
        let link = linking_matrix(g).unwrap();
        let leaves = sd.leaf_ids();
        for v in leaves {
            for u in leaves {
                if v >= u {
                    continue;
                }
                let lhs = BigRational::from_integer(sd.leaf_linking_numerator(v, u).unwrap());
                let rhs = &det * link.get(g.index_of(v).unwrap(), g.index_of(u).unwrap());
                assert_eq!(lhs, rhs, "leaves {v}, {u}");
            }
        }
        checked += 1;
    }
    assert!(checked >= 30, "too few graphs with a node: {checked}");
}
