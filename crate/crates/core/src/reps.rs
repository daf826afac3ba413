//! Diagonal representations of the homology groups in `(Q/Z)^t`, one
//! coordinate per leaf.
//!
//! The class of a vector `x` acts on the leaf coordinate `w` by
//! `(M^{-1} x)_w mod 1` (plain group) or `(M^{-1} x)_w / n_w mod 1`
//! (orbifold group). Both maps are injective, and raising the orbifold
//! coordinate `w` to the power `n_w` recovers the plain action: the square
//!
//! ```text
//!   D(orb) --rho*--> (Q/Z)^t
//!     |                 |
//!    Phi           power map
//!     v                 v
//!   D      --rho--> (Q/Z)^t
//! ```
//!
//! commutes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{rational_inverse, AbelianGroupPresentation, GroupElement};
use crate::graphs::{DecoratedGraph, GraphError};
use crate::homology::{discriminant_group, orbifold_homology, projection_hom, HomologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("`{0}` is not a leaf")]
    NotALeaf(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vector with entries in `Q/Z`, stored as rationals in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QmodZVector {
    entries: Vec<BigRational>,
}

fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

impl QmodZVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        QmodZVector {
            entries: entries.iter().map(frac).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        QmodZVector {
            entries: vec![BigRational::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, j: usize) -> &BigRational {
        &self.entries[j]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &QmodZVector) -> QmodZVector {
        assert_eq!(self.len(), other.len());
        QmodZVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> QmodZVector {
        let c = BigRational::from_integer(c.clone());
        QmodZVector::new(self.entries.iter().map(|a| a * &c).collect())
    }
}

impl std::fmt::Display for QmodZVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A homology group together with its diagonal action on the leaf
/// coordinates.
#[derive(Debug, Clone)]
pub struct DiagonalRepresentation {
    pub group: AbelianGroupPresentation,
    /// Leaf ids, canonical order; coordinate `j` belongs to `leaf_order[j]`.
    pub leaf_order: Vec<String>,
    /// Image of canonical generator `k`.
    pub generator_images: Vec<QmodZVector>,
    vertex_images: Vec<QmodZVector>,
    vertex_order: Vec<String>,
}

impl DiagonalRepresentation {
    pub fn image_of(&self, x: &GroupElement) -> QmodZVector {
        assert_eq!(x.coords.len(), self.group.coord_len());
        let mut acc = QmodZVector::zero(self.leaf_order.len());
        for (k, c) in x.coords.iter().enumerate() {
            acc = acc.add(&self.generator_images[k].scale(c));
        }
        acc
    }

    /// Image of the class of the basis vector of a single vertex.
    pub fn image_of_vertex(&self, id: &str) -> Option<&QmodZVector> {
        let j = self.vertex_order.iter().position(|v| v == id)?;
        Some(&self.vertex_images[j])
    }

    /// Exhaustive injectivity check; only call on small finite groups.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for e in self.group.enumerate_elements() {
            if !seen.insert(self.image_of(&e)) {
                return false;
            }
        }
        true
    }
}

fn build_rep(
    d: &DecoratedGraph,
    group: AbelianGroupPresentation,
    orbifold: bool,
) -> DiagonalRepresentation {
    let g = d.graph();
    let minv = rational_inverse(&g.intersection_matrix())
        .expect("negative definite matrices are invertible");
    let vertex_order = g.vertex_ids();
    let leaf_order = g.leaves();
    let leaf_rows: Vec<usize> = leaf_order
        .iter()
        .map(|w| g.index_of(w).unwrap())
        .collect();
    let value = |x: &[BigInt]| -> QmodZVector {
        QmodZVector::new(
            leaf_rows
                .iter()
                .zip(&leaf_order)
                .map(|(&row, w)| {
                    let mut acc = BigRational::zero();
                    for (j, c) in x.iter().enumerate() {
                        acc += minv.get(row, j) * BigRational::from_integer(c.clone());
                    }
                    if orbifold {
                        acc /= BigRational::from_integer(d.weight(w));
                    }
                    acc
                })
                .collect(),
        )
    };
    let n = vertex_order.len();
    let vertex_images = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            value(&e)
        })
        .collect();
    let generator_images = (0..group.coord_len())
        .map(|k| value(group.generator_lift(k)))
        .collect();
    DiagonalRepresentation {
        group,
        leaf_order,
        generator_images,
        vertex_images,
        vertex_order,
    }
}

/// Diagonal representation of the discriminant group.
pub fn diagonal_rep(d: &DecoratedGraph) -> Result<DiagonalRepresentation, RepsError> {
    let group = discriminant_group(d.graph())?;
    Ok(build_rep(d, group, false))
}

/// Diagonal representation of the orbifold group; requires all orbifold
/// weights to sit on leaves.
pub fn orbifold_diagonal_rep(d: &DecoratedGraph) -> Result<DiagonalRepresentation, RepsError> {
    d.require_special_leaves()?;
    let group = orbifold_homology(d)?;
    Ok(build_rep(d, group, true))
}

/// Coordinatewise power map: multiplies leaf coordinate `w` by `n_w`.
#[derive(Debug, Clone)]
pub struct PowerMap {
    pub leaf_order: Vec<String>,
    pub exponents: Vec<BigInt>,
}

impl PowerMap {
    pub fn new(d: &DecoratedGraph) -> Self {
        let leaf_order = d.graph().leaves();
        let exponents = leaf_order.iter().map(|w| d.weight(w)).collect();
        PowerMap {
            leaf_order,
            exponents,
        }
    }

    pub fn apply(&self, v: &QmodZVector) -> QmodZVector {
        assert_eq!(v.len(), self.exponents.len());
        QmodZVector::new(
            v.entries()
                .iter()
                .zip(&self.exponents)
                .map(|(e, n)| e * BigRational::from_integer(n.clone()))
                .collect(),
        )
    }
}

/// Check that the power map intertwines the two representations on every
/// canonical generator of the orbifold group.
pub fn power_map_square_check(d: &DecoratedGraph) -> Result<bool, RepsError> {
    let rho = diagonal_rep(d)?;
    let rho_star = orbifold_diagonal_rep(d)?;
    let phi = projection_hom(d)?;
    let n = PowerMap::new(d);
    for k in 0..rho_star.group.coord_len() {
        let mut gen = rho_star.group.zero();
        gen.coords[k] = BigInt::one();
        let left = n.apply(&rho_star.image_of(&gen));
        let right = rho.image_of(&phi.apply(&gen));
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class of a monomial in the leaf variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub element: GroupElement,
}

/// Character of `prod x_w^{a_w}` in the given homology group of the graph:
/// the class of `sum a_w e_w`. The group must be one computed from the same
/// graph (same generator count).
pub fn monomial_character(
    d: &DecoratedGraph,
    group: &AbelianGroupPresentation,
    exponents: &BTreeMap<String, BigInt>,
) -> Result<Character, RepsError> {
    let g = d.graph();
    let mut x = vec![BigInt::zero(); g.num_vertices()];
    for (w, a) in exponents {
        if !g.contains_vertex(w) || g.valence(w) > 1 {
            return Err(RepsError::NotALeaf(w.clone()));
        }
        x[g.index_of(w).unwrap()] = a.clone();
    }
    Ok(Character {
        element: group.image_of_vector(&x),
    })
}

pub fn monomials_same_character(
    d: &DecoratedGraph,
    group: &AbelianGroupPresentation,
    a: &BTreeMap<String, BigInt>,
    b: &BTreeMap<String, BigInt>,
) -> Result<bool, RepsError> {
    Ok(monomial_character(d, group, a)? == monomial_character(d, group, b)?)
}
