use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, unimodular_inverse};

/// Element of a finitely generated abelian group in canonical coordinates:
/// torsion coordinates first (reduced modulo the invariant factors), then
/// free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Finitely generated abelian group presented in canonical form
/// `Z/d_1 + Z/d_2 + ... + Z^free_rank` with `d_1 | d_2 | ...`, together with
/// the images of the original generators `e_1, ..., e_m` and integral lifts
/// of the canonical generators back to `Z^m`.
#[derive(Debug, Clone)]
pub struct AbelianGroupPresentation {
    /// Invariant factors > 1, each dividing the next.
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// Number of original generators (columns of the relation matrix).
    num_generators: usize,
    /// Row `j`: canonical coordinates of the class of `e_j`.
    generator_images: Vec<GroupElement>,
    /// Row `k`: a lift of canonical generator `k` to `Z^m`.
    generator_lifts: Vec<Vec<BigInt>>,
    /// `V^T` from the SNF of the relation matrix, plus the kept coordinate
    /// indices; used to map arbitrary vectors of `Z^m` into the group.
    vt: IntMatrix,
    kept_indices: Vec<usize>,
}

/// Cokernel `Z^m / (row span of relations)` in canonical form.
///
/// With `U * R * V = S`, the class of `x` maps to `V^T x` with coordinate `i`
/// reduced modulo `S_ii`; canonical generator `k` lifts back along a row of
/// `V^{-1}`.
pub fn cokernel(relations: &IntMatrix) -> AbelianGroupPresentation {
    let m = relations.cols();
    assert!(m > 0, "cokernel needs at least one generator");
    if relations.rows() == 0 {
        // no relations: free of rank m
        let idm = IntMatrix::identity(m);
        return AbelianGroupPresentation::assemble(m, vec![], idm.clone(), idm);
    }
    let dec = smith_normal_form(relations);
    let diag = dec.diagonal();
    let vt = dec.v.transpose();
    let vinv = unimodular_inverse(&dec.v);
    AbelianGroupPresentation::assemble(m, diag, vt, vinv)
}

impl AbelianGroupPresentation {
    fn assemble(m: usize, diag: Vec<BigInt>, vt: IntMatrix, vinv: IntMatrix) -> Self {
        // full diagonal padded with zeros (free generators) up to m
        let mut full: Vec<BigInt> = diag.into_iter().collect();
        while full.len() < m {
            full.push(BigInt::zero());
        }
        let kept_indices: Vec<usize> = (0..m)
            .filter(|&i| full[i].is_zero() || full[i] > BigInt::one())
            .collect();
        let invariant_factors: Vec<BigInt> = kept_indices
            .iter()
            .filter(|&&i| !full[i].is_zero())
            .map(|&i| full[i].clone())
            .collect();
        let free_rank = kept_indices.len() - invariant_factors.len();
        let generator_lifts: Vec<Vec<BigInt>> =
            kept_indices.iter().map(|&i| vinv.row(i)).collect();
        let mut g = AbelianGroupPresentation {
            invariant_factors,
            free_rank,
            num_generators: m,
            generator_images: vec![],
            generator_lifts,
            vt,
            kept_indices,
        };
        g.generator_images = (0..m)
            .map(|j| {
                let mut e = vec![BigInt::zero(); m];
                e[j] = BigInt::one();
                g.image_of_vector(&e)
            })
            .collect();
        g
    }

    /// The trivial group on `m` generators.
    pub fn trivial(m: usize) -> Self {
        cokernel(&IntMatrix::identity(m.max(1)))
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// Number of canonical coordinates (torsion + free).
    pub fn coord_len(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Groups are abstractly isomorphic iff their canonical data agree.
    pub fn same_type(&self, other: &AbelianGroupPresentation) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.coord_len()],
        }
    }

    /// Canonical coordinates of the class of `e_j`.
    pub fn generator_image(&self, j: usize) -> &GroupElement {
        &self.generator_images[j]
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    /// Integral lift of canonical generator `k` back to `Z^m`.
    pub fn generator_lift(&self, k: usize) -> &[BigInt] {
        &self.generator_lifts[k]
    }

    fn reduce_coord(&self, pos: usize, value: BigInt) -> BigInt {
        if pos < self.invariant_factors.len() {
            value.mod_floor(&self.invariant_factors[pos])
        } else {
            value
        }
    }

    pub fn reduce(&self, elem: &GroupElement) -> GroupElement {
        GroupElement {
            coords: elem
                .coords
                .iter()
                .enumerate()
                .map(|(k, c)| self.reduce_coord(k, c.clone()))
                .collect(),
        }
    }

    /// Class of an arbitrary vector of `Z^m` (coefficients of the `e_j`).
    pub fn image_of_vector(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.num_generators, "vector length mismatch");
        let y = self.vt.mul_vec(x);
        GroupElement {
            coords: self
                .kept_indices
                .iter()
                .enumerate()
                .map(|(k, &i)| self.reduce_coord(k, y[i].clone()))
                .collect(),
        }
    }

    /// Integral lift of an element to `Z^m` (zero maps to zero).
    pub fn lift(&self, elem: &GroupElement) -> Vec<BigInt> {
        assert_eq!(elem.coords.len(), self.coord_len());
        let mut acc = vec![BigInt::zero(); self.num_generators];
        for (k, c) in elem.coords.iter().enumerate() {
            for (j, l) in self.generator_lifts[k].iter().enumerate() {
                acc[j] += c * l;
            }
        }
        acc
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        assert_eq!(a.coords.len(), self.coord_len());
        assert_eq!(b.coords.len(), self.coord_len());
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .enumerate()
                .map(|(k, (x, y))| self.reduce_coord(k, x + y))
                .collect(),
        }
    }

    pub fn scale(&self, n: &BigInt, a: &GroupElement) -> GroupElement {
        assert_eq!(a.coords.len(), self.coord_len());
        GroupElement {
            coords: a
                .coords
                .iter()
                .enumerate()
                .map(|(k, x)| self.reduce_coord(k, n * x))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(&BigInt::from(-1), a)
    }

    /// All elements of a finite group, in mixed-radix order.
    /// Panics if the group is infinite.
    pub fn enumerate_elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![self.zero()];
        for (k, d) in self.invariant_factors.iter().enumerate() {
            let d = usize::try_from(d.clone()).expect("factor fits usize for enumeration");
            let mut next = Vec::with_capacity(out.len() * d);
            for e in &out {
                for c in 0..d {
                    let mut coords = e.coords.clone();
                    coords[k] = BigInt::from(c);
                    next.push(GroupElement { coords });
                }
            }
            out = next;
        }
        out
    }

    /// Do the given elements generate the whole (finite) group?
    pub fn generated_by(&self, elems: &[GroupElement]) -> bool {
        assert!(self.is_finite());
        let s = self.coord_len();
        if s == 0 {
            return true;
        }
        // lattice spanned by the element vectors together with the relation
        // lattice diag(d) must be all of Z^s
        let cols = elems.len() + s;
        let m = IntMatrix::from_fn(s, cols, |i, j| {
            if j < elems.len() {
                elems[j].coords[i].clone()
            } else if j - elems.len() == i {
                self.invariant_factors[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let dec = smith_normal_form(&m);
        let diag = dec.diagonal();
        diag.len() == s && diag.iter().all(|d| d.is_one())
    }

    /// Order of the subgroup generated by the given elements.
    pub fn subgroup_order(&self, elems: &[GroupElement]) -> BigInt {
        assert!(self.is_finite());
        let s = self.coord_len();
        if s == 0 {
            return BigInt::one();
        }
        let cols = elems.len() + s;
        let m = IntMatrix::from_fn(s, cols, |i, j| {
            if j < elems.len() {
                elems[j].coords[i].clone()
            } else if j - elems.len() == i {
                self.invariant_factors[i].clone()
            } else {
                BigInt::zero()
            }
        });
        // index of the column span in Z^s is the product of the SNF diagonal
        let index = smith_normal_form(&m)
            .diagonal()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d);
        self.order().expect("finite") / index
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_identity_is_trivial() {
        let g = cokernel(&IntMatrix::identity(3));
        assert!(g.invariant_factors().is_empty());
        assert_eq!(g.free_rank(), 0);
        assert!(g.is_trivial());
        assert_eq!(g.order(), Some(BigInt::one()));
    }

    #[test]
    fn cokernel_crt() {
        // Z/2 + Z/3 = Z/6 (CRT)
        let g = cokernel(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(g.invariant_factors(), &[BigInt::from(6)]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn cokernel_with_free_part() {
        let g = cokernel(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn generator_images_respect_relations() {
        let rel = IntMatrix::from_i64(&[&[2, 0, 4], &[0, 6, 3]]);
        let g = cokernel(&rel);
        for i in 0..rel.rows() {
            let img = g.image_of_vector(&rel.row(i));
            assert!(img.is_zero(), "relation row {} does not map to zero", i);
        }
    }

    #[test]
    fn lifts_invert_images() {
        let rel = IntMatrix::from_i64(&[&[4, 2], &[2, 8]]);
        let g = cokernel(&rel);
        for k in 0..g.coord_len() {
            let lift = g.generator_lift(k).to_vec();
            let back = g.image_of_vector(&lift);
            let mut expect = g.zero();
            expect.coords[k] = BigInt::one();
            assert_eq!(back, g.reduce(&expect));
        }
    }

    #[test]
    fn enumerate_and_generate() {
        let g = cokernel(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        let elems = g.enumerate_elements();
        assert_eq!(elems.len(), 8);
        assert!(g.generated_by(&g.generator_images().to_vec()));
        assert_eq!(g.subgroup_order(&[g.zero()]), BigInt::one());
    }
}
