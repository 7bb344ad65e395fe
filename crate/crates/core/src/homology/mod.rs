//! Exact integral simplicial homology.
//!
//! Boundary maps are assembled over a deterministic (lexicographic) face order
//! and reduced with a sparse Smith normal form, so both Betti numbers and
//! torsion coefficients are certified exactly.

mod matrix;
mod snf;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

pub use matrix::IntegerMatrix;
pub use snf::{rank, smith_normal_form, smith_normal_form_with_transforms, SmithDecomposition, SmithForm};

/// Faces per dimension and the boundary maps between them.
///
/// `faces[k + 1]` lists the `k`-faces; `boundaries[k]` is `∂_k : C_k → C_{k-1}`
/// for `0 <= k <= dim`, where `∂_0` is the augmentation onto `C_{-1} = Z·∅`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub faces: Vec<Vec<Face>>,
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplexData {
    pub fn dim(&self) -> isize {
        self.boundaries.len() as isize - 1
    }

    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        self.faces.get((k + 1) as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boundary(&self, k: isize) -> Option<&IntegerMatrix> {
        if k < 0 {
            None
        } else {
            self.boundaries.get(k as usize)
        }
    }

    /// Checks `∂_k ∘ ∂_{k+1} = 0` for every `k`.
    pub fn is_chain_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Assembles the augmented simplicial chain complex of `complex`.
pub fn boundary_matrices(complex: &SimplicialComplex) -> Result<ChainComplexData> {
    if complex.is_void() {
        return Err(Error::Precondition("homology of the void complex".into()));
    }
    let dim = complex.dim();
    let faces: Vec<Vec<Face>> = (-1..=dim).map(|k| complex.faces_of_dim(k).to_vec()).collect();
    let mut boundaries = Vec::with_capacity(faces.len() - 1);
    for k in 0..=dim {
        let lower = &faces[k as usize];
        let upper = &faces[(k + 1) as usize];
        let index: HashMap<&Face, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut m = IntegerMatrix::zeros(lower.len(), upper.len());
        for (col, sigma) in upper.iter().enumerate() {
            for j in 0..sigma.len() {
                let rho = sigma.without_index(j);
                let row = index[&rho];
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                m.set(row, col, sign);
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplexData { faces, boundaries })
}

/// One homology group `Z^rank ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: isize,
    pub rank: u64,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
}

fn bigints_as_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = Z^{}", self.dim, self.rank)?;
        for t in &self.torsion {
            write!(f, " + Z/{t}")?;
        }
        Ok(())
    }
}

/// Betti numbers and torsion per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    /// Groups from dimension -1 (reduced) or 0 (unreduced) up to the complex dimension.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    fn group(&self, k: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.dim == k)
    }

    pub fn betti(&self, k: isize) -> u64 {
        self.group(k).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, k: isize) -> &[BigInt] {
        self.group(k).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Nonzero Betti numbers by dimension.
    pub fn nonzero_betti(&self) -> BTreeMap<isize, u64> {
        self.groups
            .iter()
            .filter(|g| g.rank > 0)
            .map(|g| (g.dim, g.rank))
            .collect()
    }

    /// `sum (-1)^k β_k` over the stored dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                if g.dim.rem_euclid(2) == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }

    /// True if every group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(|g| g.rank == 0 && g.torsion.is_empty())
    }

    /// Torsion-free with exactly the given nonzero Betti numbers.
    pub fn matches(&self, expected: &BTreeMap<isize, u64>) -> bool {
        self.is_torsion_free() && &self.nonzero_betti() == expected
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Nonzero reduced Betti numbers of the sphere `S^n`.
pub fn sphere_betti(n: isize) -> BTreeMap<isize, u64> {
    BTreeMap::from([(n, 1)])
}

/// Nonzero reduced Betti numbers of `S^a × S^b` (Künneth, both `a, b >= 0`).
pub fn sphere_product_betti(a: isize, b: isize) -> BTreeMap<isize, u64> {
    let mut out = BTreeMap::new();
    if a == 0 && b == 0 {
        // four points
        out.insert(0, 3);
        return out;
    }
    for k in [a, b] {
        *out.entry(k).or_insert(0) += 1;
    }
    *out.entry(a + b).or_insert(0) += 1;
    // S^0 × S^b is two copies of S^b: the extra component shows up in degree 0
    if a == 0 || b == 0 {
        let m = a.max(b);
        return BTreeMap::from([(0, 1), (m, 2)]);
    }
    out
}

/// Integral homology of `complex`; reduced unless `reduced` is false.
pub fn homology(complex: &SimplicialComplex, reduced: bool) -> Result<HomologyProfile> {
    let chain = boundary_matrices(complex)?;
    let forms: Vec<SmithForm> = chain.boundaries.par_iter().map(smith_normal_form).collect();
    let dim = chain.dim();
    let mut groups = Vec::new();
    let lowest = if reduced { -1 } else { 0 };
    for k in lowest..=dim {
        let f_k = chain.faces_of_dim(k).len() as u64;
        // rank of ∂_k; the augmentation is dropped in the unreduced setting
        let rank_out = if k < 0 || (k == 0 && !reduced) {
            0
        } else {
            forms[k as usize].rank as u64
        };
        let (rank_in, torsion) = if k < dim {
            let form = &forms[(k + 1) as usize];
            (form.rank as u64, form.torsion())
        } else {
            (0, Vec::new())
        };
        groups.push(HomologyGroup {
            dim: k,
            rank: f_k - rank_out - rank_in,
            torsion,
        });
    }
    Ok(HomologyProfile { reduced, groups })
}

/// Reduced integral homology of `complex`.
pub fn reduced_homology(complex: &SimplicialComplex) -> Result<HomologyProfile> {
    homology(complex, true)
}

/// Invariant factors of every boundary map, with optional transform audit.
pub fn audited_smith_forms(complex: &SimplicialComplex) -> Result<Vec<SmithForm>> {
    let chain = boundary_matrices(complex)?;
    chain
        .boundaries
        .iter()
        .map(|m| {
            let dec = smith_normal_form_with_transforms(m);
            dec.verify(m)?;
            let sparse = smith_normal_form(m);
            if sparse != dec.form {
                return Err(Error::CriterionFailed("sparse and dense Smith forms disagree".into()));
            }
            Ok(sparse)
        })
        .collect()
}

/// Reduced Euler characteristic from the f-vector, `-1 + f_0 - f_1 + ...`.
pub fn reduced_euler_from_faces(complex: &SimplicialComplex) -> i64 {
    complex.f_vector().euler_characteristic() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;
    use num_traits::Zero;

    fn f(labels: &[&str]) -> Face {
        Face::of(labels.iter().copied())
    }

    fn simplex_boundary(n: usize) -> SimplicialComplex {
        let labels: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
        SimplicialComplex::simplex(Face::of(labels)).boundary().unwrap()
    }

    #[test]
    fn hollow_triangle_chain() {
        let tri = simplex_boundary(2);
        let chain = boundary_matrices(&tri).unwrap();
        let d1 = chain.boundary(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        for c in 0..3 {
            let sum: BigInt = (0..3).map(|r| d1.get(r, c)).sum();
            assert!(sum.is_zero());
        }
        assert!(chain.is_chain_complex());
        let h = reduced_homology(&tri).unwrap();
        assert_eq!(h.nonzero_betti(), sphere_betti(1));
    }

    #[test]
    fn sphere_profiles() {
        for n in 1..=5 {
            let h = reduced_homology(&simplex_boundary(n)).unwrap();
            assert!(h.matches(&sphere_betti(n as isize - 1)), "∂σ^{n}: {h}");
        }
    }

    #[test]
    fn irrelevant_complex_has_minus_one_homology() {
        let h = reduced_homology(&SimplicialComplex::irrelevant()).unwrap();
        assert_eq!(h.betti(-1), 1);
        assert!(reduced_homology(&SimplicialComplex::void()).is_err());
    }

    #[test]
    fn unreduced_counts_components() {
        let a = simplex_boundary(2);
        let b = a.relabel(|v| VertexId::new(format!("{v}'"))).unwrap();
        let h = homology(&a.union(&b), false).unwrap();
        assert_eq!(h.betti(0), 2);
        assert_eq!(h.betti(1), 2);
        let r = reduced_homology(&a.union(&b)).unwrap();
        assert_eq!(r.betti(0), 1);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // 6-vertex RP^2
        let facets = [
            ["1", "2", "3"],
            ["1", "3", "4"],
            ["1", "4", "5"],
            ["1", "5", "6"],
            ["1", "2", "6"],
            ["2", "3", "5"],
            ["3", "4", "6"],
            ["2", "4", "5"],
            ["2", "4", "6"],
            ["3", "5", "6"],
        ];
        let rp2 = SimplicialComplex::from_facets(facets.iter().map(|t| f(t))).unwrap();
        let h = reduced_homology(&rp2).unwrap();
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        assert_eq!(h.betti(2), 0);
        assert_eq!(h.to_string().lines().nth(2).unwrap(), "H_1 = Z^0 + Z/2");
    }

    #[test]
    fn kunneth_targets() {
        assert_eq!(sphere_product_betti(2, 2), BTreeMap::from([(2, 2), (4, 1)]));
        assert_eq!(sphere_product_betti(2, 3), BTreeMap::from([(2, 1), (3, 1), (5, 1)]));
        assert_eq!(sphere_product_betti(0, 2), BTreeMap::from([(0, 1), (2, 2)]));
    }

    #[test]
    fn cross_polytope_four_boundary_ranks() {
        let p = crate::crosspoly::cross_polytope_boundary(4).unwrap().complex;
        let chain = boundary_matrices(&p).unwrap();
        let ranks: Vec<usize> = (1..=3).map(|k| rank(chain.boundary(k).unwrap())).collect();
        let oracle: Vec<usize> = (1..=3).map(|k| chain.boundary(k).unwrap().bareiss_rank()).collect();
        assert_eq!(ranks, vec![7, 17, 15]);
        assert_eq!(ranks, oracle);
    }
}
