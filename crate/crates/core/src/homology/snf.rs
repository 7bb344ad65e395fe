//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] is the workhorse: a sparse elimination that picks
//! pivots of minimal absolute value (ties broken by Markowitz cost) and never
//! materializes transforms. [`smith_normal_form_with_transforms`] is a dense
//! variant that also returns unimodular `U`, `V` with `U·M·V` diagonal; it is
//! meant for small matrices and for auditing the sparse path.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors strictly greater than one (the torsion coefficients).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_factors.iter().all(|d| d.is_positive())
            && self.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

/// A Smith form together with the unimodular transforms producing it.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub diagonal: IntegerMatrix,
}

impl SmithDecomposition {
    /// Re-checks `U·M·V = D`, the diagonal against the factors, and `det U, det V = ±1`.
    pub fn verify(&self, m: &IntegerMatrix) -> Result<()> {
        let product = self.u.mul(m).mul(&self.v);
        if product != self.diagonal {
            return Err(Error::CriterionFailed(
                "U·M·V differs from the reported diagonal".into(),
            ));
        }
        if !self.diagonal.is_diagonal() {
            return Err(Error::CriterionFailed(
                "reported diagonal has off-diagonal entries".into(),
            ));
        }
        let diag: Vec<BigInt> = self.diagonal.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
        if diag != self.form.invariant_factors {
            return Err(Error::CriterionFailed(
                "diagonal does not match the invariant factors".into(),
            ));
        }
        for (name, t) in [("U", &self.u), ("V", &self.v)] {
            if !t.determinant().abs().is_one() {
                return Err(Error::CriterionFailed(format!("{name} is not unimodular")));
            }
        }
        Ok(())
    }
}

/// Turns a list of nonzero diagonal entries into invariant factors.
pub(crate) fn normalize_diagonal(diag: Vec<BigInt>) -> SmithForm {
    let rank = diag.len();
    let mut ones = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        let d = d.abs();
        if d.is_one() {
            ones += 1;
        } else {
            rest.push(d);
        }
    }
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut invariant_factors = vec![BigInt::one(); ones];
    for d in rest {
        if d.is_one() {
            invariant_factors.insert(0, d);
        } else {
            invariant_factors.push(d);
        }
    }
    SmithForm {
        invariant_factors,
        rank,
    }
}

struct SparseWork {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseWork {
    fn new(m: &IntegerMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (r, c, v) in m.entries() {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        SparseWork { rows, cols }
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let rlen = row.len();
            for (&c, v) in row {
                let mag = v.abs();
                let cost = (rlen - 1) * (self.cols[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((bm, bc, _, _)) => mag < *bm || (mag == *bm && cost < *bc),
                };
                if better {
                    let done = mag.is_one() && cost == 0;
                    best = Some((mag, cost, r, c));
                    if done {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// `row[target] += factor * row[source]`.
    fn row_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src {
            let entry = self.rows[target].entry(c).or_insert_with(BigInt::zero);
            *entry += factor * v;
            if entry.is_zero() {
                self.rows[target].remove(&c);
                self.cols[c].remove(&target);
            } else {
                self.cols[c].insert(target);
            }
        }
    }

    /// Clears the pivot's column and row. Returns false if a nonzero remainder
    /// smaller than the pivot was produced, in which case a new pivot is needed.
    fn reduce_at(&mut self, r: usize, c: usize) -> bool {
        let p = self.rows[r][&c].clone();
        let mut clean = true;
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let a = self.rows[i][&c].clone();
            let q = a.div_floor(&p);
            if !q.is_zero() {
                self.row_axpy(i, r, &-q);
            }
            if self.rows[i].contains_key(&c) {
                clean = false;
            }
        }
        if !clean {
            return false;
        }
        // Column c now holds only the pivot, so column operations touch row r alone.
        let entries: Vec<(usize, BigInt)> = self.rows[r]
            .iter()
            .filter(|(&j, _)| j != c)
            .map(|(&j, v)| (j, v.clone()))
            .collect();
        for (j, a) in entries {
            let rem = a.mod_floor(&p);
            if rem.is_zero() {
                self.rows[r].remove(&j);
                self.cols[j].remove(&r);
            } else {
                self.rows[r].insert(j, rem);
                clean = false;
            }
        }
        clean
    }

    fn take_pivot(&mut self, r: usize, c: usize) -> BigInt {
        let p = self.rows[r].remove(&c).expect("pivot present");
        debug_assert!(self.rows[r].is_empty());
        self.cols[c].remove(&r);
        debug_assert!(self.cols[c].is_empty());
        p.abs()
    }
}

/// Invariant factors and rank of `m` by sparse elimination.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut work = SparseWork::new(m);
    let mut diag = Vec::new();
    while let Some((r, c)) = work.select_pivot() {
        if work.reduce_at(r, c) {
            diag.push(work.take_pivot(r, c));
        }
    }
    normalize_diagonal(diag)
}

/// Rank of `m` (number of invariant factors).
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

/// Dense Smith normal form with unimodular transforms `U` and `V` such that
/// `U·M·V` is diagonal with the invariant factors in order.
pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut u = IntegerMatrix::identity(rows).to_dense();
    let mut v = IntegerMatrix::identity(cols).to_dense();

    fn row_op(mat: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let src = mat[source].clone();
        for (t, s) in mat[target].iter_mut().zip(src.iter()) {
            *t += factor * s;
        }
    }
    fn col_op(mat: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for row in mat.iter_mut() {
            let s = row[source].clone();
            row[target] += factor * s;
        }
    }
    fn swap_cols(mat: &mut [Vec<BigInt>], i: usize, j: usize) {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    }

    let mut t = 0;
    while t < rows.min(cols) {
        loop {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.as_ref().is_none_or(|(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                // Remaining block is zero.
                return finish(m, a, u, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let p = a[t][t].clone();
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                row_op(&mut a, i, t, &-&q);
                row_op(&mut u, i, t, &-q);
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                col_op(&mut a, j, t, &-&q);
                col_op(&mut v, j, t, &-q);
            }
            let residue = (t + 1..rows).any(|i| !a[i][t].is_zero()) || (t + 1..cols).any(|j| !a[t][j].is_zero());
            if residue {
                continue;
            }
            // The pivot must divide the remaining block; otherwise fold a row in.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            if let Some(i) = bad {
                row_op(&mut a, t, i, &BigInt::one());
                row_op(&mut u, t, i, &BigInt::one());
                continue;
            }
            if p.is_negative() {
                for x in a[t].iter_mut() {
                    *x = -&*x;
                }
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
            break;
        }
        t += 1;
    }
    finish(m, a, u, v)
}

fn finish(m: &IntegerMatrix, a: Vec<Vec<BigInt>>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>) -> SmithDecomposition {
    fn build(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out.set(i, j, x.clone());
            }
        }
        out
    }
    let diagonal = build(m.rows(), m.cols(), &a);
    let factors: Vec<BigInt> = diagonal.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
    let rank = factors.len();
    SmithDecomposition {
        form: SmithForm {
            invariant_factors: factors,
            rank,
        },
        u: build(m.rows(), m.rows(), &u),
        v: build(m.cols(), m.cols(), &v),
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, big(&[1, 6]));
        assert_eq!(s.rank, 2);
        let d = smith_normal_form_with_transforms(&m);
        assert_eq!(d.form.invariant_factors, big(&[1, 6]));
        d.verify(&m).unwrap();
    }

    #[test]
    fn zero_matrix() {
        let m = IntegerMatrix::zeros(3, 4);
        let s = smith_normal_form(&m);
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.rank, 0);
        smith_normal_form_with_transforms(&m).verify(&m).unwrap();
        let empty = IntegerMatrix::zeros(0, 5);
        assert_eq!(smith_normal_form(&empty).rank, 0);
    }

    #[test]
    fn hollow_triangle_boundary() {
        // edges ab, ac, bc -> vertices a, b, c
        let m = IntegerMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, big(&[1, 1]));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn torsion_from_real_projective_plane_like_block() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, big(&[2, 6, 12]));
        let d = smith_normal_form_with_transforms(&m);
        d.verify(&m).unwrap();
        assert_eq!(d.form, s);
    }

    #[test]
    fn normalize_makes_divisibility_chain() {
        let s = normalize_diagonal(big(&[4, 6, 1, 10]));
        assert_eq!(s.invariant_factors, big(&[1, 2, 2, 60]));
        assert!(s.is_divisibility_chain());
    }
}
