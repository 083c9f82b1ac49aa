//! Integer linear algebra: column echelon form with a unimodular transform,
//! integer solving, canonical Hermite bases of kernels, and annihilators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn from_rows(cols: usize, entries: Vec<Vec<BigInt>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: entries.len(), cols, entries }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i][j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let entries = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        IntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.entries.iter().map(|r| dot(r, v)).collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let t = other.transpose();
        let entries = self
            .entries
            .iter()
            .map(|r| t.entries.iter().map(|c| dot(r, c)).collect())
            .collect();
        IntMatrix { rows: self.rows, cols: other.cols, entries }
    }

    /// Appends the columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, entries }
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(g, s, t)` with `s·a + t·b = g ≥ 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `A · U = H` with `U` unimodular and `H` in column echelon form: the first
/// `rank` columns of `H` carry strictly descending pivots, the rest are zero.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    h: IntMatrix,
    /// Columns of `U` stored as vectors.
    u_cols: Vec<Vec<BigInt>>,
    /// Pivot row of each of the first `rank` columns.
    pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        // Work on columns for cheap column operations.
        let mut hc: Vec<Vec<BigInt>> = a.transpose().entries;
        let mut uc: Vec<Vec<BigInt>> = (0..cols)
            .map(|j| (0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivot_rows = Vec::new();
        let mut k = 0;
        for i in 0..rows {
            if k == cols {
                break;
            }
            for j in k + 1..cols {
                if hc[j][i].is_zero() {
                    continue;
                }
                let (g, s, t) = ext_gcd(&hc[k][i], &hc[j][i]);
                let a_ = &hc[k][i] / &g;
                let b_ = &hc[j][i] / &g;
                combine(&mut hc, k, j, &s, &t, &a_, &b_);
                combine(&mut uc, k, j, &s, &t, &a_, &b_);
            }
            if hc[k][i].is_zero() {
                continue;
            }
            if hc[k][i].is_negative() {
                negate(&mut hc[k]);
                negate(&mut uc[k]);
            }
            // Reduce earlier pivot columns modulo the new pivot for smaller entries.
            for j in 0..k {
                let q = hc[j][i].div_floor(&hc[k][i]);
                if !q.is_zero() {
                    sub_multiple(&mut hc, j, k, &q);
                    sub_multiple(&mut uc, j, k, &q);
                }
            }
            pivot_rows.push(i);
            k += 1;
        }
        let h = IntMatrix { rows: cols, cols: rows, entries: hc }.transpose();
        ColumnEchelon { h, u_cols: uc, pivot_rows }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Basis of `{x ∈ ℤⁿ : A x = 0}` (not reduced).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        self.u_cols[self.rank()..].to_vec()
    }

    /// Some integer solution of `A x = b`, or `None`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.h.rows);
        let y = self.solve_echelon_integer(b)?;
        Some(self.apply_u(&y))
    }

    fn solve_echelon_integer(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.h.cols;
        let mut y = vec![BigInt::zero(); n];
        for (k, &r) in self.pivot_rows.iter().enumerate() {
            let partial: BigInt = (0..k).map(|j| self.h.get(r, j) * &y[j]).sum();
            let rest = &b[r] - partial;
            let (q, m) = rest.div_mod_floor(self.h.get(r, k));
            if !m.is_zero() {
                return None;
            }
            y[k] = q;
        }
        (0..self.h.rows).all(|i| dot(self.h.row(i), &y) == b[i]).then_some(y)
    }

    /// Coordinates `y` (over the pivot columns) of the unique rational
    /// solution of `H y = b`, if `b` lies in the rational column span.
    pub fn solve_rational_coordinates(&self, b: &[BigInt]) -> Option<Vec<BigRational>> {
        let rank = self.rank();
        let mut y: Vec<BigRational> = vec![BigRational::zero(); rank];
        for (k, &r) in self.pivot_rows.iter().enumerate() {
            let partial: BigRational = (0..k)
                .map(|j| BigRational::from_integer(self.h.get(r, j).clone()) * &y[j])
                .sum();
            y[k] = (BigRational::from_integer(b[r].clone()) - partial)
                / BigRational::from_integer(self.h.get(r, k).clone());
        }
        let consistent = (0..self.h.rows).all(|i| {
            let lhs: BigRational = (0..rank)
                .map(|j| BigRational::from_integer(self.h.get(i, j).clone()) * &y[j])
                .sum();
            lhs == BigRational::from_integer(b[i].clone())
        });
        consistent.then_some(y)
    }

    fn apply_u(&self, y: &[BigInt]) -> Vec<BigInt> {
        let n = self.u_cols.len();
        let mut x = vec![BigInt::zero(); n];
        for (col, yk) in self.u_cols.iter().zip(y) {
            if yk.is_zero() {
                continue;
            }
            for (xi, ui) in x.iter_mut().zip(col) {
                *xi += yk * ui;
            }
        }
        x
    }
}

fn combine(cols: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, a: &BigInt, b: &BigInt) {
    // [col_k, col_j] ← [s·col_k + t·col_j, −b·col_k + a·col_j], determinant s·a + t·b = 1.
    for i in 0..cols[k].len() {
        let ck = cols[k][i].clone();
        let cj = cols[j][i].clone();
        cols[k][i] = s * &ck + t * &cj;
        cols[j][i] = a * &cj - b * &ck;
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(cols: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for i in 0..cols[target].len() {
        let delta = q * &cols[source][i];
        cols[target][i] -= delta;
    }
}

/// Canonical row Hermite normal form of the lattice spanned by `vectors`:
/// positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// zero rows dropped.
pub fn row_hnf(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut r = 0;
    for col in 0..dim {
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= rows.len() || rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            negate(&mut rows[r]);
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|v| v.iter().any(|x| !x.is_zero()));
    rows
}

/// Canonical basis of the integer kernel `{k ∈ ℤⁿ : M k = 0}`, in row
/// Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let basis = ColumnEchelon::new(m).kernel_basis();
    row_hnf(&basis, m.cols())
}

/// Rows spanning `{p : pᵀ G = 0}`: integer equations cutting out the
/// rational column span of `G`.
pub fn annihilator(g: &IntMatrix) -> IntMatrix {
    let rows = integer_kernel(&g.transpose());
    IntMatrix::from_rows(g.rows(), rows)
}

/// Given a lattice basis and a linear parity functional, a basis of the
/// index-≤2 sublattice where the functional is even.
pub fn even_sublattice(basis: &[Vec<BigInt>], is_odd: impl Fn(&[BigInt]) -> bool) -> Vec<Vec<BigInt>> {
    let Some(j) = basis.iter().position(|b| is_odd(b)) else {
        return basis.to_vec();
    };
    let bj = basis[j].clone();
    basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if i == j {
                b.iter().map(|x| x * 2).collect()
            } else if is_odd(b) {
                b.iter().zip(&bj).map(|(x, y)| x - y).collect()
            } else {
                b.clone()
            }
        })
        .collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::resource(format!("exponent {x} exceeds 64 bits"))))
        .collect()
}

pub fn from_i64_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive.
pub fn primitive_first_positive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let first_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if first_negative { -g } else { g };
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        from_i64_vec(v)
    }

    fn kernel_i64(cols: usize, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        integer_kernel(&IntMatrix::from_i64_rows(cols, rows))
            .iter()
            .map(|v| to_i64_vec(v).unwrap())
            .collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_i64(2, &[vec![2, 2]]), vec![vec![1, -1]]);
        let k = kernel_i64(3, &[vec![1, 2, 3]]);
        let spec_basis = vec![big(&[-2, 1, 0]), big(&[-3, 0, 1])];
        let ours: Vec<_> = k.iter().map(|v| big(v)).collect();
        assert_eq!(row_hnf(&spec_basis, 3), ours);
        assert_eq!(k, vec![vec![1, 1, -1], vec![0, 3, -2]]);
        assert!(kernel_i64(2, &[vec![1, 0], vec![0, 1]]).is_empty());
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        assert_eq!(kernel_i64(2, &[]), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn solve_integer_systems() {
        let a = IntMatrix::from_i64_rows(3, &[vec![2, 4, 6], vec![1, 1, 1]]);
        let e = ColumnEchelon::new(&a);
        assert_eq!(e.rank(), 2);
        let x = e.solve(&big(&[2, 1])).unwrap();
        assert_eq!(a.mul_vec(&x), big(&[2, 1]));
        assert!(e.solve(&big(&[1, 0])).is_none());
        for k in e.kernel_basis() {
            assert_eq!(a.mul_vec(&k), big(&[0, 0]));
        }
    }

    #[test]
    fn rational_coordinates_detect_span() {
        // Column lattice generated by (2, 0) and (0, 3).
        let g = IntMatrix::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]);
        let e = ColumnEchelon::new(&g);
        let y = e.solve_rational_coordinates(&big(&[1, 1])).unwrap();
        let lcm = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        assert_eq!(lcm, BigInt::from(6));
        let g1 = IntMatrix::from_i64_rows(1, &[vec![2], vec![0]]);
        assert!(ColumnEchelon::new(&g1).solve_rational_coordinates(&big(&[1, 1])).is_none());
    }

    #[test]
    fn annihilator_cuts_out_span() {
        let g = IntMatrix::from_i64_rows(1, &[vec![1], vec![1], vec![0]]);
        let p = annihilator(&g);
        assert_eq!(p.rows(), 2);
        assert!(p.mul(&g).row(0).iter().all(Zero::is_zero));
        assert!(p.mul_vec(&big(&[3, 3, 0])).iter().all(Zero::is_zero));
        assert!(!p.mul_vec(&big(&[1, 0, 0])).iter().all(Zero::is_zero));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = vec![big(&[4, 6, 2]), big(&[2, 3, 5])];
        let b = vec![big(&[2, 3, 5]), big(&[6, 9, 7])];
        assert_eq!(row_hnf(&a, 3), row_hnf(&b, 3));
    }

    #[test]
    fn even_sublattice_index_two() {
        let basis = vec![big(&[1, 0]), big(&[0, 1])];
        let odd = |v: &[BigInt]| v[0].is_odd();
        let sub = even_sublattice(&basis, odd);
        assert_eq!(row_hnf(&sub, 2), vec![big(&[2, 0]), big(&[0, 1])]);
    }

    #[test]
    fn primitive_normalisation() {
        assert_eq!(primitive_first_positive(&big(&[0, -4, 6])), big(&[0, 2, -3]));
        assert_eq!(primitive_first_positive(&big(&[0, 0])), big(&[0, 0]));
    }
}
