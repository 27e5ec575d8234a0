//! Smith normal form by pivoting elimination.
//!
//! The engine runs on `i64` first, retries on `i128` and finally on `BigInt`
//! if an intermediate value overflows. All three runs perform the same
//! sequence of operations, so the output does not depend on which one
//! finished.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::entry::Entry;
use super::group::FinAbGroup;
use super::matrix::IntMatrix;
use super::sparse;

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ... | d_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular `rows x rows`.
    pub left: Option<IntMatrix>,
    /// Unimodular `cols x cols`.
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    /// The `rows x cols` diagonal matrix `D`.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// `Z^rows / im(A)`.
    pub fn cokernel(&self) -> FinAbGroup {
        FinAbGroup::from_chain(
            self.rows - self.rank,
            self.invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned(),
        )
    }
}

/// Smith normal form of `a`, with the unimodular transforms when requested.
pub fn snf(a: &IntMatrix, want_transforms: bool) -> SmithForm {
    snf_tracking(a, &[], want_transforms).0
}

/// Computes the Smith form while applying the same row operations to each
/// of `tracked` (vectors of length `a.rows()`), returning `U * v` for each.
pub(crate) fn snf_tracking(
    a: &IntMatrix,
    tracked: &[Vec<BigInt>],
    want_transforms: bool,
) -> (SmithForm, Vec<Vec<BigInt>>) {
    for v in tracked {
        assert_eq!(v.len(), a.rows(), "tracked vector length");
    }
    if !want_transforms {
        if let Some(out) = run_sparse::<i64>(a, tracked) {
            return out;
        }
        if let Some(out) = run_sparse::<i128>(a, tracked) {
            return out;
        }
        return run_sparse::<BigInt>(a, tracked).expect("arbitrary precision never overflows");
    }
    if let Some(out) = Work::<i64>::load(a, tracked, true).and_then(Work::run) {
        return out;
    }
    if let Some(out) = Work::<i128>::load(a, tracked, true).and_then(Work::run) {
        return out;
    }
    Work::<BigInt>::load(a, tracked, true)
        .and_then(Work::run)
        .expect("arbitrary precision never overflows")
}

/// Unit pivots first, sparsely; the dense engine finishes the rest.
fn run_sparse<T: Entry>(
    a: &IntMatrix,
    tracked: &[Vec<BigInt>],
) -> Option<(SmithForm, Vec<Vec<BigInt>>)> {
    let red = sparse::reduce::<T>(a, tracked)?;
    let e = red.eliminated;
    let work = Work {
        rows: red.block.len(),
        cols: red.block_cols,
        a: red.block,
        u: None,
        vt: None,
        tracked: red.tracked,
    };
    let (rest, rest_tracked) = work.run()?;
    let mut invariant_factors = vec![<BigInt as One>::one(); e];
    invariant_factors.extend(rest.invariant_factors);
    let tracked = rest_tracked
        .into_iter()
        .map(|t| {
            let mut full = vec![BigInt::from(0); e];
            full.extend(t);
            full
        })
        .collect();
    let form = SmithForm {
        rows: a.rows(),
        cols: a.cols(),
        rank: invariant_factors.len(),
        invariant_factors,
        left: None,
        right: None,
    };
    Some((form, tracked))
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    /// Stored transposed: `vt[j]` is column `j` of `V`.
    vt: Option<Vec<Vec<T>>>,
    /// `tracked[t][i]`
    tracked: Vec<Vec<T>>,
}

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

impl<T: Entry> Work<T> {
    fn load(a: &IntMatrix, tracked: &[Vec<BigInt>], want_transforms: bool) -> Option<Self> {
        let (rows, cols) = (a.rows(), a.cols());
        let mut m = Vec::with_capacity(rows);
        if let Some(s) = a.as_small() {
            for i in 0..rows {
                m.push(
                    s[i * cols..(i + 1) * cols]
                        .iter()
                        .map(|&x| T::from_big(&BigInt::from(x)))
                        .collect::<Option<Vec<T>>>()?,
                );
            }
        } else {
            for i in 0..rows {
                m.push(
                    a.row(i)
                        .iter()
                        .map(T::from_big)
                        .collect::<Option<Vec<T>>>()?,
                );
            }
        }
        let tracked = tracked
            .iter()
            .map(|v| v.iter().map(T::from_big).collect::<Option<Vec<T>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Work {
            rows,
            cols,
            a: m,
            u: want_transforms.then(|| identity(rows)),
            vt: want_transforms.then(|| identity(cols)),
            tracked,
        })
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
        for t in &mut self.tracked {
            t.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(vt) = &mut self.vt {
            vt.swap(j, k);
        }
    }

    /// `row_i -= c * row_k` on the matrix, starting at column `from`
    /// (columns before it are zero in row `k`), and on `U` and tracked vectors.
    fn row_sub(&mut self, i: usize, k: usize, c: &T, support: &[usize]) -> Option<()> {
        let (ri, rk) = pair_mut(&mut self.a, i, k);
        for &j in support {
            ri[j] = ri[j].sub_mul(c, &rk[j])?;
        }
        if let Some(u) = &mut self.u {
            let (ui, uk) = pair_mut(u, i, k);
            for (x, y) in ui.iter_mut().zip(uk.iter()) {
                if !y.is_zero() {
                    *x = x.sub_mul(c, y)?;
                }
            }
        }
        for t in &mut self.tracked {
            if !t[k].is_zero() {
                t[i] = t[i].sub_mul(c, &t[k])?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, k: usize) -> Option<()> {
        for x in &mut self.a[k] {
            if !x.is_zero() {
                *x = x.neg()?;
            }
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[k] {
                if !x.is_zero() {
                    *x = x.neg()?;
                }
            }
        }
        for t in &mut self.tracked {
            t[k] = t[k].neg()?;
        }
        Some(())
    }

    /// Nonzero column positions of row `k`, from column `k` on.
    fn support(&self, k: usize) -> Vec<usize> {
        (k..self.cols)
            .filter(|&j| !self.a[k][j].is_zero())
            .collect()
    }

    /// Smallest nonzero |entry| in the block `[k.., k..]`; ties go to the
    /// lowest row, then the lowest column.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                    if x.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Reduces column `k` below the pivot. Returns `false` if a nonzero
    /// remainder was swapped into the pivot position.
    fn clear_column(&mut self, k: usize) -> Option<bool> {
        let support = self.support(k);
        let p = self.a[k][k].clone();
        let mut smallest: Option<usize> = None;
        for i in k + 1..self.rows {
            if self.a[i][k].is_zero() {
                continue;
            }
            let c = self.a[i][k].div_nearest(&p)?;
            if !c.is_zero() {
                self.row_sub(i, k, &c, &support)?;
            }
            if !self.a[i][k].is_zero()
                && smallest.is_none_or(|s| self.a[i][k].abs_lt(&self.a[s][k]))
            {
                smallest = Some(i);
            }
        }
        match smallest {
            Some(s) => {
                self.swap_rows(k, s);
                Some(false)
            }
            None => Some(true),
        }
    }

    /// Reduces row `k` right of the pivot by column operations. Column `k`
    /// must already be clear below the pivot, so only row `k` of the matrix
    /// changes. Returns `false` if a remainder column was swapped in.
    fn clear_row(&mut self, k: usize) -> Option<bool> {
        let p = self.a[k][k].clone();
        let mut smallest: Option<usize> = None;
        for j in k + 1..self.cols {
            if self.a[k][j].is_zero() {
                continue;
            }
            let c = self.a[k][j].div_nearest(&p)?;
            if !c.is_zero() {
                self.a[k][j] = self.a[k][j].sub_mul(&c, &p)?;
                if let Some(vt) = &mut self.vt {
                    let (vj, vk) = pair_mut(vt, j, k);
                    for (x, y) in vj.iter_mut().zip(vk.iter()) {
                        if !y.is_zero() {
                            *x = x.sub_mul(&c, y)?;
                        }
                    }
                }
            }
            if !self.a[k][j].is_zero()
                && smallest.is_none_or(|s| self.a[k][j].abs_lt(&self.a[k][s]))
            {
                smallest = Some(j);
            }
        }
        match smallest {
            Some(s) => {
                self.swap_cols(k, s);
                Some(false)
            }
            None => Some(true),
        }
    }

    /// First entry of the trailing block not divisible by the pivot.
    fn find_non_multiple(&self, k: usize) -> Option<usize> {
        let p = &self.a[k][k];
        (k + 1..self.rows).find(|&i| (k + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }

    fn run(mut self) -> Option<(SmithForm, Vec<Vec<BigInt>>)> {
        let mut diag = Vec::new();
        let mut k = 0;
        while k < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.find_pivot(k) else {
                break;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                if !self.clear_column(k)? {
                    continue;
                }
                if !self.clear_row(k)? {
                    continue;
                }
                if self.a[k][k].is_unit() {
                    break;
                }
                match self.find_non_multiple(k) {
                    Some(i) => {
                        // row_k += row_i; column k of row i is zero
                        let support: Vec<usize> = (k..self.cols)
                            .filter(|&j| !self.a[i][j].is_zero())
                            .collect();
                        let minus_one = T::one().neg()?;
                        self.row_sub(k, i, &minus_one, &support)?;
                    }
                    None => break,
                }
            }
            if self.a[k][k].is_negative() {
                self.negate_row(k)?;
            }
            diag.push(self.a[k][k].to_big());
            k += 1;
        }
        let to_matrix = |m: &Vec<Vec<T>>, transpose: bool| {
            let n = m.len();
            IntMatrix::from_big_fn(n, n, |i, j| {
                if transpose {
                    m[j][i].to_big()
                } else {
                    m[i][j].to_big()
                }
            })
        };
        let form = SmithForm {
            rows: self.rows,
            cols: self.cols,
            rank: diag.len(),
            invariant_factors: diag,
            left: self.u.as_ref().map(|u| to_matrix(u, false)),
            right: self.vt.as_ref().map(|vt| to_matrix(vt, true)),
        };
        let tracked = self
            .tracked
            .iter()
            .map(|t| t.iter().map(Entry::to_big).collect())
            .collect();
        debug_assert!(form.invariant_factors.iter().all(Signed::is_positive));
        Some((form, tracked))
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, k: usize) -> (&mut T, &mut T) {
    assert_ne!(i, k);
    if i < k {
        let (lo, hi) = v.split_at_mut(k);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &mut lo[k])
    }
}
