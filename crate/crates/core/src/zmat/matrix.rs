use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::entry::small;
use super::ZmatError;

/// Dense integer matrix with exact entries.
///
/// Entries are held as `i64` while they fit and promoted to `BigInt` storage
/// as soon as any entry does not. The dimensions are fixed at construction.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Storage,
}

#[derive(Clone)]
enum Storage {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: Storage::Small(vec![0; rows * cols]),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            data: Storage::Small(data),
        }
    }

    pub fn from_big_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigInt,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_big_vec(rows, cols, data)
    }

    /// Builds a matrix from row vectors.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data: Storage::Small(data),
        }
    }

    /// Column vector.
    pub fn column(v: &[BigInt]) -> Self {
        Self::from_big_vec(v.len(), 1, v.to_vec())
    }

    pub(crate) fn from_big_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        let data = match data.iter().map(small).collect::<Option<Vec<i64>>>() {
            Some(s) => Storage::Small(s),
            None => Storage::Big(data),
        };
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check(&self, i: usize, j: usize) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.check(i, j);
        match &self.data {
            Storage::Small(d) => BigInt::from(d[i * self.cols + j]),
            Storage::Big(d) => d[i * self.cols + j].clone(),
        }
    }

    /// The entry as `i64`, or `None` if it does not fit.
    pub fn get_i64(&self, i: usize, j: usize) -> Option<i64> {
        self.check(i, j);
        match &self.data {
            Storage::Small(d) => Some(d[i * self.cols + j]),
            Storage::Big(d) => d[i * self.cols + j].to_i64(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.check(i, j);
        let v = v.into();
        let idx = i * self.cols + j;
        match (&mut self.data, small(&v)) {
            (Storage::Small(d), Some(s)) => d[idx] = s,
            (Storage::Big(d), _) => d[idx] = v,
            (Storage::Small(_), None) => {
                let mut big = self.to_big_vec();
                big[idx] = v;
                self.data = Storage::Big(big);
            }
        }
    }

    pub(crate) fn to_big_vec(&self) -> Vec<BigInt> {
        match &self.data {
            Storage::Small(d) => d.iter().map(|&x| BigInt::from(x)).collect(),
            Storage::Big(d) => d.clone(),
        }
    }

    /// Row-major `i64` entries, if every entry fits.
    pub(crate) fn as_small(&self) -> Option<&[i64]> {
        match &self.data {
            Storage::Small(d) => Some(d),
            Storage::Big(_) => None,
        }
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Small(d) => d.iter().all(|&x| x == 0),
            Storage::Big(d) => d.iter().all(Zero::is_zero),
        }
    }

    pub fn transpose(&self) -> Self {
        match &self.data {
            Storage::Small(d) => Self::from_fn(self.cols, self.rows, |i, j| d[j * self.cols + i]),
            Storage::Big(d) => {
                Self::from_big_fn(self.cols, self.rows, |i, j| d[j * self.cols + i].clone())
            }
        }
    }

    fn map2(
        &self,
        other: &Self,
        f: impl Fn(i64, i64) -> Option<i64>,
        g: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Self, ZmatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ZmatError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        if let (Some(a), Some(b)) = (self.as_small(), other.as_small()) {
            if let Some(d) = a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect() {
                return Ok(IntMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: Storage::Small(d),
                });
            }
        }
        let (a, b) = (self.to_big_vec(), other.to_big_vec());
        let d = a.iter().zip(&b).map(|(x, y)| g(x, y)).collect();
        Ok(Self::from_big_vec(self.rows, self.cols, d))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ZmatError> {
        self.map2(other, i64::checked_add, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ZmatError> {
        self.map2(other, i64::checked_sub, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        let zero = Self::zeros(self.rows, self.cols);
        zero.sub(self).expect("same shape")
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_big_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ZmatError> {
        if self.cols != other.rows {
            return Err(ZmatError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Some(a), Some(b)) = (self.as_small(), other.as_small()) {
            let mut out = vec![0i64; n * m];
            let mut ok = true;
            'outer: for i in 0..n {
                for t in 0..k {
                    let x = a[i * k + t];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let y = b[t * m + j];
                        if y == 0 {
                            continue;
                        }
                        match x.checked_mul(y).and_then(|p| out[i * m + j].checked_add(p)) {
                            Some(s) => out[i * m + j] = s,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                return Ok(IntMatrix {
                    rows: n,
                    cols: m,
                    data: Storage::Small(out),
                });
            }
        }
        let (a, b) = (self.to_big_vec(), other.to_big_vec());
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let x = &a[i * k + t];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    out[i * m + j] += x * &b[t * m + j];
                }
            }
        }
        Ok(Self::from_big_vec(n, m, out))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ZmatError> {
        if v.len() != self.cols {
            return Err(ZmatError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// `(self | other)`: columns of `other` appended.
    pub fn hcat(&self, other: &Self) -> Result<Self, ZmatError> {
        if self.rows != other.rows {
            return Err(ZmatError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_big_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// `(self / other)`: rows of `other` appended.
    pub fn vcat(&self, other: &Self) -> Result<Self, ZmatError> {
        if self.cols != other.cols {
            return Err(ZmatError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self::from_big_fn(
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j)
                } else {
                    other.get(i - self.rows, j)
                }
            },
        ))
    }

    /// Column sub-block `[start, end)`.
    pub fn col_range(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.cols);
        Self::from_big_fn(self.rows, end - start, |i, j| self.get(i, start + j))
    }

    /// Every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.first_non_zero_one().is_none()
    }

    /// First (row-major) entry outside {0, 1}.
    pub fn first_non_zero_one(&self) -> Option<(usize, usize, BigInt)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.get(i, j)))
            .find(|(_, _, v)| v.to_i64().is_none_or(|x| x != 0 && x != 1))
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| self.row(i).into_iter().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| self.col(j).into_iter().sum())
            .collect()
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        match (self.as_small(), other.as_small()) {
            (Some(a), Some(b)) => a == b,
            _ => self.to_big_vec() == other.to_big_vec(),
        }
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
