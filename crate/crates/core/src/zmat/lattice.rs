use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::FinAbGroup;
use super::matrix::IntMatrix;
use super::smith::{snf, snf_tracking};
use super::ZmatError;

/// Structure of `Z^rows / im(a)`.
pub fn coker_structure(a: &IntMatrix) -> FinAbGroup {
    snf(a, false).cokernel()
}

/// Basis of `{x : a x = 0}` as the columns of the result, in column Hermite
/// form (pivots positive, entries beside each pivot reduced modulo it).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let form = snf(a, true);
    let v = form.right.expect("requested transforms");
    let basis: Vec<Vec<BigInt>> = (form.rank..a.cols()).map(|j| v.col(j)).collect();
    let reduced = hermite_rows(basis, a.cols());
    debug_assert_eq!(reduced.len(), a.cols() - form.rank);
    IntMatrix::from_big_fn(a.cols(), reduced.len(), |i, j| reduced[j][i].clone())
}

/// Some integer `x` with `a x = b`, one column at a time.
pub fn solve_in_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, ZmatError> {
    if a.rows() != b.rows() {
        return Err(ZmatError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let form = snf(a, true);
    let u = form.left.as_ref().expect("requested transforms");
    let v = form.right.as_ref().expect("requested transforms");
    // D y = U b, x = V y
    let c = u.mul(b)?;
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..a.rows() {
            let ci = c.get(i, col);
            if i < form.rank {
                let d = &form.invariant_factors[i];
                if !ci.is_multiple_of(d) {
                    return Err(ZmatError::NoIntegerSolution { column: col });
                }
                y.set(i, col, ci / d);
            } else if !ci.is_zero() {
                return Err(ZmatError::NoIntegerSolution { column: col });
            }
        }
    }
    v.mul(&y)
}

/// Order of an element of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

impl ElementOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ElementOrder::Finite(n) => Some(n),
            ElementOrder::Infinite => None,
        }
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of `v + im(a)` in `Z^rows / im(a)`.
pub fn element_order_in_coker(a: &IntMatrix, v: &[BigInt]) -> Result<ElementOrder, ZmatError> {
    if v.len() != a.rows() {
        return Err(ZmatError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (v.len(), 1),
        });
    }
    let (form, tracked) = snf_tracking(a, std::slice::from_ref(&v.to_vec()), false);
    Ok(order_from_coordinates(&form.invariant_factors, &tracked[0]))
}

/// Order of the class with Smith coordinates `y = U v`.
pub(crate) fn order_from_coordinates(factors: &[BigInt], y: &[BigInt]) -> ElementOrder {
    if y[factors.len()..].iter().any(|x| !x.is_zero()) {
        return ElementOrder::Infinite;
    }
    let order = factors
        .iter()
        .zip(y)
        .map(|(d, yi)| d / d.gcd(yi))
        .fold(BigInt::one(), |acc, o| acc.lcm(&o));
    ElementOrder::Finite(order)
}

/// Whether `v` lies in the integer column span of `a`. Uses a Hermite
/// basis of the span, so it does not depend on the Smith engine.
pub fn column_span_contains(a: &IntMatrix, v: &[BigInt]) -> Result<bool, ZmatError> {
    if v.len() != a.rows() {
        return Err(ZmatError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (v.len(), 1),
        });
    }
    let gens: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.col(j)).collect();
    let basis = hermite_rows(gens, a.rows());
    let mut rest = v.to_vec();
    for row in &basis {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if rest[pivot].is_zero() {
            continue;
        }
        if !rest[pivot].is_multiple_of(&row[pivot]) {
            return Ok(false);
        }
        let c = &rest[pivot] / &row[pivot];
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &c * y;
        }
    }
    Ok(rest.iter().all(Zero::is_zero))
}

/// Row Hermite normal form of the lattice spanned by `rows`; only the
/// nonzero rows are returned.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for j in 0..ncols {
        if r == rows.len() {
            break;
        }
        while let Some(best) = (r..rows.len())
            .filter(|&i| !rows[i][j].is_zero())
            .min_by(|&x, &y| rows[x][j].abs().cmp(&rows[y][j].abs()))
        {
            rows.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][j].is_zero() {
                    continue;
                }
                let c = rows[i][j].div_floor(&rows[r][j]);
                sub_row(&mut rows, i, r, &c);
                clean &= rows[i][j].is_zero();
            }
            if clean {
                break;
            }
        }
        if rows[r][j].is_zero() {
            continue;
        }
        if rows[r][j].is_negative() {
            for x in &mut rows[r] {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let c = rows[i][j].div_floor(&rows[r][j]);
            if !c.is_zero() {
                sub_row(&mut rows, i, r, &c);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn sub_row(rows: &mut [Vec<BigInt>], i: usize, k: usize, c: &BigInt) {
    let src = rows[k].clone();
    for (x, y) in rows[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= c * y;
        }
    }
}
