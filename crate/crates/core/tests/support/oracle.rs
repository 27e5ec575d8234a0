//! Slow reference computations, written without the library's elimination.

use std::collections::BTreeMap;

use a2kt::zmat::IntMatrix;

pub fn to_rows(a: &IntMatrix) -> Vec<Vec<i128>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| a.get_i64(i, j).unwrap() as i128)
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Lower triangular basis of the column lattice of a nonsingular square
/// matrix, with positive diagonal. `h[j]` is column `j`.
pub fn lower_basis(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let mut cols: Vec<Vec<i128>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    for i in 0..n {
        // Euclid on row i across columns i..n
        loop {
            let nz: Vec<usize> = (i..n).filter(|&j| cols[j][i] != 0).collect();
            if nz.len() <= 1 {
                let j = nz[0];
                cols.swap(i, j);
                break;
            }
            let m = *nz.iter().min_by_key(|&&j| cols[j][i].abs()).unwrap();
            for &j in &nz {
                if j != m {
                    let c = cols[j][i].div_euclid(cols[m][i]);
                    let src = cols[m].clone();
                    for (x, y) in cols[j].iter_mut().zip(&src) {
                        *x -= c * y;
                    }
                }
            }
        }
        if cols[i][i] < 0 {
            for x in &mut cols[i] {
                *x = -*x;
            }
        }
    }
    cols
}

fn reduce(h: &[Vec<i128>], x: &mut [i128]) {
    for i in 0..h.len() {
        let c = x[i].div_euclid(h[i][i]);
        for (xk, hk) in x.iter_mut().zip(&h[i]) {
            *xk -= c * hk;
        }
    }
}

/// Number of elements of each order in `Z^n / A Z^n`, by enumerating the
/// box `0 <= x_i < h_ii`.
pub fn element_orders_brute(a: &[Vec<i128>]) -> BTreeMap<u64, u64> {
    let h = lower_basis(a);
    let n = h.len();
    let sizes: Vec<i128> = (0..n).map(|i| h[i][i]).collect();
    let mut out = BTreeMap::new();
    let mut x = vec![0i128; n];
    loop {
        let mut k = 1u64;
        loop {
            let mut y: Vec<i128> = x.iter().map(|v| v * k as i128).collect();
            reduce(&h, &mut y);
            if y.iter().all(|&v| v == 0) {
                break;
            }
            k += 1;
        }
        *out.entry(k).or_insert(0) += 1;
        // odometer
        let mut i = 0;
        while i < n {
            x[i] += 1;
            if x[i] < sizes[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of elements of each order in `Z/d_1 + ... + Z/d_k`.
pub fn element_orders_of(factors: &[u64]) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let mut x = vec![0u64; factors.len()];
    loop {
        let order = x
            .iter()
            .zip(factors)
            .map(|(&v, &d)| d / gcd(v, d))
            .fold(1, |acc, o| acc / gcd(acc, o) * o);
        *out.entry(order).or_insert(0) += 1;
        let mut i = 0;
        while i < x.len() {
            x[i] += 1;
            if x[i] < factors[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == x.len() {
            return out;
        }
    }
}
