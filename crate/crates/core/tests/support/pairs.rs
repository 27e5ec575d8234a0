//! Random commuting pairs of {0,1} matrices.

use a2kt::zmat::IntMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

fn circulant(n: usize, set: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| set.contains(&((j + n - i) % n)) as i64)
}

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn random_zero_one<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |_, _| rng.gen_bool(0.4) as i64)
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.rows(), b.rows());
    IntMatrix::from_fn(n * m, n * m, |i, j| {
        a.get_i64(i / m, j / m).unwrap() * b.get_i64(i % m, j % m).unwrap()
    })
}

fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn perm_matrix(p: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(p.len(), p.len(), |i, j| (p[j] == i) as i64)
}

fn power(p: &[usize], k: usize) -> Vec<usize> {
    (0..p.len())
        .map(|mut x| {
            for _ in 0..k {
                x = p[x];
            }
            x
        })
        .collect()
}

fn direct_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.rows(), b.rows());
    IntMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a.get_i64(i, j).unwrap(),
        (false, false) => b.get_i64(i - n, j - n).unwrap(),
        _ => 0,
    })
}

/// A commuting pair of size at most `max_n`, drawn from circulants, tensor
/// products, permutation powers and direct sums of those.
pub fn commuting_pair<R: Rng>(rng: &mut R, max_n: usize) -> (IntMatrix, IntMatrix) {
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(1..=max_n);
            (
                circulant(n, &random_subset(rng, n)),
                circulant(n, &random_subset(rng, n)),
            )
        }
        1 => {
            let n1 = rng.gen_range(1..=max_n.min(4));
            let n2 = rng.gen_range(1..=(max_n / n1).max(1));
            let (a, b) = (random_zero_one(rng, n1), random_zero_one(rng, n2));
            (
                kron(&a, &IntMatrix::identity(n2)),
                kron(&IntMatrix::identity(n1), &b),
            )
        }
        2 => {
            let n = rng.gen_range(1..=max_n);
            let p = permutation(rng, n);
            let k = rng.gen_range(0..n.max(1) + 1);
            (perm_matrix(&p), perm_matrix(&power(&p, k)))
        }
        _ if max_n >= 2 => {
            let n1 = rng.gen_range(1..max_n);
            let (a1, a2) = commuting_pair(rng, n1);
            let (b1, b2) = commuting_pair(rng, max_n - a1.rows());
            (direct_sum(&a1, &b1), direct_sum(&a2, &b2))
        }
        _ => (IntMatrix::identity(1), IntMatrix::identity(1)),
    }
}
