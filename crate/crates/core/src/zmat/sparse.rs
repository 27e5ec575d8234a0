//! Sparse elimination of unit pivots ahead of the dense Smith engine.
//!
//! Each step removes one row and one column holding a `±1` pivot, which
//! drops a trivial factor from the cokernel and nothing else. Among the
//! unit entries the one with the smallest Markowitz cost
//! `(row length - 1) * (column length - 1)` is taken, ties to the lowest row
//! and then the lowest column. What is left has no unit entries and is
//! handed over as a dense block.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::entry::Entry;
use super::matrix::IntMatrix;

pub(super) struct Reduced<T> {
    /// Number of unit pivots removed.
    pub eliminated: usize,
    /// The remaining block, dense.
    pub block: Vec<Vec<T>>,
    pub block_cols: usize,
    /// Tracked vectors restricted to the remaining rows.
    pub tracked: Vec<Vec<T>>,
}

type Row<T> = Vec<(usize, T)>;

pub(super) fn reduce<T: Entry>(a: &IntMatrix, tracked: &[Vec<BigInt>]) -> Option<Reduced<T>> {
    let (nr, nc) = (a.rows(), a.cols());
    let mut rows: Vec<Row<T>> = vec![Vec::new(); nr];
    for (i, j, v) in a.nonzeros() {
        rows[i].push((j, T::from_big(&v)?));
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nc];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j].insert(i);
        }
    }
    let mut tracked: Vec<Vec<T>> = tracked
        .iter()
        .map(|v| v.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect::<Option<_>>()?;
    let mut row_alive = vec![true; nr];
    let mut col_alive = vec![true; nc];
    let mut eliminated = 0;

    while let Some((pi, pj)) = unit_pivot(&rows, &col_rows, &row_alive) {
        let pivot_row = std::mem::take(&mut rows[pi]);
        let p = pivot_row
            .iter()
            .find(|e| e.0 == pj)
            .expect("pivot entry")
            .1
            .clone();
        let targets: Vec<usize> = col_rows[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in targets {
            let x = &rows[r].iter().find(|e| e.0 == pj).expect("column entry").1;
            // p is a unit, so x / p = x * p
            let c = T::zero().sub_mul(&x.neg()?, &p)?;
            let (merged, added, removed) = sub_row(&rows[r], &c, &pivot_row)?;
            rows[r] = merged;
            for j in added {
                col_rows[j].insert(r);
            }
            for j in removed {
                col_rows[j].remove(&r);
            }
            for t in &mut tracked {
                if !t[pi].is_zero() {
                    t[r] = t[r].sub_mul(&c, &t[pi])?;
                }
            }
        }
        for &(j, _) in &pivot_row {
            col_rows[j].remove(&pi);
        }
        row_alive[pi] = false;
        col_alive[pj] = false;
        eliminated += 1;
    }

    let live_rows: Vec<usize> = (0..nr).filter(|&i| row_alive[i]).collect();
    let mut col_pos = vec![usize::MAX; nc];
    let mut block_cols = 0;
    for j in 0..nc {
        if col_alive[j] {
            col_pos[j] = block_cols;
            block_cols += 1;
        }
    }
    let block = live_rows
        .iter()
        .map(|&i| {
            let mut dense = vec![T::zero(); block_cols];
            for (j, v) in &rows[i] {
                dense[col_pos[*j]] = v.clone();
            }
            dense
        })
        .collect();
    let tracked = tracked
        .into_iter()
        .map(|t| live_rows.iter().map(|&i| t[i].clone()).collect())
        .collect();
    Some(Reduced {
        eliminated,
        block,
        block_cols,
        tracked,
    })
}

fn unit_pivot<T: Entry>(
    rows: &[Row<T>],
    col_rows: &[BTreeSet<usize>],
    alive: &[bool],
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in rows.iter().enumerate() {
        if !alive[i] {
            continue;
        }
        let rl = r.len().saturating_sub(1);
        for (j, v) in r {
            if !v.is_unit() {
                continue;
            }
            let cost = rl * (col_rows[*j].len() - 1);
            if best.is_none_or(|b| cost < b.0) {
                best = Some((cost, i, *j));
                if cost == 0 {
                    return Some((i, *j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// `r - c * p` for sorted sparse rows, with the columns that appeared and
/// the columns that cancelled.
#[allow(clippy::type_complexity)]
fn sub_row<T: Entry>(r: &Row<T>, c: &T, p: &Row<T>) -> Option<(Row<T>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut added, mut removed) = (Vec::new(), Vec::new());
    let (mut a, mut b) = (0, 0);
    while a < r.len() || b < p.len() {
        let ja = r.get(a).map_or(usize::MAX, |e| e.0);
        let jb = p.get(b).map_or(usize::MAX, |e| e.0);
        if ja < jb {
            out.push(r[a].clone());
            a += 1;
        } else if jb < ja {
            out.push((jb, T::zero().sub_mul(c, &p[b].1)?));
            added.push(jb);
            b += 1;
        } else {
            let v = r[a].1.sub_mul(c, &p[b].1)?;
            if v.is_zero() {
                removed.push(ja);
            } else {
                out.push((ja, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some((out, added, removed))
}
