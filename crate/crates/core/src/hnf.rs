//! Exact integer lattices: row Hermite normal form, membership, and kernels of
//! integer matrices modulo a prime (or exactly).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Row = Vec<BigInt>;

fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped, rows are ordered by pivot column, pivots are
/// positive and every entry above a pivot lies in `[0, pivot)`. The result is
/// canonical, so two lattices are equal iff their HNFs are equal.
pub fn hnf(rows: &[Row], cols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = rows
        .iter()
        .filter(|r| !is_zero_row(r))
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.clone()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == m.len() {
            break;
        }
        loop {
            let best = (pivot_row..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(pivot_row, best);
            let (head, tail) = m.split_at_mut(pivot_row + 1);
            let pivot = &head[pivot_row];
            let mut done = true;
            for r in tail.iter_mut() {
                if !r[col].is_zero() {
                    let q = r[col].div_floor(&pivot[col]);
                    sub_multiple(r, &q, pivot);
                    if !r[col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = m.split_at_mut(pivot_row);
        let pivot = &tail[0];
        for r in head.iter_mut() {
            let q = r[col].div_floor(&pivot[col]);
            sub_multiple(r, &q, pivot);
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.retain(|r| !is_zero_row(r));
    m
}

/// Remainder of `v` after reducing against an HNF basis; zero iff `v` is in the lattice.
pub fn reduce(basis: &[Row], v: &[BigInt]) -> Row {
    let mut v = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let (q, r) = v[col].div_rem(&row[col]);
        if !r.is_zero() {
            return v;
        }
        sub_multiple(&mut v, &q, row);
    }
    v
}

pub fn in_span(basis: &[Row], v: &[BigInt]) -> bool {
    is_zero_row(&reduce(basis, v))
}

/// HNF basis of `{x ∈ Z^m : A x ≡ 0 (mod p)}` for an `r × m` matrix `A`;
/// `p = 0` asks for the exact integer kernel.
///
/// Row-reduces `[Aᵀ | I_m]` stacked with `[p I_r | 0]`: integer combinations
/// whose left block vanishes are exactly the pairs `(A x − p y, x)` with
/// `A x = p y`, and after reduction these are spanned by the rows whose left
/// block is zero.
pub fn kernel_mod(a: &[Row], m: usize, p: u64) -> Vec<Row> {
    let r = a.len();
    let width = r + m;
    let mut rows = Vec::with_capacity(m + r);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); width];
        for (j, arow) in a.iter().enumerate() {
            assert_eq!(arow.len(), m, "matrix row length mismatch");
            row[j] = arow[i].clone();
        }
        row[r + i] = BigInt::from(1);
        rows.push(row);
    }
    if p != 0 {
        for j in 0..r {
            let mut row = vec![BigInt::zero(); width];
            row[j] = BigInt::from(p);
            rows.push(row);
        }
    }
    let kernel: Vec<Row> = hnf(&rows, width)
        .into_iter()
        .filter(|row| is_zero_row(&row[..r]))
        .map(|row| row[r..].to_vec())
        .collect();
    hnf(&kernel, m)
}
