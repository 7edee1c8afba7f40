//! Exact linear algebra on the small matrices this crate produces:
//! row reduction over Z_p and integer kernel lattices.

use crate::modp::{inv_mod, mul_mod};

/// Reduces `rows` (entries already in 0..p) to reduced row echelon form in
/// place. Returns the pivot columns in order; rank = pivots.len().
/// Pivot choice is deterministic: first usable row per column, columns left
/// to right.
pub fn rref_mod_p(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nr = rows.len();
    if nr == 0 {
        return Vec::new();
    }
    let nc = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..nr).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..nr {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (x, &b) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * b % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nr {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace of the row span, one vector per free column, in
/// ascending free-column order. Each vector has a 1 in its free column.
pub fn nullspace_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let pivots = rref_mod_p(&mut m, p);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Z-basis of the kernel lattice {v : M v = 0} of an integer matrix, via
/// unimodular column reduction (columns of the mirrored identity tracking
/// the operations). The basis spans the full kernel lattice, not merely a
/// finite-index sublattice. Vectors are gcd-reduced defensively and sign
/// normalized (first nonzero entry positive).
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect();

    let col_add =
        |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
            for row in a.iter_mut() {
                row[dst] += f * row[src];
            }
            for row in u.iter_mut() {
                row[dst] += f * row[src];
            }
        };
    let col_swap = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in u.iter_mut() {
            row.swap(x, y);
        }
    };

    let mut next = 0usize; // first still-active column
    for r in 0..m {
        if next == ncols {
            break;
        }
        // gcd-eliminate row r across active columns until one nonzero remains
        loop {
            let mut nz: Vec<usize> = (next..ncols).filter(|&j| a[r][j] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| a[r][j].unsigned_abs());
            let jmin = nz[0];
            for &j in &nz[1..] {
                let f = -a[r][j].div_euclid(a[r][jmin]);
                col_add(&mut a, &mut u, j, jmin, f);
            }
        }
        if let Some(j) = (next..ncols).find(|&j| a[r][j] != 0) {
            col_swap(&mut a, &mut u, next, j);
            next += 1;
        }
    }

    let mut kernel = Vec::new();
    for j in next..ncols {
        debug_assert!(a.iter().all(|row| row[j] == 0));
        let mut v: Vec<i128> = u.iter().map(|row| row[j]).collect();
        let mut g: i128 = 0;
        for &x in &v {
            g = gcd_i128(g, x.abs());
        }
        if g > 1 {
            for x in v.iter_mut() {
                *x /= g;
            }
        }
        if let Some(&first) = v.iter().find(|&&x| x != 0) {
            if first < 0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
        let vi: Vec<i64> = v
            .iter()
            .map(|&x| i64::try_from(x).expect("kernel entries fit i64 for supported sizes"))
            .collect();
        // exact check: M v = 0
        for row in rows {
            let dot: i128 = row
                .iter()
                .zip(&vi)
                .map(|(&x, &y)| x as i128 * y as i128)
                .sum();
            assert_eq!(dot, 0, "kernel vector fails M v = 0");
        }
        kernel.push(vi);
    }
    kernel
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Product of the absolute values of the invariant factors of an integer
/// matrix (the order of the torsion part of its cokernel, for full-rank
/// row spans). Empty matrices give 1.
#[allow(clippy::needless_range_loop)] // row/column elimination mixes two rows per step
pub fn invariant_factor_product(rows: &[Vec<i64>], ncols: usize) -> u64 {
    let m = rows.len();
    if m == 0 || ncols == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0usize;
    let mut c = 0usize;
    let mut product: i128 = 1;
    while r < m && c < ncols {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in r..m {
            for j in c..ncols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(r, bi);
        for row in a.iter_mut() {
            row.swap(c, bj);
        }
        // reduce until the pivot divides its row and column
        let mut clean = true;
        for i in r + 1..m {
            let f = a[i][c].div_euclid(a[r][c]);
            if f != 0 {
                for j in c..ncols {
                    a[i][j] -= f * a[r][j];
                }
            }
            if a[i][c] != 0 {
                clean = false;
            }
        }
        for j in c + 1..ncols {
            let f = a[r][j].div_euclid(a[r][c]);
            if f != 0 {
                for i in r..m {
                    a[i][j] -= f * a[i][c];
                }
            }
            if a[r][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        product *= a[r][c].abs();
        r += 1;
        c += 1;
    }
    u64::try_from(product).expect("invariant factor product fits u64 for supported sizes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace() {
        // x + y + z = 0 over Z_5 has a 2-dim nullspace
        let rows = vec![vec![1u64, 1, 1]];
        let ns = nullspace_mod_p(&rows, 3, 5);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!((v[0] + v[1] + v[2]) % 5, 0);
        }
        // deterministic shape: identity in the free columns
        assert_eq!(ns[0][1], 1);
        assert_eq!(ns[1][2], 1);
    }

    #[test]
    fn rref_rank_drop_mod_p() {
        // row pair dependent mod 3 but not mod 5
        let rows = [vec![1u64, 2], vec![4, 8 % 3]];
        let mut m3: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x % 3).collect())
            .collect();
        assert_eq!(rref_mod_p(&mut m3, 3).len(), 1);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // columns: c0 + c2 = c1  =>  kernel (1, -1, 1)
        let rows = vec![vec![1i64, 1, 0], vec![0, 1, 1], vec![2, 3, 1]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k, vec![vec![1, -1, 1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // M = [2 0; 0 0] on 2 columns: kernel lattice is (0,1)Z, not (0,2)Z
        let rows = vec![vec![2i64, 0]];
        let k = integer_kernel(&rows, 2);
        assert_eq!(k, vec![vec![0, 1]]);
    }

    #[test]
    fn kernel_empty_when_full_rank() {
        let rows = vec![vec![1i64, 0], vec![0, 1]];
        assert!(integer_kernel(&rows, 2).is_empty());
    }

    #[test]
    fn invariant_factors() {
        // diag(1,2,6) -> product 12
        let rows = vec![vec![1i64, 0, 0], vec![0, 2, 0], vec![0, 0, 6]];
        assert_eq!(invariant_factor_product(&rows, 3), 12);
        // [[2, 4], [6, 8]]: det = -8, SNF diag (2, 4)
        let rows = vec![vec![2i64, 4], vec![6, 8]];
        assert_eq!(invariant_factor_product(&rows, 2), 8);
        assert_eq!(invariant_factor_product(&[], 5), 1);
    }
}
