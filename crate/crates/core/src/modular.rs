//! Linear algebra over `Z/nZ` for arbitrary `n >= 2`.
//!
//! Kernels are computed by diagonalising with unimodular row and column
//! operations (a Smith-style reduction without the divisibility chain), which
//! works over any principal ideal ring and so over every `Z/nZ`.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `n = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn combine(s: i128, x: u64, t: i128, y: u64, n: u64) -> u64 {
    let n = n as i128;
    ((s * x as i128 + t * y as i128).rem_euclid(n)) as u64
}

/// Extended gcd on nonnegative integers: `(g, s, t)` with `s*a + t*b = g`.
fn ext_gcd(a: u64, b: u64) -> (u64, i128, i128) {
    let e = (a as i128).extended_gcd(&(b as i128));
    (e.gcd as u64, e.x, e.y)
}

/// Result of [`kernel_mod`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub modulus: u64,
    /// Nonzero generators of `{x : A x = 0 mod n}`.
    pub generators: Vec<Vec<u64>>,
    /// Dimension of the kernel when `n` is prime.
    pub rank: Option<usize>,
}

/// Kernel of an `m x k` matrix over `Z/nZ`.
pub fn kernel_mod(rows: &[Vec<u64>], cols: usize, n: u64) -> Kernel {
    assert!(n >= 2, "modulus must be at least 2");
    let m = rows.len();
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % n).collect()).collect();
    let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();

    let diag_len = m.min(cols);
    let mut t = 0;
    while t < diag_len {
        // pivot search in the trailing block
        let pivot = (t..m).flat_map(|i| (t..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != 0);
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut changed = false;
            for i in (t + 1)..m {
                if a[i][t] == 0 {
                    continue;
                }
                changed = true;
                let (x, y) = (a[t][t], a[i][t]);
                if y % x == 0 {
                    let q = y / x;
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + n - mulmod(q, a[t][j], n)) % n;
                    }
                } else {
                    let (g, s, u) = ext_gcd(x, y);
                    let (xg, yg) = ((x / g) as i128, (y / g) as i128);
                    for j in 0..cols {
                        let (rt, ri) = (a[t][j], a[i][j]);
                        a[t][j] = combine(s, rt, u, ri, n);
                        a[i][j] = combine(-yg, rt, xg, ri, n);
                    }
                }
            }
            for j in (t + 1)..cols {
                if a[t][j] == 0 {
                    continue;
                }
                changed = true;
                let (x, y) = (a[t][t], a[t][j]);
                if y % x == 0 {
                    let q = y / x;
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        row[j] = (row[j] + n - mulmod(q, row[t], n)) % n;
                    }
                } else {
                    let (g, s, u) = ext_gcd(x, y);
                    let (xg, yg) = ((x / g) as i128, (y / g) as i128);
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        let (ct, cj) = (row[t], row[j]);
                        row[t] = combine(s, ct, u, cj, n);
                        row[j] = combine(-yg, ct, xg, cj, n);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        t += 1;
    }

    let mut generators = Vec::new();
    let mut free = 0;
    for i in 0..cols {
        let d = if i < diag_len { a[i][i] } else { 0 };
        let g = d.gcd(&n);
        let scale = n / g;
        if d == 0 {
            free += 1;
        }
        let column: Vec<u64> = v.iter().map(|row| mulmod(row[i], scale, n)).collect();
        if column.iter().any(|&x| x != 0) {
            generators.push(column);
        }
    }
    Kernel { modulus: n, generators, rank: is_prime(n).then_some(free) }
}

/// Rank of a set of vectors over the prime field `F_p`.
pub fn rank_mod_prime(vectors: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inverse_mod_prime(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..width {
                    rows[r][c] = (rows[r][c] + p - mulmod(f, rows[rank][c], p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod_prime(a: u64, p: u64) -> u64 {
    let (_, s, _) = ext_gcd(a, p);
    s.rem_euclid(p as i128) as u64
}
