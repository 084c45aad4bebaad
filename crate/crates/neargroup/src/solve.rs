//! Linear solver for systems A x = b over Z_N with composite N.
//!
//! The system is solved independently modulo each prime power in N
//! (CRT split); each prime-power system is brought to a diagonal
//! Smith-like form by tracked row and column operations. Over the local
//! ring Z_{p^e} every pivot of minimal p-valuation divides the rest of
//! its submatrix, so the elimination is exact. Column operations are
//! the part that keeps the method complete: a non-unit pivot must not
//! absorb constraints that a different variable mix could satisfy.

use crate::error::{Error, Result};

/// A sparse row: (column, coefficient) pairs plus the right-hand side.
pub struct SparseRow {
    pub cols: Vec<(usize, i64)>,
    pub rhs: u32,
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x != 0 && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // extended Euclid; a must be a unit mod q
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let d = r0 / r1;
        (r0, r1) = (r1, r0 - d * r1);
        (s0, s1) = (s1, s0 - d * s1);
    }
    assert_eq!(r0, 1, "not a unit mod q");
    (s0.rem_euclid(q as i128)) as u64
}

fn factorize(n: u32) -> Vec<(u64, u32)> {
    let mut n = n as u64;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Solve A x = b mod p^e by Smith-like diagonalization. Returns one
/// solution (deterministic) or None if the system is inconsistent.
#[allow(clippy::needless_range_loop)]
fn solve_prime_power(rows: &[SparseRow], unknowns: usize, p: u64, e: u32) -> Option<Vec<u64>> {
    let q = p.pow(e);
    // Dense assembly with row deduplication.
    let mut seen = std::collections::HashSet::new();
    let mut mat: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = Vec::new();
    for row in rows {
        let mut dense = vec![0u64; unknowns];
        for &(c, coef) in &row.cols {
            dense[c] = (dense[c] as i64 + coef).rem_euclid(q as i64) as u64;
        }
        let b = row.rhs as u64 % q;
        if dense.iter().all(|&x| x == 0) {
            if b != 0 {
                return None;
            }
            continue;
        }
        let mut key = dense.clone();
        key.push(b);
        if seen.insert(key) {
            mat.push(dense);
            rhs.push(b);
        }
    }

    let nrows = mat.len();
    // Column transform accumulator M with x = M z, stored column-major:
    // mcols[c][r] = M[r][c]. Every column operation applied to A on the
    // right is mirrored on M.
    let mut mcols: Vec<Vec<u64>> = (0..unknowns)
        .map(|i| {
            let mut col = vec![0u64; unknowns];
            col[i] = 1;
            col
        })
        .collect();

    let bound = nrows.min(unknowns);
    let mut rank = 0;
    for step in 0..bound {
        // Pivot: minimal p-valuation in the trailing submatrix, scanning
        // row-major for determinism.
        let mut best: Option<(u32, usize, usize)> = None;
        for i in step..nrows {
            for j in step..unknowns {
                if mat[i][j] != 0 {
                    let v = valuation(mat[i][j], p);
                    if best.map(|(bv, _, _)| v < bv).unwrap_or(true) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break;
                        }
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((v, pi, pj)) = best else { break };
        mat.swap(step, pi);
        rhs.swap(step, pi);
        if pj != step {
            for row in mat.iter_mut() {
                row.swap(step, pj);
            }
            mcols.swap(step, pj);
        }
        // Normalize the pivot to exactly p^v.
        let unit = mat[step][step] / p.pow(v) % q;
        let uinv = inv_mod(unit, q);
        for x in mat[step].iter_mut() {
            *x = *x * uinv % q;
        }
        rhs[step] = rhs[step] * uinv % q;
        let pivot = mat[step][step];
        debug_assert_eq!(pivot, p.pow(v) % q);
        // Clear the rest of the pivot row by column operations
        // (col_j -= factor * col_step), mirrored on M.
        for j in step + 1..unknowns {
            let a = mat[step][j];
            if a != 0 {
                let factor = a / pivot;
                debug_assert_eq!(factor * pivot % q, a);
                for i in 0..nrows {
                    let sub = factor * mat[i][step] % q;
                    mat[i][j] = (mat[i][j] + q - sub) % q;
                }
                for r in 0..unknowns {
                    let sub = factor * mcols[step][r] % q;
                    mcols[j][r] = (mcols[j][r] + q - sub) % q;
                }
            }
        }
        // Clear the rest of the pivot column by row operations.
        for i in 0..nrows {
            if i == step {
                continue;
            }
            let a = mat[i][step];
            if a != 0 {
                let factor = a / pivot;
                debug_assert_eq!(factor * pivot % q, a);
                for j in 0..unknowns {
                    let sub = factor * mat[step][j] % q;
                    mat[i][j] = (mat[i][j] + q - sub) % q;
                }
                let sub = factor * rhs[step] % q;
                rhs[i] = (rhs[i] + q - sub) % q;
            }
        }
        rank = step + 1;
    }

    // Diagonal solve: z_i * p^{v_i} = rhs_i, free coordinates zero.
    let mut z = vec![0u64; unknowns];
    for i in 0..rank {
        let d = mat[i][i];
        if d == 0 {
            if rhs[i] != 0 {
                return None;
            }
            continue;
        }
        if !rhs[i].is_multiple_of(d) {
            return None;
        }
        z[i] = rhs[i] / d;
    }
    for i in rank..nrows {
        if rhs[i] != 0 {
            return None;
        }
    }
    // Map back through the column operations: x = M z.
    let mut x = vec![0u64; unknowns];
    for (c, col) in mcols.iter().enumerate() {
        if z[c] == 0 {
            continue;
        }
        for (r, &m) in col.iter().enumerate() {
            if m != 0 {
                x[r] = (x[r] + m * z[c]) % q;
            }
        }
    }
    Some(x)
}

/// Solve A x = b over Z_N. Coefficients are given sparsely per row; the
/// right-hand side entries live in 0..N. Returns one solution vector in
/// 0..N per unknown, or None when no solution exists.
pub fn solve_mod_n(rows: &[SparseRow], unknowns: usize, modulus: u32) -> Result<Option<Vec<u32>>> {
    if unknowns > 4096 || unknowns.saturating_mul(rows.len()) > 50_000_000 {
        return Err(Error::SystemTooLarge {
            unknowns,
            equations: rows.len(),
        });
    }
    let factors = factorize(modulus);
    let mut partial: Vec<(u64, Vec<u64>)> = Vec::new();
    for &(p, e) in &factors {
        match solve_prime_power(rows, unknowns, p, e) {
            Some(x) => partial.push((p.pow(e), x)),
            None => return Ok(None),
        }
    }
    // CRT combine.
    let mut x = vec![0u64; unknowns];
    let mut m = 1u64;
    for (q, xs) in partial {
        if m == 1 {
            x = xs;
            m = q;
            continue;
        }
        let minv = inv_mod(m % q, q);
        for i in 0..unknowns {
            // x ≡ x[i] (mod m), x ≡ xs[i] (mod q)
            let t = ((xs[i] + q - x[i] % q) % q) * minv % q;
            x[i] += m * t;
        }
        m *= q;
    }
    Ok(Some(
        x.into_iter().map(|v| (v % modulus as u64) as u32).collect(),
    ))
}
