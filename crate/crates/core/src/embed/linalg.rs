//! Complex dense linear algebra for the constraint solver.
//!
//! Systems here are tiny (at most 64 columns, a few hundred rows), so plain
//! Gaussian elimination with partial pivoting is both fast and predictable.
//! Rank decisions compare pivot magnitudes against `eps_rank` times the
//! largest pivot scale, which is what turns floating-point elimination into
//! a certified-dimension computation at the solver's working tolerance.

// indexed loops are clearer than split-borrow iterator chains for the
// elimination kernels below
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

pub type CVec = Vec<Complex64>;

pub fn hdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Bilinear action of a constraint row on a coordinate vector.
pub fn apply_row(row: &[Complex64], v: &[Complex64]) -> Complex64 {
    debug_assert_eq!(row.len(), v.len());
    row.iter().zip(v).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    hdot(a, a).re.max(0.0).sqrt()
}

/// Orthonormal basis of the nullspace of the row system, to relative
/// residual `eps_rank`.
pub fn kernel_basis(rows: &[CVec], n: usize, eps_rank: f64) -> Vec<CVec> {
    if n == 0 {
        return Vec::new();
    }
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Complex64::ZERO; n];
                v[i] = Complex64::ONE;
                v
            })
            .collect();
    }

    let mut a: Vec<CVec> = rows.to_vec();
    let r = a.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(|z| z.norm()))
        .fold(0.0f64, f64::max)
        .max(1e-300);

    // row-echelon form with partial pivoting, tracking pivot columns
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let (best, best_mag) = (rank..r)
            .map(|i| (i, a[i][col].norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_mag <= eps_rank * scale {
            continue;
        }
        a.swap(rank, best);
        let inv = Complex64::ONE / a[rank][col];
        for j in col..n {
            a[rank][j] *= inv;
        }
        for i in 0..r {
            if i != rank {
                let f = a[i][col];
                if f.norm() > 0.0 {
                    for j in col..n {
                        let sub = f * a[rank][j];
                        a[i][j] -= sub;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == r {
            break;
        }
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };

    let mut basis: Vec<CVec> = Vec::with_capacity(n - rank);
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Complex64::ZERO; n];
        v[free] = Complex64::ONE;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[i][free];
        }
        basis.push(v);
    }

    orthonormalize(&mut basis);
    basis
}

/// Modified Gram-Schmidt; drops numerically dependent vectors.
fn orthonormalize(basis: &mut Vec<CVec>) {
    let mut out: Vec<CVec> = Vec::with_capacity(basis.len());
    for mut v in basis.drain(..) {
        for _ in 0..2 {
            for q in &out {
                let c = hdot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let nv = norm(&v);
        if nv > 1e-12 {
            for vi in v.iter_mut() {
                *vi /= nv;
            }
            out.push(v);
        }
    }
    *basis = out;
}

/// Least-squares fit `r1 ~ omega * r2`. Returns `Some(omega)` when the fit
/// residual is below `eps` relative to `|r1|`; `None` when either vector is
/// numerically zero or the pair is genuinely independent.
pub fn proportional(r1: &[Complex64], r2: &[Complex64], eps: f64) -> Option<Complex64> {
    let n1 = hdot(r1, r1).re;
    let n2 = hdot(r2, r2).re;
    if n1 <= eps * eps || n2 <= eps * eps {
        return None;
    }
    let ip = hdot(r1, r2);
    let omega = ip / n2;
    let residual_sq = (n1 - ip.norm_sqr() / n2).max(0.0);
    if residual_sq <= eps * eps * n1 {
        Some(omega)
    } else {
        None
    }
}

/// Expresses `r3` in `span(r1, r2)` when the three vectors have rank exactly
/// two with `r1, r2` independent: returns `(x, y)` with `r3 = x r1 + y r2`.
pub fn in_span_of_pair(
    r1: &[Complex64],
    r2: &[Complex64],
    r3: &[Complex64],
    eps: f64,
) -> Option<(Complex64, Complex64)> {
    let g11 = hdot(r1, r1);
    let g12 = hdot(r2, r1);
    let g21 = hdot(r1, r2);
    let g22 = hdot(r2, r2);
    let b1 = hdot(r3, r1);
    let b2 = hdot(r3, r2);
    let det = g11 * g22 - g12 * g21;
    let gram_scale = g11.re * g22.re;
    if det.norm() <= eps * gram_scale.max(1e-300) {
        return None; // r1, r2 nearly dependent
    }
    let x = (b1 * g22 - b2 * g12) / det;
    let y = (g11 * b2 - g21 * b1) / det;
    // residual check
    let mut res = 0.0f64;
    let mut mag = 0.0f64;
    for i in 0..r3.len() {
        let d = r3[i] - x * r1[i] - y * r2[i];
        res += d.norm_sqr();
        mag += r3[i].norm_sqr();
    }
    if res <= eps * eps * mag.max(1e-300) {
        Some((x, y))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_of_empty_system_is_full_space() {
        let k = kernel_basis(&[], 3, 1e-9);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_dimension_and_residuals() {
        // rows of K4's rhombus system: 3 independent rows on 4 unknowns
        let rows = vec![
            vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)],
        ];
        let k = kernel_basis(&rows, 4, 1e-9);
        assert_eq!(k.len(), 1);
        for row in &rows {
            assert!(apply_row(row, &k[0]).norm() < 1e-12);
        }
        // the kernel is the all-ones direction
        let v = &k[0];
        for i in 1..4 {
            assert!((v[i] - v[0]).norm() < 1e-12);
        }
    }

    #[test]
    fn proportional_detects_scaled_pairs() {
        let r1 = vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 1.0)];
        let w = c(0.6, -0.8);
        let r2: Vec<_> = r1.iter().map(|z| z / w).collect();
        let omega = proportional(&r1, &r2, 1e-9).unwrap();
        assert!((omega - w).norm() < 1e-12);
        let r3 = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert!(proportional(&r1, &r3, 1e-9).is_none());
    }

    #[test]
    fn span_of_pair_coefficients() {
        let r1 = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let r2 = vec![c(0.0, 1.0), c(1.0, 0.0), c(-1.0, 1.0)];
        let x = c(2.0, 1.0);
        let y = c(-0.5, 3.0);
        let r3: Vec<_> = (0..3).map(|i| x * r1[i] + y * r2[i]).collect();
        let (fx, fy) = in_span_of_pair(&r1, &r2, &r3, 1e-9).unwrap();
        assert!((fx - x).norm() < 1e-10 && (fy - y).norm() < 1e-10);
        // independent triple
        let r4 = vec![c(5.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let r5 = vec![c(0.0, 0.0), c(5.0, 0.0), c(0.0, 0.0)];
        let r6 = vec![c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)];
        assert!(in_span_of_pair(&r4, &r5, &r6, 1e-9).is_none());
    }
}
