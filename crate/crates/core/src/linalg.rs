//! Minimal dense complex linear algebra for the small (3x3 .. 8x8) matrices
//! this crate works with: a cyclic Jacobi eigensolver for Hermitian
//! matrices and a Hessenberg + shifted-QR eigenvalue routine for general
//! complex matrices.

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Clone, Debug)]
pub(crate) struct CMat {
    pub n: usize,
    pub a: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n = rows.len();
        let mut m = CMat::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "from_rows: ragged input");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// Largest absolute entry of `self - other`.
    #[cfg(test)]
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.n, other.n);
        self.a
            .iter()
            .zip(other.a.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.a[i * self.n + j]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with a unitary matrix
/// whose columns are the matching eigenvectors. Only the given matrix's
/// Hermitian part is consulted (the strict lower triangle is taken as the
/// conjugate of the upper one).
pub(crate) fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.n;
    let mut a = m.clone();
    // Symmetrize so rounding in the caller cannot bias the iteration.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMat::identity(n);
    let scale = a.a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                let sigma = phase * s; // complex sine of the rotation

                // A <- J^dag A J with J acting in the (p, q) plane:
                // J[p][p] = c, J[p][q] = -sigma, J[q][p] = conj(sigma), J[q][q] = c.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp + sigma.conj() * akq;
                    a[(k, q)] = -sigma * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk + sigma * aqk;
                    a[(q, k)] = -sigma.conj() * apk + c * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp + sigma.conj() * vkq;
                    v[(k, q)] = -sigma * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = CMat::zeros(n);
    for (newcol, &oldcol) in order.iter().enumerate() {
        for k in 0..n {
            vecs[(k, newcol)] = v[(k, oldcol)];
        }
    }
    (evals, vecs)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn eigvalsh(m: &CMat) -> Vec<f64> {
    eigh(m).0
}

fn complex_sqrt(z: C64) -> C64 {
    z.sqrt()
}

/// Both roots of `lambda^2 - tr lambda + det` for a complex 2x2 block,
/// computed so the larger-magnitude root is obtained without cancellation.
fn block2_eigs(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = complex_sqrt(half_tr * half_tr - det);
    let l1 = if (half_tr + disc).norm() >= (half_tr - disc).norm() {
        half_tr + disc
    } else {
        half_tr - disc
    };
    if l1.norm() > 0.0 {
        (l1, det / l1)
    } else {
        (l1, half_tr - disc)
    }
}

/// Complex Givens pair (c real, s complex) with
/// `[c, s; -conj(s), c] * [f; g] = [r; 0]`.
fn givens(f: C64, g: C64) -> (f64, C64) {
    if g.norm() == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / denom;
    let s = (f / f.norm()) * g.conj() / denom;
    (c, s)
}

/// Reduce `a` to upper Hessenberg form in place by Householder reflections.
fn hessenberg(a: &mut CMat) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        // Build the reflector for column k, rows k+1..n.
        let mut xnorm_sqr = 0.0;
        for i in (k + 1)..n {
            xnorm_sqr += a[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm <= 1e-300 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<C64> = (0..n)
            .map(|i| {
                if i <= k {
                    C64::new(0.0, 0.0)
                } else {
                    a[(i, k)]
                }
            })
            .collect();
        v[k + 1] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr <= 1e-300 {
            continue;
        }
        // A <- (I - 2 v v^dag / |v|^2) A (same from the right).
        for j in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += v[i].conj() * a[(i, j)];
            }
            let f = 2.0 * dot / vnorm_sqr;
            for i in (k + 1)..n {
                let vi = v[i];
                a[(i, j)] -= f * vi;
            }
        }
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += a[(i, j)] * v[j];
            }
            let f = 2.0 * dot / vnorm_sqr;
            for j in (k + 1)..n {
                let vj = v[j].conj();
                a[(i, j)] -= f * vj;
            }
        }
        for i in (k + 2)..n {
            a[(i, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of a general complex matrix via the shifted QR iteration on
/// its Hessenberg form. Returns an error if the iteration stalls, which for
/// the matrices built by this crate signals a malformed input.
pub(crate) fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    let n = m.n;
    if !m.a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Numerical(
            "eigenvalue input contains non-finite entries".into(),
        ));
    }
    let mut h = m.clone();
    hessenberg(&mut h);

    let scale = h.a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-30);
    let eps = f64::EPSILON;
    let mut eigs: Vec<C64> = Vec::with_capacity(n);
    let mut hi = n as isize - 1;
    let mut iters_this_block = 0usize;

    while hi >= 0 {
        let hh = hi as usize;
        // Deflate negligible subdiagonals.
        for i in 1..=hh {
            let tol = eps * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()).max(scale * eps);
            if h[(i, i - 1)].norm() <= tol {
                h[(i, i - 1)] = C64::new(0.0, 0.0);
            }
        }
        if hh == 0 || h[(hh, hh - 1)].norm() == 0.0 {
            eigs.push(h[(hh, hh)]);
            hi -= 1;
            iters_this_block = 0;
            continue;
        }
        if hh >= 1 && (hh == 1 || h[(hh - 1, hh - 2)].norm() == 0.0) {
            let (l1, l2) = block2_eigs(
                h[(hh - 1, hh - 1)],
                h[(hh - 1, hh)],
                h[(hh, hh - 1)],
                h[(hh, hh)],
            );
            eigs.push(l1);
            eigs.push(l2);
            hi -= 2;
            iters_this_block = 0;
            continue;
        }

        // Active block [lo..=hh].
        let mut lo = hh;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }

        iters_this_block += 1;
        if iters_this_block > 200 {
            return Err(Error::Numerical("QR eigenvalue iteration stalled".into()));
        }

        // Wilkinson shift from the trailing 2x2, exceptional shift if stuck.
        let mu = if iters_this_block.is_multiple_of(17) {
            h[(hh, hh)] + C64::new(1.5 * h[(hh, hh - 1)].norm(), 0.0)
        } else {
            let (l1, l2) = block2_eigs(
                h[(hh - 1, hh - 1)],
                h[(hh - 1, hh)],
                h[(hh, hh - 1)],
                h[(hh, hh)],
            );
            if (l1 - h[(hh, hh)]).norm() <= (l2 - h[(hh, hh)]).norm() {
                l1
            } else {
                l2
            }
        };

        for i in lo..=hh {
            h[(i, i)] -= mu;
        }
        // QR factorization of the shifted block by Givens rotations.
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hh - lo);
        for i in lo..hh {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            for j in lo..=hh.min(n - 1) {
                let hij = h[(i, j)];
                let hi1j = h[(i + 1, j)];
                h[(i, j)] = c * hij + s * hi1j;
                h[(i + 1, j)] = -s.conj() * hij + c * hi1j;
            }
            rots.push((c, s));
        }
        // RQ product restores Hessenberg form.
        for (idx, (c, s)) in rots.iter().enumerate() {
            let i = lo + idx;
            for k in lo..=hh {
                let hki = h[(k, i)];
                let hki1 = h[(k, i + 1)];
                h[(k, i)] = c * hki + s.conj() * hki1;
                h[(k, i + 1)] = -s * hki + c * hki1;
            }
        }
        for i in lo..=hh {
            h[(i, i)] += mu;
        }
    }

    Ok(eigs)
}

/// Kronecker product.
pub(crate) fn kron(a: &CMat, b: &CMat) -> CMat {
    let n = a.n * b.n;
    let mut out = CMat::zeros(n);
    for i in 0..a.n {
        for j in 0..a.n {
            for k in 0..b.n {
                for l in 0..b.n {
                    out[(i * b.n + k, j * b.n + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}
