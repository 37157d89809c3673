//! Inverse iteration for selected eigenvectors of a symmetric tridiagonal
//! matrix whose eigenvalues are already known.

/// LU factors of `T − λI` with partial pivoting, in the layout of LAPACK's
/// `dgttrf`.
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(diag: &[f64], sub: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = sub[..n - 1].to_vec();
        let mut du = sub[..n - 1].to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        for x in d.iter_mut() {
            if x.abs() < tiny {
                *x = if *x < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let nrm = dot(v, v).sqrt();
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    nrm
}

/// Eigenvectors of the tridiagonal matrix with diagonal `diag` and
/// off-diagonal `sub` (`sub[i]` couples `i` and `i + 1`) for the ascending
/// eigenvalues `lambdas`. Each vector is orthogonalized against all earlier
/// ones, which keeps near-degenerate clusters orthonormal.
pub(crate) fn inverse_iteration(diag: &[f64], sub: &[f64], lambdas: &[f64]) -> Vec<Vec<f64>> {
    let n = diag.len();
    if n == 1 {
        return vec![vec![1.0]; lambdas.len().min(1)];
    }
    let onenorm = (0..n)
        .map(|i| {
            diag[i].abs()
                + if i > 0 { sub[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { sub[i].abs() } else { 0.0 }
        })
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let tiny = eps * onenorm;
    let target_growth = 1.0 / (10.0 * eps * onenorm * (n as f64).sqrt());

    let mut seed = 0x9E37_79B9_7F4A_7C15u64;
    let mut next_uniform = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(lambdas.len());
    let mut prev_shift = f64::NEG_INFINITY;
    for &lambda in lambdas {
        // Identical shifts would give identical iterates; nudge them apart.
        let pertol = 10.0 * eps * lambda.abs().max(onenorm * 1e-3);
        let shift = lambda.max(prev_shift + pertol);
        prev_shift = shift;
        let lu = TridiagLu::factor(diag, sub, shift, tiny);

        let mut x: Vec<f64> = (0..n).map(|_| next_uniform()).collect();
        normalize(&mut x);
        let mut extra = 0;
        for _ in 0..8 {
            lu.solve(&mut x);
            for v in &out {
                let c = dot(v, &x);
                x.iter_mut().zip(v).for_each(|(a, b)| *a -= c * b);
            }
            let growth = normalize(&mut x);
            if growth >= target_growth {
                extra += 1;
                if extra > 2 {
                    break;
                }
            }
        }
        // One more orthogonalization pass after the last normalization.
        for v in &out {
            let c = dot(v, &x);
            x.iter_mut().zip(v).for_each(|(a, b)| *a -= c * b);
        }
        normalize(&mut x);
        out.push(x);
    }
    out
}
