//! Random test objects: orthogonal matrices, SPD matrices with a prescribed
//! spectrum, unit vectors. Used by the property suites and the benches.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::trig::{SpdMatrix, TrigError};

/// Haar-ish random orthogonal matrix (row-major) from Gram–Schmidt on a
/// Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| StandardNormal.sample(rng)).collect())
            .collect();
        let mut ok = true;
        for k in 0..n {
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for j in 0..k {
                    let d: f64 = (0..n).map(|i| cols[k][i] * cols[j][i]).sum();
                    for i in 0..n {
                        cols[k][i] -= d * cols[j][i];
                    }
                }
            }
            let r = cols[k].iter().map(|v| v * v).sum::<f64>().sqrt();
            if r < 1e-8 {
                ok = false;
                break;
            }
            cols[k].iter_mut().for_each(|v| *v /= r);
        }
        if ok {
            let mut q = vec![0.0; n * n];
            for (j, col) in cols.iter().enumerate() {
                for i in 0..n {
                    q[i * n + j] = col[i];
                }
            }
            return q;
        }
    }
}

/// `Q diag(λ) Qᵀ` for the given spectrum and a fresh random orthogonal `Q`.
pub fn spd_with_spectrum<R: Rng + ?Sized>(rng: &mut R, eigenvalues: &[f64]) -> Result<SpdMatrix, TrigError> {
    let n = eigenvalues.len();
    let q = random_orthogonal(rng, n);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = (0..n).map(|k| q[i * n + k] * eigenvalues[k] * q[j * n + k]).sum();
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    SpdMatrix::from_row_major(n, &a)
}

/// Random spectrum `λ₁ = s`, `λₙ = s·κ` with the interior uniform in between.
///
/// `s` is log-uniform on `[0.1, 10]` and `κ` log-uniform on `[kappa.0, kappa.1]`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, kappa: (f64, f64)) -> Vec<f64> {
    let s = 10f64.powf(rng.random_range(-1.0..=1.0));
    let k = if kappa.1 > kappa.0 {
        (rng.random_range(kappa.0.ln()..=kappa.1.ln())).exp()
    } else {
        kappa.0
    };
    let mut l: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => s,
            i if i == n - 1 => s * k,
            _ => s * rng.random_range(1.0..=k),
        })
        .collect();
    if n == 1 {
        l[0] = s;
    }
    l
}

/// Random SPD matrix with condition number drawn from `kappa` (see [`random_spectrum`]).
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R, n: usize, kappa: (f64, f64)) -> SpdMatrix {
    let l = random_spectrum(rng, n, kappa);
    spd_with_spectrum(rng, &l).expect("well-conditioned spectrum is SPD")
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-12 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 7;
        let q = random_orthogonal(&mut rng, n);
        for i in 0..n {
            for j in 0..n {
                let d: f64 = (0..n).map(|k| q[k * n + i] * q[k * n + j]).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((d - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn prescribed_spectrum_is_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = spd_with_spectrum(&mut rng, &[3.0, 1.0, 10.0, 2.0]).unwrap();
        let got = &a.spectral().eigenvalues;
        for (g, w) in got.iter().zip([1.0, 2.0, 3.0, 10.0]) {
            assert!((g - w).abs() < 1e-12);
        }
    }
}
