//! Small dense kernels over row-major `f64` slices.

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub(crate) fn matvec(a: &[f64], n: usize, x: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate().take(n) {
        *o = dot(&a[i * n..(i + 1) * n], x);
    }
}

pub(crate) fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            let row_b = &b[k * n..(k + 1) * n];
            let row_c = &mut c[i * n..(i + 1) * n];
            for (cj, bj) in row_c.iter_mut().zip(row_b) {
                *cj += aik * bj;
            }
        }
    }
    c
}

pub(crate) fn normalize(x: &mut [f64]) -> f64 {
    let r = norm(x);
    if r > 0.0 {
        x.iter_mut().for_each(|v| *v /= r);
    }
    r
}

/// Angle between two nonzero vectors, accurate near 0 and π.
pub(crate) fn angle_between(x: &[f64], y: &[f64]) -> f64 {
    let nx = norm(x);
    let ny = norm(y);
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (a, b) in x.iter().zip(y) {
        let u = a / nx;
        let v = b / ny;
        diff += (u - v) * (u - v);
        sum += (u + v) * (u + v);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}
