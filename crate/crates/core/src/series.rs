//! Truncated power-series arithmetic on coefficient vectors.
//!
//! A series is stored as its first `len` Taylor coefficients at the origin;
//! every operation truncates to the length of its output.

use num_complex::Complex64;

/// Product of two series, truncated to `len` coefficients.
pub fn mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients of `1 / (1 - q z)`, i.e. `q^n`.
pub fn geometric(q: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len);
    let mut term = Complex64::new(1.0, 0.0);
    for _ in 0..len {
        out.push(term);
        term *= q;
    }
    out
}

/// Coefficients of the Möbius factor `(a - z) / (1 - conj(a) z)`, or of `z` when `a = 0`.
pub fn mobius_factor(a: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    if a == Complex64::new(0.0, 0.0) {
        if len > 1 {
            out[1] = Complex64::new(1.0, 0.0);
        }
        return out;
    }
    // (a - z) * sum conj(a)^n z^n
    let geo = geometric(a.conj(), len);
    for n in 0..len {
        out[n] = a * geo[n];
        if n > 0 {
            out[n] -= geo[n - 1];
        }
    }
    out
}

/// `exp(g)` for a series `g`, via the recurrence `n h_n = sum_{k=1}^n k g_k h_{n-k}`.
pub fn exp(g: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); len];
    if len == 0 {
        return h;
    }
    let g0 = g.first().copied().unwrap_or_default();
    h[0] = g0.exp();
    for n in 1..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n.min(g.len().saturating_sub(1)) {
            acc += g[k] * (k as f64) * h[n - k];
        }
        h[n] = acc / n as f64;
    }
    h
}

/// Evaluates a truncated series at `z` by Horner's rule.
pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `sum_n a_n conj(b_n)`, the H² pairing of two coefficient sequences.
pub fn hardy_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Real-coefficient product used by the diagonal kernel oracle.
pub fn mul_real(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn mobius_half() {
        // (1/2 - z) * sum (z/2)^n
        let f = mobius_factor(c(0.5), 4);
        let want = [0.5, -0.75, -0.375, -0.1875];
        for (got, w) in f.iter().zip(want) {
            assert!((got - c(w)).norm() < 1e-15);
        }
    }

    #[test]
    fn exp_of_linear() {
        // exp(z) = sum z^n / n!
        let h = exp(&[c(0.0), c(1.0)], 6);
        let mut fact = 1.0;
        for (n, v) in h.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((v - c(1.0 / fact)).norm() < 1e-15);
        }
    }

    #[test]
    fn mul_truncates() {
        let p = mul(&[c(1.0), c(1.0)], &[c(1.0), c(-1.0)], 2);
        assert_eq!(p, vec![c(1.0), c(0.0)]);
    }
}
