//! Test-only oracles shared by the integration suites.

use std::collections::HashMap;

use num_complex::Complex64;

/// Polynomial in the commuting symbols a†, b†: exponent pair -> coefficient.
type Poly = HashMap<(usize, usize), Complex64>;

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i1, j1), &c1) in p {
        for (&(i2, j2), &c2) in q {
            *out.entry((i1 + i2, j1 + j2)).or_default() += c1 * c2;
        }
    }
    out
}

fn poly_pow(p: &Poly, e: usize) -> Poly {
    let mut out = Poly::from([((0, 0), Complex64::new(1.0, 0.0))]);
    for _ in 0..e {
        out = poly_mul(&out, p);
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Column m of the block from expanding
/// (cosθ a† + e^{iφ} sinθ b†)^{N-m} (-e^{-iφ} sinθ a† + cosθ b†)^m.
pub fn expanded_block(n: usize, theta: f64, phase: f64) -> Vec<Vec<Complex64>> {
    let (s, c) = theta.sin_cos();
    let a_img = Poly::from([
        ((1, 0), Complex64::new(c, 0.0)),
        ((0, 1), Complex64::from_polar(s, phase)),
    ]);
    let b_img = Poly::from([
        ((1, 0), -Complex64::from_polar(s, -phase)),
        ((0, 1), Complex64::new(c, 0.0)),
    ]);
    let mut cols = Vec::new();
    for m in 0..=n {
        let poly = poly_mul(&poly_pow(&a_img, n - m), &poly_pow(&b_img, m));
        let norm_in = (factorial(n - m) * factorial(m)).sqrt();
        let col = (0..=n)
            .map(|row| {
                let coeff = poly.get(&(n - row, row)).copied().unwrap_or_default();
                coeff * (factorial(n - row) * factorial(row)).sqrt() / norm_in
            })
            .collect();
        cols.push(col);
    }
    cols
}
