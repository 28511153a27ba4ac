//! Test-only oracles that share no code with the crate's evaluators.

#![allow(dead_code)]

use num_complex::Complex64;

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Euler-Maclaurin zeta with `terms` direct terms and ten correction terms.
/// Good to ~1e-14 for `|s| < 40` when `terms >= 20`, any `s != 1`.
pub fn zeta_em(s: Complex64, terms: u32) -> Complex64 {
    let big_n = f64::from(terms);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..terms {
        sum += (-s * f64::from(n).ln()).exp();
    }
    let n_pow = (-s * big_n.ln()).exp();
    sum += n_pow * big_n / (s - 1.0) + n_pow * 0.5;
    // rising factorial s (s+1) ... (s+2j-2), divided by (2j)!, times N^(-s-2j+1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = n_pow / big_n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        sum += rising * power * (*b / fact);
        let j = j as f64 + 1.0;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        power /= big_n * big_n;
    }
    sum
}

/// Alternating series `sum (-1)^(r-1) r^-s` from `terms` partial sums with
/// repeated pairwise averaging (Euler transform).
pub fn eta_averaged(s: Complex64, terms: usize) -> Complex64 {
    let mut partial = Vec::with_capacity(terms);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..=terms {
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        acc += (-s * (r as f64).ln()).exp() * sign;
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    partial[0]
}

/// `sum_{r=1}^{k} base_r^p` with every power taken by repeated multiplication.
pub fn naive_power_sum(a: Complex64, d: Complex64, k: u32, p: u32) -> Complex64 {
    (1..=k)
        .map(|r| {
            let base = a + d * f64::from(r - 1);
            (0..p).fold(Complex64::new(1.0, 0.0), |acc, _| acc * base)
        })
        .sum()
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}
