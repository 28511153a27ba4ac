//! Finite power sums over complex arithmetic progressions and the closed-form
//! right-hand sides they are audited against.
//!
//! Every closed form is evaluated exactly as written, including forms that do
//! not hold; callers get a [`ResidualReport`] and decide what it means.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};
use crate::precision::{FACTORIAL_CAP, SCALE_FLOOR};

/// Progression parameters `a = a1 + a2 i` and `d = d1 + d2 i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPair {
    pub a1: f64,
    pub a2: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Which components of the step vanish. A zero component is outside the
/// nominal domain (`d1, d2` nonzero) but still evaluable; only `d = 0` is fatal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Degeneracy {
    pub d1_zero: bool,
    pub d2_zero: bool,
}

impl Degeneracy {
    pub fn is_degenerate(&self) -> bool {
        self.d1_zero || self.d2_zero
    }

    pub fn step_is_zero(&self) -> bool {
        self.d1_zero && self.d2_zero
    }
}

impl ComplexPair {
    /// Builds a pair with a nonzero step. Zero step components are accepted
    /// and show up in [`ComplexPair::degeneracy`].
    pub fn new(a1: f64, a2: f64, d1: f64, d2: f64) -> Result<Self> {
        let p = Self::allowing_zero_step(a1, a2, d1, d2)?;
        if p.degeneracy().step_is_zero() {
            return Err(AuditError::ZeroStep);
        }
        Ok(p)
    }

    /// Builds a pair without rejecting `d = 0`; used for solver output.
    pub fn allowing_zero_step(a1: f64, a2: f64, d1: f64, d2: f64) -> Result<Self> {
        if ![a1, a2, d1, d2].iter().all(|v| v.is_finite()) {
            return Err(AuditError::InvalidInput(format!(
                "non-finite progression component in ({a1}, {a2}, {d1}, {d2})"
            )));
        }
        Ok(Self { a1, a2, d1, d2 })
    }

    pub fn from_complex(a: Complex64, d: Complex64) -> Result<Self> {
        Self::new(a.re, a.im, d.re, d.im)
    }

    pub fn a(&self) -> Complex64 {
        Complex64::new(self.a1, self.a2)
    }

    pub fn d(&self) -> Complex64 {
        Complex64::new(self.d1, self.d2)
    }

    pub fn degeneracy(&self) -> Degeneracy {
        Degeneracy { d1_zero: self.d1 == 0.0, d2_zero: self.d2 == 0.0 }
    }

    fn require_step(&self) -> Result<Complex64> {
        if self.degeneracy().step_is_zero() {
            Err(AuditError::ZeroStep)
        } else {
            Ok(self.d())
        }
    }

    /// Scales both `a` and `d` by a real factor.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            a1: self.a1 * lambda,
            a2: self.a2 * lambda,
            d1: self.d1 * lambda,
            d2: self.d2 * lambda,
        }
    }
}

/// `k` terms of the progression raised to the power `n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProgressionQuery {
    pub params: ComplexPair,
    pub k: u32,
    pub n: u32,
}

impl ProgressionQuery {
    pub fn new(params: ComplexPair, k: u32, n: u32) -> Result<Self> {
        if k < 1 {
            return Err(AuditError::InvalidInput("term count k must be >= 1".into()));
        }
        if n < 2 {
            return Err(AuditError::InvalidInput(format!("power index n = {n} must be >= 2")));
        }
        Ok(Self { params, k, n })
    }

    fn require_closed_form(&self) -> Result<Complex64> {
        if self.n < 3 {
            return Err(AuditError::InvalidInput(format!(
                "closed forms need n >= 3 (got n = {})",
                self.n
            )));
        }
        check_factorial_cap(self.n)?;
        self.params.require_step()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summation {
    /// Plain accumulation in index order.
    #[default]
    LeftToRight,
    /// Neumaier-compensated accumulation, per component.
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub scale: f64,
}

impl ResidualReport {
    pub fn compare(lhs: Complex64, rhs: Complex64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        Self { lhs, rhs, abs_residual, rel_residual: abs_residual / scale.max(SCALE_FLOOR), scale }
    }
}

pub(crate) fn check_factorial_cap(n: u32) -> Result<()> {
    if n > FACTORIAL_CAP {
        Err(AuditError::FactorialCap { n, cap: FACTORIAL_CAP })
    } else {
        Ok(())
    }
}

/// Exact `n!` for `n <= FACTORIAL_CAP`.
pub fn factorial(n: u32) -> Result<u64> {
    check_factorial_cap(n)?;
    Ok((1..=u64::from(n)).product())
}

// Every n! with n <= 20 has at most 53 significant bits after stripping
// powers of two, so the conversion to f64 is exact.
fn factorial_f64(n: u32) -> f64 {
    factorial(n).expect("caller checked the factorial cap") as f64
}

fn binomial(n: u32, r: u32) -> f64 {
    factorial_f64(n) / (factorial_f64(r) * factorial_f64(n - r))
}

fn check_index(n: u32, i: u32) -> Result<()> {
    if n < 3 {
        return Err(AuditError::InvalidInput(format!("n = {n} must be >= 3")));
    }
    if i > n - 3 {
        return Err(AuditError::InvalidIndex { i, max: n - 3 });
    }
    Ok(())
}

#[derive(Default)]
struct Accumulator {
    mode: Summation,
    sum: Complex64,
    comp: Complex64,
}

impl Accumulator {
    fn new(mode: Summation) -> Self {
        Self { mode, ..Default::default() }
    }

    fn add(&mut self, x: Complex64) {
        match self.mode {
            Summation::LeftToRight => self.sum += x,
            Summation::Compensated => {
                let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
                let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
                self.sum = Complex64::new(re, im);
                self.comp = Complex64::new(cre, cim);
            }
        }
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, comp + c)
}

fn progression_terms(q: &ProgressionQuery) -> impl Iterator<Item = Complex64> + '_ {
    let a = q.params.a();
    let d = q.params.d();
    (1..=q.k).map(move |r| (a + d * f64::from(r - 1)).powu(q.n - 1))
}

/// `sum_{r=1}^{k} (a + (r-1) d)^(n-1)`, accumulated left to right.
pub fn brute_force_sum(q: &ProgressionQuery) -> Complex64 {
    brute_force_sum_with(q, Summation::LeftToRight)
}

pub fn brute_force_sum_with(q: &ProgressionQuery, mode: Summation) -> Complex64 {
    let mut acc = Accumulator::new(mode);
    progression_terms(q).for_each(|t| acc.add(t));
    acc.total()
}

/// `sum_{r=1}^{k} (-1)^(r-1) (a + (r-1) d)^(n-1)`.
pub fn brute_force_alternating_sum(q: &ProgressionQuery) -> Complex64 {
    brute_force_alternating_sum_with(q, Summation::LeftToRight)
}

pub fn brute_force_alternating_sum_with(q: &ProgressionQuery, mode: Summation) -> Complex64 {
    let mut acc = Accumulator::new(mode);
    for (idx, t) in progression_terms(q).enumerate() {
        acc.add(if idx % 2 == 0 { t } else { -t });
    }
    acc.total()
}

/// Finite-`k` correction term `S_{n-i}` of the ordinary power-sum identity.
pub fn s_term(params: &ComplexPair, k: u32, n: u32, i: u32) -> Result<Complex64> {
    check_index(n, i)?;
    let (a, d) = (params.a(), params.d());
    let p = n - i;
    let half = f64::from(p) / 2.0;
    let end = a + d * f64::from(k);
    Ok(d.powu(p) * (f64::from(k) * (half - 1.0)) - d.powu(p - 2) * (end * end - a * a) * half
        + end.powu(p)
        - a.powu(p))
}

/// Finite-`k` correction term `L_{n-i}` of the alternating identity.
pub fn l_term(params: &ComplexPair, k: u32, n: u32, i: u32) -> Result<Complex64> {
    check_index(n, i)?;
    let (a, d) = (params.a(), params.d());
    let p = n - i;
    let half = f64::from(p) / 2.0;
    let end = a + d * f64::from(k) - d;
    let start = a - d;
    let sign = if (p - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(d.powu(p) * (f64::from(k) * (half - 1.0))
        + d.powu(p - 2) * (end * end - start * start) * half
        + (end.powu(p) - start.powu(p)) * sign)
}

/// `k -> infinity` form of `S_{n-i}`; vanishes termwise when `a = d`.
pub fn limit_s_term(params: &ComplexPair, n: u32, i: u32) -> Result<Complex64> {
    check_index(n, i)?;
    let (a, d) = (params.a(), params.d());
    let p = n - i;
    let half = f64::from(p) / 2.0;
    Ok((d - a) * d.powu(p - 1) * (half - 1.0) - d.powu(p - 2) * (d * d - a * a) * half
        + (d.powu(p) - a.powu(p)))
}

/// `k -> infinity` form of `L_{n-i}`; every term carries a factor `d - a`.
pub fn limit_l_term(params: &ComplexPair, n: u32, i: u32) -> Result<Complex64> {
    check_index(n, i)?;
    let (a, d) = (params.a(), params.d());
    let p = n - i;
    let half = f64::from(p) / 2.0;
    let gap = d - a;
    Ok(gap * d.powu(p - 1) * (half - 1.0) - d.powu(p - 2) * (gap * gap) * half + gap.powu(p))
}

/// `sum_{i=0}^{n-3} (d/2)^i (-1)^i / (i! (n-i)! (n-3-i)!) * term(i)`.
pub fn factorial_weighted_sum<F>(d: Complex64, n: u32, mut term: F) -> Result<Complex64>
where
    F: FnMut(u32) -> Result<Complex64>,
{
    check_index(n, 0)?;
    check_factorial_cap(n)?;
    let half_d = d / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n - 3 {
        let weight = factorial_f64(i) * factorial_f64(n - i) * factorial_f64(n - 3 - i);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += half_d.powu(i) * term(i)? * (sign / weight);
    }
    Ok(acc)
}

/// `(1/(n d)) sum_{i=0}^{n-3} C(n-3, i) (d/2)^i n!/(n-i)! (-1)^(i+1) term(i)`.
pub fn binomial_weighted_sum<F>(d: Complex64, n: u32, mut term: F) -> Result<Complex64>
where
    F: FnMut(u32) -> Result<Complex64>,
{
    check_index(n, 0)?;
    check_factorial_cap(n)?;
    let half_d = d / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n - 3 {
        let falling = factorial_f64(n) / factorial_f64(n - i);
        let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
        acc += half_d.powu(i) * term(i)? * (binomial(n - 3, i) * falling * sign);
    }
    Ok(acc / (d * f64::from(n)))
}

/// Ordinary identity: `d/((n-1)!(n-3)!) * sum` against the factorial-weighted `S` sum.
pub fn theorem1_residual(q: &ProgressionQuery) -> Result<ResidualReport> {
    let d = q.require_closed_form()?;
    let n = q.n;
    let lhs = d / (factorial_f64(n - 1) * factorial_f64(n - 3)) * brute_force_sum(q);
    let rhs = factorial_weighted_sum(d, n, |i| s_term(&q.params, q.k, n, i))?;
    Ok(ResidualReport::compare(lhs, rhs))
}

/// Alternating identity: direct alternating sum against the binomial-weighted `L` sum.
pub fn theorem2_residual(q: &ProgressionQuery) -> Result<ResidualReport> {
    let d = q.require_closed_form()?;
    let n = q.n;
    let lhs = brute_force_alternating_sum(q);
    let rhs = binomial_weighted_sum(d, n, |i| l_term(&q.params, q.k, n, i))?;
    Ok(ResidualReport::compare(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_pair(a: f64, d: f64) -> ComplexPair {
        ComplexPair::new(a, 0.0, d, 0.0).unwrap()
    }

    fn query(p: ComplexPair, k: u32, n: u32) -> ProgressionQuery {
        ProgressionQuery::new(p, k, n).unwrap()
    }

    #[test]
    fn brute_force_small_sums() {
        assert_eq!(brute_force_sum(&query(real_pair(1.0, 1.0), 3, 3)), c(14.0, 0.0));
        let imag = ComplexPair::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(brute_force_sum(&query(imag, 2, 2)), c(0.0, 3.0));
        for n in 2..8 {
            assert_eq!(brute_force_sum(&query(real_pair(1.0, 1.0), 1, n)), c(1.0, 0.0));
        }
    }

    #[test]
    fn brute_force_alternating_small_sums() {
        assert_eq!(brute_force_alternating_sum(&query(real_pair(1.0, 1.0), 2, 3)), c(-3.0, 0.0));
        assert_eq!(brute_force_alternating_sum(&query(real_pair(1.0, 1.0), 2, 4)), c(-7.0, 0.0));
        let p = ComplexPair::new(0.5, -1.5, 2.0, 1.0).unwrap();
        assert_eq!(brute_force_alternating_sum(&query(p, 1, 5)), p.a().powu(4));
    }

    #[test]
    fn compensated_matches_plain_on_exact_integers() {
        let q = query(real_pair(1.0, 1.0), 30, 4);
        assert_eq!(brute_force_sum(&q), brute_force_sum_with(&q, Summation::Compensated));
    }

    #[test]
    fn s_term_hand_values() {
        let p = real_pair(1.0, 1.0);
        assert!((s_term(&p, 1, 3, 0).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        assert!((s_term(&p, 2, 3, 0).unwrap() - c(15.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn s_term_does_not_vanish_at_a_equal_d() {
        let p = ComplexPair::new(0.7, -0.2, 0.7, -0.2).unwrap();
        assert!(s_term(&p, 3, 5, 1).unwrap().norm() > 1e-3);
        assert_eq!(limit_s_term(&p, 5, 1).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn l_term_hand_values() {
        let p = real_pair(1.0, 1.0);
        assert!((l_term(&p, 1, 3, 0).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        assert!((l_term(&p, 2, 3, 0).unwrap() - c(15.0, 0.0)).norm() < 1e-15);
        // n = 4 values used by the k = 2 refutation
        assert!((l_term(&p, 2, 4, 0).unwrap() - c(-6.0, 0.0)).norm() < 1e-15);
        assert!((l_term(&p, 2, 4, 1).unwrap() - c(15.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn index_guards() {
        let p = real_pair(1.0, 1.0);
        assert_eq!(s_term(&p, 1, 4, 2), Err(AuditError::InvalidIndex { i: 2, max: 1 }));
        assert!(l_term(&p, 1, 2, 0).is_err());
        assert!(limit_s_term(&p, 3, 1).is_err());
        assert!(limit_l_term(&p, 5, 3).is_err());
    }

    #[test]
    fn theorem1_anchor_points() {
        let r = theorem1_residual(&query(real_pair(1.0, 1.0), 1, 3)).unwrap();
        assert!((r.lhs - c(0.5, 0.0)).norm() < 1e-15);
        assert!((r.rhs - c(0.5, 0.0)).norm() < 1e-15);
        assert!(r.rel_residual <= 1e-12);
        let r = theorem1_residual(&query(real_pair(1.0, 1.0), 2, 3)).unwrap();
        assert!((r.lhs - c(2.5, 0.0)).norm() < 1e-15);
        assert!(r.rel_residual <= 1e-12);
    }

    #[test]
    fn theorem2_hand_refutations() {
        let r = theorem2_residual(&query(real_pair(1.0, 1.0), 1, 3)).unwrap();
        assert!((r.rhs - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((r.abs_residual - 2.0).abs() <= 1e-12);
        let r = theorem2_residual(&query(real_pair(1.0, 1.0), 2, 4)).unwrap();
        assert!((r.lhs - c(-7.0, 0.0)).norm() < 1e-15);
        assert!((r.rhs - c(9.0, 0.0)).norm() < 1e-13);
        assert!((r.abs_residual - 16.0).abs() <= 1e-12);
        let r = theorem2_residual(&query(real_pair(1.0, 1.0), 2, 3)).unwrap();
        assert!((r.lhs - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((r.rhs - c(-5.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_forms_reject_bad_queries() {
        let q = query(real_pair(1.0, 1.0), 2, 2);
        assert!(theorem1_residual(&q).is_err());
        let q = query(real_pair(1.0, 1.0), 2, 21);
        assert_eq!(theorem1_residual(&q), Err(AuditError::FactorialCap { n: 21, cap: 20 }));
        let zero = ComplexPair::allowing_zero_step(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(theorem2_residual(&query(zero, 2, 3)), Err(AuditError::ZeroStep));
    }

    #[test]
    fn pair_validation() {
        assert_eq!(ComplexPair::new(1.0, 0.0, 0.0, 0.0), Err(AuditError::ZeroStep));
        assert!(ComplexPair::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
        assert!(ComplexPair::new(1.0, 0.0, 1.0, 0.0).unwrap().degeneracy().is_degenerate());
        assert!(ProgressionQuery::new(real_pair(1.0, 1.0), 0, 3).is_err());
        assert!(ProgressionQuery::new(real_pair(1.0, 1.0), 1, 1).is_err());
    }

    #[test]
    fn limit_terms_hand_values() {
        assert!(limit_s_term(&real_pair(0.0, 1.0), 3, 0).unwrap().norm() < 1e-15);
        // n = 3 factors as (d - a) a (a - d/2)
        assert!(limit_s_term(&real_pair(1.0, 2.0), 3, 0).unwrap().norm() < 1e-14);
        assert!((limit_s_term(&real_pair(1.0, 3.0), 3, 0).unwrap() - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(limit_l_term(&real_pair(0.0, 1.0), 3, 0).unwrap().norm() < 1e-15);
        assert!((limit_l_term(&real_pair(1.0, 3.0), 3, 0).unwrap() - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn factorials_are_exact() {
        assert_eq!(factorial(0).unwrap(), 1);
        assert_eq!(factorial(20).unwrap(), 2_432_902_008_176_640_000);
        for n in 0..=20 {
            assert_eq!(factorial_f64(n) as u64, factorial(n).unwrap());
        }
        assert!(factorial(21).is_err());
    }

    fn pair_strategy() -> impl Strategy<Value = ComplexPair> {
        (-2.0f64..2.0, -2.0f64..2.0, 0.1f64..2.0, -2.0f64..2.0)
            .prop_map(|(a1, a2, d1, d2)| ComplexPair::new(a1, a2, d1, d2).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn brute_force_is_reproducible(p in pair_strategy(), k in 1u32..60, n in 2u32..9) {
            let q = query(p, k, n);
            prop_assert_eq!(brute_force_sum(&q), brute_force_sum(&q));
            prop_assert_eq!(brute_force_alternating_sum(&q), brute_force_alternating_sum(&q));
        }

        #[test]
        fn correction_terms_are_homogeneous(
            p in pair_strategy(), k in 1u32..20, n in 3u32..10, i_frac in 0.0f64..1.0, lambda in 0.25f64..4.0
        ) {
            let i = ((n - 2) as f64 * i_frac) as u32;
            let deg = (n - i) as i32;
            let scaled = p.scaled(lambda);
            for f in [s_term, l_term] {
                let base = f(&p, k, n, i).unwrap();
                let lifted = f(&scaled, k, n, i).unwrap();
                let expect = base * lambda.powi(deg);
                let scale = expect.norm().max(1e-300);
                // absolute slack for values that cancel to near zero
                let slack = 1e-12 * (p.a().norm() + p.d().norm() * k as f64 + 1.0).powi(deg) * lambda.powi(deg);
                prop_assert!((lifted - expect).norm() <= 1e-10 * scale + slack);
            }
        }

        #[test]
        fn residuals_are_never_nan(p in pair_strategy(), k in 1u32..40, n in 3u32..12) {
            let q = query(p, k, n);
            for r in [theorem1_residual(&q).unwrap(), theorem2_residual(&q).unwrap()] {
                prop_assert!(r.abs_residual.is_finite() && r.rel_residual.is_finite());
            }
        }
    }
}
