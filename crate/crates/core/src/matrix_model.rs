//! Gaussian matrix integrals: exact values from diagram counts and Monte
//! Carlo estimates.
//!
//! Hermitian samples have `E x_ab x_cd = d_ad d_bc`; real symmetric samples
//! have `E x_ab x_cd = d_ac d_bd + d_ad d_bc`, so each twisted or untwisted
//! gluing carries weight one. `P` is the diagonal projector onto the first
//! `p` coordinates.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{EvolutionState, SpectrumKind, Variant};
use crate::oracle::wick_face_weights;
use crate::poly::{Monomial, Poly, Ring};
use crate::power_series::PowerSeries1;
use crate::spectrum::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    Hermitian,
    RealSymmetric,
}

impl Ensemble {
    /// The diagram family whose counts this ensemble's Wick expansion sums.
    pub fn variant(self) -> Variant {
        match self {
            Ensemble::Hermitian => Variant::Orientable,
            Ensemble::RealSymmetric => Variant::NonOrientable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub ensemble: Ensemble,
    pub n: usize,
    pub p: usize,
    pub s: f64,
    pub samples: usize,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.p > self.n {
            return Err(Error::InvalidConfig(format!("need 0 <= p <= N and N >= 1, got p={} N={}", self.p, self.n)));
        }
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl MCEstimate {
    /// `(mean - exact) / stderr`; zero when both the error and the spread
    /// vanish.
    pub fn zscore(&self, exact: f64) -> f64 {
        let d = self.mean - exact;
        if self.stderr == 0.0 {
            if d.abs() <= 1e-9 * exact.abs().max(1.0) {
                0.0
            } else {
                f64::INFINITY * d.signum()
            }
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, exact: f64, sigmas: f64) -> bool {
        self.zscore(exact).abs() <= sigmas
    }
}

fn monomial(s: u32, n: u32, p: u32) -> Monomial {
    Monomial::var("s", s as i32).times(&Monomial::var("N", n as i32)).times(&Monomial::var("p", p as i32))
}

/// `E Tr (X + sP)^m` as a polynomial in `s`, `p`, `N`, read off a
/// one-backbone point-model state. Orientable states give the Hermitian
/// ensemble, non-orientable states the real symmetric one.
pub fn exact_moment(state: &EvolutionState, m: u32) -> Result<Poly> {
    let spec = state.spec();
    if spec.kind != SpectrumKind::Point {
        return Err(Error::MismatchedModels("moments need a point-model state".into()));
    }
    if m == 0 {
        return Ok(Poly::var("N"));
    }
    if m > spec.truncation.max_backbone_weight || (m / 2) as usize > state.max_k() {
        return Err(Error::TruncationExceeded(format!("moment {m}")));
    }
    let backbone = Spectrum::unit(m);
    let mut out = Poly::zero();
    for k in 0..=m / 2 {
        for (key, c) in state.slices()[k as usize].iter() {
            if key.t != backbone {
                continue;
            }
            let marked = key.s.size() - key.s.get(0);
            out.add_term(monomial(m - 2 * k, key.s.get(0), marked), c.clone());
        }
    }
    Ok(out)
}

/// `E prod_i Tr (X + sP)^{m_i}` over the ordered backbone sizes, exact, from
/// the Wick expansion over all diagrams including disconnected ones.
pub fn exact_product_moment(sizes: &[u32], ensemble: Ensemble) -> Poly {
    let mut out = Poly::zero();
    for ((l, empty, full), c) in wick_face_weights(sizes, ensemble.variant()) {
        out.add_term(monomial(l, empty, full), BigRational::from_integer(c));
    }
    out
}

/// Evaluates a polynomial in `s`, `p`, `N` at floating-point values.
pub fn evaluate(poly: &Poly, s: f64, p: f64, n: f64) -> f64 {
    poly.iter()
        .map(|(m, c)| {
            c.to_f64().unwrap_or(f64::NAN) * s.powi(m.exponent("s")) * p.powi(m.exponent("p")) * n.powi(m.exponent("N"))
        })
        .sum()
}

/// `sum_m M_m(s, p, N) w^m` with `w = 1/z`, which equals
/// `-z E Tr (X + sP - z)^{-1}` expanded at large `z`.
pub fn resolvent_series(
    state: &EvolutionState,
    n: &BigRational,
    p: &BigRational,
    s: &BigRational,
    order: usize,
) -> Result<PowerSeries1<BigRational>> {
    let mut coeffs = Vec::with_capacity(order);
    for m in 0..order as u32 {
        let poly = exact_moment(state, m)?;
        let mut values = std::collections::BTreeMap::new();
        values.insert("N".to_string(), n.clone());
        values.insert("p".to_string(), p.clone());
        values.insert("s".to_string(), s.clone());
        coeffs.push(poly.evaluate(&values).ok_or_else(|| Error::Series("cannot evaluate moment".into()))?);
    }
    Ok(PowerSeries1::new(coeffs))
}

/// `E Tr (z - X - sP)^{-1} = sum_m M_m w^{m+1}`, the Cauchy-transform
/// normalization of [`resolvent_series`].
pub fn cauchy_series(
    state: &EvolutionState,
    n: &BigRational,
    p: &BigRational,
    s: &BigRational,
    order: usize,
) -> Result<PowerSeries1<BigRational>> {
    Ok(resolvent_series(state, n, p, s, order.saturating_sub(1))?.shift_up(1))
}

type Matrix = Vec<Complex64>;

fn sample_matrix(ensemble: Ensemble, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut x = vec![Complex64::new(0.0, 0.0); n * n];
    let normal = |rng: &mut ChaCha8Rng| -> f64 { StandardNormal.sample(rng) };
    for a in 0..n {
        for b in a..n {
            let v = match (ensemble, a == b) {
                (Ensemble::Hermitian, true) => Complex64::new(normal(rng), 0.0),
                (Ensemble::Hermitian, false) => {
                    Complex64::new(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
                }
                (Ensemble::RealSymmetric, true) => Complex64::new(std::f64::consts::SQRT_2 * normal(rng), 0.0),
                (Ensemble::RealSymmetric, false) => Complex64::new(normal(rng), 0.0),
            };
            x[a * n + b] = v;
            x[b * n + a] = v.conj();
        }
    }
    x
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Matrix {
    let mut c = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

fn trace(a: &[Complex64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n + i].re).sum()
}

/// `Tr M^j` for `j = 0..=max_m`.
fn trace_powers(m: &[Complex64], n: usize, max_m: u32) -> Vec<f64> {
    let mut out = vec![n as f64];
    let mut pow = m.to_vec();
    for j in 1..=max_m {
        out.push(trace(&pow, n));
        if j < max_m {
            pow = matmul(&pow, m, n);
        }
    }
    out
}

fn shifted(x: &[Complex64], n: usize, p: usize, s: f64) -> Matrix {
    let mut m = x.to_vec();
    for i in 0..p {
        m[i * n + i] += s;
    }
    m
}

const CHUNK: usize = 1024;

#[derive(Clone)]
struct Moments {
    count: f64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(width: usize) -> Self {
        Self { count: 0.0, mean: vec![0.0; width], m2: vec![0.0; width] }
    }

    fn push(&mut self, x: &[f64]) {
        self.count += 1.0;
        for (i, &v) in x.iter().enumerate() {
            let d = v - self.mean[i];
            self.mean[i] += d / self.count;
            self.m2[i] += d * (v - self.mean[i]);
        }
    }

    fn merge(&self, other: &Moments) -> Moments {
        let count = self.count + other.count;
        if count == 0.0 {
            return self.clone();
        }
        let mut out = Moments::new(self.mean.len());
        out.count = count;
        for i in 0..self.mean.len() {
            let d = other.mean[i] - self.mean[i];
            out.mean[i] = self.mean[i] + d * other.count / count;
            out.m2[i] = self.m2[i] + other.m2[i] + d * d * self.count * other.count / count;
        }
        out
    }
}

fn merge_pairwise(parts: &[Moments]) -> Moments {
    match parts.len() {
        1 => parts[0].clone(),
        n => merge_pairwise(&parts[..n / 2]).merge(&merge_pairwise(&parts[n / 2..])),
    }
}

/// Means and standard errors of a vector-valued observable. Samples are
/// drawn in fixed chunks, each with its own ChaCha stream of `seed`, so the
/// result does not depend on the number of worker threads.
pub fn monte_carlo<F>(samples: usize, seed: u64, width: usize, observe: F) -> Vec<MCEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut acc = Moments::new(width);
            let count = CHUNK.min(samples - c * CHUNK);
            for _ in 0..count {
                acc.push(&observe(&mut rng));
            }
            acc
        })
        .collect();
    let total = merge_pairwise(&parts);
    (0..width)
        .map(|i| {
            let var = if total.count > 1.0 { total.m2[i] / (total.count - 1.0) } else { 0.0 };
            MCEstimate { mean: total.mean[i], stderr: (var.max(0.0) / total.count).sqrt(), samples }
        })
        .collect()
}

/// Estimate of `E prod_i Tr (X + sP)^{m_i}` over the given backbone sizes.
pub fn sample_trace_powers(config: &EnsembleConfig, sizes: &[u32]) -> Result<MCEstimate> {
    config.validate()?;
    let max_m = sizes.iter().copied().max().unwrap_or(0);
    let (n, p, s, ens) = (config.n, config.p, config.s, config.ensemble);
    let est = monte_carlo(config.samples, config.seed, 1, |rng| {
        let x = shifted(&sample_matrix(ens, n, rng), n, p, s);
        let tr = trace_powers(&x, n, max_m);
        vec![sizes.iter().map(|&m| tr[m as usize]).product()]
    });
    Ok(est[0])
}

/// Estimates of `E Tr (X + sP)^m` for `m = 0..=max_m` and every `(p, s)`
/// cell, all from the same matrix samples. Indexed `[cell][m]`.
pub fn sample_moment_grid(
    ensemble: Ensemble,
    n: usize,
    cells: &[(usize, f64)],
    max_m: u32,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<MCEstimate>>> {
    if n == 0 || cells.iter().any(|&(p, _)| p > n) || samples == 0 {
        return Err(Error::InvalidConfig("need N >= 1, p <= N and samples >= 1".into()));
    }
    let width = max_m as usize + 1;
    let flat = monte_carlo(samples, seed, cells.len() * width, |rng| {
        let x = sample_matrix(ensemble, n, rng);
        cells.iter().flat_map(|&(p, s)| trace_powers(&shifted(&x, n, p, s), n, max_m)).collect()
    });
    Ok(flat.chunks(width).map(|c| c.to_vec()).collect())
}

fn complex_gaussian(n: usize, variance: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let sd = (variance / 2.0).sqrt();
    (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * sd, im * sd)
        })
        .collect()
}

fn adjoint(a: &[Complex64], n: usize) -> Matrix {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j].conj();
        }
    }
    out
}

/// Estimate of `(1/N) E Tr (A X A* A X* A*)^k` for complex Gaussian `X`
/// with entry variance `1/N` and `A` with the given singular values.
pub fn sample_wishart_like(k: u32, singular_values: &[f64], samples: usize, seed: u64) -> Result<MCEstimate> {
    if k == 0 || singular_values.is_empty() || samples == 0 {
        return Err(Error::InvalidConfig("need k >= 1, N >= 1, samples >= 1".into()));
    }
    let n = singular_values.len();
    let d: Vec<f64> = singular_values.iter().map(|a| a * a).collect();
    let est = monte_carlo(samples, seed, 1, |rng| {
        // By unitary invariance A may be taken diagonal; then the trace is
        // that of (X D X* D)^k with D = A*A.
        let x = complex_gaussian(n, 1.0 / n as f64, rng);
        let mut xd = x.clone();
        for i in 0..n {
            for j in 0..n {
                xd[i * n + j] *= d[j];
            }
        }
        let mut xsd = adjoint(&x, n);
        for i in 0..n {
            for j in 0..n {
                xsd[i * n + j] *= d[j];
            }
        }
        let w = matmul(&xd, &xsd, n);
        vec![trace_powers(&w, n, k)[k as usize] / n as f64]
    });
    Ok(est[0])
}

/// Estimate of `(1/N) E Tr ((X_1 X_2)(X_1 X_2)*)^k` for independent complex
/// Gaussian `X_i` with entry variance `1/N`.
pub fn sample_ginibre_product(k: u32, n: usize, samples: usize, seed: u64) -> Result<MCEstimate> {
    if k == 0 || n == 0 || samples == 0 {
        return Err(Error::InvalidConfig("need k >= 1, N >= 1, samples >= 1".into()));
    }
    let est = monte_carlo(samples, seed, 1, |rng| {
        let a = complex_gaussian(n, 1.0 / n as f64, rng);
        let b = complex_gaussian(n, 1.0 / n as f64, rng);
        let ab = matmul(&a, &b, n);
        let w = matmul(&ab, &adjoint(&ab, n), n);
        vec![trace_powers(&w, n, k)[k as usize] / n as f64]
    });
    Ok(est[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{evolve, ModelSpec};
    use crate::poly::parse_poly;

    fn state(variant: Variant) -> EvolutionState {
        evolve(ModelSpec::one_backbone_point(variant, 6)).unwrap()
    }

    #[test]
    fn exact_moments_by_hand() {
        let st = state(Variant::Orientable);
        assert_eq!(exact_moment(&st, 0).unwrap(), parse_poly("N").unwrap());
        assert_eq!(exact_moment(&st, 2).unwrap(), parse_poly("N^2 + p*s^2").unwrap());
        let m4 = exact_moment(&st, 4).unwrap();
        let m4s0 = m4.iter().filter(|(m, _)| m.exponent("s") == 0).fold(Poly::zero(), |mut acc, (m, c)| {
            acc.add_term(m.clone(), c.clone());
            acc
        });
        assert_eq!(m4s0, parse_poly("2*N^3 + N").unwrap());
        assert!(matches!(exact_moment(&st, 8), Err(Error::TruncationExceeded(_))));
    }

    #[test]
    fn real_symmetric_second_moment() {
        let st = state(Variant::NonOrientable);
        assert_eq!(exact_moment(&st, 2).unwrap(), parse_poly("N^2 + N + p*s^2").unwrap());
    }

    #[test]
    fn wick_weights_agree_with_evolution_on_one_backbone() {
        for (variant, ens) in [(Variant::Orientable, Ensemble::Hermitian), (Variant::NonOrientable, Ensemble::RealSymmetric)] {
            let st = state(variant);
            for m in 0..=6 {
                assert_eq!(exact_product_moment(&[m], ens), exact_moment(&st, m).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn monte_carlo_does_not_depend_on_thread_count() {
        let cfg = EnsembleConfig { ensemble: Ensemble::Hermitian, n: 3, p: 1, s: 1.0, samples: 5000, seed: 7 };
        let a = sample_trace_powers(&cfg, &[4]).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sample_trace_powers(&cfg, &[4]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn small_second_moments() {
        let cfg = EnsembleConfig { ensemble: Ensemble::Hermitian, n: 3, p: 0, s: 0.0, samples: 20000, seed: 7 };
        assert!(sample_trace_powers(&cfg, &[2]).unwrap().within(9.0, 4.0));
        let cfg = EnsembleConfig { ensemble: Ensemble::RealSymmetric, ..cfg };
        assert!(sample_trace_powers(&cfg, &[2]).unwrap().within(12.0, 4.0));
    }

    #[test]
    fn invalid_config() {
        let cfg = EnsembleConfig { ensemble: Ensemble::Hermitian, n: 3, p: 4, s: 0.0, samples: 1, seed: 0 };
        assert!(matches!(sample_trace_powers(&cfg, &[2]), Err(Error::InvalidConfig(_))));
    }
}
