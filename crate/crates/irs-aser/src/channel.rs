//! IRS cascade channel statistics: exact sampling of the composite gain
//! A = sum_l |h_l||g_l| and the CLT-based approximate MGF of the
//! instantaneous SNR gamma = A^2 * Es/N0.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// An IRS-assisted link: element count, average SNR and the derived CLT
/// MGF parameters Delta_1 = 8/(N(16-pi^2)), Delta_2 = N pi^2 / (2(16-pi^2)).
#[derive(Debug, Clone, Copy)]
pub struct IrsLink {
    pub n: u32,
    /// Average SNR Es/N0, linear.
    pub gamma_bar: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl IrsLink {
    /// Build a link from an element count and a linear average SNR.
    pub fn new(n: u32, gamma_bar: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("IrsLink: N must be >= 1"));
        }
        if !(gamma_bar.is_finite() && gamma_bar >= 0.0) {
            return Err(Error::domain(format!(
                "IrsLink: gamma_bar must be >= 0, got {gamma_bar}"
            )));
        }
        let nf = n as f64;
        let denom = 16.0 - PI * PI;
        Ok(IrsLink {
            n,
            gamma_bar,
            delta1: 8.0 / (nf * denom),
            delta2: nf * PI * PI / (2.0 * denom),
        })
    }

    /// Same link at a different average SNR.
    pub fn with_gamma_bar(&self, gamma_bar: f64) -> Result<Self> {
        IrsLink::new(self.n, gamma_bar)
    }
}

/// Build a link from an element count and an average SNR in dB.
pub fn link_params(n: u32, gamma_bar_db: f64) -> Result<IrsLink> {
    IrsLink::new(n, 10f64.powf(gamma_bar_db / 10.0))
}

/// CLT approximation of the SNR MGF, G_gamma(s) = E[exp(-s gamma)]:
/// (Delta_1/(Delta_1 + s gamma_bar))^0.5 * exp(-s gamma_bar Delta_2 / (Delta_1 + s gamma_bar)).
pub fn mgf_approx(s: f64, link: &IrsLink) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::domain(format!("mgf_approx: s must be >= 0, got {s}")));
    }
    let sg = s * link.gamma_bar;
    let denom = link.delta1 + sg;
    Ok((link.delta1 / denom).sqrt() * (-sg * link.delta2 / denom).exp())
}

/// Draw one composite gain A = sum_{l=1..N} |h_l||g_l| with |h_l|, |g_l|
/// independent Rayleigh magnitudes of unit-variance complex Gaussians.
pub fn sample_composite_gain<R: Rng + ?Sized>(n: u32, rng: &mut R) -> f64 {
    // Real/imaginary parts have variance 0.5 so E[|h|^2] = 1.
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
    let mut sum = 0.0;
    for _ in 0..n {
        let h = rayleigh_magnitude(&normal, rng);
        let g = rayleigh_magnitude(&normal, rng);
        sum += h * g;
    }
    sum
}

// Magnitude of a zero-mean complex Gaussian drawn as two reals.
fn rayleigh_magnitude<R: Rng + ?Sized>(normal: &Normal<f64>, rng: &mut R) -> f64 {
    let re: f64 = normal.sample(rng);
    let im: f64 = normal.sample(rng);
    (re * re + im * im).sqrt()
}

/// Empirical estimate of the MGF E[exp(-s A^2 gamma_bar)] by Monte Carlo.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalMgf {
    pub value: f64,
    pub standard_error: f64,
    pub num_samples: u64,
}

pub fn empirical_mgf<R: Rng + ?Sized>(
    n: u32,
    gamma_bar: f64,
    s: f64,
    num_samples: u64,
    rng: &mut R,
) -> Result<EmpiricalMgf> {
    if num_samples < 10_000 {
        return Err(Error::domain("empirical_mgf: need at least 10^4 samples"));
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..num_samples {
        let a = sample_composite_gain(n, rng);
        let v = (-s * a * a * gamma_bar).exp();
        sum += v;
        sum_sq += v * v;
    }
    let nf = num_samples as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    Ok(EmpiricalMgf {
        value: mean,
        standard_error: (var / nf).sqrt(),
        num_samples,
    })
}

/// Mean of one |h||g| product: pi/4.
pub fn element_mean() -> f64 {
    PI / 4.0
}

/// Variance of one |h||g| product: 1 - pi^2/16.
pub fn element_variance() -> f64 {
    1.0 - PI * PI / 16.0
}
