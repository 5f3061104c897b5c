//! Seeded link-level simulator: random symbols through the IRS cascade (or
//! plain AWGN), coherent detection, exact error counting.
//!
//! The symbol budget is partitioned into chunks of whole channel blocks; each
//! chunk owns a ChaCha substream derived deterministically from the master
//! seed, so the pooled counts are bit-identical regardless of how rayon
//! schedules the chunks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::channel::{element_variance, sample_composite_gain};
use crate::error::{Error, Result};
use crate::modem::{self, ModulationScheme};
use crate::specfun::gaussian_q;

/// Channel mode for a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelMode {
    /// IRS cascade with the given element count.
    Irs { n: u32 },
    /// Deterministic unit-gain channel.
    Awgn,
}

/// Configuration of one simulation run.
#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub scheme: ModulationScheme,
    pub channel: ChannelMode,
    pub gamma_bar_db: f64,
    pub num_symbols: u64,
    pub seed: u64,
    /// Symbols per channel realization. Per-symbol redraw (1) converges
    /// fastest for distribution-averaged metrics.
    pub block_size: u64,
}

impl SimulationConfig {
    pub fn new(scheme: ModulationScheme, channel: ChannelMode, gamma_bar_db: f64) -> Self {
        SimulationConfig {
            scheme,
            channel,
            gamma_bar_db,
            num_symbols: 1_000_000,
            seed: 0,
            block_size: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        self.scheme.validate()?;
        if self.num_symbols < 1_000 {
            return Err(Error::domain("simulation: num_symbols must be >= 10^3"));
        }
        if self.block_size < 1 {
            return Err(Error::domain("simulation: block_size must be >= 1"));
        }
        if let ChannelMode::Irs { n } = self.channel {
            if n < 1 {
                return Err(Error::domain("simulation: N must be >= 1"));
            }
        }
        Ok(())
    }
}

/// Result of a simulation run.
#[derive(Debug, Clone)]
pub struct SimulationReport {
    pub ser_estimate: f64,
    pub standard_error: f64,
    pub errors_counted: u64,
    pub symbols_sent: u64,
    pub seed: u64,
    /// True when fewer than 100 errors were observed; the estimate is then
    /// below the reliably observable SER floor for this budget.
    pub low_count_warning: bool,
}

/// CLT-validation statistics of the composite gain distribution.
#[derive(Debug, Clone, Copy)]
pub struct CltStats {
    pub mean_a: f64,
    pub var_a: f64,
    /// Kolmogorov-Smirnov distance to Normal(pi N/4, (1 - pi^2/16) N).
    pub ks_statistic: f64,
    pub num_samples: u64,
}

/// Detector geometry: per-axis thresholds for rectangular grids, full
/// minimum-distance search for the cross constellation. Index layout must
/// match `modem::constellation` (in-phase-major) for the rectangular path.
enum Detector {
    Rectangular {
        m_i: i64,
        m_q: i64,
        d_i: f64,
        d_q: f64,
    },
    MinDistance(Vec<Complex64>),
}

impl Detector {
    fn build(scheme: &ModulationScheme, points: &[Complex64]) -> Detector {
        match *scheme {
            ModulationScheme::Xqam { .. } => Detector::MinDistance(points.to_vec()),
            ModulationScheme::Rqam { m_i, m_q, beta } => {
                Detector::rectangular(m_i, m_q, beta)
            }
            ModulationScheme::Sqam { m } => {
                let root = (m as f64).sqrt().round() as u32;
                Detector::rectangular(root, root, 1.0)
            }
            ModulationScheme::Bpsk => Detector::rectangular(2, 1, 0.0),
        }
    }

    fn rectangular(m_i: u32, m_q: u32, beta: f64) -> Detector {
        let mi = m_i as f64;
        let mq = m_q as f64;
        let d_i = (3.0 / ((mi * mi - 1.0) + (mq * mq - 1.0) * beta * beta)).sqrt();
        Detector::Rectangular {
            m_i: m_i as i64,
            m_q: m_q as i64,
            d_i,
            d_q: beta * d_i,
        }
    }

    /// Index of the detected symbol, given the received sample and the known
    /// channel amplitude.
    fn detect(&self, r: Complex64, a: f64) -> usize {
        match self {
            Detector::Rectangular { m_i, m_q, d_i, d_q } => {
                let i = nearest_level(r.re / a, *m_i, *d_i);
                let j = nearest_level(r.im / a, *m_q, *d_q);
                (i * *m_q + j) as usize
            }
            Detector::MinDistance(points) => {
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for (k, p) in points.iter().enumerate() {
                    let d = (r - p * a).norm_sqr();
                    if d < best_d {
                        best_d = d;
                        best = k;
                    }
                }
                best
            }
        }
    }
}

/// Nearest level index for amplitudes (2i - 1 - M) d, i = 1..=M.
fn nearest_level(x: f64, m: i64, d: f64) -> i64 {
    if m == 1 {
        return 0;
    }
    let idx = ((x / d + m as f64 - 1.0) / 2.0).round() as i64;
    idx.clamp(0, m - 1)
}

fn chunk_counts(cfg: &SimulationConfig) -> Vec<u64> {
    // Whole blocks per chunk; ~2^16 symbols keeps per-chunk state cache-warm.
    let blocks_total = cfg.num_symbols.div_ceil(cfg.block_size);
    let blocks_per_chunk = (65_536 / cfg.block_size).max(1);
    let mut remaining = cfg.num_symbols;
    let mut counts = Vec::new();
    let mut blocks_left = blocks_total;
    while blocks_left > 0 {
        let blocks = blocks_left.min(blocks_per_chunk);
        let symbols = remaining.min(blocks * cfg.block_size);
        counts.push(symbols);
        remaining -= symbols;
        blocks_left -= blocks;
        if remaining == 0 {
            break;
        }
    }
    counts
}

/// Run a full link-level simulation.
pub fn simulate_ser(config: &SimulationConfig) -> Result<SimulationReport> {
    config.validate()?;
    let points = modem::constellation(&config.scheme, 1.0)?;
    let detector = Detector::build(&config.scheme, &points);
    let gamma_bar = 10f64.powf(config.gamma_bar_db / 10.0);
    if !(gamma_bar > 0.0) {
        return Err(Error::domain("simulation: gamma_bar must be > 0"));
    }
    // Total noise variance N0 = 1/gamma_bar with Es = 1; N0/2 per dimension.
    let sigma = (0.5 / gamma_bar).sqrt();
    let counts = chunk_counts(config);

    let errors: u64 = counts
        .par_iter()
        .enumerate()
        .map(|(chunk, &symbols)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(chunk as u64 + 1);
            run_chunk(config, &points, &detector, sigma, symbols, &mut rng)
        })
        .sum();

    let sent = config.num_symbols;
    let p_hat = errors as f64 / sent as f64;
    Ok(SimulationReport {
        ser_estimate: p_hat,
        standard_error: (p_hat * (1.0 - p_hat) / sent as f64).sqrt(),
        errors_counted: errors,
        symbols_sent: sent,
        seed: config.seed,
        low_count_warning: errors < 100,
    })
}

fn run_chunk(
    config: &SimulationConfig,
    points: &[Complex64],
    detector: &Detector,
    sigma: f64,
    symbols: u64,
    rng: &mut ChaCha8Rng,
) -> u64 {
    let normal = Normal::new(0.0, sigma).unwrap();
    let m = points.len();
    let mut errors = 0u64;
    let mut sent = 0u64;
    while sent < symbols {
        let a = match config.channel {
            ChannelMode::Irs { n } => sample_composite_gain(n, rng),
            ChannelMode::Awgn => 1.0,
        };
        let block = config.block_size.min(symbols - sent);
        for _ in 0..block {
            let idx = rng.gen_range(0..m);
            let noise = Complex64::new(normal.sample(rng), normal.sample(rng));
            let r = points[idx] * a + noise;
            if detector.detect(r, a) != idx {
                errors += 1;
            }
        }
        sent += block;
    }
    errors
}

/// Empirical CLT statistics of the composite gain A for a given N.
pub fn validate_clt(n: u32, num_samples: u64, seed: u64) -> Result<CltStats> {
    if num_samples < 100_000 {
        return Err(Error::domain("validate_clt: need at least 10^5 samples"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<f64> = (0..num_samples)
        .map(|_| sample_composite_gain(n, &mut rng))
        .collect();
    let nf = num_samples as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let var = samples.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (nf - 1.0);

    // KS distance against the CLT reference normal.
    let ref_mean = std::f64::consts::PI * n as f64 / 4.0;
    let ref_sd = (element_variance() * n as f64).sqrt();
    samples.sort_unstable_by(f64::total_cmp);
    let mut ks = 0.0f64;
    for (i, &a) in samples.iter().enumerate() {
        let cdf = 1.0 - gaussian_q((a - ref_mean) / ref_sd)?;
        let lo = i as f64 / nf;
        let hi = (i + 1) as f64 / nf;
        ks = ks.max((cdf - lo).abs()).max((hi - cdf).abs());
    }

    Ok(CltStats {
        mean_a: mean,
        var_a: var,
        ks_statistic: ks,
        num_samples,
    })
}
