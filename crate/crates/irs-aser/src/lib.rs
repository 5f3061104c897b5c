//! Average symbol error rate (ASER) analysis of IRS-assisted wireless links
//! with QAM signaling over Rayleigh fading.
//!
//! An intelligent reconfigurable surface (IRS) with N phase-aligned elements
//! turns the cascade gain into A = sum_l |h_l||g_l|, whose CLT approximation
//! yields a tractable SNR MGF. This crate provides:
//!
//! - [`specfun`]: Gaussian Q, the Craig-form partial integral Q_z and the
//!   confluent Lauricella function Phi_1 via its finite integral form.
//! - [`modem`]: RQAM/SQAM/XQAM/BPSK parameterization, Craig-term
//!   decomposition of conditional SERs and explicit constellations.
//! - [`channel`]: IRS link statistics (Delta_1, Delta_2), the approximate
//!   MGF and exact composite-gain sampling.
//! - [`aser`]: closed-form and quadrature ASER engines.
//! - [`asymptotics`]: low/high SNR approximations and AWGN baselines.
//! - [`montecarlo`]: a seeded, reproducible link-level simulator.
//! - [`cli`]: the `irs-aser` command line (curves, figure data, validation).
//!
//! ```
//! use irs_aser::{aser, channel, modem::ModulationScheme};
//!
//! let link = channel::link_params(32, 0.0).unwrap(); // N = 32, 0 dB
//! let scheme = ModulationScheme::rqam(4, 2, 1.0).unwrap();
//! let p = aser::aser(&scheme, &link).unwrap();
//! assert!(p.clamped > 0.0 && p.clamped < 1.0);
//! ```

pub mod aser;
pub mod asymptotics;
pub mod channel;
pub mod cli;
pub mod error;
pub mod modem;
pub mod montecarlo;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
