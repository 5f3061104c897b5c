//! Modulation parameterization: maps a QAM scheme to the weighted Craig-term
//! decomposition of its conditional SER and to an explicit constellation for
//! simulation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A modulation scheme under analysis.
///
/// SQAM and BPSK are genuine special cases of RQAM and reduce to it
/// internally; they are kept as distinct variants so curves and CSV columns
/// carry the name the user asked for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModulationScheme {
    /// Rectangular QAM with an M_I x M_Q grid and quadrature-to-in-phase
    /// decision distance ratio beta = d_Q / d_I.
    Rqam { m_i: u32, m_q: u32, beta: f64 },
    /// Square QAM (M_I = M_Q = sqrt(M), beta = 1).
    Sqam { m: u32 },
    /// Cross QAM, M in {32, 128, 512, 2048}.
    Xqam { m: u32 },
    Bpsk,
}

fn is_power_of_two(x: u32) -> bool {
    x != 0 && x & (x - 1) == 0
}

impl ModulationScheme {
    pub fn rqam(m_i: u32, m_q: u32, beta: f64) -> Result<Self> {
        let s = ModulationScheme::Rqam { m_i, m_q, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn sqam(m: u32) -> Result<Self> {
        let s = ModulationScheme::Sqam { m };
        s.validate()?;
        Ok(s)
    }

    pub fn xqam(m: u32) -> Result<Self> {
        let s = ModulationScheme::Xqam { m };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => {
                if m_i < 2 || !is_power_of_two(m_i) {
                    return Err(Error::domain(format!(
                        "RQAM: M_I must be a power of 2 with M_I >= 2, got {m_i}"
                    )));
                }
                if m_q < 1 || !is_power_of_two(m_q) {
                    return Err(Error::domain(format!(
                        "RQAM: M_Q must be a power of 2 with M_Q >= 1, got {m_q}"
                    )));
                }
                if !(beta.is_finite() && beta >= 0.0) {
                    return Err(Error::domain(format!("RQAM: beta must be >= 0, got {beta}")));
                }
                // beta = 0 makes the quadrature decision distance collapse,
                // which only makes sense when there is no quadrature dimension.
                if beta == 0.0 && m_q != 1 {
                    return Err(Error::domain(
                        "RQAM: beta = 0 is only valid with M_Q = 1 (BPSK)".to_string(),
                    ));
                }
                Ok(())
            }
            ModulationScheme::Sqam { m } => {
                let root = (m as f64).sqrt().round() as u32;
                if root * root != m || !is_power_of_two(root) || m < 4 {
                    return Err(Error::domain(format!(
                        "SQAM: M must be a power of 4 (perfect square), got {m}"
                    )));
                }
                Ok(())
            }
            ModulationScheme::Xqam { m } => {
                if !matches!(m, 32 | 128 | 512 | 2048) {
                    return Err(Error::domain(format!(
                        "XQAM: M must be one of 32, 128, 512, 2048; got {m}"
                    )));
                }
                Ok(())
            }
            ModulationScheme::Bpsk => Ok(()),
        }
    }

    /// Constellation size M.
    pub fn order(&self) -> u32 {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, .. } => m_i * m_q,
            ModulationScheme::Sqam { m } | ModulationScheme::Xqam { m } => m,
            ModulationScheme::Bpsk => 2,
        }
    }

    /// The equivalent rectangular parameterization, if the scheme has one.
    fn as_rectangular(&self) -> Option<(u32, u32, f64)> {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => Some((m_i, m_q, beta)),
            ModulationScheme::Sqam { m } => {
                let root = (m as f64).sqrt().round() as u32;
                Some((root, root, 1.0))
            }
            ModulationScheme::Bpsk => Some((2, 1, 0.0)),
            ModulationScheme::Xqam { .. } => None,
        }
    }
}

impl fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => write!(f, "rqam:{m_i}x{m_q}:b={beta}"),
            ModulationScheme::Sqam { m } => write!(f, "sqam:{m}"),
            ModulationScheme::Xqam { m } => write!(f, "xqam:{m}"),
            ModulationScheme::Bpsk => write!(f, "bpsk"),
        }
    }
}

/// Derived RQAM conditional-SER parameters.
#[derive(Debug, Clone, Copy)]
pub struct RqamParams {
    /// 1 - 1/M_I.
    pub p: f64,
    /// 1 - 1/M_Q.
    pub q: f64,
    /// In-phase argument scale sqrt(6 / ((M_I^2-1) + (M_Q^2-1) beta^2)).
    pub a: f64,
    /// Quadrature argument scale beta * a.
    pub b: f64,
}

/// Compute the RQAM conditional-SER parameters.
pub fn rqam_params(scheme: &ModulationScheme) -> Result<RqamParams> {
    scheme.validate()?;
    let (m_i, m_q, beta) = scheme.as_rectangular().ok_or_else(|| {
        Error::domain(format!("rqam_params: {scheme} is not a rectangular scheme"))
    })?;
    let mi = m_i as f64;
    let mq = m_q as f64;
    let a = (6.0 / ((mi * mi - 1.0) + (mq * mq - 1.0) * beta * beta)).sqrt();
    Ok(RqamParams {
        p: 1.0 - 1.0 / mi,
        q: 1.0 - 1.0 / mq,
        a,
        b: beta * a,
    })
}

/// Derived XQAM conditional-SER parameters.
#[derive(Debug, Clone)]
pub struct XqamParams {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub l: u32,
    pub a0: f64,
    /// a_l = sqrt(2) * l * a0 for l = 1..=L.
    pub a_l: Vec<f64>,
    /// alpha_l = arctan(1/(2l+1)) for l = 1..=L-1.
    pub alpha_l: Vec<f64>,
    /// beta_l^+ = arctan(l/(l+1)) for l = 1..=L-1.
    pub beta_plus_l: Vec<f64>,
    /// beta_l^- = arctan(l/(l-1)) for l = 2..=L.
    pub beta_minus_l: Vec<f64>,
}

/// Compute the XQAM conditional-SER parameters.
pub fn xqam_params(m: u32) -> Result<XqamParams> {
    ModulationScheme::Xqam { m }.validate()?;
    let mf = m as f64;
    let root2m = (2.0 * mf).sqrt();
    let l = (root2m / 8.0).round() as u32;
    let a0 = (96.0 / (31.0 * mf - 32.0)).sqrt();
    let a_l = (1..=l).map(|k| std::f64::consts::SQRT_2 * k as f64 * a0).collect();
    let alpha_l = (1..l).map(|k| (1.0 / (2.0 * k as f64 + 1.0)).atan()).collect();
    let beta_plus_l = (1..l).map(|k| (k as f64 / (k as f64 + 1.0)).atan()).collect();
    let beta_minus_l = (2..=l).map(|k| (k as f64 / (k as f64 - 1.0)).atan()).collect();
    Ok(XqamParams {
        w1: 4.0 - 6.0 / root2m,
        w2: 4.0 / mf,
        w3: 4.0 - 12.0 / root2m + 12.0 / mf,
        l,
        a0,
        a_l,
        alpha_l,
        beta_plus_l,
        beta_minus_l,
    })
}

/// One Craig-form term w * Q_z(c sqrt(x), theta) of a conditional SER.
#[derive(Debug, Clone, Copy)]
pub struct QzTerm {
    pub w: f64,
    pub c: f64,
    pub theta: f64,
}

/// A conditional SER expressed as sum_i w_i * Q_z(c_i sqrt(x), theta_i).
///
/// The same term set drives the closed-form ASER, the quadrature ASER, the
/// low/high SNR asymptotes and the AWGN baselines.
#[derive(Debug, Clone)]
pub struct QzTermSet {
    pub terms: Vec<QzTerm>,
}

impl QzTermSet {
    /// The gamma -> 0 limit sum_i w_i * theta_i / pi, which must equal the
    /// random-guess SER 1 - 1/M.
    pub fn zero_snr_limit(&self) -> f64 {
        self.terms.iter().map(|t| t.w * t.theta / PI).sum()
    }
}

/// arccot(r) = arctan(1/r) in (0, pi/2) for r > 0.
pub(crate) fn arccot(r: f64) -> f64 {
    (1.0 / r).atan()
}

/// Decompose a scheme's conditional SER into weighted Craig terms.
pub fn decompose(scheme: &ModulationScheme) -> Result<QzTermSet> {
    scheme.validate()?;
    let mut terms = Vec::new();
    match scheme {
        ModulationScheme::Xqam { m } => {
            let x = xqam_params(*m)?;
            terms.push(QzTerm { w: x.w1, c: x.a0, theta: FRAC_PI_2 });
            terms.push(QzTerm { w: x.w2, c: x.a_l[0], theta: FRAC_PI_2 });
            terms.push(QzTerm { w: -x.w3, c: x.a0, theta: FRAC_PI_4 });
            for &alpha in &x.alpha_l {
                terms.push(QzTerm { w: -2.0 * x.w2, c: x.a0, theta: alpha });
            }
            for (idx, &bp) in x.beta_plus_l.iter().enumerate() {
                let l = idx + 1; // l = 1..=L-1
                terms.push(QzTerm { w: -x.w2, c: x.a_l[l - 1], theta: bp });
            }
            for (idx, &bm) in x.beta_minus_l.iter().enumerate() {
                let l = idx + 2; // l = 2..=L
                terms.push(QzTerm { w: x.w2, c: x.a_l[l - 1], theta: bm });
            }
        }
        _ => {
            let r = rqam_params(scheme)?;
            terms.push(QzTerm { w: 2.0 * r.p, c: r.a, theta: FRAC_PI_2 });
            if r.q > 0.0 {
                terms.push(QzTerm { w: 2.0 * r.q, c: r.b, theta: FRAC_PI_2 });
                let ratio = r.b / r.a;
                terms.push(QzTerm {
                    w: -2.0 * r.p * r.q,
                    c: r.b,
                    theta: ratio.atan(),
                });
                terms.push(QzTerm {
                    w: -2.0 * r.p * r.q,
                    c: r.a,
                    theta: arccot(ratio),
                });
            }
        }
    }
    Ok(QzTermSet { terms })
}

/// Explicit constellation with mean symbol energy `es`.
pub fn constellation(scheme: &ModulationScheme, es: f64) -> Result<Vec<Complex64>> {
    if !(es > 0.0) {
        return Err(Error::domain(format!("constellation: Es must be > 0, got {es}")));
    }
    scheme.validate()?;
    match scheme {
        ModulationScheme::Xqam { m } => Ok(xqam_constellation(*m, es)),
        _ => {
            let (m_i, m_q, beta) = scheme
                .as_rectangular()
                .expect("non-XQAM schemes are rectangular");
            Ok(rqam_constellation(m_i, m_q, beta, es))
        }
    }
}

fn rqam_constellation(m_i: u32, m_q: u32, beta: f64, es: f64) -> Vec<Complex64> {
    let mi = m_i as f64;
    let mq = m_q as f64;
    let d_i = (3.0 * es / ((mi * mi - 1.0) + (mq * mq - 1.0) * beta * beta)).sqrt();
    let d_q = beta * d_i;
    let mut points = Vec::with_capacity((m_i * m_q) as usize);
    for i in 1..=m_i {
        let re = (2.0 * i as f64 - 1.0 - mi) * d_i;
        for j in 1..=m_q {
            let im = (2.0 * j as f64 - 1.0 - mq) * d_q;
            points.push(Complex64::new(re, im));
        }
    }
    points
}

/// The standard cross lattice: odd-coordinate grid of side 3*sqrt(2M)/4 with
/// the four L x L corner blocks removed, L = sqrt(2M)/8. For M = 32 that is a
/// 6x6 grid minus its 4 corner points (row widths 4,6,6,6,6,4).
fn xqam_constellation(m: u32, es: f64) -> Vec<Complex64> {
    let mf = m as f64;
    let side = (3.0 * (2.0 * mf).sqrt() / 4.0).round() as i64;
    let corner = ((2.0 * mf).sqrt() / 8.0).round() as i64;
    let keep_limit = side - 1 - 2 * corner;
    let mut points = Vec::with_capacity(m as usize);
    let mut energy = 0.0;
    for re2 in (-(side - 1)..=side - 1).step_by(2) {
        for im2 in (-(side - 1)..=side - 1).step_by(2) {
            if re2.abs() > keep_limit && im2.abs() > keep_limit {
                continue; // corner block
            }
            points.push(Complex64::new(re2 as f64, im2 as f64));
            energy += (re2 * re2 + im2 * im2) as f64;
        }
    }
    debug_assert_eq!(points.len(), m as usize);
    let scale = (es * points.len() as f64 / energy).sqrt();
    for p in &mut points {
        *p *= scale;
    }
    points
}
