//! Special functions: Gaussian Q, the Craig-form partial Q integral and the
//! confluent Lauricella hypergeometric function via its finite integral
//! representation.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quad;

/// Gaussian tail probability Q(t) = (1/sqrt(2*pi)) int_t^inf exp(-x^2/2) dx.
pub fn gaussian_q(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain(format!("gaussian_q: t must be finite, got {t}")));
    }
    Ok(0.5 * libm::erfc(t / std::f64::consts::SQRT_2))
}

/// Craig-form partial Gaussian integral
/// Q_z(t, theta) = (1/pi) int_0^theta exp(-t^2 / (2 sin^2 phi)) dphi.
///
/// `Q(t) = qz(t, pi/2)` and the product `Q(t)Q(u)` splits into two qz terms,
/// which is what makes MGF averaging of QAM conditional SERs tractable.
pub fn qz(t: f64, theta: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("qz: t must be >= 0, got {t}")));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2 + 1e-12) {
        return Err(Error::domain(format!(
            "qz: theta must lie in (0, pi/2], got {theta}"
        )));
    }
    // Integrand is bounded by 1, so a tiny interval contributes nothing.
    if theta < 1e-12 {
        return Ok(0.0);
    }
    let theta = theta.min(FRAC_PI_2);
    let r = quad::integrate(
        |phi| {
            let s = phi.sin();
            if s <= 0.0 {
                0.0
            } else {
                (-t * t / (2.0 * s * s)).exp()
            }
        },
        0.0,
        theta,
    )?;
    Ok(r.value / PI)
}

/// Arguments of the confluent Lauricella function Phi_1^(n).
///
/// `z` holds n entries; the last one is the exponential argument, the first
/// n-1 pair up with the exponents in `p`.
#[derive(Debug, Clone)]
pub struct Phi1Args {
    pub m: f64,
    pub p: Vec<f64>,
    pub q: f64,
    pub z: Vec<f64>,
}

impl Phi1Args {
    pub fn new(m: f64, p: Vec<f64>, q: f64, z: Vec<f64>) -> Self {
        Phi1Args { m, p, q, z }
    }

    fn validate(&self) -> Result<()> {
        if !(self.q > self.m && self.m > 0.0) {
            return Err(Error::domain(format!(
                "lauricella_phi1: need q > m > 0, got m={}, q={}",
                self.m, self.q
            )));
        }
        if self.z.len() != self.p.len() + 1 {
            return Err(Error::domain(format!(
                "lauricella_phi1: z must have one more entry than p ({} vs {})",
                self.z.len(),
                self.p.len()
            )));
        }
        for (i, &zi) in self.z[..self.p.len()].iter().enumerate() {
            if !(zi < 1.0) {
                return Err(Error::domain(format!(
                    "lauricella_phi1: z[{i}]={zi} must be < 1 (pole inside [0,1])"
                )));
            }
        }
        if self.z.iter().any(|z| !z.is_finite()) || self.p.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("lauricella_phi1: non-finite argument"));
        }
        Ok(())
    }
}

/// Confluent Lauricella function
/// Phi_1^(n)(m; p_1..p_{n-1}; q; z_1..z_n)
///   = Gamma(q)/(Gamma(m) Gamma(q-m))
///     int_0^1 v^{m-1} (1-v)^{q-m-1} prod (1 - v z_i)^{-p_i} exp(v z_n) dv.
///
/// When q - m < 1 the weight (1-v)^{q-m-1} is singular at v = 1; the
/// substitution 1 - v = w^2 removes it (for the q = 1.5, m = 1 case the
/// transformed integrand is smooth), so one adaptive integrator covers every
/// Phi_1 variant the ASER formulas produce.
pub fn lauricella_phi1(args: &Phi1Args) -> Result<f64> {
    args.validate()?;
    let m = args.m;
    let q = args.q;
    let prefactor = libm::tgamma(q) / (libm::tgamma(m) * libm::tgamma(q - m));
    let (zn, zs) = args.z.split_last().expect("validated non-empty z");
    let zn = *zn;
    let ps = &args.p;

    let core = |v: f64| -> f64 {
        let mut r = (v * zn).exp();
        if m != 1.0 {
            r *= v.powf(m - 1.0);
        }
        for (&p, &z) in ps.iter().zip(zs) {
            if p != 0.0 {
                r *= (1.0 - v * z).powf(-p);
            }
        }
        r
    };

    // Essentially scale-free floor: the exponential argument z_n can be a
    // large negative number (boundary-layer integrands worth ~1e-90), where
    // an absolute floor would cap the attainable relative accuracy. Target
    // 1e-11 relative but degrade gracefully: as z_1 -> 1 the integrand grows
    // a (w^2 + eps)^-1 peak whose error estimate stagnates near 1e-8
    // relative, which is still far tighter than anything built on top needs.
    let abs_floor = 1e-280;
    let run = |rel_tol: f64| -> Result<quad::QuadResult> {
        if q - m < 1.0 {
            // 1 - v = w^2: dv = 2w dw, (1-v)^{q-m-1} = w^{2(q-m)-1} * ... so
            // the transformed integrand is 2 w^{2(q-m)-1} * core(1 - w^2).
            let exponent = 2.0 * (q - m) - 1.0;
            quad::integrate_tol(
                |w| {
                    let v = 1.0 - w * w;
                    let weight = if exponent == 0.0 { 2.0 } else { 2.0 * w.powf(exponent) };
                    weight * core(v)
                },
                0.0,
                1.0,
                rel_tol,
                abs_floor,
            )
        } else {
            let exponent = q - m - 1.0;
            quad::integrate_tol(
                |v| {
                    let weight = if exponent == 0.0 {
                        1.0
                    } else {
                        (1.0 - v).powf(exponent)
                    };
                    weight * core(v)
                },
                0.0,
                1.0,
                rel_tol,
                abs_floor,
            )
        }
    };

    let integral = run(1e-11)
        .or_else(|_| run(1e-9))
        .or_else(|_| run(1e-7))?;

    Ok(prefactor * integral.value)
}
