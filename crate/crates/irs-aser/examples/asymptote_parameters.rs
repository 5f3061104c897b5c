//! Numerically extracted proportionality constants of the low-SNR, high-SNR
//! and AWGN-bound asymptotes for a few schemes.
//!
//!     cargo run --release --example asymptote_parameters

use irs_aser::asymptotics::fit_asymptote_params;
use irs_aser::modem::ModulationScheme;

fn main() {
    let n = 32;
    println!(
        "{:>16} {:>10} {:>12} {:>10} {:>10} {:>12}",
        "scheme", "eta1", "eta2", "mu", "kappa1", "kappa2"
    );
    for scheme in [
        ModulationScheme::Bpsk,
        ModulationScheme::rqam(4, 2, 1.0).unwrap(),
        ModulationScheme::rqam(8, 4, 1.0).unwrap(),
        ModulationScheme::sqam(16).unwrap(),
    ] {
        let p = fit_asymptote_params(&scheme, n).unwrap();
        println!(
            "{:>16} {:>10.4} {:>12.4e} {:>10.4} {:>10.4} {:>12.4e}",
            scheme.to_string(),
            p.eta1,
            p.eta2,
            p.mu,
            p.kappa1,
            p.kappa2
        );
    }
}
