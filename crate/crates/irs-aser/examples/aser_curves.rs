//! Closed-form vs quadrature ASER for 4x2-QAM, with the low/high SNR
//! asymptotes alongside.
//!
//!     cargo run --release --example aser_curves

use irs_aser::aser::{self, Method};
use irs_aser::asymptotics::{self, HighSnrVariant};
use irs_aser::channel::link_params;
use irs_aser::modem::{self, ModulationScheme};

fn main() {
    let scheme = ModulationScheme::rqam(4, 2, 1.0).unwrap();
    let terms = modem::decompose(&scheme).unwrap();
    let n = 32;

    println!("{:>7} {:>14} {:>14} {:>14} {:>14}", "snr_db", "closed", "quadrature", "low_snr", "high_snr");
    for i in 0..=10 {
        let db = -25.0 + 5.0 * i as f64;
        let link = link_params(n, db).unwrap();
        let cf = aser::aser_from_terms(&terms, &link, Method::ClosedForm).unwrap().clamped;
        let qd = aser::aser_from_terms(&terms, &link, Method::Quadrature).unwrap().clamped;
        let lo = asymptotics::low_snr_from_terms(&terms, &link).min(1.0);
        let hi = asymptotics::high_snr_from_terms(&terms, &link, HighSnrVariant::Derived).unwrap();
        println!("{db:>7.1} {cf:>14.6e} {qd:>14.6e} {lo:>14.6e} {hi:>14.6e}");
    }
}
