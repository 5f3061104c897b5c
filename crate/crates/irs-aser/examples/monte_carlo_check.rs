//! Simulated SER vs the analytic prediction, including the small-N regime
//! where the Gaussian approximation of the composite gain degrades.
//!
//!     cargo run --release --example monte_carlo_check

use irs_aser::aser;
use irs_aser::channel::link_params;
use irs_aser::modem::ModulationScheme;
use irs_aser::montecarlo::{simulate_ser, ChannelMode, SimulationConfig};

fn main() {
    let scheme = ModulationScheme::rqam(4, 2, 1.0).unwrap();
    println!("{:>4} {:>7} {:>12} {:>12} {:>8}", "N", "snr_db", "analytic", "simulated", "sigma");
    for (n, db) in [(4u32, 0.0), (8, -5.0), (32, -16.0), (64, -22.0)] {
        let link = link_params(n, db).unwrap();
        let pred = aser::aser(&scheme, &link).unwrap().clamped;
        let mut cfg = SimulationConfig::new(scheme, ChannelMode::Irs { n }, db);
        cfg.num_symbols = 200_000;
        let rep = simulate_ser(&cfg).unwrap();
        let sigmas = (rep.ser_estimate - pred).abs() / rep.standard_error;
        println!(
            "{n:>4} {db:>7.1} {pred:>12.4e} {:>12.4e} {sigmas:>8.2}{}",
            rep.ser_estimate,
            if rep.low_count_warning { "  (low error count)" } else { "" }
        );
    }
}
