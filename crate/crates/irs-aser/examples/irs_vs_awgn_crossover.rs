//! Where does the IRS-assisted fading link beat a plain AWGN link at the
//! same average SNR? Below the crossover the array gain dominates; above it
//! the residual fading costs more than the array gain buys.
//!
//!     cargo run --release --example irs_vs_awgn_crossover

use irs_aser::aser;
use irs_aser::asymptotics::aser_awgn_exact;
use irs_aser::channel::link_params;
use irs_aser::modem::ModulationScheme;

fn main() {
    let scheme = ModulationScheme::rqam(4, 2, 1.0).unwrap();
    let n = 16;
    println!("{:>7} {:>13} {:>13}  winner", "snr_db", "irs", "awgn");
    let mut crossover = None;
    let mut prev_irs_wins = None;
    for i in 0..=25 {
        let db = -20.0 + 2.0 * i as f64;
        let link = link_params(n, db).unwrap();
        let irs = aser::aser(&scheme, &link).unwrap().clamped;
        let awgn = aser_awgn_exact(&scheme, 10f64.powf(db / 10.0)).unwrap();
        let irs_wins = irs < awgn;
        if let Some(prev) = prev_irs_wins {
            if prev != irs_wins {
                crossover = Some(db);
            }
        }
        prev_irs_wins = Some(irs_wins);
        println!(
            "{db:>7.1} {irs:>13.4e} {awgn:>13.4e}  {}",
            if irs_wins { "irs" } else { "awgn" }
        );
    }
    if let Some(db) = crossover {
        println!("\ncrossover just below {db:.1} dB (N = {n})");
    }
}
