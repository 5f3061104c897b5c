//! How Gaussian is the composite IRS gain A = sum |h||g|? Empirical moments
//! against N pi/4 and N (1 - pi^2/16), plus the KS distance to the limiting
//! normal — shrinking with N.
//!
//!     cargo run --release --example clt_gain_distribution

use std::f64::consts::PI;

use irs_aser::montecarlo::validate_clt;

fn main() {
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10} {:>8}",
        "N", "mean", "N*pi/4", "var", "theory", "KS"
    );
    for n in [4u32, 16, 64, 256] {
        let s = validate_clt(n, 200_000, 1).unwrap();
        println!(
            "{n:>5} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>8.4}",
            s.mean_a,
            n as f64 * PI / 4.0,
            s.var_a,
            n as f64 * (1.0 - PI * PI / 16.0),
            s.ks_statistic
        );
    }
}
