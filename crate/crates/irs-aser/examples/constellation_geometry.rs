//! Constellation geometry: point counts, mean energy (should equal Es) and
//! minimum distance for the supported schemes.
//!
//!     cargo run --release --example constellation_geometry

use irs_aser::modem::{constellation, ModulationScheme};

fn main() {
    let es = 1.0;
    let schemes = [
        ModulationScheme::Bpsk,
        ModulationScheme::rqam(8, 4, 1.0).unwrap(),
        ModulationScheme::rqam(16, 2, 1.0).unwrap(),
        ModulationScheme::sqam(16).unwrap(),
        ModulationScheme::xqam(32).unwrap(),
        ModulationScheme::xqam(128).unwrap(),
    ];
    println!("{:>16} {:>6} {:>12} {:>10}", "scheme", "points", "mean_energy", "d_min");
    for scheme in schemes {
        let pts = constellation(&scheme, es).unwrap();
        let energy: f64 = pts.iter().map(|p| p.norm_sqr()).sum::<f64>() / pts.len() as f64;
        let mut dmin = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                dmin = dmin.min((pts[i] - pts[j]).norm());
            }
        }
        println!("{:>16} {:>6} {energy:>12.6} {dmin:>10.6}", scheme.to_string(), pts.len());
    }

    // The 32-cross, drawn.
    let pts = constellation(&ModulationScheme::xqam(32).unwrap(), es).unwrap();
    let d = pts
        .iter()
        .map(|p| p.re.abs().min(p.im.abs()))
        .fold(f64::INFINITY, f64::min);
    println!("\nxqam:32 lattice (row widths should read 4 6 6 6 6 4):");
    for row in (0..6).rev() {
        let y = (2.0 * row as f64 - 5.0) * d;
        let mut line = String::new();
        for col in 0..6 {
            let x = (2.0 * col as f64 - 5.0) * d;
            let hit = pts.iter().any(|p| (p.re - x).abs() < d && (p.im - y).abs() < d);
            line.push(if hit { 'o' } else { '.' });
            line.push(' ');
        }
        println!("  {line}");
    }
}
