//! Volumes recovered from capacity growth, `c_k^2 / (4k) -> vol`, against
//! the exact volumes.

use zoll_ech::capseq::{ball_capacities, dstar_capacities, Surface};
use zoll_ech::exact::ExactQuantity;
use zoll_ech::obstruct::{dstar_volume, gromov_width_volume_bound, volume_from_capacities, Domain};

fn main() {
    let ball = Domain::Ball { a: ExactQuantity::int_pi(2) };
    let cases = [
        ("D*S2", dstar_capacities(Surface::S2), dstar_volume(Surface::S2)),
        ("D*RP2", dstar_capacities(Surface::RP2), dstar_volume(Surface::RP2)),
        ("B(2pi)", ball_capacities(ExactQuantity::int_pi(2)).unwrap(), ball.volume()),
    ];
    for (name, seq, vol) in cases {
        print!("{name:<7} vol {vol:<6}");
        for k in [1_234, 123_457, 2_000_003] {
            let est = volume_from_capacities(&seq, k).unwrap();
            print!("  k={k}: {:.3e}", (est - vol.to_f64()).abs() / vol.to_f64());
        }
        println!("  width <= {:.6}", gromov_width_volume_bound(vol).unwrap());
    }
}
