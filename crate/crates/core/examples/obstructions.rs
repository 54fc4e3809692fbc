//! Capacity obstructions to embeddings into `D*S2` and `D*RP2`, and the
//! Gromov widths they pin down.

use zoll_ech::capseq::{ball_capacities, dstar_capacities, Surface};
use zoll_ech::exact::ExactQuantity;
use zoll_ech::obstruct::{dominates_certified, gromov_width, gromov_width_capacity_bound, known_embeddings};

fn main() {
    let s2 = dstar_capacities(Surface::S2);

    // B(7) has a rational size, D*S2 is measured in units of pi: the
    // comparison needs a certified enclosure of pi.
    let verdict = dominates_certified(&ball_capacities(ExactQuantity::int(7)).unwrap(), &s2, 10).unwrap();
    println!("B(7) -> D*S2: {verdict}");
    let verdict = dominates_certified(&ball_capacities(ExactQuantity::int(6)).unwrap(), &s2, 300).unwrap();
    println!("B(6) -> D*S2: {verdict}");

    for surface in [Surface::S2, Surface::RP2] {
        let bound = gromov_width_capacity_bound(&dstar_capacities(surface), 100).unwrap();
        println!("capacity bound for {surface}: {} (at k={})", bound.value, bound.attained_at);
        let cert = gromov_width(surface);
        println!("  width {}: upper {} from {}, lower {} from {}", cert.width, cert.upper, cert.upper_source, cert.lower, cert.lower_source);
    }

    for e in known_embeddings() {
        let fill = if e.volume_filling { ", volume filling" } else { "" };
        println!("{} -> {}{fill}", e.source, e.target);
    }
}
