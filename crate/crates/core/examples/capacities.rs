//! ECH capacities of balls, ellipsoids and the disk cotangent bundles of
//! `S^2` and `RP^2`, printed exactly and as floats.

use zoll_ech::capseq::{ball_capacities, dstar_capacities, ellipsoid_capacities, CapacitySequence, Surface};
use zoll_ech::exact::ExactQuantity;

fn show(name: &str, seq: &CapacitySequence, n: usize) {
    let terms = seq.prefix(n).expect("prefix fits in i64");
    let exact: Vec<String> = terms.iter().map(|q| q.to_string()).collect();
    let float: Vec<String> = terms.iter().map(|q| format!("{:.4}", q.to_f64())).collect();
    println!("{name:<16} {}", exact.join(", "));
    println!("{:<16} {}", "", float.join(", "));
}

fn main() {
    let pi = ExactQuantity::int_pi;
    show("B(2pi)", &ball_capacities(pi(2)).unwrap(), 10);
    show("E(1, 3/2)", &ellipsoid_capacities(ExactQuantity::int(1), ExactQuantity::ratio(3, 2)).unwrap(), 10);
    show("D*S2", &dstar_capacities(Surface::S2), 10);
    show("D*RP2", &dstar_capacities(Surface::RP2), 10);

    // Deep terms are cheap: the merge only keeps one cursor per row.
    let s2 = dstar_capacities(Surface::S2);
    for k in [100, 10_000, 1_000_000] {
        println!("c_{k}(D*S2) = {}", s2.term(k).unwrap());
    }
}
