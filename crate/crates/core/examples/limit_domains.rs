//! `eps -> 0` limits of the moment-map images for both variants, with their
//! convergence class and toric area.

use zoll_ech::momentmap::limit::{default_ladder, default_limit_grid, limit_area, sup_distance_to_limit};
use zoll_ech::momentmap::{limit_domain, Variant};

fn main() {
    for variant in [Variant::Full, Variant::Hemisphere] {
        let domain = limit_domain(variant, &default_ladder(), &default_limit_grid()).unwrap();
        let report = &domain.report;
        let closed = domain.curve.closed_by_continuity().unwrap();
        println!("== {variant}");
        println!("convergence {:?}, median ratio {:?} (linear would be {:?})", report.class, report.median_ratio, report.expected_ratio);
        println!("nesting holds: {}", report.nesting_holds);
        println!("sup distance to the limit curve {:.2e}", sup_distance_to_limit(variant, &domain.curve).unwrap());
        println!("area {:.10}, limit {:.10}", closed.toric_area().unwrap(), limit_area(variant).unwrap());
    }
}
