//! Boundary of the moment-map image of the perturbed system for one `eps`,
//! written as CSV and compared with the unperturbed limit.

use zoll_ech::momentmap::{admissible_grid, analytic, boundary_curve, PerturbParams};

fn main() {
    let params = PerturbParams::hemisphere(1e-4).unwrap();
    let grid = admissible_grid(&params, 16).unwrap();
    let curve = boundary_curve(&params, &grid).unwrap();

    println!("{:>10} {:>12} {:>12} {:>12}", "j", "rho1", "rho2", "limit gap");
    for s in curve.samples() {
        let (lx, ly) = analytic::limit_point(params.variant(), s.j).unwrap();
        println!("{:>10.6} {:>12.8} {:>12.8} {:>12.3e}", s.j, s.x, s.y, (s.x - lx).hypot(s.y - ly));
    }
    println!("largest quadrature error {:.1e}", curve.max_err());

    let mut csv = Vec::new();
    curve.write_csv(&mut csv).unwrap();
    println!("{}", String::from_utf8(csv).unwrap().lines().take(3).collect::<Vec<_>>().join("\n"));
}
