//! ECH index between orbit sets, split into its relative Chern class,
//! self-intersection and Conley-Zehnder parts.

use zoll_ech::zollcx::{closed_form_index, ech_index, homology_class, index_components, OrbitSet, ZollModel};

fn main() {
    let model = ZollModel::sstar_rp2();
    let pairs = [(OrbitSet::new(3, 1), OrbitSet::EMPTY), (OrbitSet::new(2, 6), OrbitSet::new(1, 3)), (OrbitSet::new(4, 0), OrbitSet::new(0, 4))];
    for (alpha, beta) in pairs {
        let parts = index_components(&model, alpha, beta).unwrap();
        println!(
            "I({alpha}, {beta}) = {}   c_tau {}  Q_tau {}  CZ {} - {}",
            parts.total(),
            parts.c_tau,
            parts.q_tau,
            parts.cz_sum_alpha,
            parts.cz_sum_beta
        );
        assert_eq!(parts.total(), closed_form_index(&model, alpha, beta).unwrap());
    }

    // Different homology classes have no relative index.
    let (a, b) = (OrbitSet::new(1, 0), OrbitSet::EMPTY);
    println!(
        "classes {} and {}: {}",
        homology_class(&model, a),
        homology_class(&model, b),
        ech_index(&model, a, b).unwrap_err()
    );
}
