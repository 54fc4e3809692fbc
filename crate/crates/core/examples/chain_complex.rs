//! The three Zoll models: action spectrum, generators by grading and the
//! `U` map walking each generator down to the empty orbit set.

use zoll_ech::zollcx::{action, generators_by_grading, grading, spectrum, u_chain, ZollModel};

fn main() {
    for model in ZollModel::all() {
        println!("== {}", model.name);
        let spec: Vec<String> = spectrum(&model, 8).unwrap().iter().map(|q| q.to_string()).collect();
        println!("spectrum: {}", spec.join(", "));

        for g in generators_by_grading(&model, 10).unwrap() {
            println!("  {:>3}  {:<10} action {}", grading(&model, g).unwrap(), g.to_string(), action(&model, g));
        }

        let top = *generators_by_grading(&model, 10).unwrap().last().unwrap();
        let chain: Vec<String> = u_chain(&model, top).unwrap().iter().map(|a| a.to_string()).collect();
        println!("U chain: {}", chain.join(" -> "));
    }
}
