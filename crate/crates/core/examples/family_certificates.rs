//! Symbolic certification of every registered family.

use std::time::Instant;

use dquad::families::registry;

fn main() {
    for f in registry() {
        let start = Instant::now();
        let proof = f.prove().expect("registered families certify");
        let top = proof
            .pairs
            .iter()
            .filter_map(|p| p.root.degree())
            .max()
            .unwrap_or(0);
        println!(
            "{:<12} {} pairs, root degree <= {:>2}, {:.1?}",
            f.id,
            proof.pairs.len(),
            top,
            start.elapsed()
        );
    }

    let f = dquad::families::lookup("sec2_main").unwrap();
    println!("\nsec2_main, n = {}", f.n.display_in(&f.param));
    for (i, e) in f.elements.iter().enumerate() {
        println!("  a{i} = {}", e.display_in(&f.param));
    }
    for p in &f.prove().unwrap().pairs {
        println!(
            "  a{} a{} + n = ({})^2",
            p.i,
            p.j,
            p.root.display_in(&f.param)
        );
    }
}
