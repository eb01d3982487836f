//! Secant dimensions by Terracini's lemma and the two branches of Zak's dichotomy.

use pauli_polar::entanglement::{secant_dimension_estimate, zak_dichotomy, zak_dichotomy_veronese};

fn main() {
    for format in [vec![2, 2], vec![2, 2, 2], vec![2, 2, 2, 2], vec![3, 3]] {
        let dims: Vec<usize> = (1..=3)
            .map(|k| secant_dimension_estimate(&format, k, 0))
            .collect();
        let zak = zak_dichotomy(&format, 0);
        println!(
            "{format:?}: affine dim sigma_1..3 = {dims:?}, Zak branch {} (expected {}, actual {})",
            zak.branch, zak.expected, zak.actual
        );
    }
    let v = zak_dichotomy_veronese(3, 2, 0);
    println!(
        "Veronese surface: Zak branch {} (expected {}, actual {})",
        v.branch, v.expected, v.actual
    );
}
