//! Veldkamp lines of the doily and the sum rule for hyperplane kinds.

use pauli_polar::polar::{
    all_hyperplanes, build_polar_space, predicted_sum, veldkamp_lines, veldkamp_sum,
};

fn main() {
    let space = build_polar_space(2).unwrap();
    let census = veldkamp_lines(&space).unwrap();
    println!(
        "{} hyperplanes, {} Veldkamp lines",
        census.hyperplanes.len(),
        census.lines.len()
    );
    for (kind, count) in &census.by_type {
        println!("  {:<28} {count}", kind.name());
    }

    let hs = all_hyperplanes(&space);
    let (a, b) = (&hs[0], &hs[20]);
    let sum = veldkamp_sum(&space, a, b).unwrap();
    println!(
        "{} + {} = {} (predicted {})",
        a.kind().label(),
        b.kind().label(),
        sum.kind().label(),
        predicted_sum(a.kind(), b.kind()).unwrap().label()
    );
}
