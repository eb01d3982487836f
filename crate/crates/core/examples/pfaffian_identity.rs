//! Tr(Ω(A)³) = c·Pf(A) for the duad-labeled three-qubit operators.

use pauli_polar::lie::{
    find_duad_labeling, magic_veldkamp_line, pfaffian, random_skew, trace_cube_ratio,
};
use pauli_polar::polar::build_polar_space;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let space = build_polar_space(3).unwrap();
    let line = magic_veldkamp_line(&space).unwrap();
    let labeling = find_duad_labeling(&space, &line.core).unwrap();
    for (duad, op) in labeling.entries() {
        print!("{duad}:{op} ");
    }
    println!();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let a = random_skew(&mut rng);
        let pf = pfaffian(&a).unwrap();
        println!(
            "Pf = {pf:+.6}  Pf^2 - det = {:+.1e}  Tr(Ω^3)/Pf = {:.9}",
            pf * pf - a.clone().determinant(),
            trace_cube_ratio(&labeling, &a).unwrap()
        );
    }
}
