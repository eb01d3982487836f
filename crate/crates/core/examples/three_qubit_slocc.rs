//! Classifies the six three-qubit orbit representatives, before and after a random SLOCC move.

use pauli_polar::entanglement::{classify_3qubit, random_slocc, StateTensor, DEFAULT_EPSILON};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let reps: [&[&str]; 6] = [
        &["000"],
        &["000", "011"],
        &["000", "101"],
        &["000", "110"],
        &["100", "010", "001"],
        &["000", "111"],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kets in reps {
        let t = StateTensor::from_basis_sum(vec![2, 2, 2], kets).unwrap();
        let c = classify_3qubit(&t, DEFAULT_EPSILON).unwrap();
        let gs: Vec<_> = (0..3).map(|_| random_slocc(&mut rng, 2)).collect();
        let moved = classify_3qubit(&t.apply_local(&gs).unwrap(), DEFAULT_EPSILON).unwrap();
        println!(
            "{:<16} {:<4} |Det| = {:.4}  ranks {:?}  after SLOCC: {}",
            kets.join("+"),
            c.class.name(),
            c.hyperdet_abs,
            c.flattening_ranks.unwrap_or_default(),
            moved.class.name()
        );
    }
}
