//! Enumerates every Mermin pentagram of the three-qubit polar space and checks
//! that each one is a magic configuration.

use std::time::Instant;

use pauli_polar::build_polar_space;
use pauli_polar::contextuality::{certify_pentagrams, enumerate_pentagrams, four_point_contexts};

fn main() {
    let space = build_polar_space(3).expect("W(5,2)");
    println!(
        "four-point contexts: {}",
        four_point_contexts(&space).unwrap().len()
    );
    let start = Instant::now();
    let pentagrams = enumerate_pentagrams(&space).unwrap();
    let census = certify_pentagrams(&space, &pentagrams).unwrap();
    println!(
        "pentagrams: {} (all magic: {}) in {:.2?}",
        census.count,
        census.all_magic,
        start.elapsed()
    );
    let first = pentagrams[0].to_configuration(&space).unwrap();
    println!("first pentagram:");
    for (i, ctx) in first.contexts().iter().enumerate() {
        let ops: Vec<String> = ctx
            .points
            .iter()
            .map(|&p| first.points()[p].to_string())
            .collect();
        println!("  context {i}: {} (sign {:+})", ops.join(" "), ctx.sign);
    }
}
