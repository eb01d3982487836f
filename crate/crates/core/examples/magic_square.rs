//! The Mermin-Peres square: context signs, the magic test and the classical game value.

use pauli_polar::build_polar_space;
use pauli_polar::contextuality::{
    context_sign_by_matrix, enumerate_grids, is_magic, mermin_square_canonical, SquareGame,
};

fn main() {
    let square = mermin_square_canonical();
    for (i, ctx) in square.contexts().iter().enumerate() {
        let ops = square.context_operators(i);
        let labels: Vec<String> = ops.iter().map(ToString::to_string).collect();
        let oracle = context_sign_by_matrix(&ops).unwrap();
        println!(
            "{:<12} sign {:+}  matrix {:?}",
            labels.join(" "),
            ctx.sign,
            oracle
        );
    }
    println!("magic: {}", is_magic(&square));
    let game = SquareGame::from_configuration(&square).unwrap();
    println!("classical value: {}", game.classical_value());

    let grids = enumerate_grids(&build_polar_space(2).unwrap()).unwrap();
    println!(
        "doily grids: {}, magic: {}",
        grids.len(),
        grids.iter().filter(|g| is_magic(g)).count()
    );
}
