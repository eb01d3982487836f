//! The magic Veldkamp line of three qubits, its doily core and the A5 weight diagram.

use pauli_polar::export::{point_labels, weight_diagram_dot};
use pauli_polar::lie::{core_is_doily, default_roots, magic_veldkamp_line, weight_orbit};
use pauli_polar::pauli::parse_pauli;
use pauli_polar::polar::build_polar_space;

fn main() {
    let space = build_polar_space(3).unwrap();
    let line = magic_veldkamp_line(&space).unwrap();
    println!(
        "|C_YYY| = {}, |H_YYY| = {}, |H_III| = {}",
        line.perp.len(),
        line.elliptic.len(),
        line.hyperbolic.len()
    );
    println!("core: {}", point_labels(&space, &line.core).join(" "));
    println!("core is a doily: {}", core_is_doily(&space, &line));

    let roots = default_roots(&space).unwrap();
    let highest = parse_pauli("ZIZ").unwrap();
    let diagram = weight_orbit(&space, &roots, highest).unwrap();
    let labels: Vec<String> = roots.iter().map(ToString::to_string).collect();
    println!("roots: {}", labels.join(" "));
    for (duad, v) in &diagram.nodes {
        println!("  {duad}: {}", v.label());
    }
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", weight_diagram_dot(&diagram));
    }
}
