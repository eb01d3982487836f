//! The two-qubit doily W(3,2): its 31 hyperplanes in three families.

use pauli_polar::export::point_labels;
use pauli_polar::polar::{all_hyperplanes, build_polar_space, hyperplane_census, HyperplaneTag};

fn main() {
    let space = build_polar_space(2).unwrap();
    let geometry = space.to_geometry();
    println!(
        "W(3,2): {} points, {} lines, GQ order {:?}",
        space.num_points(),
        space.lines().len(),
        geometry.gq_order()
    );
    let hyperplanes = all_hyperplanes(&space);
    let census = hyperplane_census(&hyperplanes);
    println!("{}", serde_json::to_string(&census).unwrap());
    for tag in [
        HyperplaneTag::Perp,
        HyperplaneTag::Hyperbolic,
        HyperplaneTag::Elliptic,
    ] {
        let h = hyperplanes.iter().find(|h| h.tag() == tag).unwrap();
        println!(
            "{tag} {}: {}",
            h.kind().label(),
            point_labels(&space, h.points()).join(" ")
        );
    }
}
