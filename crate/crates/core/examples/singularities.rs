//! Hyperplane-section singularities: the four-qubit D4 point and a few normal forms.

use pauli_polar::entanglement::{
    hyperplane_section_poly, singular_point_analysis, singularity_type, LocalGerm, Polynomial,
    StateTensor,
};

type Terms<'a> = &'a [(f64, &'a [u32])];

fn main() {
    let t = StateTensor::from_basis_sum(vec![2; 4], &["0000", "1011", "1101", "1110"]).unwrap();
    let germ = hyperplane_section_poly(&t).chart(&[0, 1, 1, 1]).unwrap();
    let a = singular_point_analysis(&germ).unwrap();
    println!(
        "f = {}: corank {}, mu = {}, type {}",
        germ.display(),
        a.hessian_corank,
        a.milnor_number,
        singularity_type(&a).name()
    );

    let forms: [(&str, Terms); 4] = [
        ("x^2 + y^2", &[(1.0, &[2, 0]), (1.0, &[0, 2])]),
        ("x^3 + y^2", &[(1.0, &[3, 0]), (1.0, &[0, 2])]),
        ("x^4 + y^2", &[(1.0, &[4, 0]), (1.0, &[0, 2])]),
        ("x^3 + x*y^2", &[(1.0, &[3, 0]), (1.0, &[1, 2])]),
    ];
    for (name, terms) in forms {
        let a = singular_point_analysis(&LocalGerm::new(Polynomial::from_terms(2, terms))).unwrap();
        println!(
            "{name:<12} mu = {}, type {}",
            a.milnor_number,
            singularity_type(&a).name()
        );
    }
}
