//! Phase bookkeeping for Pauli products and the commutation test via the symplectic form.

use pauli_polar::pauli::{parse_pauli, symplectic_form};

fn main() {
    let pairs = [("XI", "ZI"), ("XX", "ZZ"), ("XYZ", "YZX"), ("-iXY", "YX")];
    for (a, b) in pairs {
        let (p, q) = (parse_pauli(a).unwrap(), parse_pauli(b).unwrap());
        let prod = p.multiply(q).unwrap();
        let anticommute = symplectic_form(p.vector(), q.vector()).unwrap();
        println!(
            "{a:>5} * {b:<4} = {prod:<6} {}  bits {:?}",
            if anticommute {
                "anticommute"
            } else {
                "commute"
            },
            prod.vector().to_bits()
        );
    }
    let xx = parse_pauli("XX").unwrap();
    println!(
        "XX as JSON: {}",
        serde_json::to_string(&xx.to_json()).unwrap()
    );
}
