use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_polar::pauli::{parse_pauli, symplectic_form, PauliOperator, SymplecticVector};
use proptest::prelude::*;

type M = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter(ch: char) -> M {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match ch {
        'I' => M::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => M::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => M::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => M::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => unreachable!(),
    }
}

/// Standard textbook matrix of a label such as `-iXYZ`, built without the library.
fn oracle(label: &str) -> M {
    let mut rest = label;
    let mut scalar = c(1.0, 0.0);
    if let Some(r) = rest.strip_prefix('-') {
        scalar = -scalar;
        rest = r;
    }
    if let Some(r) = rest.strip_prefix('i') {
        scalar *= c(0.0, 1.0);
        rest = r;
    }
    let m = rest
        .chars()
        .fold(M::from_element(1, 1, c(1.0, 0.0)), |acc, ch| {
            acc.kronecker(&letter(ch))
        });
    m * scalar
}

fn label_strategy(max_width: usize) -> impl Strategy<Value = String> {
    (1..=max_width).prop_flat_map(label_strategy_exact)
}

fn same_width_pair(max_width: usize) -> impl Strategy<Value = (String, String)> {
    (1..=max_width).prop_flat_map(|n| (label_strategy_exact(n), label_strategy_exact(n)))
}

fn label_strategy_exact(n: usize) -> impl Strategy<Value = String> {
    (
        prop::sample::select(vec!["", "-", "i", "-i"]),
        prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n),
    )
        .prop_map(|(p, letters)| format!("{p}{}", letters.into_iter().collect::<String>()))
}

fn close(a: &M, b: &M) -> bool {
    (a - b).norm() < 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_matches_matrices((a, b) in same_width_pair(3)) {
        let pa = parse_pauli(&a).unwrap();
        let pb = parse_pauli(&b).unwrap();
        let prod = pa.multiply(pb).unwrap();
        prop_assert!(close(&oracle(&prod.to_string()), &(oracle(&a) * oracle(&b))));
        let ma = oracle(&a);
        let mb = oracle(&b);
        let commute = close(&(&ma * &mb), &(&mb * &ma));
        prop_assert_eq!(pa.commutes_with(pb).unwrap(), commute);
        prop_assert_eq!(symplectic_form(pa.vector(), pb.vector()).unwrap(), !commute);
    }

    #[test]
    fn display_round_trip(a in label_strategy(6)) {
        let p = parse_pauli(&a).unwrap();
        prop_assert_eq!(parse_pauli(&p.to_string()).unwrap(), p);
        prop_assert!(close(&oracle(&p.to_string()), &oracle(&a)));
    }

    #[test]
    fn product_is_associative((a, b) in same_width_pair(4), seed in any::<u64>()) {
        let n = parse_pauli(&a).unwrap().width();
        let third = SymplecticVector::from_packed(n, seed & ((1u64 << (2 * n)) - 1)).unwrap();
        let (x, y, z) = (parse_pauli(&a).unwrap(), parse_pauli(&b).unwrap(), PauliOperator::hermitian(third));
        prop_assert_eq!(x.multiply(y).unwrap().multiply(z).unwrap(), x.multiply(y.multiply(z).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip(a in label_strategy(8)) {
        let p = parse_pauli(&a).unwrap();
        prop_assert_eq!(PauliOperator::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn exhaustive_commutation_up_to_two_qubits() {
    for n in 1..=2usize {
        let labels: Vec<String> = (0..1u64 << (2 * n))
            .map(|bits| SymplecticVector::from_packed(n, bits).unwrap().label())
            .collect();
        for a in &labels {
            for b in &labels {
                let (ma, mb) = (oracle(a), oracle(b));
                let commute = close(&(&ma * &mb), &(&mb * &ma));
                let pa = parse_pauli(a).unwrap();
                let pb = parse_pauli(b).unwrap();
                assert_eq!(pa.commutes_with(pb).unwrap(), commute, "{a} {b}");
                let prod = pa.multiply(pb).unwrap();
                assert!(close(&oracle(&prod.to_string()), &(ma * mb)), "{a} {b}");
            }
        }
    }
}

#[test]
fn hermitian_labels_square_to_identity() {
    for label in ["XYZ", "YYY", "IZX", "Y"] {
        let p = parse_pauli(label).unwrap();
        assert!(p.is_hermitian());
        let sq = p.multiply(p).unwrap();
        assert_eq!(sq.to_string(), "I".repeat(label.len()));
    }
}

#[test]
fn rejects_malformed_labels() {
    for bad in ["", "-", "XQ", "i", "xx", "+X"] {
        assert!(parse_pauli(bad).is_err(), "{bad:?}");
    }
    let x = parse_pauli("X").unwrap();
    let xx = parse_pauli("XX").unwrap();
    assert!(x.multiply(xx).is_err());
}
