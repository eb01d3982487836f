use approx::assert_relative_eq;
use num_complex::Complex64;
use pauli_polar::entanglement::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = DEFAULT_EPSILON;

fn state(kets: &[&str]) -> StateTensor {
    StateTensor::from_basis_sum(vec![2; kets[0].len()], kets).unwrap()
}

fn random_tensor(rng: &mut impl Rng, format: Vec<usize>) -> StateTensor {
    let n = format.iter().product();
    let amps = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateTensor::new(format, amps).unwrap()
}

/// Discriminant in λ of det(A0 + λ A1), with A_i the slices at first index i.
fn hyperdet_by_discriminant(t: &StateTensor) -> Complex64 {
    let a = t.amplitudes();
    let (p, q, r, s) = (a[0], a[1], a[2], a[3]);
    let (p1, q1, r1, s1) = (a[4], a[5], a[6], a[7]);
    // det = (p + λp1)(s + λs1) - (q + λq1)(r + λr1)
    let c0 = p * s - q * r;
    let c1 = p * s1 + p1 * s - q * r1 - q1 * r;
    let c2 = p1 * s1 - q1 * r1;
    c1 * c1 - 4.0 * c0 * c2
}

#[test]
fn hyperdet_matches_discriminant_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let t = random_tensor(&mut rng, vec![2, 2, 2]);
        let a = cayley_hyperdet(&t).unwrap();
        let b = hyperdet_by_discriminant(&t);
        assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
    }
}

#[test]
fn hyperdet_is_slocc_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ghz = state(&["000", "111"]);
    assert_eq!(cayley_hyperdet(&ghz).unwrap(), Complex64::new(1.0, 0.0));
    for _ in 0..100 {
        let t = random_tensor(&mut rng, vec![2, 2, 2]);
        let gs: Vec<_> = (0..3).map(|_| random_slocc(&mut rng, 2)).collect();
        let moved = t.apply_local(&gs).unwrap();
        let before = cayley_hyperdet(&t).unwrap();
        let after = cayley_hyperdet(&moved).unwrap();
        assert!(
            (before - after).norm() <= 1e-6 * before.norm(),
            "{before} vs {after}"
        );
    }
}

#[test]
fn hyperdet_vanishes_on_w_and_products() {
    assert_eq!(
        cayley_hyperdet(&state(&["100", "010", "001"]))
            .unwrap()
            .norm(),
        0.0
    );
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let vs: Vec<StateTensor> = (0..3).map(|_| random_tensor(&mut rng, vec![2])).collect();
        let amps: Vec<Complex64> = (0..8)
            .map(|i| {
                vs[0].amplitudes()[i >> 2]
                    * vs[1].amplitudes()[(i >> 1) & 1]
                    * vs[2].amplitudes()[i & 1]
            })
            .collect();
        let t = StateTensor::new(vec![2, 2, 2], amps).unwrap();
        assert!(cayley_hyperdet(&t).unwrap().norm() < 1e-12);
    }
}

fn representatives() -> Vec<(StateTensor, SloccClass3Qubit)> {
    vec![
        (state(&["000"]), SloccClass3Qubit::Sep),
        (state(&["000", "011"]), SloccClass3Qubit::B1),
        (state(&["000", "101"]), SloccClass3Qubit::B2),
        (state(&["000", "110"]), SloccClass3Qubit::B3),
        (state(&["100", "010", "001"]), SloccClass3Qubit::W),
        (state(&["000", "111"]), SloccClass3Qubit::Ghz),
    ]
}

#[test]
fn flattening_rank_examples() {
    assert_eq!(flattening_ranks(&state(&["000"]), EPS).unwrap(), [1, 1, 1]);
    assert_eq!(
        flattening_ranks(&state(&["000", "111"]), EPS).unwrap(),
        [2, 2, 2]
    );
    assert_eq!(
        flattening_ranks(&state(&["000", "011"]), EPS).unwrap(),
        [1, 2, 2]
    );
    let zero = StateTensor::from_real(vec![2, 2, 2], &[0.0; 8]).unwrap();
    assert_eq!(
        flattening_ranks(&zero, EPS),
        Err(EntanglementError::ZeroTensor)
    );
    assert_eq!(
        classify_3qubit(&zero, EPS).unwrap().class,
        SloccClass3Qubit::Zero
    );
}

#[test]
fn six_representatives_and_slocc_stability() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (t, class) in representatives() {
        let t = t.normalized().unwrap();
        assert_eq!(classify_3qubit(&t, EPS).unwrap().class, class);
        for _ in 0..100 {
            let gs: Vec<_> = (0..3).map(|_| random_slocc(&mut rng, 2)).collect();
            let moved = t.apply_local(&gs).unwrap();
            assert_eq!(classify_3qubit(&moved, EPS).unwrap().class, class);
        }
    }
}

#[test]
fn classification_is_scale_free() {
    let w = state(&["100", "010", "001"]);
    for s in [1e-3, 1.0, 1e3] {
        let c = classify_3qubit(&w.scaled(Complex64::new(s, 0.0)), EPS).unwrap();
        assert_eq!(c.class, SloccClass3Qubit::W);
    }
    let ghz = state(&["000", "111"]).normalized().unwrap();
    let c = classify_3qubit(&ghz, EPS).unwrap();
    assert_relative_eq!(c.hyperdet_abs, 0.25, max_relative = 1e-12);
}

#[test]
fn two_qubit_examples() {
    let epr = state(&["00", "11"]).normalized().unwrap();
    assert!(!two_qubit_separable(&epr, EPS).unwrap());
    assert!(two_qubit_separable(&state(&["01"]), EPS).unwrap());
    assert!(matches!(
        two_qubit_separable(&state(&["000"]), EPS),
        Err(EntanglementError::Format { .. })
    ));
}

#[test]
fn terracini_is_seed_independent() {
    for seed in 0..20 {
        assert_eq!(secant_dimension_estimate(&[2, 2, 2], 2, seed), 8);
        assert_eq!(secant_dimension_estimate(&[2, 2], 1, seed), 3);
        assert_eq!(secant_dimension_estimate(&[2, 2], 2, seed), 4);
    }
    let r = zak_dichotomy(&[2, 2, 2], 0);
    assert_eq!((r.expected, r.actual, r.branch), (7, 7, 1));
    let r = zak_dichotomy(&[2, 2], 0);
    assert_eq!((r.expected, r.actual, r.branch), (5, 3, 2));
    let r = zak_dichotomy_veronese(2, 3, 0);
    assert_eq!((r.expected, r.actual, r.branch), (3, 3, 1));
}

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = random_tensor(&mut rng, vec![2, 2, 3]);
    let f = hyperplane_section_poly(&t).polynomial();
    let n = f.nvars();
    let grad = f.gradient();
    for _ in 0..10 {
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        for i in 0..n {
            let h = 1e-5;
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (f.eval(&xp) - f.eval(&xm)) / (2.0 * h);
            let exact = grad[i].eval(&x);
            assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
        }
    }
}

fn quadratic_tail(n: usize, skip: usize) -> Vec<(f64, Vec<u32>)> {
    (skip..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 2;
            (1.0, e)
        })
        .collect()
}

fn germ_from(n: usize, terms: Vec<(f64, Vec<u32>)>) -> LocalGerm {
    let refs: Vec<(f64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
    LocalGerm::new(Polynomial::from_terms(n, &refs))
}

#[test]
fn ak_family_milnor_numbers() {
    for k in 1..=3u32 {
        let mut terms = quadratic_tail(4, 1);
        terms.push((1.0, vec![k + 1, 0, 0, 0]));
        let a = singular_point_analysis(&germ_from(4, terms)).unwrap();
        assert_eq!(a.milnor_number, k as usize);
        assert_eq!(a.hessian_corank, if k == 1 { 0 } else { 1 });
        let expected = [
            SingularityType::A1,
            SingularityType::A2,
            SingularityType::A3,
        ][k as usize - 1];
        assert_eq!(singularity_type(&a), expected);
    }
}

#[test]
fn d4_normal_form_with_quadratics() {
    let mut terms = quadratic_tail(4, 2);
    terms.push((1.0, vec![3, 0, 0, 0]));
    terms.push((1.0, vec![1, 2, 0, 0]));
    let a = singular_point_analysis(&germ_from(4, terms)).unwrap();
    assert_eq!((a.hessian_corank, a.milnor_number), (2, 4));
    assert_eq!(singularity_type(&a), SingularityType::D4);
}

#[test]
fn four_qubit_section_is_d4() {
    let t = state(&["0000", "1011", "1101", "1110"]);
    let germ = hyperplane_section_poly(&t).chart(&[0, 1, 1, 1]).unwrap();
    assert_eq!(germ.display(), "y*z*t + x*y + x*z + x*t");
    let a = singular_point_analysis(&germ).unwrap();
    assert!(a.is_singular);
    assert_eq!(a.gradient_norm, 0.0);
    assert_eq!((a.hessian_corank, a.milnor_number), (2, 4));
    assert_eq!(singularity_type(&a), SingularityType::D4);
}

proptest! {
    #[test]
    fn classification_invariant_under_random_slocc(seed in any::<u64>(), which in 0usize..6) {
        let (t, class) = representatives().swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs: Vec<_> = (0..3).map(|_| random_slocc(&mut rng, 2)).collect();
        let moved = t.apply_local(&gs).unwrap();
        prop_assert_eq!(classify_3qubit(&moved, EPS).unwrap().class, class);
    }

    #[test]
    fn multilinear_form_is_linear_per_factor(seed in any::<u64>(), s in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tensor(&mut rng, vec![2, 3, 2]);
        let f = hyperplane_section_poly(&t).polynomial();
        let x: Vec<Complex64> = (0..7).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        // Scaling the second factor's block scales f linearly.
        let mut y = x.clone();
        for v in &mut y[2..5] {
            *v *= s;
        }
        let lhs = f.eval(&y);
        let rhs = f.eval(&x) * s;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }
}
