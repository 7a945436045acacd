use flseq_core::characters::root_of_unity;
use flseq_core::correlation::{binary_cross_correlation, cross_spectrum, member_reports};
use flseq_core::prelude::*;
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn setup(q: u64, d: u32) -> (Field, MoebiusMap, Character) {
    let f = Field::from_order(q).unwrap();
    let psi = find_psi(&f).unwrap();
    let chi = Character::new(&f, CharacterSpec::Order(d)).unwrap();
    (f, psi, chi)
}

fn arb_case() -> impl Strategy<Value = (u64, u32, [u32; 4], usize)> {
    prop::sample::select(vec![
        (3u64, 2u32),
        (4, 3),
        (5, 4),
        (7, 3),
        (8, 7),
        (9, 8),
        (11, 5),
        (13, 6),
    ])
    .prop_flat_map(|(q, d)| {
        let qq = q as u32;
        (
            Just(q),
            Just(d),
            prop::array::uniform4(0..qq),
            0..(q as usize + 1),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composing_with_psi_power_shifts(case in arb_case()) {
        let (q, d, coeffs, s) = case;
        let (f, psi, chi) = setup(q, d);
        prop_assume!(MoebiusMap::from_codes(&f, coeffs).is_ok());
        let phi = MoebiusMap::from_codes(&f, coeffs).unwrap();
        let shifted_phi = phi.compose(&psi.pow(s as u64)).unwrap();
        let lhs = build_sequence(&shifted_phi, &psi, &chi).unwrap();
        let rhs = cyclic_shift(&build_sequence(&phi, &psi, &chi).unwrap(), s);
        prop_assert_eq!(lhs.exponents(), rhs.exponents());
        prop_assert_eq!(lhs.len() as u64, q + 1);
    }

    #[test]
    fn autocorrelation_is_conjugate_symmetric(case in arb_case()) {
        let (q, d, coeffs, _) = case;
        let (f, psi, chi) = setup(q, d);
        prop_assume!(MoebiusMap::from_codes(&f, coeffs).is_ok());
        let seq = build_sequence(&MoebiusMap::from_codes(&f, coeffs).unwrap(), &psi, &chi).unwrap();
        let report = autocorrelation_report(&seq);
        let n = seq.len();
        prop_assert_eq!(report.peak(), Complex64::new(n as f64, 0.0));
        for s in 1..n {
            prop_assert!((report.spectrum[n - s] - report.spectrum[s].conj()).norm() < TOL);
            prop_assert!(report.spectrum[s].norm() <= n as f64 + TOL);
        }
    }
}

#[test]
fn gf7_identity_quadratic_regression() {
    // Frozen from an independent brute-force evaluation:
    // sequence (1,1,-1,1,-1,-1,1,1), spectrum (8,0,0,0,-4,0,0,0).
    let (f, psi, chi) = setup(7, 2);
    let seq = build_sequence(&MoebiusMap::identity(&f), &psi, &chi).unwrap();
    assert_eq!(seq.signs().unwrap(), vec![1, 1, -1, 1, -1, -1, 1, 1]);
    let report = autocorrelation_report(&seq);
    let expected = [8.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0];
    for (z, e) in report.spectrum.iter().zip(expected) {
        assert_eq!(*z, Complex64::new(e, 0.0));
    }
    assert_eq!(report.tmax, 4.0);
    assert_eq!(report.argmax_shift, 4);
}

#[test]
fn entries_have_unit_modulus_and_trivial_character_is_flat() {
    for q in [4u64, 7, 9, 16] {
        let f = Field::from_order(q).unwrap();
        let psi = find_psi(&f).unwrap();
        let chi = Character::trivial(&f).unwrap();
        let phis = select_phis(&f, PhiStrategy::Sample { count: 10, seed: q }, &psi).unwrap();
        let fam = build_family(&phis, &psi, &chi, ExecMode::Sequential).unwrap();
        for m in fam.members() {
            assert!(m.exponents().iter().all(|&e| e == 0));
        }
        let chi = Character::new(&f, CharacterSpec::Index(1)).unwrap();
        let fam = build_family(&phis, &psi, &chi, ExecMode::Sequential).unwrap();
        for m in fam.members() {
            for v in m.entries() {
                assert!((v.to_complex().norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}

/// Unitary DFT, computed directly.
fn dft(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| {
            values
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    v * Complex64::from_polar(
                        1.0,
                        -std::f64::consts::TAU * (j * k) as f64 / n as f64,
                    )
                })
                .sum::<Complex64>()
                * scale
        })
        .collect()
}

#[test]
fn parseval_against_direct_dft() {
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
        let f = Field::from_order(q).unwrap();
        let psi = find_psi(&f).unwrap();
        let n = f.order() - 1;
        for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
            let chi = Character::new(&f, CharacterSpec::Order(d)).unwrap();
            let phis = select_phis(&f, PhiStrategy::CosetDistinct, &psi).unwrap();
            let fam = build_family(&phis, &psi, &chi, ExecMode::Parallel).unwrap();
            for m in fam.members() {
                let values: Vec<Complex64> = m
                    .exponents()
                    .iter()
                    .map(|&e| root_of_unity(e, m.denominator()))
                    .collect();
                let energy: f64 = autocorrelation_report(m)
                    .spectrum
                    .iter()
                    .map(|t| t.norm_sqr())
                    .sum();
                let spectral: f64 = values.len() as f64
                    * dft(&values)
                        .iter()
                        .map(|x| x.norm_sqr().powi(2))
                        .sum::<f64>();
                assert!((energy - spectral).abs() < 1e-6, "q={q} d={d}");
            }
        }
    }
}

#[test]
fn family_maximum_dominates_members_and_modes_agree() {
    for (q, d) in [(5u64, 2u32), (7, 3), (9, 4), (11, 2)] {
        let (f, psi, chi) = setup(q, d);
        let phis = select_phis(&f, PhiStrategy::Sample { count: 12, seed: 5 }, &psi).unwrap();
        let seq_fam = build_family(&phis, &psi, &chi, ExecMode::Sequential).unwrap();
        let par_fam = build_family(&phis, &psi, &chi, ExecMode::Parallel).unwrap();
        assert_eq!(seq_fam, par_fam);
        let a = tmax_family(&seq_fam, ExecMode::Sequential);
        let b = tmax_family(&seq_fam, ExecMode::Parallel);
        assert_eq!(a, b);
        for r in member_reports(&seq_fam, ExecMode::Parallel) {
            assert!(a.value + TOL >= r.tmax);
        }
    }
}

#[test]
fn family_maximum_brute_force() {
    let (f, psi, chi) = setup(9, 4);
    let phis = select_phis(&f, PhiStrategy::Sample { count: 6, seed: 9 }, &psi).unwrap();
    let fam = build_family(&phis, &psi, &chi, ExecMode::Sequential).unwrap();
    let mut best = (0.0f64, 0usize, 0usize, 0usize);
    for (i, a) in fam.members().iter().enumerate() {
        for (j, b) in fam.members().iter().enumerate() {
            for (s, z) in cross_spectrum(a, b).unwrap().iter().enumerate() {
                if i == j && s == 0 {
                    continue;
                }
                if z.norm() > best.0 {
                    best = (z.norm(), i, j, s);
                }
            }
        }
    }
    let got = tmax_family(&fam, ExecMode::Parallel);
    assert_eq!((got.value, got.i, got.j, got.s), best);
}

#[test]
fn binary_integer_and_float_agree() {
    for q in [5u64, 7, 9, 11, 13] {
        let (f, psi, chi) = setup(q, 2);
        let phis = select_phis(&f, PhiStrategy::CosetDistinct, &psi).unwrap();
        let fam = build_family(&phis, &psi, &chi, ExecMode::Parallel).unwrap();
        let a = &fam.members()[0];
        for b in fam.members().iter().take(10) {
            for s in 0..a.len() {
                let exact = binary_cross_correlation(a, b, s).unwrap();
                assert_eq!(
                    cross_correlation(a, b, s).unwrap(),
                    Complex64::new(exact as f64, 0.0)
                );
            }
        }
    }
}

#[test]
fn coset_distinct_members_are_not_shifts_of_each_other_by_construction() {
    // Shift-equivalence oracle: group all 24 maps of GF(3) by whether
    // φ' = φ∘ψ^s for some s.
    let (f, psi, _) = setup(3, 2);
    let all = enumerate_group(&f).unwrap();
    let mut classes: Vec<Vec<MoebiusMap>> = Vec::new();
    for g in &all {
        let found = classes
            .iter_mut()
            .find(|c| (0..4).any(|s| c[0].compose(&psi.pow(s)).unwrap() == *g));
        match found {
            Some(c) => c.push(g.clone()),
            None => classes.push(vec![g.clone()]),
        }
    }
    assert_eq!(classes.len(), 6);
    let reps = select_phis(&f, PhiStrategy::CosetDistinct, &psi).unwrap();
    assert_eq!(reps.len(), 6);
    for c in &classes {
        assert_eq!(reps.iter().filter(|r| c.contains(r)).count(), 1);
    }
}
