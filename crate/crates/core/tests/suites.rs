#![allow(clippy::excessive_precision)]

use kbessel::inequalities::{
    check_ratio_monotone_in_k, sample_cases, CheckOptions, Claim, GridSpec, ViolationKind,
};
use kbessel::series::{modified_i_kbessel, KBesselShape};

// Reference ratios from a 40-digit evaluation of both series.
const K_RATIO_REFERENCE: [(f64, f64); 3] = [
    (0.001, 0.20245815966714408),
    (0.1, 0.18921408084249605),
    (1.0, 0.19882432541789991),
];

fn counterexample() -> (KBesselShape, f64) {
    let shape = KBesselShape::new(2.1858716674912007, -0.5530333124902233, 1.7418239433316574, 0.48587460612159916)
        .unwrap();
    (shape, 0.2990780338776642)
}

#[test]
fn k_ratio_dips_for_an_admissible_parameter_set() {
    let (shape, m) = counterexample();
    let den = KBesselShape { k: m, ..shape };
    for (x, expected) in K_RATIO_REFERENCE {
        let ratio = modified_i_kbessel(&shape, x, 1e-15).unwrap().value / modified_i_kbessel(&den, x, 1e-15).unwrap().value;
        assert!((ratio / expected - 1.0).abs() < 1e-12, "x={x}: {ratio} vs {expected}");
    }
    assert!(K_RATIO_REFERENCE[1].1 < K_RATIO_REFERENCE[0].1);

    let grid = GridSpec::logarithmic(1e-3, 20.0, 200).unwrap();
    let report = check_ratio_monotone_in_k(&shape, m, &grid, &CheckOptions::default()).unwrap();
    assert!(!report.pass);
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Consecutive && v.points[1] <= 0.1));
}

// A coefficient ratio that is monotone on all of n forces the function
// ratio to move the same way on (0, ∞).
#[test]
fn monotone_coefficients_imply_monotone_ratio() {
    for claim in [Claim::Thm1, Claim::Thm2, Claim::Thm4a, Claim::Thm4b, Claim::Thm4c] {
        for case in sample_cases(claim, 20, 5).unwrap() {
            let sequence = case.sequence_report(None).unwrap().unwrap();
            if !sequence.pass {
                continue;
            }
            let opts = CheckOptions::default().with_direction(sequence.direction);
            let report = case.run(None, &opts).unwrap().remove(0);
            assert!(report.pass, "{case:?}: sequence {:?} but function ratio fails", sequence.direction);
        }
    }
}
