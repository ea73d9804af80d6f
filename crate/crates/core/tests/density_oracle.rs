use cdwsd_core::{conceptual_density, ConceptStats, DensityFormula};
use cdwsd_testkit::{ref_density, RefFormula, RefStats};
use proptest::prelude::*;

fn pair(adesc: f64, h: u32, d: u32, desc: u32) -> (ConceptStats, RefStats) {
    (
        ConceptStats {
            descendants: desc,
            height: h,
            depth: d,
            mean_branching: adesc,
        },
        RefStats {
            descendants: desc,
            height: h,
            depth: d,
            mean_branching: adesc,
        },
    )
}

fn formulas() -> Vec<(DensityFormula, RefFormula)> {
    vec![
        (DensityFormula::sar(0.2).unwrap(), RefFormula::Sar(0.2)),
        (DensityFormula::sar(0.5).unwrap(), RefFormula::Sar(0.5)),
        (DensityFormula::ar(), RefFormula::Ar),
        (DensityFormula::sdf(), RefFormula::Sdf),
        (DensityFormula::lf(), RefFormula::Lf),
    ]
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

#[test]
fn grid_matches_straight_loops() {
    let mut worst: f64 = 0.0;
    for (f, rf) in formulas() {
        for adesc in [1.0, 1.5, 2.0, 3.0] {
            for h in 1..=6 {
                for d in 1..=6 {
                    for desc in 1..=64 {
                        for m in 0..=10 {
                            let (s, rs) = pair(adesc, h, d, desc);
                            let got = conceptual_density(&f, &s, f64::from(m));
                            let want = ref_density(rf, &rs, f64::from(m));
                            worst = worst.max(rel_err(got, want));
                        }
                    }
                }
            }
        }
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
}

#[test]
fn worked_sar_example() {
    let (s, _) = pair(2.0, 3, 1, 7);
    let got = conceptual_density(&DensityFormula::sar(0.2).unwrap(), &s, 3.0);
    assert!((got - 0.7453).abs() < 1e-4, "{got}");
}

fn stats() -> impl Strategy<Value = (f64, u32, u32, u32)> {
    (1.0f64..4.0, 1u32..9, 1u32..9, 1u32..200)
}

proptest! {
    #[test]
    fn nondecreasing_in_marks((adesc, h, d, desc) in stats(), m in 0.0f64..12.0, dm in 0.0f64..3.0) {
        let (s, _) = pair(adesc, h, d, desc);
        for (f, _) in formulas() {
            prop_assert!(conceptual_density(&f, &s, m + dm) >= conceptual_density(&f, &s, m));
        }
    }

    #[test]
    fn fractional_marks_match_the_reference((adesc, h, d, desc) in stats(), m in 0.0f64..12.0) {
        let (s, rs) = pair(adesc, h, d, desc);
        for (f, rf) in formulas() {
            prop_assert!(rel_err(conceptual_density(&f, &s, m), ref_density(rf, &rs, m)) <= 1e-12);
        }
    }

    #[test]
    fn sdf_is_bounded_when_marks_fit((adesc, h, d, desc) in stats(), frac in 0.0f64..=1.0) {
        let (s, _) = pair(adesc, h, d, desc);
        let m = (f64::from(desc) * frac).floor();
        let v = conceptual_density(&DensityFormula::sdf(), &s, m);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn ar_saturates_at_height((adesc, h, d, desc) in stats()) {
        let (s, _) = pair(adesc, h, d, desc);
        prop_assert_eq!(conceptual_density(&DensityFormula::ar(), &s, f64::from(h)), 1.0);
    }
}
