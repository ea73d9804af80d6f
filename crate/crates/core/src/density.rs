//! Conceptual density of a concept given its hierarchy statistics and the
//! number of marks that fall inside its subhierarchy.
//!
//! Mark counts may be fractional (fractional sense weighting). Sums over
//! `i < m` then take `floor(m)` whole terms plus `m - floor(m)` of the next
//! term, which keeps every formula continuous and nondecreasing in `m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::ConceptStats;

pub const DEFAULT_ALPHA: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaKind {
    /// Agirre-Rigau with the `i^alpha` exponent.
    Sar,
    /// Agirre-Rigau with `alpha = 1`.
    Ar,
    /// Marks over subhierarchy size.
    Sdf,
    /// Agirre-Rigau numerator scaled by depth over subhierarchy size.
    Lf,
}

impl FormulaKind {
    pub fn name(self) -> &'static str {
        match self {
            FormulaKind::Sar => "sar",
            FormulaKind::Ar => "ar",
            FormulaKind::Sdf => "sdf",
            FormulaKind::Lf => "lf",
        }
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sar" => Ok(FormulaKind::Sar),
            "ar" => Ok(FormulaKind::Ar),
            "sdf" => Ok(FormulaKind::Sdf),
            "lf" => Ok(FormulaKind::Lf),
            other => Err(format!("unknown density formula `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula")]
pub struct DensityFormula {
    kind: FormulaKind,
    alpha: f64,
}

#[derive(Deserialize)]
struct RawFormula {
    kind: FormulaKind,
    alpha: f64,
}

impl TryFrom<RawFormula> for DensityFormula {
    type Error = String;

    fn try_from(raw: RawFormula) -> Result<Self, Self::Error> {
        DensityFormula::new(raw.kind, raw.alpha)
    }
}

impl DensityFormula {
    /// `alpha` must be finite and positive; it only affects [`FormulaKind::Sar`].
    pub fn new(kind: FormulaKind, alpha: f64) -> Result<Self, String> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(format!("alpha must be positive, got {alpha}"));
        }
        // only SAR reads the exponent
        let alpha = match kind {
            FormulaKind::Sar => alpha,
            FormulaKind::Ar => 1.0,
            FormulaKind::Sdf | FormulaKind::Lf => DEFAULT_ALPHA,
        };
        Ok(DensityFormula { kind, alpha })
    }

    pub fn sar(alpha: f64) -> Result<Self, String> {
        Self::new(FormulaKind::Sar, alpha)
    }

    pub fn ar() -> Self {
        DensityFormula {
            kind: FormulaKind::Ar,
            alpha: 1.0,
        }
    }

    pub fn sdf() -> Self {
        DensityFormula {
            kind: FormulaKind::Sdf,
            alpha: DEFAULT_ALPHA,
        }
    }

    pub fn lf() -> Self {
        DensityFormula {
            kind: FormulaKind::Lf,
            alpha: DEFAULT_ALPHA,
        }
    }

    pub fn kind(&self) -> FormulaKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The exponent applied to `i` in the numerator terms.
    fn exponent(&self) -> f64 {
        match self.kind {
            FormulaKind::Sar => self.alpha,
            _ => 1.0,
        }
    }
}

impl Default for DensityFormula {
    fn default() -> Self {
        DensityFormula::ar()
    }
}

/// `sum_{i < m} term(i)` with linear interpolation of the last term.
fn interpolated_sum(m: f64, term: impl Fn(u32) -> f64) -> f64 {
    let whole = m.floor();
    let frac = m - whole;
    let whole = whole as u32;
    let mut sum: f64 = (0..whole).map(&term).sum();
    if frac > 0.0 {
        sum += frac * term(whole);
    }
    sum
}

/// Same term arithmetic as the numerator, so `m = h` under AR is exactly 1.
fn geometric_sum(base: f64, terms: u32) -> f64 {
    (0..terms).map(|i| base.powf(f64::from(i))).sum()
}

pub fn conceptual_density(formula: &DensityFormula, stats: &ConceptStats, marks: f64) -> f64 {
    // also catches NaN
    if marks.is_nan() || marks <= 0.0 {
        return 0.0;
    }
    let adesc = stats.mean_branching;
    let desc = f64::from(stats.descendants);
    match formula.kind {
        FormulaKind::Sar | FormulaKind::Ar => {
            let exponent = formula.exponent();
            let num = interpolated_sum(marks, |i| {
                // i^alpha is taken as 0 at i = 0
                let e = if i == 0 {
                    0.0
                } else {
                    f64::from(i).powf(exponent)
                };
                adesc.powf(e)
            });
            num / geometric_sum(adesc, stats.height)
        }
        FormulaKind::Sdf => marks / desc,
        FormulaKind::Lf => {
            let num = interpolated_sum(marks, |i| adesc.powi(i as i32));
            num * f64::from(stats.depth + 1).log2() / desc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(adesc: f64, height: u32, depth: u32, descendants: u32) -> ConceptStats {
        ConceptStats {
            descendants,
            height,
            depth,
            mean_branching: adesc,
        }
    }

    #[test]
    fn sdf_is_a_ratio() {
        assert_eq!(
            conceptual_density(&DensityFormula::sdf(), &stats(1.0, 3, 1, 4), 2.0),
            0.5
        );
    }

    #[test]
    fn zero_marks_give_zero() {
        let s = stats(2.0, 3, 2, 7);
        for f in [
            DensityFormula::ar(),
            DensityFormula::sar(0.2).unwrap(),
            DensityFormula::sdf(),
            DensityFormula::lf(),
        ] {
            assert_eq!(conceptual_density(&f, &s, 0.0), 0.0);
        }
    }

    #[test]
    fn worked_sar_example() {
        // (2^0 + 2^1 + 2^(2^0.2)) / (1 + 2 + 4)
        let expected = (1.0 + 2.0 + 2f64.powf(2f64.powf(0.2))) / 7.0;
        let got = conceptual_density(
            &DensityFormula::sar(0.2).unwrap(),
            &stats(2.0, 3, 1, 7),
            3.0,
        );
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.7453).abs() < 1e-4, "{got}");
    }

    #[test]
    fn ar_saturates_when_marks_equal_height() {
        let got = conceptual_density(&DensityFormula::ar(), &stats(2.0, 3, 1, 7), 3.0);
        assert_eq!(got, 1.0);
    }

    #[test]
    fn lf_uses_shifted_depth() {
        // depth 1 -> log2(2) = 1
        let got = conceptual_density(&DensityFormula::lf(), &stats(1.0, 1, 1, 1), 1.0);
        assert_eq!(got, 1.0);
        let got = conceptual_density(&DensityFormula::lf(), &stats(1.0, 1, 3, 2), 1.0);
        assert_eq!(got, 1.0);
    }

    #[test]
    fn fractional_marks_interpolate() {
        let f = DensityFormula::ar();
        let s = stats(2.0, 3, 1, 7);
        let lo = conceptual_density(&f, &s, 2.0);
        let hi = conceptual_density(&f, &s, 3.0);
        let mid = conceptual_density(&f, &s, 2.5);
        assert!((mid - (lo + hi) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_is_validated() {
        assert!(DensityFormula::sar(0.0).is_err());
        assert!(DensityFormula::sar(-1.0).is_err());
        assert!(DensityFormula::sar(f64::NAN).is_err());
    }
}
