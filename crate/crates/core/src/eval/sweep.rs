//! One-axis-at-a-time parameter sweeps around a base configuration.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::report::fixed;
use super::{evaluate, ConceptDensity, CorpusItem};
use crate::density::{DensityFormula, FormulaKind, DEFAULT_ALPHA};
use crate::disambiguator::WsdConfig;
use crate::lexicon::{RelationSet, SemanticNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Relations,
    Window,
    Formula,
    TopCut,
    ChainLimit,
    Weighting,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 6] = [
        SweepAxis::Relations,
        SweepAxis::Window,
        SweepAxis::Formula,
        SweepAxis::TopCut,
        SweepAxis::ChainLimit,
        SweepAxis::Weighting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Relations => "relations",
            SweepAxis::Window => "window",
            SweepAxis::Formula => "formula",
            SweepAxis::TopCut => "top-cut",
            SweepAxis::ChainLimit => "chain-limit",
            SweepAxis::Weighting => "weighting",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| SweepError::UnknownAxis(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),
    #[error("no values given for axis {0}")]
    NoValues(SweepAxis),
    #[error("bad value `{value}` for axis {axis}: {msg}")]
    BadValue {
        axis: SweepAxis,
        value: String,
        msg: String,
    },
}

/// The base configuration with `axis` set to each of `values`, labelled
/// `axis=value`.
pub fn axis_configs(
    base: &WsdConfig,
    axis: SweepAxis,
    values: &[String],
) -> Result<Vec<(String, WsdConfig)>, SweepError> {
    if values.is_empty() {
        return Err(SweepError::NoValues(axis));
    }
    values
        .iter()
        .map(|raw| {
            let bad = |msg: String| SweepError::BadValue {
                axis,
                value: raw.clone(),
                msg,
            };
            let mut cfg = base.clone();
            let shown = match axis {
                SweepAxis::Relations => {
                    cfg.relations = raw.parse::<RelationSet>().map_err(bad)?;
                    cfg.relations.to_string()
                }
                SweepAxis::Window => {
                    cfg.window_radius = raw.trim().parse().map_err(|e| bad(format!("{e}")))?;
                    cfg.window_radius.to_string()
                }
                SweepAxis::Formula => {
                    let kind: FormulaKind = raw.parse().map_err(bad)?;
                    // SAR keeps the base exponent only when the base is SAR itself
                    let alpha = match base.formula.kind() {
                        FormulaKind::Sar => base.formula.alpha(),
                        _ => DEFAULT_ALPHA,
                    };
                    cfg.formula = DensityFormula::new(kind, alpha).map_err(bad)?;
                    match kind {
                        FormulaKind::Sar => format!("sar(alpha={})", cfg.formula.alpha()),
                        k => k.to_string(),
                    }
                }
                SweepAxis::TopCut => {
                    cfg.top_cut = raw.trim().parse().map_err(|e| bad(format!("{e}")))?;
                    cfg.top_cut.to_string()
                }
                SweepAxis::ChainLimit => {
                    cfg.chain_limit = raw.trim().parse().map_err(|e| bad(format!("{e}")))?;
                    cfg.chain_limit.to_string()
                }
                SweepAxis::Weighting => {
                    cfg.weighting = raw.parse().map_err(bad)?;
                    cfg.weighting.to_string()
                }
            };
            Ok((format!("{}={shown}", axis.name()), cfg))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub label: String,
    pub config: WsdConfig,
    pub recall: f64,
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// `config,recall,coverage`, rows in the order the values were given.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["config", "recall", "coverage"])?;
        for r in &self.rows {
            out.write_record([r.label.clone(), fixed(r.recall), fixed(r.coverage)])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Row with the highest recall; the first one wins ties.
    pub fn best(&self) -> Option<&SweepRow> {
        self.rows
            .iter()
            .fold(None, |best: Option<&SweepRow>, r| match best {
                Some(b) if b.recall >= r.recall => Some(b),
                _ => Some(r),
            })
    }
}

/// Evaluates the density system once per value of `axis`.
pub fn sweep(
    corpus: &[CorpusItem],
    net: &SemanticNetwork,
    base: &WsdConfig,
    axis: SweepAxis,
    values: &[String],
) -> Result<SweepReport, SweepError> {
    let configs = axis_configs(base, axis, values)?;
    for (label, cfg) in &configs {
        cfg.validate().map_err(|e| SweepError::BadValue {
            axis,
            value: label.clone(),
            msg: e.to_string(),
        })?;
    }
    let rows = configs
        .into_iter()
        .map(|(label, config)| {
            let report = evaluate(corpus, &ConceptDensity(config.clone()), net);
            SweepRow {
                label,
                config,
                recall: report.recall,
                coverage: report.coverage,
            }
        })
        .collect();
    Ok(SweepReport { axis, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn axis_names_round_trip() {
        for a in SweepAxis::ALL {
            assert_eq!(a.name().parse::<SweepAxis>().unwrap(), a);
        }
        assert!("colour".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn configs_vary_only_the_axis() {
        let base = WsdConfig::default();
        let cfgs = axis_configs(&base, SweepAxis::Window, &vals(&["1", "5", "25"])).unwrap();
        assert_eq!(cfgs.len(), 3);
        assert_eq!(cfgs[1].0, "window=5");
        assert_eq!(
            cfgs[1].1,
            WsdConfig {
                window_radius: 5,
                ..base.clone()
            }
        );
        let cfgs = axis_configs(&base, SweepAxis::Relations, &vals(&["hypernym+meronym"])).unwrap();
        assert_eq!(cfgs[0].0, "relations=hypernym+meronym");
    }

    #[test]
    fn sar_uses_the_default_exponent_unless_the_base_is_sar() {
        let cfgs =
            axis_configs(&WsdConfig::default(), SweepAxis::Formula, &vals(&["sar"])).unwrap();
        assert_eq!(cfgs[0].0, "formula=sar(alpha=0.2)");
        let base = WsdConfig {
            formula: DensityFormula::sar(0.5).unwrap(),
            ..WsdConfig::default()
        };
        let cfgs = axis_configs(&base, SweepAxis::Formula, &vals(&["sar", "ar"])).unwrap();
        assert_eq!(cfgs[0].0, "formula=sar(alpha=0.5)");
        assert_eq!(cfgs[1].1.formula, DensityFormula::ar());
    }

    #[test]
    fn empty_and_bad_values_are_rejected() {
        let base = WsdConfig::default();
        assert_eq!(
            axis_configs(&base, SweepAxis::Formula, &[]),
            Err(SweepError::NoValues(SweepAxis::Formula))
        );
        assert!(axis_configs(&base, SweepAxis::Formula, &vals(&["xx"])).is_err());
        assert!(axis_configs(&base, SweepAxis::TopCut, &vals(&["-1"])).is_err());
    }
}
