//! CSV rendering of evaluation results. UTF-8, comma-separated, one header
//! row, four decimal places.

use std::io::Write;

use super::EvalReport;

pub const CSV_DECIMALS: usize = 4;

pub(crate) fn fixed(x: f64) -> String {
    format!("{x:.CSV_DECIMALS$}")
}

/// One row per report: `system,items,answered,score,recall,coverage,random_recall`.
pub fn write_overall_csv<W: Write>(reports: &[&EvalReport], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "system",
        "items",
        "answered",
        "score",
        "recall",
        "coverage",
        "random_recall",
    ])?;
    for r in reports {
        out.write_record([
            r.system.clone(),
            r.items.to_string(),
            r.answered.to_string(),
            fixed(r.score_sum),
            fixed(r.recall),
            fixed(r.coverage),
            fixed(r.random_recall),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// One row per text category, in category-code order.
pub fn write_category_csv<W: Write>(report: &EvalReport, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "category",
        "name",
        "items",
        "random_recall",
        "system_recall",
        "improvement_pct",
    ])?;
    for c in &report.categories {
        out.write_record([
            c.category.to_string(),
            c.category.name().to_owned(),
            c.items.to_string(),
            fixed(c.random_recall),
            fixed(c.system_recall),
            fixed(c.improvement_pct),
        ])?;
    }
    out.flush()?;
    Ok(())
}
