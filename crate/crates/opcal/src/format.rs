//! Text, JSON and CSV renderings. Rationals are written as `num/den`
//! (denominator omitted when 1) unless a decimal display is requested.

use std::io::Write;

use opcal_core::algebra::to_decimal;
use opcal_core::regions::{OmegaCell, Polygon2D};
use opcal_core::risk::{OmegaStatus, RiskReport};
use opcal_core::witness::WitnessRecord;
use opcal_core::{OrderedPartition, Rational};
use serde::Serialize;

/// How rationals are shown. Comparisons never go through this.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Style {
    pub decimal: Option<usize>,
}

impl Style {
    pub fn exact() -> Self {
        Style { decimal: None }
    }

    pub fn num(&self, x: &Rational) -> String {
        match self.decimal {
            Some(d) => to_decimal(x, d),
            None => x.to_string(),
        }
    }

    pub fn vector(&self, xs: &[Rational]) -> String {
        xs.iter().map(|x| self.num(x)).collect::<Vec<_>>().join(",")
    }
}

pub fn int_vector(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerateRecord {
    pub blocks: Vec<Vec<usize>>,
    pub embed: Vec<i64>,
}

impl EnumerateRecord {
    pub fn new(s: &OrderedPartition) -> Self {
        EnumerateRecord {
            blocks: s.one_based_blocks(),
            embed: opcal_core::partition::embed(s),
        }
    }
}

pub fn enumerate_json(partitions: &[OrderedPartition]) -> serde_json::Result<String> {
    let records: Vec<EnumerateRecord> = partitions.iter().map(EnumerateRecord::new).collect();
    serde_json::to_string(&records)
}

pub fn risk_report(report: &RiskReport, style: Style) -> String {
    let mins: Vec<String> = report.minimizers.iter().map(ToString::to_string).collect();
    format!(
        "value: {}\nminimizers: {}\nunique: {}\n",
        style.num(&report.value),
        mins.join(" "),
        report.unique
    )
}

/// `region,label,vx,vy`, one row per vertex.
pub fn regions_csv<W: Write>(out: W, polygons: &[Polygon2D], style: Style) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["region", "label", "vx", "vy"])?;
    for (i, poly) in polygons.iter().enumerate() {
        let label = poly.label.to_string();
        for (x, y) in &poly.vertices {
            w.write_record([(i + 1).to_string(), label.clone(), style.num(x), style.num(y)])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn status_name(s: OmegaStatus) -> &'static str {
    match s {
        OmegaStatus::TiedArgmax => "tied_argmax",
        OmegaStatus::Inside => "inside",
        OmegaStatus::TiedOptimum => "tied_optimum",
        OmegaStatus::Outside => "outside",
    }
}

/// `p2,p3,in_omega_ww,in_omega_cs` followed by the boundary flag, the
/// detailed WW status and the two-label-top union.
pub fn omega_csv<W: Write>(out: W, cells: &[OmegaCell], style: Style) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "p2",
        "p3",
        "in_omega_ww",
        "in_omega_cs",
        "boundary",
        "ww_status",
        "two_label_top",
    ])?;
    for c in cells {
        w.write_record([
            style.num(&c.p2),
            style.num(&c.p3),
            c.in_omega_ww().to_string(),
            c.cs.to_string(),
            c.boundary.to_string(),
            status_name(c.ww).to_string(),
            c.two_label_top.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Counts comparing the computed `Ω_WW` with the two-label-top union.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OmegaSummary {
    pub points: usize,
    pub ww: usize,
    pub cs: usize,
    pub boundary: usize,
    pub two_label_top: usize,
    /// Non-boundary points where the two readings disagree.
    pub disagreements: usize,
}

impl OmegaSummary {
    pub fn new(cells: &[OmegaCell]) -> Self {
        let mut s = OmegaSummary {
            points: cells.len(),
            ..Default::default()
        };
        for c in cells {
            s.ww += usize::from(c.in_omega_ww());
            s.cs += usize::from(c.cs);
            s.boundary += usize::from(c.boundary);
            s.two_label_top += usize::from(c.two_label_top);
            if !c.boundary && c.in_omega_ww() != c.two_label_top {
                s.disagreements += 1;
            }
        }
        s
    }
}

impl std::fmt::Display for OmegaSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "points={} omega_ww={} omega_cs={} boundary={} two_label_top={} ww_vs_two_label_top_disagreements={}",
            self.points, self.ww, self.cs, self.boundary, self.two_label_top, self.disagreements
        )
    }
}

pub fn witness_header() -> [&'static str; 3] {
    ["partition", "p", "margin"]
}

pub fn witness_row(r: &WitnessRecord) -> [String; 3] {
    let style = Style::exact();
    [
        r.partition.to_string(),
        style.vector(r.witness.entries()),
        style.num(&r.margin),
    ]
}
