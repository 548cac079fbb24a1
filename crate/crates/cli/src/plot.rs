//! Mean ratio per x value and algorithm, with the concrete bound overlaid.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, Result};
use plotters::prelude::*;

use hitset::harness::TrialReport;

#[derive(Clone, Copy)]
pub enum XAxis {
    MaxSize,
    Points,
}

impl XAxis {
    pub fn label(self) -> &'static str {
        match self {
            XAxis::MaxSize => "M",
            XAxis::Points => "n",
        }
    }

    fn of(self, r: &TrialReport) -> Option<f64> {
        match self {
            XAxis::MaxSize => Some(r.max_size),
            XAxis::Points => r.n.map(|n| n as f64),
        }
    }
}

pub struct Series {
    pub label: String,
    pub bound: bool,
    pub points: Vec<(f64, f64)>,
}

fn means(groups: BTreeMap<u64, (f64, f64, usize)>) -> Vec<(f64, f64)> {
    groups
        .into_values()
        .map(|(x, sum, n)| (x, sum / n as f64))
        .collect()
}

/// One ratio series per algorithm, plus a bound series where bounds exist.
/// Only positive x and y values are kept since both axes are logarithmic.
pub fn collect(reports: &[TrialReport], axis: XAxis) -> Vec<Series> {
    type Groups = BTreeMap<u64, (f64, f64, usize)>;
    let mut by_algo: BTreeMap<&str, (Groups, Groups)> = BTreeMap::new();
    let add = |g: &mut Groups, x: f64, y: f64| {
        let e = g.entry(x.to_bits()).or_insert((x, 0.0, 0));
        e.1 += y;
        e.2 += 1;
    };
    for r in reports {
        let (Some(x), Some(ratio)) = (axis.of(r), r.ratio) else {
            continue;
        };
        if x <= 0.0 || ratio <= 0.0 {
            continue;
        }
        let (ratios, bounds) = by_algo.entry(r.algo.name()).or_default();
        add(ratios, x, ratio);
        if let Some(b) = r.bound.filter(|b| b.is_finite() && *b > 0.0) {
            add(bounds, x, b);
        }
    }
    let mut out = Vec::new();
    for (algo, (ratios, bounds)) in by_algo {
        out.push(Series {
            label: format!("{algo} ratio"),
            bound: false,
            points: means(ratios),
        });
        if !bounds.is_empty() {
            out.push(Series {
                label: format!("{algo} bound"),
                bound: true,
                points: means(bounds),
            });
        }
    }
    out
}

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    // pad so single points and flat series still get a visible range
    (lo / 1.5, hi * 1.5)
}

pub fn draw(path: &Path, axis: XAxis, series: &[Series]) -> Result<()> {
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x0, x1) = span(all().map(|p| p.0));
    let (y0, y1) = span(all().map(|p| p.1));
    let err = |e: &dyn std::fmt::Display| anyhow!("drawing {}: {e}", path.display());

    let root = SVGBackend::new(path, (800, 560)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| err(&e))?;
    let mut chart = ChartBuilder::on(&root)
        .caption(
            format!("competitive ratio vs {}", axis.label()),
            ("sans-serif", 22),
        )
        .margin(16)
        .x_label_area_size(40)
        .y_label_area_size(56)
        .build_cartesian_2d((x0..x1).log_scale(), (y0..y1).log_scale())
        .map_err(|e| err(&e))?;
    chart
        .configure_mesh()
        .x_desc(axis.label())
        .y_desc("cost / OPT")
        .draw()
        .map_err(|e| err(&e))?;

    // a bound shares its algorithm's color and follows its ratio series
    let mut algo = 0;
    for s in series {
        if !s.bound {
            algo += 1;
        }
        let color = Palette99::pick(algo - 1).to_rgba();
        let style = color.stroke_width(if s.bound { 1 } else { 2 });
        let anno = if s.bound {
            chart
                .draw_series(DashedLineSeries::new(s.points.iter().copied(), 6, 4, style))
                .map_err(|e| err(&e))?
        } else {
            chart
                .draw_series(LineSeries::new(s.points.iter().copied(), style))
                .map_err(|e| err(&e))?;
            chart
                .draw_series(s.points.iter().map(|&p| Circle::new(p, 3, color.filled())))
                .map_err(|e| err(&e))?
        };
        anno.label(s.label.clone())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], style));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .draw()
        .map_err(|e| err(&e))?;
    root.present().map_err(|e| err(&e))?;
    Ok(())
}
