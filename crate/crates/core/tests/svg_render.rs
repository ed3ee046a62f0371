//! Rendering checks that parse the emitted SVG back and measure it.

use growthcurve::io::plot::{emit_plot, Overlay, PlotScale};
use growthcurve::{detect_crossover, Baseline, ExponentialModel, TimeSeries};

fn exponential_delta() -> growthcurve::DeltaSeries {
    let baseline = Baseline::explicit(1948, 4.0).unwrap();
    let points: Vec<(i32, f64)> = (2..=40)
        .map(|dy| (1948 + dy, 4.0 + 1.9 * (0.035 * dy as f64).exp()))
        .collect();
    TimeSeries::new("t", "u", points)
        .unwrap()
        .to_delta(baseline)
}

fn two_regime_delta() -> growthcurve::DeltaSeries {
    let baseline = Baseline::explicit(1948, 4.0).unwrap();
    let v_at = |dy: f64| 2.25 * (0.09 * dy).exp();
    let at_break = v_at(25.0);
    let points: Vec<(i32, f64)> = (1950..=2014)
        .map(|year| {
            let dy = (year - 1948) as f64;
            let dv = if year <= 1973 {
                v_at(dy)
            } else {
                at_break * (0.035 * (dy - 25.0)).exp()
            };
            (year, 4.0 + dv)
        })
        .collect();
    TimeSeries::new("t", "u", points)
        .unwrap()
        .to_delta(baseline)
}

fn circles(doc: &roxmltree::Document) -> Vec<(f64, f64)> {
    doc.descendants()
        .filter(|node| node.has_tag_name("circle"))
        .map(|node| {
            (
                node.attribute("cx").unwrap().parse().unwrap(),
                node.attribute("cy").unwrap().parse().unwrap(),
            )
        })
        .collect()
}

fn polylines(doc: &roxmltree::Document) -> Vec<Vec<(f64, f64)>> {
    doc.descendants()
        .filter(|node| node.has_tag_name("polyline"))
        .map(|node| {
            node.attribute("points")
                .unwrap()
                .split_whitespace()
                .map(|pair| {
                    let (x, y) = pair.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

/// Linear interpolation of a polyline at a given x.
fn interpolate(polyline: &[(f64, f64)], x: f64) -> Option<f64> {
    for pair in polyline.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        if (x0..=x1).contains(&x) && x1 > x0 {
            return Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
        }
    }
    None
}

#[test]
fn document_is_well_formed_svg_11() {
    for scale in [PlotScale::Linear, PlotScale::SemiLog, PlotScale::LogLog] {
        let plot = emit_plot(&exponential_delta(), &[], scale).unwrap();
        let doc = roxmltree::Document::parse(&plot.svg).expect("well-formed XML");
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(
            root.tag_name().namespace(),
            Some("http://www.w3.org/2000/svg")
        );
        assert_eq!(root.attribute("version"), Some("1.1"));
        assert_eq!(root.attribute("width"), Some("800"));
        assert_eq!(root.attribute("height"), Some("600"));
    }
}

#[test]
fn overlay_passes_through_every_marker_on_semi_log() {
    let delta = exponential_delta();
    let model = ExponentialModel::fit(&delta).unwrap();
    let plot = emit_plot(&delta, &[Overlay::Exponential(model)], PlotScale::SemiLog).unwrap();
    let doc = roxmltree::Document::parse(&plot.svg).unwrap();
    let markers = circles(&doc);
    let lines = polylines(&doc);
    assert_eq!(lines.len(), 1);
    assert_eq!(markers.len(), delta.len());
    for &(cx, cy) in &markers {
        let fitted = interpolate(&lines[0], cx).expect("marker inside overlay x-range");
        assert!(
            (fitted - cy).abs() < 0.5,
            "overlay misses marker at x={cx}: {fitted} vs {cy}"
        );
    }
}

#[test]
fn regime_overlay_polylines_meet_near_the_crossover() {
    let delta = two_regime_delta();
    let split = detect_crossover(&delta, 4, 0.5).unwrap();
    let plot = emit_plot(&delta, &[Overlay::Regime(split)], PlotScale::SemiLog).unwrap();
    let doc = roxmltree::Document::parse(&plot.svg).unwrap();
    let lines = polylines(&doc);
    assert_eq!(lines.len(), 2);

    // The left polyline ends where the right one starts (the crossover),
    // and the two fitted values agree there because the series is
    // continuous at the breakpoint.
    let left_end = *lines[0].last().unwrap();
    let right_start = lines[1][0];
    assert!((left_end.0 - right_start.0).abs() < 0.01);
    assert!(
        (left_end.1 - right_start.1).abs() < 2.0,
        "polylines apart by {} px at the crossover",
        (left_end.1 - right_start.1).abs()
    );

    // The crossover data point itself sits on the joint.
    let markers = circles(&doc);
    let nearest = markers
        .iter()
        .min_by(|a, b| {
            (a.0 - left_end.0)
                .abs()
                .partial_cmp(&(b.0 - left_end.0).abs())
                .unwrap()
        })
        .unwrap();
    assert!((nearest.1 - left_end.1).abs() < 3.0);
}

#[test]
fn excluded_points_are_reported_not_drawn() {
    let baseline = Baseline::explicit(2000, 3.0).unwrap();
    // First point has delta_value 0 and delta_year 0.
    let points = vec![(2000, 3.0), (2001, 5.0), (2002, 9.0), (2003, 17.0)];
    let delta = TimeSeries::new("t", "u", points)
        .unwrap()
        .to_delta(baseline);
    let plot = emit_plot(&delta, &[], PlotScale::LogLog).unwrap();
    assert_eq!(plot.excluded, vec![0]);
    let doc = roxmltree::Document::parse(&plot.svg).unwrap();
    assert_eq!(circles(&doc).len(), 3);
}
