//! Deterministic SVG output.
//!
//! Element order is fixed: guidelines, boundary circles, spokes or dividers,
//! highlight halos, colored runs (by set, then run), legend. Colored runs are
//! the only `path` elements with `class="run"`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{polar, Geometry, HitTarget, HoopGeometry, LinearGeometry, Point};

const GUIDE_COLOR: &str = "#c8c8c8";
const INK: &str = "#000000";
const HALO_OPACITY: &str = "0.35";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Emphasis {
    DimOthers,
    Outline,
}

/// What is highlighted and how. `emphasis` is `None` exactly when nothing
/// is targeted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighlightState {
    pub target: HitTarget,
    pub emphasis: Option<Emphasis>,
}

impl Default for HighlightState {
    fn default() -> Self {
        Self::none()
    }
}

impl HighlightState {
    pub fn none() -> Self {
        HighlightState {
            target: HitTarget::None,
            emphasis: None,
        }
    }

    pub fn new(target: HitTarget, emphasis: Emphasis) -> Self {
        match target {
            HitTarget::None => Self::none(),
            _ => HighlightState {
                target,
                emphasis: Some(emphasis),
            },
        }
    }
}

/// Color of the set at `alphabetical_position`. Colors follow the
/// alphabetical order of names, so reordering sets never recolors them.
pub fn color_for_set(alphabetical_position: usize, palette: &[String]) -> Result<&str> {
    palette
        .get(alphabetical_position)
        .map(String::as_str)
        .ok_or(Error::PaletteExhausted {
            sets: alphabetical_position + 1,
            palette: palette.len(),
        })
}

/// Formats a coordinate with at most three decimals and no negative zero.
fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    let r = if r == 0.0 { 0.0 } else { r };
    let s = format!("{r:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn pt(p: Point) -> String {
    format!("{} {}", num(p.x), num(p.y))
}

pub fn render_svg(geometry: &Geometry, highlight: &HighlightState) -> String {
    match geometry {
        Geometry::Hoop(g) => render_hoop(g, highlight),
        Geometry::Linear(g) => render_linear(g, highlight),
    }
}

fn header(out: &mut String, bbox: crate::geometry::BoundingBox, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(bbox.x),
        num(bbox.y),
        num(bbox.width),
        num(bbox.height),
        num(bbox.width),
        num(bbox.height)
    );
    let _ = writeln!(out, "<title>{title}</title>");
}

/// Whether a run over `[start, start+len)` covers display `position`.
fn covers(start: usize, len: usize, position: usize, m: usize, cyclic: bool) -> bool {
    if cyclic {
        (position + m - start) % m < len
    } else {
        position >= start && position < start + len
    }
}

/// Opacity attribute for a run under the active highlight.
fn run_opacity(
    highlight: &HighlightState,
    set: usize,
    covers_zone: impl Fn(usize) -> bool,
) -> &'static str {
    if highlight.emphasis != Some(Emphasis::DimOthers) {
        return "";
    }
    let lit = match highlight.target {
        HitTarget::Set(s) => s == set,
        HitTarget::Zone(z) => covers_zone(z),
        HitTarget::None => true,
    };
    if lit {
        ""
    } else {
        r#" opacity="0.2""#
    }
}

fn arc_path(center: Point, radius: f64, start_deg: f64, end_deg: f64) -> String {
    let span = end_deg - start_deg;
    let r = num(radius);
    if span >= 360.0 - 1e-9 {
        let a = polar(center, radius, start_deg);
        let b = polar(center, radius, start_deg + 180.0);
        return format!(
            "M {} A {r} {r} 0 1 1 {} A {r} {r} 0 1 1 {}",
            pt(a),
            pt(b),
            pt(a)
        );
    }
    let large = if span > 180.0 { 1 } else { 0 };
    format!(
        "M {} A {r} {r} 0 {large} 1 {}",
        pt(polar(center, radius, start_deg)),
        pt(polar(center, radius, end_deg))
    )
}

fn render_hoop(g: &HoopGeometry, highlight: &HighlightState) -> String {
    let mut out = String::new();
    header(&mut out, g.bbox, "Hoop diagram");
    let c = g.center;
    let m = g.sectors.len();
    let zone_position = |zone: usize| g.sectors.iter().position(|s| s.zone == zone);

    let _ = writeln!(
        out,
        r#"<g class="guidelines" fill="none" stroke="{GUIDE_COLOR}" stroke-width="{}">"#,
        num(g.guideline_stroke_width)
    );
    for &r in &g.guideline_radii {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            num(c.x),
            num(c.y),
            num(r)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<g class="boundary" fill="none" stroke="{INK}" stroke-width="{}">"#,
        num(g.guideline_stroke_width * 1.5)
    );
    for r in [g.outer_radius, g.inner_radius] {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            num(c.x),
            num(c.y),
            num(r)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<g class="spokes" stroke="{INK}" stroke-width="{}">"#,
        num(g.guideline_stroke_width)
    );
    for s in &g.spokes {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(s.from.x),
            num(s.from.y),
            num(s.to.x),
            num(s.to.y)
        );
    }
    out.push_str("</g>\n");

    if highlight.emphasis == Some(Emphasis::Outline) {
        let _ = writeln!(
            out,
            r#"<g class="halo" fill="none" stroke-opacity="{HALO_OPACITY}" stroke-width="{}">"#,
            num(g.set_stroke_width + 6.0)
        );
        match highlight.target {
            HitTarget::Set(set) => {
                for a in g.arcs.iter().filter(|a| a.set == set) {
                    let _ = writeln!(
                        out,
                        r#"<path class="halo" stroke="{}" d="{}"/>"#,
                        a.color,
                        arc_path(c, a.radius, a.start_deg, a.end_deg)
                    );
                }
            }
            HitTarget::Zone(zone) => {
                if let Some(p) = zone_position(zone) {
                    let s = &g.sectors[p];
                    for deg in [s.start_deg, s.end_deg] {
                        let a = polar(c, g.inner_radius, deg);
                        let b = polar(c, g.outer_radius, deg);
                        let _ = writeln!(
                            out,
                            r#"<line class="halo" stroke="{INK}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                            num(a.x),
                            num(a.y),
                            num(b.x),
                            num(b.y)
                        );
                    }
                }
            }
            HitTarget::None => {}
        }
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        r#"<g class="runs" fill="none" stroke-width="{}">"#,
        num(g.set_stroke_width)
    );
    for a in &g.arcs {
        let opacity = run_opacity(highlight, a.set, |zone| {
            zone_position(zone).is_some_and(|p| covers(a.start_position, a.length, p, m, true))
        });
        let _ = writeln!(
            out,
            r#"<path class="run" data-set="{}" data-start="{}" data-length="{}" stroke="{}"{opacity} d="{}"/>"#,
            a.set,
            a.start_position,
            a.length,
            a.color,
            arc_path(c, a.radius, a.start_deg, a.end_deg)
        );
    }
    out.push_str("</g>\n");

    legend(
        &mut out,
        &g.legend,
        g.label_font_size,
        g.set_stroke_width,
        true,
    );
    out.push_str("</svg>\n");
    out
}

fn legend(
    out: &mut String,
    entries: &[crate::geometry::LegendEntry],
    font: f64,
    stroke: f64,
    swatches: bool,
) {
    let anchor = if swatches { "start" } else { "end" };
    let _ = writeln!(
        out,
        r#"<g class="legend" font-family="sans-serif" font-size="{}" text-anchor="{anchor}" dominant-baseline="middle">"#,
        num(font)
    );
    for e in entries {
        if swatches {
            let _ = writeln!(
                out,
                r#"<line class="swatch" data-set="{}" stroke="{}" stroke-width="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                e.set,
                e.color,
                num(stroke),
                num(e.anchor.x - 20.0),
                num(e.anchor.y),
                num(e.anchor.x - 6.0),
                num(e.anchor.y)
            );
        }
        let _ = writeln!(
            out,
            r#"<text class="label" data-set="{}" fill="{}" x="{}" y="{}">{}</text>"#,
            e.set,
            if swatches { INK } else { e.color.as_str() },
            num(e.anchor.x),
            num(e.anchor.y),
            escape(&e.label)
        );
    }
    out.push_str("</g>\n");
}

fn render_linear(g: &LinearGeometry, highlight: &HighlightState) -> String {
    let mut out = String::new();
    header(&mut out, g.bbox, "Linear diagram");
    let m = g.columns.len();
    let column_position = |zone: usize| g.columns.iter().position(|c| c.zone == zone);
    let line = |out: &mut String, class: &str, a: Point, b: Point| {
        let _ = writeln!(
            out,
            r#"<line{} x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            if class.is_empty() {
                String::new()
            } else {
                format!(r#" class="{class}""#)
            },
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
    };

    let _ = writeln!(
        out,
        r#"<g class="guidelines" stroke="{GUIDE_COLOR}" stroke-width="{}">"#,
        num(g.guideline_stroke_width)
    );
    for l in &g.guidelines {
        line(&mut out, "", l.from, l.to);
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<g class="dividers" stroke="{INK}" stroke-width="{}">"#,
        num(g.guideline_stroke_width)
    );
    for l in &g.dividers {
        line(&mut out, "", l.from, l.to);
    }
    out.push_str("</g>\n");

    if highlight.emphasis == Some(Emphasis::Outline) {
        let _ = writeln!(
            out,
            r#"<g class="halo" fill="none" stroke-opacity="{HALO_OPACITY}" stroke-width="{}">"#,
            num(g.set_stroke_width + 6.0)
        );
        match highlight.target {
            HitTarget::Set(set) => {
                for s in g.segments.iter().filter(|s| s.set == set) {
                    let _ = writeln!(
                        out,
                        r#"<path class="halo" stroke="{}" d="M {} {} H {}"/>"#,
                        s.color,
                        num(s.x_start),
                        num(s.y),
                        num(s.x_end)
                    );
                }
            }
            HitTarget::Zone(zone) => {
                if let Some(p) = column_position(zone) {
                    let (a, b) = (&g.dividers[p], &g.dividers[p + 1]);
                    let _ = writeln!(out, r#"<g stroke="{INK}">"#);
                    line(&mut out, "halo", a.from, a.to);
                    line(&mut out, "halo", b.from, b.to);
                    out.push_str("</g>\n");
                }
            }
            HitTarget::None => {}
        }
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        r#"<g class="runs" fill="none" stroke-width="{}">"#,
        num(g.set_stroke_width)
    );
    for s in &g.segments {
        let opacity = run_opacity(highlight, s.set, |zone| {
            column_position(zone).is_some_and(|p| covers(s.start_position, s.length, p, m, false))
        });
        let _ = writeln!(
            out,
            r#"<path class="run" data-set="{}" data-start="{}" data-length="{}" stroke="{}"{opacity} d="M {} {} H {}"/>"#,
            s.set,
            s.start_position,
            s.length,
            s.color,
            num(s.x_start),
            num(s.y),
            num(s.x_end)
        );
    }
    out.push_str("</g>\n");

    legend(
        &mut out,
        &g.labels,
        g.label_font_size,
        g.set_stroke_width,
        false,
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{layout_hoop, layout_linear, StyleConfig};
    use crate::ordering::{bring_set_to_front, segment_counts, Arrangement, Topology};
    use crate::set_model::SetSystem;

    fn system() -> SetSystem {
        SetSystem::from_named_zones(
            &["Cars", "Dogs", "Food"],
            &[
                &["Cars"],
                &["Dogs", "Food"],
                &["Cars", "Food"],
                &["Dogs"],
                &["Food"],
            ],
        )
        .unwrap()
    }

    fn hoop(s: &SetSystem, a: &Arrangement) -> Geometry {
        Geometry::Hoop(layout_hoop(s, a, &StyleConfig::default()).unwrap())
    }

    #[test]
    fn one_path_per_run() {
        let s = system();
        let a = Arrangement::identity(&s, Topology::Cyclic);
        let svg = render_svg(&hoop(&s, &a), &HighlightState::none());
        let total = segment_counts(&s, &a).unwrap().total;
        assert_eq!(svg.matches(r#"class="run""#).count(), total);
        assert_eq!(svg.matches("<path").count(), total);
        roxmltree::Document::parse(&svg).unwrap();
    }

    #[test]
    fn deterministic_bytes() {
        let s = system();
        let a = Arrangement::identity(&s, Topology::Linear);
        let g = Geometry::Linear(layout_linear(&s, &a, &StyleConfig::default()).unwrap());
        assert_eq!(
            render_svg(&g, &HighlightState::none()),
            render_svg(&g, &HighlightState::none())
        );
    }

    #[test]
    fn dim_others_marks_every_other_run() {
        let s = system();
        let a = Arrangement::identity(&s, Topology::Cyclic);
        let svg = render_svg(
            &hoop(&s, &a),
            &HighlightState::new(HitTarget::Set(0), Emphasis::DimOthers),
        );
        for line in svg.lines().filter(|l| l.contains(r#"class="run""#)) {
            let is_target = line.contains(r#"data-set="0""#);
            assert_eq!(line.contains(r#"opacity="0.2""#), !is_target, "{line}");
        }
    }

    #[test]
    fn zone_highlight_and_outline() {
        let s = system();
        let a = Arrangement::identity(&s, Topology::Linear);
        let g = Geometry::Linear(layout_linear(&s, &a, &StyleConfig::default()).unwrap());
        // Zone 1 is {Dogs, Food}: Cars runs dim, runs through column 1 stay lit.
        let svg = render_svg(
            &g,
            &HighlightState::new(HitTarget::Zone(1), Emphasis::DimOthers),
        );
        let dimmed = svg.matches(r#"opacity="0.2""#).count();
        assert_eq!(dimmed, svg.matches(r#"class="run""#).count() - 2);
        let outline = render_svg(
            &g,
            &HighlightState::new(HitTarget::Set(2), Emphasis::Outline),
        );
        roxmltree::Document::parse(&outline).unwrap();
        assert!(outline.contains(r#"class="halo""#));
        assert_eq!(
            outline.matches(r#"class="run""#).count(),
            svg.matches(r#"class="run""#).count()
        );
    }

    #[test]
    fn colors_by_alphabetical_position() {
        let palette: Vec<String> = ["#111111", "#222222"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(color_for_set(0, &palette).unwrap(), "#111111");
        assert!(matches!(
            color_for_set(2, &palette),
            Err(Error::PaletteExhausted { .. })
        ));
        let sixteen = StyleConfig::default().palette;
        assert!(color_for_set(16, &sixteen).is_err());
    }

    #[test]
    fn bring_to_front_keeps_colors() {
        let s = system();
        let a = Arrangement::identity(&s, Topology::Cyclic);
        let b = bring_set_to_front(&a, 2).unwrap();
        let ga = layout_hoop(&s, &a, &StyleConfig::default()).unwrap();
        let gb = layout_hoop(&s, &b, &StyleConfig::default()).unwrap();
        for set in 0..3 {
            let ca: Vec<_> = ga
                .arcs
                .iter()
                .filter(|x| x.set == set)
                .map(|x| &x.color)
                .collect();
            let cb: Vec<_> = gb
                .arcs
                .iter()
                .filter(|x| x.set == set)
                .map(|x| &x.color)
                .collect();
            assert_eq!(ca, cb);
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0001), "0");
        assert_eq!(num(2.5), "2.5");
        assert_eq!(num(1.23456), "1.235");
        assert_eq!(escape("a<b&\"c\""), "a&lt;b&amp;&quot;c&quot;");
    }
}
