//! Coordinates for Hoop and Linear diagrams, and pointer hit testing.
//!
//! Angles are in degrees, measured clockwise from 12 o'clock. Sector `j` of
//! a hoop diagram with `m` zones covers `[j·360/m, (j+1)·360/m)`.
//! SVG coordinates: x grows right, y grows down.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::{Arrangement, Topology};
use crate::render::color_for_set;
use crate::set_model::{SetSystem, Zone};

/// Sixteen distinguishable stroke colors.
pub const DEFAULT_PALETTE: [&str; 16] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
    "#800000", "#469990", "#000075", "#808000", "#bfef45", "#dcbeff", "#ffe119", "#fabed4",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleConfig {
    /// Side of the square hoop canvas.
    pub canvas_size: f64,
    pub inner_radius_ratio: f64,
    pub set_stroke_width: f64,
    pub guideline_stroke_width: f64,
    pub palette: Vec<String>,
    pub label_font_size: f64,
    pub linear_column_width: f64,
    pub linear_row_gap: f64,
    /// Width of the label gutter left of the linear diagram's columns.
    pub linear_label_width: f64,
    /// Fraction of the hoop canvas reserved on the left for the legend.
    pub legend_width_ratio: f64,
    pub margin: f64,
    /// Minimum pointer target thickness for lines.
    pub min_hit_band: f64,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig {
            canvas_size: 600.0,
            inner_radius_ratio: 0.30,
            set_stroke_width: 3.0,
            guideline_stroke_width: 1.0,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
            label_font_size: 14.0,
            linear_column_width: 40.0,
            linear_row_gap: 30.0,
            linear_label_width: 120.0,
            legend_width_ratio: 0.22,
            margin: 20.0,
            min_hit_band: 8.0,
        }
    }
}

impl StyleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Topology(format!("invalid style: {what}")));
        if !(self.inner_radius_ratio > 0.0 && self.inner_radius_ratio < 1.0) {
            return bad("inner_radius_ratio must lie in (0, 1)");
        }
        if self.set_stroke_width <= 0.0 || self.guideline_stroke_width <= 0.0 {
            return bad("strokes must be positive");
        }
        if self.canvas_size <= 2.0 * self.margin {
            return bad("canvas too small for its margin");
        }
        if !(0.0..1.0).contains(&self.legend_width_ratio) {
            return bad("legend_width_ratio must lie in [0, 1)");
        }
        for (i, c) in self.palette.iter().enumerate() {
            if self.palette[..i].contains(c) {
                return bad("palette colors must be distinct");
            }
        }
        Ok(())
    }

    fn hit_half_band(&self) -> f64 {
        self.set_stroke_width.max(self.min_hit_band) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl BoundingBox {
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x && p.x <= self.x + self.width && p.y >= self.y && p.y <= self.y + self.height
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.width / self.height
    }
}

/// What a pointer position addresses. Indices are system indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "index", rename_all = "lowercase")]
pub enum HitTarget {
    Set(usize),
    Zone(usize),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendEntry {
    pub set: usize,
    pub label: String,
    pub color: String,
    pub anchor: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub zone: usize,
    pub start_deg: f64,
    pub end_deg: f64,
}

/// One colored hoop arc covering `length` consecutive sectors from
/// `start_position`. `end_deg` exceeds 360 when the arc wraps past 12 o'clock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoopArc {
    pub set: usize,
    pub start_position: usize,
    pub length: usize,
    pub radius: f64,
    pub start_deg: f64,
    pub end_deg: f64,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spoke {
    pub angle_deg: f64,
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoopGeometry {
    pub center: Point,
    pub outer_radius: f64,
    pub inner_radius: f64,
    /// Ring radius of each set, indexed by system set index.
    pub ring_radius: Vec<f64>,
    /// Sectors by display position.
    pub sectors: Vec<Sector>,
    pub arcs: Vec<HoopArc>,
    pub spokes: Vec<Spoke>,
    /// Guideline radii by display position, outermost first.
    pub guideline_radii: Vec<f64>,
    pub legend: Vec<LegendEntry>,
    pub bbox: BoundingBox,
    pub set_stroke_width: f64,
    pub guideline_stroke_width: f64,
    pub label_font_size: f64,
    pub hit_half_band: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSegment {
    pub set: usize,
    pub start_position: usize,
    pub length: usize,
    pub y: f64,
    pub x_start: f64,
    pub x_end: f64,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub zone: usize,
    pub x_start: f64,
    pub x_end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineSpan {
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearGeometry {
    /// Row ordinate of each set, indexed by system set index.
    pub row_y: Vec<f64>,
    /// Columns by display position.
    pub columns: Vec<Column>,
    pub segments: Vec<LinearSegment>,
    pub dividers: Vec<LineSpan>,
    /// Grey guidelines by display position, top first.
    pub guidelines: Vec<LineSpan>,
    /// Row labels by display position, top first.
    pub labels: Vec<LegendEntry>,
    /// Horizontal extent of the columns alone.
    pub body_width: f64,
    pub bbox: BoundingBox,
    pub set_stroke_width: f64,
    pub guideline_stroke_width: f64,
    pub label_font_size: f64,
    pub hit_half_band: f64,
}

/// Either kind of resolved diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Hoop(HoopGeometry),
    Linear(LinearGeometry),
}

impl Geometry {
    pub fn bbox(&self) -> BoundingBox {
        match self {
            Geometry::Hoop(g) => g.bbox,
            Geometry::Linear(g) => g.bbox,
        }
    }

    pub fn hit_test(&self, point: Point) -> HitTarget {
        match self {
            Geometry::Hoop(g) => hit_test_hoop(g, point),
            Geometry::Linear(g) => hit_test_linear(g, point),
        }
    }

    /// Number of colored runs.
    pub fn run_count(&self) -> usize {
        match self {
            Geometry::Hoop(g) => g.arcs.len(),
            Geometry::Linear(g) => g.segments.len(),
        }
    }
}

/// Point at `radius` and clockwise angle `deg` from 12 o'clock.
pub fn polar(center: Point, radius: f64, deg: f64) -> Point {
    let rad = deg.to_radians();
    Point::new(center.x + radius * rad.sin(), center.y - radius * rad.cos())
}

/// Maximal runs `(start_position, length)` of `set` over ordered zones.
fn runs(zones: &[Zone], set: usize, cyclic: bool) -> Vec<(usize, usize)> {
    let m = zones.len();
    if zones.iter().all(|z| z.contains(set)) {
        return vec![(0, m)];
    }
    let mut out = Vec::new();
    for i in 0..m {
        if !zones[i].contains(set) {
            continue;
        }
        let starts = if i == 0 {
            !cyclic || !zones[m - 1].contains(set)
        } else {
            !zones[i - 1].contains(set)
        };
        if !starts {
            continue;
        }
        let mut len = 1;
        while len < m {
            let next = i + len;
            if next >= m && !cyclic {
                break;
            }
            if !zones[next % m].contains(set) {
                break;
            }
            len += 1;
        }
        out.push((i, len));
    }
    out
}

fn legend_entries(
    system: &SetSystem,
    style: &StyleConfig,
    anchors: impl Fn(usize, usize) -> Point,
) -> Result<Vec<LegendEntry>> {
    let ranks = system.alphabetical_ranks();
    let mut order: Vec<usize> = (0..system.num_sets()).collect();
    order.sort_by_key(|&s| ranks[s]);
    order
        .iter()
        .enumerate()
        .map(|(row, &set)| {
            Ok(LegendEntry {
                set,
                label: system.set_names[set].clone(),
                color: color_for_set(ranks[set], &style.palette)?.to_string(),
                anchor: anchors(row, set),
            })
        })
        .collect()
}

fn check_inputs(
    system: &SetSystem,
    arrangement: &Arrangement,
    style: &StyleConfig,
    topology: Topology,
) -> Result<()> {
    arrangement.check(system)?;
    if arrangement.topology != topology {
        return Err(Error::Topology(format!(
            "expected a {topology:?} arrangement, got {:?}",
            arrangement.topology
        )));
    }
    style.validate()?;
    if system.num_sets() > style.palette.len() {
        return Err(Error::PaletteExhausted {
            sets: system.num_sets(),
            palette: style.palette.len(),
        });
    }
    Ok(())
}

pub fn layout_hoop(
    system: &SetSystem,
    arrangement: &Arrangement,
    style: &StyleConfig,
) -> Result<HoopGeometry> {
    check_inputs(system, arrangement, style, Topology::Cyclic)?;
    let n = system.num_sets();
    let m = system.num_zones();
    let size = style.canvas_size;
    let legend_w = size * style.legend_width_ratio;
    let region = size - legend_w;
    let center = Point::new(legend_w + region / 2.0, size / 2.0);
    let outer_radius = region.min(size) / 2.0 - style.margin;
    let inner_radius = outer_radius * style.inner_radius_ratio;
    let step = (outer_radius - inner_radius) / (n as f64 + 1.0);

    let positions = arrangement.set_positions();
    let ring_radius: Vec<f64> = (0..n)
        .map(|s| outer_radius - (positions[s] as f64 + 1.0) * step)
        .collect();
    let guideline_radii = arrangement
        .set_order
        .iter()
        .map(|&s| ring_radius[s])
        .collect();

    let width = 360.0 / m as f64;
    let sectors = arrangement
        .zone_order
        .iter()
        .enumerate()
        .map(|(j, &zone)| Sector {
            zone,
            start_deg: j as f64 * width,
            end_deg: (j + 1) as f64 * width,
        })
        .collect();

    let ranks = system.alphabetical_ranks();
    let zones = arrangement.ordered_zones(system);
    let mut arcs = Vec::new();
    for set in 0..n {
        let color = color_for_set(ranks[set], &style.palette)?;
        for (start, len) in runs(&zones, set, true) {
            arcs.push(HoopArc {
                set,
                start_position: start,
                length: len,
                radius: ring_radius[set],
                start_deg: start as f64 * width,
                end_deg: (start + len) as f64 * width,
                color: color.to_string(),
            });
        }
    }

    let spokes = (0..m)
        .map(|j| {
            let deg = j as f64 * width;
            Spoke {
                angle_deg: deg,
                from: polar(center, inner_radius, deg),
                to: polar(center, outer_radius, deg),
            }
        })
        .collect();

    let line = style.label_font_size * 1.5;
    let legend = legend_entries(system, style, |row, _| {
        Point::new(
            style.margin + 22.0,
            style.margin + line * (row as f64 + 0.5),
        )
    })?;

    Ok(HoopGeometry {
        center,
        outer_radius,
        inner_radius,
        ring_radius,
        sectors,
        arcs,
        spokes,
        guideline_radii,
        legend,
        bbox: BoundingBox {
            x: 0.0,
            y: 0.0,
            width: size,
            height: size,
        },
        set_stroke_width: style.set_stroke_width,
        guideline_stroke_width: style.guideline_stroke_width,
        label_font_size: style.label_font_size,
        hit_half_band: style.hit_half_band(),
    })
}

pub fn layout_linear(
    system: &SetSystem,
    arrangement: &Arrangement,
    style: &StyleConfig,
) -> Result<LinearGeometry> {
    check_inputs(system, arrangement, style, Topology::Linear)?;
    let n = system.num_sets();
    let m = system.num_zones();
    let cw = style.linear_column_width;
    let gap = style.linear_row_gap;
    let x0 = style.margin + style.linear_label_width;
    let x1 = x0 + m as f64 * cw;
    let top = style.margin;
    let bottom = top + (n as f64 + 1.0) * gap;

    let positions = arrangement.set_positions();
    let row_y: Vec<f64> = (0..n)
        .map(|s| top + (positions[s] as f64 + 1.0) * gap)
        .collect();

    let columns = arrangement
        .zone_order
        .iter()
        .enumerate()
        .map(|(j, &zone)| Column {
            zone,
            x_start: x0 + j as f64 * cw,
            x_end: x0 + (j + 1) as f64 * cw,
        })
        .collect();

    let ranks = system.alphabetical_ranks();
    let zones = arrangement.ordered_zones(system);
    let mut segments = Vec::new();
    for set in 0..n {
        let color = color_for_set(ranks[set], &style.palette)?;
        for (start, len) in runs(&zones, set, false) {
            segments.push(LinearSegment {
                set,
                start_position: start,
                length: len,
                y: row_y[set],
                x_start: x0 + start as f64 * cw,
                x_end: x0 + (start + len) as f64 * cw,
                color: color.to_string(),
            });
        }
    }

    let dividers = (0..=m)
        .map(|j| {
            let x = x0 + j as f64 * cw;
            LineSpan {
                from: Point::new(x, top),
                to: Point::new(x, bottom),
            }
        })
        .collect();
    let guidelines = arrangement
        .set_order
        .iter()
        .map(|&s| LineSpan {
            from: Point::new(x0, row_y[s]),
            to: Point::new(x1, row_y[s]),
        })
        .collect();

    let mut labels = legend_entries(system, style, |_, set| Point::new(x0 - 8.0, row_y[set]))?;
    labels.sort_by_key(|e| positions[e.set]);

    Ok(LinearGeometry {
        row_y,
        columns,
        segments,
        dividers,
        guidelines,
        labels,
        body_width: m as f64 * cw,
        bbox: BoundingBox {
            x: 0.0,
            y: 0.0,
            width: x1 + style.margin,
            height: bottom + style.margin,
        },
        set_stroke_width: style.set_stroke_width,
        guideline_stroke_width: style.guideline_stroke_width,
        label_font_size: style.label_font_size,
        hit_half_band: style.hit_half_band(),
    })
}

/// Clockwise angle of `p` around `center` in `[0, 360)`. The center itself
/// maps to 0.
pub fn clock_angle(center: Point, p: Point) -> f64 {
    let dx = p.x - center.x;
    let dy = p.y - center.y;
    if dx == 0.0 && dy == 0.0 {
        return 0.0;
    }
    let deg = dx.atan2(-dy).to_degrees();
    if deg < 0.0 {
        deg + 360.0
    } else if deg >= 360.0 {
        0.0
    } else {
        deg
    }
}

/// Rings win when the pointer is within their hit band (nearest ring on
/// overlap). Inside the inner circle or outside the outer one the pointer
/// selects the sector under its angle. Anything else hits nothing.
pub fn hit_test_hoop(geometry: &HoopGeometry, point: Point) -> HitTarget {
    if !geometry.bbox.contains(point) {
        return HitTarget::None;
    }
    let c = geometry.center;
    let r = (point.x - c.x).hypot(point.y - c.y);
    let nearest = geometry
        .ring_radius
        .iter()
        .enumerate()
        .map(|(s, &rr)| (s, (r - rr).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    if let Some((set, dist)) = nearest {
        if dist <= geometry.hit_half_band {
            return HitTarget::Set(set);
        }
    }
    if r < geometry.inner_radius || r > geometry.outer_radius {
        let m = geometry.sectors.len();
        if m == 0 {
            return HitTarget::None;
        }
        let width = 360.0 / m as f64;
        let pos = ((clock_angle(c, point) / width).floor() as usize).min(m - 1);
        return HitTarget::Zone(geometry.sectors[pos].zone);
    }
    HitTarget::None
}

/// Rows win within their hit band; above the top row or below the bottom
/// row the pointer selects the column under it.
pub fn hit_test_linear(geometry: &LinearGeometry, point: Point) -> HitTarget {
    if !geometry.bbox.contains(point) {
        return HitTarget::None;
    }
    let Some(col) = geometry
        .columns
        .iter()
        .find(|c| point.x >= c.x_start && point.x < c.x_end)
    else {
        return HitTarget::None;
    };
    let nearest = geometry
        .row_y
        .iter()
        .enumerate()
        .map(|(s, &y)| (s, (point.y - y).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    if let Some((set, dist)) = nearest {
        if dist <= geometry.hit_half_band {
            return HitTarget::Set(set);
        }
    }
    let top = geometry.row_y.iter().copied().fold(f64::INFINITY, f64::min);
    let bottom = geometry
        .row_y
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if point.y < top || point.y > bottom {
        HitTarget::Zone(col.zone)
    } else {
        HitTarget::None
    }
}
