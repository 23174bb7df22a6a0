//! Interactive diagram state: the five interactions plus reset, with an
//! append-only interaction log.
//!
//! Sessions are values. [`Session::apply`] returns a new session and leaves
//! the old one untouched, so a failed command never changes state.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{layout_hoop, layout_linear, Geometry, HitTarget, Point, StyleConfig};
use crate::ordering::{
    bring_set_to_front, optimize_exact_with_threshold, optimize_heuristic,
    reorder_for_set_with_threshold, rotate, segment_counts, Arrangement, Direction, SegmentStats,
    Topology, DEFAULT_EXACT_THRESHOLD,
};
use crate::render::{render_svg, Emphasis, HighlightState};
use crate::set_model::SetSystem;

/// Duration the UI animates a reordering over.
pub const ANIMATION_DURATION_MS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Hoop,
    Linear,
}

impl DiagramKind {
    pub fn topology(self) -> Topology {
        match self {
            DiagramKind::Hoop => Topology::Cyclic,
            DiagramKind::Linear => Topology::Linear,
        }
    }
}

/// How the initial zone order is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerMode {
    /// Exact search up to the threshold, heuristic beyond.
    #[default]
    Auto,
    /// Canonical order, unoptimized.
    None,
    Heuristic,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub style: StyleConfig,
    pub seed: u64,
    pub exact_threshold: usize,
    pub emphasis: Emphasis,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            style: StyleConfig::default(),
            seed: 0,
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
            emphasis: Emphasis::DimOthers,
        }
    }
}

/// Base arrangement for `system` under `mode`.
pub fn initial_arrangement(
    system: &SetSystem,
    topology: Topology,
    mode: OptimizerMode,
    seed: u64,
    threshold: usize,
) -> Result<Arrangement> {
    match mode {
        OptimizerMode::None => Ok(Arrangement::identity(system, topology)),
        OptimizerMode::Heuristic => Ok(optimize_heuristic(system, topology, seed)),
        OptimizerMode::Exact => optimize_exact_with_threshold(system, topology, threshold),
        OptimizerMode::Auto if system.num_zones() <= threshold => {
            optimize_exact_with_threshold(system, topology, threshold)
        }
        OptimizerMode::Auto => Ok(optimize_heuristic(system, topology, seed)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InteractionCommand {
    /// Pointer moved to canvas coordinates.
    Probe {
        x: f64,
        y: f64,
    },
    BringToFront {
        set: usize,
    },
    ReorderSet {
        set: usize,
    },
    Rotate {
        direction: Direction,
    },
    Reset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    HoverSet,
    HoverZone,
    HoverNone,
    ClickReorderSet,
    ClickBringToFront,
    RotateLeft,
    RotateRight,
    Reset,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::HoverSet => "hover-set",
            EventKind::HoverZone => "hover-zone",
            EventKind::HoverNone => "hover-none",
            EventKind::ClickReorderSet => "click-reorder-set",
            EventKind::ClickBringToFront => "click-bring-to-front",
            EventKind::RotateLeft => "rotate-left",
            EventKind::RotateRight => "rotate-right",
            EventKind::Reset => "reset",
        }
    }

    fn has_target(self) -> bool {
        matches!(
            self,
            EventKind::HoverSet
                | EventKind::HoverZone
                | EventKind::ClickReorderSet
                | EventKind::ClickBringToFront
        )
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EventKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            EventKind::HoverSet,
            EventKind::HoverZone,
            EventKind::HoverNone,
            EventKind::ClickReorderSet,
            EventKind::ClickBringToFront,
            EventKind::RotateLeft,
            EventKind::RotateRight,
            EventKind::Reset,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| format!("unknown event kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InteractionEvent {
    pub timestamp_ms: u64,
    pub kind: EventKind,
    pub target: Option<usize>,
}

/// An element that changed display position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub index: usize,
    pub from: usize,
    pub to: usize,
}

/// What a command changed, for the UI to animate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub event: Option<EventKind>,
    pub zone_moves: Vec<Move>,
    pub set_moves: Vec<Move>,
    /// Sector shift of a rotation: -1 left, +1 right, 0 otherwise.
    pub rotation: i32,
    pub highlight_changed: bool,
    pub animation_duration_ms: u64,
}

fn moves(before: &[usize], after: &[usize]) -> Vec<Move> {
    let mut from = vec![0; before.len()];
    for (p, &i) in before.iter().enumerate() {
        from[i] = p;
    }
    let mut out: Vec<Move> = after
        .iter()
        .enumerate()
        .filter(|&(to, &i)| from[i] != to)
        .map(|(to, &i)| Move {
            index: i,
            from: from[i],
            to,
        })
        .collect();
    out.sort_by_key(|m| m.index);
    out
}

/// Everything a client needs to draw the current state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub kind: DiagramKind,
    pub set_names: Vec<String>,
    pub zone_order: Vec<usize>,
    pub set_order: Vec<usize>,
    pub highlight: HighlightState,
    pub segment_stats: SegmentStats,
    pub transition: Option<Transition>,
    pub svg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    system: SetSystem,
    kind: DiagramKind,
    base: Arrangement,
    current: Arrangement,
    highlight: HighlightState,
    log: Vec<InteractionEvent>,
    config: SessionConfig,
}

impl Session {
    /// Canonicalizes `system` and lays out its base arrangement.
    pub fn create(
        system: &SetSystem,
        kind: DiagramKind,
        mode: OptimizerMode,
        config: SessionConfig,
    ) -> Result<Self> {
        let system = system.canonicalize()?;
        config.style.validate()?;
        let base = initial_arrangement(
            &system,
            kind.topology(),
            mode,
            config.seed,
            config.exact_threshold,
        )?;
        let session = Session {
            current: base.clone(),
            base,
            system,
            kind,
            highlight: HighlightState::none(),
            log: Vec::new(),
            config,
        };
        session.geometry()?;
        Ok(session)
    }

    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn base_arrangement(&self) -> &Arrangement {
        &self.base
    }

    pub fn current_arrangement(&self) -> &Arrangement {
        &self.current
    }

    pub fn highlight(&self) -> HighlightState {
        self.highlight
    }

    pub fn events(&self) -> &[InteractionEvent] {
        &self.log
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn geometry(&self) -> Result<Geometry> {
        Ok(match self.kind {
            DiagramKind::Hoop => Geometry::Hoop(layout_hoop(
                &self.system,
                &self.current,
                &self.config.style,
            )?),
            DiagramKind::Linear => Geometry::Linear(layout_linear(
                &self.system,
                &self.current,
                &self.config.style,
            )?),
        })
    }

    pub fn segment_stats(&self) -> SegmentStats {
        segment_counts(&self.system, &self.current).expect("session arrangements stay valid")
    }

    pub fn svg(&self) -> String {
        render_svg(
            &self.geometry().expect("session geometry stays valid"),
            &self.highlight,
        )
    }

    pub fn snapshot(&self, transition: Option<Transition>) -> Snapshot {
        Snapshot {
            kind: self.kind,
            set_names: self.system.set_names.clone(),
            zone_order: self.current.zone_order.clone(),
            set_order: self.current.set_order.clone(),
            highlight: self.highlight,
            segment_stats: self.segment_stats(),
            transition,
            svg: self.svg(),
        }
    }

    fn check_set(&self, set: usize) -> Result<()> {
        if set >= self.system.num_sets() {
            return Err(Error::InvalidSet {
                index: set,
                count: self.system.num_sets(),
            });
        }
        Ok(())
    }

    /// Applies one command at `timestamp_ms` and reports what moved.
    ///
    /// Probes are logged only when they change the highlight; every other
    /// command is a click and always logged.
    pub fn apply(
        &self,
        command: &InteractionCommand,
        timestamp_ms: u64,
    ) -> Result<(Session, Transition)> {
        let mut next = self.clone();
        let mut rotation = 0;
        let event = match *command {
            InteractionCommand::Probe { x, y } => {
                let target = self.geometry()?.hit_test(Point::new(x, y));
                if target == self.highlight.target {
                    None
                } else {
                    next.highlight = HighlightState::new(target, self.config.emphasis);
                    Some(match target {
                        HitTarget::Set(s) => (EventKind::HoverSet, Some(s)),
                        HitTarget::Zone(z) => (EventKind::HoverZone, Some(z)),
                        HitTarget::None => (EventKind::HoverNone, None),
                    })
                }
            }
            InteractionCommand::BringToFront { set } => {
                self.check_set(set)?;
                next.current = bring_set_to_front(&self.current, set)?;
                Some((EventKind::ClickBringToFront, Some(set)))
            }
            InteractionCommand::ReorderSet { set } => {
                self.check_set(set)?;
                next.current = reorder_for_set_with_threshold(
                    &self.system,
                    &self.current,
                    set,
                    self.config.exact_threshold,
                )?;
                Some((EventKind::ClickReorderSet, Some(set)))
            }
            InteractionCommand::Rotate { direction } => {
                next.current = rotate(&self.current, direction);
                rotation = match direction {
                    Direction::Left => -1,
                    Direction::Right => 1,
                };
                Some((
                    match direction {
                        Direction::Left => EventKind::RotateLeft,
                        Direction::Right => EventKind::RotateRight,
                    },
                    None,
                ))
            }
            InteractionCommand::Reset => {
                next.current = self.base.clone();
                next.highlight = HighlightState::none();
                Some((EventKind::Reset, None))
            }
        };

        let zone_moves = if rotation != 0 {
            let m = self.current.zone_order.len();
            self.current
                .zone_order
                .iter()
                .enumerate()
                .map(|(p, &z)| Move {
                    index: z,
                    from: p,
                    to: ((p as i64 + rotation as i64).rem_euclid(m as i64)) as usize,
                })
                .collect::<Vec<_>>()
        } else {
            moves(&self.current.zone_order, &next.current.zone_order)
        };
        let set_moves = moves(&self.current.set_order, &next.current.set_order);
        let animated = matches!(
            command,
            InteractionCommand::BringToFront { .. }
                | InteractionCommand::ReorderSet { .. }
                | InteractionCommand::Rotate { .. }
                | InteractionCommand::Reset
        );
        if let Some((kind, target)) = event {
            next.log.push(InteractionEvent {
                timestamp_ms,
                kind,
                target,
            });
        }
        let transition = Transition {
            event: event.map(|(k, _)| k),
            zone_moves,
            set_moves,
            rotation,
            highlight_changed: next.highlight != self.highlight,
            animation_duration_ms: if animated { ANIMATION_DURATION_MS } else { 0 },
        };
        Ok((next, transition))
    }

    /// Tab-separated log, one event per line after a header, sorted by time.
    /// An empty log exports as an empty document.
    pub fn export_log(&self) -> String {
        export_log(&self.log)
    }
}

pub fn export_log(events: &[InteractionEvent]) -> String {
    if events.is_empty() {
        return String::new();
    }
    let mut sorted = events.to_vec();
    sorted.sort_by_key(|e| e.timestamp_ms);
    let mut out = String::from("timestamp_ms\tkind\ttarget\n");
    for e in sorted {
        let target = e.target.map(|t| t.to_string()).unwrap_or_default();
        out.push_str(&format!("{}\t{}\t{}\n", e.timestamp_ms, e.kind, target));
    }
    out
}

pub fn parse_log(text: &str) -> Result<Vec<InteractionEvent>> {
    let bad = |line: usize, message: String| Error::Parse { line, message };
    let mut events = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != "timestamp_ms\tkind\ttarget" {
                return Err(bad(1, "missing log header".into()));
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [ts, kind, target] = fields[..] else {
            return Err(bad(i + 1, "expected three tab-separated fields".into()));
        };
        let timestamp_ms = ts
            .parse()
            .map_err(|e| bad(i + 1, format!("timestamp: {e}")))?;
        let kind: EventKind = kind.parse().map_err(|e| bad(i + 1, e))?;
        let target = if target.is_empty() {
            None
        } else {
            Some(
                target
                    .parse()
                    .map_err(|e| bad(i + 1, format!("target: {e}")))?,
            )
        };
        if target.is_some() != kind.has_target() {
            return Err(bad(i + 1, format!("target presence does not fit {kind}")));
        }
        events.push(InteractionEvent {
            timestamp_ms,
            kind,
            target,
        });
    }
    Ok(events)
}
