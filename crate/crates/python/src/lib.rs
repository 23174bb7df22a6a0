//! Python bindings: set systems, ordering, rendering and sessions.

use std::time::Instant;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use hoops::generator::generate_system;
use hoops::ordering::{
    optimize_exact, optimize_heuristic, segment_counts, Arrangement, Direction, Topology,
};
use hoops::session::{DiagramKind, InteractionCommand, OptimizerMode, Session, SessionConfig};
use hoops::set_model::{zones_from_memberships, MembershipTable, SetSystem};
use hoops::Error;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::InvalidSet { .. } => PyIndexError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn topology(name: &str) -> PyResult<Topology> {
    match name {
        "cyclic" | "hoop" => Ok(Topology::Cyclic),
        "linear" => Ok(Topology::Linear),
        _ => Err(PyValueError::new_err(format!("unknown topology {name:?}"))),
    }
}

fn kind(name: &str) -> PyResult<DiagramKind> {
    match name {
        "hoop" => Ok(DiagramKind::Hoop),
        "linear" => Ok(DiagramKind::Linear),
        _ => Err(PyValueError::new_err(format!(
            "unknown diagram kind {name:?}"
        ))),
    }
}

fn optimizer(name: &str) -> PyResult<OptimizerMode> {
    match name {
        "auto" => Ok(OptimizerMode::Auto),
        "none" => Ok(OptimizerMode::None),
        "heuristic" => Ok(OptimizerMode::Heuristic),
        "exact" => Ok(OptimizerMode::Exact),
        _ => Err(PyValueError::new_err(format!("unknown optimizer {name:?}"))),
    }
}

fn direction(name: &str) -> PyResult<Direction> {
    match name {
        "left" => Ok(Direction::Left),
        "right" => Ok(Direction::Right),
        _ => Err(PyValueError::new_err(format!("unknown direction {name:?}"))),
    }
}

#[pyclass(name = "SetSystem", module = "pyhoops", skip_from_py_object)]
#[derive(Clone)]
pub struct PySetSystem {
    inner: SetSystem,
}

#[pymethods]
impl PySetSystem {
    /// Derive a system from `item: label, label` lines.
    #[staticmethod]
    fn from_items(text: &str) -> PyResult<Self> {
        let table = MembershipTable::parse(text).map_err(to_py)?;
        let derived = zones_from_memberships(&table).map_err(to_py)?;
        Ok(PySetSystem {
            inner: derived.system,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySetSystem {
            inner: SetSystem::from_json(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n_sets, n_zones, seed = 0))]
    fn generate(n_sets: usize, n_zones: usize, seed: u64) -> PyResult<Self> {
        Ok(PySetSystem {
            inner: generate_system(n_sets, n_zones, seed).map_err(to_py)?,
        })
    }

    #[getter]
    fn set_names(&self) -> Vec<String> {
        self.inner.set_names.clone()
    }

    /// Zones as lists of set names.
    #[getter]
    fn zones(&self) -> Vec<Vec<String>> {
        self.inner
            .zones
            .iter()
            .map(|&z| self.inner.zone_labels(z))
            .collect()
    }

    #[getter]
    fn zone_weights(&self) -> Vec<u64> {
        self.inner.zone_weights.clone()
    }

    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn canonicalize(&self) -> PyResult<Self> {
        Ok(PySetSystem {
            inner: self.inner.canonicalize().map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.num_zones()
    }

    fn __repr__(&self) -> String {
        format!(
            "SetSystem(sets={}, zones={})",
            self.inner.num_sets(),
            self.inner.num_zones()
        )
    }
}

/// Run counts per set and their total for a zone order.
#[pyfunction]
#[pyo3(signature = (system, zone_order, topology = "cyclic", set_order = None))]
fn segment_stats(
    system: PyRef<'_, PySetSystem>,
    zone_order: Vec<usize>,
    topology: &str,
    set_order: Option<Vec<usize>>,
) -> PyResult<(Vec<usize>, usize)> {
    let arrangement = Arrangement {
        zone_order,
        set_order: set_order.unwrap_or_else(|| (0..system.inner.num_sets()).collect()),
        topology: self::topology(topology)?,
    };
    let stats = segment_counts(&system.inner, &arrangement).map_err(to_py)?;
    Ok((stats.runs_per_set, stats.total))
}

/// Segment-minimizing zone order, by `exact` search or the `heuristic`.
#[pyfunction]
#[pyo3(signature = (system, topology = "cyclic", method = "exact", seed = 0))]
fn optimize(
    system: PyRef<'_, PySetSystem>,
    topology: &str,
    method: &str,
    seed: u64,
) -> PyResult<Vec<usize>> {
    let topology = self::topology(topology)?;
    let arrangement = match method {
        "exact" => optimize_exact(&system.inner, topology).map_err(to_py)?,
        "heuristic" => optimize_heuristic(&system.inner, topology, seed),
        _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
    };
    Ok(arrangement.zone_order)
}

/// SVG of the system, canonicalized and laid out like the CLI does.
#[pyfunction]
#[pyo3(signature = (system, kind = "hoop", optimizer = "auto", seed = 0))]
fn render(
    system: PyRef<'_, PySetSystem>,
    kind: &str,
    optimizer: &str,
    seed: u64,
) -> PyResult<String> {
    let config = SessionConfig {
        seed,
        ..SessionConfig::default()
    };
    let session = Session::create(
        &system.inner,
        self::kind(kind)?,
        self::optimizer(optimizer)?,
        config,
    )
    .map_err(to_py)?;
    Ok(session.svg())
}

#[pyclass(name = "Session", module = "pyhoops")]
pub struct PySession {
    inner: Session,
    started: Instant,
}

impl PySession {
    fn run(&mut self, command: InteractionCommand) -> PyResult<String> {
        let now = self.started.elapsed().as_millis() as u64;
        let (next, transition) = self.inner.apply(&command, now).map_err(to_py)?;
        self.inner = next;
        Ok(serde_json::to_string(&transition).expect("transitions serialize"))
    }
}

#[pymethods]
impl PySession {
    #[new]
    #[pyo3(signature = (system, kind = "hoop", optimizer = "auto", seed = 0))]
    fn new(
        system: PyRef<'_, PySetSystem>,
        kind: &str,
        optimizer: &str,
        seed: u64,
    ) -> PyResult<Self> {
        let config = SessionConfig {
            seed,
            ..SessionConfig::default()
        };
        let inner = Session::create(
            &system.inner,
            self::kind(kind)?,
            self::optimizer(optimizer)?,
            config,
        )
        .map_err(to_py)?;
        Ok(PySession {
            inner,
            started: Instant::now(),
        })
    }

    /// Applies a command given as JSON, returning the transition as JSON.
    fn apply_json(&mut self, command: &str) -> PyResult<String> {
        let command: InteractionCommand =
            serde_json::from_str(command).map_err(|e| PyValueError::new_err(e.to_string()))?;
        self.run(command)
    }

    fn probe(&mut self, x: f64, y: f64) -> PyResult<String> {
        self.run(InteractionCommand::Probe { x, y })
    }

    fn bring_to_front(&mut self, set: usize) -> PyResult<String> {
        self.run(InteractionCommand::BringToFront { set })
    }

    fn reorder_set(&mut self, set: usize) -> PyResult<String> {
        self.run(InteractionCommand::ReorderSet { set })
    }

    #[pyo3(signature = (direction = "left"))]
    fn rotate(&mut self, direction: &str) -> PyResult<String> {
        let direction = self::direction(direction)?;
        self.run(InteractionCommand::Rotate { direction })
    }

    fn reset(&mut self) -> PyResult<String> {
        self.run(InteractionCommand::Reset)
    }

    #[getter]
    fn svg(&self) -> String {
        self.inner.svg()
    }

    #[getter]
    fn set_names(&self) -> Vec<String> {
        self.inner.system().set_names.clone()
    }

    #[getter]
    fn zone_order(&self) -> Vec<usize> {
        self.inner.current_arrangement().zone_order.clone()
    }

    #[getter]
    fn set_order(&self) -> Vec<usize> {
        self.inner.current_arrangement().set_order.clone()
    }

    #[getter]
    fn runs_per_set(&self) -> Vec<usize> {
        self.inner.segment_stats().runs_per_set
    }

    #[getter]
    fn total_segments(&self) -> usize {
        self.inner.segment_stats().total
    }

    /// Snapshot of the current state as JSON.
    fn snapshot_json(&self) -> String {
        serde_json::to_string(&self.inner.snapshot(None)).expect("snapshots serialize")
    }

    fn export_log(&self) -> String {
        self.inner.export_log()
    }
}

#[pymodule]
fn pyhoops(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySetSystem>()?;
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(segment_stats, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add(
        "ANIMATION_DURATION_MS",
        hoops::session::ANIMATION_DURATION_MS,
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_parsing() {
        assert_eq!(topology("hoop").unwrap(), Topology::Cyclic);
        assert_eq!(kind("linear").unwrap(), DiagramKind::Linear);
        assert_eq!(optimizer("none").unwrap(), OptimizerMode::None);
        assert_eq!(direction("right").unwrap(), Direction::Right);
    }
}
