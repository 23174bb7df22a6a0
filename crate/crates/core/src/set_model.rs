//! Membership data, set systems and their canonical form.
//!
//! A [`SetSystem`] is a list of named sets plus the exact intersections
//! ("zones") that occur in the data. Zones are stored as bit masks over the
//! set indices, which caps a system at [`MAX_SETS`] sets.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of sets a system may carry.
pub const MAX_SETS: usize = 16;

/// One exact intersection of sets, as a bit mask over set indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Zone(u16);

impl Zone {
    pub const EMPTY: Zone = Zone(0);

    pub fn from_mask(mask: u16) -> Self {
        Zone(mask)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut mask = 0u16;
        for m in members {
            assert!(m < MAX_SETS, "set index {m} out of range");
            mask |= 1 << m;
        }
        Zone(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn contains(self, set: usize) -> bool {
        set < MAX_SETS && self.0 & (1 << set) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member set indices in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..MAX_SETS).filter(move |&s| self.0 & (1 << s) != 0)
    }

    /// Sets in `self` that are not in `other`.
    pub fn difference(self, other: Zone) -> Zone {
        Zone(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Zone) -> Zone {
        Zone(self.0 ^ other.0)
    }

    pub fn union(self, other: Zone) -> Zone {
        Zone(self.0 | other.0)
    }

    pub fn intersection(self, other: Zone) -> Zone {
        Zone(self.0 & other.0)
    }

    /// Hamming distance between the two subsets.
    pub fn distance(self, other: Zone) -> u32 {
        (self.0 ^ other.0).count_ones()
    }
}

/// Raw membership data: one entry per item with the labels it holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MembershipTable {
    pub items: Vec<(String, Vec<String>)>,
}

impl MembershipTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, item_id: impl Into<String>, interests: &[&str]) {
        self.items.push((
            item_id.into(),
            interests.iter().map(|s| s.to_string()).collect(),
        ));
    }

    /// Parses the line-oriented items format: `item_id: label, label, ...`.
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut items = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: "expected `item_id: label, label, ...`".into(),
            })?;
            let id = id.trim();
            if id.is_empty() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: "empty item id".into(),
                });
            }
            let mut labels = Vec::new();
            for label in rest.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                if labels.iter().any(|l: &String| l == label) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("label {label:?} repeated for item {id:?}"),
                    });
                }
                labels.push(label.to_string());
            }
            items.push((id.to_string(), labels));
        }
        Ok(MembershipTable { items })
    }
}

/// Named sets and the exact intersections present in the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub set_names: Vec<String>,
    pub zones: Vec<Zone>,
    /// Number of items falling in each zone; carried but never rendered.
    pub zone_weights: Vec<u64>,
}

/// Result of deriving a system from a membership table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub system: SetSystem,
    /// Items whose interest list was empty.
    pub skipped: usize,
}

/// A broken invariant found by [`SetSystem::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoSets,
    TooManySets(usize),
    EmptySetName(usize),
    DuplicateSetName(String),
    EmptyZone(usize),
    ZoneOutOfRange(usize),
    DuplicateZone(Vec<String>),
    UncoveredSet(String),
    WeightCountMismatch { zones: usize, weights: usize },
    ZeroWeight(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSets => write!(f, "system has no sets"),
            Violation::TooManySets(n) => write!(f, "{n} sets exceeds the maximum of {MAX_SETS}"),
            Violation::EmptySetName(i) => write!(f, "set {i} has an empty name"),
            Violation::DuplicateSetName(n) => write!(f, "set name {n:?} is duplicated"),
            Violation::EmptyZone(i) => write!(f, "zone {i} is empty"),
            Violation::ZoneOutOfRange(i) => write!(f, "zone {i} references an unknown set"),
            Violation::DuplicateZone(m) => write!(f, "zone {{{}}} is duplicated", m.join(", ")),
            Violation::UncoveredSet(n) => write!(f, "set {n:?} appears in no zone"),
            Violation::WeightCountMismatch { zones, weights } => {
                write!(f, "{weights} weights given for {zones} zones")
            }
            Violation::ZeroWeight(i) => write!(f, "zone {i} has weight 0"),
        }
    }
}

impl SetSystem {
    /// Builds a system and checks every invariant.
    pub fn new(set_names: Vec<String>, zones: Vec<Zone>, zone_weights: Vec<u64>) -> Result<Self> {
        let system = SetSystem {
            set_names,
            zones,
            zone_weights,
        };
        system.check()?;
        Ok(system)
    }

    /// Builds a system from member-name lists, every zone with weight 1.
    pub fn from_named_zones(set_names: &[&str], zones: &[&[&str]]) -> Result<Self> {
        let names: Vec<String> = set_names.iter().map(|s| s.to_string()).collect();
        let mut masks = Vec::with_capacity(zones.len());
        for zone in zones {
            masks.push(zone_from_labels(&names, zone.iter().copied())?);
        }
        let weights = vec![1; masks.len()];
        SetSystem::new(names, masks, weights)
    }

    pub fn num_sets(&self) -> usize {
        self.set_names.len()
    }

    pub fn num_zones(&self) -> usize {
        self.zones.len()
    }

    pub fn set_index(&self, name: &str) -> Option<usize> {
        self.set_names.iter().position(|n| n == name)
    }

    pub fn zone_labels(&self, zone: Zone) -> Vec<String> {
        zone.members().map(|s| self.set_names[s].clone()).collect()
    }

    /// Lists every violated invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        let n = self.set_names.len();
        if n == 0 {
            report.push(Violation::NoSets);
        }
        if n > MAX_SETS {
            report.push(Violation::TooManySets(n));
        }
        let mut seen_names = HashSet::new();
        for (i, name) in self.set_names.iter().enumerate() {
            if name.is_empty() {
                report.push(Violation::EmptySetName(i));
            } else if !seen_names.insert(name.as_str()) {
                report.push(Violation::DuplicateSetName(name.clone()));
            }
        }
        let valid_mask: u32 = if n >= MAX_SETS {
            0xFFFF
        } else {
            (1u32 << n) - 1
        };
        let mut seen_zones = HashSet::new();
        let mut covered = Zone::EMPTY;
        for (i, &zone) in self.zones.iter().enumerate() {
            if zone.is_empty() {
                report.push(Violation::EmptyZone(i));
                continue;
            }
            if u32::from(zone.mask()) & !valid_mask != 0 {
                report.push(Violation::ZoneOutOfRange(i));
                continue;
            }
            if !seen_zones.insert(zone) {
                report.push(Violation::DuplicateZone(self.zone_labels(zone)));
            }
            covered = covered.union(zone);
        }
        for (s, name) in self.set_names.iter().enumerate().take(MAX_SETS) {
            if !covered.contains(s) {
                report.push(Violation::UncoveredSet(name.clone()));
            }
        }
        if self.zone_weights.len() != self.zones.len() {
            report.push(Violation::WeightCountMismatch {
                zones: self.zones.len(),
                weights: self.zone_weights.len(),
            });
        }
        for (i, &w) in self.zone_weights.iter().enumerate() {
            if w == 0 {
                report.push(Violation::ZeroWeight(i));
            }
        }
        report
    }

    /// Converts a non-empty validation report into an error.
    pub fn check(&self) -> Result<()> {
        let report = self.validate();
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSystem(report))
        }
    }

    /// Sorts set names alphabetically and zones by descending cardinality,
    /// then lexicographically on their member indices.
    pub fn canonicalize(&self) -> Result<SetSystem> {
        self.check()?;
        let mut by_name: Vec<usize> = (0..self.num_sets()).collect();
        by_name.sort_by(|&a, &b| self.set_names[a].cmp(&self.set_names[b]));
        let mut new_index = vec![0usize; self.num_sets()];
        for (new, &old) in by_name.iter().enumerate() {
            new_index[old] = new;
        }
        let set_names = by_name.iter().map(|&i| self.set_names[i].clone()).collect();
        let mut zones: Vec<(Zone, u64)> = self
            .zones
            .iter()
            .zip(&self.zone_weights)
            .map(|(z, &w)| (Zone::from_members(z.members().map(|s| new_index[s])), w))
            .collect();
        zones.sort_by(|(a, _), (b, _)| baseline_cmp(*a, *b));
        Ok(SetSystem {
            set_names,
            zones: zones.iter().map(|(z, _)| *z).collect(),
            zone_weights: zones.iter().map(|(_, w)| *w).collect(),
        })
    }

    /// Rank of every set in alphabetical order of the names.
    pub fn alphabetical_ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_sets()).collect();
        order.sort_by(|&a, &b| self.set_names[a].cmp(&self.set_names[b]));
        let mut rank = vec![0; order.len()];
        for (r, &s) in order.iter().enumerate() {
            rank[s] = r;
        }
        rank
    }

    pub fn to_document(&self) -> SystemDocument {
        SystemDocument {
            sets: self.set_names.clone(),
            zones: self
                .zones
                .iter()
                .zip(&self.zone_weights)
                .map(|(&z, &w)| ZoneEntry {
                    members: self.zone_labels(z),
                    weight: w,
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &SystemDocument) -> Result<SetSystem> {
        let mut zones = Vec::with_capacity(doc.zones.len());
        let mut weights = Vec::with_capacity(doc.zones.len());
        for entry in &doc.zones {
            zones.push(zone_from_labels(
                &doc.sets,
                entry.members.iter().map(String::as_str),
            )?);
            weights.push(entry.weight);
        }
        SetSystem::new(doc.sets.clone(), zones, weights)
    }

    /// Parses the JSON zones format.
    pub fn from_json(text: &str) -> Result<SetSystem> {
        let doc: SystemDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        SetSystem::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_document())
            .expect("system documents always serialize");
        out.push('\n');
        out
    }
}

/// Baseline zone order: larger zones first, ties by member indices.
pub fn baseline_cmp(a: Zone, b: Zone) -> std::cmp::Ordering {
    b.len()
        .cmp(&a.len())
        .then_with(|| a.members().cmp(b.members()))
}

fn zone_from_labels<'a>(names: &[String], labels: impl Iterator<Item = &'a str>) -> Result<Zone> {
    let mut members = Vec::new();
    for label in labels {
        let idx = names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::UnknownSet(label.to_string()))?;
        if idx >= MAX_SETS {
            return Err(Error::InvalidSystem(vec![Violation::TooManySets(
                names.len(),
            )]));
        }
        members.push(idx);
    }
    Ok(Zone::from_members(members))
}

/// Derives the set system of exact interest combinations.
///
/// Set names come out sorted; zones appear in the order their combination
/// is first seen. Items with no interests are skipped and counted.
pub fn zones_from_memberships(table: &MembershipTable) -> Result<Derivation> {
    let mut ids = HashSet::new();
    for (id, labels) in &table.items {
        if !ids.insert(id.as_str()) {
            return Err(Error::DuplicateItem(id.clone()));
        }
        let distinct: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
        if distinct.len() != labels.len() {
            return Err(Error::DuplicateLabel(id.clone()));
        }
    }
    let names: Vec<String> = table
        .items
        .iter()
        .flat_map(|(_, labels)| labels.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if names.is_empty() {
        return Err(Error::EmptyTable);
    }
    if names.len() > MAX_SETS {
        return Err(Error::InvalidSystem(vec![Violation::TooManySets(
            names.len(),
        )]));
    }

    let mut skipped = 0;
    let mut order: Vec<Zone> = Vec::new();
    let mut counts: BTreeMap<Zone, u64> = BTreeMap::new();
    for (_, labels) in &table.items {
        if labels.is_empty() {
            skipped += 1;
            continue;
        }
        let zone = zone_from_labels(&names, labels.iter().map(String::as_str))?;
        let count = counts.entry(zone).or_insert(0);
        if *count == 0 {
            order.push(zone);
        }
        *count += 1;
    }
    let zone_weights = order.iter().map(|z| counts[z]).collect();
    let system = SetSystem::new(names, order, zone_weights)?;
    Ok(Derivation { system, skipped })
}

/// Wire and file form of a system: sets by name, zones by member names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub sets: Vec<String>,
    pub zones: Vec<ZoneEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneEntry {
    pub members: Vec<String>,
    #[serde(default = "default_weight")]
    pub weight: u64,
}

fn default_weight() -> u64 {
    1
}
