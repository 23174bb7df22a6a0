mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hoops::generator::generate_system;
use hoops::ordering::{
    bring_set_to_front, is_permutation, optimize_exact, optimize_heuristic, reorder_for_set,
    rotate, segment_counts, total_segments, Arrangement, Direction, Topology,
};
use hoops::session::{
    parse_log, DiagramKind, InteractionCommand, OptimizerMode, Session, SessionConfig,
};
use hoops::set_model::SetSystem;

fn system_strategy(max_sets: usize, max_zones: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_sets, any::<u64>()).prop_flat_map(move |(n, seed)| {
        let top = max_zones.min((1 << n) - 1);
        (1..=top).prop_map(move |m| generate_system(n, m, seed).unwrap())
    })
}

fn topology_strategy() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Cyclic), Just(Topology::Linear)]
}

fn shuffled(system: &SetSystem, topology: Topology, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Arrangement::identity(system, topology);
    a.zone_order.shuffle(&mut rng);
    a.set_order.shuffle(&mut rng);
    a
}

/// The same system with set indices and zone order scrambled.
fn scrambled(system: &SetSystem, seed: u64) -> SetSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc = system.to_document();
    doc.sets.shuffle(&mut rng);
    doc.zones.shuffle(&mut rng);
    SetSystem::from_document(&doc).unwrap()
}

fn run_colors(svg: &str) -> HashMap<String, String> {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.attribute("class") == Some("run"))
        .map(|n| {
            (
                n.attribute("data-set").unwrap().to_string(),
                n.attribute("stroke").unwrap().to_string(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalize_is_idempotent_and_order_free(system in system_strategy(8, 20), seed in any::<u64>()) {
        let canon = system.canonicalize().unwrap();
        prop_assert_eq!(&canon.canonicalize().unwrap(), &canon);
        prop_assert_eq!(&scrambled(&system, seed).canonicalize().unwrap(), &canon);
        prop_assert_eq!(&SetSystem::from_json(&canon.to_json()).unwrap(), &canon);
    }

    #[test]
    fn optimizers_return_permutations(system in system_strategy(6, 9), topology in topology_strategy(), seed in any::<u64>()) {
        let h = optimize_heuristic(&system, topology, seed);
        prop_assert!(is_permutation(&h.zone_order, system.num_zones()));
        prop_assert_eq!(&h, &optimize_heuristic(&system, topology, seed));
        let e = optimize_exact(&system, topology).unwrap();
        prop_assert!(is_permutation(&e.zone_order, system.num_zones()));
        prop_assert!(total_segments(&system, &e) <= total_segments(&system, &h));
        prop_assert!(total_segments(&system, &e) <= total_segments(&system, &Arrangement::identity(&system, topology)));
    }

    #[test]
    fn counts_match_oracle(system in system_strategy(10, 30), topology in topology_strategy(), seed in any::<u64>()) {
        let a = shuffled(&system, topology, seed);
        let cyclic = topology == Topology::Cyclic;
        let stats = segment_counts(&system, &a).unwrap();
        prop_assert_eq!(&stats.runs_per_set, &common::oracle_runs(&system, &a.zone_order, cyclic));
        prop_assert_eq!(stats.total, common::boundary_formula(&system, &a.zone_order, cyclic));
        prop_assert_eq!(stats.total, total_segments(&system, &a));
        // Set order never affects counts.
        let mut b = a.clone();
        b.set_order.reverse();
        prop_assert_eq!(segment_counts(&system, &b).unwrap(), stats);
    }

    #[test]
    fn cyclic_counts_are_rotation_and_reflection_invariant(system in system_strategy(8, 16), seed in any::<u64>()) {
        let a = shuffled(&system, Topology::Cyclic, seed);
        let stats = segment_counts(&system, &a).unwrap();
        prop_assert_eq!(&segment_counts(&system, &rotate(&a, Direction::Left)).unwrap(), &stats);
        prop_assert_eq!(&segment_counts(&system, &rotate(&a, Direction::Right)).unwrap(), &stats);
        let mut mirrored = a.clone();
        mirrored.zone_order.reverse();
        prop_assert_eq!(&segment_counts(&system, &mirrored).unwrap(), &stats);
    }

    #[test]
    fn reorder_is_a_fixpoint(system in system_strategy(7, 12), topology in topology_strategy(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let a = shuffled(&system, topology, seed);
        let s = pick.index(system.num_sets());
        let once = reorder_for_set(&system, &a, s).unwrap();
        prop_assert_eq!(segment_counts(&system, &once).unwrap().runs_per_set[s], 1);
        let twice = reorder_for_set(&system, &once, s).unwrap();
        prop_assert_eq!(total_segments(&system, &twice), total_segments(&system, &once));
    }

    #[test]
    fn bring_to_front_composes(n in 2usize..12, seed in any::<u64>(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set_order: Vec<usize> = (0..n).collect();
        set_order.shuffle(&mut rng);
        let a = Arrangement { zone_order: vec![0, 1], set_order, topology: Topology::Linear };
        let (x, y) = (x.index(n), y.index(n));
        let b = bring_set_to_front(&bring_set_to_front(&a, x).unwrap(), y).unwrap();
        prop_assert_eq!(b.set_order[0], y);
        if x != y {
            prop_assert_eq!(b.set_order[1], x);
        }
        prop_assert!(is_permutation(&b.set_order, n));
    }

    #[test]
    fn hover_is_logged_once(system in system_strategy(6, 12), fx in 0.0f64..1.0, fy in 0.0f64..1.0, linear in any::<bool>()) {
        let kind = if linear { DiagramKind::Linear } else { DiagramKind::Hoop };
        let session = Session::create(&system, kind, OptimizerMode::Heuristic, SessionConfig::default()).unwrap();
        let bbox = session.geometry().unwrap().bbox();
        let probe = InteractionCommand::Probe { x: bbox.x + fx * bbox.width, y: bbox.y + fy * bbox.height };
        let (one, _) = session.apply(&probe, 1).unwrap();
        let (two, second) = one.apply(&probe, 2).unwrap();
        prop_assert!(one.events().len() <= 1);
        prop_assert_eq!(two.events(), one.events());
        prop_assert_eq!(second.event, None);
        prop_assert_eq!(second.animation_duration_ms, 0);
    }

    #[test]
    fn colors_follow_names_not_positions(system in system_strategy(8, 12), pick in any::<prop::sample::Index>(), linear in any::<bool>()) {
        let kind = if linear { DiagramKind::Linear } else { DiagramKind::Hoop };
        let session = Session::create(&system, kind, OptimizerMode::Heuristic, SessionConfig::default()).unwrap();
        let s = pick.index(system.num_sets());
        let (moved, _) = session.apply(&InteractionCommand::BringToFront { set: s }, 0).unwrap();
        prop_assert_eq!(run_colors(&moved.svg()), run_colors(&session.svg()));
    }

    #[test]
    fn log_round_trips(system in system_strategy(5, 8), commands in prop::collection::vec(0u8..6, 0..20)) {
        let mut session = Session::create(&system, DiagramKind::Hoop, OptimizerMode::Auto, SessionConfig::default()).unwrap();
        for (t, c) in commands.iter().enumerate() {
            let command = match c {
                0 => InteractionCommand::Probe { x: 366.0, y: 100.0 + t as f64 * 20.0 },
                1 => InteractionCommand::BringToFront { set: t % system.num_sets() },
                2 => InteractionCommand::ReorderSet { set: t % system.num_sets() },
                3 => InteractionCommand::Rotate { direction: Direction::Left },
                4 => InteractionCommand::Rotate { direction: Direction::Right },
                _ => InteractionCommand::Reset,
            };
            session = session.apply(&command, t as u64 * 10).unwrap().0;
        }
        let parsed = parse_log(&session.export_log()).unwrap();
        prop_assert_eq!(parsed.as_slice(), session.events());
    }
}
