//! Random set systems at a requested size.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::set_model::{baseline_cmp, SetSystem, Violation, Zone, MAX_SETS};

/// Set names used by generated systems; no two share a first letter.
pub const INTEREST_NAMES: [&str; MAX_SETS] = [
    "Art", "Books", "Cars", "Dogs", "Esport", "Food", "Golf", "Hifi", "Insects", "Jazz",
    "Knitting", "Lego", "Music", "Netball", "Opera", "Poker",
];

const MAX_ATTEMPTS: usize = 100_000;

/// Draws `n_zones` distinct non-empty subsets of `n_sets` sets uniformly
/// without replacement, redrawing until every set is covered. Weights are 1.
pub fn generate_system(n_sets: usize, n_zones: usize, seed: u64) -> Result<SetSystem> {
    if n_sets == 0 || n_sets > MAX_SETS {
        return Err(Error::InvalidSystem(vec![Violation::TooManySets(n_sets)]));
    }
    let universe = (1usize << n_sets) - 1;
    if n_zones == 0 || n_zones > universe {
        return Err(Error::DimensionMismatch(format!(
            "{n_zones} zones requested; {n_sets} sets allow 1 to {universe}"
        )));
    }
    let full = Zone::from_mask(universe as u16);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut zones: Vec<Zone> = sample(&mut rng, universe, n_zones)
            .into_iter()
            .map(|i| Zone::from_mask((i + 1) as u16))
            .collect();
        let covered = zones.iter().fold(Zone::EMPTY, |acc, &z| acc.union(z));
        if covered != full {
            continue;
        }
        zones.sort_by(|a, b| baseline_cmp(*a, *b));
        return SetSystem::new(
            INTEREST_NAMES[..n_sets]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            zones,
            vec![1; n_zones],
        );
    }
    Err(Error::DimensionMismatch(format!(
        "no covering draw of {n_zones} zones over {n_sets} sets after {MAX_ATTEMPTS} attempts"
    )))
}
