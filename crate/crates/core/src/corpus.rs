//! Fixed test hosts, seeded random hosts and exhaustive small families.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::genset::GenSet;
use crate::ingestion::{load, LatticeSpec};
use crate::lattice::GenLattice;
use crate::poset::FinitePoset;

macro_rules! corpus_files {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../data/corpus/", $name, ".json")))),*]
    };
}

const FILES: [(&str, &str); 25] = corpus_files![
    "boolean_0",
    "boolean_1",
    "boolean_2",
    "boolean_3",
    "boolean_4",
    "chain_1",
    "chain_2",
    "chain_3",
    "chain_4",
    "chain_5",
    "partition_3",
    "partition_4",
    "uniform_2_4",
    "triangle_graph",
    "square_faces",
    "path_intervals_3",
    "path_intervals_4",
    "three_atoms",
    "pentagon",
    "atoms_one_pair",
    "square_with_top",
    "ideals_of_v",
    "ideals_of_n",
    "ideals_of_chain_plus_point",
    "ideals_of_diamond",
];

/// Seeds of the random hosts in [`corpus`].
pub const RANDOM_SEEDS: std::ops::Range<u64> = 0..10;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: LatticeSpec,
    pub lattice: Arc<GenLattice>,
}

impl CorpusEntry {
    /// Built from a poset, hence distributive and minimally generated.
    pub fn is_distributive(&self) -> bool {
        matches!(self.spec, LatticeSpec::Poset { .. })
            || matches!(&self.spec, LatticeSpec::Builtin { name, .. } if name == "boolean" || name == "chain")
    }
}

/// The named hosts followed by the seeded random ones.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = FILES
        .iter()
        .map(|(name, text)| {
            let spec = LatticeSpec::from_json_str(text).expect("corpus spec parses");
            let lattice = Arc::new(load(&spec).expect("corpus spec loads"));
            CorpusEntry {
                name: name.to_string(),
                spec,
                lattice,
            }
        })
        .collect();
    for seed in RANDOM_SEEDS {
        let lat = random_host(seed);
        out.push(CorpusEntry {
            name: format!("random_{seed}"),
            spec: crate::ingestion::save(&lat),
            lattice: Arc::new(lat),
        });
    }
    out
}

pub fn named(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// A host on 3 to 5 generators whose closed sets are the intersection
/// closure of a few random sets. Retries until the generators are distinct
/// and nonzero.
pub fn random_host(seed: u64) -> GenLattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(3..=5);
        let full = GenSet::full(n);
        let mut sets = vec![GenSet::EMPTY, full];
        for _ in 0..rng.gen_range(2..=2 * n) {
            let s = GenSet::from_bits(rng.gen_range(1..full.bits()));
            sets.push(s);
        }
        let sets = intersection_closure(sets);
        if let Ok(lat) = GenLattice::from_closed_sets(n, sets) {
            return lat;
        }
    }
}

fn intersection_closure(mut sets: Vec<GenSet>) -> Vec<GenSet> {
    sets.sort();
    sets.dedup();
    loop {
        let mut added = false;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let s = sets[i].intersection(sets[j]);
                if !sets.contains(&s) {
                    sets.push(s);
                    added = true;
                }
            }
        }
        if !added {
            return sets;
        }
    }
}

/// Every generator-enriched lattice on generators `0..n` (labelled), as
/// families of closed sets; feasible for `n ≤ 3`.
pub fn all_labelled(n: usize) -> Vec<GenLattice> {
    assert!(n <= 3, "exhaustive family only for n <= 3");
    let full = GenSet::full(n);
    // candidate members besides ∅ and the full set
    let middle: Vec<GenSet> = (1..full.bits()).map(GenSet::from_bits).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << middle.len()) {
        let mut sets = vec![GenSet::EMPTY, full];
        sets.extend(
            (0..middle.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| middle[i]),
        );
        if n == 0 {
            sets.truncate(1);
        }
        let closed = sets
            .iter()
            .all(|a| sets.iter().all(|b| sets.contains(&a.intersection(*b))));
        if !closed {
            continue;
        }
        if let Ok(lat) = GenLattice::from_closed_sets(n, sets) {
            out.push(lat);
        }
        if n == 0 {
            break;
        }
    }
    out
}

/// One representative of every iso class of posets with `k` elements.
pub fn posets_up_to_iso(k: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let mut reps: Vec<FinitePoset> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| {
            i == j || (i < j && mask >> pairs.iter().position(|&p| p == (i, j)).unwrap() & 1 == 1)
        };
        // naturally labelled relations; keep transitive ones
        let transitive =
            (0..k).all(|a| (a..k).all(|b| !rel(a, b) || (b..k).all(|c| !rel(b, c) || rel(a, c))));
        if !transitive {
            continue;
        }
        let covers: Vec<(usize, usize)> =
            pairs.iter().copied().filter(|&(i, j)| rel(i, j)).collect();
        let labels = (0..k).map(|i| format!("p{}", i + 1)).collect();
        let p = FinitePoset::from_covers(labels, &covers).expect("acyclic");
        if !reps
            .iter()
            .any(|q| q.is_isomorphic(&p).expect("small poset"))
        {
            reps.push(p);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads() {
        let c = corpus();
        assert_eq!(c.len(), 35);
        assert!(c
            .iter()
            .filter(|e| e.name.starts_with("random"))
            .all(|e| (3..=5).contains(&e.lattice.n())));
        assert_eq!(named("path_intervals_4").unwrap().lattice.len(), 11);
    }

    #[test]
    fn small_families() {
        assert_eq!(all_labelled(2).len(), 3);
        assert_eq!(all_labelled(3).len(), 35);
        let counts: Vec<usize> = (0..=4).map(|k| posets_up_to_iso(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }
}
