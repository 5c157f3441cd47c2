//! Invariants over randomly generated closure systems on at most four
//! generators, each checked against a brute-force oracle.

use num_bigint::BigInt;
use proptest::prelude::*;

use genlat::minor_poset::{order_matches_definition, rank_gen, RankGenMethod};
use genlat::properties::{find_parallel, has_no_parallels};
use genlat::words::{AbPolynomial, AbWord};
use genlat::{
    ab_index, cd_compare, cd_index, load, save, FinitePoset, GenLattice, GenSet, LatticeSpec,
    MinorPoset, DEFAULT_BUDGET,
};

fn close(n: usize, seeds: &[u64]) -> Vec<GenSet> {
    let full = GenSet::full(n);
    let mut sets = vec![GenSet::EMPTY, full];
    sets.extend(seeds.iter().map(|&b| GenSet::from_bits(b & full.bits())));
    loop {
        let before = sets.len();
        let snapshot = sets.clone();
        for a in &snapshot {
            for b in &snapshot {
                let s = a.intersection(*b);
                if !sets.contains(&s) {
                    sets.push(s);
                }
            }
        }
        if sets.len() == before {
            return sets;
        }
    }
}

fn host() -> impl Strategy<Value = GenLattice> {
    (1usize..=4, prop::collection::vec(any::<u64>(), 0..6))
        .prop_filter_map("generators must be distinct", |(n, seeds)| {
            GenLattice::from_closed_sets(n, close(n, &seeds)).ok()
        })
}

/// Least upper bound by scanning every element.
fn brute_join(lat: &GenLattice, a: usize, b: usize) -> usize {
    let ids: Vec<_> = lat.elements().collect();
    let uppers: Vec<_> = ids
        .iter()
        .copied()
        .filter(|&u| lat.leq(ids[a], u) && lat.leq(ids[b], u))
        .collect();
    let least = uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| lat.leq(u, v)))
        .unwrap();
    least.index()
}

/// Flag f-vector by walking every chain, then the ab-index from it.
fn ab_by_chains(p: &FinitePoset) -> AbPolynomial {
    let (bot, top) = p.bounds().unwrap();
    let ranks = p.ranks().unwrap();
    let r = ranks[top];
    let mut f = vec![0u64; 1 << r];
    fn walk(p: &FinitePoset, ranks: &[usize], top: usize, x: usize, mask: usize, f: &mut [u64]) {
        if x == top {
            f[mask] += 1;
            return;
        }
        for y in 0..p.len() {
            if p.lt(x, y) {
                let bit = if y == top { 0 } else { 1 << ranks[y] };
                walk(p, ranks, top, y, mask | bit, f);
            }
        }
    }
    walk(p, &ranks, top, bot, 0, &mut f);
    // Σ_S f_S ∏ (b if i ∈ S else a − b), expanded letter by letter
    let mut out = AbPolynomial::zero();
    if r == 0 {
        return out;
    }
    for (mask, &count) in f.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let mut terms = vec![(AbWord::empty(), BigInt::from(count))];
        for i in 1..r {
            let mut next = Vec::new();
            for (w, c) in terms {
                if mask >> i & 1 == 1 {
                    next.push((w.push(true), c));
                } else {
                    next.push((w.push(false), c.clone()));
                    next.push((w.push(true), -c));
                }
            }
            terms = next;
        }
        for (w, c) in terms {
            out.add_term(w, c);
        }
    }
    out
}

fn minor_poset(lat: &GenLattice) -> MinorPoset {
    MinorPoset::build(lat, DEFAULT_BUDGET).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_the_least_upper_bound(lat in host()) {
        let ids: Vec<_> = lat.elements().collect();
        for a in 0..ids.len() {
            for b in 0..ids.len() {
                prop_assert_eq!(lat.join(ids[a], ids[b]).index(), brute_join(&lat, a, b));
            }
        }
    }

    #[test]
    fn minor_poset_is_graded_thin_and_eulerian(lat in host()) {
        let mp = minor_poset(&lat);
        prop_assert!(order_matches_definition(&lat, &mp));
        let report = mp.poset().structure_report().unwrap();
        prop_assert!(report.graded && report.thin && report.eulerian, "{:?}", report);
        prop_assert_eq!(report.rank, Some(lat.n() + 1));
    }

    #[test]
    fn census_matches_the_closed_form(lat in host()) {
        let mp = minor_poset(&lat);
        prop_assert_eq!(mp.rank_census(), rank_gen(&lat, RankGenMethod::Direct).unwrap());
        if has_no_parallels(&lat).verdict {
            prop_assert_eq!(mp.rank_census(), rank_gen(&lat, RankGenMethod::NoParallels).unwrap());
        }
    }

    #[test]
    fn ab_index_matches_chain_enumeration(lat in host()) {
        let mp = minor_poset(&lat);
        prop_assert_eq!(ab_index(mp.poset()).unwrap(), ab_by_chains(mp.poset()));
    }

    #[test]
    fn cd_index_is_nonnegative_and_below_the_cube(lat in host()) {
        let psi = cd_index(minor_poset(&lat).poset()).unwrap();
        prop_assert!(psi.is_nonnegative());
        let cube = cd_index(minor_poset(&GenLattice::boolean(lat.n()).unwrap()).poset()).unwrap();
        prop_assert!(cd_compare(&psi, &cube, 0).unwrap().leq);
    }

    #[test]
    fn save_and_load_round_trip(lat in host()) {
        let text = save(&lat).to_json_string();
        let back = load(&LatticeSpec::from_json_str(&text).unwrap()).unwrap();
        prop_assert!(back.is_isomorphic(&lat));
        prop_assert_eq!(back.closed_sets(), lat.closed_sets());
    }

    #[test]
    fn no_parallel_criteria_agree(lat in host()) {
        let report = has_no_parallels(&lat);
        prop_assert!(report.consistent(), "{:?}", report);
        prop_assert_eq!(report.verdict, find_parallel(&lat).is_none());
    }
}
