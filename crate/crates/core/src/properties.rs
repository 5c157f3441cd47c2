//! Structural predicates on generator-enriched lattices, with witnesses.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::ingestion::{diagram_edges, load, LatticeSpec};
use crate::lattice::{ElementId, GenLattice};
use crate::minor_poset::{minor_poset_is_lattice_direct, MinorPoset};
use crate::minors::{minor_count, Minor, MinorTable};
use crate::zipping::StrongMap;

/// Elements (as closed sets, 1-based) exhibiting a failure, with a short
/// description.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    pub elements: Vec<Vec<usize>>,
}

impl Witness {
    fn new(lat: &GenLattice, description: impl Into<String>, elems: &[ElementId]) -> Self {
        Witness {
            description: description.into(),
            elements: elems
                .iter()
                .map(|&e| lat.closed_set(e).to_one_based())
                .collect(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.description)?;
        for (k, e) in self.elements.iter().enumerate() {
            let body: Vec<String> = e.iter().map(|i| i.to_string()).collect();
            write!(
                f,
                "{}{{{}}}",
                if k == 0 { " " } else { ", " },
                body.join(",")
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Equivalent characterisations, each computed independently.
    pub criteria: Vec<Criterion>,
}

impl PropertyReport {
    fn new(property: &str, witness: Option<Witness>) -> Self {
        PropertyReport {
            property: property.to_string(),
            verdict: witness.is_none(),
            witness,
            criteria: Vec::new(),
        }
    }

    fn with(mut self, name: &str, verdict: bool) -> Self {
        self.criteria.push(Criterion {
            name: name.to_string(),
            verdict,
        });
        self
    }

    /// Whether every criterion agrees with the verdict.
    pub fn consistent(&self) -> bool {
        self.criteria.iter().all(|c| c.verdict == self.verdict)
    }
}

/// Small generator-enriched lattices used as forbidden minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ForbiddenPattern {
    /// Three atoms below a common top (a parallel among atoms).
    A,
    /// The pentagon with generators `g1 < g3` and `g2`.
    B,
    /// Three atoms with `g1 ∨ g2` strictly below `g1 ∨ g3 = g2 ∨ g3`.
    C,
    /// `B_2` with the top as a third generator.
    D,
    /// Ideal lattice of `z < x, z < y`, principal ideals as generators.
    Lat,
    /// The chain with three elements.
    Chain,
}

impl ForbiddenPattern {
    pub const ALL: [ForbiddenPattern; 6] = [
        ForbiddenPattern::A,
        ForbiddenPattern::B,
        ForbiddenPattern::C,
        ForbiddenPattern::D,
        ForbiddenPattern::Lat,
        ForbiddenPattern::Chain,
    ];
    /// The patterns characterising lattices without parallels.
    pub const PARALLEL: [ForbiddenPattern; 4] = [
        ForbiddenPattern::A,
        ForbiddenPattern::B,
        ForbiddenPattern::C,
        ForbiddenPattern::D,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ForbiddenPattern::A => "a",
            ForbiddenPattern::B => "b",
            ForbiddenPattern::C => "c",
            ForbiddenPattern::D => "d",
            ForbiddenPattern::Lat => "lat",
            ForbiddenPattern::Chain => "chain",
        }
    }

    pub fn lattice(self) -> Arc<GenLattice> {
        static PATTERNS: OnceLock<Vec<Arc<GenLattice>>> = OnceLock::new();
        let all = PATTERNS.get_or_init(|| {
            let raw: serde_json::Map<String, serde_json::Value> =
                serde_json::from_str(include_str!("../data/patterns.json"))
                    .expect("pattern file parses");
            ForbiddenPattern::ALL
                .iter()
                .map(|p| {
                    let spec: LatticeSpec =
                        serde_json::from_value(raw[p.key()].clone()).expect("pattern spec parses");
                    Arc::new(load(&spec).expect("pattern loads"))
                })
                .collect()
        });
        all[self as usize].clone()
    }
}

impl std::str::FromStr for ForbiddenPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ForbiddenPattern::ALL
            .into_iter()
            .find(|p| p.key() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown pattern {s:?}")))
    }
}

/// First pair of distinct generators `g, h` and element `ℓ` with
/// `g ∨ ℓ = h ∨ ℓ ≠ ℓ`.
pub fn find_parallel(lat: &GenLattice) -> Option<(usize, usize, ElementId)> {
    for l in lat.elements() {
        for g in 0..lat.n() {
            let gl = lat.join_generator(l, g);
            if gl == l {
                continue;
            }
            if let Some(h) = (g + 1..lat.n()).find(|&h| lat.join_generator(l, h) == gl) {
                return Some((g, h, l));
            }
        }
    }
    None
}

/// Every fiber of `X ↦ ⋁X` on generator subsets has a unique minimal element.
pub fn unique_minimal_fibers(lat: &GenLattice) -> bool {
    lat.elements().all(|l| {
        let s = lat.closed_set(l);
        let essential: GenSet = s
            .iter()
            .filter(|&i| lat.join_of_generators(s.without(i)) != l)
            .collect();
        lat.join_of_generators(essential) == l
    })
}

/// `|{g : g ≤ ℓ}|` is a rank function: it grows by one along every cover.
pub fn generator_count_is_rank(lat: &GenLattice) -> bool {
    lat.elements().all(|a| {
        lat.upper_covers(a)
            .iter()
            .all(|&b| lat.closed_set(b).len() == lat.closed_set(a).len() + 1)
    })
}

pub fn has_no_parallels(lat: &GenLattice) -> PropertyReport {
    let witness = find_parallel(lat).map(|(g, h, l)| {
        Witness::new(
            lat,
            format!(
                "generators {} and {} are parallel over",
                lat.generator_names()[g],
                lat.generator_names()[h]
            ),
            &[l],
        )
    });
    PropertyReport::new("no-parallels", witness)
        .with("unique-minimal-fibers", unique_minimal_fibers(lat))
        .with("rank-function", generator_count_is_rank(lat))
}

/// Whether every lift `g ∨ ℓ ≠ ℓ` is join irreducible in `[ℓ, 1̂]`.
pub fn lifts_join_irreducibles(lat: &GenLattice) -> PropertyReport {
    let mut witness = None;
    'scan: for l in lat.elements() {
        for m in lat.lifts(l) {
            let below = lat
                .lower_covers(m)
                .iter()
                .filter(|&&c| lat.leq(l, c))
                .count();
            if below != 1 {
                witness = Some(Witness::new(lat, "lift is join reducible above", &[l, m]));
                break 'scan;
            }
        }
    }
    PropertyReport::new("lifts-join-irreducibles", witness)
}

/// Whether the diagram edges `(ℓ, ℓ ∨ g)` are exactly the covers.
pub fn diagram_is_hasse(lat: &GenLattice) -> bool {
    let edges = diagram_edges(lat);
    let covers: usize = lat.elements().map(|e| lat.upper_covers(e).len()).sum();
    edges.len() == covers && edges.iter().all(|&(a, b, _)| lat.covers(a, b))
}

/// Atomic generators and upper semimodularity.
pub fn is_geometric(lat: &GenLattice) -> PropertyReport {
    let mut witness = lat
        .generators()
        .iter()
        .find(|&&g| !lat.covers(lat.bottom(), g))
        .map(|&g| Witness::new(lat, "generator is not an atom", &[g]));
    if witness.is_none() {
        'scan: for a in lat.elements() {
            for b in lat.elements() {
                let m = lat.meet(a, b);
                if lat.covers(m, a) && !lat.covers(b, lat.join(a, b)) {
                    witness = Some(Witness::new(lat, "upper semimodularity fails for", &[a, b]));
                    break 'scan;
                }
            }
        }
    }
    PropertyReport::new("geometric", witness).with("diagram-is-hasse", diagram_is_hasse(lat))
}

/// A minor of the host isomorphic to a pattern.
#[derive(Clone, Debug)]
pub struct PatternHit {
    pub pattern: ForbiddenPattern,
    pub minor: Minor,
}

/// Scans minors with as many generators as some pattern and returns the
/// first one isomorphic to a pattern, scanning bases in order.
pub fn find_forbidden_minor(
    lat: &GenLattice,
    patterns: &[ForbiddenPattern],
    budget: u128,
) -> Result<Option<PatternHit>> {
    let needed = minor_count(lat);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let pats: Vec<(ForbiddenPattern, Arc<GenLattice>)> =
        patterns.iter().map(|&p| (p, p.lattice())).collect();
    let bases: Vec<ElementId> = lat.elements().collect();
    Ok(bases.par_iter().find_map_first(|&z| {
        let lifts = lat.lifts(z);
        for (p, pl) in &pats {
            let k = pl.n();
            if k > lifts.len() {
                continue;
            }
            for mask in 0u64..(1u64 << lifts.len()) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let gens: Vec<ElementId> = (0..lifts.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| lifts[i])
                    .collect();
                let m = Minor::from_parts(lat.host_id(), z, gens);
                if m.elements(lat).len() != pl.len() {
                    continue;
                }
                let sub = m.expand(lat).expect("minor of this host");
                if sub.lattice.is_isomorphic(pl) {
                    return Some(PatternHit {
                        pattern: *p,
                        minor: m,
                    });
                }
            }
        }
        None
    }))
}

fn hit_report(lat: &GenLattice, property: &str, hit: Option<PatternHit>) -> PropertyReport {
    let witness = hit.map(|h| {
        let mut elems = vec![h.minor.base()];
        elems.extend_from_slice(h.minor.generators());
        Witness::new(
            lat,
            format!("minor isomorphic to pattern {}", h.pattern.key()),
            &elems,
        )
    });
    PropertyReport::new(property, witness)
}

/// Forbidden-minor search as a report; the witness lists the base then the
/// generators of the offending minor.
pub fn forbidden_minor_report(
    lat: &GenLattice,
    patterns: &[ForbiddenPattern],
    budget: u128,
) -> Result<PropertyReport> {
    let keys: Vec<&str> = patterns.iter().map(|p| p.key()).collect();
    Ok(hit_report(
        lat,
        &format!("no-minor-{}", keys.join("-")),
        find_forbidden_minor(lat, patterns, budget)?,
    ))
}

/// Whether `M(L, G)` is a lattice, decided directly from the join criterion
/// on the built poset and via the forbidden-minor characterisation.
pub fn minor_poset_is_lattice(lat: &GenLattice, budget: u128) -> Result<PropertyReport> {
    let mp = MinorPoset::build(lat, budget)?;
    let witness = mp.find_pair_without_join(lat).map(|(a, b, f)| {
        let mut elems = vec![a.base()];
        elems.extend_from_slice(a.generators());
        elems.push(b.base());
        elems.extend_from_slice(b.generators());
        Witness::new(
            lat,
            format!(
                "minors {} and {} have no join ({f:?})",
                a.display(lat),
                b.display(lat)
            ),
            &elems,
        )
    });
    debug_assert_eq!(witness.is_none(), minor_poset_is_lattice_direct(lat, &mp));
    let route_ii = has_no_parallels(lat).verdict
        && find_forbidden_minor(lat, &[ForbiddenPattern::Lat], budget)?.is_none();
    Ok(PropertyReport::new("minor-poset-is-lattice", witness)
        .with("no-parallels-and-no-lat-minor", route_ii))
}

/// The properties exposed by [`check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    NoParallels,
    Jilp,
    Geometric,
    Lattice,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::NoParallels,
        Property::Jilp,
        Property::Geometric,
        Property::Lattice,
    ];
}

impl std::str::FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-parallels" => Ok(Property::NoParallels),
            "jilp" => Ok(Property::Jilp),
            "geometric" => Ok(Property::Geometric),
            "lattice" => Ok(Property::Lattice),
            _ => Err(Error::Parse(format!("unknown property {s:?}"))),
        }
    }
}

/// One report, with its forbidden-minor criterion attached.
pub fn check(lat: &GenLattice, property: Property, budget: u128) -> Result<PropertyReport> {
    let no_minor = |p: &[ForbiddenPattern]| -> Result<bool> {
        Ok(find_forbidden_minor(lat, p, budget)?.is_none())
    };
    Ok(match property {
        Property::NoParallels => {
            has_no_parallels(lat).with("no-minor-a-b-c-d", no_minor(&ForbiddenPattern::PARALLEL)?)
        }
        Property::Jilp => {
            lifts_join_irreducibles(lat).with("no-minor-d", no_minor(&[ForbiddenPattern::D])?)
        }
        Property::Geometric => {
            is_geometric(lat).with("no-minor-chain", no_minor(&[ForbiddenPattern::Chain])?)
        }
        Property::Lattice => minor_poset_is_lattice(lat, budget)?,
    })
}

/// Every report of [`check`].
pub fn check_all(lat: &GenLattice, budget: u128) -> Result<Vec<PropertyReport>> {
    Property::ALL
        .iter()
        .map(|&p| check(lat, p, budget))
        .collect()
}

/// Strong surjection onto the chain with `n` generators: generators are
/// ordered by repeatedly taking a minimal lift of the current element, and
/// `ℓ` maps to the largest position of a generator below it.
pub fn surjection_onto_chain(lat: &Arc<GenLattice>) -> Result<StrongMap> {
    if let Some((g, h, l)) = find_parallel(lat) {
        return Err(Error::HasParallel(format!(
            "generators {} and {} over {}",
            g + 1,
            h + 1,
            lat.closed_set(l)
        )));
    }
    let n = lat.n();
    let mut position = vec![0usize; n];
    let mut cur = lat.bottom();
    for step in 1..=n {
        let g = (0..n)
            .filter(|&i| lat.join_generator(cur, i) != cur)
            .min_by_key(|&i| (lat.closed_set(lat.join_generator(cur, i)).len(), i))
            .ok_or_else(|| Error::Invariant("ran out of generators".into()))?;
        position[g] = step;
        cur = lat.join_generator(cur, g);
    }
    let chain = Arc::new(GenLattice::chain(n)?);
    let rank_element = |k: usize| {
        chain
            .element_by_set((0..k).collect())
            .expect("chain has every rank")
    };
    let images: Vec<ElementId> = lat
        .elements()
        .map(|e| {
            rank_element(
                lat.closed_set(e)
                    .iter()
                    .map(|i| position[i])
                    .max()
                    .unwrap_or(0),
            )
        })
        .collect();
    StrongMap::validate(lat.clone(), chain, images)
}

/// Rank-4 reduction: the minor poset is a lattice iff every lower interval
/// of rank 4 is one. Returns the verdict of the reduced check.
pub fn rank_four_intervals_are_lattices(mp: &MinorPoset) -> bool {
    let p = mp.poset();
    (0..p.len())
        .into_par_iter()
        .filter(|&v| p.height(v) == 4)
        .all(|v| p.interval(0, v).0.is_lattice())
}

/// Number of minors with exactly `k` generators.
pub fn minors_with_generators(table: &MinorTable, k: usize) -> usize {
    table.iter().filter(|m| m.generators().len() == k).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::DEFAULT_BUDGET;

    fn lattice(n: usize, sets: &[&[usize]]) -> GenLattice {
        GenLattice::from_closed_sets(
            n,
            sets.iter()
                .map(|s| s.iter().map(|i| i - 1).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn patterns_load() {
        for p in ForbiddenPattern::ALL {
            let l = p.lattice();
            let expect = if p == ForbiddenPattern::Chain { 2 } else { 3 };
            assert_eq!(l.n(), expect, "{p:?}");
        }
        assert_eq!(ForbiddenPattern::D.lattice().len(), 4);
        assert!(ForbiddenPattern::PARALLEL
            .iter()
            .all(|p| !has_no_parallels(&p.lattice()).verdict));
        assert!(has_no_parallels(&ForbiddenPattern::Lat.lattice()).verdict);
    }

    #[test]
    fn parallels() {
        let b3 = GenLattice::boolean(3).unwrap();
        let r = has_no_parallels(&b3);
        assert!(r.verdict && r.consistent() && r.witness.is_none());
        let m3 = ForbiddenPattern::A.lattice();
        let r = has_no_parallels(&m3);
        assert!(!r.verdict && r.consistent());
        assert_eq!(r.witness.unwrap().elements, vec![vec![1]]);
    }

    #[test]
    fn lifts() {
        let square = lattice(
            4,
            &[
                &[],
                &[1],
                &[2],
                &[3],
                &[4],
                &[1, 2],
                &[2, 3],
                &[3, 4],
                &[1, 4],
                &[1, 2, 3, 4],
            ],
        );
        assert!(!lifts_join_irreducibles(&square).verdict);
        assert!(lifts_join_irreducibles(&GenLattice::boolean(3).unwrap()).verdict);
        assert!(!lifts_join_irreducibles(&ForbiddenPattern::D.lattice()).verdict);
    }

    #[test]
    fn geometric() {
        let c3 = GenLattice::chain(3).unwrap();
        let r = is_geometric(&c3);
        assert!(!r.verdict && r.consistent());
        let r = is_geometric(&GenLattice::boolean(3).unwrap());
        assert!(r.verdict && r.consistent());
        // N5 with atoms only is not semimodular
        let n5 = lattice(3, &[&[], &[1], &[2], &[3], &[1, 3], &[1, 2, 3]]);
        assert!(!is_geometric(&n5).verdict);
    }

    #[test]
    fn forbidden_search() {
        let b3 = GenLattice::boolean(3).unwrap();
        assert!(
            find_forbidden_minor(&b3, &ForbiddenPattern::ALL, DEFAULT_BUDGET)
                .unwrap()
                .is_none()
        );
        let lat = ForbiddenPattern::Lat.lattice();
        let hit = find_forbidden_minor(&lat, &[ForbiddenPattern::Lat], DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(hit.minor, Minor::whole(&lat));
        let c3 = GenLattice::chain(3).unwrap();
        assert!(
            find_forbidden_minor(&c3, &[ForbiddenPattern::Chain], DEFAULT_BUDGET)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn lattice_property() {
        let c3 = GenLattice::chain(3).unwrap();
        let r = minor_poset_is_lattice(&c3, DEFAULT_BUDGET).unwrap();
        assert!(r.verdict && r.consistent());
        let lat = ForbiddenPattern::Lat.lattice();
        let r = minor_poset_is_lattice(&lat, DEFAULT_BUDGET).unwrap();
        assert!(!r.verdict && r.consistent());
    }

    #[test]
    fn chain_surjections() {
        let b2 = Arc::new(GenLattice::boolean(2).unwrap());
        let f = surjection_onto_chain(&b2).unwrap();
        assert!(f.is_surjective());
        let ranks: Vec<usize> = f.images().iter().map(|e| e.index()).collect();
        assert_eq!(ranks, vec![0, 1, 2, 2]);
        let m3 = ForbiddenPattern::A.lattice();
        assert!(matches!(
            surjection_onto_chain(&m3),
            Err(Error::HasParallel(_))
        ));
    }
}
