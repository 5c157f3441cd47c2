//! Minors of a generator enriched lattice in the canonical form `⟨H|z⟩`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::lattice::{ElementId, GenLattice, SubLattice};
use crate::poset::FinitePoset;

/// Default cap on the number of minors an enumeration may produce.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// A minor `⟨H|z⟩` of a host lattice: `z` is its minimum and `H` its
/// generators, each of the form `g ∨ z ≠ z`. Generators are kept sorted, so
/// two minors are equal exactly when their data coincide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Minor {
    host: u64,
    base: ElementId,
    gens: Vec<ElementId>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinorOp {
    Delete,
    Contract,
    Restrict,
}

impl Minor {
    /// `(L, G)` itself.
    pub fn whole(lat: &GenLattice) -> Minor {
        Minor {
            host: lat.host_id(),
            base: lat.bottom(),
            gens: lat.lifts(lat.bottom()),
        }
    }

    /// Validates and normalises `⟨gens|base⟩`.
    pub fn new(lat: &GenLattice, base: ElementId, gens: &[ElementId]) -> Result<Minor> {
        if !lat.contains(base) {
            return Err(Error::BadIndex {
                index: base.index(),
                len: lat.len(),
            });
        }
        let lifts = lat.lifts(base);
        let mut gens = gens.to_vec();
        gens.sort();
        gens.dedup();
        for &h in &gens {
            if !lifts.contains(&h) {
                return Err(Error::NotAbove(h.index()));
            }
        }
        Ok(Minor {
            host: lat.host_id(),
            base,
            gens,
        })
    }

    pub(crate) fn from_parts(host: u64, base: ElementId, gens: Vec<ElementId>) -> Minor {
        Minor { host, base, gens }
    }

    pub fn host_id(&self) -> u64 {
        self.host
    }

    pub fn base(&self) -> ElementId {
        self.base
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.gens
    }

    /// Rank in the minor poset.
    pub fn rank(&self) -> usize {
        self.gens.len() + 1
    }

    fn check_host(&self, lat: &GenLattice) -> Result<()> {
        if self.host == lat.host_id() {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    /// Whether `e` is an element of the minor, i.e. `e = z ∨ ⋁{h ∈ H : h ≤ e}`.
    pub fn contains_element(&self, lat: &GenLattice, e: ElementId) -> bool {
        lat.leq(self.base, e)
            && self
                .gens
                .iter()
                .filter(|&&h| lat.leq(h, e))
                .fold(self.base, |acc, &h| lat.join(acc, h))
                == e
    }

    /// The underlying elements, sorted.
    pub fn elements(&self, lat: &GenLattice) -> Vec<ElementId> {
        let mut out = vec![self.base];
        for &h in &self.gens {
            let more: Vec<ElementId> = out.iter().map(|&e| lat.join(e, h)).collect();
            out.extend(more);
            out.sort();
            out.dedup();
        }
        out
    }

    /// The minor as a lattice in its own right.
    pub fn expand(&self, lat: &GenLattice) -> Result<SubLattice> {
        self.check_host(lat)?;
        lat.generated_sub(&self.gens, self.base)
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i >= self.gens.len()) {
            Some(&i) => Err(Error::BadIndex {
                index: i,
                len: self.gens.len(),
            }),
            None => Ok(()),
        }
    }

    /// Deletion, contraction or restriction by the generators at positions
    /// `idx` (0-based, into [`Minor::generators`]).
    pub fn apply(&self, lat: &GenLattice, op: MinorOp, idx: &[usize]) -> Result<Minor> {
        self.check_host(lat)?;
        self.check_indices(idx)?;
        let chosen: Vec<bool> = (0..self.gens.len()).map(|i| idx.contains(&i)).collect();
        Ok(match op {
            MinorOp::Delete => self.keep(|i| !chosen[i]),
            MinorOp::Restrict => self.keep(|i| chosen[i]),
            MinorOp::Contract => {
                let z = idx
                    .iter()
                    .fold(self.base, |acc, &i| lat.join(acc, self.gens[i]));
                let mut gens: Vec<ElementId> = self
                    .gens
                    .iter()
                    .map(|&h| lat.join(h, z))
                    .filter(|&e| e != z)
                    .collect();
                gens.sort();
                gens.dedup();
                Minor {
                    host: self.host,
                    base: z,
                    gens,
                }
            }
        })
    }

    fn keep<F: Fn(usize) -> bool>(&self, f: F) -> Minor {
        Minor {
            host: self.host,
            base: self.base,
            gens: (0..self.gens.len())
                .filter(|&i| f(i))
                .map(|i| self.gens[i])
                .collect(),
        }
    }

    /// Deletion or contraction by all generators below `e`.
    pub fn apply_by_element(&self, lat: &GenLattice, op: MinorOp, e: ElementId) -> Result<Minor> {
        self.check_host(lat)?;
        if !lat.contains(e) {
            return Err(Error::BadIndex {
                index: e.index(),
                len: lat.len(),
            });
        }
        let idx: Vec<usize> = (0..self.gens.len())
            .filter(|&i| lat.leq(self.gens[i], e))
            .collect();
        self.apply(lat, op, &idx)
    }

    /// Deletion, contraction or restriction by host generator labels
    /// (0-based): label `i` refers to the generator `g_i ∨ z` of the minor.
    /// Labels whose lift is not a generator of the minor are ignored.
    pub fn apply_by_labels(
        &self,
        lat: &GenLattice,
        op: MinorOp,
        labels: &[usize],
    ) -> Result<Minor> {
        self.check_host(lat)?;
        let mut idx = Vec::new();
        for &i in labels {
            if i >= lat.n() {
                return Err(Error::BadIndex {
                    index: i,
                    len: lat.n(),
                });
            }
            let lift = lat.join_generator(self.base, i);
            if let Ok(p) = self.gens.binary_search(&lift) {
                idx.push(p);
            }
        }
        idx.sort_unstable();
        idx.dedup();
        self.apply(lat, op, &idx)
    }

    /// Whether `self` is a minor of `other`: `z_1` is a join of `z_2` with
    /// generators of `other`, and `H_1 ⊆ {h ∨ z_1 : h ∈ H_2} ∖ {z_1}`.
    pub fn is_minor_of(&self, lat: &GenLattice, other: &Minor) -> Result<bool> {
        self.check_host(lat)?;
        other.check_host(lat)?;
        Ok(is_minor_of_unchecked(lat, self, other))
    }

    /// Text form `<h1 h2|z>` with elements printed as 1-based closed sets.
    pub fn display<'a>(&'a self, lat: &'a GenLattice) -> MinorDisplay<'a> {
        MinorDisplay { minor: self, lat }
    }

    pub fn to_json(&self, lat: &GenLattice) -> MinorJson {
        MinorJson {
            base: lat.closed_set(self.base).to_one_based(),
            generators: self
                .gens
                .iter()
                .map(|&h| lat.closed_set(h).to_one_based())
                .collect(),
        }
    }
}

pub(crate) fn is_minor_of_unchecked(lat: &GenLattice, m1: &Minor, m2: &Minor) -> bool {
    let z1 = m1.base;
    if !m2.contains_element(lat, z1) {
        return false;
    }
    m1.gens
        .iter()
        .all(|&h1| h1 != z1 && m2.gens.iter().any(|&h2| lat.join(h2, z1) == h1))
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct MinorJson {
    pub base: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
}

pub struct MinorDisplay<'a> {
    minor: &'a Minor,
    lat: &'a GenLattice,
}

impl fmt::Display for MinorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, &h) in self.minor.gens.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.lat.closed_set(h))?;
        }
        write!(f, "|{}>", self.lat.closed_set(self.minor.base))
    }
}

/// `Σ_ℓ 2^{α(ℓ)}`, the number of minors.
pub fn minor_count(lat: &GenLattice) -> u128 {
    lat.elements()
        .map(|l| 1u128.checked_shl(lat.alpha(l) as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Dense indexing of all minors: the minors with minimum `ℓ` occupy a
/// contiguous block of `2^{α(ℓ)}` indices, one per subset of the lifts of `ℓ`.
#[derive(Clone, Debug)]
pub struct MinorTable {
    host: u64,
    lifts: Vec<Vec<ElementId>>,
    offsets: Vec<usize>,
    total: usize,
}

impl MinorTable {
    pub fn new(lat: &GenLattice, budget: u128) -> Result<MinorTable> {
        let needed = minor_count(lat);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let lifts: Vec<Vec<ElementId>> = lat.elements().map(|l| lat.lifts(l)).collect();
        let mut offsets = Vec::with_capacity(lifts.len());
        let mut total = 0usize;
        for l in &lifts {
            offsets.push(total);
            total += 1usize << l.len();
        }
        Ok(MinorTable {
            host: lat.host_id(),
            lifts,
            offsets,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn host_id(&self) -> u64 {
        self.host
    }

    pub fn lifts(&self, l: ElementId) -> &[ElementId] {
        &self.lifts[l.index()]
    }

    /// First index of the block of minors with minimum `l`.
    pub fn block_start(&self, l: ElementId) -> usize {
        self.offsets[l.index()]
    }

    pub fn block_len(&self, l: ElementId) -> usize {
        1 << self.lifts[l.index()].len()
    }

    /// The base element and subset mask of minor `i`.
    pub fn decode(&self, i: usize) -> (ElementId, u64) {
        let b = self.offsets.partition_point(|&o| o <= i) - 1;
        (ElementId::new(b), (i - self.offsets[b]) as u64)
    }

    pub fn minor(&self, i: usize) -> Minor {
        let (b, mask) = self.decode(i);
        let gens = GenSet::from_bits(mask)
            .iter()
            .map(|k| self.lifts[b.index()][k])
            .collect();
        Minor::from_parts(self.host, b, gens)
    }

    /// Index of a minor whose generators are lifts of `base`.
    pub fn index_of_parts(&self, base: ElementId, gens: &[ElementId]) -> Option<usize> {
        let lifts = &self.lifts[base.index()];
        let mut mask = 0u64;
        for h in gens {
            mask |= 1 << lifts.binary_search(h).ok()?;
        }
        Some(self.offsets[base.index()] + mask as usize)
    }

    pub fn index_of(&self, m: &Minor) -> Option<usize> {
        if m.host != self.host {
            return None;
        }
        self.index_of_parts(m.base, &m.gens)
    }

    pub fn iter(&self) -> impl Iterator<Item = Minor> + '_ {
        (0..self.total).map(|i| self.minor(i))
    }
}

/// All minors of `lat`, grouped by minimum.
pub fn enumerate_minors(lat: &GenLattice, budget: u128) -> Result<Vec<Minor>> {
    Ok(MinorTable::new(lat, budget)?.iter().collect())
}

/// Why two minors have no join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JoinFailure {
    /// The generator sets over `z_1 ∧ z_2` whose deletion lies above both
    /// minors have no least member.
    NoLeastGeneratorSet,
    /// Some common upper bound does not contain `z_1 ∧ z_2`.
    UpperBoundMissesMeet,
}

/// Join of two minors in the minor poset. `upper_bounds` must yield every
/// common upper bound.
///
/// With `ℓ0 = z_1 ∧ z_2`, the join exists iff every common upper bound
/// contains `ℓ0` and the family of sets `J` of lifts of `ℓ0` with
/// `⟨J|ℓ0⟩` above both minors has a least member, which is then the
/// generator set of the join. The family is closed upwards, so its
/// intersection is the set of lifts `j` for which dropping `j` from all
/// lifts leaves the family.
pub fn lemma_join<I>(
    lat: &GenLattice,
    m1: &Minor,
    m2: &Minor,
    upper_bounds: I,
) -> std::result::Result<Minor, JoinFailure>
where
    I: IntoIterator<Item = Minor>,
{
    let l0 = lat.meet(m1.base, m2.base);
    let lifts = lat.lifts(l0);
    let host = lat.host_id();
    let above_both = |gens: Vec<ElementId>| {
        let cand = Minor::from_parts(host, l0, gens);
        (is_minor_of_unchecked(lat, m1, &cand) && is_minor_of_unchecked(lat, m2, &cand))
            .then_some(cand)
    };
    let least: Vec<ElementId> = (0..lifts.len())
        .filter(|&k| {
            let mut rest = lifts.clone();
            rest.remove(k);
            above_both(rest).is_none()
        })
        .map(|k| lifts[k])
        .collect();
    let join = above_both(least).ok_or(JoinFailure::NoLeastGeneratorSet)?;
    for ub in upper_bounds {
        if !ub.contains_element(lat, l0) {
            return Err(JoinFailure::UpperBoundMissesMeet);
        }
    }
    Ok(join)
}

/// Join of two minors; common upper bounds are found by scanning every minor.
pub fn minor_join(lat: &GenLattice, m1: &Minor, m2: &Minor, budget: u128) -> Result<Minor> {
    m1.check_host(lat)?;
    m2.check_host(lat)?;
    let table = MinorTable::new(lat, budget)?;
    let ubs = table
        .iter()
        .filter(|m| is_minor_of_unchecked(lat, m1, m) && is_minor_of_unchecked(lat, m2, m));
    lemma_join(lat, m1, m2, ubs).map_err(|f| Error::NoJoin(format!("{f:?}")))
}

/// An order minor `(I, J)` of a poset: disjoint element sets with `J` a
/// lower order ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMinor {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

/// The lattice of lower order ideals of `p`; generator `i` is the principal
/// ideal of element `i`.
pub fn ideal_lattice(p: &FinitePoset) -> Result<GenLattice> {
    let n = p.len();
    if n > crate::genset::MAX_GENERATORS {
        return Err(Error::TooManyGenerators(n, crate::genset::MAX_GENERATORS));
    }
    let down: Vec<GenSet> = (0..n).map(|x| p.down_set(x).ones().collect()).collect();
    let mut lat = GenLattice::from_closure(n, |s| {
        s.iter().fold(GenSet::EMPTY, |acc, x| acc.union(down[x]))
    })?;
    lat.set_names(p.labels().to_vec());
    Ok(lat)
}

/// `((L, irr L)|_{I ∪ J}) / J` for the ideal lattice `lat` of `p`, checked to
/// be isomorphic to the ideal lattice of the subposet on `I`.
pub fn order_minor_to_minor(p: &FinitePoset, lat: &GenLattice, om: &OrderMinor) -> Result<Minor> {
    let n = p.len();
    if lat.n() != n {
        return Err(Error::HostMismatch);
    }
    for &x in om.i.iter().chain(&om.j) {
        if x >= n {
            return Err(Error::BadIndex { index: x, len: n });
        }
    }
    if om.i.iter().any(|x| om.j.contains(x)) {
        return Err(Error::NotAnOrderMinor("I and J intersect".into()));
    }
    for &y in &om.j {
        if p.down_set(y).ones().any(|x| !om.j.contains(&x)) {
            return Err(Error::NotAnOrderMinor(
                "J is not a lower order ideal".into(),
            ));
        }
    }
    let whole = Minor::whole(lat);
    let keep: Vec<usize> = om.i.iter().chain(&om.j).copied().collect();
    let restricted = whole.apply_by_labels(lat, MinorOp::Restrict, &keep)?;
    let minor = restricted.apply_by_labels(lat, MinorOp::Contract, &om.j)?;

    let mut members = om.i.clone();
    members.sort_unstable();
    let sub = ideal_lattice(&p.induced(&members))?;
    let expanded = minor.expand(lat)?;
    if !expanded.lattice.is_isomorphic(&sub) {
        return Err(Error::Invariant(
            "order minor is not isomorphic to the ideal lattice of I".into(),
        ));
    }
    Ok(minor)
}

/// Every order minor of `p`.
pub fn order_minors(p: &FinitePoset) -> Vec<OrderMinor> {
    let n = p.len();
    assert!(n < 32, "order minor enumeration is exponential");
    let mut out = Vec::new();
    for jm in 0u64..1 << n {
        let j: Vec<usize> = (0..n).filter(|&x| jm >> x & 1 == 1).collect();
        let is_ideal = j
            .iter()
            .all(|&y| p.down_set(y).ones().all(|x| jm >> x & 1 == 1));
        if !is_ideal {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|&x| jm >> x & 1 == 0).collect();
        for im in 0u64..1 << rest.len() {
            let i = (0..rest.len())
                .filter(|&k| im >> k & 1 == 1)
                .map(|k| rest[k])
                .collect();
            out.push(OrderMinor { i, j: j.clone() });
        }
    }
    out
}
