//! Finite lattices together with a distinguished join-generating set.
//!
//! Every element is stored as the set of generator indices lying below it.
//! Two elements are equal exactly when these sets agree, the order is set
//! inclusion, and the meet of two elements is the element whose set is the
//! intersection of theirs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::genset::{GenSet, MAX_GENERATORS};
use crate::poset::FinitePoset;

/// Index of an element inside one [`GenLattice`]. Ids are assigned in a
/// linear extension of the order, so the bottom is always id 0 and the top is
/// always the last id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn new(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

/// Full join tables are materialised up to this many elements; larger
/// lattices fold joins over the generator step table.
const JOIN_TABLE_LIMIT: usize = 1024;
/// Meet existence is verified pairwise up to this many elements.
const MEET_CHECK_LIMIT: usize = 4096;

/// A generator enriched lattice `(L, G)`.
#[derive(Clone)]
pub struct GenLattice {
    id: u64,
    n: usize,
    sets: Vec<GenSet>,
    index: HashMap<GenSet, ElementId>,
    generators: Vec<ElementId>,
    /// `step[e * n + i]` is `e ∨ g_i`.
    step: Vec<ElementId>,
    join_table: Option<Vec<ElementId>>,
    upper_covers: Vec<Vec<ElementId>>,
    lower_covers: Vec<Vec<ElementId>>,
    names: Vec<String>,
}

impl fmt::Debug for GenLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenLattice")
            .field("n", &self.n)
            .field("elements", &self.sets)
            .finish()
    }
}

impl GenLattice {
    /// Builds the lattice of closed sets of `closure` on generator indices
    /// `0..n`. Elements are discovered by closing the empty set and then
    /// repeatedly adjoining single generators.
    pub fn from_closure<F>(n: usize, closure: F) -> Result<Self>
    where
        F: Fn(GenSet) -> GenSet,
    {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n, MAX_GENERATORS));
        }
        let mut checked: HashSet<GenSet> = HashSet::new();
        let close = |s: GenSet, checked: &mut HashSet<GenSet>| -> Result<GenSet> {
            let t = closure(s);
            if !s.is_subset(t) {
                return Err(Error::NonClosure {
                    set: s.to_one_based(),
                    reason: format!("closure {t} does not contain the input"),
                });
            }
            if !t.is_subset(GenSet::full(n)) {
                return Err(Error::NonClosure {
                    set: s.to_one_based(),
                    reason: format!("closure {t} leaves the generator range"),
                });
            }
            if checked.insert(t) && closure(t) != t {
                return Err(Error::NonClosure {
                    set: t.to_one_based(),
                    reason: "closure is not idempotent".into(),
                });
            }
            Ok(t)
        };

        let bottom = close(GenSet::EMPTY, &mut checked)?;
        if let Some(i) = bottom.iter().next() {
            return Err(Error::GeneratorIsBottom(i));
        }
        let mut gen_sets = Vec::with_capacity(n);
        for i in 0..n {
            let s = close(GenSet::singleton(i), &mut checked)?;
            if let Some(j) = gen_sets.iter().position(|&t| t == s) {
                return Err(Error::DuplicateGenerator(j, i));
            }
            gen_sets.push(s);
        }

        let mut found: HashSet<GenSet> = HashSet::new();
        found.insert(bottom);
        let mut queue = vec![bottom];
        while let Some(e) = queue.pop() {
            for i in GenSet::full(n).difference(e).iter() {
                let t = close(e.with(i), &mut checked)?;
                if found.insert(t) {
                    queue.push(t);
                }
            }
        }
        let mut sets: Vec<GenSet> = found.into_iter().collect();
        sets.sort_by_key(|s| (s.len(), s.bits()));

        for &t in &sets {
            let below: GenSet = (0..n).filter(|&i| gen_sets[i].is_subset(t)).collect();
            if below != t {
                return Err(Error::NonClosure {
                    set: t.to_one_based(),
                    reason: "closure is not monotone".into(),
                });
            }
        }
        Self::assemble(n, sets, None)
    }

    /// Assembles a lattice from a complete family of closed sets, sorted by
    /// `(len, bits)`.
    fn assemble(n: usize, sets: Vec<GenSet>, names: Option<Vec<String>>) -> Result<Self> {
        let index: HashMap<GenSet, ElementId> = sets
            .iter()
            .enumerate()
            .map(|(k, &s)| (s, ElementId::new(k)))
            .collect();
        let size = sets.len();
        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            // the generator g_i is the smallest closed set containing i
            let g = sets.iter().position(|s| s.contains(i)).ok_or_else(|| {
                Error::NotALattice(format!("no element contains generator {}", i + 1))
            })?;
            generators.push(ElementId::new(g));
        }
        let mut step = vec![ElementId::new(0); size * n];
        for (e, &s) in sets.iter().enumerate() {
            for i in 0..n {
                let target = sets[generators[i].index()].union(s);
                // smallest closed superset; it must be the closure of the union
                let id = closure_lookup(&sets, &index, target).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "no least upper bound for {} and generator {}",
                        s,
                        i + 1
                    ))
                })?;
                step[e * n + i] = id;
            }
        }
        let mut lat = GenLattice {
            id: NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed),
            n,
            sets,
            index,
            generators,
            step,
            join_table: None,
            upper_covers: Vec::new(),
            lower_covers: Vec::new(),
            names: names.unwrap_or_else(|| (1..=n).map(|i| i.to_string()).collect()),
        };
        lat.compute_covers();
        if size <= MEET_CHECK_LIMIT {
            for a in 0..size {
                for b in a + 1..size {
                    let m = lat.sets[a].intersection(lat.sets[b]);
                    if !lat.index.contains_key(&m) {
                        return Err(Error::NotALattice(format!(
                            "elements {} and {} have no meet",
                            lat.sets[a], lat.sets[b]
                        )));
                    }
                }
            }
        }
        if size <= JOIN_TABLE_LIMIT {
            let mut table = vec![ElementId::new(0); size * size];
            for a in 0..size {
                for b in 0..size {
                    table[a * size + b] = lat.join_by_steps(ElementId::new(a), ElementId::new(b));
                }
            }
            lat.join_table = Some(table);
        }
        Ok(lat)
    }

    fn compute_covers(&mut self) {
        let size = self.sets.len();
        let upper: Vec<Vec<ElementId>> = (0..size)
            .map(|a| {
                let mut cands: Vec<ElementId> = (0..self.n)
                    .map(|i| self.step[a * self.n + i])
                    .filter(|&b| b.index() != a)
                    .collect();
                cands.sort();
                cands.dedup();
                let minimal: Vec<ElementId> = cands
                    .iter()
                    .copied()
                    .filter(|&b| {
                        !cands.iter().any(|&c| {
                            c != b && self.sets[c.index()].is_subset(self.sets[b.index()])
                        })
                    })
                    .collect();
                minimal
            })
            .collect();
        let mut lower = vec![Vec::new(); size];
        for (a, ups) in upper.iter().enumerate() {
            for &b in ups {
                lower[b.index()].push(ElementId::new(a));
            }
        }
        self.upper_covers = upper;
        self.lower_covers = lower;
    }

    /// Rebuilds a lattice from its closed-set family (any order).
    pub fn from_closed_sets(n: usize, mut sets: Vec<GenSet>) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n, MAX_GENERATORS));
        }
        sets.sort_by_key(|s| (s.len(), s.bits()));
        sets.dedup();
        if sets.first() != Some(&GenSet::EMPTY) {
            return Err(Error::NotALattice("the empty set must be closed".into()));
        }
        let family: HashSet<GenSet> = sets.iter().copied().collect();
        Self::from_closure(n, |s| {
            // smallest member containing s; the caller's family must be
            // intersection closed for this to be well defined
            sets.iter()
                .copied()
                .filter(|t| s.is_subset(*t))
                .fold(GenSet::full(n), |acc, t| acc.intersection(t))
        })
        .and_then(|lat| {
            if lat.sets.len() != family.len() || lat.sets.iter().any(|s| !family.contains(s)) {
                Err(Error::NotALattice(
                    "closed-set family is not intersection closed".into(),
                ))
            } else {
                Ok(lat)
            }
        })
    }

    /// `(B_n, irr(B_n))`.
    pub fn boolean(n: usize) -> Result<Self> {
        Self::from_closure(n, |s| s)
    }

    /// The length-`n` chain `0 < g_1 < ... < g_n` with all non-bottom
    /// elements as generators.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_closure(n, |s| match s.iter().last() {
            Some(m) => GenSet::full(m + 1),
            None => GenSet::EMPTY,
        })
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.n, "one name per generator");
        self.names = names;
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Identity shared by clones; distinct for independently built lattices.
    pub fn host_id(&self) -> u64 {
        self.id
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.sets.len()).map(ElementId::new)
    }

    pub fn bottom(&self) -> ElementId {
        ElementId::new(0)
    }

    pub fn top(&self) -> ElementId {
        ElementId::new(self.sets.len() - 1)
    }

    /// The element `g_i` (0-based `i`).
    pub fn generator(&self, i: usize) -> ElementId {
        self.generators[i]
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    /// Generator indices below `e`.
    pub fn closed_set(&self, e: ElementId) -> GenSet {
        self.sets[e.index()]
    }

    pub fn closed_sets(&self) -> &[GenSet] {
        &self.sets
    }

    pub fn element_by_set(&self, s: GenSet) -> Option<ElementId> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        e.index() < self.sets.len()
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.sets[a.index()].is_subset(self.sets[b.index()])
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    /// `e ∨ g_i`.
    pub fn join_generator(&self, e: ElementId, i: usize) -> ElementId {
        self.step[e.index() * self.n + i]
    }

    fn join_by_steps(&self, a: ElementId, b: ElementId) -> ElementId {
        let missing = self.sets[b.index()].difference(self.sets[a.index()]);
        missing
            .iter()
            .fold(a, |acc, i| self.step[acc.index() * self.n + i])
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.join_table {
            Some(t) => t[a.index() * self.sets.len() + b.index()],
            None => self.join_by_steps(a, b),
        }
    }

    pub fn join_all<I: IntoIterator<Item = ElementId>>(&self, items: I) -> ElementId {
        items
            .into_iter()
            .fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// Join of the generators indexed by `s`.
    pub fn join_of_generators(&self, s: GenSet) -> ElementId {
        s.iter()
            .fold(self.bottom(), |acc, i| self.join_generator(acc, i))
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        let s = self.sets[a.index()].intersection(self.sets[b.index()]);
        self.index[&s]
    }

    pub fn upper_covers(&self, e: ElementId) -> &[ElementId] {
        &self.upper_covers[e.index()]
    }

    pub fn lower_covers(&self, e: ElementId) -> &[ElementId] {
        &self.lower_covers[e.index()]
    }

    pub fn covers(&self, a: ElementId, b: ElementId) -> bool {
        self.upper_covers[a.index()].contains(&b)
    }

    /// Distinct elements `g ∨ ℓ ≠ ℓ`, sorted by id.
    pub fn lifts(&self, l: ElementId) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = (0..self.n)
            .map(|i| self.join_generator(l, i))
            .filter(|&e| e != l)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Number of generators of the contraction `(L,G)/ℓ`.
    pub fn alpha(&self, l: ElementId) -> usize {
        self.lifts(l).len()
    }

    /// Join-irreducible elements and whether they coincide with the
    /// generating set.
    pub fn irreducibles(&self) -> (Vec<ElementId>, bool) {
        let irr: Vec<ElementId> = self
            .elements()
            .filter(|&e| self.lower_covers(e).len() == 1)
            .collect();
        let mut gens = self.generators.clone();
        gens.sort();
        let minimal = gens == irr;
        (irr, minimal)
    }

    /// `⟨H|z⟩`: the sub-join-semilattice generated by `h` over base `z`.
    pub fn generated_sub(&self, h: &[ElementId], z: ElementId) -> Result<SubLattice> {
        for (k, &e) in h.iter().enumerate() {
            if !self.lt(z, e) {
                return Err(Error::NotAbove(e.index()));
            }
            if let Some(j) = h[..k].iter().position(|&f| f == e) {
                return Err(Error::DuplicateGenerator(j, k));
            }
        }
        let sub = GenLattice::from_closure(h.len(), |x| {
            let top = x.iter().fold(z, |acc, i| self.join(acc, h[i]));
            (0..h.len()).filter(|&i| self.leq(h[i], top)).collect()
        })?;
        let embedding = sub
            .sets
            .iter()
            .map(|s| s.iter().fold(z, |acc, i| self.join(acc, h[i])))
            .collect();
        Ok(SubLattice {
            lattice: sub,
            host: self.id,
            embedding,
        })
    }

    /// `(L×K, (G×{0̂_K}) ∪ ({0̂_L}×H))`. Generators of `self` come first.
    pub fn cartesian_product(&self, other: &GenLattice) -> Result<GenLattice> {
        let n1 = self.n;
        let n = n1 + other.n;
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n, MAX_GENERATORS));
        }
        let mut lat = GenLattice::from_closure(n, |s| {
            let left = GenSet::from_bits(s.bits() & GenSet::full(n1).bits());
            let right = GenSet::from_bits(s.bits() >> n1);
            let l = self.sets[self.join_of_generators(left).index()];
            let r = other.sets[other.join_of_generators(right).index()];
            GenSet::from_bits(l.bits() | (r.bits() << n1))
        })?;
        let names = self
            .names
            .iter()
            .map(|s| format!("L{s}"))
            .chain(other.names.iter().map(|s| format!("R{s}")))
            .collect();
        lat.set_names(names);
        Ok(lat)
    }

    /// `pyr(L,G) = (L,G) × (B_1, irr(B_1))`.
    pub fn pyramid(&self) -> Result<GenLattice> {
        self.cartesian_product(&GenLattice::boolean(1)?)
    }

    /// Adjoins a new maximum `m > 1̂` as an extra generator (index `n`).
    pub fn adjoin_max(&self) -> Result<GenLattice> {
        let n = self.n;
        let mut lat = GenLattice::from_closure(n + 1, |s| {
            if s.contains(n) {
                GenSet::full(n + 1)
            } else {
                self.sets[self.join_of_generators(s).index()]
            }
        })?;
        let mut names = self.names.clone();
        names.push("m".into());
        lat.set_names(names);
        Ok(lat)
    }

    /// Hasse diagram as a poset, labelled by closed sets.
    pub fn to_poset(&self) -> FinitePoset {
        let covers: Vec<(usize, usize)> = self
            .elements()
            .flat_map(|a| {
                self.upper_covers(a)
                    .iter()
                    .map(move |b| (a.index(), b.index()))
            })
            .collect();
        let labels = self.sets.iter().map(|s| s.to_string()).collect();
        FinitePoset::from_covers(labels, &covers).expect("lattice Hasse diagram is acyclic")
    }

    /// Finds a strong bijection onto `other`, returned as the generator
    /// permutation `i ↦ perm[i]`.
    pub fn isomorphism(&self, other: &GenLattice) -> Option<Vec<usize>> {
        if self.n != other.n || self.len() != other.len() {
            return None;
        }
        let sig = |lat: &GenLattice, i: usize| {
            let mut sizes: Vec<usize> = lat
                .sets
                .iter()
                .filter(|s| s.contains(i))
                .map(|s| s.len())
                .collect();
            sizes.sort();
            (lat.sets[lat.generators[i].index()].len(), sizes)
        };
        let sa: Vec<_> = (0..self.n).map(|i| sig(self, i)).collect();
        let sb: Vec<_> = (0..other.n).map(|i| sig(other, i)).collect();
        let mut perm = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.iso_search(other, &sa, &sb, 0, &mut perm, &mut used) {
            Some(perm)
        } else {
            None
        }
    }

    fn iso_search<S: PartialEq>(
        &self,
        other: &GenLattice,
        sa: &[S],
        sb: &[S],
        i: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == self.n {
            return self
                .sets
                .iter()
                .all(|s| other.index.contains_key(&s.permute(perm)));
        }
        for j in 0..other.n {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            // pairwise joins must correspond
            let consistent = (0..i).all(|k| {
                let a = self.sets[self.join(self.generators[i], self.generators[k]).index()];
                let b = other.sets[other
                    .join(other.generators[j], other.generators[perm[k]])
                    .index()];
                a.len() == b.len()
                    && a.contains(k) == b.contains(perm[k])
                    && a.contains(i) == b.contains(j)
            });
            if !consistent {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            if self.iso_search(other, sa, sb, i + 1, perm, used) {
                return true;
            }
            used[j] = false;
        }
        perm[i] = usize::MAX;
        false
    }

    pub fn is_isomorphic(&self, other: &GenLattice) -> bool {
        self.isomorphism(other).is_some()
    }
}

fn closure_lookup(
    sets: &[GenSet],
    index: &HashMap<GenSet, ElementId>,
    s: GenSet,
) -> Option<ElementId> {
    if let Some(&e) = index.get(&s) {
        return Some(e);
    }
    // sets are sorted by size, so the first superset found is minimal in size;
    // it must also be contained in every other superset
    let first = sets.iter().position(|t| s.is_subset(*t))?;
    let cand = sets[first];
    if sets.iter().all(|t| !s.is_subset(*t) || cand.is_subset(*t)) {
        Some(ElementId::new(first))
    } else {
        None
    }
}

/// A generated sub-join-semilattice `⟨H|z⟩` together with its embedding into
/// the host lattice.
#[derive(Clone, Debug)]
pub struct SubLattice {
    pub lattice: GenLattice,
    pub host: u64,
    /// Host element for each element of `lattice`.
    pub embedding: Vec<ElementId>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> GenSet {
        v.iter().map(|i| i - 1).collect()
    }

    /// Π_4 as the lattice of flats of K_4; edge order 12,13,14,23,24,34.
    fn pi4() -> GenLattice {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        GenLattice::from_closure(6, |s| {
            let mut comp = [0usize, 1, 2, 3];
            for _ in 0..4 {
                for i in s.iter() {
                    let (a, b) = edges[i];
                    let m = comp[a].min(comp[b]);
                    comp[a] = m;
                    comp[b] = m;
                }
            }
            (0..6)
                .filter(|&i| comp[edges[i].0] == comp[edges[i].1])
                .collect()
        })
        .unwrap()
    }

    #[test]
    fn boolean_two() {
        let b2 = GenLattice::boolean(2).unwrap();
        assert_eq!(b2.len(), 4);
        let j = b2.join(b2.generator(0), b2.generator(1));
        assert_eq!(b2.closed_set(j), set(&[1, 2]));
        assert_eq!(b2.meet(b2.generator(0), b2.generator(1)), b2.bottom());
        let a = b2.generator(0);
        assert_eq!(b2.join(a, a), a);
    }

    #[test]
    fn chain_closure() {
        let c = GenLattice::from_closure(2, |s| if s.contains(1) { GenSet::full(2) } else { s })
            .unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.lt(c.generator(0), c.generator(1)));
    }

    #[test]
    fn partition_lattice_counts_and_meet() {
        let p = pi4();
        assert_eq!(p.len(), 15);
        // 12/3/4 ∨ 1/23/4 = 123/4
        let j = p.join(p.generator(0), p.generator(3));
        assert_eq!(p.closed_set(j), set(&[1, 2, 4]));
        // 123/4 ∧ 134/2 = 13/2/4
        let a = p.element_by_set(set(&[1, 2, 4])).unwrap();
        let b = p.element_by_set(set(&[2, 3, 6])).unwrap();
        assert_eq!(p.meet(a, b), p.generator(1));
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            GenLattice::from_closure(2, |_| GenSet::EMPTY),
            Err(Error::NonClosure { .. })
        ));
        assert!(matches!(
            GenLattice::from_closure(2, |s| s.with(0)),
            Err(Error::GeneratorIsBottom(0))
        ));
        assert!(matches!(
            GenLattice::from_closure(2, |s| if s.is_empty() { s } else { GenSet::full(2) }),
            Err(Error::DuplicateGenerator(0, 1))
        ));
        assert!(matches!(
            GenLattice::from_closure(65, |s| s),
            Err(Error::TooManyGenerators(65, 64))
        ));
    }

    #[test]
    fn generated_sub_examples() {
        let b3 = GenLattice::boolean(3).unwrap();
        let whole = b3.generated_sub(b3.generators(), b3.bottom()).unwrap();
        assert!(whole.lattice.is_isomorphic(&b3));
        let point = b3.generated_sub(&[], b3.top()).unwrap();
        assert_eq!(point.lattice.len(), 1);
        assert_eq!(point.embedding, vec![b3.top()]);
        assert!(matches!(
            b3.generated_sub(&[b3.generator(0)], b3.generator(0)),
            Err(Error::NotAbove(_))
        ));
        // a < g gives the 3-chain
        let c = GenLattice::chain(3).unwrap();
        let sub = c
            .generated_sub(&[c.generator(0), c.generator(2)], c.bottom())
            .unwrap();
        assert!(sub.lattice.is_isomorphic(&GenLattice::chain(2).unwrap()));
    }

    #[test]
    fn irreducibles_examples() {
        let b3 = GenLattice::boolean(3).unwrap();
        let (irr, min) = b3.irreducibles();
        assert_eq!(irr.len(), 3);
        assert!(min);
        let c = GenLattice::chain(2).unwrap();
        assert_eq!(c.irreducibles().0, vec![c.generator(0), c.generator(1)]);
        // (B_2, {j, k, 1̂})
        let d =
            GenLattice::from_closed_sets(3, vec![set(&[]), set(&[1]), set(&[2]), set(&[1, 2, 3])])
                .unwrap();
        let (irr, min) = d.irreducibles();
        assert_eq!(irr, vec![d.generator(0), d.generator(1)]);
        assert!(!min);
    }

    #[test]
    fn products() {
        let b1 = GenLattice::boolean(1).unwrap();
        let b2 = b1.cartesian_product(&b1).unwrap();
        assert!(b2.is_isomorphic(&GenLattice::boolean(2).unwrap()));
        let c3 = GenLattice::chain(2).unwrap().adjoin_max().unwrap();
        assert_eq!(c3.n(), 3);
        assert!(c3.is_isomorphic(&GenLattice::chain(3).unwrap()));
        let point = GenLattice::boolean(0).unwrap();
        assert!(point.adjoin_max().unwrap().is_isomorphic(&b1));
    }

    #[test]
    fn not_a_lattice_family() {
        // {1},{2} have two minimal upper bounds {1,2,3} and {1,2,4}
        let r = GenLattice::from_closed_sets(
            4,
            vec![
                set(&[]),
                set(&[1]),
                set(&[2]),
                set(&[3]),
                set(&[4]),
                set(&[1, 2, 3]),
                set(&[1, 2, 4]),
                set(&[1, 2, 3, 4]),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn join_matches_least_upper_bound_search() {
        let p = pi4();
        for a in p.elements() {
            for b in p.elements() {
                let ubs: Vec<ElementId> = p
                    .elements()
                    .filter(|&u| p.leq(a, u) && p.leq(b, u))
                    .collect();
                let lub: Vec<ElementId> = ubs
                    .iter()
                    .copied()
                    .filter(|&u| ubs.iter().all(|&v| p.leq(u, v)))
                    .collect();
                assert_eq!(lub, vec![p.join(a, b)]);
                let lbs: Vec<ElementId> = p
                    .elements()
                    .filter(|&l| p.leq(l, a) && p.leq(l, b))
                    .collect();
                assert_eq!(p.join_all(lbs), p.meet(a, b));
            }
        }
    }
}
