//! Strong maps, their factorization into elementary maps, induced maps of
//! minor posets and the zipping construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::ingestion::{diagram_edges, load, LatticeSpec};
use crate::lattice::{ElementId, GenLattice};
use crate::minor_poset::MinorPoset;
use crate::minors::{is_minor_of_unchecked, MinorTable};
use crate::poset::{FinitePoset, StructureReport};
use crate::words::{cd_index, CdPolynomial};

/// A join-preserving map sending generators to generators or `0̂`.
#[derive(Clone, Debug)]
pub struct StrongMap {
    source: Arc<GenLattice>,
    target: Arc<GenLattice>,
    images: Vec<ElementId>,
    surjective: bool,
}

impl StrongMap {
    /// Checks a raw map given by the image of every source element.
    pub fn validate(
        source: Arc<GenLattice>,
        target: Arc<GenLattice>,
        images: Vec<ElementId>,
    ) -> Result<StrongMap> {
        if images.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "{} images given for {} source elements",
                images.len(),
                source.len()
            )));
        }
        if let Some(&e) = images.iter().find(|e| e.index() >= target.len()) {
            return Err(Error::BadIndex {
                index: e.index(),
                len: target.len(),
            });
        }
        if images[source.bottom().index()] != target.bottom() {
            return Err(Error::InvalidMap(
                "the minimum must map to the minimum".into(),
            ));
        }
        let f = |e: ElementId| images[e.index()];
        for a in source.elements() {
            for b in source.elements().filter(|&b| b > a) {
                if f(source.join(a, b)) != target.join(f(a), f(b)) {
                    return Err(Error::NotJoinPreserving(a.index(), b.index()));
                }
            }
        }
        let mut hit = vec![false; target.n()];
        for (i, &g) in source.generators().iter().enumerate() {
            let img = f(g);
            if img == target.bottom() {
                continue;
            }
            match target.generators().iter().position(|&h| h == img) {
                Some(j) => hit[j] = true,
                None => return Err(Error::GeneratorImageViolation(i)),
            }
        }
        let surjective = hit.iter().all(|&h| h);
        Ok(StrongMap {
            source,
            target,
            images,
            surjective,
        })
    }

    /// The map determined by generator images: `images[i]` is the 1-based
    /// index of the target generator hit by source generator `i`, or 0 for
    /// the minimum.
    pub fn from_generator_images(
        source: Arc<GenLattice>,
        target: Arc<GenLattice>,
        gen_images: &[usize],
    ) -> Result<StrongMap> {
        if gen_images.len() != source.n() {
            return Err(Error::InvalidMap(format!(
                "{} generator images given for {} generators",
                gen_images.len(),
                source.n()
            )));
        }
        for &j in gen_images {
            if j > target.n() {
                return Err(Error::BadIndex {
                    index: j,
                    len: target.n(),
                });
            }
        }
        let img = |i: usize| match gen_images[i] {
            0 => target.bottom(),
            j => target.generator(j - 1),
        };
        let images = source
            .elements()
            .map(|e| target.join_all(source.closed_set(e).iter().map(img)))
            .collect();
        StrongMap::validate(source, target, images)
    }

    pub fn identity(lat: Arc<GenLattice>) -> StrongMap {
        let images = lat.elements().collect();
        StrongMap {
            source: lat.clone(),
            target: lat,
            images,
            surjective: true,
        }
    }

    pub fn source(&self) -> &Arc<GenLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GenLattice> {
        &self.target
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    pub fn apply(&self, e: ElementId) -> ElementId {
        self.images[e.index()]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_identity(&self) -> bool {
        self.source.host_id() == self.target.host_id()
            && self.images.iter().enumerate().all(|(i, e)| e.index() == i)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &StrongMap) -> Result<StrongMap> {
        if self.target.host_id() != g.source.host_id() {
            return Err(Error::HostMismatch);
        }
        let images = self.images.iter().map(|&e| g.apply(e)).collect();
        StrongMap::validate(self.source.clone(), g.target.clone(), images)
    }

    /// Preimages of each target element with more than one element.
    pub fn nontrivial_fibers(&self) -> Vec<Vec<ElementId>> {
        let mut fibers: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
        for e in self.source.elements() {
            fibers.entry(self.apply(e)).or_default().push(e);
        }
        fibers.into_values().filter(|v| v.len() > 1).collect()
    }

    /// For a map identifying exactly two elements `x < y`, the pair.
    pub fn elementary_fiber(&self) -> Option<(ElementId, ElementId)> {
        match self.nontrivial_fibers().as_slice() {
            [pair] if pair.len() == 2 => Some((pair[0], pair[1])),
            _ => None,
        }
    }

    pub fn to_spec(&self) -> MapSpec {
        MapSpec {
            source: crate::ingestion::save(&self.source),
            target: crate::ingestion::save(&self.target),
            generator_images: self
                .source
                .generators()
                .iter()
                .map(|&g| {
                    let img = self.apply(g);
                    self.target
                        .generators()
                        .iter()
                        .position(|&h| h == img)
                        .map_or(0, |j| j + 1)
                })
                .collect(),
        }
    }
}

/// File format for strong maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: LatticeSpec,
    pub target: LatticeSpec,
    /// 1-based target generator per source generator, 0 for the minimum.
    pub generator_images: Vec<usize>,
}

impl MapSpec {
    pub fn load(&self) -> Result<StrongMap> {
        let source = Arc::new(load(&self.source)?);
        let target = Arc::new(load(&self.target)?);
        StrongMap::from_generator_images(source, target, &self.generator_images)
    }
}

/// `B_n → L`, sending a set of generators to its join.
pub fn canonical_strong_map(lat: &Arc<GenLattice>) -> Result<StrongMap> {
    let cube = Arc::new(GenLattice::boolean(lat.n())?);
    let images = cube
        .elements()
        .map(|e| lat.join_of_generators(cube.closed_set(e)))
        .collect();
    StrongMap::validate(cube, lat.clone(), images)
}

/// The edges `(ℓ, ℓ ∨ g)` of the diagram, ordered by `(ℓ, m) ≤ (a ∨ ℓ, a ∨ m)`.
#[derive(Clone, Debug)]
pub struct EdgePoset {
    pub edges: Vec<(ElementId, ElementId)>,
    pub poset: FinitePoset,
}

impl EdgePoset {
    pub fn new(lat: &GenLattice) -> Result<EdgePoset> {
        let edges: Vec<(ElementId, ElementId)> = diagram_edges(lat)
            .into_iter()
            .map(|(a, b, _)| (a, b))
            .collect();
        let index: BTreeMap<(ElementId, ElementId), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut up = vec![FixedBitSet::with_capacity(edges.len()); edges.len()];
        for (i, &(l, m)) in edges.iter().enumerate() {
            for a in lat.elements() {
                let e = (lat.join(a, l), lat.join(a, m));
                if let Some(&j) = index.get(&e) {
                    up[i].insert(j);
                }
            }
        }
        let labels = edges
            .iter()
            .map(|&(a, b)| format!("{}->{}", lat.closed_set(a), lat.closed_set(b)))
            .collect();
        Ok(EdgePoset {
            poset: FinitePoset::from_up_sets(labels, up)?,
            edges,
        })
    }
}

/// Quotient of `lat` by the join congruence with class ids `class`, and the
/// quotient element of every element of `lat`.
fn quotient(lat: &GenLattice, class: &[usize]) -> Result<(GenLattice, Vec<ElementId>)> {
    let bottom_class = class[lat.bottom().index()];
    let mut reps: Vec<(usize, ElementId, String)> = Vec::new();
    for (i, &g) in lat.generators().iter().enumerate() {
        let c = class[g.index()];
        if c != bottom_class && reps.iter().all(|r| r.0 != c) {
            reps.push((c, g, lat.generator_names()[i].clone()));
        }
    }
    let closed = |l: ElementId| -> GenSet {
        (0..reps.len())
            .filter(|&j| class[lat.join(reps[j].1, l).index()] == class[l.index()])
            .collect()
    };
    let mut q = GenLattice::from_closure(reps.len(), |s| {
        closed(lat.join_all(s.iter().map(|j| reps[j].1)))
    })?;
    q.set_names(reps.iter().map(|r| r.2.clone()).collect());
    let of: Vec<ElementId> = lat
        .elements()
        .map(|l| q.element_by_set(closed(l)).expect("closed set of a class"))
        .collect();
    let classes = {
        let mut c = class.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    if q.len() != classes {
        return Err(Error::Invariant(format!(
            "equivalence with {classes} classes is not a join congruence"
        )));
    }
    Ok((q, of))
}

/// Factors a strong surjection into maps each identifying exactly two
/// elements. Diagram edges inside fibers are merged from the top of a
/// linear extension of the edge poset down, so every prefix is an upper
/// ideal. The last map lands in the actual target.
pub fn factor_surjection(f: &StrongMap) -> Result<Vec<StrongMap>> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let lat = f.source();
    let mut edges: Vec<(ElementId, ElementId)> = diagram_edges(lat)
        .into_iter()
        .filter(|&(a, b, _)| f.apply(a) == f.apply(b))
        .map(|(a, b, _)| (a, b))
        .collect();
    edges.sort();
    edges.reverse();

    let mut parent: Vec<usize> = (0..lat.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let total = lat.len() - f.target().len();
    let mut merges = 0;
    let mut out = Vec::with_capacity(total);
    let mut current = lat.clone();
    let mut current_of: Vec<ElementId> = lat.elements().collect();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
        if ra == rb {
            continue;
        }
        parent[ra] = rb;
        merges += 1;
        let (next, next_of): (Arc<GenLattice>, Vec<ElementId>) = if merges == total {
            (
                f.target().clone(),
                lat.elements().map(|l| f.apply(l)).collect(),
            )
        } else {
            let class: Vec<usize> = (0..lat.len()).map(|v| find(&mut parent, v)).collect();
            let (q, of) = quotient(lat, &class)?;
            (Arc::new(q), of)
        };
        let mut images = vec![ElementId::new(0); current.len()];
        for l in lat.elements() {
            images[current_of[l.index()].index()] = next_of[l.index()];
        }
        out.push(StrongMap::validate(current, next.clone(), images)?);
        current = next;
        current_of = next_of;
        if merges == total {
            break;
        }
    }
    if merges != total {
        return Err(Error::Invariant(
            "fibers are not connected by diagram edges".into(),
        ));
    }
    if out.is_empty() && !f.is_identity() {
        out.push(f.clone());
    }
    Ok(out)
}

/// `F(⟨I|z⟩) = ⟨f(I) ∖ {f(z)} | f(z)⟩` on poset indices of the minor posets
/// (index 0 is `∅̂`).
#[derive(Clone, Debug)]
pub struct InducedMinorMap {
    pub source: MinorTable,
    pub target: MinorTable,
    pub map: Vec<usize>,
}

pub fn induced_minor_map(f: &StrongMap, budget: u128) -> Result<InducedMinorMap> {
    let source = MinorTable::new(f.source(), budget)?;
    let target = MinorTable::new(f.target(), budget)?;
    let mut map = Vec::with_capacity(source.len() + 1);
    map.push(0);
    for m in source.iter() {
        let z = f.apply(m.base());
        let mut gens: Vec<ElementId> = m
            .generators()
            .iter()
            .map(|&h| f.apply(h))
            .filter(|&h| h != z)
            .collect();
        gens.sort();
        gens.dedup();
        let t = target
            .index_of_parts(z, &gens)
            .ok_or_else(|| Error::Invariant("image of a minor is not a minor".into()))?;
        map.push(t + 1);
    }
    Ok(InducedMinorMap {
        source,
        target,
        map,
    })
}

impl InducedMinorMap {
    /// Order preservation checked on the covers of the source poset.
    pub fn preserves_order(&self, src: &FinitePoset, tgt: &FinitePoset) -> bool {
        src.cover_pairs()
            .into_iter()
            .all(|(a, b)| tgt.leq(self.map[a], self.map[b]))
    }

    /// Groups of source indices with a common image, when larger than one.
    pub fn nontrivial_fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (s, &t) in self.map.iter().enumerate() {
            fibers.entry(t).or_default().push(s);
        }
        fibers.into_values().filter(|v| v.len() > 1).collect()
    }
}

/// Elements `x, y` covered by `z`, to be identified with `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Zipper {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Zipper {
    pub fn check(&self, p: &FinitePoset) -> Result<()> {
        let Zipper { x, y, z } = *self;
        for v in [x, y, z] {
            if v >= p.len() {
                return Err(Error::BadIndex {
                    index: v,
                    len: p.len(),
                });
            }
        }
        if x == y {
            return Err(Error::NotAZipper("x and y coincide".into()));
        }
        let mut below: Vec<usize> = p.down_covers(z).to_vec();
        below.sort_unstable();
        let mut xy = vec![x, y];
        xy.sort_unstable();
        if below != xy {
            return Err(Error::NotAZipper(format!(
                "z covers {below:?}, not exactly x and y"
            )));
        }
        let strictly_below = |v: usize| {
            let mut s = p.down_set(v).clone();
            s.set(v, false);
            s
        };
        if strictly_below(x) != strictly_below(y) {
            return Err(Error::NotAZipper(
                "x and y have different elements below them".into(),
            ));
        }
        if p.join(x, y) != Some(z) {
            return Err(Error::NotAZipper("z is not the join of x and y".into()));
        }
        Ok(())
    }
}

/// Replaces `x, y, z` by one element `w` with `p ≤ w` iff `p ≤ z` and
/// `w ≤ p` iff `x ≤ p` or `y ≤ p`. Also returns the new index of every old
/// element.
pub fn zip(p: &FinitePoset, zipper: &Zipper) -> Result<(FinitePoset, Vec<usize>)> {
    zipper.check(p)?;
    let Zipper { x, y, z } = *zipper;
    let mut idx = vec![0usize; p.len()];
    let mut next = 0;
    for (v, slot) in idx.iter_mut().enumerate() {
        if v != x && v != y {
            *slot = next;
            next += 1;
        }
    }
    idx[x] = idx[z];
    idx[y] = idx[z];
    let mut labels = vec![String::new(); next];
    let mut up = vec![FixedBitSet::with_capacity(next); next];
    for v in (0..p.len()).filter(|&v| v != x && v != y) {
        let sources: &[usize] = if v == z {
            &[x, y]
        } else {
            std::slice::from_ref(&v)
        };
        for &s in sources {
            for q in p.up_set(s).ones() {
                up[idx[v]].insert(idx[q]);
            }
        }
        labels[idx[v]] = if v == z {
            format!("{}+{}+{}", p.label(x), p.label(y), p.label(z))
        } else {
            p.label(v).to_string()
        };
    }
    Ok((FinitePoset::from_up_sets(labels, up)?, idx))
}

/// `Ψ` of the interval `[a, b]` of `p`.
fn interval_cd(p: &FinitePoset, a: usize, b: usize) -> Result<CdPolynomial> {
    cd_index(&p.interval(a, b).0)
}

/// Whether the cd-index recurrence for one zip holds, with `after`
/// recomputed from scratch.
pub fn zip_recurrence_holds(
    before: &FinitePoset,
    psi_before: &CdPolynomial,
    zipper: &Zipper,
    psi_after: &CdPolynomial,
) -> Result<bool> {
    let (bot, top) = before.bounds()?;
    if zipper.z == top {
        Ok(psi_after.mul(&CdPolynomial::c()) == *psi_before)
    } else {
        let lower = interval_cd(before, bot, zipper.x)?;
        let upper = interval_cd(before, zipper.z, top)?;
        Ok(*psi_after == psi_before.sub(&lower.mul(&CdPolynomial::d()).mul(&upper)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZipStep {
    /// Index of the elementary map being realised.
    pub map_index: usize,
    /// Labels of `x`, `y` and `z` before the zip.
    pub zipper: [String; 3],
    pub size: usize,
    pub rank: Option<usize>,
    pub rank_dropped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<CdPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence_holds: Option<bool>,
    pub structure: StructureReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZipTrace {
    pub elementary_maps: usize,
    pub initial_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_psi: Option<CdPolynomial>,
    pub steps: Vec<ZipStep>,
    /// Poset index in `final_poset` of each element of the target's minor
    /// poset; a verified isomorphism.
    pub certificate: Vec<usize>,
    #[serde(skip)]
    pub final_poset: FinitePoset,
}

impl ZipTrace {
    /// Every intermediate poset is graded, thin and Eulerian, ranks drop
    /// exactly at zips of the maximum, and every tracked recurrence holds.
    pub fn all_checks_pass(&self) -> bool {
        self.steps.iter().all(|s| {
            s.structure.graded
                && s.structure.thin
                && s.structure.eulerian
                && s.recurrence_holds != Some(false)
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ZipOptions {
    pub budget: u128,
    /// Recompute `Ψ` after every zip and check the recurrences.
    pub track_cd: bool,
}

impl Default for ZipOptions {
    fn default() -> Self {
        ZipOptions {
            budget: crate::minors::DEFAULT_BUDGET,
            track_cd: true,
        }
    }
}

/// Transforms `M(source)` into a poset isomorphic to `M(target)` by zips,
/// one group of zips per elementary factor of `f`.
pub fn zipping_sequence(f: &StrongMap, opts: ZipOptions) -> Result<ZipTrace> {
    let maps = factor_surjection(f)?;
    let start = MinorPoset::build(f.source(), opts.budget)?;
    let mut poset = start.poset().clone();
    // poset index of every element of the current minor poset
    let mut pi: Vec<usize> = (0..poset.len()).collect();
    let mut psi = if opts.track_cd {
        Some(cd_index(&poset)?)
    } else {
        None
    };
    let initial_psi = psi.clone();
    let mut rank = poset.rank_of_top().ok();
    let mut steps = Vec::new();

    for (k, g) in maps.iter().enumerate() {
        let lat = g.source();
        let induced = induced_minor_map(g, opts.budget)?;
        let mut triples = Vec::new();
        for fiber in induced.nontrivial_fibers() {
            if fiber.len() != 3 || fiber.contains(&0) {
                return Err(Error::ZipperNotFound(format!(
                    "elementary map {k} has a fiber of size {}",
                    fiber.len()
                )));
            }
            let minors: Vec<_> = fiber.iter().map(|&s| induced.source.minor(s - 1)).collect();
            let top = (0..3)
                .find(|&t| (0..3).all(|u| is_minor_of_unchecked(lat, &minors[u], &minors[t])))
                .ok_or_else(|| Error::ZipperNotFound("fiber has no maximum".into()))?;
            let others: Vec<usize> = (0..3).filter(|&u| u != top).map(|u| fiber[u]).collect();
            let key = (
                minors[top].rank(),
                minors[top].base(),
                minors[top].generators().to_vec(),
            );
            triples.push((key, others[0], others[1], fiber[top]));
        }
        triples.sort();
        for (_, sx, sy, sz) in triples {
            let zipper = Zipper {
                x: pi[sx],
                y: pi[sy],
                z: pi[sz],
            };
            zipper
                .check(&poset)
                .map_err(|e| Error::ZipperNotFound(format!("map {k}: {e}")))?;
            let labels = [
                poset.label(zipper.x).to_string(),
                poset.label(zipper.y).to_string(),
                poset.label(zipper.z).to_string(),
            ];
            let at_top = Some(zipper.z) == poset.top();
            let (next, idx) = zip(&poset, &zipper)?;
            let next_psi = if opts.track_cd {
                Some(cd_index(&next)?)
            } else {
                None
            };
            let recurrence_holds = match (&psi, &next_psi) {
                (Some(before), Some(after)) => {
                    Some(zip_recurrence_holds(&poset, before, &zipper, after)?)
                }
                _ => None,
            };
            let structure = next.structure_report()?;
            let next_rank = next.rank_of_top().ok();
            let expected_rank = rank.map(|r| if at_top { r - 1 } else { r });
            let rank_ok = next_rank == expected_rank;
            for v in pi.iter_mut() {
                *v = idx[*v];
            }
            steps.push(ZipStep {
                map_index: k,
                zipper: labels,
                size: next.len(),
                rank: next_rank,
                rank_dropped: at_top,
                psi: next_psi.clone(),
                recurrence_holds,
                structure: StructureReport {
                    graded: structure.graded && rank_ok,
                    ..structure
                },
            });
            poset = next;
            psi = next_psi;
            rank = next_rank;
        }
        let mut next_pi = vec![usize::MAX; induced.target.len() + 1];
        for (s, &t) in induced.map.iter().enumerate() {
            if next_pi[t] == usize::MAX {
                next_pi[t] = pi[s];
            } else if next_pi[t] != pi[s] {
                return Err(Error::Invariant(format!(
                    "minors with a common image did not merge at step {k}"
                )));
            }
        }
        if next_pi.contains(&usize::MAX) {
            return Err(Error::Invariant(
                "induced minor map is not surjective".into(),
            ));
        }
        pi = next_pi;
    }

    let target = MinorPoset::build(f.target(), opts.budget)?;
    verify_certificate(target.poset(), &poset, &pi)?;
    Ok(ZipTrace {
        elementary_maps: maps.len(),
        initial_size: start.len(),
        initial_psi,
        steps,
        certificate: pi,
        final_poset: poset,
    })
}

/// Checks that `phi` is an isomorphism from `a` onto `b` by comparing covers.
fn verify_certificate(a: &FinitePoset, b: &FinitePoset, phi: &[usize]) -> Result<()> {
    let fail = |why: &str| {
        Err(Error::Invariant(format!(
            "zipping did not produce the target minor poset: {why}"
        )))
    };
    if a.len() != b.len() || phi.len() != a.len() {
        return fail("sizes differ");
    }
    let mut seen = vec![false; b.len()];
    for &v in phi {
        if v >= b.len() || std::mem::replace(&mut seen[v], true) {
            return fail("not a bijection");
        }
    }
    let ca = a.cover_pairs();
    if ca.len() != b.cover_pairs().len() {
        return fail("cover counts differ");
    }
    if ca
        .iter()
        .any(|&(x, y)| !b.up_covers(phi[x]).contains(&phi[y]))
    {
        return fail("a cover is not preserved");
    }
    Ok(())
}
