//! Finite posets given by their cover relations, with bitset order queries,
//! structural checks, products and isomorphism testing.

use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isomorphism search refuses posets larger than this.
pub const ISO_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    /// `up[x]` holds every `y >= x`.
    up: Vec<FixedBitSet>,
    /// `down[x]` holds every `y <= x`.
    down: Vec<FixedBitSet>,
    /// A linear extension of the order.
    topo: Vec<usize>,
    /// Length of the longest chain ending at each element.
    height: Vec<usize>,
}

/// Graded/thin/Eulerian summary of a bounded poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub graded: bool,
    pub thin: bool,
    pub eulerian: bool,
    /// Rank of the maximum, when graded.
    pub rank: Option<usize>,
    /// `μ(0̂, 1̂)`.
    pub mobius_bottom_top: i64,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<PosetJsonElement>,
    covers: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PosetJsonElement {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
}

impl FinitePoset {
    /// Builds the poset generated by the relations `a < b` for each pair.
    /// Redundant pairs are allowed; the stored covers are the transitive
    /// reduction.
    pub fn from_covers(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::BadIndex {
                    index: a.max(b),
                    len: n,
                });
            }
            if a == b {
                return Err(Error::Invariant(format!("relation {a} < {a} is reflexive")));
            }
            succ[a].push(b);
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::Invariant("order relation has a cycle".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &w in &succ[v] {
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        let mut up_covers = vec![Vec::new(); n];
        for v in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for &w in &succ[v] {
                let mut strict = up[w].clone();
                strict.set(w, false);
                implied.union_with(&strict);
            }
            up_covers[v] = succ[v]
                .iter()
                .copied()
                .filter(|&w| !implied.contains(w))
                .collect();
        }
        Ok(Self::from_parts(labels, up_covers, up, topo))
    }

    fn from_parts(
        labels: Vec<String>,
        up_covers: Vec<Vec<usize>>,
        up: Vec<FixedBitSet>,
        topo: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        let mut down_covers = vec![Vec::new(); n];
        for (a, cs) in up_covers.iter().enumerate() {
            for &b in cs {
                down_covers[b].push(a);
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, set) in up.iter().enumerate() {
            for b in set.ones() {
                down[b].insert(a);
            }
        }
        let mut height = vec![0usize; n];
        for &v in &topo {
            for &w in &up_covers[v] {
                height[w] = height[w].max(height[v] + 1);
            }
        }
        FinitePoset {
            labels,
            up_covers,
            down_covers,
            up,
            down,
            topo,
            height,
        }
    }

    /// Builds a poset from a full order relation given as up-set bitsets.
    /// The relation must be reflexive, antisymmetric and transitive.
    pub fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        if up.len() != n {
            return Err(Error::Invariant("one up-set per element required".into()));
        }
        for (v, set) in up.iter().enumerate() {
            if !set.contains(v) {
                return Err(Error::Invariant(format!(
                    "relation is not reflexive at {v}"
                )));
            }
            for w in set.ones() {
                if w != v && up[w].contains(v) {
                    return Err(Error::Invariant(format!(
                        "{v} and {w} are mutually related"
                    )));
                }
                if !up[w].is_subset(set) {
                    return Err(Error::Invariant(format!(
                        "relation is not transitive at {v}"
                    )));
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        // an element has strictly fewer elements above it than anything below it
        order.sort_by_key(|&v| std::cmp::Reverse(up[v].count_ones(..)));
        let mut up_covers = vec![Vec::new(); n];
        for v in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for w in up[v].ones().filter(|&w| w != v) {
                let mut strict = up[w].clone();
                strict.set(w, false);
                implied.union_with(&strict);
            }
            up_covers[v] = up[v]
                .ones()
                .filter(|&w| w != v && !implied.contains(w))
                .collect();
        }
        Ok(Self::from_parts(labels, up_covers, up, order))
    }

    /// The chain `0 < 1 < ... < k`.
    pub fn chain(k: usize) -> Self {
        let labels = (0..=k).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
        Self::from_covers(labels, &rel).expect("chain")
    }

    /// The Boolean algebra of subsets of an `n`-set; element `i` is the
    /// subset with bit pattern `i`.
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let labels = (0..size).map(|s| subset_label(s as u64)).collect();
        let mut rel = Vec::new();
        for s in 0..size {
            for i in 0..n {
                if s >> i & 1 == 0 {
                    rel.push((s, s | 1 << i));
                }
            }
        }
        Self::from_covers(labels, &rel).expect("boolean algebra")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
    }

    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .up_covers
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().map(move |&b| (a, b)))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down_covers[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up_covers[x].is_empty())
            .collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn bounds(&self) -> Result<(usize, usize)> {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(Error::NoBounds),
        }
    }

    /// Whether every cover raises the height by exactly one. With a unique
    /// minimum and maximum this is gradedness.
    pub fn covers_are_rank_steps(&self) -> bool {
        self.up_covers
            .iter()
            .enumerate()
            .all(|(a, cs)| cs.iter().all(|&b| self.height[b] == self.height[a] + 1))
    }

    /// The rank function of a bounded graded poset.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        self.bounds()?;
        if !self.covers_are_rank_steps() {
            return Err(Error::NotGraded);
        }
        Ok(self.height.clone())
    }

    pub fn rank_of_top(&self) -> Result<usize> {
        let (_, t) = self.bounds()?;
        if !self.covers_are_rank_steps() {
            return Err(Error::NotGraded);
        }
        Ok(self.height[t])
    }

    /// Elements of `[x, y]` in a linear extension order.
    pub fn interval_members(&self, x: usize, y: usize) -> Vec<usize> {
        let mut set = self.up[x].clone();
        set.intersect_with(&self.down[y]);
        self.topo
            .iter()
            .copied()
            .filter(|&v| set.contains(v))
            .collect()
    }

    /// The closed interval `[x, y]` as a poset, plus the original index of
    /// each of its elements.
    pub fn interval(&self, x: usize, y: usize) -> (FinitePoset, Vec<usize>) {
        let members = self.interval_members(x, y);
        (self.induced(&members), members)
    }

    /// The induced subposet on `members` (in the given order).
    pub fn induced(&self, members: &[usize]) -> FinitePoset {
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = members.len();
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (i, &v) in members.iter().enumerate() {
            for w in self.up[v].ones() {
                if let Some(&j) = pos.get(&w) {
                    up[i].insert(j);
                }
            }
        }
        let labels = members.iter().map(|&v| self.labels[v].clone()).collect();
        FinitePoset::from_up_sets(labels, up).expect("induced order is a partial order")
    }

    /// `μ(x, y)` for every `y ≥ x` (zero elsewhere).
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &y in &self.topo {
            if !self.up[x].contains(y) {
                continue;
            }
            if y == x {
                mu[y] = 1;
                continue;
            }
            let mut s = 0i64;
            for z in self.down[y].ones() {
                if z != y && self.up[x].contains(z) {
                    s += mu[z];
                }
            }
            mu[y] = -s;
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        self.mobius_from(x)[y]
    }

    /// Graded, thin and Eulerian checks over every interval. Eulerianness is
    /// tested through the equivalent parity condition: each nontrivial
    /// interval has as many elements of even rank as of odd rank.
    pub fn structure_report(&self) -> Result<StructureReport> {
        let (bot, top) = self.bounds()?;
        let graded = self.covers_are_rank_steps();
        let mobius_bottom_top = self.mobius(bot, top);
        if !graded {
            return Ok(StructureReport {
                graded,
                thin: false,
                eulerian: false,
                rank: None,
                mobius_bottom_top,
            });
        }
        let n = self.len();
        let mut even = FixedBitSet::with_capacity(n);
        for v in 0..n {
            if self.height[v].is_multiple_of(2) {
                even.insert(v);
            }
        }
        let mut thin = true;
        let mut eulerian = true;
        for x in 0..n {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                let mut iv = self.up[x].clone();
                iv.intersect_with(&self.down[y]);
                let size = iv.count_ones(..);
                if self.height[y] - self.height[x] == 2 && size != 4 {
                    thin = false;
                }
                let evens = iv.intersection(&even).count();
                if 2 * evens != size {
                    eulerian = false;
                }
            }
        }
        Ok(StructureReport {
            graded,
            thin,
            eulerian,
            rank: Some(self.height[top]),
            mobius_bottom_top,
        })
    }

    /// Least upper bound of `x` and `y`, when it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut ub = self.up[x].clone();
        ub.intersect_with(&self.up[y]);
        let cand = ub.ones().min_by_key(|&v| self.height[v])?;
        if ub.is_subset(&self.up[cand]) {
            Some(cand)
        } else {
            None
        }
    }

    /// Greatest lower bound of `x` and `y`, when it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut lb = self.down[x].clone();
        lb.intersect_with(&self.down[y]);
        let cand = lb.ones().max_by_key(|&v| self.height[v])?;
        if lb.is_subset(&self.down[cand]) {
            Some(cand)
        } else {
            None
        }
    }

    /// Whether every pair has a join and the poset has a minimum.
    pub fn is_lattice(&self) -> bool {
        if self.is_empty() || self.bottom().is_none() {
            return false;
        }
        self.find_missing_join().is_none()
    }

    /// A pair without a least upper bound.
    pub fn find_missing_join(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.join(x, y).is_none())
    }

    /// The dual poset.
    pub fn dual(&self) -> FinitePoset {
        let rel: Vec<(usize, usize)> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (b, a))
            .collect();
        FinitePoset::from_covers(self.labels.clone(), &rel).expect("dual of a poset")
    }

    /// Cartesian product with componentwise order; element `(p, q)` has
    /// index `p * |Q| + q`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for p in 0..self.len() {
            for q in 0..m {
                labels.push(format!("({},{})", self.labels[p], other.labels[q]));
            }
        }
        let mut rel = Vec::new();
        for p in 0..self.len() {
            for q in 0..m {
                for &p2 in &self.up_covers[p] {
                    rel.push((p * m + q, p2 * m + q));
                }
                for &q2 in &other.up_covers[q] {
                    rel.push((p * m + q, p * m + q2));
                }
            }
        }
        FinitePoset::from_covers(labels, &rel).expect("product of posets")
    }

    /// `P ◇ Q`: the product of the posets with their minima removed, with a
    /// new minimum adjoined (index 0).
    pub fn diamond(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let (p0, _) = self.bounds()?;
        let (q0, _) = other.bounds()?;
        let ps: Vec<usize> = (0..self.len()).filter(|&p| p != p0).collect();
        let qs: Vec<usize> = (0..other.len()).filter(|&q| q != q0).collect();
        let mut labels = vec!["0".to_string()];
        let mut idx = HashMap::new();
        for &p in &ps {
            for &q in &qs {
                idx.insert((p, q), labels.len());
                labels.push(format!("({},{})", self.labels[p], other.labels[q]));
            }
        }
        let mut rel = Vec::new();
        for (&(p, q), &v) in &idx {
            if self.down_covers[p] == [p0] && other.down_covers[q] == [q0] {
                rel.push((0, v));
            }
            for &p2 in &self.up_covers[p] {
                rel.push((v, idx[&(p2, q)]));
            }
            for &q2 in &other.up_covers[q] {
                rel.push((v, idx[&(p, q2)]));
            }
        }
        rel.sort_unstable();
        FinitePoset::from_covers(labels, &rel)
    }

    /// `pyr(P) = P × B_1`.
    pub fn pyramid(&self) -> FinitePoset {
        self.product(&FinitePoset::boolean(1))
    }

    /// `prism(P) = P ◇ B_2`.
    pub fn prism(&self) -> Result<FinitePoset> {
        self.diamond(&FinitePoset::boolean(2))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let graded = self.covers_are_rank_steps() && self.bounds().is_ok();
        let json = PosetJson {
            elements: (0..self.len())
                .map(|v| PosetJsonElement {
                    label: self.labels[v].clone(),
                    rank: graded.then_some(self.height[v]),
                })
                .collect(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        };
        serde_json::to_value(json).expect("poset serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FinitePoset> {
        let json: PosetJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let labels = json.elements.into_iter().map(|e| e.label).collect();
        let rel: Vec<(usize, usize)> = json.covers.into_iter().map(|[a, b]| (a, b)).collect();
        FinitePoset::from_covers(labels, &rel)
    }

    /// An order isomorphism onto `other` as a map of indices, verified
    /// before it is returned. Search is by individualisation and joint
    /// colour refinement; at every node the colour classes are first
    /// matched greedily, which settles symmetric cases without branching.
    pub fn isomorphism(&self, other: &FinitePoset) -> Result<Option<Vec<usize>>> {
        let n = self.len();
        if n > ISO_LIMIT || other.len() > ISO_LIMIT {
            return Err(Error::TooLarge(n.max(other.len())));
        }
        if n != other.len() || self.cover_pairs().len() != other.cover_pairs().len() {
            return Ok(None);
        }
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        let seed = |p: &FinitePoset, v: usize| {
            vec![
                p.height[v],
                p.up_covers[v].len(),
                p.down_covers[v].len(),
                p.up[v].count_ones(..),
                p.down[v].count_ones(..),
            ]
        };
        let mut dict: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut color = |key: Vec<usize>| {
            let next = dict.len();
            *dict.entry(key).or_insert(next)
        };
        let ca: Vec<usize> = (0..n).map(|v| color(seed(self, v))).collect();
        let cb: Vec<usize> = (0..n).map(|v| color(seed(other, v))).collect();
        let Some((ca, cb)) = refine_colors(self, other, ca, cb) else {
            return Ok(None);
        };

        struct Frame {
            ca: Vec<usize>,
            cb: Vec<usize>,
            x: usize,
            cands: Vec<usize>,
            next: usize,
        }
        // tries the greedy completion, otherwise opens a branching frame
        let expand = |ca: Vec<usize>, cb: Vec<usize>| -> std::result::Result<Vec<usize>, Frame> {
            let mut cells: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
            for v in 0..n {
                cells.entry(ca[v]).or_default().0.push(v);
                cells.entry(cb[v]).or_default().1.push(v);
            }
            let mut phi = vec![0; n];
            for (xs, ys) in cells.values() {
                for (&x, &y) in xs.iter().zip(ys) {
                    phi[x] = y;
                }
            }
            if self.verify_isomorphism(other, &phi) {
                return Ok(phi);
            }
            let (xs, ys) = cells
                .values()
                .filter(|(xs, _)| xs.len() > 1)
                .min_by_key(|(xs, _)| xs.len())
                .expect("a discrete colouring that fails is not equitable");
            let (x, cands) = (xs[0], ys.clone());
            Err(Frame {
                ca,
                cb,
                x,
                cands,
                next: 0,
            })
        };
        let mut stack = match expand(ca, cb) {
            Ok(phi) => return Ok(Some(phi)),
            Err(frame) => vec![frame],
        };
        while let Some(top) = stack.last_mut() {
            if top.next == top.cands.len() {
                stack.pop();
                continue;
            }
            let y = top.cands[top.next];
            top.next += 1;
            let fresh = n;
            let (mut ca, mut cb) = (top.ca.clone(), top.cb.clone());
            ca[top.x] = fresh;
            cb[y] = fresh;
            let Some((ca, cb)) = refine_colors(self, other, ca, cb) else {
                continue;
            };
            match expand(ca, cb) {
                Ok(phi) => return Ok(Some(phi)),
                Err(frame) => stack.push(frame),
            }
        }
        Ok(None)
    }

    /// Whether `phi` is a bijection carrying covers exactly onto covers.
    pub fn verify_isomorphism(&self, other: &FinitePoset, phi: &[usize]) -> bool {
        if phi.len() != self.len() || self.len() != other.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &y in phi {
            if y >= other.len() || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        let mut mapped: Vec<(usize, usize)> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (phi[a], phi[b]))
            .collect();
        mapped.sort_unstable();
        mapped == other.cover_pairs()
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> Result<bool> {
        Ok(self.isomorphism(other)?.is_some())
    }
}

fn subset_label(bits: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Joint colour refinement of two posets by the colours of upper and lower
/// covers, until stable. `None` when the colour histograms diverge.
fn refine_colors(
    a: &FinitePoset,
    b: &FinitePoset,
    mut ca: Vec<usize>,
    mut cb: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let histogram = |cols: &[usize]| {
        let mut h: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in cols {
            *h.entry(c).or_default() += 1;
        }
        h
    };
    let mut classes = histogram(&ca).len();
    loop {
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        let mut dict: HashMap<Vec<usize>, usize> = HashMap::new();
        let key = |p: &FinitePoset, cols: &[usize], v: usize| {
            let mut ups: Vec<usize> = p.up_covers[v].iter().map(|&w| cols[w]).collect();
            let mut downs: Vec<usize> = p.down_covers[v].iter().map(|&w| cols[w]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut k = vec![cols[v], ups.len()];
            k.extend(ups);
            k.push(usize::MAX);
            k.extend(downs);
            k
        };
        let mut color = |k: Vec<usize>| {
            let next = dict.len();
            *dict.entry(k).or_insert(next)
        };
        let na: Vec<usize> = (0..a.len()).map(|v| color(key(a, &ca, v))).collect();
        let nb: Vec<usize> = (0..b.len()).map(|v| color(key(b, &cb, v))).collect();
        ca = na;
        cb = nb;
        if dict.len() == classes {
            return (histogram(&ca) == histogram(&cb)).then_some((ca, cb));
        }
        classes = dict.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// Face lattice of a square: empty face, 4 vertices, 4 edges, the square.
    fn square() -> FinitePoset {
        let mut rel = Vec::new();
        for v in 1..=4 {
            rel.push((0, v));
        }
        for e in 0..4 {
            rel.push((1 + e, 5 + e));
            rel.push((1 + (e + 1) % 4, 5 + e));
            rel.push((5 + e, 9));
        }
        FinitePoset::from_covers(labels(10), &rel).unwrap()
    }

    #[test]
    fn reduction_drops_implied_relations() {
        let p = FinitePoset::from_covers(labels(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(FinitePoset::from_covers(labels(2), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn boolean_three_is_eulerian() {
        let b3 = FinitePoset::boolean(3);
        let r = b3.structure_report().unwrap();
        assert!(r.graded && r.thin && r.eulerian);
        assert_eq!(r.rank, Some(3));
        assert_eq!(r.mobius_bottom_top, -1);
    }

    #[test]
    fn square_face_lattice() {
        let r = square().structure_report().unwrap();
        assert!(r.eulerian && r.thin);
        assert_eq!(r.mobius_bottom_top, -1);
    }

    #[test]
    fn chain_is_not_thin() {
        let r = FinitePoset::chain(2).structure_report().unwrap();
        assert!(r.graded && !r.thin && !r.eulerian);
        assert_eq!(r.mobius_bottom_top, 0);
    }

    #[test]
    fn parity_criterion_matches_mobius() {
        for p in [
            FinitePoset::boolean(3),
            square(),
            FinitePoset::chain(3),
            FinitePoset::boolean(2).product(&FinitePoset::chain(2)),
        ] {
            let ranks = p.ranks().unwrap();
            let mut all = true;
            for x in 0..p.len() {
                let mu = p.mobius_from(x);
                for y in p.up_set(x).ones() {
                    let sign = if (ranks[y] - ranks[x]) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    all &= mu[y] == sign;
                }
            }
            assert_eq!(p.structure_report().unwrap().eulerian, all);
        }
    }

    #[test]
    fn no_bounds_error() {
        let p = FinitePoset::from_covers(labels(2), &[]).unwrap();
        assert_eq!(p.structure_report(), Err(Error::NoBounds));
    }

    #[test]
    fn products_of_small_posets() {
        let b1 = FinitePoset::boolean(1);
        assert!(b1
            .pyramid()
            .is_isomorphic(&FinitePoset::boolean(2))
            .unwrap());
        assert!(b1
            .product(&b1)
            .product(&b1)
            .is_isomorphic(&FinitePoset::boolean(3))
            .unwrap());
        let sq = square();
        let d = FinitePoset::boolean(2)
            .diamond(&FinitePoset::boolean(2))
            .unwrap();
        // (B_2 ∖ 0̂)² has 9 elements, plus a new minimum
        assert_eq!(d.len(), 10);
        assert!(d.is_isomorphic(&sq).unwrap());
    }

    #[test]
    fn isomorphism_rejects_different_shapes() {
        let c = FinitePoset::chain(3);
        let b = FinitePoset::boolean(2);
        assert!(!c.is_isomorphic(&b).unwrap());
        // four elements and three covers each
        let n = FinitePoset::from_covers(labels(4), &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let z = FinitePoset::from_covers(labels(4), &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let claw = FinitePoset::from_covers(labels(4), &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!n.is_isomorphic(&claw).unwrap());
        assert!(!n.is_isomorphic(&FinitePoset::chain(3)).unwrap());
        assert!(n.is_isomorphic(&z).unwrap());
    }

    #[test]
    fn isomorphism_under_relabelling() {
        let b = FinitePoset::boolean(4);
        let perm: Vec<usize> = (0..16).map(|i| (i * 7 + 3) % 16).collect();
        let rel: Vec<(usize, usize)> = b
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (perm[x], perm[y]))
            .collect();
        let q = FinitePoset::from_covers(labels(16), &rel).unwrap();
        let phi = b.isomorphism(&q).unwrap().unwrap();
        assert!(b.verify_isomorphism(&q, &phi));
    }

    #[test]
    fn lattice_detection() {
        assert!(FinitePoset::boolean(3).is_lattice());
        // two atoms with two incomparable common covers
        let bowtie = FinitePoset::from_covers(
            labels(6),
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert!(!bowtie.is_lattice());
        assert_eq!(bowtie.join(1, 2), None);
        assert_eq!(bowtie.meet(3, 4), None);
    }

    #[test]
    fn json_round_trip() {
        let sq = square();
        let back = FinitePoset::from_json(&sq.to_json()).unwrap();
        assert_eq!(back.cover_pairs(), sq.cover_pairs());
    }

    #[test]
    fn intervals() {
        let b3 = FinitePoset::boolean(3);
        let (iv, members) = b3.interval(1, 7);
        assert_eq!(members.len(), 4);
        assert!(iv.is_isomorphic(&FinitePoset::boolean(2)).unwrap());
    }
}
