//! JSON lattice specifications, builtin families and Graphviz output.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::lattice::{ElementId, GenLattice};
use crate::minors::ideal_lattice;
use crate::poset::FinitePoset;

/// Default cap on the number of generators accepted by [`load`].
pub const DEFAULT_MAX_GENERATORS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeSpec {
    /// Lattice of flats of the graphic matroid; vertices and edges 1-based.
    Graph {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Lattice of lower order ideals; covers are `[lower, upper]` names.
    Poset {
        elements: Vec<String>,
        #[serde(default)]
        covers: Vec<[String; 2]>,
    },
    /// One of `boolean [n]`, `chain [n]`, `partition [m]`, `uniform [r, n]`.
    Builtin {
        name: String,
        #[serde(default)]
        params: Vec<usize>,
    },
    /// Closed sets (1-based generator indices), optionally with a join table
    /// indexing into `elements`.
    Explicit {
        n: usize,
        elements: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        join: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator_names: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    pub max_generators: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            max_generators: DEFAULT_MAX_GENERATORS,
        }
    }
}

impl LatticeSpec {
    pub fn from_json_str(s: &str) -> Result<LatticeSpec> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }
}

pub fn load(spec: &LatticeSpec) -> Result<GenLattice> {
    load_with(spec, LoadOptions::default())
}

pub fn load_with(spec: &LatticeSpec, opts: LoadOptions) -> Result<GenLattice> {
    let check_n = |n: usize| {
        if n > opts.max_generators {
            Err(Error::TooManyGenerators(n, opts.max_generators))
        } else {
            Ok(())
        }
    };
    match spec {
        LatticeSpec::Graph { vertices, edges } => {
            check_n(edges.len())?;
            graphic_lattice(*vertices, edges)
        }
        LatticeSpec::Poset { elements, covers } => {
            check_n(elements.len())?;
            let pos: HashMap<&str, usize> = elements
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_str(), i))
                .collect();
            if pos.len() != elements.len() {
                return Err(Error::Parse("duplicate poset element name".into()));
            }
            let mut rel = Vec::with_capacity(covers.len());
            for [a, b] in covers {
                let ia = *pos
                    .get(a.as_str())
                    .ok_or_else(|| Error::Parse(format!("unknown element {a:?}")))?;
                let ib = *pos
                    .get(b.as_str())
                    .ok_or_else(|| Error::Parse(format!("unknown element {b:?}")))?;
                rel.push((ia, ib));
            }
            let p = FinitePoset::from_covers(elements.clone(), &rel)?;
            ideal_lattice(&p)
        }
        LatticeSpec::Builtin { name, params } => {
            let param = |k: usize| {
                params.get(k).copied().ok_or_else(|| {
                    Error::Parse(format!("builtin {name} needs {} parameter(s)", k + 1))
                })
            };
            match name.as_str() {
                "boolean" => {
                    check_n(param(0)?)?;
                    GenLattice::boolean(param(0)?)
                }
                "chain" => {
                    check_n(param(0)?)?;
                    GenLattice::chain(param(0)?)
                }
                "partition" => {
                    let m = param(0)?;
                    check_n(m * m.saturating_sub(1) / 2)?;
                    let edges: Vec<[usize; 2]> = (1..=m)
                        .flat_map(|a| (a + 1..=m).map(move |b| [a, b]))
                        .collect();
                    graphic_lattice(m, &edges)
                }
                "uniform" => {
                    let (r, n) = (param(0)?, param(1)?);
                    check_n(n)?;
                    if r > n {
                        return Err(Error::Parse(format!(
                            "uniform matroid needs r <= n, got {r} > {n}"
                        )));
                    }
                    GenLattice::from_closure(n, |s| if s.len() < r { s } else { GenSet::full(n) })
                }
                _ => Err(Error::Parse(format!("unknown builtin {name:?}"))),
            }
        }
        LatticeSpec::Explicit {
            n,
            elements,
            join,
            generator_names,
        } => {
            check_n(*n)?;
            let mut sets = Vec::with_capacity(elements.len());
            for e in elements {
                let mut s = GenSet::EMPTY;
                for &i in e {
                    if i == 0 || i > *n {
                        return Err(Error::BadIndex { index: i, len: *n });
                    }
                    s.insert(i - 1);
                }
                sets.push(s);
            }
            let mut lat = match join {
                None => GenLattice::from_closed_sets(*n, sets)?,
                Some(table) => lattice_from_join_table(*n, &sets, table)?,
            };
            if let Some(names) = generator_names {
                if names.len() != *n {
                    return Err(Error::Parse(
                        "one generator name per generator required".into(),
                    ));
                }
                lat.set_names(names.clone());
            }
            Ok(lat)
        }
    }
}

/// Builds the lattice through a closure oracle read from the join table,
/// after checking the table is a semilattice operation consistent with the
/// closed sets.
fn lattice_from_join_table(n: usize, sets: &[GenSet], table: &[Vec<usize>]) -> Result<GenLattice> {
    let m = sets.len();
    if table.len() != m || table.iter().any(|row| row.len() != m) {
        return Err(Error::Parse(format!("join table must be {m} by {m}")));
    }
    if table.iter().flatten().any(|&v| v >= m) {
        return Err(Error::Parse("join table entry out of range".into()));
    }
    let j = |a: usize, b: usize| table[a][b];
    for a in 0..m {
        if j(a, a) != a {
            return Err(Error::NotALattice(format!(
                "join table is not idempotent at {a}"
            )));
        }
        for b in 0..m {
            if j(a, b) != j(b, a) {
                return Err(Error::NotALattice(format!(
                    "join table is not commutative at ({a}, {b})"
                )));
            }
            if (j(a, b) == b) != sets[a].is_subset(sets[b]) {
                return Err(Error::NotALattice(format!(
                    "join table disagrees with the order at ({a}, {b})"
                )));
            }
            for c in 0..m {
                if j(j(a, b), c) != j(a, j(b, c)) {
                    return Err(Error::NotALattice(format!(
                        "join table is not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    let bottom = (0..m)
        .find(|&a| (0..m).all(|b| j(a, b) == b))
        .ok_or_else(|| Error::NotALattice("join table has no minimum".into()))?;
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let g = (0..m)
            .filter(|&a| sets[a].contains(i))
            .min_by_key(|&a| sets[a].len())
            .ok_or_else(|| {
                Error::NotALattice(format!("no element lies above generator {}", i + 1))
            })?;
        gens.push(g);
    }
    let lat =
        GenLattice::from_closure(n, |s| sets[s.iter().fold(bottom, |acc, i| j(acc, gens[i]))])?;
    if lat.len() != m {
        return Err(Error::NotALattice(format!(
            "join table has {m} elements but the generators produce {}",
            lat.len()
        )));
    }
    Ok(lat)
}

/// Lattice of flats of a graph; generator `i` is edge `i`.
pub fn graphic_lattice(vertices: usize, edges: &[[usize; 2]]) -> Result<GenLattice> {
    for (k, &[a, b]) in edges.iter().enumerate() {
        for v in [a, b] {
            if v == 0 || v > vertices {
                return Err(Error::BadIndex {
                    index: v,
                    len: vertices,
                });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(k + 1));
        }
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|&[a, b]| (a - 1, b - 1)).collect();
    GenLattice::from_closure(edges.len(), |s| {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for i in s.iter() {
            let (a, b) = edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..edges.len())
            .filter(|&i| find(&mut parent, edges[i].0) == find(&mut parent, edges[i].1))
            .collect()
    })
}

/// The explicit specification of a lattice.
pub fn save(lat: &GenLattice) -> LatticeSpec {
    let default_names: Vec<String> = (1..=lat.n()).map(|i| i.to_string()).collect();
    LatticeSpec::Explicit {
        n: lat.n(),
        elements: lat.closed_sets().iter().map(|s| s.to_one_based()).collect(),
        join: None,
        generator_names: (lat.generator_names() != default_names.as_slice())
            .then(|| lat.generator_names().to_vec()),
    }
}

/// Distinct diagram edges `(ℓ, ℓ ∨ g)` with the generators producing each.
pub fn diagram_edges(lat: &GenLattice) -> Vec<(ElementId, ElementId, Vec<usize>)> {
    let mut out: Vec<(ElementId, ElementId, Vec<usize>)> = Vec::new();
    for l in lat.elements() {
        let mut by_target: Vec<(ElementId, Vec<usize>)> = Vec::new();
        for i in 0..lat.n() {
            let m = lat.join_generator(l, i);
            if m == l {
                continue;
            }
            match by_target.iter_mut().find(|(t, _)| *t == m) {
                Some((_, gs)) => gs.push(i),
                None => by_target.push((m, vec![i])),
            }
        }
        by_target.sort();
        out.extend(by_target.into_iter().map(|(m, gs)| (l, m, gs)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotMode {
    Diagram,
    Hasse,
}

impl std::str::FromStr for DotMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagram" => Ok(DotMode::Diagram),
            "hasse" => Ok(DotMode::Hasse),
            _ => Err(Error::Parse(format!("unknown dot mode {s:?}"))),
        }
    }
}

/// Graphviz digraph with edges directed upwards and vertices labelled by
/// closed sets.
pub fn emit_dot(lat: &GenLattice, mode: DotMode) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
    for e in lat.elements() {
        s.push_str(&format!(
            "  v{} [label=\"{}\"];\n",
            e.index(),
            lat.closed_set(e)
        ));
    }
    match mode {
        DotMode::Diagram => {
            for (a, b, gs) in diagram_edges(lat) {
                let names: Vec<&str> = gs
                    .iter()
                    .map(|&i| lat.generator_names()[i].as_str())
                    .collect();
                s.push_str(&format!(
                    "  v{} -> v{} [label=\"{}\"];\n",
                    a.index(),
                    b.index(),
                    names.join(",")
                ));
            }
        }
        DotMode::Hasse => {
            for a in lat.elements() {
                for b in lat.upper_covers(a) {
                    s.push_str(&format!("  v{} -> v{};\n", a.index(), b.index()));
                }
            }
        }
    }
    s.push_str("}\n");
    s
}
