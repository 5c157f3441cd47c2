//! The minor poset `M(L, G)`, its Boolean decomposition and rank generating
//! function.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::IncidencePoly;
use crate::lattice::{ElementId, GenLattice};
use crate::minors::{is_minor_of_unchecked, lemma_join, JoinFailure, Minor, MinorTable};
use crate::poly::UniPoly;
use crate::poset::FinitePoset;
use crate::properties;

/// `M(L, G)`: poset index 0 is the added minimum `∅̂`; minor `i` of the table
/// sits at poset index `i + 1`.
#[derive(Clone, Debug)]
pub struct MinorPoset {
    table: MinorTable,
    poset: FinitePoset,
}

impl MinorPoset {
    /// Builds the minor poset. Covers are produced constructively: single
    /// deletions, and contractions by one generator that merge nothing.
    pub fn build(lat: &GenLattice, budget: u128) -> Result<MinorPoset> {
        let table = MinorTable::new(lat, budget)?;
        let mut labels = Vec::with_capacity(table.len() + 1);
        labels.push("{}".to_string());
        let mut rel: Vec<(usize, usize)> = Vec::new();
        let per_minor: Vec<(String, Vec<(usize, usize)>)> = (0..table.len())
            .into_par_iter()
            .map(|i| {
                let m = table.minor(i);
                let mut covers = Vec::new();
                if m.generators().is_empty() {
                    covers.push((0, i + 1));
                }
                for (k, &h) in m.generators().iter().enumerate() {
                    let mut del: Vec<ElementId> = m.generators().to_vec();
                    del.remove(k);
                    let d = table
                        .index_of_parts(m.base(), &del)
                        .expect("deletion is a minor");
                    covers.push((d + 1, i + 1));
                    let mut con: Vec<ElementId> = m
                        .generators()
                        .iter()
                        .map(|&g| lat.join(g, h))
                        .filter(|&e| e != h)
                        .collect();
                    con.sort();
                    con.dedup();
                    if con.len() + 1 == m.generators().len() {
                        let c = table
                            .index_of_parts(h, &con)
                            .expect("contraction is a minor");
                        covers.push((c + 1, i + 1));
                    }
                }
                (m.display(lat).to_string(), covers)
            })
            .collect();
        for (label, covers) in per_minor {
            labels.push(label);
            rel.extend(covers);
        }
        let poset = FinitePoset::from_covers(labels, &rel)?;
        Ok(MinorPoset { table, poset })
    }

    pub fn table(&self) -> &MinorTable {
        &self.table
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    /// Number of elements including `∅̂`.
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn minor_at(&self, idx: usize) -> Option<Minor> {
        (idx > 0).then(|| self.table.minor(idx - 1))
    }

    pub fn index_of(&self, m: &Minor) -> Option<usize> {
        self.table.index_of(m).map(|i| i + 1)
    }

    /// `1 + Σ_k (#minors of rank k) q^k`.
    pub fn rank_census(&self) -> UniPoly {
        let mut counts = vec![0i64; 1];
        counts[0] = 1;
        for i in 0..self.table.len() {
            let r = self.table.minor(i).rank();
            if counts.len() <= r {
                counts.resize(r + 1, 0);
            }
            counts[r] += 1;
        }
        UniPoly::from_i64(&counts)
    }

    /// Join of two minors via the join criterion, with common
    /// upper bounds read off the order bitsets.
    pub fn minor_join(
        &self,
        lat: &GenLattice,
        a: &Minor,
        b: &Minor,
    ) -> std::result::Result<Minor, JoinFailure> {
        let ia = self.index_of(a).expect("minor of this host");
        let ib = self.index_of(b).expect("minor of this host");
        let mut ub: FixedBitSet = self.poset.up_set(ia).clone();
        ub.intersect_with(self.poset.up_set(ib));
        let ubs = ub.ones().map(|k| self.table.minor(k - 1));
        lemma_join(lat, a, b, ubs)
    }

    /// Whether every pair of minors has a join, via the join criterion.
    /// Returns the first failing pair.
    pub fn find_pair_without_join(&self, lat: &GenLattice) -> Option<(Minor, Minor, JoinFailure)> {
        let n = self.table.len();
        (0..n).into_par_iter().find_map_first(|i| {
            let a = self.table.minor(i);
            (i + 1..n).find_map(|j| {
                let b = self.table.minor(j);
                self.minor_join(lat, &a, &b)
                    .err()
                    .map(|f| (a.clone(), b, f))
            })
        })
    }
}

/// One block `[(ℓ, ∅), (L, G)/ℓ]` of the Boolean decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionBlock {
    pub base: usize,
    pub alpha: usize,
    /// Poset indices of the block, bottom first and top last.
    pub members: Vec<usize>,
}

/// The decomposition of `M(L, G) ∖ {∅̂}` into Boolean intervals, one per
/// lattice element.
pub fn boolean_decomposition(mp: &MinorPoset) -> Vec<DecompositionBlock> {
    let t = mp.table();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut base = 0usize;
    while start < t.len() {
        let b = ElementId::new(base);
        let len = t.block_len(b);
        out.push(DecompositionBlock {
            base,
            alpha: t.lifts(b).len(),
            members: (start + 1..start + len + 1).collect(),
        });
        start += len;
        base += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankGenMethod {
    /// `1 + q Σ_ℓ (1 + q)^{α(ℓ)}`.
    Direct,
    /// `1 + q (ζ ∗ (ζ + qκ)^ζ)(0̂, 1̂)`, for geometric lattices.
    Geometric,
    /// `1 + q F(L*; 1 + q)`, for lattices without parallels.
    NoParallels,
}

impl std::str::FromStr for RankGenMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(RankGenMethod::Direct),
            "geometric" => Ok(RankGenMethod::Geometric),
            "no-parallels" | "no_parallels" => Ok(RankGenMethod::NoParallels),
            _ => Err(Error::Parse(format!(
                "unknown rank generating method {s:?}"
            ))),
        }
    }
}

/// Rank generating function of `M(L, G)` without building it.
pub fn rank_gen(lat: &GenLattice, method: RankGenMethod) -> Result<UniPoly> {
    let q = UniPoly::q();
    let sum = match method {
        RankGenMethod::Direct => lat.elements().fold(UniPoly::zero(), |acc, l| {
            &acc + &UniPoly::one_plus_q_pow(lat.alpha(l))
        }),
        RankGenMethod::Geometric => {
            let report = properties::is_geometric(lat);
            if !report.verdict {
                return Err(Error::MethodInapplicable(format!(
                    "lattice is not geometric: {}",
                    report.witness.unwrap_or_default()
                )));
            }
            let p = lat.to_poset();
            let zeta = IncidencePoly::zeta(&p);
            let base = zeta.add(&IncidencePoly::kappa(&p).scale(&q));
            let f = zeta.convolve(&base.pow(&zeta)?);
            f.get(lat.bottom().index(), lat.top().index())
        }
        RankGenMethod::NoParallels => {
            let report = properties::has_no_parallels(lat);
            if !report.verdict {
                return Err(Error::MethodInapplicable(format!(
                    "lattice has a parallel: {}",
                    report.witness.unwrap_or_default()
                )));
            }
            // ranks in the dual lattice are lengths of chains down from 1̂
            let dual = lat.to_poset().dual();
            let x = &UniPoly::one() + &q;
            (0..dual.len()).fold(UniPoly::zero(), |acc, v| &acc + &x.pow(dual.height(v)))
        }
    };
    Ok(&UniPoly::one() + &(&q * &sum))
}

/// Direct route: whether every pair of minors has a join.
pub fn minor_poset_is_lattice_direct(lat: &GenLattice, mp: &MinorPoset) -> bool {
    mp.find_pair_without_join(lat).is_none()
}

/// Whether the `is_minor_of` relation restricted to the table agrees with
/// the built order (used by tests and the CLI's self-check).
pub fn order_matches_definition(lat: &GenLattice, mp: &MinorPoset) -> bool {
    let t = mp.table();
    (0..t.len()).into_par_iter().all(|i| {
        let a = t.minor(i);
        (0..t.len()).all(|j| {
            let b = t.minor(j);
            is_minor_of_unchecked(lat, &a, &b) == mp.poset().leq(i + 1, j + 1)
        })
    })
}

/// Lattice constructions whose minor posets are poset products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// `M(L × K) ≅ M(L) ◇ M(K)`.
    Cartesian,
    /// `M(L̂) ≅ pyr(M(L))` for `L̂` with a new maximal generator.
    AdjoinMax,
    /// `M(pyr L) ≅ prism(M(L))`.
    Pyramid,
}

impl std::str::FromStr for ProductKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" | "diamond" => Ok(ProductKind::Cartesian),
            "adjoin-max" | "adjoin" => Ok(ProductKind::AdjoinMax),
            "pyramid" | "prism" => Ok(ProductKind::Pyramid),
            _ => Err(Error::Parse(format!("unknown product kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductLaw {
    pub law: String,
    /// Size of the minor poset of the constructed lattice.
    pub size: usize,
    pub holds: bool,
}

/// Builds the lattice construction and compares its minor poset with the
/// poset product; `other` is required for [`ProductKind::Cartesian`].
pub fn product_law(
    kind: ProductKind,
    lat: &GenLattice,
    other: Option<&GenLattice>,
    budget: u128,
) -> Result<ProductLaw> {
    let m = MinorPoset::build(lat, budget)?;
    let (law, built, expected) = match kind {
        ProductKind::Cartesian => {
            let other =
                other.ok_or_else(|| Error::Parse("cartesian product needs two lattices".into()))?;
            let mk = MinorPoset::build(other, budget)?;
            let prod = lat.cartesian_product(other)?;
            (
                "M(L x K) = M(L) <> M(K)",
                prod,
                m.poset().diamond(mk.poset())?,
            )
        }
        ProductKind::AdjoinMax => ("M(L^) = pyr M(L)", lat.adjoin_max()?, m.poset().pyramid()),
        ProductKind::Pyramid => ("M(pyr L) = prism M(L)", lat.pyramid()?, m.poset().prism()?),
    };
    let built = MinorPoset::build(&built, budget)?;
    Ok(ProductLaw {
        law: law.to_string(),
        size: built.len(),
        holds: built.poset().is_isomorphic(&expected)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::DEFAULT_BUDGET;

    #[test]
    fn small_minor_posets() {
        let point = GenLattice::boolean(0).unwrap();
        let mp = MinorPoset::build(&point, DEFAULT_BUDGET).unwrap();
        assert!(mp.poset().is_isomorphic(&FinitePoset::chain(1)).unwrap());

        let b2 = GenLattice::boolean(2).unwrap();
        let mp = MinorPoset::build(&b2, DEFAULT_BUDGET).unwrap();
        assert_eq!(mp.len(), 10);
        assert!(order_matches_definition(&b2, &mp));
        assert_eq!(mp.rank_census(), UniPoly::from_i64(&[1, 4, 4, 1]));

        let c2 = GenLattice::chain(2).unwrap();
        let mp = MinorPoset::build(&c2, DEFAULT_BUDGET).unwrap();
        assert!(mp.poset().is_isomorphic(&FinitePoset::boolean(3)).unwrap());
    }

    #[test]
    fn decomposition_of_b2() {
        let b2 = GenLattice::boolean(2).unwrap();
        let mp = MinorPoset::build(&b2, DEFAULT_BUDGET).unwrap();
        let sizes: Vec<usize> = boolean_decomposition(&mp)
            .iter()
            .map(|b| b.members.len())
            .collect();
        assert_eq!(sizes, vec![4, 2, 2, 1]);
    }

    #[test]
    fn rank_gen_methods() {
        let b2 = GenLattice::boolean(2).unwrap();
        let direct = rank_gen(&b2, RankGenMethod::Direct).unwrap();
        assert_eq!(direct.to_string(), "1 + 4q + 4q^2 + q^3");
        assert_eq!(rank_gen(&b2, RankGenMethod::Geometric).unwrap(), direct);
        assert_eq!(rank_gen(&b2, RankGenMethod::NoParallels).unwrap(), direct);
        let c3 = GenLattice::chain(3).unwrap();
        assert!(matches!(
            rank_gen(&c3, RankGenMethod::Geometric),
            Err(Error::MethodInapplicable(_))
        ));
        assert_eq!(
            rank_gen(&c3, RankGenMethod::NoParallels).unwrap(),
            UniPoly::one_plus_q_pow(4)
        );
    }

    #[test]
    fn product_laws_on_small_hosts() {
        let b1 = GenLattice::boolean(1).unwrap();
        let c2 = GenLattice::chain(2).unwrap();
        for kind in [
            ProductKind::Cartesian,
            ProductKind::AdjoinMax,
            ProductKind::Pyramid,
        ] {
            let law = product_law(kind, &c2, Some(&b1), DEFAULT_BUDGET).unwrap();
            assert!(law.holds, "{law:?}");
        }
        // B_1 x B_1 = B_2 has 10 minors including the added minimum
        let law = product_law(ProductKind::Cartesian, &b1, Some(&b1), DEFAULT_BUDGET).unwrap();
        assert_eq!(law.size, 10);
        assert!(product_law(ProductKind::Cartesian, &b1, None, DEFAULT_BUDGET).is_err());
    }
}
