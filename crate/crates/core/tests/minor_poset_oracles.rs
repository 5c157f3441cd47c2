use std::sync::Arc;

use genlat::corpus::{all_labelled, corpus};
use genlat::minor_poset::{order_matches_definition, rank_gen, MinorPoset, RankGenMethod};
use genlat::minors::{lemma_join, minor_count, Minor, MinorOp, MinorTable, DEFAULT_BUDGET};
use genlat::{Error, FinitePoset, GenLattice, GenSet, UniPoly};

fn small_family() -> Vec<Arc<GenLattice>> {
    let mut out: Vec<Arc<GenLattice>> = all_labelled(3).into_iter().map(Arc::new).collect();
    out.extend(
        corpus()
            .into_iter()
            .filter(|e| minor_count(&e.lattice) <= 300)
            .map(|e| e.lattice),
    );
    out
}

#[test]
fn order_agrees_with_the_minor_relation() {
    for lat in small_family() {
        let mp = MinorPoset::build(&lat, DEFAULT_BUDGET).unwrap();
        assert!(order_matches_definition(&lat, &mp));
    }
}

#[test]
fn join_criterion_matches_least_upper_bounds() {
    for lat in small_family() {
        let mp = MinorPoset::build(&lat, DEFAULT_BUDGET).unwrap();
        let p = mp.poset();
        for a in 1..p.len() {
            for b in a + 1..p.len() {
                let (ma, mb) = (mp.minor_at(a).unwrap(), mp.minor_at(b).unwrap());
                let lub = p.join(a, b);
                match mp.minor_join(&lat, &ma, &mb) {
                    Ok(j) => assert_eq!(
                        Some(mp.index_of(&j).unwrap()),
                        lub,
                        "{:?} {} {} -> {}",
                        lat.closed_sets(),
                        ma.display(&lat),
                        mb.display(&lat),
                        j.display(&lat)
                    ),
                    Err(f) => assert_eq!(
                        lub,
                        None,
                        "{:?} {} {} {f:?}",
                        lat.closed_sets(),
                        ma.display(&lat),
                        mb.display(&lat)
                    ),
                }
            }
        }
    }
}

#[test]
fn join_criterion_with_explicit_upper_bounds() {
    let lat = GenLattice::boolean(3).unwrap();
    let table = MinorTable::new(&lat, DEFAULT_BUDGET).unwrap();
    let a = table.minor(1);
    let b = table.minor(2);
    let ubs: Vec<Minor> = table
        .iter()
        .filter(|m| a.is_minor_of(&lat, m).unwrap() && b.is_minor_of(&lat, m).unwrap())
        .collect();
    let j = lemma_join(&lat, &a, &b, ubs.clone()).unwrap();
    assert!(ubs.iter().all(|u| j.is_minor_of(&lat, u).unwrap()));
}

#[test]
fn every_minor_is_a_deletion_of_a_contraction() {
    for lat in small_family() {
        let whole = Minor::whole(&lat);
        for m in MinorTable::new(&lat, DEFAULT_BUDGET).unwrap().iter() {
            let c = whole
                .apply_by_element(&lat, MinorOp::Contract, m.base())
                .unwrap();
            let drop: Vec<usize> = (0..c.generators().len())
                .filter(|&k| !m.generators().contains(&c.generators()[k]))
                .collect();
            assert_eq!(c.apply(&lat, MinorOp::Delete, &drop).unwrap(), m);
        }
    }
}

#[test]
fn minor_count_is_a_sum_of_powers() {
    for lat in small_family() {
        let want: u128 = lat.elements().map(|l| 1u128 << lat.alpha(l)).sum();
        assert_eq!(minor_count(&lat), want);
        assert_eq!(
            MinorTable::new(&lat, DEFAULT_BUDGET).unwrap().len() as u128,
            want
        );
    }
}

#[test]
fn partition_lattice_of_four() {
    let pi4 = genlat::corpus::named("partition_4").unwrap().lattice;
    assert_eq!((pi4.len(), minor_count(&pi4)), (15, 127));
    let direct = rank_gen(&pi4, RankGenMethod::Direct).unwrap();
    assert_eq!(rank_gen(&pi4, RankGenMethod::Geometric).unwrap(), direct);
    assert_eq!(direct.eval(1), 128.into());
}

#[test]
fn budget_is_enforced() {
    let b4 = GenLattice::boolean(4).unwrap();
    assert_eq!(
        MinorPoset::build(&b4, 80).unwrap_err(),
        Error::BudgetExceeded {
            needed: 81,
            budget: 80
        }
    );
}

#[test]
fn chains_give_boolean_algebras() {
    for n in 0..=4 {
        let c = GenLattice::chain(n).unwrap();
        let mp = MinorPoset::build(&c, DEFAULT_BUDGET).unwrap();
        assert!(mp
            .poset()
            .is_isomorphic(&FinitePoset::boolean(n + 1))
            .unwrap());
        assert_eq!(mp.rank_census(), UniPoly::one_plus_q_pow(n + 1));
    }
}

#[test]
fn minor_operations_produce_minors() {
    let lat = genlat::corpus::named("path_intervals_4").unwrap().lattice;
    let whole = Minor::whole(&lat);
    for k in 0..lat.n() {
        for op in [MinorOp::Delete, MinorOp::Contract, MinorOp::Restrict] {
            let m = whole.apply(&lat, op, &[k]).unwrap();
            assert!(m.is_minor_of(&lat, &whole).unwrap());
        }
    }
    let sub = whole.expand(&lat).unwrap();
    assert_eq!(sub.lattice.len(), lat.len());
    assert_eq!(lat.closed_set(lat.top()), GenSet::full(4));
}
