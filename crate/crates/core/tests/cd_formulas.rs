//! cd-indices of minor posets against closed forms counted independently.

use num_bigint::BigInt;

use genlat::corpus::all_labelled;
use genlat::properties::minors_with_generators;
use genlat::{cd_index, CdPolynomial, GenLattice, MinorPoset, DEFAULT_BUDGET};

fn psi(lat: &GenLattice) -> (CdPolynomial, MinorPoset) {
    let mp = MinorPoset::build(lat, DEFAULT_BUDGET).unwrap();
    (cd_index(mp.poset()).unwrap(), mp)
}

#[test]
fn three_cube() {
    let (p, _) = psi(&GenLattice::boolean(3).unwrap());
    assert_eq!(p, "c^3 + 4cd + 6dc".parse().unwrap());
}

#[test]
fn every_three_generator_host_follows_the_face_count_formula() {
    // rank 4 with f_0 = |L| atoms of the poset and f_2 = minors on two generators
    let hosts = all_labelled(3);
    assert_eq!(hosts.len(), 35);
    for lat in hosts {
        let (p, mp) = psi(&lat);
        let facets = minors_with_generators(mp.table(), 2) as i64;
        let word = |s: &str| {
            s.parse::<CdPolynomial>()
                .unwrap()
                .terms()
                .next()
                .unwrap()
                .0
                .clone()
        };
        let mut expected = CdPolynomial::zero();
        expected.add_term(word("ccc"), BigInt::from(1));
        expected.add_term(word("cd"), BigInt::from(facets - 2));
        expected.add_term(word("dc"), BigInt::from(lat.len() as i64 - 2));
        assert_eq!(p, expected, "{lat:?}");
    }
}

#[test]
fn chains_of_two_and_three() {
    let (two, _) = psi(&GenLattice::chain(2).unwrap());
    assert_eq!(two, "c^2 + d".parse().unwrap());
    let (three, _) = psi(&GenLattice::chain(3).unwrap());
    assert_eq!(three, "c^3 + 2cd + 2dc".parse().unwrap());
}
