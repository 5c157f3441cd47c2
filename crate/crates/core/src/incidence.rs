//! Incidence algebra of a finite poset with polynomial values.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::poset::FinitePoset;

/// A function on the intervals `[x, y]` of a fixed poset, valued in `Z[q]`.
/// Intervals missing from the map carry the zero polynomial.
#[derive(Clone, Debug)]
pub struct IncidencePoly<'p> {
    poset: &'p FinitePoset,
    values: HashMap<(usize, usize), UniPoly>,
}

impl<'p> IncidencePoly<'p> {
    fn from_fn<F: Fn(usize, usize) -> UniPoly>(poset: &'p FinitePoset, f: F) -> Self {
        let mut values = HashMap::new();
        for x in 0..poset.len() {
            for y in poset.up_set(x).ones() {
                let v = f(x, y);
                if !v.is_zero() {
                    values.insert((x, y), v);
                }
            }
        }
        IncidencePoly { poset, values }
    }

    pub fn delta(poset: &'p FinitePoset) -> Self {
        Self::from_fn(poset, |x, y| {
            if x == y {
                UniPoly::one()
            } else {
                UniPoly::zero()
            }
        })
    }

    pub fn zeta(poset: &'p FinitePoset) -> Self {
        Self::from_fn(poset, |_, _| UniPoly::one())
    }

    /// The cover indicator `κ(x, y) = [x ⋖ y]`.
    pub fn kappa(poset: &'p FinitePoset) -> Self {
        Self::from_fn(poset, |x, y| {
            if poset.up_covers(x).contains(&y) {
                UniPoly::one()
            } else {
                UniPoly::zero()
            }
        })
    }

    pub fn get(&self, x: usize, y: usize) -> UniPoly {
        self.values.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.poset, |x, y| &self.get(x, y) + &other.get(x, y))
    }

    /// Pointwise product with a fixed polynomial.
    pub fn scale(&self, p: &UniPoly) -> Self {
        Self::from_fn(self.poset, |x, y| p * &self.get(x, y))
    }

    /// `(f ∗ g)(x, y) = Σ_{x ≤ z ≤ y} f(x, z) g(z, y)`.
    pub fn convolve(&self, other: &Self) -> Self {
        let p = self.poset;
        Self::from_fn(p, |x, y| {
            p.interval_members(x, y)
                .into_iter()
                .fold(UniPoly::zero(), |acc, z| {
                    &acc + &(&self.get(x, z) * &other.get(z, y))
                })
        })
    }

    /// `f^g(x, y) = Π_{x ≤ z ≤ y} f(x, z)^{g(z, y)}` for a 0/1-valued `g`.
    pub fn pow(&self, exponent: &Self) -> Result<Self> {
        let p = self.poset;
        for v in exponent.values.values() {
            if *v != UniPoly::one() {
                return Err(Error::MethodInapplicable(format!(
                    "exponent function takes the value {v}, only 0 and 1 are supported"
                )));
            }
        }
        Ok(Self::from_fn(p, |x, y| {
            p.interval_members(x, y)
                .into_iter()
                .fold(UniPoly::one(), |acc, z| {
                    if exponent.get(z, y).is_zero() {
                        acc
                    } else {
                        &acc * &self.get(x, z)
                    }
                })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_squared_counts_interval_sizes() {
        let b2 = FinitePoset::boolean(2);
        let z = IncidencePoly::zeta(&b2);
        assert_eq!(z.convolve(&z).get(0, 3), UniPoly::constant(4));
        let d = IncidencePoly::delta(&b2);
        assert_eq!(z.convolve(&d).get(0, 3), UniPoly::one());
    }

    #[test]
    fn power_counts_atoms() {
        let b3 = FinitePoset::boolean(3);
        let zeta = IncidencePoly::zeta(&b3);
        let base = zeta.add(&IncidencePoly::kappa(&b3).scale(&UniPoly::q()));
        let pw = base.pow(&zeta).unwrap();
        assert_eq!(pw.get(0, 7), UniPoly::one_plus_q_pow(3));
        let bad = zeta.scale(&UniPoly::constant(2));
        assert!(base.pow(&bad).is_err());
    }
}
