//! First homology of N_g in the crosscap-core basis mu_1..mu_g.
//!
//! With integer coefficients H_1(N_g) = Z^g / <2(mu_1 + ... + mu_g)>, which
//! is Z^{g-1} (+) Z/2. Mod 2 it is (Z/2)^g with the identity intersection form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::CurveData;

/// Integral class in canonical form: last coordinate in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1ClassZ {
    coeffs: Vec<i64>,
}

impl H1ClassZ {
    pub fn new(v: &[i64]) -> Self {
        canonicalize(v)
    }

    pub fn zero(genus: usize) -> Self {
        H1ClassZ { coeffs: vec![0; genus] }
    }

    pub fn basis(genus: usize, i: usize) -> Self {
        let mut v = vec![0; genus];
        v[i] = 1;
        canonicalize(&v)
    }

    /// The order-two class mu_1 + ... + mu_g.
    pub fn torsion(genus: usize) -> Self {
        H1ClassZ { coeffs: vec![1; genus] }
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &H1ClassZ) -> H1ClassZ {
        let v: Vec<i64> = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        canonicalize(&v)
    }

    pub fn scale(&self, k: i64) -> H1ClassZ {
        let v: Vec<i64> = self.coeffs.iter().map(|a| a * k).collect();
        canonicalize(&v)
    }

    pub fn neg(&self) -> H1ClassZ {
        self.scale(-1)
    }

    pub fn reduce_mod2(&self) -> H1ClassZ2 {
        H1ClassZ2 { bits: self.coeffs.iter().map(|c| c.rem_euclid(2) as u8).collect() }
    }
}

/// Mod-2 class as a bit vector in the mu basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1ClassZ2 {
    bits: Vec<u8>,
}

impl H1ClassZ2 {
    pub fn new(bits: &[u8]) -> Self {
        H1ClassZ2 { bits: bits.iter().map(|b| b & 1).collect() }
    }

    pub fn zero(genus: usize) -> Self {
        H1ClassZ2 { bits: vec![0; genus] }
    }

    pub fn basis(genus: usize, i: usize) -> Self {
        let mut bits = vec![0; genus];
        bits[i] = 1;
        H1ClassZ2 { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn add(&self, other: &H1ClassZ2) -> H1ClassZ2 {
        H1ClassZ2 { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }
}

/// Reduces modulo the torsion relation so the last coordinate is 0 or 1.
pub fn canonicalize(v: &[i64]) -> H1ClassZ {
    let Some(&last) = v.last() else {
        return H1ClassZ { coeffs: Vec::new() };
    };
    let k = last.div_euclid(2);
    H1ClassZ { coeffs: v.iter().map(|x| x - 2 * k).collect() }
}

/// Splits a class into free coordinates (x_i - x_g) and the torsion bit.
pub fn free_part(x: &H1ClassZ) -> (Vec<i64>, u8) {
    let c = x.coeffs();
    let last = *c.last().expect("genus >= 1");
    let free = c[..c.len() - 1].iter().map(|xi| xi - last).collect();
    (free, last.rem_euclid(2) as u8)
}

/// Inverse of [`free_part`].
pub fn from_free_part(free: &[i64], torsion: u8) -> H1ClassZ {
    let t = i64::from(torsion & 1);
    let mut v: Vec<i64> = free.iter().map(|f| f + t).collect();
    v.push(t);
    canonicalize(&v)
}

pub fn pair_z2(x: &H1ClassZ2, y: &H1ClassZ2) -> u8 {
    x.bits.iter().zip(&y.bits).fold(0, |acc, (a, b)| acc ^ (a & b))
}

/// Integral pairing of a class against a two-sided curve.
pub fn pair_z(x: &H1ClassZ, c: &CurveData) -> Result<i64> {
    let row = c.pairing_row.as_ref().ok_or_else(|| Error::TwoSidedRequired(c.name.clone()))?;
    Ok(dot_row(x.coeffs(), row))
}

pub(crate) fn dot_row(coeffs: &[i64], row: &[i64]) -> i64 {
    coeffs.iter().zip(row).map(|(a, b)| a * b).sum()
}

/// Homology action of the (right-hand) twist about `c`:
/// `x + <x, c> [c]`.
pub fn transvect(x: &H1ClassZ, c: &CurveData) -> Result<H1ClassZ> {
    let k = pair_z(x, c)?;
    Ok(x.add(&c.class_z.scale(k)))
}

/// Transvection with an explicit row and class, used for inverse twists
/// (negated row).
pub fn transvect_with(x: &H1ClassZ, row: &[i64], class: &H1ClassZ) -> H1ClassZ {
    x.add(&class.scale(dot_row(x.coeffs(), row)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        assert!(canonicalize(&[2, 2, 2, 2, 2]).is_zero());
        assert_eq!(canonicalize(&[1, 1, 1, 1, 1]), H1ClassZ::torsion(5));
        assert!(!H1ClassZ::torsion(5).is_zero());
        assert_eq!(canonicalize(&[0, 0, 0, 0, 3]).coeffs(), &[-2, -2, -2, -2, 1]);
        assert!(H1ClassZ::torsion(5).scale(2).is_zero());
    }

    #[test]
    fn free_part_examples() {
        assert_eq!(free_part(&H1ClassZ::torsion(5)), (vec![0, 0, 0, 0], 1));
        assert_eq!(free_part(&H1ClassZ::basis(5, 0)), (vec![1, 0, 0, 0], 0));
        assert_eq!(free_part(&canonicalize(&[1, 1, 0, 0, 0])), (vec![1, 1, 0, 0], 0));
    }

    #[test]
    fn mod2_pairings() {
        let mu1 = H1ClassZ2::basis(5, 0);
        assert_eq!(pair_z2(&mu1, &mu1), 1);
        let a1 = H1ClassZ2::new(&[1, 1, 0, 0, 0]);
        let a2 = H1ClassZ2::new(&[0, 1, 1, 0, 0]);
        let a3 = H1ClassZ2::new(&[0, 0, 1, 1, 0]);
        assert_eq!(pair_z2(&a1, &a2), 1);
        assert_eq!(pair_z2(&a1, &a3), 0);
    }

    #[test]
    fn transvection_inverse_by_negated_row() {
        let class = canonicalize(&[1, 1, 0, 0, 0]);
        let row = [1, -1, 0, 0, 0];
        let neg: Vec<i64> = row.iter().map(|r| -r).collect();
        let x = canonicalize(&[3, -1, 4, 1, 0]);
        let y = transvect_with(&x, &row, &class);
        assert_eq!(transvect_with(&y, &neg, &class), x);
        let mu1 = H1ClassZ::basis(5, 0);
        assert_eq!(transvect_with(&mu1, &row, &class).coeffs(), &[2, 1, 0, 0, 0]);
    }

    proptest! {
        #[test]
        fn canonicalize_idempotent(v in prop::collection::vec(-20i64..20, 1..10)) {
            let c = canonicalize(&v);
            prop_assert_eq!(canonicalize(c.coeffs()), c.clone());
            prop_assert!((0..=1).contains(c.coeffs().last().unwrap()));
        }

        #[test]
        fn free_split_roundtrip(free in prop::collection::vec(-20i64..20, 1..10), t in 0u8..2) {
            let x = from_free_part(&free, t);
            prop_assert_eq!(free_part(&x), (free.clone(), t));
            prop_assert_eq!(from_free_part(&free_part(&x).0, free_part(&x).1), x);
        }

        #[test]
        fn class_equality_is_modulo_torsion_relation(v in prop::collection::vec(-20i64..20, 5), k in -5i64..5) {
            let shifted: Vec<i64> = v.iter().map(|x| x + 2 * k).collect();
            prop_assert_eq!(canonicalize(&v), canonicalize(&shifted));
        }
    }
}
