//! Mapping classes through their action on H_1(N_g; Z).
//!
//! An automorphism of Z^{g-1} (+) Z/2 is stored as the matrix on the free
//! quotient (coordinates x_i - x_g) together with the mod-2 matrix on
//! (Z/2)^g. The pair determines the action exactly: the image of a class has
//! free part from the first and torsion bit (last coordinate mod 2) from the
//! second.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{free_part, from_free_part, H1ClassZ};
use crate::linalg::{F2Matrix, IntMatrix};
use crate::model::{CurveData, Model, RigidSymmetry};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingClass {
    genus: usize,
    mat_free: IntMatrix,
    mat_z2: F2Matrix,
    det_free: i64,
}

impl MappingClass {
    pub fn identity(genus: usize) -> Self {
        MappingClass {
            genus,
            mat_free: IntMatrix::identity(genus - 1),
            mat_z2: F2Matrix::identity(genus),
            det_free: 1,
        }
    }

    /// From an integral g x g matrix whose column j is a lift of the image of
    /// mu_j. The lift must preserve the torsion relation: L u = u mod 2u.
    pub fn from_lift(lift: &IntMatrix) -> Result<Self> {
        let g = lift.rows();
        if !lift.is_square() || g < 2 {
            return Err(Error::Invariant(format!("lift must be square of size >= 2, got {}x{}", lift.rows(), lift.cols())));
        }
        let lu: Vec<i64> = (0..g).map(|i| lift.row(i).iter().sum()).collect();
        if lu.iter().any(|&v| v != lu[0]) || lu[0].rem_euclid(2) != 1 {
            return Err(Error::Invariant("lift does not preserve the torsion class".into()));
        }
        let mut free = IntMatrix::zeros(g - 1, g - 1);
        for i in 0..g - 1 {
            for j in 0..g - 1 {
                free[(i, j)] = lift[(i, j)] - lift[(g - 1, j)];
            }
        }
        let det_free = free.det();
        if det_free.abs() != 1 {
            return Err(Error::Invariant(format!("free part has determinant {det_free}")));
        }
        let mat_z2 = F2Matrix::from_int(lift);
        if mat_z2.inverse().is_none() {
            return Err(Error::Invariant("mod-2 part is singular".into()));
        }
        Ok(MappingClass { genus: g, mat_free: free, mat_z2, det_free })
    }

    /// From the images of mu_1..mu_g.
    pub fn from_images(images: &[H1ClassZ]) -> Result<Self> {
        let cols: Vec<Vec<i64>> = images.iter().map(|c| c.coeffs().to_vec()).collect();
        Self::from_lift(&IntMatrix::from_columns(&cols))
    }

    /// Twist about a two-sided curve, raised to `exponent`:
    /// x -> x + exponent * <x, c> [c].
    pub fn dehn_twist(curve: &CurveData, exponent: i64) -> Result<Self> {
        let row = curve.pairing_row.as_ref().ok_or_else(|| Error::TwoSidedRequired(curve.name.clone()))?;
        let class = curve.class_z.coeffs();
        let g = class.len();
        let mut lift = IntMatrix::identity(g);
        for i in 0..g {
            for j in 0..g {
                lift[(i, j)] += exponent * class[i] * row[j];
            }
        }
        Self::from_lift(&lift)
    }

    /// Action of a rigid symmetry, traced from the images of the cores.
    pub fn from_rigid(model: &Model, r: &RigidSymmetry) -> Result<Self> {
        Self::from_images(&model.trace_rigid_on_cores(r)?)
    }

    /// Crosscap transposition exchanging crosscaps i and i+1 (1-based, cyclic).
    pub fn crosscap_transposition(model: &Model, i: usize) -> Result<Self> {
        let g = model.genus();
        if i == 0 || i > g {
            return Err(Error::UnknownCurve(format!("U{i}")));
        }
        Self::from_images(&model.trace_exchange_on_cores(i - 1)?)
    }

    /// Crosscap slide Y_i = A_i U_i.
    pub fn crosscap_slide(model: &Model, i: usize) -> Result<Self> {
        let a = model.standard_curve(&format!("a_{i}"))?;
        Ok(Self::dehn_twist(&a, 1)?.compose(&Self::crosscap_transposition(model, i)?))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn mat_free(&self) -> &IntMatrix {
        &self.mat_free
    }

    pub fn mat_z2(&self) -> &F2Matrix {
        &self.mat_z2
    }

    pub fn det_free(&self) -> i64 {
        self.det_free
    }

    /// Free part reduced mod 3, entries in 0..3, row-major.
    pub fn mat_z3(&self) -> Vec<u8> {
        self.mat_free.data().iter().map(|v| v.rem_euclid(3) as u8).collect()
    }

    /// The twist subgroup is the kernel of the free-part determinant.
    pub fn in_twist_subgroup(&self) -> bool {
        self.det_free == 1
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        MappingClass {
            genus: self.genus,
            mat_free: self.mat_free.mul(&other.mat_free),
            mat_z2: self.mat_z2.mul(&other.mat_z2),
            det_free: self.det_free * other.det_free,
        }
    }

    pub fn try_compose(&self, other: &MappingClass) -> Result<MappingClass> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            genus: self.genus,
            mat_free: self.mat_free.inverse_unimodular().expect("free part is unimodular"),
            mat_z2: self.mat_z2.inverse().expect("mod-2 part is invertible"),
            det_free: self.det_free,
        }
    }

    pub fn power(&self, n: i64) -> MappingClass {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = MappingClass::identity(self.genus);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.mat_free.is_identity() && self.mat_z2.is_identity()
    }

    pub fn apply(&self, x: &H1ClassZ) -> H1ClassZ {
        let (free, _) = free_part(x);
        let bits: Vec<u8> = x.coeffs().iter().map(|c| c.rem_euclid(2) as u8).collect();
        let img_bits = self.mat_z2.mul_vec(&bits);
        from_free_part(&self.mat_free.mul_vec(&free), img_bits[self.genus - 1])
    }

    /// Canonical integral lift: column j is the canonical image of mu_j.
    pub fn lift(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> =
            (0..self.genus).map(|j| self.apply(&H1ClassZ::basis(self.genus, j)).coeffs().to_vec()).collect();
        IntMatrix::from_columns(&cols)
    }

    /// Agreement in both the mod-2 and mod-3 representations.
    pub fn equal_in_reps(&self, other: &MappingClass) -> bool {
        self.mat_z2 == other.mat_z2 && self.mat_z3() == other.mat_z3()
    }

    /// Exact order on H_1, searched up to `cap`.
    pub fn rep_order(&self, cap: usize) -> Option<usize> {
        let mut cur = self.clone();
        for n in 1..=cap {
            if cur.is_identity() {
                return Some(n);
            }
            cur = cur.compose(self);
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "genus": self.genus,
            "mat_free": self.mat_free.to_rows(),
            "mat_z2": self.mat_z2.to_rows(),
            "det_free": self.det_free,
        })
    }
}
