//! The 2g-gon model of N_g and its cellular chain complex.
//!
//! A regular 2g-gon with vertices V_j = exp(i pi j / g) has opposite sides
//! identified by translation (an orientable surface of genus (g-1)/2), and a
//! central disk of radius `HOLE` whose boundary has antipodal points
//! identified (one more crosscap). Cells:
//!
//! * 0-cells: N (even vertices), S (odd vertices), q = H(0) on the hole.
//! * 1-cells: s_0..s_{g-1} (side j runs V_j -> V_{j+1}; side j+g is -s_j),
//!   m (the hole boundary from angle 0 to pi) and r (V_0 -> q).
//! * one 2-cell D with boundary -2m.
//!
//! The band between the diagonals through V_k and V_{k+1} is a Moebius band
//! corresponding to crosscap k of the crosscap model.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{canonicalize, H1ClassZ};
use crate::linalg::{smith_normal_form, solve_integer, IntMatrix};
use crate::mcg::MappingClass;
use crate::model::Model;

pub const HOLE: f64 = 0.25;

type P2 = [f64; 2];

fn vertex(g: usize, j: usize) -> P2 {
    let a = PI * j as f64 / g as f64;
    [a.cos(), a.sin()]
}

fn hole_point(theta: f64) -> P2 {
    [HOLE * theta.cos(), HOLE * theta.sin()]
}

fn angle(p: P2) -> f64 {
    p[1].atan2(p[0]).rem_euclid(2.0 * PI)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub genus: usize,
    /// 1-cells to 0-cells: 3 x (g + 2).
    pub d1: IntMatrix,
    /// 2-cells to 1-cells: (g + 2) x 1.
    pub d2: IntMatrix,
}

impl ChainComplex {
    pub fn new(genus: usize) -> Self {
        let g = genus;
        let mut d1 = IntMatrix::zeros(3, g + 2);
        for j in 0..g {
            // Even sides run N -> S, odd sides S -> N.
            let (from, to) = if j % 2 == 0 { (0, 1) } else { (1, 0) };
            d1[(to, j)] += 1;
            d1[(from, j)] -= 1;
        }
        d1[(2, g + 1)] = 1;
        d1[(0, g + 1)] = -1;
        let mut d2 = IntMatrix::zeros(g + 2, 1);
        d2[(g, 0)] = -2;
        ChainComplex { genus, d1, d2 }
    }

    pub fn cell_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.genus).map(|j| format!("s{j}")).collect();
        names.push("m".into());
        names.push("r".into());
        names
    }

    /// Plain-text dump of both boundary matrices.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let names = self.cell_names();
        let _ = writeln!(out, "# 2g-gon chain complex, g = {}", self.genus);
        let _ = writeln!(out, "d1 rows N S q; columns {}", names.join(" "));
        for row in self.d1.to_rows() {
            let _ = writeln!(out, "{}", join(&row));
        }
        let _ = writeln!(out, "d2 rows {}; column D", names.join(" "));
        for row in self.d2.to_rows() {
            let _ = writeln!(out, "{}", join(&row));
        }
        out
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    /// Torsion coefficients followed by one 0 per free summand.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(0, self.rank));
        v
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub genus: usize,
    pub h0: HomologyGroup,
    pub h1: HomologyGroup,
    pub h2: HomologyGroup,
}

/// Integral homology of the 2g-gon complex by Smith normal form.
pub fn chain_complex_oracle(genus: usize) -> Result<HomologySummary> {
    if !(3..=11).contains(&genus) || genus.is_multiple_of(2) {
        return Err(Error::OddGenusRequired(genus));
    }
    let cx = ChainComplex::new(genus);
    if !cx.d1.mul(&cx.d2).data().iter().all(|&v| v == 0) {
        return Err(Error::Invariant("d1 d2 != 0".into()));
    }
    let s1 = smith_normal_form(&cx.d1);
    let s2 = smith_normal_form(&cx.d2);
    let (n0, n1, n2) = (3, genus + 2, 1);
    let torsion = |s: &crate::linalg::SmithForm| s.invariant_factors().into_iter().filter(|&d| d > 1).collect();
    Ok(HomologySummary {
        genus,
        h0: HomologyGroup { rank: n0 - s1.rank(), torsion: torsion(&s1) },
        h1: HomologyGroup { rank: n1 - s1.rank() - s2.rank(), torsion: torsion(&s2) },
        h2: HomologyGroup { rank: n2 - s2.rank(), torsion: Vec::new() },
    })
}

/// Closed curve made of straight chords whose endpoints lie on the outer
/// boundary or on the hole; consecutive endpoints are identified points.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve {
    pub chords: Vec<(P2, P2)>,
}

/// Dihedral symmetry of the 2g-gon: rotation by `steps * pi / g`, or the
/// reflection in the line at angle `steps * pi / (2g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSymmetry {
    pub steps: usize,
    pub reflect: bool,
}

impl PolygonSymmetry {
    pub fn apply(&self, g: usize, p: P2) -> P2 {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        let a = angle(p);
        let s = PI * self.steps as f64 / g as f64;
        let b = if self.reflect { s - a } else { a + s };
        [r * b.cos(), r * b.sin()]
    }

    pub fn label(&self) -> String {
        if self.reflect {
            format!("F{}", self.steps)
        } else {
            format!("R{}", self.steps)
        }
    }

    pub fn all(g: usize) -> Vec<PolygonSymmetry> {
        let rot = (0..2 * g).map(|steps| PolygonSymmetry { steps, reflect: false });
        let refl = (0..2 * g).map(|steps| PolygonSymmetry { steps, reflect: true });
        rot.chain(refl).collect()
    }
}

pub struct PolygonModel {
    genus: usize,
}

impl PolygonModel {
    pub fn new(genus: usize) -> Result<Self> {
        crate::model::build_surface(genus)?;
        Ok(PolygonModel { genus })
    }

    fn side_chain(&self, i: usize) -> (usize, f64) {
        let g = self.genus;
        if i < g {
            (i, 1.0)
        } else {
            (i - g, -1.0)
        }
    }

    /// Cellular 1-chain of a fixed path in the polygon cut along r, from V_0
    /// to the boundary point `p`.
    fn potential(&self, p: P2) -> Vec<f64> {
        let g = self.genus;
        let mut out = vec![0.0; g + 2];
        let rad = (p[0] * p[0] + p[1] * p[1]).sqrt();
        if rad < (HOLE + 0.5) / 2.0 {
            out[g + 1] = 1.0;
            out[g] = angle(p) / PI;
            return out;
        }
        let a = angle(p);
        let j = ((a / (PI / g as f64)).floor() as usize).min(2 * g - 1);
        for i in 0..j {
            let (cell, sign) = self.side_chain(i);
            out[cell] += sign;
        }
        let (v0, v1) = (vertex(g, j), vertex(g, j + 1));
        let len = ((v1[0] - v0[0]).powi(2) + (v1[1] - v0[1]).powi(2)).sqrt();
        let t = ((p[0] - v0[0]).powi(2) + (p[1] - v0[1]).powi(2)).sqrt() / len;
        let (cell, sign) = self.side_chain(j);
        out[cell] += sign * t;
        out
    }

    /// Cellular cycle of a closed curve (coordinates s_0..s_{g-1}, m, r).
    pub fn cellular_class(&self, c: &PolyCurve) -> Result<Vec<i64>> {
        let g = self.genus;
        let mut acc = vec![0.0; g + 2];
        for &(a, b) in &c.chords {
            let (pa, pb) = (self.potential(a), self.potential(b));
            for i in 0..g + 2 {
                acc[i] += pb[i] - pa[i];
            }
        }
        let z: Vec<i64> = acc.iter().map(|v| v.round() as i64).collect();
        if acc.iter().zip(&z).any(|(v, r)| (v - *r as f64).abs() > 1e-6) {
            return Err(Error::DegenerateGeometry("polygon curve does not close".into()));
        }
        let cx = ChainComplex::new(g);
        if cx.d1.mul_vec(&z).iter().any(|&v| v != 0) {
            return Err(Error::Invariant("traced chain is not a cycle".into()));
        }
        Ok(z)
    }

    /// Core of band k: the diameter through the midpoint of side k, crossing
    /// the hole.
    pub fn band_core(&self, k: usize) -> PolyCurve {
        let g = self.genus;
        let mid = |j: usize| {
            let (a, b) = (vertex(g, j), vertex(g, j + 1));
            [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
        };
        let alpha = PI * (2 * k + 1) as f64 / (2 * g) as f64;
        PolyCurve { chords: vec![(mid(k), hole_point(alpha)), (hole_point(alpha + PI), mid(k + g))] }
    }

    /// Curve cutting the corners at V_{k+1} and V_{k+1+g}; it meets bands
    /// k and k+1 only.
    pub fn corner_curve(&self, k: usize) -> PolyCurve {
        let g = self.genus;
        let mid = |j: usize| {
            let j = j % (2 * g);
            let (a, b) = (vertex(g, j), vertex(g, j + 1));
            [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
        };
        PolyCurve { chords: vec![(mid(k), mid(k + 1)), (mid(k + 1 + g), mid(k + g))] }
    }

    pub fn transform(&self, s: &PolygonSymmetry, c: &PolyCurve) -> PolyCurve {
        let g = self.genus;
        PolyCurve { chords: c.chords.iter().map(|&(a, b)| (s.apply(g, a), s.apply(g, b))).collect() }
    }

    /// Band signs: mu_k corresponds to `(-1)^k` times the band-k core class.
    pub fn band_signs(&self) -> Vec<i64> {
        (0..self.genus).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect()
    }

    /// Expresses a cellular cycle in the crosscap basis mu_1..mu_g.
    pub fn to_crosscap(&self, z: &[i64]) -> Result<H1ClassZ> {
        let g = self.genus;
        let signs = self.band_signs();
        let mut cols = Vec::with_capacity(g + 1);
        for k in 0..g {
            let c = self.cellular_class(&self.band_core(k))?;
            cols.push(c.iter().map(|v| v * signs[k]).collect::<Vec<i64>>());
        }
        cols.push(ChainComplex::new(g).d2.column(0));
        let a = IntMatrix::from_columns(&cols);
        let y = solve_integer(&a, z).ok_or_else(|| Error::Invariant("cycle outside the band lattice".into()))?;
        Ok(canonicalize(&y[..g]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcPair {
    /// Diagonal through V_k and V_{k+g}.
    pub diagonal: usize,
    /// Meridian between crosscaps k and k+1 (1-based, cyclic; meridian g
    /// lies between crosscaps g and 1).
    pub meridian: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveAgreement {
    pub polygon_curve: String,
    pub crosscap_curve: String,
    pub polygon_class: Vec<i64>,
    pub crosscap_class: Vec<i64>,
    /// Classes agree up to the orientation of the curve.
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryAgreement {
    pub polygon: String,
    /// Matching crosscap-model symmetry as (cycles, pole_swap, reflect).
    pub crosscap: Option<(String, bool, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosswalkTable {
    pub genus: usize,
    pub arcs: Vec<ArcPair>,
    /// Even vertices map to N, odd vertices to S.
    pub poles: [String; 2],
    pub band_signs: Vec<i64>,
    /// The band cores give Z^g -> H_1 with kernel exactly 2(mu_1 + ... + mu_g).
    pub lattice_ok: bool,
    pub curves: Vec<CurveAgreement>,
    pub symmetries: Vec<SymmetryAgreement>,
    /// Every polygon symmetry matches exactly one crosscap symmetry, and the
    /// matching is a bijection.
    pub symmetries_bijective: bool,
    /// The rotation by pi/g matches sigma = t tau3.
    pub rotation_is_sigma: bool,
}

impl CrosswalkTable {
    pub fn all_agree(&self) -> bool {
        self.arcs.len() == self.genus
            && self.lattice_ok
            && self.curves.iter().all(|c| c.agree)
            && self.symmetries_bijective
            && self.rotation_is_sigma
    }
}

pub fn crosswalk(model: &Model) -> Result<CrosswalkTable> {
    let g = model.genus();
    let poly = PolygonModel::new(g)?;
    let arcs = (0..g).map(|k| ArcPair { diagonal: k, meridian: if k == 0 { g } else { k } }).collect();

    let signs = poly.band_signs();
    let cores: Vec<Vec<i64>> =
        (0..g).map(|k| poly.cellular_class(&poly.band_core(k))).collect::<Result<_>>()?;
    let b = IntMatrix::from_columns(
        &cores.iter().zip(&signs).map(|(c, s)| c.iter().map(|v| v * s).collect()).collect::<Vec<Vec<i64>>>(),
    );
    let bd = ChainComplex::new(g).d2;
    let u_img = b.mul_vec(&vec![1; g]);
    let u2_img: Vec<i64> = u_img.iter().map(|v| 2 * v).collect();
    let lattice_ok = smith_normal_form(&b).rank() == g
        && solve_integer(&bd, &u_img).is_none()
        && solve_integer(&bd, &u2_img).is_some();

    let mut curves = Vec::new();
    for k in 0..g {
        let mu = model.standard_curve(&format!("mu_{}", k + 1))?;
        let pc = poly.to_crosscap(&cores[k])?;
        curves.push(agreement(format!("band core {k}"), &mu.name, &pc, &mu.class_z));
    }
    for k in 0..g {
        let a = model.standard_curve(&format!("a_{}", k + 1))?;
        let pc = poly.to_crosscap(&poly.cellular_class(&poly.corner_curve(k))?)?;
        curves.push(agreement(format!("corner curve {k}"), &a.name, &pc, &a.class_z));
    }

    let rigid = model.symmetry_group()?;
    let rigid_classes: Vec<MappingClass> =
        rigid.iter().map(|r| MappingClass::from_rigid(model, r)).collect::<Result<_>>()?;
    let mut symmetries = Vec::new();
    let mut hits = vec![0usize; rigid.len()];
    let mut rotation_is_sigma = false;
    let sigma = model.standard_symmetry("sigma")?;
    for s in PolygonSymmetry::all(g) {
        let images: Vec<H1ClassZ> = (0..g)
            .map(|k| {
                let img = poly.transform(&s, &poly.band_core(k));
                let class = poly.to_crosscap(&poly.cellular_class(&img)?)?;
                Ok(class.scale(signs[k]))
            })
            .collect::<Result<_>>()?;
        let m = MappingClass::from_images(&images)?;
        let found = rigid_classes.iter().position(|rc| *rc == m);
        if let Some(i) = found {
            hits[i] += 1;
            if s == (PolygonSymmetry { steps: 1, reflect: false }) {
                rotation_is_sigma = rigid[i] == sigma;
            }
        }
        symmetries.push(SymmetryAgreement {
            polygon: s.label(),
            crosscap: found.map(|i| (rigid[i].cycles(), rigid[i].swaps_poles(), rigid[i].is_reflection())),
        });
    }
    let symmetries_bijective = hits.iter().all(|&h| h == 1);
    Ok(CrosswalkTable {
        genus: g,
        arcs,
        poles: ["N".into(), "S".into()],
        band_signs: signs,
        lattice_ok,
        curves,
        symmetries,
        symmetries_bijective,
        rotation_is_sigma,
    })
}

fn agreement(polygon_curve: String, crosscap_curve: &str, p: &H1ClassZ, c: &H1ClassZ) -> CurveAgreement {
    CurveAgreement {
        polygon_curve,
        crosscap_curve: crosscap_curve.to_string(),
        polygon_class: p.coeffs().to_vec(),
        crosscap_class: c.coeffs().to_vec(),
        agree: p == c || *p == c.neg(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_crosscap_lattice() {
        for g in [3, 5, 7, 9, 11] {
            let h = chain_complex_oracle(g).unwrap();
            assert_eq!(h.h0, HomologyGroup { rank: 1, torsion: vec![] });
            assert_eq!(h.h1, HomologyGroup { rank: g - 1, torsion: vec![2] });
            assert_eq!(h.h2, HomologyGroup { rank: 0, torsion: vec![] });
        }
        assert_eq!(chain_complex_oracle(5).unwrap().h1.invariant_factors(), vec![2, 0, 0, 0, 0]);
        assert_eq!(chain_complex_oracle(5).unwrap().h1.to_string(), "Z^4 + Z/2");
        assert!(chain_complex_oracle(4).is_err());
        assert!(chain_complex_oracle(13).is_err());
    }

    #[test]
    fn dump_lists_cells() {
        let d = ChainComplex::new(3).dump();
        assert!(d.contains("s0 s1 s2 m r"));
        assert!(d.lines().count() > 8);
    }

    #[test]
    fn band_core_classes() {
        let p = PolygonModel::new(5).unwrap();
        // c_k = sum_{i>k} s_i - sum_{i<k} s_i - m
        assert_eq!(p.cellular_class(&p.band_core(0)).unwrap(), vec![0, 1, 1, 1, 1, -1, 0]);
        assert_eq!(p.cellular_class(&p.band_core(2)).unwrap(), vec![-1, -1, 0, 1, 1, -1, 0]);
        assert_eq!(p.cellular_class(&p.corner_curve(1)).unwrap(), vec![0, 1, 1, 0, 0, 0, 0]);
        assert_eq!(p.cellular_class(&p.corner_curve(4)).unwrap(), vec![-1, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn crosswalk_agrees() {
        for g in [3, 5, 7, 9] {
            let m = Model::new(g).unwrap();
            let t = crosswalk(&m).unwrap();
            assert!(t.lattice_ok, "g={g}");
            for c in &t.curves {
                assert!(c.agree, "g={g} {c:?}");
            }
            assert!(t.symmetries_bijective, "g={g} {:?}", t.symmetries);
            assert!(t.rotation_is_sigma);
            assert!(t.all_agree());
        }
    }
}
