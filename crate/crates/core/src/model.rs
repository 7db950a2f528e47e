//! The g-crosscap model of N_g (odd g).
//!
//! The sphere carries g crosscaps on its equator, at longitudes 2*pi*k/g.
//! Each crosscap is a small spherical cap whose boundary circle has
//! antipodal points identified. Curves are polylines of great arcs; when a
//! curve "passes" a crosscap it reaches the boundary circle and continues
//! from the antipodal point. Rigid symmetries are orthogonal maps of the
//! sphere that permute the crosscaps.
//!
//! Homology data is computed from geometry alone:
//! * integral classes from winding numbers around each crosscap (measured
//!   against a path from the north pole), see [`Model::trace_class`];
//! * integral pairings by signed crossing counts, see
//!   [`Model::signed_pairing_oracle`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::{eval_index, ModelConfig, Record};
use crate::error::{Error, Result};
use crate::geometry::{add, arc_crossing, cross, dot, scale, sph, Orthogonal, Vec3};
use crate::homology::{canonicalize, H1ClassZ, H1ClassZ2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: usize,
    /// Odd genus at least 5.
    pub theorem_scope: bool,
    pub warning: Option<String>,
}

impl SurfaceSpec {
    /// Poles joined by the g meridian arcs.
    pub const POLES: [&'static str; 2] = ["N", "S"];

    pub fn crosscap_count(&self) -> usize {
        self.genus
    }

    /// One meridian arc between each pair of consecutive crosscaps.
    pub fn arc_count(&self) -> usize {
        self.genus
    }
}

pub fn build_surface(genus: usize) -> Result<SurfaceSpec> {
    if genus < 3 || genus.is_multiple_of(2) {
        return Err(Error::OddGenusRequired(genus));
    }
    let theorem_scope = genus >= 5;
    let warning = (!theorem_scope).then(|| format!("genus {genus} is below the theorem range (odd g >= 5)"));
    Ok(SurfaceSpec { genus, theorem_scope, warning })
}

/// Element of the order-4g symmetry group of the crosscap model: a dihedral
/// motion of the equator, optionally composed with the north-south swap.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RigidSymmetry {
    genus: usize,
    /// 0-based image of each crosscap.
    perm: Vec<usize>,
    pole_swap: bool,
    reflect: bool,
}

impl RigidSymmetry {
    pub fn identity(genus: usize) -> Self {
        Self::rotation(genus, 0)
    }

    /// Rotation by `steps` crosscaps eastward.
    pub fn rotation(genus: usize, steps: i64) -> Self {
        let s = steps.rem_euclid(genus as i64) as usize;
        RigidSymmetry { genus, perm: (0..genus).map(|k| (k + s) % genus).collect(), pole_swap: false, reflect: false }
    }

    /// Reflection in a vertical plane sending crosscap k to `sum - k`
    /// (0-based). The mirror passes through position `sum / 2`.
    pub fn reflection(genus: usize, sum: i64) -> Self {
        let g = genus as i64;
        RigidSymmetry {
            genus,
            perm: (0..g).map(|k| (sum - k).rem_euclid(g) as usize).collect(),
            pole_swap: false,
            reflect: true,
        }
    }

    pub fn pole_swap(genus: usize) -> Self {
        RigidSymmetry { pole_swap: true, ..Self::identity(genus) }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn swaps_poles(&self) -> bool {
        self.pole_swap
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &RigidSymmetry) -> Result<RigidSymmetry> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(RigidSymmetry {
            genus: self.genus,
            perm: other.perm.iter().map(|&k| self.perm[k]).collect(),
            pole_swap: self.pole_swap ^ other.pole_swap,
            reflect: self.reflect ^ other.reflect,
        })
    }

    pub fn inverse(&self) -> RigidSymmetry {
        let mut perm = vec![0; self.genus];
        for (k, &p) in self.perm.iter().enumerate() {
            perm[p] = k;
        }
        RigidSymmetry { perm, ..self.clone() }
    }

    pub fn power(&self, n: i64) -> RigidSymmetry {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = RigidSymmetry::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out).expect("same genus");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == RigidSymmetry::identity(self.genus)
    }

    /// Exact order in the symmetry group.
    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur).expect("same genus");
            n += 1;
        }
        n
    }

    /// Whether the underlying sphere map preserves orientation.
    pub fn preserves_sphere_orientation(&self) -> bool {
        !(self.reflect ^ self.pole_swap)
    }

    /// The orthogonal map realizing this symmetry.
    pub fn orthogonal(&self) -> Orthogonal {
        let dtheta = 2.0 * PI / self.genus as f64;
        let s = self.perm[0] as f64;
        let planar = if self.reflect {
            Orthogonal::reflection_vertical(s * dtheta / 2.0)
        } else {
            Orthogonal::rotation_z(s * dtheta)
        };
        if self.pole_swap {
            Orthogonal::reflection_equator().compose(&planar)
        } else {
            planar
        }
    }

    /// Cycle notation of the crosscap permutation, 1-based.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.genus];
        let mut out = String::new();
        for start in 0..self.genus {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push((k + 1).to_string());
                k = self.perm[k];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for RigidSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rigid[g={} perm={} pole_swap={} reflect={}]", self.genus, self.cycles(), u8::from(self.pole_swap), u8::from(self.reflect))
    }
}

/// Closed curve on the sphere model: polyline pieces separated by crosscap
/// passages. `jumps[i]` is the crosscap between piece `i` and piece `i + 1`
/// (cyclically). A curve without passages is a single closed piece.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePath {
    pub pieces: Vec<Vec<Vec3>>,
    pub jumps: Vec<usize>,
}

impl SpherePath {
    pub fn transform(&self, o: &Orthogonal, perm: &[usize]) -> SpherePath {
        SpherePath {
            pieces: self.pieces.iter().map(|p| p.iter().map(|&v| o.apply(v)).collect()).collect(),
            jumps: self.jumps.iter().map(|&k| perm[k]).collect(),
        }
    }

    /// Drawn segments, tagged with their piece index.
    pub fn segments(&self) -> Vec<(usize, Vec3, Vec3)> {
        let mut out = Vec::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            for w in piece.windows(2) {
                out.push((i, w[0], w[1]));
            }
            if self.jumps.is_empty() {
                out.push((i, *piece.last().unwrap(), piece[0]));
            }
        }
        out
    }
}

/// A named curve with its homology data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub name: String,
    /// Crosscaps passed, 1-based, in order of travel.
    pub passages: Vec<usize>,
    pub two_sided: bool,
    pub class_z2: H1ClassZ2,
    pub class_z: H1ClassZ,
    /// Entry i is the integral pairing <mu_i, this curve>; two-sided only.
    pub pairing_row: Option<Vec<i64>>,
    /// Annulus orientation of the first piece relative to the sphere.
    pub coorient: i8,
    #[serde(skip)]
    pub path: Option<SpherePath>,
}

impl CurveData {
    /// Compares as unoriented curves. Returns `Some(1)` when the twists
    /// about both curves agree, `Some(-1)` when one is the inverse of the
    /// other, `None` when the homology data differs.
    pub fn twist_relation(&self, other: &CurveData) -> Option<i8> {
        if self.class_z2 != other.class_z2 || !same_cyclic_up_to_reversal(&self.passages, &other.passages) {
            return None;
        }
        let (r1, r2) = (self.pairing_row.as_ref()?, other.pairing_row.as_ref()?);
        let class_sign = if self.class_z == other.class_z {
            1
        } else if self.class_z == other.class_z.neg() {
            -1
        } else {
            return None;
        };
        let row_sign = if r1 == r2 {
            1
        } else if r1.iter().zip(r2).all(|(a, b)| *a == -*b) {
            -1
        } else {
            return None;
        };
        // Rows are zero for boundary-type curves; the twist is then trivial
        // on homology and both signs describe it.
        if r1.iter().all(|&v| v == 0) {
            return Some(1);
        }
        Some(class_sign * row_sign)
    }
}

fn same_cyclic_up_to_reversal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let rev: Vec<usize> = b.iter().rev().copied().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(i + s) % n]) || (0..n).all(|i| a[i] == rev[(i + s) % n]))
}

/// Placement of crosscaps on the sphere.
#[derive(Clone, Copy, Debug)]
pub struct Geometry {
    pub genus: usize,
    /// Longitude step between crosscaps.
    pub dtheta: f64,
    /// Angular radius of each crosscap cap.
    pub rho: f64,
}

/// Longitude offset of the winding probes; keeps them off every vertex.
const PROBE_OFFSET: f64 = 0.012_345_6;
/// Start angle of the crosscap core loops.
const CORE_PHASE: f64 = 0.3;
const ARC_STEPS: usize = 16;
const MAX_STEP: f64 = 0.04;

impl Geometry {
    pub fn new(genus: usize) -> Self {
        let dtheta = 2.0 * PI / genus as f64;
        Geometry { genus, dtheta, rho: (0.15 * dtheta).min(0.1) }
    }

    pub fn center(&self, k: usize) -> Vec3 {
        sph(self.dtheta * k as f64, 0.0)
    }

    fn frame(&self, k: usize) -> (Vec3, Vec3, Vec3) {
        let lon = self.dtheta * k as f64;
        (sph(lon, 0.0), [-lon.sin(), lon.cos(), 0.0], [0.0, 0.0, 1.0])
    }

    /// Point at angular distance `r` from crosscap `k`'s centre in direction
    /// `phi` (0 = east, pi/2 = north).
    pub fn hole_point(&self, k: usize, r: f64, phi: f64) -> Vec3 {
        let (z, east, north) = self.frame(k);
        add(scale(z, r.cos()), scale(add(scale(east, phi.cos()), scale(north, phi.sin())), r.sin()))
    }

    /// Direction angle of `p` as seen from crosscap `k`'s centre.
    pub fn local_angle(&self, k: usize, p: Vec3) -> f64 {
        let (_, east, north) = self.frame(k);
        dot(p, north).atan2(dot(p, east))
    }

    /// Path from the north pole to crosscap `k`'s centre.
    fn probe(&self, k: usize) -> [Vec3; 3] {
        [[0.0, 0.0, 1.0], sph(self.dtheta * k as f64 + PROBE_OFFSET, 0.4), self.center(k)]
    }

    /// Counter-clockwise arc on crosscap `k`'s boundary from `p` to its antipode.
    fn boundary_half_arc(&self, k: usize, p: Vec3) -> Vec<Vec3> {
        let phi = self.local_angle(k, p);
        (0..=ARC_STEPS).map(|j| self.hole_point(k, self.rho, phi + PI * j as f64 / ARC_STEPS as f64)).collect()
    }
}

fn lat_path(lon_a: f64, lon_b: f64, lat: f64) -> Vec<Vec3> {
    let n = ((lon_b - lon_a).abs() / MAX_STEP).ceil().max(1.0) as usize;
    (0..=n).map(|j| sph(lon_a + (lon_b - lon_a) * j as f64 / n as f64, lat)).collect()
}

fn side_sign(rec: &Record, key: &str, default: &str) -> Result<f64> {
    match rec.get(key).unwrap_or(default) {
        "north" => Ok(1.0),
        "south" => Ok(-1.0),
        other => Err(rec.error(format!("`{key}` must be north or south, got `{other}`"))),
    }
}

/// The crosscap model for one genus with its curve configuration.
#[derive(Clone, Debug)]
pub struct Model {
    pub spec: SurfaceSpec,
    pub geometry: Geometry,
    pub config: Arc<ModelConfig>,
    cores: Vec<SpherePath>,
}

impl Model {
    pub fn new(genus: usize) -> Result<Self> {
        Self::with_config(genus, Arc::new(ModelConfig::default_config()))
    }

    pub fn with_config(genus: usize, config: Arc<ModelConfig>) -> Result<Self> {
        let spec = build_surface(genus)?;
        let geometry = Geometry::new(genus);
        let cores = (0..genus).map(|k| core_path(&geometry, k)).collect();
        Ok(Model { spec, geometry, config, cores })
    }

    pub fn genus(&self) -> usize {
        self.spec.genus
    }

    pub fn standard_symmetry(&self, name: &str) -> Result<RigidSymmetry> {
        let g = self.genus();
        let rec = self.config.symmetry(name).ok_or_else(|| Error::UnknownSymmetry(name.to_string()))?;
        let base = match rec.require("kind")? {
            "rotation" => {
                let steps: i64 = rec.require("steps")?.parse().map_err(|_| rec.error("bad steps"))?;
                RigidSymmetry::rotation(g, steps)
            }
            "reflection" => {
                let axis: f64 = rec.require("axis")?.parse().map_err(|_| rec.error("bad axis"))?;
                let sum = 2.0 * (axis - 1.0);
                if (sum - sum.round()).abs() > 1e-9 {
                    return Err(rec.error("axis must be a crosscap or half-way position"));
                }
                RigidSymmetry::reflection(g, sum.round() as i64)
            }
            "compose" => {
                let mut out = RigidSymmetry::identity(g);
                for part in rec.require("of")?.split(',').rev() {
                    out = self.standard_symmetry(part.trim())?.compose(&out)?;
                }
                return Ok(out);
            }
            other => return Err(rec.error(format!("unknown symmetry kind `{other}`"))),
        };
        let swap = rec.get("pole_swap").unwrap_or("0") == "1";
        Ok(if swap { RigidSymmetry::pole_swap(g).compose(&base)? } else { base })
    }

    /// Every element of the symmetry group, generated from t, tau1, tau3.
    pub fn symmetry_group(&self) -> Result<Vec<RigidSymmetry>> {
        let gens = [self.standard_symmetry("t")?, self.standard_symmetry("tau1")?, self.standard_symmetry("tau3")?];
        let mut elems = vec![RigidSymmetry::identity(self.genus())];
        let mut i = 0;
        while i < elems.len() {
            for gen in &gens {
                let next = gen.compose(&elems[i])?;
                if !elems.contains(&next) {
                    elems.push(next);
                }
            }
            i += 1;
        }
        Ok(elems)
    }

    /// Names of every standard curve at this genus.
    pub fn curve_names(&self) -> Vec<String> {
        let g = self.genus();
        let mut names = Vec::new();
        for rec in &self.config.curves {
            let name = rec.get("name").unwrap_or_default();
            if let Some(stem) = name.strip_suffix("_i") {
                names.extend((1..=g).map(|i| format!("{stem}_{i}")));
            } else if self.standard_curve(name).is_ok() {
                names.push(name.to_string());
            }
        }
        names
    }

    pub fn standard_curve(&self, name: &str) -> Result<CurveData> {
        let g = self.genus();
        let (rec, family) = self.config.curve(name).ok_or_else(|| Error::UnknownCurve(name.to_string()))?;
        if let Some(i) = family {
            if i == 0 || i > g {
                return Err(Error::UnknownCurve(name.to_string()));
            }
        }
        let coorient: i8 = match rec.get("coorient").unwrap_or("+1") {
            "+1" | "1" => 1,
            "-1" => -1,
            other => return Err(rec.error(format!("coorient must be +1 or -1, got `{other}`"))),
        };
        let path = match rec.require("kind")? {
            "core" => {
                let i = family.ok_or_else(|| rec.error("core curves are indexed families"))?;
                self.cores[i - 1].clone()
            }
            "chain" => {
                let holes = self.parse_holes(rec, "passages", family, name)?;
                let around = match rec.get("around") {
                    Some(expr) => {
                        let k = eval_index(expr, family, g, rec)? - 1;
                        let m = (holes[0] + g - k) % g;
                        let span: usize = holes.windows(2).map(|w| (w[1] + g - w[0]) % g).sum();
                        if m == 0 || span + m >= g {
                            return Err(Error::CurveUnavailable { curve: name.to_string(), min: g + 2, genus: g });
                        }
                        Some(m)
                    }
                    None => None,
                };
                let (detour, ret) = (side_sign(rec, "detour", "north")?, side_sign(rec, "return", "north")?);
                chain_path(&self.geometry, &holes, detour, ret, around)
            }
            "loop" => {
                let holes = self.parse_holes(rec, "holes", family, name)?;
                loop_path(&self.geometry, &holes)
            }
            other => return Err(rec.error(format!("unknown curve kind `{other}`"))),
        };
        let path = if rec.get("reverse") == Some("1") { reverse_path(&path) } else { path };
        self.curve_from_path(name, path, coorient)
    }

    /// Parses a hole list, checking it runs strictly eastward within one turn.
    fn parse_holes(&self, rec: &Record, key: &str, family: Option<usize>, name: &str) -> Result<Vec<usize>> {
        let g = self.genus();
        let exprs: Vec<&str> = rec.require(key)?.split(',').collect();
        let holes: Vec<usize> = exprs
            .iter()
            .map(|e| eval_index(e, family, g, rec).map(|k| k - 1))
            .collect::<Result<_>>()?;
        let span: usize = holes.windows(2).map(|w| (w[1] + g - w[0]) % g).sum();
        let steps_ok = holes.windows(2).all(|w| w[0] != w[1]);
        if !steps_ok || span >= g {
            // Literal lists: report the smallest odd genus where they fit.
            let max_literal = exprs.iter().filter_map(|e| e.trim().parse::<usize>().ok()).max().unwrap_or(3);
            let min = if max_literal % 2 == 0 { max_literal + 1 } else { max_literal.max(3) };
            let min = if min <= g { g + 2 } else { min };
            return Err(Error::CurveUnavailable { curve: name.to_string(), min, genus: g });
        }
        Ok(holes)
    }

    /// Builds a curve's data from geometry: mod-2 class from passages,
    /// integral class by tracing, pairing row by the crossing oracle.
    pub fn curve_from_path(&self, name: &str, path: SpherePath, coorient: i8) -> Result<CurveData> {
        let g = self.genus();
        let passages: Vec<usize> = path.jumps.iter().map(|k| k + 1).collect();
        let two_sided = passages.len().is_multiple_of(2);
        let mut bits = vec![0u8; g];
        for &k in &path.jumps {
            bits[k] ^= 1;
        }
        let class_z = self.trace_class(&path, name)?;
        let pairing_row = if two_sided {
            let row = (0..g)
                .map(|i| self.crossing_count(&self.cores[i], &path, coorient, name))
                .collect::<Result<Vec<i64>>>()?;
            Some(row)
        } else {
            None
        };
        Ok(CurveData {
            name: name.to_string(),
            passages,
            two_sided,
            class_z2: H1ClassZ2::new(&bits),
            class_z,
            pairing_row,
            coorient,
            path: Some(path),
        })
    }

    /// Integral class of a closed path.
    ///
    /// Each passage is closed up by the counter-clockwise half of the
    /// crosscap boundary (a copy of the core), giving a loop L in the sphere
    /// minus the caps. Then `[path] = sum_k (2 w_k(L) - j_k) mu_k`, where
    /// `w_k` is the winding of L about crosscap k (relative to the north
    /// pole) and `j_k` the number of passages through k.
    pub fn trace_class(&self, path: &SpherePath, name: &str) -> Result<H1ClassZ> {
        let geo = &self.geometry;
        let g = self.genus();
        let mut loop_pts: Vec<Vec3> = Vec::new();
        for (i, piece) in path.pieces.iter().enumerate() {
            loop_pts.extend_from_slice(piece);
            if let Some(&k) = path.jumps.get(i) {
                let arc = geo.boundary_half_arc(k, *piece.last().unwrap());
                loop_pts.extend_from_slice(&arc[1..arc.len() - 1]);
            }
        }
        let mut coeffs = vec![0i64; g];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let probe = geo.probe(k);
            let mut winding = 0i64;
            for idx in 0..loop_pts.len() {
                let (a, b) = (loop_pts[idx], loop_pts[(idx + 1) % loop_pts.len()]);
                for w in probe.windows(2) {
                    match arc_crossing(a, b, w[0], w[1]) {
                        Ok(Some(s)) => winding += i64::from(s),
                        Ok(None) => {}
                        Err(_) => return Err(Error::DegenerateGeometry(name.to_string())),
                    }
                }
            }
            let passes = path.jumps.iter().filter(|&&j| j == k).count() as i64;
            *c = 2 * winding - passes;
        }
        Ok(canonicalize(&coeffs))
    }

    /// Signed crossing count of `x` against the two-sided curve `c`, with
    /// `c`'s annulus orientation flipping at every passage.
    fn crossing_count(&self, x: &SpherePath, c: &SpherePath, coorient: i8, name: &str) -> Result<i64> {
        let xs = x.segments();
        let cs = c.segments();
        let mut total = 0i64;
        for &(_, x0, x1) in &xs {
            for &(piece, c0, c1) in &cs {
                match arc_crossing(x0, x1, c0, c1) {
                    Ok(Some(s)) => {
                        let sheet = if piece % 2 == 0 { 1 } else { -1 };
                        total += i64::from(s) * sheet * i64::from(coorient);
                    }
                    Ok(None) => {}
                    Err(_) => return Err(Error::DegenerateGeometry(name.to_string())),
                }
            }
        }
        Ok(total)
    }

    /// Brute-force integral pairing `<x, c>` by signed crossings.
    pub fn signed_pairing_oracle(&self, x: &CurveData, c: &CurveData) -> Result<i64> {
        if !c.two_sided {
            return Err(Error::TwoSidedRequired(c.name.clone()));
        }
        let (Some(xp), Some(cp)) = (&x.path, &c.path) else {
            return Err(Error::Invariant("curve without geometry".into()));
        };
        self.crossing_count(xp, cp, c.coorient, &c.name)
    }

    /// Image of a curve under a rigid symmetry, with all data recomputed.
    pub fn apply_rigid_to_curve(&self, r: &RigidSymmetry, k: &CurveData) -> Result<CurveData> {
        if r.genus() != self.genus() {
            return Err(Error::GenusMismatch(r.genus(), self.genus()));
        }
        let path = k.path.as_ref().ok_or_else(|| Error::Invariant("curve without geometry".into()))?;
        let o = r.orthogonal();
        let image = path.transform(&o, r.perm());
        let coorient = if o.det() > 0.0 { k.coorient } else { -k.coorient };
        self.curve_from_path(&k.name, image, coorient)
    }

    /// Path of the core curve of crosscap `k` (0-based).
    pub fn core(&self, k: usize) -> &SpherePath {
        &self.cores[k]
    }

    /// Images of the core classes under a rigid symmetry (columns of the
    /// induced map on Z^g).
    pub fn trace_rigid_on_cores(&self, r: &RigidSymmetry) -> Result<Vec<H1ClassZ>> {
        let o = r.orthogonal();
        (0..self.genus())
            .map(|k| self.trace_class(&self.cores[k].transform(&o, r.perm()), "core image"))
            .collect()
    }

    /// Images of the core classes under the half-turn exchanging crosscaps
    /// `i` and `i + 1` (0-based, cyclic). The exchange is supported on a disc
    /// around the pair, where it acts as a rotation by pi; the other cores
    /// are fixed.
    pub fn trace_exchange_on_cores(&self, i: usize) -> Result<Vec<H1ClassZ>> {
        let g = self.genus();
        let j = (i + 1) % g;
        let axis = crate::geometry::normalize(add(self.geometry.center(i), self.geometry.center(j)));
        let half_turn = Orthogonal::half_turn(axis);
        let mut perm: Vec<usize> = (0..g).collect();
        perm.swap(i, j);
        (0..g)
            .map(|k| {
                if k == i || k == j {
                    self.trace_class(&self.cores[k].transform(&half_turn, &perm), "exchange image")
                } else {
                    Ok(H1ClassZ::basis(g, k))
                }
            })
            .collect()
    }
}

fn core_path(geo: &Geometry, k: usize) -> SpherePath {
    let r_out = 1.5 * geo.rho;
    let mut pts = vec![geo.hole_point(k, geo.rho, CORE_PHASE)];
    for j in 0..=ARC_STEPS {
        pts.push(geo.hole_point(k, r_out, CORE_PHASE + PI * j as f64 / ARC_STEPS as f64));
    }
    pts.push(geo.hole_point(k, geo.rho, CORE_PHASE + PI));
    SpherePath { pieces: vec![pts], jumps: vec![k] }
}

/// Curve through the listed crosscaps in eastward order, closed by an arc on
/// the `ret` side; skipped crosscaps are stepped over on the `detour` side.
/// With `around = Some(m)` the closing arc runs `m` crosscaps further west
/// and comes back on the other side, winding once around the crosscap
/// `m` places west of the first passage.
fn chain_path(geo: &Geometry, holes: &[usize], detour: f64, ret: f64, around: Option<usize>) -> SpherePath {
    let g = geo.genus;
    let (dt, rho) = (geo.dtheta, geo.rho);
    let mut lons = vec![dt * holes[0] as f64];
    for w in holes.windows(2) {
        let gap = (w[1] + g - w[0]) % g;
        lons.push(lons.last().unwrap() + dt * gap as f64);
    }
    let n = holes.len();
    let mut pieces = Vec::with_capacity(n);
    let mut jumps = Vec::with_capacity(n);
    for j in 0..n {
        let (h0, h1) = (holes[j], holes[(j + 1) % n]);
        let mut pts = vec![geo.hole_point(h0, rho, 0.0), sph(lons[j] + 2.0 * rho, 0.0)];
        if j + 1 < n {
            let gap = (h1 + g - h0) % g;
            if gap > 1 {
                let lat = detour * 3.0 * rho;
                pts.extend(lat_path(lons[j] + dt / 2.0, lons[j + 1] - dt / 2.0, lat));
            }
            pts.push(sph(lons[j + 1] - 2.0 * rho, 0.0));
        } else {
            let lat = ret * 5.0 * rho;
            match around {
                Some(m) => {
                    let west = lons[0] - dt * (m as f64 + 0.5);
                    pts.extend(lat_path(lons[j] + dt / 2.0, west, lat));
                    pts.extend(lat_path(west, lons[0] - dt / 2.0, -0.6 * lat));
                }
                None => pts.extend(lat_path(lons[j] + dt / 2.0, lons[0] - dt / 2.0, lat)),
            }
            pts.push(sph(lons[0] - 2.0 * rho, 0.0));
        }
        pts.push(geo.hole_point(h1, rho, PI));
        pieces.push(densify(&pts));
        jumps.push(h1);
    }
    // Start on the closing arc so passages are listed in travel order.
    pieces.rotate_right(1);
    jumps.rotate_right(1);
    SpherePath { pieces, jumps }
}

/// Loop around the listed consecutive crosscaps, counter-clockwise.
fn loop_path(geo: &Geometry, holes: &[usize]) -> SpherePath {
    let g = geo.genus;
    let (dt, rho) = (geo.dtheta, geo.rho);
    let start = dt * holes[0] as f64;
    let span: usize = holes.windows(2).map(|w| (w[1] + g - w[0]) % g).sum();
    let end = start + dt * span as f64;
    let m = 2.5 * rho;
    let mut pts = lat_path(start - m, end + m, -m);
    pts.extend(lat_path(end + m, start - m, m));
    pts.dedup();
    SpherePath { pieces: vec![densify(&pts)], jumps: Vec::new() }
}

fn reverse_path(p: &SpherePath) -> SpherePath {
    if p.jumps.is_empty() {
        let mut piece = p.pieces[0].clone();
        piece.reverse();
        return SpherePath { pieces: vec![piece], jumps: Vec::new() };
    }
    // Reversed travel: piece i runs backwards and is entered from jump i.
    let n = p.pieces.len();
    let mut pieces = Vec::with_capacity(n);
    let mut jumps = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let mut piece = p.pieces[i].clone();
        piece.reverse();
        pieces.push(piece);
        jumps.push(p.jumps[(i + n - 1) % n]);
    }
    SpherePath { pieces, jumps }
}

/// Splits long arcs so every drawn segment is short.
fn densify(pts: &[Vec3]) -> Vec<Vec3> {
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        let ang = crate::geometry::angle_between(w[0], w[1]);
        let n = (ang / MAX_STEP).ceil().max(1.0) as usize;
        let axis = cross(w[0], w[1]);
        for j in 1..=n {
            let t = ang * j as f64 / n as f64;
            if axis == [0.0; 3] {
                out.push(w[1]);
                continue;
            }
            out.push(slerp(w[0], w[1], ang, t));
        }
    }
    out
}

fn slerp(a: Vec3, b: Vec3, total: f64, t: f64) -> Vec3 {
    let s = total.sin();
    add(scale(a, (total - t).sin() / s), scale(b, t.sin() / s))
}
