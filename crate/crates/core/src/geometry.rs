//! Unit-sphere primitives used by the crosscap model.
//!
//! Curves are polylines of great-circle arcs. All rigid symmetries of the
//! model are orthogonal maps, so they carry arcs to arcs and crossing counts
//! are preserved exactly.

pub type Vec3 = [f64; 3];

/// Intersections closer than this to an arc endpoint are treated as
/// degenerate input rather than silently counted or skipped.
const ENDPOINT_EPS: f64 = 1e-9;

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// Point with the given longitude and latitude (radians).
pub fn sph(lon: f64, lat: f64) -> Vec3 {
    [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
}

pub fn angle_between(a: Vec3, b: Vec3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// 3x3 orthogonal matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Orthogonal(pub [[f64; 3]; 3]);

impl Orthogonal {
    pub fn identity() -> Self {
        Orthogonal([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rotation about the polar axis.
    pub fn rotation_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Orthogonal([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Reflection in the vertical plane containing the polar axis and the
    /// meridian at longitude `lon`.
    pub fn reflection_vertical(lon: f64) -> Self {
        let (s, c) = (2.0 * lon).sin_cos();
        Orthogonal([[c, s, 0.0], [s, -c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Reflection in the equatorial plane.
    pub fn reflection_equator() -> Self {
        Orthogonal([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]])
    }

    /// Rotation by pi about the axis through `axis` (unit vector).
    pub fn half_turn(axis: Vec3) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = 2.0 * axis[i] * axis[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        Orthogonal(m)
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
    }

    pub fn compose(&self, other: &Orthogonal) -> Orthogonal {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Orthogonal(out)
    }

    pub fn det(&self) -> f64 {
        dot(self.0[0], cross(self.0[1], self.0[2]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegenerateCrossing;

/// Crossing of the short great arcs `a0 -> a1` and `b0 -> b1`.
///
/// Returns the sign of `x . (ta x tb)` at the crossing point `x`, where `ta`
/// and `tb` are the arc directions, or `None` when the arcs are disjoint.
pub fn arc_crossing(a0: Vec3, a1: Vec3, b0: Vec3, b1: Vec3) -> Result<Option<i32>, DegenerateCrossing> {
    let na = cross(a0, a1);
    let nb = cross(b0, b1);
    let d = cross(na, nb);
    let dn = norm(d);
    if dn < 1e-14 {
        // Arcs on a common great circle; the model never produces overlapping ones.
        return Ok(None);
    }
    let d = scale(d, 1.0 / dn);
    for x in [d, scale(d, -1.0)] {
        let Some(sa) = arc_param(a0, a1, na, x) else { continue };
        let Some(sb) = arc_param(b0, b1, nb, x) else { continue };
        if sa.min(1.0 - sa) < ENDPOINT_EPS || sb.min(1.0 - sb) < ENDPOINT_EPS {
            return Err(DegenerateCrossing);
        }
        let ta = cross(na, x);
        let tb = cross(nb, x);
        let s = dot(x, cross(ta, tb));
        return Ok(Some(if s > 0.0 { 1 } else { -1 }));
    }
    Ok(None)
}

/// Fractional position of `x` along the arc, if it lies on it.
fn arc_param(p0: Vec3, p1: Vec3, n: Vec3, x: Vec3) -> Option<f64> {
    if dot(cross(p0, x), n) < -1e-15 || dot(cross(x, p1), n) < -1e-15 {
        return None;
    }
    let total = angle_between(p0, p1);
    let part = angle_between(p0, x);
    if part > total + 1e-12 {
        return None;
    }
    Some(part / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn crossing_sign_follows_orientation() {
        // Near (lon 0, lat 0) east is +y and north is +z; outward normal is +x.
        let east = (sph(-0.1, 0.0), sph(0.1, 0.0));
        let north = (sph(0.0, -0.1), sph(0.0, 0.1));
        assert_eq!(arc_crossing(east.0, east.1, north.0, north.1), Ok(Some(1)));
        assert_eq!(arc_crossing(north.0, north.1, east.0, east.1), Ok(Some(-1)));
    }

    #[test]
    fn disjoint_arcs_do_not_cross() {
        let a = (sph(0.0, 0.0), sph(0.2, 0.0));
        let b = (sph(0.5, -0.1), sph(0.5, 0.1));
        assert_eq!(arc_crossing(a.0, a.1, b.0, b.1), Ok(None));
    }

    #[test]
    fn endpoint_touch_is_degenerate() {
        let a = (sph(0.0, 0.0), sph(0.2, 0.0));
        let b = (sph(0.2, 0.0), sph(0.2, 0.3));
        assert_eq!(arc_crossing(a.0, a.1, b.0, b.1), Err(DegenerateCrossing));
    }

    #[test]
    fn orthogonal_maps() {
        let r = Orthogonal::rotation_z(PI / 2.0);
        let v = r.apply([1.0, 0.0, 0.0]);
        assert!((v[1] - 1.0).abs() < 1e-12);
        let f = Orthogonal::reflection_vertical(0.3);
        assert!((f.det() + 1.0).abs() < 1e-12);
        let fixed = sph(0.3, 0.4);
        let img = f.apply(fixed);
        assert!(norm(add(img, scale(fixed, -1.0))) < 1e-12);
        let h = Orthogonal::half_turn(normalize([1.0, 1.0, 0.0]));
        assert!((h.det() - 1.0).abs() < 1e-12);
        let swapped = h.apply([1.0, 0.0, 0.0]);
        assert!((swapped[1] - 1.0).abs() < 1e-12);
    }
}
