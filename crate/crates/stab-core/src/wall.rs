//! Wall-and-chamber geometry of the stability-parameter space.
//!
//! A wall datum (e, xi) against a total class (chi0, beta0) carries the
//! quadric Q = (e - B'.xi)((J+L).beta0) - (chi0 - B'.beta0)((J+L).xi),
//! whose zero locus is exactly the slope-equality locus of the two classes.
//! Q is affine in each single coordinate, so box questions are decided
//! exactly at box vertices.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::charge::{z_slope, StabilityParameter};
use crate::error::{Error, Result};
use crate::lattice::{AmbientData, EffectiveClass, NumClass, ValidatedAmbient};
use crate::model::{is_semistable, is_stable, SlopeRule, ValidatedModel};
use crate::rat::Rat;

/// A point of the parameter space is exactly a stability parameter.
pub type ParameterPoint = StabilityParameter;

/// Closed rational box in parameter space, one interval per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterBox {
    #[serde(rename = "B")]
    pub b: Vec<(Rat, Rat)>,
    #[serde(rename = "J")]
    pub j: Vec<(Rat, Rat)>,
    #[serde(rename = "L")]
    pub l: Vec<(Rat, Rat)>,
}

impl ParameterBox {
    /// Degenerate box at a single point.
    pub fn at_point(p: &ParameterPoint) -> Self {
        let pin = |v: &[Rat]| v.iter().map(|x| (x.clone(), x.clone())).collect();
        ParameterBox {
            b: pin(&p.b),
            j: pin(&p.j),
            l: pin(&p.l),
        }
    }

    pub fn validate(&self, amb: &ValidatedAmbient) -> Result<()> {
        let r = amb.rank();
        for (name, v) in [("B", &self.b), ("J", &self.j), ("L", &self.l)] {
            if v.len() != r {
                return Err(Error::EmptyBox(format!(
                    "interval list {name} has length {} (rank is {r})",
                    v.len()
                )));
            }
            for (lo, hi) in v {
                if lo > hi {
                    return Err(Error::EmptyBox(format!(
                        "empty interval [{lo}, {hi}] in {name}"
                    )));
                }
            }
        }
        // cone constraints are linear, so vertex validity covers the box
        for v in self.vertices() {
            v.validate(amb)?;
        }
        Ok(())
    }

    /// All box vertices, without duplicates from pinned coordinates.
    pub fn vertices(&self) -> Vec<ParameterPoint> {
        let choices = |v: &[(Rat, Rat)]| -> Vec<Vec<Rat>> {
            v.iter()
                .map(|(lo, hi)| {
                    if lo == hi {
                        vec![lo.clone()]
                    } else {
                        vec![lo.clone(), hi.clone()]
                    }
                })
                .collect()
        };
        let mut coords: Vec<Vec<Rat>> = choices(&self.b);
        coords.extend(choices(&self.j));
        coords.extend(choices(&self.l));
        let r = self.b.len();
        coords
            .into_iter()
            .multi_cartesian_product()
            .map(|flat| ParameterPoint {
                b: flat[..r].to_vec(),
                j: flat[r..2 * r].to_vec(),
                l: flat[2 * r..].to_vec(),
            })
            .collect()
    }
}

/// A numerical wall datum: total class (chi0, beta0) and subclass (e, xi)
/// with 0 < xi < beta0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WallSpec {
    pub e: i64,
    pub xi: EffectiveClass,
    pub chi0: i64,
    pub beta0: EffectiveClass,
}

impl WallSpec {
    pub fn new(chi0: i64, beta0: EffectiveClass, e: i64, xi: EffectiveClass) -> Result<Self> {
        if xi.is_zero() || xi == beta0 || !xi.leq(&beta0) {
            return Err(Error::BadWallDatum);
        }
        Ok(WallSpec {
            e,
            xi,
            chi0,
            beta0,
        })
    }

    pub fn sub_class(&self) -> NumClass {
        NumClass::new(self.e, self.xi.clone())
    }

    pub fn total_class(&self) -> NumClass {
        NumClass::new(self.chi0, self.beta0.clone())
    }

    /// The complementary datum (chi0 - e, beta0 - xi), which cuts out the
    /// same locus with opposite sign.
    pub fn complement(&self) -> WallSpec {
        WallSpec {
            e: self.chi0 - self.e,
            xi: self.beta0.checked_sub(&self.xi).expect("xi <= beta0"),
            chi0: self.chi0,
            beta0: self.beta0.clone(),
        }
    }
}

/// Q = (e - B'.xi)((J+L).beta0) - (chi0 - B'.beta0)((J+L).xi), with B' the
/// twisted real part B + c1/4.
pub fn wall_value(amb: &ValidatedAmbient, w: &WallSpec, pt: &ParameterPoint) -> Rat {
    let d = pt.j_plus_l(amb, &w.beta0);
    let n = pt.j_plus_l(amb, &w.xi);
    let b_xi = pt.twisted_b(amb, &w.xi);
    let b_beta0 = pt.twisted_b(amb, &w.beta0);
    (Rat::from_int(w.e) - b_xi) * d - (Rat::from_int(w.chi0) - b_beta0) * n
}

pub fn wall_sign(amb: &ValidatedAmbient, w: &WallSpec, pt: &ParameterPoint) -> i32 {
    wall_value(amb, w, pt).signum()
}

/// Slope equality of (e, xi) and (chi0, beta0) at pt; agrees with
/// `wall_sign == 0` whenever both imaginary parts are negative.
pub fn slope_equality_on_wall(
    amb: &ValidatedAmbient,
    w: &WallSpec,
    pt: &ParameterPoint,
) -> Result<bool> {
    if !pt.j_plus_l(amb, &w.xi).is_positive() || !pt.j_plus_l(amb, &w.beta0).is_positive() {
        return Err(Error::ZeroImaginaryPart);
    }
    let mu_sub = z_slope(amb, pt, &w.sub_class())?;
    let mu_total = z_slope(amb, pt, &w.total_class())?;
    let equal = mu_sub == mu_total;
    debug_assert_eq!(equal, wall_sign(amb, w, pt) == 0);
    Ok(equal)
}

/// The e-value solving Q = 0 at a fixed parameter point:
/// e(pt) = B'.xi + (chi0 - B'.beta0) * ((J+L).xi) / ((J+L).beta0).
fn wall_e_at(amb: &ValidatedAmbient, total: &NumClass, xi: &EffectiveClass, pt: &ParameterPoint) -> Rat {
    let d = pt.j_plus_l(amb, &total.beta);
    let n = pt.j_plus_l(amb, xi);
    let b_xi = pt.twisted_b(amb, xi);
    let b_beta0 = pt.twisted_b(amb, &total.beta);
    b_xi + (Rat::from_int(total.chi) - b_beta0) * n / d
}

/// The complete finite wall list meeting a closed parameter box, in
/// canonical (xi lex, then e) order.
///
/// For each xi the solved e(pt) is affine in each B coordinate and
/// linear-fractional (hence monotone) in each J/L coordinate, so its exact
/// range over the box is the interval spanned by the vertex values; the
/// walls are the integers inside that range.
pub fn enumerate_walls_in_box(
    amb: &ValidatedAmbient,
    total: &NumClass,
    bx: &ParameterBox,
) -> Result<Vec<WallSpec>> {
    bx.validate(amb)?;
    if total.beta.is_zero() {
        return Ok(Vec::new());
    }
    let vertices = bx.vertices();
    let mut out = Vec::new();
    for xi in crate::lattice::enumerate_interval(&total.beta)? {
        let values: Vec<Rat> = vertices
            .iter()
            .map(|v| wall_e_at(amb, total, &xi, v))
            .collect();
        let lo = values.iter().min().expect("box has vertices").clone();
        let hi = values.iter().max().expect("box has vertices").clone();
        use num_traits::ToPrimitive;
        let mut e = lo.ceil_int();
        let e_hi = hi.floor_int();
        while e <= e_hi {
            let e_int = e.to_i64().expect("wall e within i64");
            let w = WallSpec::new(total.chi, total.beta.clone(), e_int, xi.clone())?;
            // vertex certificate: Q attains both signs (or 0) on the box
            debug_assert!({
                let signs: Vec<i32> = vertices.iter().map(|v| wall_sign(amb, &w, v)).collect();
                signs.iter().any(|&s| s <= 0) && signs.iter().any(|&s| s >= 0)
            });
            out.push(w);
            e += num_bigint::BigInt::from(1);
        }
    }
    Ok(out)
}

/// Exact root count of Q along a parameter segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentCrossings {
    Roots(u8),
    IdenticallyZero,
}

impl Serialize for SegmentCrossings {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SegmentCrossings::Roots(n) => s.serialize_u8(*n),
            SegmentCrossings::IdenticallyZero => s.serialize_str("identically zero"),
        }
    }
}

fn lerp(p1: &ParameterPoint, p2: &ParameterPoint, t: &Rat) -> ParameterPoint {
    let mix = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x + &(t * &(y - x)))
            .collect()
    };
    ParameterPoint {
        b: mix(&p1.b, &p2.b),
        j: mix(&p1.j, &p2.j),
        l: mix(&p1.l, &p2.l),
    }
}

/// Compare sigma * sqrt(delta) against the rational x, for delta > 0.
fn cmp_signed_sqrt(sigma: i32, delta: &Rat, x: &Rat) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let x_sq = x * x;
    if sigma > 0 {
        if x.is_negative() {
            Ordering::Greater
        } else {
            delta.cmp(&x_sq)
        }
    } else if !x.is_negative() {
        Ordering::Less
    } else {
        delta.cmp(&x_sq).reverse()
    }
}

/// Distinct roots of a t^2 + b t + c in the closed interval [0, 1],
/// counted exactly.
fn count_unit_roots(a: &Rat, b: &Rat, c: &Rat) -> SegmentCrossings {
    use std::cmp::Ordering;
    let in_unit = |t: &Rat| !t.is_negative() && *t <= Rat::one();
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                SegmentCrossings::IdenticallyZero
            } else {
                SegmentCrossings::Roots(0)
            };
        }
        let t = -c / b;
        return SegmentCrossings::Roots(in_unit(&t) as u8);
    }
    let delta = b * b - Rat::from_int(4) * a * c;
    if delta.is_negative() {
        return SegmentCrossings::Roots(0);
    }
    if delta.is_zero() {
        let t = -b / &(Rat::from_int(2) * a);
        return SegmentCrossings::Roots(in_unit(&t) as u8);
    }
    // two distinct roots (-b + sigma sqrt(delta)) / (2a)
    let two_a = Rat::from_int(2) * a;
    let mut count = 0u8;
    for sigma in [-1, 1] {
        // root >= 0  <=>  sigma sqrt(delta) >= b    (sign flipped when 2a < 0)
        // root <= 1  <=>  sigma sqrt(delta) <= 2a + b (likewise)
        let lo_cmp = cmp_signed_sqrt(sigma, &delta, b);
        let hi_cmp = cmp_signed_sqrt(sigma, &delta, &(&two_a + b));
        let (ge0, le1) = if two_a.is_positive() {
            (lo_cmp != Ordering::Less, hi_cmp != Ordering::Greater)
        } else {
            (lo_cmp != Ordering::Greater, hi_cmp != Ordering::Less)
        };
        if ge0 && le1 {
            count += 1;
        }
    }
    SegmentCrossings::Roots(count)
}

/// Count (exactly) the zeros of Q along the segment from p1 to p2. Q is
/// affine in each coordinate, so it restricts to a quadratic in t, recovered
/// by interpolation at t = 0, 1/2, 1.
pub fn segment_crossings(
    amb: &ValidatedAmbient,
    w: &WallSpec,
    p1: &ParameterPoint,
    p2: &ParameterPoint,
) -> Result<SegmentCrossings> {
    p1.validate(amb)?;
    p2.validate(amb)?;
    let q0 = wall_value(amb, w, p1);
    let q1 = wall_value(amb, w, p2);
    let qh = wall_value(amb, w, &lerp(p1, p2, &Rat::new(1, 2)));
    let a = Rat::from_int(2) * &q0 + Rat::from_int(2) * &q1 - Rat::from_int(4) * &qh;
    let b = &q1 - &q0 - &a;
    Ok(count_unit_roots(&a, &b, &q0))
}

/// True iff no listed wall separates the two points: neither endpoint on a
/// wall and no root on the segment.
pub fn same_chamber(
    amb: &ValidatedAmbient,
    walls: &[WallSpec],
    p1: &ParameterPoint,
    p2: &ParameterPoint,
) -> Result<bool> {
    p1.validate(amb)?;
    p2.validate(amb)?;
    for w in walls {
        if wall_value(amb, w, p1).is_zero() || wall_value(amb, w, p2).is_zero() {
            return Ok(false);
        }
        if segment_crossings(amb, w, p1, p2)? != SegmentCrossings::Roots(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Keep the walls realized by a proper subobject node of some catalog model
/// with the matching total class.
pub fn actual_walls(walls: &[WallSpec], catalog: &[&ValidatedModel]) -> Vec<WallSpec> {
    walls
        .iter()
        .filter(|w| {
            catalog.iter().any(|m| {
                *m.top_class() == w.total_class()
                    && m.proper_nodes().any(|i| *m.class(i) == w.sub_class())
            })
        })
        .cloned()
        .collect()
}

/// Coefficient vector of Q as a polynomial in the parameter coordinates,
/// with J and L merged (they only enter through J+L): one linear
/// coefficient per (J+L)-coordinate and one bilinear coefficient per
/// B x (J+L) coordinate pair. Proportional vectors mean identical loci.
fn wall_coefficients(amb: &ValidatedAmbient, w: &WallSpec) -> Vec<Rat> {
    let u = amb.class_coordinates(&w.xi);
    let v0 = amb.class_coordinates(&w.beta0);
    // constant c1/4 offsets of the twisted B
    let zero_b = vec![Rat::zero(); amb.rank()];
    let q_xi = amb.twisted_b(&zero_b, &w.xi);
    let q_b0 = amb.twisted_b(&zero_b, &w.beta0);
    let e = Rat::from_int(w.e) - q_xi;
    let chi = Rat::from_int(w.chi0) - q_b0;
    let r = amb.rank();
    let mut out = Vec::with_capacity(r + r * r);
    for k in 0..r {
        out.push(&e * &Rat::from_int(v0[k]) - &chi * &Rat::from_int(u[k]));
    }
    for i in 0..r {
        for k in (i + 1)..r {
            out.push(Rat::from_int(v0[i] * u[k] - u[i] * v0[k]));
        }
    }
    out
}

fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    let pivot = a.iter().position(|x| !x.is_zero());
    let Some(p) = pivot else {
        return b.iter().all(Rat::is_zero);
    };
    if b[p].is_zero() {
        return false;
    }
    let scale = &b[p] / &a[p];
    a.iter().zip(b).all(|(x, y)| &(&scale * x) == y)
}

/// Per-object outcome of a single wall crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeSituation {
    pub node: String,
    pub sign_minus: i32,
    pub sign_plus: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectCrossing {
    pub id: String,
    /// 1: stable on both sides; 2: only at p+; 3: only at p-; 4: neither.
    pub situation: u8,
    pub nodes: Vec<NodeSituation>,
}

/// Full report of a crossing p- -> p0 -> p+ over the catalog's walls.
/// Realization of walls and chambers is scoped to the supplied catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub scope: String,
    pub separating_wall: WallSpec,
    pub objects: Vec<ObjectCrossing>,
    pub s_minus: Vec<String>,
    pub s_zero: Vec<String>,
    pub s_plus: Vec<String>,
    pub s_minus_in_s_zero: bool,
    pub s_plus_in_s_zero: bool,
}

/// All wall data realized by catalog nodes, deduplicated, canonical order.
pub fn catalog_walls(catalog: &[(&str, &ValidatedModel)]) -> Vec<WallSpec> {
    let mut out = BTreeSet::new();
    for (_, m) in catalog {
        let total = m.top_class();
        for i in m.proper_nodes() {
            let c = m.class(i);
            if let Ok(w) = WallSpec::new(total.chi, total.beta.clone(), c.chi, c.beta.clone()) {
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

fn slope_cmp_sign(
    amb: &ValidatedAmbient,
    pt: &ParameterPoint,
    sub: &NumClass,
    total: &NumClass,
) -> Result<i32> {
    let a = z_slope(amb, pt, sub)?;
    let b = z_slope(amb, pt, total)?;
    Ok(match a.cmp(&b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    })
}

/// Report a crossing between adjacent chambers through p_zero, against the
/// walls realized by the catalog. p_zero must lie on exactly one wall locus
/// and p_minus/p_plus strictly on its two sides, separated by no other wall.
pub fn crossing_report(
    amb: &ValidatedAmbient,
    catalog: &[(&str, &ValidatedModel)],
    p_minus: &ParameterPoint,
    p_plus: &ParameterPoint,
    p_zero: &ParameterPoint,
) -> Result<CrossingReport> {
    for p in [p_minus, p_plus, p_zero] {
        p.validate(amb)?;
    }
    let walls = catalog_walls(catalog);
    let on_zero: Vec<&WallSpec> = walls
        .iter()
        .filter(|w| wall_value(amb, w, p_zero).is_zero())
        .collect();
    let Some(separating) = on_zero.first() else {
        return Err(Error::NotOnWall(
            "p_zero lies on no wall realized by the catalog".into(),
        ));
    };
    let sep_coeffs = wall_coefficients(amb, separating);
    for w in &on_zero[1..] {
        if !proportional(&sep_coeffs, &wall_coefficients(amb, w)) {
            return Err(Error::NotOnWall(
                "p_zero lies on a wall-stratum intersection (several loci)".into(),
            ));
        }
    }
    let s_m = wall_sign(amb, separating, p_minus);
    let s_p = wall_sign(amb, separating, p_plus);
    if s_m == 0 || s_p == 0 || s_m == s_p {
        return Err(Error::NotAdjacent(
            "endpoints are not strictly on opposite sides of the separating wall".into(),
        ));
    }
    for w in &walls {
        if proportional(&sep_coeffs, &wall_coefficients(amb, w)) {
            continue;
        }
        if !same_chamber(amb, std::slice::from_ref(w), p_minus, p_plus)? {
            return Err(Error::NotAdjacent(format!(
                "another wall (e={}, xi={:?}) separates the endpoints",
                w.e, w.xi.coeffs
            )));
        }
    }

    let mut objects = Vec::new();
    let mut s_minus = Vec::new();
    let mut s_zero = Vec::new();
    let mut s_plus = Vec::new();
    for (id, m) in catalog {
        let stable_minus = is_stable(m, &SlopeRule::Z { ambient: amb, param: p_minus })?;
        let semistable_zero = is_semistable(m, &SlopeRule::Z { ambient: amb, param: p_zero })?;
        let stable_plus = is_stable(m, &SlopeRule::Z { ambient: amb, param: p_plus })?;
        if stable_minus {
            s_minus.push(id.to_string());
        }
        if semistable_zero {
            s_zero.push(id.to_string());
        }
        if stable_plus {
            s_plus.push(id.to_string());
        }
        let situation = match (stable_minus, stable_plus) {
            (true, true) => 1,
            (false, true) => 2,
            (true, false) => 3,
            (false, false) => 4,
        };
        let mut nodes = Vec::new();
        for i in m.proper_nodes() {
            nodes.push(NodeSituation {
                node: m.id(i).to_string(),
                sign_minus: slope_cmp_sign(amb, p_minus, m.class(i), m.top_class())?,
                sign_plus: slope_cmp_sign(amb, p_plus, m.class(i), m.top_class())?,
            });
        }
        objects.push(ObjectCrossing {
            id: id.to_string(),
            situation,
            nodes,
        });
    }
    let subset = |a: &[String], b: &[String]| a.iter().all(|x| b.contains(x));
    Ok(CrossingReport {
        scope: "catalog".into(),
        separating_wall: (*separating).clone(),
        objects,
        s_minus_in_s_zero: subset(&s_minus, &s_zero),
        s_plus_in_s_zero: subset(&s_plus, &s_zero),
        s_minus,
        s_zero,
        s_plus,
    })
}

/// The rank-2 worked scenario: effective cone Z>=0 x Z>=0, parameter points
/// of the shape B = (0, x_B), J = (0, x_J), L = (x_L, 0), H = (1, 1).
pub fn quintic_ambient() -> ValidatedAmbient {
    crate::lattice::validate_ambient(quintic_ambient_data()).expect("scenario data is valid")
}

pub fn quintic_ambient_data() -> AmbientData {
    AmbientData {
        rank: 2,
        generators: vec![vec![1, 0], vec![0, 1]],
        pairing_b: vec![Rat::zero(), Rat::zero()],
        pairing_j: vec![Rat::zero(), Rat::one()],
        pairing_l: vec![Rat::one(), Rat::zero()],
        pairing_h: vec![Rat::one(), Rat::one()],
        pairing_c1: None,
    }
}

/// A scenario parameter point (x_B, x_J, x_L).
pub fn quintic_point(x_b: Rat, x_j: Rat, x_l: Rat) -> ParameterPoint {
    ParameterPoint {
        b: vec![Rat::zero(), x_b],
        j: vec![Rat::zero(), x_j],
        l: vec![x_l, Rat::zero()],
    }
}

fn det2(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a * d - b * c
}

/// Closed determinant form of the scenario quadric:
/// Q = det(e m; chi0 m0) x_L + det(e n; chi0 n0) x_J + det(m n; m0 n0) x_B x_L
/// for xi = (m, n), beta0 = (m0, n0). Must agree with `wall_value` exactly.
pub fn quintic_determinant_form(w: &WallSpec, pt: &ParameterPoint) -> Rat {
    let (m, n) = (w.xi.coeffs[0] as i64, w.xi.coeffs[1] as i64);
    let (m0, n0) = (w.beta0.coeffs[0] as i64, w.beta0.coeffs[1] as i64);
    let x_b = &pt.b[1];
    let x_j = &pt.j[1];
    let x_l = &pt.l[0];
    Rat::from_int(det2(w.e, m, w.chi0, m0)) * x_l
        + Rat::from_int(det2(w.e, n, w.chi0, n0)) * x_j
        + Rat::from_int(det2(m, n, m0, n0)) * x_b * x_l
}

/// Degenerate scenario walls for a fixed (chi0, n0): the pairs (e, n) with
/// det(e n; chi0 n0) = 0 and 0 < n < n0, where the quadric factors into two
/// hyperplanes. The set is always finite.
pub fn quintic_degenerate_pairs(chi0: i64, n0: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 1..n0 {
        // e n0 = chi0 n with integer e
        if (chi0 * n) % n0 == 0 {
            out.push((chi0 * n / n0, n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_model, ObjectModel};

    fn qpt(b: Rat, j: Rat, l: Rat) -> ParameterPoint {
        quintic_point(b, j, l)
    }

    fn wall(chi0: i64, beta0: Vec<u64>, e: i64, xi: Vec<u64>) -> WallSpec {
        WallSpec::new(chi0, EffectiveClass::new(beta0), e, EffectiveClass::new(xi)).unwrap()
    }

    #[test]
    fn wall_value_examples() {
        let amb = quintic_ambient();
        let w = wall(2, vec![1, 1], 1, vec![0, 1]);
        let pt = qpt(Rat::one(), Rat::one(), Rat::one());
        assert_eq!(wall_value(&amb, &w, &pt), Rat::from_int(-1));
        assert_eq!(wall_sign(&amb, &w, &pt), -1);

        // half-class symmetry forces 0
        let half = wall(2, vec![2, 2], 1, vec![1, 1]);
        for pt in [
            qpt(Rat::one(), Rat::one(), Rat::one()),
            qpt(Rat::new(-3, 7), Rat::new(5, 2), Rat::new(1, 3)),
        ] {
            assert!(wall_value(&amb, &half, &pt).is_zero());
            assert_eq!(wall_sign(&amb, &half, &pt), 0);
        }

        let w0 = wall(0, vec![1, 1], 0, vec![0, 1]);
        let on = qpt(Rat::zero(), Rat::one(), Rat::one());
        assert!(wall_value(&amb, &w0, &on).is_zero());
        assert_eq!(wall_sign(&amb, &w0, &on), 0);
    }

    #[test]
    fn wall_datum_range_enforced() {
        assert_eq!(
            WallSpec::new(0, EffectiveClass::new(vec![1, 1]), 0, EffectiveClass::zero(2)),
            Err(Error::BadWallDatum)
        );
        assert_eq!(
            WallSpec::new(
                0,
                EffectiveClass::new(vec![1, 1]),
                0,
                EffectiveClass::new(vec![1, 1])
            ),
            Err(Error::BadWallDatum)
        );
    }

    #[test]
    fn slope_equality_matches_sign() {
        let amb = quintic_ambient();
        let w = wall(0, vec![1, 1], 0, vec![0, 1]);
        let on = qpt(Rat::zero(), Rat::one(), Rat::one());
        assert!(slope_equality_on_wall(&amb, &w, &on).unwrap());
        let off = qpt(Rat::one(), Rat::one(), Rat::one());
        assert!(!slope_equality_on_wall(&amb, &w, &off).unwrap());
        assert_ne!(wall_sign(&amb, &w, &off), 0);

        let degenerate = qpt(Rat::zero(), Rat::zero(), Rat::one());
        assert_eq!(
            slope_equality_on_wall(&amb, &w, &degenerate),
            Err(Error::ZeroImaginaryPart)
        );
    }

    fn unit_box(b: (i64, i64)) -> ParameterBox {
        ParameterBox {
            b: vec![
                (Rat::zero(), Rat::zero()),
                (Rat::from_int(b.0), Rat::from_int(b.1)),
            ],
            j: vec![(Rat::zero(), Rat::zero()), (Rat::one(), Rat::from_int(2))],
            l: vec![(Rat::one(), Rat::from_int(2)), (Rat::zero(), Rat::zero())],
        }
    }

    #[test]
    fn enumerate_walls_examples() {
        let amb = quintic_ambient();
        let total = NumClass::new(0, EffectiveClass::new(vec![1, 1]));

        let got = enumerate_walls_in_box(&amb, &total, &unit_box((-1, 1))).unwrap();
        assert_eq!(
            got,
            vec![wall(0, vec![1, 1], 0, vec![0, 1]), wall(0, vec![1, 1], 0, vec![1, 0])]
        );

        // shifted box: the e-range for xi=(0,1) is x_B x_L/(x_J+x_L) over
        // [1,2]^3, i.e. [1/3, 4/3], so e=1 appears (point (2,1,1) realizes
        // it), with the complementary e=-1 wall for xi=(1,0)
        let got = enumerate_walls_in_box(&amb, &total, &unit_box((1, 2))).unwrap();
        assert_eq!(
            got,
            vec![wall(0, vec![1, 1], 1, vec![0, 1]), wall(0, vec![1, 1], -1, vec![1, 0])]
        );
        let on = qpt(Rat::from_int(2), Rat::one(), Rat::one());
        assert!(wall_value(&amb, &got[0], &on).is_zero());

        // rank-1-style beta0 with empty interval
        let amb1 = crate::lattice::validate_ambient(crate::lattice::AmbientData {
            rank: 1,
            generators: vec![vec![1]],
            pairing_b: vec![Rat::zero()],
            pairing_j: vec![Rat::one()],
            pairing_l: vec![Rat::one()],
            pairing_c1: None,
            pairing_h: vec![Rat::one()],
        })
        .unwrap();
        let total1 = NumClass::new(0, EffectiveClass::new(vec![1]));
        let bx1 = ParameterBox {
            b: vec![(Rat::zero(), Rat::one())],
            j: vec![(Rat::one(), Rat::one())],
            l: vec![(Rat::one(), Rat::one())],
        };
        assert_eq!(enumerate_walls_in_box(&amb1, &total1, &bx1).unwrap(), vec![]);

        let empty = ParameterBox {
            b: vec![(Rat::one(), Rat::zero())],
            j: vec![(Rat::one(), Rat::one())],
            l: vec![(Rat::one(), Rat::one())],
        };
        assert!(matches!(
            enumerate_walls_in_box(&amb1, &total1, &empty),
            Err(Error::EmptyBox(_))
        ));
    }

    #[test]
    fn segment_crossing_examples() {
        let amb = quintic_ambient();
        let w = wall(0, vec![1, 1], 0, vec![0, 1]);
        let p1 = qpt(Rat::new(-1, 2), Rat::one(), Rat::one());
        let p2 = qpt(Rat::new(1, 2), Rat::one(), Rat::one());
        assert_eq!(
            segment_crossings(&amb, &w, &p1, &p2).unwrap(),
            SegmentCrossings::Roots(1)
        );
        assert_eq!(
            segment_crossings(&amb, &w, &p2, &p2).unwrap(),
            SegmentCrossings::Roots(0)
        );
        let on1 = qpt(Rat::zero(), Rat::one(), Rat::one());
        let on2 = qpt(Rat::zero(), Rat::from_int(2), Rat::one());
        assert_eq!(
            segment_crossings(&amb, &w, &on1, &on2).unwrap(),
            SegmentCrossings::IdenticallyZero
        );
    }

    #[test]
    fn quadratic_root_counts() {
        // (t - 1/4)(t - 3/4): two rational roots inside
        assert_eq!(
            count_unit_roots(&Rat::one(), &Rat::from_int(-1), &Rat::new(3, 16)),
            SegmentCrossings::Roots(2)
        );
        // t^2 - 1/2: irrational root 1/sqrt(2) inside, -1/sqrt(2) outside
        assert_eq!(
            count_unit_roots(&Rat::one(), &Rat::zero(), &Rat::new(-1, 2)),
            SegmentCrossings::Roots(1)
        );
        // t^2 + 1: none
        assert_eq!(
            count_unit_roots(&Rat::one(), &Rat::zero(), &Rat::one()),
            SegmentCrossings::Roots(0)
        );
        // (t - 1/2)^2: double root counts once
        assert_eq!(
            count_unit_roots(&Rat::one(), &Rat::from_int(-1), &Rat::new(1, 4)),
            SegmentCrossings::Roots(1)
        );
        // roots at the endpoints are counted
        assert_eq!(
            count_unit_roots(&Rat::one(), &Rat::from_int(-1), &Rat::zero()),
            SegmentCrossings::Roots(2)
        );
    }

    #[test]
    fn same_chamber_examples() {
        let amb = quintic_ambient();
        let walls = enumerate_walls_in_box(
            &amb,
            &NumClass::new(0, EffectiveClass::new(vec![1, 1])),
            &unit_box((-1, 1)),
        )
        .unwrap();
        let a = qpt(Rat::new(1, 4), Rat::one(), Rat::one());
        let b = qpt(Rat::new(3, 4), Rat::one(), Rat::one());
        assert!(same_chamber(&amb, &walls, &a, &b).unwrap());
        let m = qpt(Rat::new(-1, 2), Rat::one(), Rat::one());
        let p = qpt(Rat::new(1, 2), Rat::one(), Rat::one());
        assert!(!same_chamber(&amb, &walls, &m, &p).unwrap());
        assert!(same_chamber(&amb, &[], &m, &p).unwrap());
    }

    fn crossing_catalog_model() -> ValidatedModel {
        validate_model(&ObjectModel::chain(
            NumClass::new(0, EffectiveClass::new(vec![1, 1])),
            true,
            vec![("A".into(), NumClass::new(0, EffectiveClass::new(vec![0, 1])))],
        ))
        .unwrap()
    }

    #[test]
    fn actual_walls_examples() {
        let walls = vec![
            wall(0, vec![1, 1], 0, vec![0, 1]),
            wall(0, vec![1, 1], 0, vec![1, 0]),
        ];
        let m = crossing_catalog_model();
        assert_eq!(
            actual_walls(&walls, &[&m]),
            vec![wall(0, vec![1, 1], 0, vec![0, 1])]
        );
        assert_eq!(actual_walls(&walls, &[]), vec![]);

        // a second model realizing the other wall keeps both
        let m2 = validate_model(&ObjectModel::chain(
            NumClass::new(0, EffectiveClass::new(vec![1, 1])),
            true,
            vec![("A".into(), NumClass::new(0, EffectiveClass::new(vec![1, 0])))],
        ))
        .unwrap();
        assert_eq!(actual_walls(&walls, &[&m, &m2]), walls);
    }

    #[test]
    fn crossing_report_examples() {
        let amb = quintic_ambient();
        let m = crossing_catalog_model();
        let catalog: Vec<(&str, &ValidatedModel)> = vec![("F", &m)];
        let p_minus = qpt(Rat::new(-1, 2), Rat::one(), Rat::one());
        let p_plus = qpt(Rat::new(1, 2), Rat::one(), Rat::one());
        let p_zero = qpt(Rat::zero(), Rat::one(), Rat::one());
        let report = crossing_report(&amb, &catalog, &p_minus, &p_plus, &p_zero).unwrap();
        assert_eq!(report.objects[0].situation, 2);
        assert_eq!(report.objects[0].nodes[0].sign_minus, 1);
        assert_eq!(report.objects[0].nodes[0].sign_plus, -1);
        assert_eq!(report.s_minus, Vec::<String>::new());
        assert_eq!(report.s_zero, vec!["F"]);
        assert_eq!(report.s_plus, vec!["F"]);
        assert!(report.s_minus_in_s_zero && report.s_plus_in_s_zero);

        // swapped sides
        let report = crossing_report(&amb, &catalog, &p_plus, &p_minus, &p_zero).unwrap();
        assert_eq!(report.objects[0].situation, 3);
        assert_eq!(report.s_minus, vec!["F"]);
        assert_eq!(report.s_plus, Vec::<String>::new());

        // an object with no wall-relevant node is stable on both sides
        let plain = validate_model(&ObjectModel::chain(
            NumClass::new(1, EffectiveClass::new(vec![0, 1])),
            true,
            vec![],
        ))
        .unwrap();
        let catalog2: Vec<(&str, &ValidatedModel)> = vec![("F", &m), ("G", &plain)];
        let report = crossing_report(&amb, &catalog2, &p_minus, &p_plus, &p_zero).unwrap();
        let g = report.objects.iter().find(|o| o.id == "G").unwrap();
        assert_eq!(g.situation, 1);
        assert!(report.s_minus.contains(&"G".to_string()));
        assert!(report.s_zero.contains(&"G".to_string()));
        assert!(report.s_plus.contains(&"G".to_string()));

        // off-wall p_zero rejected
        let off = qpt(Rat::new(1, 4), Rat::one(), Rat::one());
        assert!(matches!(
            crossing_report(&amb, &catalog, &p_minus, &p_plus, &off),
            Err(Error::NotOnWall(_))
        ));
        // both endpoints on the same side rejected
        assert!(matches!(
            crossing_report(&amb, &catalog, &p_plus, &p_plus, &p_zero),
            Err(Error::NotAdjacent(_))
        ));
    }

    #[test]
    fn determinant_identity_and_degenerate_pairs() {
        let amb = quintic_ambient();
        let w = wall(2, vec![1, 1], 1, vec![0, 1]);
        let pt = qpt(Rat::one(), Rat::one(), Rat::one());
        assert_eq!(quintic_determinant_form(&w, &pt), Rat::from_int(-1));
        assert_eq!(quintic_determinant_form(&w, &pt), wall_value(&amb, &w, &pt));

        // degenerate: det(e n; chi0 n0) = 0 factors out x_L
        let dw = wall(2, vec![3, 2], 1, vec![1, 1]);
        assert_eq!(det2(dw.e, 1, dw.chi0, 2), 0);
        for (b, j, l) in [(1i64, 2i64, 3i64), (-2, 1, 5), (7, 4, 1)] {
            let pt = qpt(Rat::from_int(b), Rat::from_int(j), Rat::from_int(l));
            let expected = Rat::from_int(l)
                * (Rat::from_int(det2(1, 1, 2, 3)) + Rat::from_int(det2(1, 1, 3, 2)) * Rat::from_int(b));
            assert_eq!(wall_value(&amb, &dw, &pt), expected);
        }

        assert_eq!(quintic_degenerate_pairs(2, 2), vec![(1, 1)]);
        assert_eq!(quintic_degenerate_pairs(3, 3), vec![(1, 1), (2, 2)]);
        assert_eq!(quintic_degenerate_pairs(1, 3), vec![]);
    }

    #[test]
    fn complement_antisymmetry() {
        let amb = quintic_ambient();
        let w = wall(3, vec![2, 3], 1, vec![1, 2]);
        let c = w.complement();
        for (b, j, l) in [(1i64, 1i64, 1i64), (-3, 2, 1), (5, 1, 4)] {
            let pt = qpt(Rat::from_int(b), Rat::from_int(j), Rat::from_int(l));
            assert_eq!(wall_value(&amb, &w, &pt), -wall_value(&amb, &c, &pt));
        }
    }
}
