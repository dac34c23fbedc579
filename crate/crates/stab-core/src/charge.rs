//! The twisted central charge and its slopes.
//!
//! Z(chi, beta) = (chi - (B + c1/4).beta) - i (J+L).beta, valued in the
//! partially completed lower half-plane for admissible nonzero classes.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::lattice::{EffectiveClass, Functional, NumClass, ValidatedAmbient};
use crate::rat::Rat;

/// A point of the stability-parameter space, instantiating the B, J, L
/// pairings of the ambient. The optional c1 correction stays with the
/// ambient data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityParameter {
    #[serde(rename = "B")]
    pub b: Vec<Rat>,
    #[serde(rename = "J")]
    pub j: Vec<Rat>,
    #[serde(rename = "L")]
    pub l: Vec<Rat>,
}

impl StabilityParameter {
    /// Check lengths and J+L positivity on every cone generator.
    pub fn validate(&self, amb: &ValidatedAmbient) -> Result<()> {
        let r = amb.rank();
        let mut violations = Vec::new();
        for (name, v) in [("B", &self.b), ("J", &self.j), ("L", &self.l)] {
            if v.len() != r {
                violations.push(Violation::Malformed {
                    detail: format!("functional {name} has length {} (rank is {r})", v.len()),
                });
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidParameter(violations));
        }
        for i in 0..amb.num_generators() {
            if !self.j_plus_l_on_generator(amb, i).is_positive() {
                violations.push(Violation::NonPositivePairing {
                    functional: "J+L".into(),
                    generator: i,
                });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(violations))
        }
    }

    pub fn j_plus_l_on_generator(&self, amb: &ValidatedAmbient, index: usize) -> Rat {
        let g = &amb.data().generators[index];
        g.iter()
            .enumerate()
            .map(|(k, &x)| (&self.j[k] + &self.l[k]) * Rat::from_int(x))
            .sum()
    }

    pub fn j_plus_l(&self, amb: &ValidatedAmbient, class: &EffectiveClass) -> Rat {
        (0..amb.num_generators())
            .map(|i| Rat::from_int(class.coeffs[i] as i64) * self.j_plus_l_on_generator(amb, i))
            .sum()
    }

    /// (B + c1/4).beta with B taken from this parameter point.
    pub fn twisted_b(&self, amb: &ValidatedAmbient, class: &EffectiveClass) -> Rat {
        amb.twisted_b(&self.b, class)
    }
}

/// An exact value of the central charge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChargeValue {
    pub re: Rat,
    pub im: Rat,
}

impl ChargeValue {
    pub fn new(re: Rat, im: Rat) -> Self {
        ChargeValue { re, im }
    }

    pub fn add(&self, other: &ChargeValue) -> ChargeValue {
        ChargeValue {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// Membership in the partially completed lower half-plane.
pub fn in_lower_half(z: &ChargeValue) -> bool {
    z.im.is_negative() || (z.im.is_zero() && z.re.is_positive())
}

/// A slope value: exact rational, or +infinity for dimension-0 classes.
/// +infinity compares above every rational, keeping max-slope searches total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Rat),
    Infinite,
}

impl Slope {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::Infinite => None,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Z(chi, beta) at a parameter point.
pub fn central_charge(
    amb: &ValidatedAmbient,
    p: &StabilityParameter,
    n: &NumClass,
) -> ChargeValue {
    let re = Rat::from_int(n.chi) - p.twisted_b(amb, &n.beta);
    let im = -p.j_plus_l(amb, &n.beta);
    ChargeValue { re, im }
}

/// mu^Z = -Re Z / Im Z, or +infinity for dimension-0 classes.
pub fn z_slope(amb: &ValidatedAmbient, p: &StabilityParameter, n: &NumClass) -> Result<Slope> {
    if n.is_zero() {
        return Err(Error::ZeroObject);
    }
    if n.beta.is_zero() {
        return Ok(Slope::Infinite);
    }
    let num = Rat::from_int(n.chi) - p.twisted_b(amb, &n.beta);
    let den = p.j_plus_l(amb, &n.beta);
    Ok(Slope::Finite(num / den))
}

/// mu^P = chi / (H.beta).
pub fn p_slope(amb: &ValidatedAmbient, n: &NumClass) -> Result<Slope> {
    if n.is_zero() {
        return Err(Error::ZeroObject);
    }
    if n.beta.is_zero() {
        return Ok(Slope::Infinite);
    }
    let den = amb.pair(Functional::H, &n.beta);
    Ok(Slope::Finite(Rat::from_int(n.chi) / den))
}

/// P^H = (H.beta) m + chi. The leading coefficient is rational when the
/// ambient declares rational H-pairings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HilbertPolynomial {
    pub leading: Rat,
    pub constant: i64,
}

pub fn hilbert_polynomial(amb: &ValidatedAmbient, n: &NumClass) -> HilbertPolynomial {
    HilbertPolynomial {
        leading: amb.pair(Functional::H, &n.beta),
        constant: n.chi,
    }
}

/// The complete finite list of admissible classes with central charge c,
/// in canonical (beta lex, then chi) order.
pub fn enumerate_classes_with_charge(
    amb: &ValidatedAmbient,
    p: &StabilityParameter,
    c: &ChargeValue,
) -> Result<Vec<NumClass>> {
    if !in_lower_half(c) {
        return Err(Error::NotInLowerHalf);
    }
    let n_gens = amb.num_generators();
    if c.im.is_zero() {
        // beta = 0 forced; chi = re must be a positive integer
        return Ok(match c.re.to_i64() {
            Some(chi) if chi > 0 => vec![NumClass::new(chi, EffectiveClass::zero(n_gens))],
            _ => vec![],
        });
    }
    let target = -&c.im;
    let weights: Vec<Rat> = (0..n_gens)
        .map(|i| p.j_plus_l_on_generator(amb, i))
        .collect();
    let mut out = Vec::new();
    let mut coeffs = vec![0u64; n_gens];
    search_classes(amb, p, c, &target, &weights, &mut coeffs, 0, &mut out);
    Ok(out)
}

fn search_classes(
    amb: &ValidatedAmbient,
    p: &StabilityParameter,
    c: &ChargeValue,
    remaining: &Rat,
    weights: &[Rat],
    coeffs: &mut Vec<u64>,
    index: usize,
    out: &mut Vec<NumClass>,
) {
    if index == weights.len() {
        if !remaining.is_zero() {
            return;
        }
        let beta = EffectiveClass::new(coeffs.clone());
        if beta.is_zero() {
            return;
        }
        let chi_rat = &c.re + p.twisted_b(amb, &beta);
        if let Some(chi) = chi_rat.to_i64() {
            out.push(NumClass::new(chi, beta));
        }
        return;
    }
    let w = &weights[index];
    let max: u64 = {
        let bound = (remaining / w).floor_int();
        use num_traits::ToPrimitive;
        bound.to_u64().unwrap_or(0)
    };
    for a in 0..=max {
        coeffs[index] = a;
        let used = Rat::from_int(a as i64) * w;
        let rest = remaining - &used;
        if rest.is_negative() {
            break;
        }
        search_classes(amb, p, c, &rest, weights, coeffs, index + 1, out);
    }
    coeffs[index] = 0;
}

/// Distinct Hilbert polynomials among the classes of fixed charge.
pub fn hilbert_polynomials_for_charge(
    amb: &ValidatedAmbient,
    p: &StabilityParameter,
    c: &ChargeValue,
) -> Result<BTreeSet<HilbertPolynomial>> {
    Ok(enumerate_classes_with_charge(amb, p, c)?
        .iter()
        .map(|n| hilbert_polynomial(amb, n))
        .collect())
}

/// Constructive slope-comparison constants: mu^Z = r(beta) mu^P + s(beta)
/// with r, s weighted mediants of the per-generator ratios, hence bounded
/// by the generator extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeBounds {
    pub r_min: Rat,
    pub r_max: Rat,
    pub s_min: Rat,
    pub s_max: Rat,
}

impl SlopeBounds {
    /// Interval guaranteed to contain mu^Z for a class with the given finite
    /// mu^P; the min/max split handles negative mu^P correctly.
    pub fn mu_z_interval(&self, mu_p: &Rat) -> (Rat, Rat) {
        let a = &self.r_min * mu_p;
        let b = &self.r_max * mu_p;
        let lo = a.clone().min(b.clone()) + self.s_min.clone();
        let hi = a.max(b) + self.s_max.clone();
        (lo, hi)
    }
}

pub fn slope_comparison_bounds(amb: &ValidatedAmbient, p: &StabilityParameter) -> SlopeBounds {
    let mut r_min: Option<Rat> = None;
    let mut r_max: Option<Rat> = None;
    let mut s_min: Option<Rat> = None;
    let mut s_max: Option<Rat> = None;
    for i in 0..amb.num_generators() {
        let jl = p.j_plus_l_on_generator(amb, i);
        let mut unit = vec![0u64; amb.num_generators()];
        unit[i] = 1;
        let unit = EffectiveClass::new(unit);
        let r = amb.pair_generator(Functional::H, i) / jl.clone();
        let s = -p.twisted_b(amb, &unit) / jl;
        r_min = Some(r_min.map_or(r.clone(), |m| m.min(r.clone())));
        r_max = Some(r_max.map_or(r.clone(), |m| m.max(r)));
        s_min = Some(s_min.map_or(s.clone(), |m| m.min(s.clone())));
        s_max = Some(s_max.map_or(s.clone(), |m| m.max(s)));
    }
    SlopeBounds {
        r_min: r_min.unwrap(),
        r_max: r_max.unwrap(),
        s_min: s_min.unwrap(),
        s_max: s_max.unwrap(),
    }
}
