//! Combinatorial stand-ins for purely 1-dimensional coherent sheaves:
//! finite modular lattices of subobject nodes carrying additive numerical
//! classes, together with the stability verdicts, Harder-Narasimhan and
//! Jordan-Holder filtrations, and the h^0 bounds.
//!
//! Subobjects of a quotient F/G are taken to be exactly the lattice
//! interval [G, top] with classes shifted by -class(G).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charge::{
    central_charge, p_slope, slope_comparison_bounds, z_slope, ChargeValue, Slope,
    StabilityParameter,
};
use crate::error::{Error, Result};
use crate::lattice::{EffectiveClass, Functional, NumClass, ValidatedAmbient};
use crate::rat::Rat;

pub const BOTTOM_ID: &str = "0";
pub const TOP_ID: &str = "1";

/// One subobject node as it appears in a model document. A missing
/// `saturated` flag is filled in from the computed quotient purity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub chi: i64,
    pub beta: EffectiveClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturated: Option<bool>,
}

/// An object model document: top class, purity flag, proper nodes, and the
/// declared order relation. Bottom/top carry the implicit ids "0"/"1".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectModel {
    pub top: NumClass,
    pub pure: bool,
    pub nodes: Vec<NodeDoc>,
    pub order: Vec<(String, String)>,
}

impl ObjectModel {
    /// A chain model 0 < n_1 < ... < n_k < top.
    pub fn chain(top: NumClass, pure: bool, chain: Vec<(String, NumClass)>) -> Self {
        let mut order = Vec::new();
        let mut prev = BOTTOM_ID.to_string();
        let mut nodes = Vec::new();
        for (id, class) in chain {
            order.push((prev.clone(), id.clone()));
            nodes.push(NodeDoc {
                id: id.clone(),
                chi: class.chi,
                beta: class.beta,
                saturated: None,
            });
            prev = id;
        }
        order.push((prev, TOP_ID.to_string()));
        ObjectModel {
            top,
            pure,
            nodes,
            order,
        }
    }
}

/// A model whose lattice and class invariants have all been checked.
#[derive(Debug, Clone)]
pub struct ValidatedModel {
    ids: Vec<String>,
    classes: Vec<NumClass>,
    saturated: Vec<bool>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    pure: bool,
}

/// Which slope functional drives the stability machinery.
#[derive(Clone, Copy)]
pub enum SlopeRule<'a> {
    Z {
        ambient: &'a ValidatedAmbient,
        param: &'a StabilityParameter,
    },
    P {
        ambient: &'a ValidatedAmbient,
    },
}

impl SlopeRule<'_> {
    pub fn slope(&self, n: &NumClass) -> Result<Slope> {
        match self {
            SlopeRule::Z { ambient, param } => z_slope(ambient, param, n),
            SlopeRule::P { ambient } => p_slope(ambient, n),
        }
    }
}

/// Semistability verdict plus a witness node on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub witness: Option<String>,
}

/// Harder-Narasimhan filtration output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnResult {
    pub chain: Vec<String>,
    pub factor_classes: Vec<NumClass>,
    pub slopes: Vec<Slope>,
}

/// The Jordan-Holder factor multiset, in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedClass {
    pub factors: Vec<NumClass>,
}

impl GradedClass {
    fn from_factors(mut factors: Vec<NumClass>) -> Self {
        factors.sort();
        GradedClass { factors }
    }
}

/// The h^0 bound through the Z-slope, together with the constructively
/// derived constants used in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZBoundReport {
    pub bound: Rat,
    pub a1: Rat,
    pub a0: Rat,
}

/// Check all model invariants and precompute the order and join/meet tables.
pub fn validate_model(m: &ObjectModel) -> Result<ValidatedModel> {
    let width = m.top.beta.coeffs.len();
    if !m.top.is_admissible() {
        return Err(Error::BadBottomOrTop("top class is not admissible".into()));
    }

    // assemble nodes; bottom/top are implicit but may be listed explicitly
    let mut ids = vec![BOTTOM_ID.to_string()];
    let mut classes = vec![NumClass::zero(width)];
    let mut declared_sat: Vec<Option<bool>> = vec![None];
    for doc in &m.nodes {
        if doc.beta.coeffs.len() != width {
            return Err(Error::Malformed(format!(
                "node {} has beta of length {} (expected {width})",
                doc.id,
                doc.beta.coeffs.len()
            )));
        }
        let class = NumClass::new(doc.chi, doc.beta.clone());
        match doc.id.as_str() {
            BOTTOM_ID => {
                if !class.is_zero() {
                    return Err(Error::BadBottomOrTop(
                        "explicit bottom node must carry the zero class".into(),
                    ));
                }
            }
            TOP_ID => {
                if class != m.top {
                    return Err(Error::BadBottomOrTop(
                        "explicit top node must carry the top class".into(),
                    ));
                }
            }
            _ => {
                if ids.contains(&doc.id) {
                    return Err(Error::Malformed(format!("duplicate node id {}", doc.id)));
                }
                ids.push(doc.id.clone());
                classes.push(class);
                declared_sat.push(doc.saturated);
            }
        }
    }
    ids.push(TOP_ID.to_string());
    classes.push(m.top.clone());
    declared_sat.push(None);
    let n = ids.len();
    let bottom = 0;
    let top = n - 1;
    let index_of = |id: &str| -> Result<usize> {
        ids.iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::Malformed(format!("order references unknown node {id}")))
    };

    // reflexive-transitive closure of the declared relation plus bottom/top
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        leq[bottom][i] = true;
        leq[i][top] = true;
    }
    for (a, b) in &m.order {
        let (i, j) = (index_of(a)?, index_of(b)?);
        leq[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(Error::NotALattice(format!(
                    "order cycle through {} and {}",
                    ids[i], ids[j]
                )));
            }
        }
    }

    // joins and meets must exist and be unique
    let mut join = vec![vec![0usize; n]; n];
    let mut meet = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let uppers: Vec<usize> = (0..n).filter(|&u| leq[i][u] && leq[j][u]).collect();
            let lub = uppers
                .iter()
                .copied()
                .find(|&u| uppers.iter().all(|&v| leq[u][v]));
            let lowers: Vec<usize> = (0..n).filter(|&u| leq[u][i] && leq[u][j]).collect();
            let glb = lowers
                .iter()
                .copied()
                .find(|&u| lowers.iter().all(|&v| leq[v][u]));
            match (lub, glb) {
                (Some(u), Some(v)) => {
                    join[i][j] = u;
                    meet[i][j] = v;
                }
                _ => {
                    return Err(Error::NotALattice(format!(
                        "pair ({}, {}) has no unique join/meet",
                        ids[i], ids[j]
                    )));
                }
            }
        }
    }

    // monotone classes with admissible quotients
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] {
                match classes[j].checked_sub(&classes[i]) {
                    Some(q) if q.is_admissible() => {}
                    _ => return Err(Error::NonMonotone(ids[i].clone(), ids[j].clone())),
                }
            }
        }
    }

    // modularity of the class assignment
    for i in 0..n {
        for j in 0..n {
            let lhs = classes[join[i][j]].add(&classes[meet[i][j]]);
            let rhs = classes[i].add(&classes[j]);
            if lhs != rhs {
                return Err(Error::NonModular(ids[i].clone(), ids[j].clone()));
            }
        }
    }

    if m.pure {
        for i in 0..n {
            if i != bottom && classes[i].beta.is_zero() {
                return Err(Error::ImpureNode(ids[i].clone()));
            }
        }
    }

    // saturated <=> the quotient has no 0-dimensional subobject
    let mut saturated = vec![false; n];
    for i in 0..n {
        let computed = !(0..n).any(|j| j != i && leq[i][j] && classes[j].beta == classes[i].beta);
        if let Some(declared) = declared_sat[i] {
            if declared != computed {
                return Err(Error::SaturationMismatch(ids[i].clone()));
            }
        }
        saturated[i] = computed;
    }

    Ok(ValidatedModel {
        ids,
        classes,
        saturated,
        leq,
        join,
        meet,
        bottom,
        top,
        pure: m.pure,
    })
}

impl ValidatedModel {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn class(&self, i: usize) -> &NumClass {
        &self.classes[i]
    }

    pub fn top_class(&self) -> &NumClass {
        &self.classes[self.top]
    }

    pub fn is_leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn is_saturated(&self, i: usize) -> bool {
        self.saturated[i]
    }

    /// Proper nonzero subobject indices (everything except bottom and top).
    pub fn proper_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != self.bottom && i != self.top)
    }

    /// Nodes n with lo <= n <= hi.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.leq[lo][i] && self.leq[i][hi])
            .collect()
    }

    /// Class of the factor hi/lo.
    pub fn factor_class(&self, lo: usize, hi: usize) -> NumClass {
        self.classes[hi]
            .checked_sub(&self.classes[lo])
            .expect("monotone classes guaranteed by validation")
    }

    /// Test-only escape hatch for constructing models that bypass
    /// validation, used to exercise inconsistency errors.
    #[cfg(test)]
    fn from_parts_unchecked(
        ids: Vec<String>,
        classes: Vec<NumClass>,
        leq: Vec<Vec<bool>>,
        join: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        pure: bool,
    ) -> Self {
        let n = ids.len();
        ValidatedModel {
            saturated: vec![true; n],
            ids,
            classes,
            leq,
            join,
            meet,
            bottom: 0,
            top: n - 1,
            pure,
        }
    }
}

fn require_pure(m: &ValidatedModel) -> Result<()> {
    if m.pure {
        Ok(())
    } else {
        Err(Error::NotPure)
    }
}

/// Semistability (strict = stability) over all proper nonzero subobjects,
/// with a witness node on failure.
pub fn semistability(m: &ValidatedModel, rule: &SlopeRule, strict: bool) -> Result<Verdict> {
    require_pure(m)?;
    let mu_top = rule.slope(m.top_class())?;
    for i in m.proper_nodes() {
        let mu = rule.slope(m.class(i))?;
        let destabilizes = if strict { mu >= mu_top } else { mu > mu_top };
        if destabilizes {
            return Ok(Verdict {
                ok: false,
                witness: Some(m.id(i).to_string()),
            });
        }
    }
    Ok(Verdict {
        ok: true,
        witness: None,
    })
}

pub fn is_semistable(m: &ValidatedModel, rule: &SlopeRule) -> Result<bool> {
    Ok(semistability(m, rule, false)?.ok)
}

pub fn is_stable(m: &ValidatedModel, rule: &SlopeRule) -> Result<bool> {
    Ok(semistability(m, rule, true)?.ok)
}

/// The four equivalent (semi)stability tests: all subobjects, saturated
/// subobjects, 1-dimensional quotients, pure quotients.
pub fn stability_test_battery(
    m: &ValidatedModel,
    rule: &SlopeRule,
    strict: bool,
) -> Result<[bool; 4]> {
    require_pure(m)?;
    let mu_top = rule.slope(m.top_class())?;
    let mut verdicts = [true; 4];
    for i in m.proper_nodes() {
        let mu_sub = rule.slope(m.class(i))?;
        let sub_bad = if strict {
            mu_sub >= mu_top
        } else {
            mu_sub > mu_top
        };
        if sub_bad {
            verdicts[0] = false;
            if m.is_saturated(i) {
                verdicts[1] = false;
            }
        }
        let q = m.factor_class(i, m.top());
        if !q.beta.is_zero() {
            let mu_q = rule.slope(&q)?;
            let q_bad = if strict { mu_q <= mu_top } else { mu_q < mu_top };
            if q_bad {
                verdicts[2] = false;
                if m.is_saturated(i) {
                    verdicts[3] = false;
                }
            }
        }
    }
    Ok(verdicts)
}

/// The unique maximal node attaining the maximal slope within the interval
/// [lo, top of interval], classes shifted by -class(lo).
fn max_destabilizer_in_interval(
    m: &ValidatedModel,
    rule: &SlopeRule,
    lo: usize,
    hi: usize,
) -> Result<usize> {
    let mut best: Option<(Slope, Vec<usize>)> = None;
    for i in m.interval(lo, hi) {
        if i == lo {
            continue;
        }
        let mu = rule.slope(&m.factor_class(lo, i))?;
        match &mut best {
            None => best = Some((mu, vec![i])),
            Some((cur, attaining)) => {
                if mu > *cur {
                    *cur = mu;
                    attaining.clear();
                    attaining.push(i);
                } else if mu == *cur {
                    attaining.push(i);
                }
            }
        }
    }
    let (_, attaining) = best.expect("interval above lo is nonempty");
    // the maximal destabilizer must dominate every max-slope node
    let g = attaining
        .iter()
        .copied()
        .find(|&g| attaining.iter().all(|&a| m.is_leq(a, g)))
        .ok_or(Error::NonUniqueMaximalDestabilizer)?;
    Ok(g)
}

/// The maximal destabilizing subobject; the top node itself when the model
/// is semistable.
pub fn max_destabilizing_subobject(m: &ValidatedModel, rule: &SlopeRule) -> Result<usize> {
    max_destabilizer_in_interval(m, rule, m.bottom(), m.top())
}

/// The Harder-Narasimhan filtration, by iterating the maximal destabilizer
/// on quotient intervals.
pub fn hn_filtration(m: &ValidatedModel, rule: &SlopeRule) -> Result<HnResult> {
    require_pure(m)?;
    let mut chain = vec![m.id(m.bottom()).to_string()];
    let mut factor_classes = Vec::new();
    let mut slopes: Vec<Slope> = Vec::new();
    let mut cur = m.bottom();
    while cur != m.top() {
        let g = max_destabilizer_in_interval(m, rule, cur, m.top())?;
        let factor = m.factor_class(cur, g);
        let mu = rule.slope(&factor)?;
        if let Some(prev) = slopes.last() {
            assert!(
                mu < *prev,
                "HN slopes failed to decrease; validated model should preclude this"
            );
        }
        chain.push(m.id(g).to_string());
        factor_classes.push(factor);
        slopes.push(mu);
        cur = g;
    }
    Ok(HnResult {
        chain,
        factor_classes,
        slopes,
    })
}

pub fn mu_max(m: &ValidatedModel, rule: &SlopeRule) -> Result<Slope> {
    Ok(hn_filtration(m, rule)?.slopes.first().cloned().unwrap())
}

pub fn mu_min(m: &ValidatedModel, rule: &SlopeRule) -> Result<Slope> {
    Ok(hn_filtration(m, rule)?.slopes.last().cloned().unwrap())
}

/// The slope hypothesis of the Hom-vanishing lemma:
/// mu_min(F) > mu_max(G) forces Hom(F, G) = 0.
pub fn hom_vanishing_criterion(
    m_f: &ValidatedModel,
    m_g: &ValidatedModel,
    rule: &SlopeRule,
) -> Result<bool> {
    Ok(mu_min(m_f, rule)? > mu_max(m_g, rule)?)
}

/// One Jordan-Holder composition series of a semistable model; returns the
/// factor multiset, which is independent of the choices made.
pub fn jh_filtration(m: &ValidatedModel, rule: &SlopeRule) -> Result<GradedClass> {
    if !is_semistable(m, rule)? {
        return Err(Error::NotSemistable);
    }
    let mu = rule.slope(m.top_class())?;
    let mut factors = Vec::new();
    let mut t = m.top();
    while t != m.bottom() {
        // equal-slope proper nodes strictly below t
        let mut candidates: Vec<usize> = Vec::new();
        for i in 0..m.len() {
            if i != t && i != m.bottom() && m.is_leq(i, t) && rule.slope(m.class(i))? == mu {
                candidates.push(i);
            }
        }
        let mut maximal: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&a| !candidates.iter().any(|&b| b != a && m.is_leq(a, b)))
            .collect();
        // deterministic tie-break: lexicographically smallest id
        maximal.sort_by(|&a, &b| m.id(a).cmp(m.id(b)));
        let next = maximal.first().copied().unwrap_or(m.bottom());
        let factor = m.factor_class(next, t);
        debug_assert!(interval_factor_is_stable(m, rule, next, t)?);
        factors.push(factor);
        t = next;
    }
    Ok(GradedClass::from_factors(factors))
}

/// Stability of the factor hi/lo inside the interval sublattice [lo, hi].
pub fn interval_factor_is_stable(
    m: &ValidatedModel,
    rule: &SlopeRule,
    lo: usize,
    hi: usize,
) -> Result<bool> {
    let mu = rule.slope(&m.factor_class(lo, hi))?;
    for i in m.interval(lo, hi) {
        if i != lo && i != hi && rule.slope(&m.factor_class(lo, i))? >= mu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// S-equivalence at the numerical level: equal slopes and equal JH factor
/// multisets.
pub fn s_equivalent(m1: &ValidatedModel, m2: &ValidatedModel, rule: &SlopeRule) -> Result<bool> {
    let g1 = jh_filtration(m1, rule)?;
    let g2 = jh_filtration(m2, rule)?;
    if rule.slope(m1.top_class())? != rule.slope(m2.top_class())? {
        return Ok(false);
    }
    Ok(g1 == g2)
}

fn clamped_bracket(inner: Rat) -> Rat {
    if inner.is_negative() {
        Rat::zero()
    } else {
        inner
    }
}

/// h^0 bound through the P-slope:
/// (H.beta) [ mu^P_max + (H.beta)(H.beta + 1)/2 - 1 ]_+ .
pub fn h0_bound_p(m: &ValidatedModel, amb: &ValidatedAmbient) -> Result<Rat> {
    require_pure(m)?;
    let hb = amb.pair(Functional::H, &m.top_class().beta);
    let rule = SlopeRule::P { ambient: amb };
    let mu_p_max = match mu_max(m, &rule)? {
        Slope::Finite(r) => r,
        Slope::Infinite => return Err(Error::NotPure),
    };
    let half = Rat::new(1, 2);
    let inner = mu_p_max + half * &hb * (&hb + &Rat::one()) - Rat::one();
    Ok(&hb * &clamped_bracket(inner))
}

/// h^0 bound through the Z-slope for a Z-semistable model of charge c, with
/// constants a1, a0 derived from the generator slope-comparison ratios so
/// that mu^P_max <= a1 mu^Z_max + a0 holds.
pub fn h0_bound_z(
    m: &ValidatedModel,
    amb: &ValidatedAmbient,
    p: &StabilityParameter,
    c: &ChargeValue,
) -> Result<ZBoundReport> {
    let rule = SlopeRule::Z {
        ambient: amb,
        param: p,
    };
    if !is_semistable(m, &rule)? {
        return Err(Error::NotSemistable);
    }
    if !c.im.is_negative() {
        return Err(Error::ZeroImaginaryPart);
    }
    if central_charge(amb, p, m.top_class()) != *c {
        return Err(Error::ChargeMismatch);
    }
    let bounds = slope_comparison_bounds(amb, p);
    // semistable, so mu^Z_max = mu^Z(top) = Re c / (-Im c)
    let mu_z_max = &c.re / &(-&c.im);
    // mu^P = (mu^Z - s)/r: divide by r_min when the numerator bound is
    // nonnegative, by r_max otherwise
    let r = if mu_z_max >= bounds.s_min {
        bounds.r_min.clone()
    } else {
        bounds.r_max.clone()
    };
    let a1 = r.recip();
    let a0 = -&bounds.s_min * &a1;
    let hb = amb.pair(Functional::H, &m.top_class().beta);
    let half = Rat::new(1, 2);
    let inner = &a1 * &mu_z_max + &a0 + half * &hb * (&hb + &Rat::one()) - Rat::one();
    Ok(ZBoundReport {
        bound: &hb * &clamped_bracket(inner),
        a1,
        a0,
    })
}

/// Stability verdicts for a whole catalog, keyed by model id.
pub fn catalog_verdicts(
    catalog: &BTreeMap<String, ValidatedModel>,
    rule: &SlopeRule,
    strict: bool,
) -> Result<BTreeMap<String, Verdict>> {
    catalog
        .iter()
        .map(|(id, m)| Ok((id.clone(), semistability(m, rule, strict)?)))
        .collect()
}
