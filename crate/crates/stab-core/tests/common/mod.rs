//! Shared randomized-model machinery for the integration suites.
//!
//! Random subobject lattices are built as lattices of order ideals of small
//! random posets (ideals under union/intersection), with additive classes
//! attached per poset element. That construction automatically satisfies
//! every model invariant: the poset of ideals is a distributive (hence
//! modular) lattice and class sums over ideals are monotone and modular.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stab_core::model::interval_factor_is_stable;
use stab_core::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let n = rng.gen_range(lo..=hi);
    let d = *[1, 2, 3, 4].get(rng.gen_range(0..4)).unwrap();
    Rat::new(n, d)
}

fn positive_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.gen_range(1..=4);
    let d = *[1, 2].get(rng.gen_range(0..2)).unwrap();
    Rat::new(n, d)
}

/// A random ambient of rank 1..=3 with independent nonnegative generators
/// (upper triangular with positive diagonal) and strictly positive J+L and
/// H on every generator.
pub fn random_ambient(rng: &mut ChaCha8Rng) -> ValidatedAmbient {
    let r = rng.gen_range(1..=3usize);
    let mut generators = Vec::new();
    for i in 0..r {
        let mut g = vec![0i64; r];
        g[i] = rng.gen_range(1..=2);
        for x in g.iter_mut().skip(i + 1) {
            *x = rng.gen_range(0..=1);
        }
        generators.push(g);
    }
    let b: Vec<Rat> = (0..r).map(|_| small_rat(rng, -2, 2)).collect();
    // keep each J+L coordinate positive so positivity on the cone follows
    let mut j = Vec::new();
    let mut l = Vec::new();
    for _ in 0..r {
        if rng.gen_bool(0.5) {
            j.push(positive_rat(rng));
            l.push(if rng.gen_bool(0.5) { Rat::zero() } else { positive_rat(rng) });
        } else {
            j.push(if rng.gen_bool(0.5) { Rat::zero() } else { positive_rat(rng) });
            l.push(positive_rat(rng));
        }
    }
    let h: Vec<Rat> = (0..r).map(|_| positive_rat(rng)).collect();
    let c1 = if rng.gen_bool(0.5) {
        Some((0..r).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect())
    } else {
        None
    };
    validate_ambient(AmbientData {
        rank: r,
        generators,
        pairing_b: b,
        pairing_j: j,
        pairing_l: l,
        pairing_h: h,
        pairing_c1: c1,
    })
    .expect("construction satisfies the ambient invariants")
}

pub fn random_parameter(rng: &mut ChaCha8Rng, amb: &ValidatedAmbient) -> StabilityParameter {
    let r = amb.rank();
    let b: Vec<Rat> = (0..r).map(|_| small_rat(rng, -2, 2)).collect();
    let mut j = Vec::new();
    let mut l = Vec::new();
    for _ in 0..r {
        j.push(positive_rat(rng));
        l.push(if rng.gen_bool(0.5) { Rat::zero() } else { positive_rat(rng) });
    }
    let p = StabilityParameter { b, j, l };
    p.validate(amb).expect("positive J+L coordinates");
    p
}

/// A random admissible nonzero class.
pub fn random_class(rng: &mut ChaCha8Rng, amb: &ValidatedAmbient, max_coeff: u64) -> NumClass {
    let m = amb.num_generators();
    let beta = EffectiveClass::new((0..m).map(|_| rng.gen_range(0..=max_coeff)).collect());
    let chi = if beta.is_zero() {
        rng.gen_range(1..=5)
    } else {
        rng.gen_range(-5..=5)
    };
    NumClass::new(chi, beta)
}

/// A random nonzero curve class (for pure nodes).
fn random_nonzero_beta(rng: &mut ChaCha8Rng, m: usize, max_coeff: u64) -> EffectiveClass {
    loop {
        let beta = EffectiveClass::new((0..m).map(|_| rng.gen_range(0..=max_coeff)).collect());
        if !beta.is_zero() {
            return beta;
        }
    }
}

/// Random poset on n elements as a strict partial order below the index
/// order, stored as a reflexive-transitive relation.
fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                leq[i][j] = true;
            }
        }
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
    leq
}

/// The model whose subobject lattice is the lattice of order ideals of the
/// poset, with the class of an ideal the sum of its members' classes.
fn order_ideal_model(leq: &[Vec<bool>], classes: &[NumClass], width: usize) -> ObjectModel {
    let n = leq.len();
    let is_ideal = |mask: u32| -> bool {
        (0..n).all(|j| {
            mask & (1 << j) == 0 || (0..n).all(|i| !leq[i][j] || mask & (1 << i) != 0)
        })
    };
    let class_of = |mask: u32| -> NumClass {
        let mut c = NumClass::zero(width);
        for (i, cls) in classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                c = c.add(cls);
            }
        }
        c
    };
    let full: u32 = (1 << n) - 1;
    let ideals: Vec<u32> = (0..=full).filter(|&m| is_ideal(m)).collect();
    let mut nodes = Vec::new();
    let mut order = Vec::new();
    let name = |mask: u32| -> String {
        if mask == 0 {
            "0".to_string()
        } else if mask == full {
            "1".to_string()
        } else {
            format!("n{mask}")
        }
    };
    for &m in &ideals {
        if m != 0 && m != full {
            let c = class_of(m);
            nodes.push(NodeDoc {
                id: name(m),
                chi: c.chi,
                beta: c.beta,
                saturated: None,
            });
        }
    }
    for &a in &ideals {
        for &b in &ideals {
            if a != b && a & b == a {
                order.push((name(a), name(b)));
            }
        }
    }
    ObjectModel {
        top: class_of(full),
        pure: true,
        nodes,
        order,
    }
}

/// Random pure model with at most 2^max_elems nodes.
pub fn random_pure_model(
    rng: &mut ChaCha8Rng,
    amb: &ValidatedAmbient,
    max_elems: usize,
) -> ValidatedModel {
    let m = amb.num_generators();
    let n = rng.gen_range(1..=max_elems);
    let leq = random_poset(rng, n);
    let classes: Vec<NumClass> = (0..n)
        .map(|_| NumClass::new(rng.gen_range(-3..=3), random_nonzero_beta(rng, m, 2)))
        .collect();
    validate_model(&order_ideal_model(&leq, &classes, m))
        .expect("order-ideal models satisfy all invariants")
}

/// Random model that is semistable for the given rule by construction:
/// every poset element carries a positive multiple of one base class, so
/// every node has the same slope as the top.
pub fn random_semistable_model(
    rng: &mut ChaCha8Rng,
    amb: &ValidatedAmbient,
    max_elems: usize,
) -> ValidatedModel {
    let m = amb.num_generators();
    let n = rng.gen_range(1..=max_elems);
    let leq = random_poset(rng, n);
    let base = NumClass::new(rng.gen_range(-3..=3), random_nonzero_beta(rng, m, 2));
    let classes: Vec<NumClass> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            let mut c = base.clone();
            for _ in 1..k {
                c = c.add(&base);
            }
            c
        })
        .collect();
    validate_model(&order_ideal_model(&leq, &classes, m))
        .expect("order-ideal models satisfy all invariants")
}

fn interval_semistable(
    m: &ValidatedModel,
    rule: &SlopeRule,
    lo: usize,
    hi: usize,
) -> Result<bool> {
    let mu = rule.slope(&m.factor_class(lo, hi))?;
    for i in m.interval(lo, hi) {
        if i != lo && rule.slope(&m.factor_class(lo, i))? > mu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search for every chain bottom = c0 < ... < ck = top whose
/// factors are semistable in their intervals with strictly decreasing
/// slopes. The HN theorem says there is exactly one.
pub fn hn_chains_exhaustive(m: &ValidatedModel, rule: &SlopeRule) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut chain = vec![m.bottom()];
    fn go(
        m: &ValidatedModel,
        rule: &SlopeRule,
        chain: &mut Vec<usize>,
        prev_slope: Option<Slope>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let lo = *chain.last().unwrap();
        if lo == m.top() {
            out.push(chain.clone());
            return Ok(());
        }
        for g in m.interval(lo, m.top()) {
            if g == lo {
                continue;
            }
            let mu = rule.slope(&m.factor_class(lo, g))?;
            if let Some(prev) = &prev_slope {
                if mu >= *prev {
                    continue;
                }
            }
            if !interval_semistable(m, rule, lo, g)? {
                continue;
            }
            chain.push(g);
            go(m, rule, chain, Some(mu), out)?;
            chain.pop();
        }
        Ok(())
    }
    go(m, rule, &mut chain, None, &mut out)?;
    Ok(out)
}

/// Every composition series of a semistable model: chains whose factors are
/// stable of the top slope. Returns the factor multisets, one per series.
pub fn jh_series_exhaustive(m: &ValidatedModel, rule: &SlopeRule) -> Result<Vec<Vec<NumClass>>> {
    let mu = rule.slope(m.top_class())?;
    let mut out = Vec::new();
    let mut chain = vec![m.bottom()];
    let mut factors: Vec<NumClass> = Vec::new();
    fn go(
        m: &ValidatedModel,
        rule: &SlopeRule,
        mu: &Slope,
        chain: &mut Vec<usize>,
        factors: &mut Vec<NumClass>,
        out: &mut Vec<Vec<NumClass>>,
    ) -> Result<()> {
        let lo = *chain.last().unwrap();
        if lo == m.top() {
            let mut sorted = factors.clone();
            sorted.sort();
            out.push(sorted);
            return Ok(());
        }
        for g in m.interval(lo, m.top()) {
            if g == lo {
                continue;
            }
            let factor = m.factor_class(lo, g);
            if rule.slope(&factor)? != *mu {
                continue;
            }
            if !interval_factor_is_stable(m, rule, lo, g)? {
                continue;
            }
            chain.push(g);
            factors.push(factor);
            go(m, rule, mu, chain, factors, out)?;
            factors.pop();
            chain.pop();
        }
        Ok(())
    }
    go(m, rule, &mu, &mut chain, &mut factors, &mut out)?;
    Ok(out)
}
