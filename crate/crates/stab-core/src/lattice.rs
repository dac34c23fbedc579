//! The numerical lattice: a simplicial effective cone inside Z^r together
//! with the divisor-class functionals B, J, L, H (and an optional c1
//! correction), plus exact interval enumeration of effective classes.
//!
//! Effective classes live in generator coordinates with nonnegative integer
//! coefficients; `xi < beta0` always means componentwise in those
//! coordinates, which makes the candidate-subclass interval finite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::rat::Rat;

/// Raw ambient data as ingested from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientData {
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub pairing_b: Vec<Rat>,
    #[serde(rename = "J")]
    pub pairing_j: Vec<Rat>,
    #[serde(rename = "L")]
    pub pairing_l: Vec<Rat>,
    #[serde(rename = "H")]
    pub pairing_h: Vec<Rat>,
    #[serde(rename = "c1", default, skip_serializing_if = "Option::is_none")]
    pub pairing_c1: Option<Vec<Rat>>,
}

/// Which functional to pair a class against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    B,
    J,
    L,
    H,
    C1,
    JPlusL,
}

impl Functional {
    pub fn name(self) -> &'static str {
        match self {
            Functional::B => "B",
            Functional::J => "J",
            Functional::L => "L",
            Functional::H => "H",
            Functional::C1 => "c1",
            Functional::JPlusL => "J+L",
        }
    }
}

/// Ambient data whose invariants have all been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedAmbient {
    data: AmbientData,
}

fn dot(functional: &[Rat], generator: &[i64]) -> Rat {
    functional
        .iter()
        .zip(generator)
        .map(|(f, &g)| f * &Rat::from_int(g))
        .sum()
}

/// Gaussian elimination rank over the rationals.
fn rational_rank(rows: &[Vec<i64>], width: usize) -> usize {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let pivot = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in 0..width {
                    let sub = &m[rank][c] * &factor;
                    m[i][c] = &m[i][c] - &sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Check every ambient invariant; on failure, report all violations at once.
pub fn validate_ambient(raw: AmbientData) -> Result<ValidatedAmbient> {
    let mut violations = Vec::new();
    let r = raw.rank;
    if r == 0 {
        violations.push(Violation::Malformed {
            detail: "rank must be positive".into(),
        });
    }
    if raw.generators.is_empty() {
        violations.push(Violation::Malformed {
            detail: "at least one cone generator is required".into(),
        });
    }
    for (i, g) in raw.generators.iter().enumerate() {
        if g.len() != r {
            violations.push(Violation::Malformed {
                detail: format!("generator {i} has length {} (rank is {r})", g.len()),
            });
        } else if g.iter().all(|&x| x == 0) {
            violations.push(Violation::Malformed {
                detail: format!("generator {i} is zero"),
            });
        }
    }
    for (i, g) in raw.generators.iter().enumerate() {
        for h in raw.generators.iter().skip(i + 1) {
            if g == h {
                violations.push(Violation::Malformed {
                    detail: format!("duplicate generator {g:?}"),
                });
            }
        }
    }
    let mut functionals: Vec<(&str, &Vec<Rat>)> = vec![
        ("B", &raw.pairing_b),
        ("J", &raw.pairing_j),
        ("L", &raw.pairing_l),
        ("H", &raw.pairing_h),
    ];
    if let Some(c1) = &raw.pairing_c1 {
        functionals.push(("c1", c1));
    }
    for (name, f) in &functionals {
        if f.len() != r {
            violations.push(Violation::Malformed {
                detail: format!("functional {name} has length {} (rank is {r})", f.len()),
            });
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidAmbient(violations));
    }

    for (i, g) in raw.generators.iter().enumerate() {
        let jl = dot(&raw.pairing_j, g) + dot(&raw.pairing_l, g);
        if !jl.is_positive() {
            violations.push(Violation::NonPositivePairing {
                functional: "J+L".into(),
                generator: i,
            });
        }
        if !dot(&raw.pairing_h, g).is_positive() {
            violations.push(Violation::NonPositivePairing {
                functional: "H".into(),
                generator: i,
            });
        }
    }
    if rational_rank(&raw.generators, r) < raw.generators.len() {
        violations.push(Violation::DependentGenerators);
    }
    if violations.is_empty() {
        Ok(ValidatedAmbient { data: raw })
    } else {
        Err(Error::InvalidAmbient(violations))
    }
}

impl ValidatedAmbient {
    pub fn data(&self) -> &AmbientData {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    pub fn num_generators(&self) -> usize {
        self.data.generators.len()
    }

    fn functional_vec(&self, f: Functional) -> Option<Vec<Rat>> {
        match f {
            Functional::B => Some(self.data.pairing_b.clone()),
            Functional::J => Some(self.data.pairing_j.clone()),
            Functional::L => Some(self.data.pairing_l.clone()),
            Functional::H => Some(self.data.pairing_h.clone()),
            Functional::C1 => Some(
                self.data
                    .pairing_c1
                    .clone()
                    .unwrap_or_else(|| vec![Rat::zero(); self.data.rank]),
            ),
            Functional::JPlusL => Some(
                self.data
                    .pairing_j
                    .iter()
                    .zip(&self.data.pairing_l)
                    .map(|(a, b)| a + b)
                    .collect(),
            ),
        }
    }

    /// Value of a functional on a single cone generator.
    pub fn pair_generator(&self, f: Functional, index: usize) -> Rat {
        let v = self.functional_vec(f).expect("known functional");
        dot(&v, &self.data.generators[index])
    }

    /// Value of a functional on an effective class, by linearity.
    pub fn pair(&self, f: Functional, class: &EffectiveClass) -> Rat {
        (0..self.num_generators())
            .map(|i| Rat::from_int(class.coeffs[i] as i64) * self.pair_generator(f, i))
            .sum()
    }

    /// The real-part twist `B + c1/4` evaluated on a class (Calabi-Yau case
    /// recovers plain `B`). The B-values may be overridden per parameter
    /// point, so they are passed in explicitly.
    pub fn twisted_b(&self, b_values: &[Rat], class: &EffectiveClass) -> Rat {
        let quarter = Rat::new(1, 4);
        (0..self.num_generators())
            .map(|i| {
                let g = &self.data.generators[i];
                let b = dot(b_values, g) + &quarter * self.pair_generator(Functional::C1, i);
                Rat::from_int(class.coeffs[i] as i64) * b
            })
            .sum()
    }

    /// Coordinates of a class in the ambient lattice Z^r.
    pub fn class_coordinates(&self, class: &EffectiveClass) -> Vec<i64> {
        let mut out = vec![0i64; self.data.rank];
        for (i, g) in self.data.generators.iter().enumerate() {
            for (k, &x) in g.iter().enumerate() {
                out[k] += class.coeffs[i] as i64 * x;
            }
        }
        out
    }
}

/// An effective curve class in generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EffectiveClass {
    pub coeffs: Vec<u64>,
}

impl EffectiveClass {
    pub fn new(coeffs: Vec<u64>) -> Self {
        EffectiveClass { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        EffectiveClass {
            coeffs: vec![0; n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &EffectiveClass) -> EffectiveClass {
        EffectiveClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference, defined only when `other <= self`.
    pub fn checked_sub(&self, other: &EffectiveClass) -> Option<EffectiveClass> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u64>>>()
            .map(EffectiveClass::new)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &EffectiveClass) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }
}

/// A numerical class (chi, beta): Euler characteristic plus curve class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NumClass {
    pub chi: i64,
    pub beta: EffectiveClass,
}

impl NumClass {
    pub fn new(chi: i64, beta: EffectiveClass) -> Self {
        NumClass { chi, beta }
    }

    pub fn zero(n: usize) -> Self {
        NumClass {
            chi: 0,
            beta: EffectiveClass::zero(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.chi == 0 && self.beta.is_zero()
    }

    /// Admissible as the class of a nonzero sheaf of dimension <= 1:
    /// either beta != 0, or beta = 0 with chi > 0.
    pub fn is_admissible(&self) -> bool {
        !self.beta.is_zero() || self.chi > 0
    }

    pub fn add(&self, other: &NumClass) -> NumClass {
        NumClass {
            chi: self.chi + other.chi,
            beta: self.beta.add(&other.beta),
        }
    }

    /// Quotient class, defined when the betas are componentwise comparable.
    pub fn checked_sub(&self, other: &NumClass) -> Option<NumClass> {
        self.beta.checked_sub(&other.beta).map(|beta| NumClass {
            chi: self.chi - other.chi,
            beta,
        })
    }
}

/// All xi with 0 < xi < beta0 componentwise, in lexicographic order.
pub fn enumerate_interval(beta0: &EffectiveClass) -> Result<Vec<EffectiveClass>> {
    if beta0.is_zero() {
        return Err(Error::ZeroClass);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; beta0.coeffs.len()];
    loop {
        let candidate = EffectiveClass::new(cur.clone());
        if !candidate.is_zero() && candidate != *beta0 {
            out.push(candidate);
        }
        // odometer over the grid 0..=beta0[i]
        let mut i = cur.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < beta0.coeffs[i] {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}
