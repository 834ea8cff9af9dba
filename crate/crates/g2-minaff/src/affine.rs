//! Affine root bookkeeping for the graded-limit character argument.
//!
//! Real roots of the untwisted affine algebra are γ = α + pδ with α a
//! finite root; γ is positive when p > 0 or when p = 0 and α > 0. The
//! coroot is γ^ = α^ + (6p / (α,α)) K, so the K-coefficient is p for a
//! long finite part and 3p for a short one. Pairings are taken against
//! level-weighted atoms ξ = μ + (level) Λ0, where ⟨α^, Λ0⟩ = 0 and
//! ⟨K, μ⟩ = 0, giving ⟨γ^, ξ⟩ = ⟨α^, μ⟩ + (6p / (α,α)) · level.
//!
//! A highest weight λ = k ω1 + l ω2 with l = 3r + s (0 ≤ s ≤ 2) determines
//! three atoms k(ω1 + Λ0), r(3ω2 + Λ0) and s ω2 + Λ0, and the statistic
//!
//! ```text
//! ρ(γ) = Σ_atoms max{0, -⟨γ^, atom⟩},
//! ```
//!
//! which vanishes for all but five positive real roots. The same data
//! determines the Demazure-operator sequence presenting the graded limit.

use serde::ser::{Serialize, Serializer};
use std::fmt;

use crate::g2::{coroot_pairing, Root, Weight};
use crate::minaff::HighestWeight;
use crate::{Error, Result};

/// A real root γ = α + pδ of the affine algebra of G2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRealRoot {
    finite: Root,
    p: i64,
}

impl AffineRealRoot {
    pub const fn new(finite: Root, p: i64) -> Self {
        AffineRealRoot { finite, p }
    }

    pub const fn finite(self) -> Root {
        self.finite
    }

    pub const fn delta_coefficient(self) -> i64 {
        self.p
    }

    /// Positive real roots are α + pδ with p > 0, or finite positive roots.
    pub const fn is_positive(self) -> bool {
        self.p > 0 || (self.p == 0 && self.finite.is_positive())
    }

    /// The coefficient of K in γ^: p when α is long, 3p when α is short.
    pub fn coroot_k_coefficient(self) -> i64 {
        6 * self.p / self.finite.norm()
    }
}

impl fmt::Display for AffineRealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            0 => write!(f, "{}", self.finite),
            1 => write!(f, "{} + δ", self.finite),
            p => write!(f, "{} + {p}δ", self.finite),
        }
    }
}

/// Serialized as the JSON triple `[m, n, p]`.
impl Serialize for AffineRealRoot {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (m, n) = self.finite.coords();
        [m, n, self.p].serialize(serializer)
    }
}

/// A level-weighted weight ξ = finite + (level) Λ0, the unit of pairing
/// for the ρ-statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineWeightAtom {
    pub finite: Weight,
    pub level: i64,
}

impl AffineWeightAtom {
    pub const fn new(finite: Weight, level: i64) -> Self {
        AffineWeightAtom { finite, level }
    }
}

/// ⟨γ^, ξ⟩ = ⟨α^, μ⟩ + (6p / (α,α)) · level; linear in the atom, and the
/// K-coefficient is always an integer.
pub fn affine_coroot_pairing(gamma: AffineRealRoot, atom: AffineWeightAtom) -> i64 {
    coroot_pairing(gamma.finite, atom.finite) + gamma.coroot_k_coefficient() * atom.level
}

/// The three atoms attached to λ = k ω1 + (3r + s) ω2:
/// k(ω1 + Λ0), r(3ω2 + Λ0), s ω2 + Λ0.
pub fn rho_atoms(lambda: HighestWeight) -> [AffineWeightAtom; 3] {
    let k = i64::from(lambda.k());
    let r = i64::from(lambda.r());
    let s = i64::from(lambda.s());
    [
        AffineWeightAtom::new(Weight::new(k, 0), k),
        AffineWeightAtom::new(Weight::new(0, 3 * r), r),
        AffineWeightAtom::new(Weight::new(0, s), 1),
    ]
}

/// ρ(γ) = Σ_atoms max{0, -⟨γ^, atom⟩} for a positive real root γ.
pub fn rho(gamma: AffineRealRoot, lambda: HighestWeight) -> Result<u64> {
    if !gamma.is_positive() {
        let (m, n) = gamma.finite.coords();
        return Err(Error::NonPositiveAffineRoot { m, n, p: gamma.p });
    }
    let total: i64 = rho_atoms(lambda)
        .into_iter()
        .map(|atom| (-affine_coroot_pairing(gamma, atom)).max(0))
        .sum();
    Ok(total as u64)
}

/// The positive real roots with δ-coefficient at most `p_max`, sorted by
/// (p, m, n): the six finite positive roots at p = 0, then all twelve
/// finite roots at each 1 ≤ p ≤ p_max.
pub fn positive_real_roots(p_max: i64) -> Vec<AffineRealRoot> {
    let mut out = Vec::new();
    for p in 0..=p_max.max(0) {
        let mut layer: Vec<AffineRealRoot> = Root::all()
            .into_iter()
            .map(|r| AffineRealRoot::new(r, p))
            .filter(|g| g.is_positive())
            .collect();
        layer.sort_by_key(|g| g.finite.coords());
        out.extend(layer);
    }
    out
}

/// The full table of ρ over the positive real roots with p ≤ p_max, in
/// (p, m, n) order, including the zero rows.
pub fn rho_table(lambda: HighestWeight, p_max: i64) -> Vec<(AffineRealRoot, u64)> {
    positive_real_roots(p_max)
        .into_iter()
        .map(|g| {
            let value = rho(g, lambda).expect("enumerated roots are positive");
            (g, value)
        })
        .collect()
}

/// One factor of a Demazure-operator sequence: a weight translated to
/// level `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DemazureFactor {
    pub weight: Weight,
    pub level: i64,
}

#[derive(serde::Serialize)]
struct DemazureFactorRecord {
    weight: Weight,
    level: i64,
}

/// The sequence of translation data presenting the graded limit as an
/// iterated Demazure module; zero-multiplier factors are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DemazureSequence {
    factors: Vec<DemazureFactor>,
}

impl DemazureSequence {
    pub fn factors(&self) -> &[DemazureFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Serialized as a list of `{"weight": [c1, c2], "level": n}` records in
/// factor order.
impl Serialize for DemazureSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.factors.iter().map(|f| DemazureFactorRecord {
            weight: f.weight,
            level: f.level,
        }))
    }
}

/// The Demazure sequence of λ = k ω1 + (3r + s) ω2: (-k ω1, k),
/// (-3r ω2, r), and for s > 0 additionally (-s ω2, 1), each factor present
/// only when its level multiplier is positive.
pub fn demazure_sequence(lambda: HighestWeight) -> DemazureSequence {
    let k = i64::from(lambda.k());
    let r = i64::from(lambda.r());
    let s = i64::from(lambda.s());
    let mut factors = Vec::new();
    if k > 0 {
        factors.push(DemazureFactor {
            weight: Weight::new(-k, 0),
            level: k,
        });
    }
    if r > 0 {
        factors.push(DemazureFactor {
            weight: Weight::new(0, -3 * r),
            level: r,
        });
    }
    if s > 0 {
        factors.push(DemazureFactor {
            weight: Weight::new(0, -s),
            level: 1,
        });
    }
    DemazureSequence { factors }
}
