//! The formal character ring of G2 and exact multiplicity engines.
//!
//! A [`FormalCharacter`] is a finitely supported Z-linear combination of
//! formal exponentials e^μ, stored as a sorted map from weights to i128
//! coefficients. Irreducible characters are computed with Freudenthal's
//! recursion over a depth grid; an independent engine evaluates the
//! alternating Weyl sum against a Kostant partition table so the two can
//! cross-check each other. Characters of modules are decomposed into
//! irreducibles by repeatedly peeling the highest dominant summand.
//!
//! All coefficient arithmetic is checked 128-bit; overflow surfaces as
//! [`Error::Overflow`] rather than wrapping or panicking.

use std::collections::BTreeMap;

use serde::ser::{Serialize, Serializer};

use crate::g2::{pairing, weyl_group, Root, Weight};
use crate::{Error, Result};

fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// A finitely supported formal sum Σ c_μ e^μ with integer coefficients.
///
/// Zero coefficients are never stored, so equality of the maps is equality
/// of characters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalCharacter {
    terms: BTreeMap<Weight, i128>,
}

impl FormalCharacter {
    /// The zero character (empty support).
    pub fn zero() -> Self {
        FormalCharacter::default()
    }

    /// The unit e^0 of the character ring.
    pub fn one() -> Self {
        FormalCharacter::from_weight(Weight::ZERO)
    }

    /// The single exponential e^μ.
    pub fn from_weight(mu: Weight) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mu, 1);
        FormalCharacter { terms }
    }

    /// Build from (weight, coefficient) pairs, accumulating duplicates and
    /// dropping zeros.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Weight, i128)>) -> Result<Self> {
        let mut ch = FormalCharacter::zero();
        for (w, c) in pairs {
            ch.add_term(w, c)?;
        }
        Ok(ch)
    }

    pub fn coeff(&self, mu: Weight) -> i128 {
        self.terms.get(&mu).copied().unwrap_or(0)
    }

    /// Number of weights with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms by increasing weight (lexicographic in (c1, c2)).
    pub fn iter(&self) -> impl Iterator<Item = (Weight, i128)> + '_ {
        self.terms.iter().map(|(w, c)| (*w, *c))
    }

    /// Iterate terms by decreasing weight; the canonical external order.
    pub fn iter_desc(&self) -> impl Iterator<Item = (Weight, i128)> + '_ {
        self.terms.iter().rev().map(|(w, c)| (*w, *c))
    }

    fn add_term(&mut self, mu: Weight, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(mu).or_insert(0);
        *entry = checked_add(*entry, c)?;
        if *entry == 0 {
            self.terms.remove(&mu);
        }
        Ok(())
    }

    /// Pointwise sum of two characters.
    pub fn add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w, c)?;
        }
        Ok(out)
    }

    /// Product in the character ring (convolution of coefficients); the
    /// character of a tensor product.
    pub fn mul(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero();
        for (u, a) in self.iter() {
            for (v, b) in other.iter() {
                out.add_term(u + v, checked_mul(a, b)?)?;
            }
        }
        Ok(out)
    }

    /// The character scaled by an integer.
    pub fn scaled(&self, c: i128) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero();
        for (w, a) in self.iter() {
            out.add_term(w, checked_mul(a, c)?)?;
        }
        Ok(out)
    }

    /// Sum of all coefficients; the dimension when this is a module character.
    pub fn coefficient_sum(&self) -> Result<i128> {
        let mut total = 0i128;
        for (_, c) in self.iter() {
            total = checked_add(total, c)?;
        }
        Ok(total)
    }

    /// Whether every coefficient is constant along W-orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        let group = weyl_group();
        self.iter()
            .all(|(mu, c)| group.iter().all(|w| self.coeff(w.apply(mu)) == c))
    }

    /// Coefficientwise comparison: every coefficient of `self` is at most
    /// the corresponding coefficient of `other`.
    pub fn le_coefficientwise(&self, other: &FormalCharacter) -> bool {
        self.iter().all(|(w, c)| c <= other.coeff(w))
            && other.iter().all(|(w, c)| self.coeff(w) <= c)
    }
}

#[derive(serde::Serialize)]
struct CharTermRecord {
    weight: Weight,
    coeff: i128,
}

/// Serialized as a list of `{"weight": [c1, c2], "coeff": n}` records
/// sorted by weight, descending.
impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.iter_desc()
                .map(|(weight, coeff)| CharTermRecord { weight, coeff }),
        )
    }
}

/// A multiset of irreducible summands: weights λ with positive
/// multiplicities, i.e. a decomposition ⊕ V(λ)^{⊕ m_λ}.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IrrDecomposition {
    parts: BTreeMap<Weight, u64>,
}

impl IrrDecomposition {
    pub fn new() -> Self {
        IrrDecomposition::default()
    }

    /// Add `mult` copies of V(λ). Weights must be dominant.
    pub fn add(&mut self, lambda: Weight, mult: u64) {
        assert!(lambda.is_dominant(), "summands must have dominant highest weight");
        if mult > 0 {
            *self.parts.entry(lambda).or_insert(0) += mult;
        }
    }

    pub fn mult_of(&self, lambda: Weight) -> u64 {
        self.parts.get(&lambda).copied().unwrap_or(0)
    }

    /// Number of distinct irreducible constituents.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Iterate summands by decreasing highest weight; the canonical order.
    pub fn iter_desc(&self) -> impl Iterator<Item = (Weight, u64)> + '_ {
        self.parts.iter().rev().map(|(w, m)| (*w, *m))
    }

    /// Total number of summands counted with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.parts.values().sum()
    }

    /// The character Σ m_λ · ch V(λ).
    pub fn character(&self) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero();
        for (lambda, mult) in self.iter_desc() {
            let ch = irreducible_character(lambda)?.scaled(i128::from(mult))?;
            out = out.add(&ch)?;
        }
        Ok(out)
    }

    /// The dimension Σ m_λ · dim V(λ).
    pub fn total_dimension(&self) -> Result<i128> {
        let mut total = 0i128;
        for (lambda, mult) in self.iter_desc() {
            total = checked_add(total, checked_mul(i128::from(mult), weyl_dimension(lambda)?)?)?;
        }
        Ok(total)
    }
}

#[derive(serde::Serialize)]
struct SummandRecord {
    weight: Weight,
    mult: u64,
}

/// Serialized as a list of `{"weight": [c1, c2], "mult": n}` records
/// sorted by weight, descending.
impl Serialize for IrrDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.iter_desc()
                .map(|(weight, mult)| SummandRecord { weight, mult }),
        )
    }
}

/// Multiplicities of V(λ) on the depth grid {λ - b1 α1 - b2 α2 : 0 ≤ b1 ≤ d1,
/// 0 ≤ b2 ≤ d2}, computed by Freudenthal's recursion in increasing depth.
///
/// The recursion at depth β only consults depths componentwise ≤ β (weights
/// of V(λ) lie in λ minus the nonnegative span of the simple roots), so a
/// rectangular sub-grid is self-contained and the entries are the true
/// multiplicities whatever the box size.
pub(crate) fn freudenthal_box(lambda: Weight, d1: usize, d2: usize) -> Result<Vec<Vec<i128>>> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda));
    }
    let rho = Weight::RHO;
    let top_casimir = pairing(lambda + rho, lambda + rho);
    let mut grid = vec![vec![0i128; d2 + 1]; d1 + 1];
    grid[0][0] = 1;
    let roots: Vec<(i64, i64)> = Root::POSITIVE.iter().map(|r| r.coords()).collect();
    for depth in 1..=(d1 + d2) {
        let lo = depth.saturating_sub(d2);
        for b1 in lo..=depth.min(d1) {
            let b2 = depth - b1;
            let mu = lambda - Weight::from_root_coords(b1 as i64, b2 as i64);
            let denom = i128::from(top_casimir - pairing(mu + rho, mu + rho));
            if denom == 0 {
                // ‖μ+ρ‖ = ‖λ+ρ‖ with μ ≠ λ forces multiplicity zero.
                continue;
            }
            let mut num = 0i128;
            for &(am, an) in &roots {
                let mut j = 1i64;
                loop {
                    let p1 = b1 as i64 - j * am;
                    let p2 = b2 as i64 - j * an;
                    if p1 < 0 || p2 < 0 {
                        break;
                    }
                    let m = grid[p1 as usize][p2 as usize];
                    if m != 0 {
                        let shifted = mu + Weight::from_root_coords(j * am, j * an);
                        let alpha = Weight::from_root_coords(am, an);
                        num = checked_add(num, checked_mul(m, i128::from(pairing(shifted, alpha)))?)?;
                    }
                    j += 1;
                }
            }
            let num = checked_mul(2, num)?;
            debug_assert_eq!(num % denom, 0);
            grid[b1][b2] = num / denom;
        }
    }
    Ok(grid)
}

/// The character of the irreducible module V(λ), via Freudenthal.
pub fn irreducible_character(lambda: Weight) -> Result<FormalCharacter> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda));
    }
    let (m, n) = lambda.root_coords();
    // Every weight of V(λ) lies within depth 2λ of the top (the lowest
    // weight is -λ), so this grid covers the full support.
    let grid = freudenthal_box(lambda, 2 * m as usize, 2 * n as usize)?;
    let mut ch = FormalCharacter::zero();
    for (b1, row) in grid.iter().enumerate() {
        for (b2, &mult) in row.iter().enumerate() {
            if mult != 0 {
                let mu = lambda - Weight::from_root_coords(b1 as i64, b2 as i64);
                ch.add_term(mu, mult)?;
            }
        }
    }
    Ok(ch)
}

/// The multiplicity of the weight μ in V(λ), by Freudenthal's recursion
/// restricted to the sub-grid below the depth of μ.
pub fn weight_multiplicity_freudenthal(lambda: Weight, mu: Weight) -> Result<i128> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda));
    }
    let (b1, b2) = (lambda - mu).root_coords();
    if b1 < 0 || b2 < 0 {
        return Ok(0);
    }
    let grid = freudenthal_box(lambda, b1 as usize, b2 as usize)?;
    Ok(grid[b1 as usize][b2 as usize])
}

/// Values of the Kostant partition function on the rectangle
/// [0, max_m] × [0, max_n] of root coordinates: the number of ways to write
/// m α1 + n α2 as a multiset of positive roots.
pub struct KostantTable {
    max_m: usize,
    max_n: usize,
    counts: Vec<Vec<i128>>,
}

impl KostantTable {
    pub fn new(max_m: usize, max_n: usize) -> Result<KostantTable> {
        // Knapsack over the six positive roots; processing roots in the
        // outer loop counts multisets rather than sequences.
        let mut counts = vec![vec![0i128; max_n + 1]; max_m + 1];
        counts[0][0] = 1;
        for (am, an) in Root::POSITIVE.iter().map(|r| r.coords()) {
            for m in am as usize..=max_m {
                for n in an as usize..=max_n {
                    let prev = counts[m - am as usize][n - an as usize];
                    if prev != 0 {
                        counts[m][n] = checked_add(counts[m][n], prev)?;
                    }
                }
            }
        }
        Ok(KostantTable { max_m, max_n, counts })
    }

    /// P(m α1 + n α2); zero outside the positive quadrant.
    ///
    /// Panics if the point lies beyond the table bounds.
    pub fn count(&self, m: i64, n: i64) -> i128 {
        if m < 0 || n < 0 {
            return 0;
        }
        assert!(
            m as usize <= self.max_m && n as usize <= self.max_n,
            "Kostant table too small for ({m}, {n})"
        );
        self.counts[m as usize][n as usize]
    }
}

/// Weight multiplicities of a fixed V(λ) by the alternating Weyl sum
/// m_λ(μ) = Σ_w det(w) · P(w(λ+ρ) - (μ+ρ)) over a Kostant partition table.
///
/// Independent of the Freudenthal engine; used to cross-check it.
pub struct AlternatingOracle {
    lambda: Weight,
    /// (det w, w(λ+ρ)) over the whole Weyl group.
    signed_orbit: Vec<(i64, Weight)>,
    table: KostantTable,
}

impl AlternatingOracle {
    pub fn new(lambda: Weight) -> Result<AlternatingOracle> {
        if !lambda.is_dominant() {
            return Err(Error::NonDominantWeight(lambda));
        }
        let shifted = lambda + Weight::RHO;
        let signed_orbit: Vec<(i64, Weight)> =
            weyl_group().iter().map(|w| (w.det(), w.apply(shifted))).collect();
        let table = KostantTable::new(0, 0)?;
        Ok(AlternatingOracle { lambda, signed_orbit, table })
    }

    pub fn multiplicity(&mut self, mu: Weight) -> Result<i128> {
        let shifted_mu = mu + Weight::RHO;
        let args: Vec<(i64, i64)> = self
            .signed_orbit
            .iter()
            .map(|(_, v)| (*v - shifted_mu).root_coords())
            .collect();
        let need_m = args.iter().map(|a| a.0).max().unwrap_or(0).max(0) as usize;
        let need_n = args.iter().map(|a| a.1).max().unwrap_or(0).max(0) as usize;
        if need_m > self.table.max_m || need_n > self.table.max_n {
            self.table = KostantTable::new(need_m.max(self.table.max_m), need_n.max(self.table.max_n))?;
        }
        let mut total = 0i128;
        for ((sign, _), (m, n)) in self.signed_orbit.iter().zip(args) {
            total = checked_add(total, checked_mul(i128::from(*sign), self.table.count(m, n))?)?;
        }
        Ok(total)
    }

    pub fn highest_weight(&self) -> Weight {
        self.lambda
    }
}

/// One-shot form of [`AlternatingOracle`].
pub fn weight_multiplicity_alternating(lambda: Weight, mu: Weight) -> Result<i128> {
    AlternatingOracle::new(lambda)?.multiplicity(mu)
}

/// Count of dominant weights with height at most `h`; an upper bound for
/// the number of peeling steps in [`decompose_character`].
fn dominant_weights_below_height(h: i64) -> u64 {
    let mut count = 0;
    let mut c1 = 0;
    while 5 * c1 <= h {
        count += (h - 5 * c1) / 3 + 1;
        c1 += 1;
    }
    count as u64
}

/// Decompose a module character into irreducible characters by peeling the
/// dominant support weight of maximal height (ties broken lexicographically
/// in root coordinates) and subtracting that many copies of ch V(μ).
///
/// Errors with [`Error::NotModuleCharacter`] if the input is not
/// W-invariant, if peeling meets a negative multiplicity, or if it fails to
/// terminate within the a-priori bound on the number of distinct summands.
pub fn decompose_character(ch: &FormalCharacter) -> Result<IrrDecomposition> {
    if !ch.is_weyl_invariant() {
        return Err(Error::NotModuleCharacter(
            "coefficients are not Weyl-invariant".into(),
        ));
    }
    let mut rest = ch.clone();
    let mut out = IrrDecomposition::new();
    let budget = match rest.iter().map(|(w, _)| w.height()).max() {
        Some(h) => dominant_weights_below_height(h),
        None => return Ok(out),
    };
    for _ in 0..=budget {
        let top = rest
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .max_by_key(|(w, _)| (w.height(), w.root_coords()));
        let (mu, c) = match top {
            Some(t) => t,
            None if rest.is_zero() => return Ok(out),
            None => {
                return Err(Error::NotModuleCharacter(
                    "nonzero remainder without a dominant weight".into(),
                ))
            }
        };
        if c < 0 {
            return Err(Error::NotModuleCharacter(format!(
                "negative multiplicity {c} at dominant weight ({}, {})",
                mu.c1, mu.c2
            )));
        }
        let mult = u64::try_from(c).map_err(|_| Error::Overflow)?;
        let peel = irreducible_character(mu)?.scaled(-c)?;
        rest = rest.add(&peel)?;
        out.add(mu, mult);
        if rest.is_zero() {
            return Ok(out);
        }
    }
    Err(Error::NotModuleCharacter(
        "peeling did not terminate within the summand budget".into(),
    ))
}

/// dim V(λ) by the Weyl dimension formula, as an exact checked product.
pub fn weyl_dimension(lambda: Weight) -> Result<i128> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda));
    }
    let shifted = lambda + Weight::RHO;
    let mut num = 1i128;
    let mut den = 1i128;
    for alpha in Root::POSITIVE {
        num = checked_mul(num, i128::from(pairing(shifted, alpha)))?;
        den = checked_mul(den, i128::from(pairing(Weight::RHO, alpha)))?;
    }
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}
