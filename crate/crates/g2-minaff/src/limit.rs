//! Box-truncated normalized characters and their stable limit.
//!
//! Write x = e^{-α1}, y = e^{-α2}. The normalized character
//! e^{-λ} ch L(λ) is a power series in x and y; along the ray
//! λ_n = n Σ_{j∈J} ω_j it stabilizes coefficientwise to
//!
//! ```text
//! ∏_{α > 0} (1 - e^{-α})^{-e_α},      e_α = max_{j ∈ J} ⟨ω_j^, α⟩,
//! ```
//!
//! where ⟨ω1^, m α1 + n α2⟩ = m and ⟨ω2^, ·⟩ = n. Everything here is
//! truncated to the box {x^m y^n : 0 ≤ m, n ≤ D}, which turns the limit
//! statement into finitely many exact integer identities.

use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::character::freudenthal_box;
use crate::g2::{Node, Root};
use crate::minaff::{decompose_graded_limit, HighestWeight};
use crate::{Error, Result};

/// A polynomial in x = e^{-α1}, y = e^{-α2} truncated to the box
/// 0 ≤ m, n ≤ D; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    box_degree: u32,
    coeffs: BTreeMap<(u32, u32), i128>,
}

impl TruncatedSeries {
    /// The constant series 1 on the box of degree `d`.
    pub fn one(d: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), 1);
        TruncatedSeries { box_degree: d, coeffs }
    }

    pub fn zero(d: u32) -> Self {
        TruncatedSeries { box_degree: d, coeffs: BTreeMap::new() }
    }

    pub const fn box_degree(&self) -> u32 {
        self.box_degree
    }

    pub fn coeff(&self, m: u32, n: u32) -> i128 {
        self.coeffs.get(&(m, n)).copied().unwrap_or(0)
    }

    /// Terms in increasing (m, n) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i128)> + '_ {
        self.coeffs.iter().map(|(&(m, n), &c)| (m, n, c))
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        assert!(m <= self.box_degree && n <= self.box_degree, "term outside the box");
        let entry = self.coeffs.entry((m, n)).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::Overflow)?;
        if *entry == 0 {
            self.coeffs.remove(&(m, n));
        }
        Ok(())
    }

    /// Product truncated to the common box.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        assert_eq!(self.box_degree, other.box_degree, "mismatched boxes");
        let d = self.box_degree;
        let mut out = TruncatedSeries::zero(d);
        for (m1, n1, c1) in self.terms() {
            for (m2, n2, c2) in other.terms() {
                let (m, n) = (m1 + m2, n1 + n2);
                if m <= d && n <= d {
                    out.add_term(m, n, c1.checked_mul(c2).ok_or(Error::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Coefficientwise comparison over the whole box.
    pub fn le_coefficientwise(&self, other: &TruncatedSeries) -> bool {
        self.terms().all(|(m, n, c)| c <= other.coeff(m, n))
            && other.terms().all(|(m, n, c)| self.coeff(m, n) <= c)
    }
}

#[derive(serde::Serialize)]
struct SeriesTermRecord {
    m: u32,
    n: u32,
    c: i128,
}

/// Serialized as `{"D": d, "coeffs": [{"m": m, "n": n, "c": c}, ...]}` with
/// zero coefficients omitted and terms sorted by (m, n).
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TruncatedSeries", 2)?;
        s.serialize_field("D", &self.box_degree)?;
        let terms: Vec<SeriesTermRecord> = self
            .terms()
            .map(|(m, n, c)| SeriesTermRecord { m, n, c })
            .collect();
        s.serialize_field("coeffs", &terms)?;
        s.end()
    }
}

/// Deduplicate a node list into the subset J ⊆ {1, 2}; errors when empty.
fn node_set(j: &[Node]) -> Result<(bool, bool)> {
    if j.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    Ok((j.contains(&Node::One), j.contains(&Node::Two)))
}

/// The exponents e_α = max_{j ∈ J} ⟨ω_j^, α⟩ over the six positive roots,
/// in the order of [`Root::POSITIVE`].
pub fn exponent_table(j: &[Node]) -> Result<Vec<(Root, u32)>> {
    let (has1, has2) = node_set(j)?;
    Ok(Root::POSITIVE
        .iter()
        .map(|&alpha| {
            let (m, n) = alpha.coords();
            let e1 = if has1 { m } else { 0 };
            let e2 = if has2 { n } else { 0 };
            (alpha, e1.max(e2) as u32)
        })
        .collect())
}

fn binomial(n: u64, k: u64) -> i128 {
    let k = k.min(n - k.min(n));
    let mut out = 1i128;
    for i in 0..k {
        out = out * i128::from(n - i) / i128::from(i + 1);
    }
    out
}

/// ∏_{α>0} (1 - e^{-α})^{-e_α} truncated to the box of degree `d`.
pub fn product_series(j: &[Node], d: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(d);
    for (alpha, e) in exponent_table(j)? {
        if e == 0 {
            continue;
        }
        let (am, an) = alpha.coords();
        let mut factor = TruncatedSeries::zero(d);
        // (1 - z)^{-e} = Σ_t C(t + e - 1, e - 1) z^t with z = e^{-α}.
        let mut t = 0i64;
        while t * am <= i64::from(d) && t * an <= i64::from(d) {
            factor.add_term(
                (t * am) as u32,
                (t * an) as u32,
                binomial((t as u64) + u64::from(e) - 1, u64::from(e) - 1),
            )?;
            t += 1;
        }
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// The box truncation of e^{-λ} ch L(λ): coefficient (m, n) is the
/// multiplicity of the weight λ - m α1 - n α2 in the graded limit.
///
/// Computed summand by summand with a depth-grid Freudenthal table per
/// distinct constituent, so only the box (never a full character) is built.
pub fn normalized_truncated_char(lambda: HighestWeight, d: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(d);
    for (mu, mult) in decompose_graded_limit(lambda).iter_desc() {
        let (shift_m, shift_n) = (lambda.weight() - mu).root_coords();
        debug_assert!(shift_m >= 0 && shift_n >= 0);
        if shift_m > i64::from(d) || shift_n > i64::from(d) {
            continue;
        }
        let (d1, d2) = (
            (i64::from(d) - shift_m) as usize,
            (i64::from(d) - shift_n) as usize,
        );
        let grid = freudenthal_box(mu, d1, d2)?;
        for (b1, row) in grid.iter().enumerate() {
            for (b2, &count) in row.iter().enumerate() {
                if count != 0 {
                    out.add_term(
                        shift_m as u32 + b1 as u32,
                        shift_n as u32 + b2 as u32,
                        count.checked_mul(i128::from(mult)).ok_or(Error::Overflow)?,
                    )?;
                }
            }
        }
    }
    Ok(out)
}

/// The ray weight λ_n = n Σ_{j ∈ J} ω_j.
pub fn ray_weight(j: &[Node], n: u32) -> Result<HighestWeight> {
    let (has1, has2) = node_set(j)?;
    Ok(HighestWeight::new(
        if has1 { n } else { 0 },
        if has2 { n } else { 0 },
    ))
}

/// The first n ≤ n_max such that the normalized truncated characters at
/// λ_n and λ_{n+1} both equal the product series on the box of degree `d`;
/// `None` when no such n exists (not an error).
pub fn convergence_check(j: &[Node], d: u32, n_max: u32) -> Result<Option<u32>> {
    let target = product_series(j, d)?;
    let mut next = normalized_truncated_char(ray_weight(j, 1)?, d)?;
    for n in 1..=n_max {
        let here = next;
        next = normalized_truncated_char(ray_weight(j, n + 1)?, d)?;
        if here == target && next == target {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minaff::graded_limit_character;

    const J1: &[Node] = &[Node::One];
    const J2: &[Node] = &[Node::Two];
    const J12: &[Node] = &[Node::One, Node::Two];

    #[test]
    fn exponent_tables() {
        let exps = |j: &[Node]| -> Vec<u32> {
            exponent_table(j).unwrap().into_iter().map(|(_, e)| e).collect()
        };
        // Positive-root order: α1, α2, α1+α2, α1+2α2, α1+3α2, 2α1+3α2.
        assert_eq!(exps(J1), vec![1, 0, 1, 1, 1, 2]);
        assert_eq!(exps(J2), vec![0, 1, 1, 2, 3, 3]);
        assert_eq!(exps(J12), vec![1, 1, 1, 2, 3, 3]);
        assert_eq!(exponent_table(&[]), Err(Error::EmptyNodeSet));
        // Duplicates are harmless.
        assert_eq!(exps(&[Node::Two, Node::Two]), exps(J2));
    }

    #[test]
    fn union_exponent_is_pointwise_max() {
        let one = exponent_table(J1).unwrap();
        let two = exponent_table(J2).unwrap();
        let both = exponent_table(J12).unwrap();
        for i in 0..6 {
            assert_eq!(both[i].1, one[i].1.max(two[i].1));
        }
    }

    #[test]
    fn product_series_small_coefficients() {
        for j in [J1, J2, J12] {
            assert_eq!(product_series(j, 3).unwrap().coeff(0, 0), 1);
        }
        let s = product_series(J1, 2).unwrap();
        assert_eq!(s.coeff(1, 0), 1);
        assert_eq!(s.coeff(0, 1), 0);
        let s = product_series(J12, 2).unwrap();
        assert_eq!(s.coeff(1, 0), 1);
        assert_eq!(s.coeff(0, 1), 1);
        // x y comes from the α1 and α2 factors and from the α1+α2 factor.
        assert_eq!(s.coeff(1, 1), 2);
    }

    #[test]
    fn normalized_char_of_small_limits() {
        let s = normalized_truncated_char(HighestWeight::new(0, 0), 4).unwrap();
        assert_eq!(s, TruncatedSeries::one(4));

        let s = normalized_truncated_char(HighestWeight::new(1, 0), 1).unwrap();
        assert_eq!(s.coeff(0, 0), 1);
        assert_eq!(s.coeff(1, 0), 1);
        assert_eq!(s.coeff(0, 1), 0);
        assert_eq!(s.coeff(1, 1), 1);
    }

    /// Reference route: build the whole character of L(λ), shift by λ and
    /// truncate. Must agree with the box-limited fast path exactly.
    fn truncate_full_character(lambda: HighestWeight, d: u32) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(d);
        for (w, c) in graded_limit_character(lambda).unwrap().iter() {
            let (m, n) = (lambda.weight() - w).root_coords();
            assert!(m >= 0 && n >= 0);
            if m <= i64::from(d) && n <= i64::from(d) {
                out.add_term(m as u32, n as u32, c).unwrap();
            }
        }
        out
    }

    #[test]
    fn fast_path_matches_full_character_truncation() {
        for (k, l) in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (3, 2)] {
            let lam = HighestWeight::new(k, l);
            for d in [0u32, 1, 2, 3] {
                assert_eq!(
                    normalized_truncated_char(lam, d).unwrap(),
                    truncate_full_character(lam, d),
                    "λ = {lam}, D = {d}"
                );
            }
        }
    }

    #[test]
    fn coefficients_grow_monotonically_toward_the_product() {
        for j in [J1, J2, J12] {
            for d in [1u32, 2] {
                let target = product_series(j, d).unwrap();
                let mut prev = TruncatedSeries::zero(d);
                for n in 1..=4u32 {
                    let here = normalized_truncated_char(ray_weight(j, n).unwrap(), d).unwrap();
                    assert!(prev.le_coefficientwise(&here), "J = {j:?}, D = {d}, n = {n}");
                    assert!(here.le_coefficientwise(&target), "J = {j:?}, D = {d}, n = {n}");
                    prev = here;
                }
            }
        }
    }

    #[test]
    fn convergence_on_tiny_boxes() {
        assert_eq!(convergence_check(J12, 1, 12).unwrap(), Some(1));
        assert_eq!(convergence_check(J2, 2, 8).unwrap(), Some(2));
        assert_eq!(convergence_check(&[], 1, 4), Err(Error::EmptyNodeSet));
    }

    #[test]
    fn json_form() {
        let s = product_series(J12, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"D":1,"coeffs":[{"m":0,"n":0,"c":1},{"m":0,"n":1,"c":1},{"m":1,"n":0,"c":1},{"m":1,"n":1,"c":2}]}"#
        );
    }
}
