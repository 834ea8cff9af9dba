//! Root data for the simple Lie algebra of type G2.
//!
//! Conventions: α1 is the long simple root and α2 the short one, with
//! (α1, α1) = 6, (α2, α2) = 2 and (α1, α2) = -3. The fundamental weights
//! are ω1 = 2α1 + 3α2 and ω2 = α1 + 2α2, so the weight lattice equals the
//! root lattice and the change of basis between fundamental coordinates
//! (c1, c2) and root coordinates (m, n) is unimodular:
//!
//! ```text
//! m = 2 c1 + c2        c1 =  2 m - n
//! n = 3 c1 + 2 c2      c2 = -3 m + 2 n
//! ```
//!
//! Everything in this module is small exact integer arithmetic: i64 with
//! overflow checks (enabled crate-wide), no floating point anywhere.

use std::collections::VecDeque;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::{Error, Result};

/// Root coordinates (m, n) of the six positive roots, in the conventional
/// order α1, α2, α1+α2, α1+2α2, α1+3α2, 2α1+3α2.
const POSITIVE_ROOT_COORDS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)];

/// A weight of G2 in fundamental-weight coordinates: λ = c1 ω1 + c2 ω2.
///
/// The derived order is lexicographic in (c1, c2); containers keyed by
/// `Weight` therefore iterate deterministically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub c1: i64,
    pub c2: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { c1: 0, c2: 0 };
    /// ω1, the fundamental weight at the long node.
    pub const OMEGA1: Weight = Weight { c1: 1, c2: 0 };
    /// ω2, the fundamental weight at the short node.
    pub const OMEGA2: Weight = Weight { c1: 0, c2: 1 };
    /// ρ = ω1 + ω2, the half-sum of the positive roots.
    pub const RHO: Weight = Weight { c1: 1, c2: 1 };

    pub const fn new(c1: i64, c2: i64) -> Self {
        Weight { c1, c2 }
    }

    /// Root coordinates (m, n) with λ = m α1 + n α2.
    pub const fn root_coords(self) -> (i64, i64) {
        (2 * self.c1 + self.c2, 3 * self.c1 + 2 * self.c2)
    }

    /// Inverse of [`Weight::root_coords`].
    pub const fn from_root_coords(m: i64, n: i64) -> Self {
        Weight {
            c1: 2 * m - n,
            c2: -3 * m + 2 * n,
        }
    }

    /// Both fundamental coordinates nonnegative.
    pub const fn is_dominant(self) -> bool {
        self.c1 >= 0 && self.c2 >= 0
    }

    pub const fn is_zero(self) -> bool {
        self.c1 == 0 && self.c2 == 0
    }

    /// Height m + n in root coordinates; the grading degree used when
    /// peeling characters from the top.
    pub const fn height(self) -> i64 {
        5 * self.c1 + 3 * self.c2
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.c1, -self.c2)
    }
}

impl std::ops::Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight::new(self * rhs.c1, self * rhs.c2)
    }
}

/// Serialized as the JSON pair `[c1, c2]`.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.c1)?;
        seq.serialize_element(&self.c2)?;
        seq.end()
    }
}

impl fmt::Display for Weight {
    /// Human form in fundamental weights, e.g. `ω1 + 2ω2`, `-ω1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in [(self.c1, "ω1"), (self.c2, "ω2")] {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

/// One of the 12 roots of G2, stored in root coordinates (m, n).
///
/// Construction is validated, so a value of this type is always a genuine
/// root; the coordinate fields are private to keep it that way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    m: i64,
    n: i64,
}

impl Root {
    pub const ALPHA1: Root = Root { m: 1, n: 0 };
    pub const ALPHA2: Root = Root { m: 0, n: 1 };

    /// The six positive roots, in the order α1, α2, α1+α2, α1+2α2, α1+3α2,
    /// 2α1+3α2.
    pub const POSITIVE: [Root; 6] = {
        let mut roots = [Root { m: 0, n: 0 }; 6];
        let mut i = 0;
        while i < 6 {
            roots[i] = Root {
                m: POSITIVE_ROOT_COORDS[i].0,
                n: POSITIVE_ROOT_COORDS[i].1,
            };
            i += 1;
        }
        roots
    };

    pub fn new(m: i64, n: i64) -> Result<Root> {
        let positive = POSITIVE_ROOT_COORDS.contains(&(m, n));
        let negative = POSITIVE_ROOT_COORDS.contains(&(-m, -n));
        if positive || negative {
            Ok(Root { m, n })
        } else {
            Err(Error::InvalidRoot { m, n })
        }
    }

    /// All 12 roots: the positive ones followed by their negatives.
    pub fn all() -> [Root; 12] {
        let mut out = [Root::ALPHA1; 12];
        for (i, r) in Root::POSITIVE.iter().enumerate() {
            out[i] = *r;
            out[i + 6] = Root {
                m: -r.m,
                n: -r.n,
            };
        }
        out
    }

    pub const fn coords(self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub const fn is_positive(self) -> bool {
        self.m + self.n > 0
    }

    /// (α, α): 6 for the long roots, 2 for the short ones.
    pub fn norm(self) -> i64 {
        pairing(self, self)
    }

    pub fn is_long(self) -> bool {
        self.norm() == 6
    }

    pub fn negated(self) -> Root {
        Root {
            m: -self.m,
            n: -self.n,
        }
    }
}

impl From<Root> for Weight {
    fn from(r: Root) -> Weight {
        Weight::from_root_coords(r.m, r.n)
    }
}

/// Serialized as the JSON pair `[m, n]` of root coordinates.
impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.m)?;
        seq.serialize_element(&self.n)?;
        seq.end()
    }
}

impl fmt::Display for Root {
    /// Human form in simple roots, e.g. `α1+2α2`, `-(2α1+3α2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = if self.is_positive() {
            (self.m, self.n)
        } else {
            write!(f, "-(")?;
            (-self.m, -self.n)
        };
        let mut first = true;
        for (c, name) in [(m, "α1"), (n, "α2")] {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{name}")?;
        }
        if !self.is_positive() {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A node of the G2 Dynkin diagram: 1 carries the long simple root α1,
/// 2 the short simple root α2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    One,
    Two,
}

/// Serialized as the bare index 1 or 2.
impl Serialize for Node {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.index())
    }
}

impl Node {
    pub const fn index(self) -> u8 {
        match self {
            Node::One => 1,
            Node::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Node> {
        match i {
            1 => Some(Node::One),
            2 => Some(Node::Two),
            _ => None,
        }
    }

    pub const fn simple_root(self) -> Root {
        match self {
            Node::One => Root::ALPHA1,
            Node::Two => Root::ALPHA2,
        }
    }

    pub const fn fundamental_weight(self) -> Weight {
        match self {
            Node::One => Weight::OMEGA1,
            Node::Two => Weight::OMEGA2,
        }
    }
}

/// The W-invariant symmetric form, normalized so that (α2, α2) = 2.
///
/// Accepts weights or roots on either side.
pub fn pairing(x: impl Into<Weight>, y: impl Into<Weight>) -> i64 {
    let (a, b) = x.into().root_coords();
    let (c, d) = y.into().root_coords();
    // Gram matrix [[6, -3], [-3, 2]] in the (α1, α2) basis.
    6 * a * c - 3 * (a * d + b * c) + 2 * b * d
}

/// ⟨α^, λ⟩ = 2 (α, λ) / (α, α), an integer for every root α and weight λ.
pub fn coroot_pairing(alpha: Root, lambda: impl Into<Weight>) -> i64 {
    let value = 2 * pairing(alpha, lambda);
    let norm = alpha.norm();
    debug_assert_eq!(value % norm, 0);
    value / norm
}

/// An element of the Weyl group (dihedral of order 12), stored as its
/// matrix on root coordinates together with one reduced word.
///
/// Equality and hashing use the matrix only; the word is bookkeeping.
#[derive(Debug, Clone)]
pub struct WeylElement {
    /// Row-major matrix acting on column vectors of root coordinates.
    mat: [[i64; 2]; 2],
    /// Reduced word in the generators, applied right to left.
    word: Vec<u8>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            mat: [[1, 0], [0, 1]],
            word: Vec::new(),
        }
    }

    /// The simple reflection at the given node.
    pub fn simple(node: Node) -> Self {
        // Columns are the images of α1 and α2.
        let mat = match node {
            Node::One => [[-1, 1], [0, 1]],
            Node::Two => [[1, 0], [3, -1]],
        };
        WeylElement {
            mat,
            word: vec![node.index()],
        }
    }

    /// Function composition: `self ∘ other` applies `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let a = &self.mat;
        let b = &other.mat;
        let mut mat = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                mat[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { mat, word }
    }

    pub fn apply(&self, lambda: Weight) -> Weight {
        let (m, n) = lambda.root_coords();
        Weight::from_root_coords(
            self.mat[0][0] * m + self.mat[0][1] * n,
            self.mat[1][0] * m + self.mat[1][1] * n,
        )
    }

    /// Roots map to roots under W, so this cannot fail.
    pub fn apply_root(&self, alpha: Root) -> Root {
        let (m, n) = alpha.coords();
        Root::new(
            self.mat[0][0] * m + self.mat[0][1] * n,
            self.mat[1][0] * m + self.mat[1][1] * n,
        )
        .expect("the Weyl group permutes the roots")
    }

    /// Determinant of the matrix; equals the sign character (-1)^length.
    pub fn det(&self) -> i64 {
        self.mat[0][0] * self.mat[1][1] - self.mat[0][1] * self.mat[1][0]
    }

    /// Length of the stored reduced word.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }
}

/// The simple reflection s_i acting on a weight:
/// s_i(λ) = λ - ⟨α_i^, λ⟩ α_i.
pub fn simple_reflection(node: Node, lambda: Weight) -> Weight {
    WeylElement::simple(node).apply(lambda)
}

/// All 12 elements of the Weyl group, found by breadth-first closure over
/// the generators. Words are reduced because BFS reaches every element by
/// a shortest path; the order is deterministic (increasing length).
pub fn weyl_group() -> Vec<WeylElement> {
    let gens = [WeylElement::simple(Node::One), WeylElement::simple(Node::Two)];
    let mut seen = vec![WeylElement::identity()];
    let mut queue: VecDeque<WeylElement> = seen.clone().into();
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = g.compose(&w);
            if !seen.contains(&next) {
                seen.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    assert_eq!(seen.len(), 12);
    seen
}

/// The longest element w0 = -1 of W.
pub fn longest_element() -> WeylElement {
    let w0 = weyl_group()
        .into_iter()
        .max_by_key(WeylElement::length)
        .expect("W is nonempty");
    debug_assert_eq!(w0.mat, [[-1, 0], [0, -1]]);
    w0
}

/// The unique dominant weight in the W-orbit of `lambda`, together with an
/// element w such that w(λ) is that dominant representative.
pub fn dominant_representative(lambda: Weight) -> (Weight, WeylElement) {
    let mut current = lambda;
    let mut w = WeylElement::identity();
    // Reflecting at a negative coordinate strictly increases the height,
    // which is bounded on the (finite) orbit, so this terminates.
    while !current.is_dominant() {
        let node = if current.c1 < 0 { Node::One } else { Node::Two };
        current = simple_reflection(node, current);
        w = WeylElement::simple(node).compose(&w);
    }
    (current, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn gram_matrix_values() {
        assert_eq!(pairing(Root::ALPHA1, Root::ALPHA1), 6);
        assert_eq!(pairing(Root::ALPHA2, Root::ALPHA2), 2);
        assert_eq!(pairing(Root::ALPHA1, Root::ALPHA2), -3);
        let theta_short = Root::new(1, 2).unwrap();
        assert_eq!(pairing(theta_short, theta_short), 2);
    }

    #[test]
    fn coordinate_roundtrip_small_box() {
        for c1 in -12..=12 {
            for c2 in -12..=12 {
                let w = Weight::new(c1, c2);
                let (m, n) = w.root_coords();
                assert_eq!(Weight::from_root_coords(m, n), w);
            }
        }
    }

    #[test]
    fn fundamental_weights_in_root_coords() {
        assert_eq!(Weight::OMEGA1.root_coords(), (2, 3));
        assert_eq!(Weight::OMEGA2.root_coords(), (1, 2));
        assert_eq!(Weight::RHO.root_coords(), (3, 5));
    }

    #[test]
    fn root_validation() {
        assert!(Root::new(1, 2).is_ok());
        assert!(Root::new(-1, -3).is_ok());
        assert_eq!(
            Root::new(2, 1),
            Err(Error::InvalidRoot { m: 2, n: 1 })
        );
        assert!(Root::new(0, 0).is_err());
        assert!(Root::new(2, 2).is_err());
    }

    #[test]
    fn root_lengths() {
        let long: Vec<Root> = Root::POSITIVE.iter().copied().filter(|r| r.is_long()).collect();
        let short: Vec<Root> = Root::POSITIVE
            .iter()
            .copied()
            .filter(|r| !r.is_long())
            .collect();
        assert_eq!(long.len(), 3);
        assert_eq!(short.len(), 3);
        for r in long {
            assert_eq!(r.norm(), 6);
        }
        for r in short {
            assert_eq!(r.norm(), 2);
        }
    }

    #[test]
    fn coroot_pairings_against_fundamental_weights() {
        // ⟨α_i^, ω_j⟩ = δ_ij.
        for (i, alpha) in [Root::ALPHA1, Root::ALPHA2].into_iter().enumerate() {
            for (j, omega) in [Weight::OMEGA1, Weight::OMEGA2].into_iter().enumerate() {
                assert_eq!(coroot_pairing(alpha, omega), i64::from(i == j));
            }
        }
        let alpha = Root::new(1, 2).unwrap();
        assert_eq!(coroot_pairing(alpha, Weight::OMEGA1), 3);
        assert_eq!(coroot_pairing(alpha, Weight::OMEGA2), 2);
        // ⟨α^, ρ⟩ = 1 exactly for the simple roots.
        for r in Root::POSITIVE {
            let expected = i64::from(r == Root::ALPHA1 || r == Root::ALPHA2);
            assert_eq!((coroot_pairing(r, Weight::RHO) == 1) as i64, expected);
        }
    }

    #[test]
    fn simple_reflection_examples() {
        // s1(ω1) = ω1 - α1.
        let expected = Weight::OMEGA1 - Weight::from(Root::ALPHA1);
        assert_eq!(simple_reflection(Node::One, Weight::OMEGA1), expected);
        assert_eq!(expected, Weight::new(-1, 3));
        // s2 fixes ω1.
        assert_eq!(simple_reflection(Node::Two, Weight::OMEGA1), Weight::OMEGA1);
        // Reflections are involutions.
        for c1 in -5..=5 {
            for c2 in -5..=5 {
                let w = Weight::new(c1, c2);
                for node in [Node::One, Node::Two] {
                    assert_eq!(simple_reflection(node, simple_reflection(node, w)), w);
                }
            }
        }
    }

    #[test]
    fn orbit_of_omega1_has_size_six() {
        let orbit: BTreeSet<Weight> = weyl_group().iter().map(|w| w.apply(Weight::OMEGA1)).collect();
        assert_eq!(orbit.len(), 6);
        // The orbit of ω1 = highest long root is exactly the set of long roots.
        for w in &orbit {
            let (m, n) = w.root_coords();
            assert!(Root::new(m, n).unwrap().is_long());
        }
    }

    #[test]
    fn weyl_group_structure() {
        let group = weyl_group();
        assert_eq!(group.len(), 12);
        // Sign character agrees with the determinant.
        for w in &group {
            assert_eq!(w.det(), if w.length() % 2 == 0 { 1 } else { -1 });
        }
        // The group permutes the 12 roots.
        let all: BTreeSet<Root> = Root::all().into_iter().collect();
        for w in &group {
            let image: BTreeSet<Root> = all.iter().map(|r| w.apply_root(*r)).collect();
            assert_eq!(image, all);
        }
        // The pairing is W-invariant.
        for w in &group {
            for c1 in -3..=3i64 {
                for c2 in -3..=3i64 {
                    let x = Weight::new(c1, c2);
                    let y = Weight::new(c2 - 1, c1 + 2);
                    assert_eq!(pairing(w.apply(x), w.apply(y)), pairing(x, y));
                }
            }
        }
    }

    #[test]
    fn longest_element_negates_positive_roots() {
        let w0 = longest_element();
        assert_eq!(w0.length(), 6);
        for r in Root::POSITIVE {
            assert!(!w0.apply_root(r).is_positive());
        }
    }

    #[test]
    fn dominant_representative_examples() {
        let (rep, w) = dominant_representative(Weight::OMEGA1);
        assert_eq!(rep, Weight::OMEGA1);
        assert_eq!(w.length(), 0);

        let moved = simple_reflection(Node::One, Weight::OMEGA1);
        let (rep, w) = dominant_representative(moved);
        assert_eq!(rep, Weight::OMEGA1);
        assert_eq!(w.apply(moved), Weight::OMEGA1);

        let (rep, w) = dominant_representative(-Weight::RHO);
        assert_eq!(rep, Weight::RHO);
        assert_eq!(w, longest_element());
    }

    #[test]
    fn dominant_representative_is_orbit_maximum() {
        for c1 in -6..=6 {
            for c2 in -6..=6 {
                let lambda = Weight::new(c1, c2);
                let (rep, w) = dominant_representative(lambda);
                assert!(rep.is_dominant());
                assert_eq!(w.apply(lambda), rep);
                assert!(weyl_group().iter().any(|v| v.apply(lambda) == rep));
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(Weight::new(1, 2).to_string(), "ω1 + 2ω2");
        assert_eq!(Weight::new(-1, 0).to_string(), "-ω1");
        assert_eq!(Weight::new(0, 0).to_string(), "0");
        assert_eq!(Weight::new(2, -1).to_string(), "2ω1 - ω2");
        assert_eq!(Root::new(1, 2).unwrap().to_string(), "α1+2α2");
        assert_eq!(Root::new(-2, -3).unwrap().to_string(), "-(2α1+3α2)");
        assert_eq!(Root::ALPHA1.to_string(), "α1");
    }
}
