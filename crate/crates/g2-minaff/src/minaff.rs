//! Graded limits of minimal affinizations in type G2.
//!
//! For a dominant weight λ = k ω1 + l ω2, the graded limit L(λ) of a
//! minimal affinization of V(λ) decomposes as a G2-module into one
//! irreducible summand per lattice point of an explicit polytope:
//!
//! ```text
//! S(λ) = { a ∈ Z₊⁵ :  a1 ≤ k,
//!                     a1 - a3 + a5 ≤ k,
//!                     2 a2 + 3 a3 + 3 a4 ≤ l,
//!                     2 a2 + 3 a4 + 3 a5 ≤ l },
//! L(λ) ≅ ⊕_{a ∈ S(λ)} V(λ - wt(a)),
//! ```
//!
//! where wt(a) = (a1 - a3 - a4 + a5) ω1 + (a2 + 3 a3 + 3 a4) ω2. The point
//! a also carries a grading degree a1 + a2 + a3 + 2 a4 + 2 a5, recorded
//! here for bookkeeping. Kirillov-Reshetikhin modules are the one-column
//! cases λ = n ω_i. The module also provides the defining current-algebra
//! relations of the conjectural presentation M(λ), the two highest
//! l-weight monomials realizing V(λ)'s minimal affinizations, and the
//! exact determinant of the factorial matrix whose invertibility underpins
//! the presentation argument.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, Serializer};

use crate::character::{FormalCharacter, IrrDecomposition};
use crate::g2::{Node, Root, Weight};
use crate::{Error, Result};

/// A dominant highest weight λ = k ω1 + l ω2 for a minimal affinization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HighestWeight {
    k: u32,
    l: u32,
}

impl HighestWeight {
    pub const fn new(k: u32, l: u32) -> Self {
        HighestWeight { k, l }
    }

    pub const fn k(self) -> u32 {
        self.k
    }

    pub const fn l(self) -> u32 {
        self.l
    }

    /// The short-node coefficient split as l = 3r + s with 0 ≤ s ≤ 2.
    pub const fn r(self) -> u32 {
        self.l / 3
    }

    /// The remainder s ∈ {0, 1, 2} of l modulo 3.
    pub const fn s(self) -> u32 {
        self.l % 3
    }

    pub const fn weight(self) -> Weight {
        Weight::new(self.k as i64, self.l as i64)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.weight())
    }
}

/// A point a = (a1, ..., a5) of Z₊⁵, candidate for membership in S(λ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PolyhedralPoint {
    pub a1: u32,
    pub a2: u32,
    pub a3: u32,
    pub a4: u32,
    pub a5: u32,
}

impl PolyhedralPoint {
    pub const fn new(a: [u32; 5]) -> Self {
        PolyhedralPoint {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a5: a[4],
        }
    }

    pub const fn coords(self) -> [u32; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a5]
    }

    /// The four defining inequalities of S(λ).
    pub fn is_in_polytope(self, lambda: HighestWeight) -> bool {
        let [a1, a2, a3, a4, a5] = self.coords().map(i64::from);
        let (k, l) = (i64::from(lambda.k), i64::from(lambda.l));
        a1 <= k && a1 - a3 + a5 <= k && 2 * a2 + 3 * a3 + 3 * a4 <= l && 2 * a2 + 3 * a4 + 3 * a5 <= l
    }
}

impl fmt::Display for PolyhedralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.a1, self.a2, self.a3, self.a4, self.a5
        )
    }
}

/// The weight drop wt(a), computed in both fundamental and root
/// coordinates; the two presentations are asserted to agree.
pub fn wt_of_point(a: PolyhedralPoint) -> Weight {
    let [a1, a2, a3, a4, a5] = a.coords().map(i64::from);
    let fundamental = Weight::new(a1 - a3 - a4 + a5, a2 + 3 * a3 + 3 * a4);
    let by_roots = Weight::from_root_coords(
        2 * a1 + a2 + a3 + a4 + 2 * a5,
        3 * a1 + 2 * a2 + 3 * a3 + 3 * a4 + 3 * a5,
    );
    assert_eq!(fundamental, by_roots, "the two presentations of wt(a) disagree");
    fundamental
}

/// The grading degree a1 + a2 + a3 + 2 a4 + 2 a5 of the point a.
pub fn t_degree_of_point(a: PolyhedralPoint) -> u32 {
    a.a1 + a.a2 + a.a3 + 2 * a.a4 + 2 * a.a5
}

/// All lattice points of S(λ), in lexicographic order.
pub fn enumerate_s(lambda: HighestWeight) -> Vec<PolyhedralPoint> {
    let (k, l) = (lambda.k, lambda.l);
    let mut points = Vec::new();
    // The inequalities bound each coordinate: a1 ≤ k, 2a2 ≤ l, 3a3 ≤ l,
    // 3a4 ≤ l, 3a5 ≤ l; filter the box by the exact conditions.
    for a1 in 0..=k {
        for a2 in 0..=l / 2 {
            for a3 in 0..=l / 3 {
                for a4 in 0..=l / 3 {
                    for a5 in 0..=l / 3 {
                        let p = PolyhedralPoint::new([a1, a2, a3, a4, a5]);
                        if p.is_in_polytope(lambda) {
                            points.push(p);
                        }
                    }
                }
            }
        }
    }
    points
}

/// The highest weight λ - wt(a) of the summand attached to a ∈ S(λ).
pub fn target_weight(lambda: HighestWeight, a: PolyhedralPoint) -> Result<Weight> {
    if !a.is_in_polytope(lambda) {
        let [a1, a2, a3, a4, a5] = a.coords();
        return Err(Error::NotInPolytope {
            a1,
            a2,
            a3,
            a4,
            a5,
            k: lambda.k,
            l: lambda.l,
        });
    }
    Ok(lambda.weight() - wt_of_point(a))
}

/// The decomposition of the graded limit L(λ) into irreducible G2-modules,
/// one summand V(λ - wt(a)) per point a ∈ S(λ).
pub fn decompose_graded_limit(lambda: HighestWeight) -> IrrDecomposition {
    let mut out = IrrDecomposition::new();
    for a in enumerate_s(lambda) {
        let target = lambda.weight() - wt_of_point(a);
        out.add(target, 1);
    }
    out
}

/// The G2-character of L(λ).
pub fn graded_limit_character(lambda: HighestWeight) -> Result<FormalCharacter> {
    decompose_graded_limit(lambda).character()
}

/// dim L(λ) = Σ_{a ∈ S(λ)} dim V(λ - wt(a)).
pub fn graded_limit_dimension(lambda: HighestWeight) -> Result<i128> {
    decompose_graded_limit(lambda).total_dimension()
}

/// The graded limit of the Kirillov-Reshetikhin module with n columns at
/// the given node, i.e. L(n ω_node).
pub fn kr_decomposition(node: Node, n: u32) -> IrrDecomposition {
    let lambda = match node {
        Node::One => HighestWeight::new(n, 0),
        Node::Two => HighestWeight::new(0, n),
    };
    decompose_graded_limit(lambda)
}

/// Which of the two minimal affinizations of V(λ) a monomial describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialVariant {
    /// Long-node factors first: spectral parameters climb through node 1.
    First,
    /// Short-node factors first: the spectral mirror of [`MonomialVariant::First`].
    Second,
}

/// One Y-variable factor Y_{node, q^{q_exp}} of a dominant monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MonomialFactor {
    pub node: Node,
    #[serde(rename = "qexp")]
    pub q_exp: i64,
}

/// A dominant monomial in the Y-variables, the highest l-weight of a
/// minimal affinization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominantMonomial {
    factors: Vec<MonomialFactor>,
}

impl DominantMonomial {
    pub fn factors(&self) -> &[MonomialFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Serialized as a list of `{"node": i, "qexp": e}` records in factor order.
impl Serialize for DominantMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.factors.iter())
    }
}

impl fmt::Display for DominantMonomial {
    /// `Y[1,q^0]·Y[2,q^7]`; the empty monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "Y[{},q^{}]", factor.node.index(), factor.q_exp)?;
        }
        Ok(())
    }
}

/// The highest l-weight monomial of the chosen minimal affinization of
/// V(k ω1 + l ω2): k node-1 factors and l node-2 factors whose q-exponents
/// form one increasing string.
pub fn highest_l_weight_monomial(
    lambda: HighestWeight,
    variant: MonomialVariant,
) -> DominantMonomial {
    let (k, l) = (i64::from(lambda.k), i64::from(lambda.l));
    let mut factors = Vec::with_capacity((lambda.k + lambda.l) as usize);
    match variant {
        MonomialVariant::First => {
            for i in 0..k {
                factors.push(MonomialFactor { node: Node::One, q_exp: 6 * i });
            }
            for i in 0..l {
                factors.push(MonomialFactor { node: Node::Two, q_exp: 6 * k + 2 * i + 1 });
            }
        }
        MonomialVariant::Second => {
            for i in 0..l {
                factors.push(MonomialFactor { node: Node::Two, q_exp: 2 * i });
            }
            for i in 0..k {
                factors.push(MonomialFactor { node: Node::One, q_exp: 2 * l + 6 * i + 5 });
            }
        }
    }
    DominantMonomial { factors }
}

/// One defining relation of the conjectural current-algebra presentation
/// M(λ) of the graded limit.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelationDescriptor {
    /// (n₊ ⊗ C[t]) v = 0.
    NilpotentLoopAnnihilation,
    /// (h ⊗ t^m) v = δ_{m,0} ⟨h, λ⟩ v for h Cartan.
    LoopCartanEigenvalue,
    /// f_node^exponent v = 0 with exponent ⟨α_node^, λ⟩ + 1.
    SimplePower { node: Node, exponent: u64 },
    /// (f_root ⊗ t) v = 0.
    CurrentAnnihilation { root: Root },
}

impl fmt::Display for RelationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationDescriptor::NilpotentLoopAnnihilation => write!(f, "(n₊ ⊗ C[t]) · v = 0"),
            RelationDescriptor::LoopCartanEigenvalue => {
                write!(f, "(h ⊗ t^m) · v = δ_m,0 ⟨h, λ⟩ v")
            }
            RelationDescriptor::SimplePower { node, exponent } => {
                write!(f, "f_{}^{} · v = 0", node.index(), exponent)
            }
            RelationDescriptor::CurrentAnnihilation { root } => {
                write!(f, "(f_{root} ⊗ t) · v = 0")
            }
        }
    }
}

/// The defining relations of M(λ): the loop-triangular pair, one power
/// relation per simple root, and current annihilation for the three
/// positive roots α with (λ, α) relevant to the graded limit.
pub fn relations_of_m(lambda: HighestWeight) -> Vec<RelationDescriptor> {
    let alpha_1_plus_2 = Root::new(1, 1).expect("α1+α2 is a root");
    vec![
        RelationDescriptor::NilpotentLoopAnnihilation,
        RelationDescriptor::LoopCartanEigenvalue,
        RelationDescriptor::SimplePower {
            node: Node::One,
            exponent: u64::from(lambda.k) + 1,
        },
        RelationDescriptor::SimplePower {
            node: Node::Two,
            exponent: u64::from(lambda.l) + 1,
        },
        RelationDescriptor::CurrentAnnihilation { root: Root::ALPHA1 },
        RelationDescriptor::CurrentAnnihilation { root: Root::ALPHA2 },
        RelationDescriptor::CurrentAnnihilation { root: alpha_1_plus_2 },
    ]
}

/// Determinant by Bareiss fraction-free elimination; every division below
/// is exact over the integers.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&t % &prev).is_zero());
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// The exact determinant of the (r+1) × (r+1) matrix with entries
/// 1 / (3r + 1 - 3i - j)! for 0 ≤ i, j ≤ r (an entry is 0 when the
/// argument of the factorial is negative).
///
/// Row i is scaled by (3r + 1 - 3i)! to clear denominators, the integer
/// determinant is computed fraction-free, and the scaling is divided back
/// out, so the result is exact for any r.
pub fn factorial_matrix_det(r: u32) -> BigRational {
    let size = (r + 1) as usize;
    let top = (3 * r + 1) as usize;
    let mut fact = Vec::with_capacity(top + 1);
    fact.push(BigInt::one());
    for t in 1..=top {
        let next = fact.last().unwrap() * BigInt::from(t);
        fact.push(next);
    }
    let mut scaled = vec![vec![BigInt::zero(); size]; size];
    let mut denominator = BigInt::one();
    for i in 0..size {
        let row_scale = top - 3 * i;
        denominator *= &fact[row_scale];
        for j in 0..size {
            let e = top as i64 - 3 * i as i64 - j as i64;
            if e >= 0 {
                // (row_scale)! / e! is an integer (a falling factorial).
                scaled[i][j] = &fact[row_scale] / &fact[e as usize];
            }
        }
    }
    BigRational::new(bareiss_det(scaled), denominator)
}
