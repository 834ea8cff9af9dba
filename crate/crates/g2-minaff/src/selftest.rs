//! Scalable invariant suites over all modules, as run by the command-line
//! `selftest`.
//!
//! Each check exercises one structural invariant with bounds that grow
//! linearly in `scale`; at scale 1 the bounds match the crate's standard
//! test suite. Checks never panic outward: assertion failures inside the
//! exercised code are caught and reported as failed checks.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::Zero;

use crate::affine::{demazure_sequence, positive_real_roots, rho, rho_table, AffineRealRoot};
use crate::character::{
    decompose_character, freudenthal_box, irreducible_character, weyl_dimension,
    AlternatingOracle, FormalCharacter,
};
use crate::g2::{
    coroot_pairing, dominant_representative, pairing, weyl_group, Node, Root, Weight,
};
use crate::limit::{
    convergence_check, exponent_table, normalized_truncated_char, product_series, ray_weight,
};
use crate::minaff::{
    decompose_graded_limit, enumerate_s, factorial_matrix_det, graded_limit_character,
    highest_l_weight_monomial, relations_of_m, wt_of_point, HighestWeight, MonomialVariant,
    PolyhedralPoint, RelationDescriptor,
};

/// Outcome of one invariant check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failure description; empty when the check passed.
    pub detail: String,
}

fn run_check(
    out: &mut Vec<Check>,
    name: &str,
    f: impl FnOnce() -> std::result::Result<(), String>,
) {
    let result = catch_unwind(AssertUnwindSafe(f));
    let (passed, detail) = match result {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(msg)) => (false, msg),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        }
    };
    out.push(Check {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Dominant weights with c1 + c2 at most `total`.
fn dominant_weights_up_to(total: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for c1 in 0..=total {
        for c2 in 0..=total - c1 {
            out.push(Weight::new(c1, c2));
        }
    }
    out
}

/// Highest weights with k + l at most `total`.
fn highest_weights_up_to(total: u32) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    for k in 0..=total {
        for l in 0..=total - k {
            out.push(HighestWeight::new(k, l));
        }
    }
    out
}

fn g2_checks(out: &mut Vec<Check>, scale: i64) {
    run_check(out, "g2: coordinate roundtrip", || {
        let b = 12 * scale;
        for c1 in -b..=b {
            for c2 in -b..=b {
                let w = Weight::new(c1, c2);
                let (m, n) = w.root_coords();
                ensure(Weight::from_root_coords(m, n) == w, || {
                    format!("roundtrip failed at ({c1}, {c2})")
                })?;
            }
        }
        Ok(())
    });

    run_check(out, "g2: root system and Weyl group structure", || {
        ensure(weyl_group().len() == 12, || "|W| != 12".into())?;
        let all: BTreeSet<Root> = Root::all().into_iter().collect();
        ensure(all.len() == 12, || "root count != 12".into())?;
        let long = Root::POSITIVE.iter().filter(|r| r.is_long()).count();
        ensure(long == 3, || "long positive root count != 3".into())?;
        for w in weyl_group() {
            let image: BTreeSet<Root> = all.iter().map(|r| w.apply_root(*r)).collect();
            ensure(image == all, || "W does not permute the roots".into())?;
            ensure(w.det() == if w.length() % 2 == 0 { 1 } else { -1 }, || {
                "sign character mismatch".into()
            })?;
        }
        for r in Root::POSITIVE {
            let is_simple = r == Root::ALPHA1 || r == Root::ALPHA2;
            ensure((coroot_pairing(r, Weight::RHO) == 1) == is_simple, || {
                format!("⟨{r}^, ρ⟩ misbehaves")
            })?;
        }
        Ok(())
    });

    run_check(out, "g2: pairing is W-invariant", || {
        let b = 3 * scale;
        for w in weyl_group() {
            for c1 in -b..=b {
                for c2 in -b..=b {
                    let x = Weight::new(c1, c2);
                    let y = Weight::new(c2, -c1 + 1);
                    ensure(pairing(w.apply(x), w.apply(y)) == pairing(x, y), || {
                        format!("invariance failed at ({c1}, {c2})")
                    })?;
                }
            }
        }
        Ok(())
    });

    run_check(out, "g2: dominant representative", || {
        let b = 6 * scale;
        for c1 in -b..=b {
            for c2 in -b..=b {
                let lam = Weight::new(c1, c2);
                let (rep, w) = dominant_representative(lam);
                ensure(rep.is_dominant() && w.apply(lam) == rep, || {
                    format!("bad representative for ({c1}, {c2})")
                })?;
            }
        }
        Ok(())
    });
}

fn character_checks(out: &mut Vec<Check>, scale: i64) {
    run_check(out, "character: multiplicity engines agree", || {
        for lam in dominant_weights_up_to(8 * scale) {
            let (m, n) = lam.root_coords();
            let grid = freudenthal_box(lam, m as usize * 2, n as usize * 2).map_err(|e| e.to_string())?;
            let mut oracle = AlternatingOracle::new(lam).map_err(|e| e.to_string())?;
            for (b1, row) in grid.iter().enumerate() {
                for (b2, &mult) in row.iter().enumerate() {
                    let mu = lam - Weight::from_root_coords(b1 as i64, b2 as i64);
                    let alt = oracle.multiplicity(mu).map_err(|e| e.to_string())?;
                    ensure(mult == alt, || {
                        format!("engines disagree at λ = {lam}, μ = {mu}: {mult} vs {alt}")
                    })?;
                }
            }
        }
        Ok(())
    });

    run_check(out, "character: decompose inverts assembly", || {
        for (offset, modulus) in [(1u64, 3u64), (2, 4)] {
            let mut combo = FormalCharacter::zero();
            let mut expected = crate::character::IrrDecomposition::new();
            for (i, lam) in dominant_weights_up_to(3 * scale).into_iter().enumerate() {
                let mult = (i as u64 + offset) % modulus;
                if mult > 0 {
                    expected.add(lam, mult);
                }
            }
            for (lam, mult) in expected.iter_desc() {
                let part = irreducible_character(lam)
                    .and_then(|ch| ch.scaled(i128::from(mult)))
                    .map_err(|e| e.to_string())?;
                combo = combo.add(&part).map_err(|e| e.to_string())?;
            }
            let peeled = decompose_character(&combo).map_err(|e| e.to_string())?;
            ensure(peeled == expected, || "decomposition is not a left inverse".into())?;
        }
        Ok(())
    });

    run_check(out, "character: dimension routes agree, characters W-invariant", || {
        for lam in dominant_weights_up_to(4 * scale) {
            let ch = irreducible_character(lam).map_err(|e| e.to_string())?;
            ensure(ch.is_weyl_invariant(), || format!("ch V({lam}) not W-invariant"))?;
            let sum = ch.coefficient_sum().map_err(|e| e.to_string())?;
            let dim = weyl_dimension(lam).map_err(|e| e.to_string())?;
            ensure(sum == dim, || format!("dim mismatch at {lam}: {sum} vs {dim}"))?;
        }
        Ok(())
    });
}

fn minaff_checks(out: &mut Vec<Check>, scale: i64) {
    run_check(out, "minaff: summands dominant, top multiplicity one", || {
        for lam in highest_weights_up_to(20 * scale as u32) {
            let dec = decompose_graded_limit(lam);
            ensure(dec.mult_of(lam.weight()) == 1, || {
                format!("top multiplicity != 1 for L({lam})")
            })?;
            for (w, _) in dec.iter_desc() {
                ensure(w.is_dominant(), || format!("non-dominant summand in L({lam})"))?;
            }
        }
        Ok(())
    });

    run_check(out, "minaff: polytope grows with λ", || {
        for lam in highest_weights_up_to(8 * scale as u32) {
            for a in enumerate_s(lam) {
                ensure(
                    a.is_in_polytope(HighestWeight::new(lam.k() + 1, lam.l()))
                        && a.is_in_polytope(HighestWeight::new(lam.k(), lam.l() + 1)),
                    || format!("monotonicity failed at λ = {lam}"),
                )?;
            }
        }
        Ok(())
    });

    run_check(out, "minaff: peeling recovers the polytope decomposition", || {
        for lam in highest_weights_up_to(8 * scale as u32) {
            let direct = decompose_graded_limit(lam);
            let ch = graded_limit_character(lam).map_err(|e| e.to_string())?;
            let peeled = decompose_character(&ch).map_err(|e| e.to_string())?;
            ensure(direct == peeled, || format!("roundtrip failed for L({lam})"))?;
        }
        Ok(())
    });

    run_check(out, "minaff: graded limit bounded by the tensor character", || {
        for lam in highest_weights_up_to(8 * scale as u32) {
            let left = graded_limit_character(lam).map_err(|e| e.to_string())?;
            let k_part = graded_limit_character(HighestWeight::new(lam.k(), 0))
                .map_err(|e| e.to_string())?;
            let l_part = graded_limit_character(HighestWeight::new(0, lam.l()))
                .map_err(|e| e.to_string())?;
            let right = k_part.mul(&l_part).map_err(|e| e.to_string())?;
            ensure(left.le_coefficientwise(&right), || {
                format!("tensor bound violated at λ = {lam}")
            })?;
        }
        Ok(())
    });

    run_check(out, "minaff: weight drop has one value in both presentations", || {
        let b = 6 * scale as u32;
        for a1 in 0..=b {
            for a2 in 0..=b {
                for a3 in 0..=b {
                    for a4 in 0..=b {
                        for a5 in 0..=b {
                            // wt_of_point asserts the two presentations agree.
                            let _ = wt_of_point(PolyhedralPoint::new([a1, a2, a3, a4, a5]));
                        }
                    }
                }
            }
        }
        Ok(())
    });

    run_check(out, "minaff: monomials and relations are well formed", || {
        let b = 10 * scale as u32;
        for k in 0..=b {
            for l in 0..=b {
                let lam = HighestWeight::new(k, l);
                for variant in [MonomialVariant::First, MonomialVariant::Second] {
                    let m = highest_l_weight_monomial(lam, variant);
                    ensure(m.len() == (k + l) as usize, || {
                        format!("factor count wrong at λ = {lam}")
                    })?;
                    let mut exps: BTreeSet<(u8, i64)> = BTreeSet::new();
                    for f in m.factors() {
                        ensure(exps.insert((f.node.index(), f.q_exp)), || {
                            format!("repeated factor at λ = {lam}")
                        })?;
                    }
                }
                let rel = relations_of_m(lam);
                ensure(rel.len() == 7, || format!("relation count wrong at λ = {lam}"))?;
                let powers: Vec<u64> = rel
                    .iter()
                    .filter_map(|r| match r {
                        RelationDescriptor::SimplePower { exponent, .. } => Some(*exponent),
                        _ => None,
                    })
                    .collect();
                ensure(powers == vec![u64::from(k) + 1, u64::from(l) + 1], || {
                    format!("power exponents wrong at λ = {lam}")
                })?;
            }
        }
        Ok(())
    });

    run_check(out, "minaff: factorial matrix stays invertible", || {
        for r in 1..=(10 * scale as u32) {
            ensure(!factorial_matrix_det(r).is_zero(), || {
                format!("determinant vanishes at r = {r}")
            })?;
        }
        Ok(())
    });
}

fn affine_checks(out: &mut Vec<Check>, scale: i64) {
    run_check(out, "affine: ρ nonnegative and zero off five root families", || {
        let nonzero_rows = [(-1, -2, 1), (-1, -3, 1), (-2, -3, 1), (-1, -3, 2), (-2, -3, 2)];
        for lam in highest_weights_up_to(12 * scale as u32) {
            for (g, value) in rho_table(lam, 4 * scale) {
                let (m, n) = g.finite().coords();
                let key = (m, n, g.delta_coefficient());
                if !nonzero_rows.contains(&key) {
                    ensure(value == 0, || format!("ρ({g}) = {value} should vanish at λ = {lam}"))?;
                }
            }
            // The five families, as closed forms.
            let (k, r) = (u64::from(lam.k()), u64::from(lam.r()));
            let s2 = u64::from(lam.s() == 2);
            let expected = [3 * r + s2, 2 * r + s2, k + 2 * r + s2, r, r];
            for (key, want) in nonzero_rows.iter().zip(expected) {
                let g = AffineRealRoot::new(
                    Root::new(key.0, key.1).expect("family root"),
                    key.2,
                );
                let got = rho(g, lam).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("ρ({g}) = {got}, want {want} at λ = {lam}"))?;
            }
        }
        Ok(())
    });

    run_check(out, "affine: coroot K-coefficients are integral", || {
        for g in positive_real_roots(4 * scale) {
            let expected = if g.finite().is_long() {
                g.delta_coefficient()
            } else {
                3 * g.delta_coefficient()
            };
            ensure(g.coroot_k_coefficient() == expected, || {
                format!("K-coefficient wrong for {g}")
            })?;
        }
        Ok(())
    });

    run_check(out, "affine: Demazure factors recover λ", || {
        let b = 8 * scale as u32;
        for k in 0..=b {
            for l in 0..=b {
                let lam = HighestWeight::new(k, l);
                let mut total = Weight::ZERO;
                for f in demazure_sequence(lam).factors() {
                    ensure(f.level > 0, || format!("non-positive level at λ = {lam}"))?;
                    total = total + f.weight;
                }
                ensure(-total == lam.weight(), || {
                    format!("factors do not recover λ = {lam}")
                })?;
            }
        }
        Ok(())
    });
}

fn limit_checks(out: &mut Vec<Check>, scale: i64) {
    const J1: &[Node] = &[Node::One];
    const J2: &[Node] = &[Node::Two];
    const J12: &[Node] = &[Node::One, Node::Two];

    run_check(out, "limit: union exponents are pointwise maxima", || {
        let one = exponent_table(J1).map_err(|e| e.to_string())?;
        let two = exponent_table(J2).map_err(|e| e.to_string())?;
        let both = exponent_table(J12).map_err(|e| e.to_string())?;
        for i in 0..6 {
            ensure(both[i].1 == one[i].1.max(two[i].1), || {
                format!("exponent mismatch at {}", both[i].0)
            })?;
        }
        Ok(())
    });

    run_check(out, "limit: truncations grow monotonically to the product", || {
        let d_max = 4 * scale as u32;
        for j in [J1, J2, J12] {
            for d in 1..=d_max {
                let target = product_series(j, d).map_err(|e| e.to_string())?;
                let mut prev = crate::limit::TruncatedSeries::zero(d);
                for n in 1..=(8 * scale as u32) {
                    let lam = ray_weight(j, n).map_err(|e| e.to_string())?;
                    let here = normalized_truncated_char(lam, d).map_err(|e| e.to_string())?;
                    ensure(prev.le_coefficientwise(&here), || {
                        format!("coefficients shrank: J = {j:?}, D = {d}, n = {n}")
                    })?;
                    ensure(here.le_coefficientwise(&target), || {
                        format!("coefficients exceed the product: J = {j:?}, D = {d}, n = {n}")
                    })?;
                    prev = here;
                }
            }
        }
        Ok(())
    });

    run_check(out, "limit: stabilization points match pinned values", || {
        let pins = [(J12, 1, Some(1u32)), (J2, 2, Some(2)), (J1, 6, Some(6))];
        for (j, d, want) in pins {
            let got = convergence_check(j, d, 12).map_err(|e| e.to_string())?;
            ensure(got == want, || {
                format!("stabilization for J = {j:?}, D = {d}: got {got:?}, want {want:?}")
            })?;
        }
        Ok(())
    });
}

/// Run every invariant suite with bounds scaled by `scale` (≥ 1); returns
/// one [`Check`] per invariant in a deterministic order.
pub fn run_all(scale: u32) -> Vec<Check> {
    let s = i64::from(scale.max(1));
    let mut out = Vec::new();
    g2_checks(&mut out, s);
    character_checks(&mut out, s);
    minaff_checks(&mut out, s);
    affine_checks(&mut out, s);
    limit_checks(&mut out, s);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_at_scale_one() {
        let checks = run_all(1);
        assert!(checks.len() >= 15);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
