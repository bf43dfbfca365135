//! Coset enumeration and convolution. Decompositions U g U = ⊔ U y_j are
//! computed by sweeping g·u over a transversal of the level subgroup U
//! modulo a principal congruence subgroup, at congruence depth
//! 1 + (valuation spread of g) — deep enough that conjugation by g keeps the
//! congruence subgroup inside U, which makes the sweep complete.

use num_traits::{Signed, Zero};

use super::{BiInvariantFunction, CosetSide, GL2Element, Level, PadicContext, PadicError, Ratio};

/// Hard cap on transversal sweep iterations; keeps accidental deep levels
/// from running away. p^(4m) iterations at level K, p^(4m-1) at level I.
const TRANSVERSAL_ITERATION_CAP: u64 = 2_000_000;

/// Integral representatives of the level subgroup modulo the principal
/// congruence subgroup of depth m (entries taken mod p^m, determinant a unit
/// mod p; at Iwahori level the lower-left entry runs over multiples of p).
pub fn congruence_transversal(
    ctx: &PadicContext,
    level: Level,
    m: u32,
) -> Result<Vec<GL2Element>, PadicError> {
    let p_wide = ctx.p() as i128;
    let modulus_wide = p_wide.pow(m);
    let iterations = modulus_wide.pow(4)
        / match level {
            Level::MaximalCompact => 1,
            Level::Iwahori => p_wide,
        };
    if iterations > TRANSVERSAL_ITERATION_CAP as i128 {
        return Err(PadicError::TransversalTooLarge {
            iterations: iterations as u128,
            cap: TRANSVERSAL_ITERATION_CAP,
        });
    }
    let p = ctx.p() as i64;
    let modulus = modulus_wide as i64;
    let c_step = match level {
        Level::MaximalCompact => 1usize,
        Level::Iwahori => p as usize,
    };
    let mut out = Vec::new();
    for a in 0..modulus {
        for b in 0..modulus {
            for c in (0..modulus).step_by(c_step) {
                for d in 0..modulus {
                    if (a * d - b * c).rem_euclid(p) != 0 {
                        out.push(
                            GL2Element::from_integers(a, b, c, d)
                                .expect("unit determinant mod p implies invertibility"),
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sweep_depth(ctx: &PadicContext, g: &GL2Element) -> Result<u32, PadicError> {
    let spread = g.spread(ctx.p());
    if spread > ctx.spread_bound() {
        return Err(PadicError::SpreadExceeded {
            spread,
            bound: ctx.spread_bound(),
        });
    }
    Ok((1 + spread) as u32)
}

/// Representatives y_j with U g U = ⊔ U y_j, sorted for determinism.
pub fn right_coset_reps(
    ctx: &PadicContext,
    level: Level,
    g: &GL2Element,
) -> Result<Vec<GL2Element>, PadicError> {
    if ctx.in_level_subgroup(g, level) {
        return Ok(vec![*g]);
    }
    let m = sweep_depth(ctx, g)?;
    let transversal = congruence_transversal(ctx, level, m)?;
    let mut reps: Vec<GL2Element> = Vec::new();
    let mut inverses: Vec<GL2Element> = Vec::new();
    for u in &transversal {
        let cand = g.mul(u);
        let seen = inverses
            .iter()
            .any(|y_inv| ctx.in_level_subgroup(&cand.mul(y_inv), level));
        if !seen {
            inverses.push(cand.inverse());
            reps.push(cand);
        }
    }
    reps.sort();
    Ok(reps)
}

/// Independent count of the right cosets in U g U, via the subgroup index
/// [U : U ∩ g⁻¹ U g]: membership of u in the intersection is decided by
/// whether g u g⁻¹ stays in U, counted over the same congruence transversal
/// the sweep uses. Serves as a cross-check oracle for `right_coset_reps`.
pub fn right_coset_count_via_index(
    ctx: &PadicContext,
    level: Level,
    g: &GL2Element,
) -> Result<u64, PadicError> {
    if ctx.in_level_subgroup(g, level) {
        return Ok(1);
    }
    let m = sweep_depth(ctx, g)?;
    let transversal = congruence_transversal(ctx, level, m)?;
    let g_inv = g.inverse();
    let stabilized = transversal
        .iter()
        .filter(|u| ctx.in_level_subgroup(&g.mul(u).mul(&g_inv), level))
        .count() as u64;
    let total = transversal.len() as u64;
    assert!(
        stabilized > 0 && total.is_multiple_of(stabilized),
        "the intersection subgroup must have integral index"
    );
    Ok(total / stabilized)
}

/// Whether a and b lie in the same double coset U·U of the level subgroup.
/// At level K this is an exact digit comparison; at level I it tests b
/// against the right-coset decomposition of U a U.
pub fn double_coset_equal(
    ctx: &PadicContext,
    a: &GL2Element,
    b: &GL2Element,
    level: Level,
) -> Result<bool, PadicError> {
    match level {
        Level::MaximalCompact => Ok(ctx.smith_digits(a) == ctx.smith_digits(b)),
        Level::Iwahori => {
            let reps = right_coset_reps(ctx, level, a)?;
            Ok(reps
                .iter()
                .any(|y| ctx.coset_equal(y, b, level, CosetSide::Right)))
        }
    }
}

/// Membership data for evaluating one stored term at arbitrary points.
enum TermKey {
    /// K level: elementary-divisor digits.
    Digits((i64, i64)),
    /// I level: inverses of the term's right-coset representatives.
    CosetInverses(Vec<GL2Element>),
}

fn term_keys(
    ctx: &PadicContext,
    f: &BiInvariantFunction,
) -> Result<Vec<(TermKey, Ratio)>, PadicError> {
    let mut keys = Vec::with_capacity(f.len());
    for (rep, v) in f.terms() {
        let key = match f.level() {
            Level::MaximalCompact => TermKey::Digits(ctx.smith_digits(rep)),
            Level::Iwahori => TermKey::CosetInverses(
                right_coset_reps(ctx, Level::Iwahori, rep)?
                    .iter()
                    .map(GL2Element::inverse)
                    .collect(),
            ),
        };
        keys.push((key, *v));
    }
    Ok(keys)
}

fn eval_by_keys(
    ctx: &PadicContext,
    keys: &[(TermKey, Ratio)],
    level: Level,
    x: &GL2Element,
) -> Ratio {
    for (key, v) in keys {
        let member = match key {
            TermKey::Digits(d) => ctx.smith_digits(x) == *d,
            TermKey::CosetInverses(invs) => invs
                .iter()
                .any(|y_inv| ctx.in_level_subgroup(&x.mul(y_inv), level)),
        };
        if member {
            return *v;
        }
    }
    Ratio::zero()
}

/// Exact convolution with the Haar measure normalized so the level subgroup
/// has measure one: (f1 ∗ f2)(x) = Σ_j f1(x·y_j⁻¹)·f2(y_j), summed over the
/// right-coset representatives y_j of the support of f2. Candidate support
/// representatives are the pairwise products of the two supports'
/// right-coset representatives, deduplicated into double cosets.
pub fn convolve(
    ctx: &PadicContext,
    f1: &BiInvariantFunction,
    f2: &BiInvariantFunction,
) -> Result<BiInvariantFunction, PadicError> {
    if f1.p() != ctx.p() || f2.p() != ctx.p() {
        return Err(PadicError::Mismatch(
            "operands must match the context prime".to_owned(),
        ));
    }
    if f1.level() != f2.level() {
        return Err(PadicError::Mismatch(
            "convolution operands must share a level".to_owned(),
        ));
    }
    let level = f1.level();

    let mut rr1: Vec<GL2Element> = Vec::new();
    for (rep, _) in f1.terms() {
        rr1.extend(right_coset_reps(ctx, level, rep)?);
    }
    let mut rr2: Vec<(GL2Element, GL2Element, Ratio)> = Vec::new();
    for (rep, v) in f2.terms() {
        for y in right_coset_reps(ctx, level, rep)? {
            rr2.push((y, y.inverse(), *v));
        }
    }

    let f1_keys = term_keys(ctx, f1)?;

    // Deduplicate candidate products into double-coset classes. At level K
    // the class representative is the canonical diagonal one; at level I it
    // is the first candidate found (the sweep order is deterministic).
    let mut class_reps: Vec<GL2Element> = Vec::new();
    let mut class_keys: Vec<TermKey> = Vec::new();
    for a in &rr1 {
        for (b, _, _) in &rr2 {
            let cand = a.mul(b);
            let seen = class_keys.iter().any(|key| match key {
                TermKey::Digits(d) => ctx.smith_digits(&cand) == *d,
                TermKey::CosetInverses(invs) => invs
                    .iter()
                    .any(|y_inv| ctx.in_level_subgroup(&cand.mul(y_inv), level)),
            });
            if seen {
                continue;
            }
            match level {
                Level::MaximalCompact => {
                    let digits = ctx.smith_digits(&cand);
                    class_keys.push(TermKey::Digits(digits));
                    class_reps.push(ctx.smith_representative(digits));
                }
                Level::Iwahori => {
                    class_keys.push(TermKey::CosetInverses(
                        right_coset_reps(ctx, level, &cand)?
                            .iter()
                            .map(GL2Element::inverse)
                            .collect(),
                    ));
                    class_reps.push(cand);
                }
            }
        }
    }

    let mut terms: Vec<(GL2Element, Ratio)> = Vec::new();
    for rep in &class_reps {
        let mut total = Ratio::zero();
        for (_, y_inv, v2) in &rr2 {
            let z = rep.mul(y_inv);
            total += eval_by_keys(ctx, &f1_keys, level, &z) * *v2;
        }
        if !total.is_zero() {
            terms.push((*rep, total));
        }
    }
    Ok(BiInvariantFunction::from_distinct_terms(
        ctx.p(),
        level,
        terms,
    ))
}

/// L¹ norm with the measure normalization μ(U) = 1: the sum over stored
/// double cosets of |value| times the number of right cosets inside.
pub fn l1_norm(ctx: &PadicContext, f: &BiInvariantFunction) -> Result<Ratio, PadicError> {
    if f.p() != ctx.p() {
        return Err(PadicError::Mismatch(
            "operand must match the context prime".to_owned(),
        ));
    }
    let mut total = Ratio::zero();
    for (rep, v) in f.terms() {
        let count = right_coset_reps(ctx, f.level(), rep)?.len();
        total += v.abs() * Ratio::from_integer(count as i64);
    }
    Ok(total)
}

/// Exact equality of functions presented by possibly different double-coset
/// representatives.
pub fn functions_equal(
    ctx: &PadicContext,
    a: &BiInvariantFunction,
    b: &BiInvariantFunction,
) -> Result<bool, PadicError> {
    if a.p() != b.p() || a.level() != b.level() {
        return Err(PadicError::Mismatch(
            "compared functions must share a prime and a level".to_owned(),
        ));
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let b_terms: Vec<(&GL2Element, &Ratio)> = b.terms().collect();
    let mut used = vec![false; b_terms.len()];
    for (ra, va) in a.terms() {
        let mut matched = false;
        for (i, (rb, vb)) in b_terms.iter().enumerate() {
            if used[i] {
                continue;
            }
            if double_coset_equal(ctx, ra, rb, a.level())? {
                if va != *vb {
                    return Ok(false);
                }
                used[i] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact structure constants of the Iwahori-level convolution algebra
/// mirrored against the rank-2 presentation with parameter p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwahoriRelationReport {
    pub p: u64,
    /// Number of right cosets in the reflection double coset (expected p).
    pub s_coset_count: usize,
    /// 1_{IsI} ∗ 1_{IsI} = (p-1)·1_{IsI} + p·1_I holds exactly.
    pub quadratic_holds: bool,
    /// Coefficient of the reflection coset in the square (expected p-1).
    pub s_coefficient: Ratio,
    /// Coefficient of the unit coset in the square (expected p).
    pub unit_coefficient: Ratio,
    /// The rotation indicator convolves with its inverse to the unit, both
    /// ways.
    pub rotation_invertible: bool,
    /// The squared rotation indicator commutes with the reflection
    /// indicator.
    pub rotation_square_commutes: bool,
}

impl IwahoriRelationReport {
    pub fn all_hold(&self) -> bool {
        self.quadratic_holds
            && self.rotation_invertible
            && self.rotation_square_commutes
            && self.s_coset_count as u64 == self.p
            && self.s_coefficient == Ratio::from_integer(self.p as i64 - 1)
            && self.unit_coefficient == Ratio::from_integer(self.p as i64)
    }
}

/// Verify, inside the Iwahori-level convolution algebra, the quadratic
/// relation for the reflection indicator with parameter p, invertibility of
/// the rotation indicator, and commutation of its square past the
/// reflection.
pub fn iwahori_relation_check(ctx: &PadicContext) -> Result<IwahoriRelationReport, PadicError> {
    let level = Level::Iwahori;
    let one = Ratio::from_integer(1);
    let s_mat = GL2Element::weyl_s();
    let pi = GL2Element::pi_matrix(ctx.p());

    let e = BiInvariantFunction::unit(ctx, level);
    let s = BiInvariantFunction::single(ctx, level, s_mat, one)?;
    let t = BiInvariantFunction::single(ctx, level, pi, one)?;
    let t_rev = BiInvariantFunction::single(ctx, level, pi.inverse(), one)?;

    let s_coset_count = right_coset_reps(ctx, level, &s_mat)?.len();

    let s_sq = convolve(ctx, &s, &s)?;
    let expected = s
        .scale(Ratio::from_integer(ctx.p() as i64 - 1))
        .add(ctx, &e.scale(Ratio::from_integer(ctx.p() as i64)))?;
    let quadratic_holds = functions_equal(ctx, &s_sq, &expected)?;
    let s_coefficient = s_sq.coefficient_at(ctx, &s_mat)?;
    let unit_coefficient = s_sq.coefficient_at(ctx, &GL2Element::identity())?;

    let rotation_invertible = functions_equal(ctx, &convolve(ctx, &t, &t_rev)?, &e)?
        && functions_equal(ctx, &convolve(ctx, &t_rev, &t)?, &e)?;

    let t2 = convolve(ctx, &t, &t)?;
    let rotation_square_commutes =
        functions_equal(ctx, &convolve(ctx, &t2, &s)?, &convolve(ctx, &s, &t2)?)?;

    Ok(IwahoriRelationReport {
        p: ctx.p(),
        s_coset_count,
        quadratic_holds,
        s_coefficient,
        unit_coefficient,
        rotation_invertible,
        rotation_square_commutes,
    })
}
