//! Exact convolution algebra of bi-invariant functions on invertible 2x2
//! rational matrices over a chosen prime p, at two compact-open levels: the
//! full integral level (tag "K") and its upper-triangular-mod-p refinement
//! (tag "I"). Functions are stored by double-coset representatives with
//! exact rational values; coset decompositions are enumerated over finite
//! congruence transversals, so every count and structure constant is exact.
//!
//! The Haar measure is normalized so the level subgroup in force has measure
//! one; with that normalization the indicator of the subgroup is the unit of
//! the algebra and all structure constants are integers.

mod cosets;

pub use cosets::{
    congruence_transversal, convolve, double_coset_equal, functions_equal, iwahori_relation_check,
    l1_norm, right_coset_count_via_index, right_coset_reps, IwahoriRelationReport,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact machine-word rational scalar used for matrix entries and function
/// values; every quantity in this module stays desk-scale.
pub type Ratio = num_rational::Rational64;

pub const DEFAULT_SPREAD_BOUND: i64 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("p must be prime, got {0}")]
    NotPrime(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix valuation spread {spread} exceeds the configured bound {bound}")]
    SpreadExceeded { spread: i64, bound: i64 },
    #[error("congruence transversal needs {iterations} iterations, above the cap {cap}")]
    TransversalTooLarge { iterations: u128, cap: u64 },
    #[error("operand mismatch: {0}")]
    Mismatch(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid function JSON: {0}")]
    Decode(String),
}

/// p-adic valuation value: an integer, or +infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

/// The p-adic valuation of an exact rational; +infinity for zero.
pub fn valuation(x: Ratio, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let p = p as i64;
    let mut v = 0i64;
    let mut n = *x.numer();
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    let mut d = *x.denom();
    while d % p == 0 {
        d /= p;
        v -= 1;
    }
    Valuation::Finite(v)
}

/// The two compact-open levels supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// All entries integral, determinant a unit.
    MaximalCompact,
    /// Additionally lower-left entry divisible by p.
    Iwahori,
}

impl Level {
    pub fn tag(self) -> &'static str {
        match self {
            Level::MaximalCompact => "K",
            Level::Iwahori => "I",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self, PadicError> {
        match tag {
            "K" => Ok(Level::MaximalCompact),
            "I" => Ok(Level::Iwahori),
            other => Err(PadicError::Decode(format!(
                "level must be \"K\" or \"I\", got {other:?}"
            ))),
        }
    }
}

/// Which side a coset comparison is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetSide {
    /// Cosets gU; equality means g^-1 h lies in the subgroup.
    Left,
    /// Cosets Ug; equality means h g^-1 lies in the subgroup.
    Right,
}

/// An invertible 2x2 matrix with exact rational entries, stored row-major
/// as [a, b, c, d].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GL2Element {
    entries: [Ratio; 4],
}

impl GL2Element {
    pub fn new(a: Ratio, b: Ratio, c: Ratio, d: Ratio) -> Result<Self, PadicError> {
        let g = GL2Element {
            entries: [a, b, c, d],
        };
        if g.det().is_zero() {
            return Err(PadicError::Singular);
        }
        Ok(g)
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self, PadicError> {
        GL2Element::new(
            Ratio::from_integer(a),
            Ratio::from_integer(b),
            Ratio::from_integer(c),
            Ratio::from_integer(d),
        )
    }

    pub fn identity() -> Self {
        GL2Element::from_integers(1, 0, 0, 1).expect("identity is invertible")
    }

    pub fn diagonal(a: Ratio, d: Ratio) -> Result<Self, PadicError> {
        GL2Element::new(a, Ratio::zero(), Ratio::zero(), d)
    }

    /// The finite reflection matrix [[0,1],[1,0]].
    pub fn weyl_s() -> Self {
        GL2Element::from_integers(0, 1, 1, 0).expect("reflection is invertible")
    }

    /// The rotation matrix [[0,1],[p,0]] with the uniformiser in the corner;
    /// it normalizes the Iwahori-level subgroup.
    pub fn pi_matrix(p: u64) -> Self {
        GL2Element::from_integers(0, 1, p as i64, 0).expect("rotation is invertible")
    }

    pub fn entries(&self) -> &[Ratio; 4] {
        &self.entries
    }

    pub fn det(&self) -> Ratio {
        let [a, b, c, d] = self.entries;
        a * d - b * c
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.entries;
        let det = self.det();
        GL2Element {
            entries: [d / det, -b / det, -c / det, a / det],
        }
    }

    pub fn mul(&self, rhs: &GL2Element) -> GL2Element {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        GL2Element {
            entries: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        }
    }

    /// Minimum entry valuation (finite: an invertible matrix has a nonzero
    /// entry).
    pub(crate) fn min_valuation(&self, p: u64) -> i64 {
        self.entries
            .iter()
            .filter_map(|&x| match valuation(x, p) {
                Valuation::Finite(v) => Some(v),
                Valuation::Infinity => None,
            })
            .min()
            .expect("invertible matrix has a nonzero entry")
    }

    /// Valuation spread v(det) - 2*min entry valuation; nonnegative, zero
    /// exactly on scalar multiples of unit-determinant integral-direction
    /// matrices. Governs the congruence level needed to enumerate cosets.
    pub(crate) fn spread(&self, p: u64) -> i64 {
        let vdet = match valuation(self.det(), p) {
            Valuation::Finite(v) => v,
            Valuation::Infinity => unreachable!("determinant is nonzero"),
        };
        vdet - 2 * self.min_valuation(p)
    }
}

impl fmt::Display for GL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Fixed prime plus the spread bound that caps coset-enumeration work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    spread_bound: i64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicContext {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        PadicContext::with_spread_bound(p, DEFAULT_SPREAD_BOUND)
    }

    pub fn with_spread_bound(p: u64, spread_bound: i64) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        Ok(PadicContext { p, spread_bound })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn spread_bound(&self) -> i64 {
        self.spread_bound
    }

    pub fn val(&self, x: Ratio) -> Valuation {
        valuation(x, self.p)
    }

    /// Elementary-divisor valuations (d1, d2) with d1 <= d2; these classify
    /// the double cosets at the maximal-compact level, so two matrices lie
    /// in the same K-level double coset exactly when their digits agree.
    pub fn smith_digits(&self, g: &GL2Element) -> (i64, i64) {
        let d1 = g.min_valuation(self.p);
        let vdet = match self.val(g.det()) {
            Valuation::Finite(v) => v,
            Valuation::Infinity => unreachable!("determinant is nonzero"),
        };
        (d1, vdet - d1)
    }

    /// The canonical diagonal representative diag(p^d1, p^d2) of a
    /// maximal-compact double coset with the given digits.
    pub fn smith_representative(&self, digits: (i64, i64)) -> GL2Element {
        GL2Element::diagonal(self.p_power(digits.0), self.p_power(digits.1))
            .expect("powers of p are nonzero")
    }

    fn p_power(&self, e: i64) -> Ratio {
        if e >= 0 {
            Ratio::from_integer((self.p as i64).pow(e as u32))
        } else {
            Ratio::new(1, (self.p as i64).pow((-e) as u32))
        }
    }

    /// Valuation-based membership test for the level subgroups.
    pub fn in_level_subgroup(&self, g: &GL2Element, level: Level) -> bool {
        let zero = Valuation::Finite(0);
        let integral = g.entries.iter().all(|&x| self.val(x) >= zero);
        let unit_det = self.val(g.det()) == zero;
        let corner_ok = match level {
            Level::MaximalCompact => true,
            Level::Iwahori => self.val(g.entries[2]) >= Valuation::Finite(1),
        };
        integral && unit_det && corner_ok
    }

    /// Same-coset test: left cosets gU compare via g^-1 h, right cosets Ug
    /// via h g^-1.
    pub fn coset_equal(
        &self,
        g: &GL2Element,
        h: &GL2Element,
        level: Level,
        side: CosetSide,
    ) -> bool {
        let probe = match side {
            CosetSide::Left => g.inverse().mul(h),
            CosetSide::Right => h.mul(&g.inverse()),
        };
        self.in_level_subgroup(&probe, level)
    }
}

/// A finitely supported bi-invariant function, stored as one exact value per
/// double coset of its level subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiInvariantFunction {
    p: u64,
    level: Level,
    terms: BTreeMap<GL2Element, Ratio>,
}

impl BiInvariantFunction {
    /// Validating constructor: values must be nonzero and representatives
    /// must lie in pairwise distinct double cosets.
    pub fn new(
        ctx: &PadicContext,
        level: Level,
        terms: Vec<(GL2Element, Ratio)>,
    ) -> Result<Self, PadicError> {
        for (_, v) in &terms {
            if v.is_zero() {
                return Err(PadicError::InvalidFunction(
                    "zero values are not stored".to_owned(),
                ));
            }
        }
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                if double_coset_equal(ctx, &terms[i].0, &terms[j].0, level)? {
                    return Err(PadicError::InvalidFunction(format!(
                        "representatives {} and {} share a double coset",
                        terms[i].0, terms[j].0
                    )));
                }
            }
        }
        Ok(BiInvariantFunction {
            p: ctx.p(),
            level,
            terms: terms.into_iter().collect(),
        })
    }

    /// Construction bypassing validation, for internal use where pairwise
    /// distinctness holds by construction.
    pub(crate) fn from_distinct_terms(
        p: u64,
        level: Level,
        terms: Vec<(GL2Element, Ratio)>,
    ) -> Self {
        BiInvariantFunction {
            p,
            level,
            terms: terms.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// The indicator of a single double coset, scaled by `value`.
    pub fn single(
        ctx: &PadicContext,
        level: Level,
        rep: GL2Element,
        value: Ratio,
    ) -> Result<Self, PadicError> {
        BiInvariantFunction::new(ctx, level, vec![(rep, value)])
    }

    /// The indicator of the level subgroup itself: the unit of the algebra.
    pub fn unit(ctx: &PadicContext, level: Level) -> Self {
        BiInvariantFunction::from_distinct_terms(
            ctx.p(),
            level,
            vec![(GL2Element::identity(), Ratio::from_integer(1))],
        )
    }

    pub fn zero(ctx: &PadicContext, level: Level) -> Self {
        BiInvariantFunction::from_distinct_terms(ctx.p(), level, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GL2Element, &Ratio)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Ratio) -> Self {
        if c.is_zero() {
            return BiInvariantFunction {
                p: self.p,
                level: self.level,
                terms: BTreeMap::new(),
            };
        }
        BiInvariantFunction {
            p: self.p,
            level: self.level,
            terms: self.terms.iter().map(|(g, v)| (*g, c * v)).collect(),
        }
    }

    /// Pointwise sum; merges terms that name the same double coset by
    /// different representatives.
    pub fn add(&self, ctx: &PadicContext, rhs: &BiInvariantFunction) -> Result<Self, PadicError> {
        if self.p != rhs.p || self.level != rhs.level {
            return Err(PadicError::Mismatch(
                "sum operands must share a prime and a level".to_owned(),
            ));
        }
        let mut terms: Vec<(GL2Element, Ratio)> =
            self.terms.iter().map(|(g, v)| (*g, *v)).collect();
        'outer: for (rep, v) in rhs.terms() {
            for (g, acc) in terms.iter_mut() {
                if double_coset_equal(ctx, g, rep, self.level)? {
                    *acc += *v;
                    continue 'outer;
                }
            }
            terms.push((*rep, *v));
        }
        Ok(BiInvariantFunction::from_distinct_terms(
            self.p, self.level, terms,
        ))
    }

    /// The exact value at a point: the stored value of the double coset
    /// containing it, or zero.
    pub fn coefficient_at(&self, ctx: &PadicContext, x: &GL2Element) -> Result<Ratio, PadicError> {
        for (rep, v) in &self.terms {
            if double_coset_equal(ctx, rep, x, self.level)? {
                return Ok(*v);
            }
        }
        Ok(Ratio::zero())
    }

    pub fn to_json_string(&self) -> String {
        let wire = FunctionWire {
            p: self.p,
            level: self.level.tag().to_owned(),
            terms: self
                .terms
                .iter()
                .map(|(g, v)| TermWire {
                    rep: {
                        let e = g.entries();
                        [
                            [*e[0].numer(), *e[0].denom()],
                            [*e[1].numer(), *e[1].denom()],
                            [*e[2].numer(), *e[2].denom()],
                            [*e[3].numer(), *e[3].denom()],
                        ]
                    },
                    value: [*v.numer(), *v.denom()],
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("function serialization is infallible")
    }

    pub fn from_json_str(ctx: &PadicContext, input: &str) -> Result<Self, PadicError> {
        let wire: FunctionWire =
            serde_json::from_str(input).map_err(|e| PadicError::Decode(e.to_string()))?;
        if wire.p != ctx.p() {
            return Err(PadicError::Decode(format!(
                "function is over p = {} but the context uses p = {}",
                wire.p,
                ctx.p()
            )));
        }
        let level = Level::from_tag(&wire.level)?;
        let ratio = |pair: [i64; 2]| -> Result<Ratio, PadicError> {
            if pair[1] == 0 {
                return Err(PadicError::Decode("zero denominator".to_owned()));
            }
            Ok(Ratio::new(pair[0], pair[1]))
        };
        let mut terms = Vec::with_capacity(wire.terms.len());
        for t in &wire.terms {
            let g = GL2Element::new(
                ratio(t.rep[0])?,
                ratio(t.rep[1])?,
                ratio(t.rep[2])?,
                ratio(t.rep[3])?,
            )?;
            terms.push((g, ratio(t.value)?));
        }
        BiInvariantFunction::new(ctx, level, terms)
    }
}

impl fmt::Display for BiInvariantFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, v)| format!("{v} * 1[{}; {g}]", self.level.tag()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct FunctionWire {
    p: u64,
    level: String,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    rep: [[i64; 2]; 4],
    value: [i64; 2],
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Ratio {
        Ratio::new(n, d)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(Ratio::from_integer(12), 2), Valuation::Finite(2));
        assert_eq!(valuation(q(1, 3), 3), Valuation::Finite(-1));
        assert_eq!(valuation(Ratio::zero(), 5), Valuation::Infinity);
        assert_eq!(valuation(q(45, 4), 3), Valuation::Finite(2));
        assert_eq!(valuation(q(-45, 4), 3), Valuation::Finite(2));
        assert!(Valuation::Infinity > Valuation::Finite(1_000_000));
        assert!(Valuation::Finite(-1) < Valuation::Finite(0));
    }

    #[test]
    fn context_requires_a_prime() {
        assert!(PadicContext::new(2).is_ok());
        assert!(PadicContext::new(3).is_ok());
        assert!(PadicContext::new(5).is_ok());
        assert_eq!(PadicContext::new(4).unwrap_err(), PadicError::NotPrime(4));
        assert_eq!(PadicContext::new(1).unwrap_err(), PadicError::NotPrime(1));
        assert_eq!(PadicContext::new(0).unwrap_err(), PadicError::NotPrime(0));
    }

    #[test]
    fn matrix_arithmetic_round_trips() {
        let g = GL2Element::from_integers(1, 2, 3, 4).unwrap();
        assert_eq!(g.det(), Ratio::from_integer(-2));
        assert_eq!(g.mul(&g.inverse()), GL2Element::identity());
        assert_eq!(g.inverse().mul(&g), GL2Element::identity());
        assert_eq!(
            GL2Element::from_integers(1, 2, 2, 4).unwrap_err(),
            PadicError::Singular
        );
    }

    #[test]
    fn level_membership_cases() {
        let ctx = PadicContext::new(3).unwrap();
        let id = GL2Element::identity();
        assert!(ctx.in_level_subgroup(&id, Level::MaximalCompact));
        assert!(ctx.in_level_subgroup(&id, Level::Iwahori));

        // The reflection is integral with unit determinant but has a unit in
        // the corner, so it is excluded at the finer level.
        let s = GL2Element::weyl_s();
        assert!(ctx.in_level_subgroup(&s, Level::MaximalCompact));
        assert!(!ctx.in_level_subgroup(&s, Level::Iwahori));

        let lower = GL2Element::from_integers(1, 0, 3, 1).unwrap();
        assert!(ctx.in_level_subgroup(&lower, Level::Iwahori));
        let lower_unit = GL2Element::from_integers(1, 0, 1, 1).unwrap();
        assert!(ctx.in_level_subgroup(&lower_unit, Level::MaximalCompact));
        assert!(!ctx.in_level_subgroup(&lower_unit, Level::Iwahori));

        // Determinant valuation 1: not in either level subgroup.
        let d = GL2Element::from_integers(1, 0, 0, 3).unwrap();
        assert!(!ctx.in_level_subgroup(&d, Level::MaximalCompact));
        // Rotation matrix likewise.
        assert!(!ctx.in_level_subgroup(&GL2Element::pi_matrix(3), Level::MaximalCompact));
        // Non-integral entries fail regardless of determinant.
        let half = GL2Element::new(
            q(1, 3),
            Ratio::zero(),
            Ratio::zero(),
            Ratio::from_integer(3),
        )
        .unwrap();
        assert!(!ctx.in_level_subgroup(&half, Level::MaximalCompact));
    }

    #[test]
    fn coset_equality_examples() {
        let ctx = PadicContext::new(5).unwrap();
        let d = GL2Element::from_integers(1, 0, 0, 5).unwrap();
        let u = GL2Element::from_integers(2, 1, 5, 3).unwrap();
        assert!(ctx.in_level_subgroup(&u, Level::Iwahori));
        // u*g stays in the right coset U*g; g*u stays in the left coset g*U.
        assert!(ctx.coset_equal(&d, &u.mul(&d), Level::MaximalCompact, CosetSide::Right));
        assert!(ctx.coset_equal(&d, &d.mul(&u), Level::MaximalCompact, CosetSide::Left));
        // Conjugation by d moves a corner-unit matrix out of the subgroup,
        // so the opposite sides fail for such a factor.
        let w = GL2Element::from_integers(1, 1, 1, 2).unwrap();
        assert!(ctx.in_level_subgroup(&w, Level::MaximalCompact));
        assert!(!ctx.coset_equal(&d, &w.mul(&d), Level::MaximalCompact, CosetSide::Left));
        assert!(!ctx.coset_equal(&d, &d.mul(&w), Level::MaximalCompact, CosetSide::Right));
        // Different digit types never share a coset.
        let e = GL2Element::identity();
        assert!(!ctx.coset_equal(&d, &e, Level::MaximalCompact, CosetSide::Right));
        assert!(!ctx.coset_equal(&d, &e, Level::MaximalCompact, CosetSide::Left));
    }

    #[test]
    fn smith_digits_classify_scale_and_shape() {
        let ctx = PadicContext::new(3).unwrap();
        let digits = |g: &GL2Element| ctx.smith_digits(g);
        assert_eq!(digits(&GL2Element::identity()), (0, 0));
        assert_eq!(digits(&GL2Element::weyl_s()), (0, 0));
        assert_eq!(
            digits(&GL2Element::from_integers(1, 0, 0, 3).unwrap()),
            (0, 1)
        );
        assert_eq!(
            digits(&GL2Element::from_integers(3, 0, 0, 3).unwrap()),
            (1, 1)
        );
        assert_eq!(
            digits(&GL2Element::from_integers(1, 0, 0, 9).unwrap()),
            (0, 2)
        );
        let neg = GL2Element::new(
            q(1, 3),
            Ratio::zero(),
            Ratio::zero(),
            Ratio::from_integer(3),
        )
        .unwrap();
        assert_eq!(digits(&neg), (-1, 1));
        assert_eq!(
            ctx.smith_representative((-1, 1)),
            GL2Element::new(
                q(1, 3),
                Ratio::zero(),
                Ratio::zero(),
                Ratio::from_integer(3)
            )
            .unwrap()
        );
    }

    #[test]
    fn function_validation_rejects_bad_terms() {
        let ctx = PadicContext::new(3).unwrap();
        let s = GL2Element::weyl_s();
        let zero_value = BiInvariantFunction::new(&ctx, Level::Iwahori, vec![(s, Ratio::zero())]);
        assert!(matches!(zero_value, Err(PadicError::InvalidFunction(_))));

        // Two representatives of the same double coset are rejected.
        let d = GL2Element::from_integers(1, 0, 0, 3).unwrap();
        let d_conj = GL2Element::from_integers(3, 0, 0, 1).unwrap();
        let dup = BiInvariantFunction::new(
            &ctx,
            Level::MaximalCompact,
            vec![
                (d, Ratio::from_integer(1)),
                (d_conj, Ratio::from_integer(2)),
            ],
        );
        assert!(matches!(dup, Err(PadicError::InvalidFunction(_))));
    }

    #[test]
    fn json_round_trip_and_golden_forms() {
        let ctx = PadicContext::new(2).unwrap();
        let unit = BiInvariantFunction::unit(&ctx, Level::Iwahori);
        let s = unit.to_json_string();
        assert_eq!(
            s,
            r#"{"p":2,"level":"I","terms":[{"rep":[[1,1],[0,1],[0,1],[1,1]],"value":[1,1]}]}"#
        );
        assert_eq!(BiInvariantFunction::from_json_str(&ctx, &s).unwrap(), unit);

        let two_terms = BiInvariantFunction::new(
            &ctx,
            Level::MaximalCompact,
            vec![
                (GL2Element::identity(), q(-3, 2)),
                (GL2Element::from_integers(1, 0, 0, 2).unwrap(), q(1, 1)),
            ],
        )
        .unwrap();
        let s2 = two_terms.to_json_string();
        assert_eq!(
            BiInvariantFunction::from_json_str(&ctx, &s2).unwrap(),
            two_terms
        );

        // Prime mismatch, bad level, zero denominators, singular reps.
        assert!(matches!(
            BiInvariantFunction::from_json_str(&ctx, r#"{"p":3,"level":"I","terms":[]}"#),
            Err(PadicError::Decode(_))
        ));
        assert!(matches!(
            BiInvariantFunction::from_json_str(&ctx, r#"{"p":2,"level":"X","terms":[]}"#),
            Err(PadicError::Decode(_))
        ));
        assert!(matches!(
            BiInvariantFunction::from_json_str(
                &ctx,
                r#"{"p":2,"level":"K","terms":[{"rep":[[1,0],[0,1],[0,1],[1,1]],"value":[1,1]}]}"#
            ),
            Err(PadicError::Decode(_))
        ));
        assert!(matches!(
            BiInvariantFunction::from_json_str(
                &ctx,
                r#"{"p":2,"level":"K","terms":[{"rep":[[1,1],[1,1],[1,1],[1,1]],"value":[1,1]}]}"#
            ),
            Err(PadicError::Singular)
        ));
    }

    #[test]
    fn scale_and_display() {
        let ctx = PadicContext::new(3).unwrap();
        let unit = BiInvariantFunction::unit(&ctx, Level::MaximalCompact);
        let scaled = unit.scale(q(3, 2));
        assert_eq!(
            scaled
                .coefficient_at(&ctx, &GL2Element::identity())
                .unwrap(),
            q(3, 2)
        );
        assert!(unit.scale(Ratio::zero()).is_zero());
        assert_eq!(unit.to_string(), "1 * 1[K; [[1, 0], [0, 1]]]");
        assert_eq!(
            BiInvariantFunction::zero(&ctx, Level::Iwahori).to_string(),
            "0"
        );
    }
}
