//! Affine Hecke algebra `H(m, r)` in its standard basis `{T_w}` indexed by
//! extended affine Weyl group elements, with exact coefficients in Q(r).
//!
//! Products are computed by factoring the left basis element into
//! `Pi^k s_{i_1} .. s_{i_len}` and folding the generators in from the right:
//! `T_Pi  * T_u = T_{Pi u}` always, and
//! `T_s_i * T_u = T_{s_i u}`                     if the length goes up,
//! `T_s_i * T_u = (r-1) T_u + r T_{s_i u}`       if the length goes down.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{Parameter, Rational, RationalFunction, ScalarError};
use crate::weyl::{self, ExtAffineWeylElement};

/// Element of `H(m, r)`: a finite linear combination of basis symbols `T_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    rank: usize,
    terms: BTreeMap<ExtAffineWeylElement, RationalFunction>,
}

impl HeckeElement {
    pub fn zero(rank: usize) -> Self {
        HeckeElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(w: ExtAffineWeylElement) -> Self {
        let mut terms = BTreeMap::new();
        let rank = w.rank();
        terms.insert(w, RationalFunction::one());
        HeckeElement { rank, terms }
    }

    pub fn unit(rank: usize) -> Self {
        HeckeElement::basis(ExtAffineWeylElement::identity(rank))
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (ExtAffineWeylElement, RationalFunction)>,
    ) -> Self {
        let mut out = HeckeElement::zero(rank);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffineWeylElement, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &ExtAffineWeylElement) -> RationalFunction {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    fn add_term(&mut self, w: ExtAffineWeylElement, c: RationalFunction) {
        assert_eq!(w.rank(), self.rank, "rank mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &HeckeElement) -> HeckeElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> HeckeElement {
        HeckeElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> HeckeElement {
        if c.is_zero() {
            return HeckeElement::zero(self.rank);
        }
        HeckeElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect(),
        }
    }

    /// Coefficient-wise evaluation at `r = value`; errs at a pole.
    pub fn specialize(&self, value: &Rational) -> Result<HeckeElement, ScalarError> {
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &self.terms {
            let v = c.specialize(value)?;
            out.add_term(w.clone(), RationalFunction::constant(v));
        }
        Ok(out)
    }

    /// True when every coefficient lies in Z[r] (no denominators).
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_element(&self.terms, "T"))
    }
}

/// Shared term formatting for `T[..]` and `G[..]` linear combinations.
pub(crate) fn format_element(
    terms: &BTreeMap<ExtAffineWeylElement, RationalFunction>,
    marker: &str,
) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (w, c)) in terms.iter().enumerate() {
        let negative = c.is_negative_leading();
        let mag = if negative { -c } else { c.clone() };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&mag.factor_string());
            out.push_str(" * ");
        }
        out.push_str(&basis_symbol(w, marker));
    }
    out
}

/// Canonical basis symbol, e.g. `T[Pi^2; 0 1]`, `T[Pi^0]`, `G[Pi^-1; 1]`.
pub(crate) fn basis_symbol(w: &ExtAffineWeylElement, marker: &str) -> String {
    let (k, word) = weyl::reduced_word(w);
    if word.is_empty() {
        format!("{marker}[Pi^{k}]")
    } else {
        let word = word
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("{marker}[Pi^{k}; {word}]")
    }
}

/// The algebra `H(m, r)`: rank plus the parameter (generic `r` or a value).
/// Multiplication must go through the algebra because the rewrite rule
/// depends on the parameter.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    rank: usize,
    parameter: Parameter,
    param_rf: RationalFunction,
}

impl HeckeAlgebra {
    pub fn new(rank: usize, parameter: Parameter) -> Self {
        assert!(rank >= 1, "rank must be positive");
        let param_rf = parameter.to_rational_function();
        HeckeAlgebra {
            rank,
            parameter,
            param_rf,
        }
    }

    pub fn generic(rank: usize) -> Self {
        HeckeAlgebra::new(rank, Parameter::Generic)
    }

    pub fn specialized(rank: usize, value: Rational) -> Self {
        HeckeAlgebra::new(rank, Parameter::Value(value))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parameter(&self) -> &Parameter {
        &self.parameter
    }

    pub fn unit(&self) -> HeckeElement {
        HeckeElement::unit(self.rank)
    }

    pub fn basis(&self, w: &ExtAffineWeylElement) -> HeckeElement {
        assert_eq!(w.rank(), self.rank, "rank mismatch");
        HeckeElement::basis(w.clone())
    }

    /// Generator `S_i = T_{s_i}` for `1 <= i <= rank-1`.
    pub fn s_generator(&self, i: usize) -> HeckeElement {
        self.basis(&weyl::simple_reflection(self.rank, i))
    }

    /// Generator `T = T_Pi` (invertible; see `t_inverse`).
    pub fn t_generator(&self) -> HeckeElement {
        self.basis(&weyl::pi_element(self.rank))
    }

    pub fn t_inverse(&self) -> HeckeElement {
        self.basis(&weyl::inverse(&weyl::pi_element(self.rank)))
    }

    /// Product of two elements, bilinear over basis products.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        assert_eq!(a.rank(), self.rank, "rank mismatch");
        assert_eq!(b.rank(), self.rank, "rank mismatch");
        let mut out = HeckeElement::zero(self.rank);
        for (v, cv) in &a.terms {
            let prod = self.basis_times(v, b);
            for (w, cw) in &prod.terms {
                out.add_term(w.clone(), cv * cw);
            }
        }
        out
    }

    /// `T_v * x` for a basis index `v`: factor `v` and fold right-to-left.
    fn basis_times(&self, v: &ExtAffineWeylElement, x: &HeckeElement) -> HeckeElement {
        let (k, word) = weyl::reduced_word(v);
        let mut acc = x.clone();
        for &i in word.iter().rev() {
            acc = self.simple_times(i, &acc);
        }
        self.pi_times(k, &acc)
    }

    /// `T_{s_i} * x` by the quadratic rewrite rule.
    fn simple_times(&self, i: usize, x: &HeckeElement) -> HeckeElement {
        let s = weyl::simple_reflection(self.rank, i);
        let r = &self.param_rf;
        let r_minus_one = r - &RationalFunction::one();
        let mut out = HeckeElement::zero(self.rank);
        for (u, c) in &x.terms {
            let su = weyl::multiply(&s, u);
            if weyl::length(&su) > weyl::length(u) {
                out.add_term(su, c.clone());
            } else {
                out.add_term(u.clone(), &r_minus_one * c);
                out.add_term(su, r * c);
            }
        }
        out
    }

    /// `T_Pi^k * x = sum c_u T_{Pi^k u}` (valid for any sign of `k`).
    fn pi_times(&self, k: i64, x: &HeckeElement) -> HeckeElement {
        if k == 0 {
            return x.clone();
        }
        let pik = weyl::power(&weyl::pi_element(self.rank), k);
        let mut out = HeckeElement::zero(self.rank);
        for (u, c) in &x.terms {
            out.add_term(weyl::multiply(&pik, u), c.clone());
        }
        out
    }

    /// Integer power of an element (non-negative exponents).
    pub fn pow(&self, a: &HeckeElement, k: u32) -> HeckeElement {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }
}

/// Outcome of one defining-relation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationStatus {
    Holds,
    Fails,
    /// The relation has no instances at this rank.
    Vacuous,
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: String,
    pub status: RelationStatus,
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub rank: usize,
    pub parameter: Parameter,
    pub checks: Vec<RelationCheck>,
    /// Set for rank 1 only: `T` commutes and is invertible.
    pub laurent_like: Option<bool>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != RelationStatus::Fails)
            && self.laurent_like.unwrap_or(true)
    }
}

/// Verify the defining relations of `H(m, r)` by direct expansion in the
/// basis: the quadratic relation for each `S_i`, the rotation relations
/// against `T` and `T^2`, the braid relation for adjacent pairs, and
/// commutation for distant pairs. Relations without instances at rank `m`
/// are reported as vacuous.
pub fn verify_defining_relations(m: usize, parameter: Parameter) -> RelationReport {
    let alg = HeckeAlgebra::new(m, parameter.clone());
    let mut checks = Vec::new();
    let unit = alg.unit();
    let r = parameter.to_rational_function();

    // (1) (S_i + 1)(S_i - r) = 0 for 1 <= i <= m-1.
    if m >= 2 {
        for i in 1..m {
            let s = alg.s_generator(i);
            let lhs = alg.mul(&s.add(&unit), &s.sub(&unit.scale(&r)));
            checks.push(RelationCheck {
                name: format!("quadratic_S{i}"),
                status: if lhs.is_zero() {
                    RelationStatus::Holds
                } else {
                    RelationStatus::Fails
                },
            });
        }
    } else {
        checks.push(RelationCheck {
            name: "quadratic".into(),
            status: RelationStatus::Vacuous,
        });
    }

    // (2) T^2 S_1 = S_{m-1} T^2.
    if m >= 2 {
        let t2 = alg.mul(&alg.t_generator(), &alg.t_generator());
        let lhs = alg.mul(&t2, &alg.s_generator(1));
        let rhs = alg.mul(&alg.s_generator(m - 1), &t2);
        checks.push(RelationCheck {
            name: "rotation_square".into(),
            status: if lhs == rhs {
                RelationStatus::Holds
            } else {
                RelationStatus::Fails
            },
        });
    } else {
        checks.push(RelationCheck {
            name: "rotation_square".into(),
            status: RelationStatus::Vacuous,
        });
    }

    // (3) T S_i = S_{i-1} T for 2 <= i <= m-1.
    if m >= 3 {
        for i in 2..m {
            let lhs = alg.mul(&alg.t_generator(), &alg.s_generator(i));
            let rhs = alg.mul(&alg.s_generator(i - 1), &alg.t_generator());
            checks.push(RelationCheck {
                name: format!("rotation_shift_S{i}"),
                status: if lhs == rhs {
                    RelationStatus::Holds
                } else {
                    RelationStatus::Fails
                },
            });
        }
    } else {
        checks.push(RelationCheck {
            name: "rotation_shift".into(),
            status: RelationStatus::Vacuous,
        });
    }

    // (4) S_i S_{i+1} S_i = S_{i+1} S_i S_{i+1} for 1 <= i <= m-2.
    if m >= 3 {
        for i in 1..m - 1 {
            let a = alg.s_generator(i);
            let b = alg.s_generator(i + 1);
            let lhs = alg.mul(&alg.mul(&a, &b), &a);
            let rhs = alg.mul(&alg.mul(&b, &a), &b);
            checks.push(RelationCheck {
                name: format!("braid_S{i}_S{}", i + 1),
                status: if lhs == rhs {
                    RelationStatus::Holds
                } else {
                    RelationStatus::Fails
                },
            });
        }
    } else {
        checks.push(RelationCheck {
            name: "braid".into(),
            status: RelationStatus::Vacuous,
        });
    }

    // (5) S_i S_j = S_j S_i for |i - j| >= 2.
    let mut any_distant = false;
    if m >= 4 {
        for i in 1..m {
            for j in i + 2..m {
                any_distant = true;
                let a = alg.s_generator(i);
                let b = alg.s_generator(j);
                let lhs = alg.mul(&a, &b);
                let rhs = alg.mul(&b, &a);
                checks.push(RelationCheck {
                    name: format!("commute_S{i}_S{j}"),
                    status: if lhs == rhs {
                        RelationStatus::Holds
                    } else {
                        RelationStatus::Fails
                    },
                });
            }
        }
    }
    if !any_distant {
        checks.push(RelationCheck {
            name: "commute_distant".into(),
            status: RelationStatus::Vacuous,
        });
    }

    // Rank 1: the algebra is the Laurent ring in T.
    let laurent_like = if m == 1 {
        let t = alg.t_generator();
        let tinv = alg.t_inverse();
        let inv_ok = alg.mul(&t, &tinv) == unit && alg.mul(&tinv, &t) == unit;
        let mut commutes = true;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let x = alg.basis(&weyl::power(&weyl::pi_element(1), a));
                let y = alg.basis(&weyl::power(&weyl::pi_element(1), b));
                if alg.mul(&x, &y) != alg.mul(&y, &x) {
                    commutes = false;
                }
            }
        }
        Some(inv_ok && commutes)
    } else {
        None
    };

    RelationReport {
        rank: m,
        parameter,
        checks,
        laurent_like,
    }
}

/// Parse the element grammar `coeff * T[Pi^k; i1 i2 ..] + ..` at rank `m`.
pub fn parse_hecke_element(m: usize, input: &str) -> Result<HeckeElement, crate::expr::ExprError> {
    crate::expr::parse_hecke(m, input)
}
