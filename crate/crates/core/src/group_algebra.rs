//! Group algebra of the extended affine Weyl group with coefficients in Q(r).
//! Products of basis elements are single basis elements (the group law), so
//! multiplication never spreads support.
//!
//! The rank-2 algebra is also checked against its abstract presentation
//! `C[S, T, T^-1] / (S^2 - 1, T^2 S - S T^2)` under `S -> s_1`, `T -> Pi`.

use std::collections::BTreeMap;
use std::fmt;

use crate::hecke::{basis_symbol, format_element};
use crate::scalars::{Rational, RationalFunction, ScalarError};
use crate::weyl::{self, ExtAffineWeylElement};

/// Element of the group algebra: finite linear combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    rank: usize,
    terms: BTreeMap<ExtAffineWeylElement, RationalFunction>,
}

impl GroupAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        GroupAlgebraElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(w: ExtAffineWeylElement) -> Self {
        let rank = w.rank();
        let mut terms = BTreeMap::new();
        terms.insert(w, RationalFunction::one());
        GroupAlgebraElement { rank, terms }
    }

    pub fn unit(rank: usize) -> Self {
        GroupAlgebraElement::basis(ExtAffineWeylElement::identity(rank))
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (ExtAffineWeylElement, RationalFunction)>,
    ) -> Self {
        let mut out = GroupAlgebraElement::zero(rank);
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
        match self.terms.entry(w) {
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

    pub fn add(&self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> GroupAlgebraElement {
        if c.is_zero() {
            return GroupAlgebraElement::zero(self.rank);
        }
        GroupAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect(),
        }
    }

    /// Convolution product extended bilinearly from the group law.
    pub fn mul(&self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = GroupAlgebraElement::zero(self.rank);
        for (v, cv) in &self.terms {
            for (w, cw) in &rhs.terms {
                out.add_term(weyl::multiply(v, w), cv * cw);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::unit(self.rank);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient-wise evaluation at `r = value`; errs at a pole.
    pub fn specialize(&self, value: &Rational) -> Result<GroupAlgebraElement, ScalarError> {
        let mut out = GroupAlgebraElement::zero(self.rank);
        for (w, c) in &self.terms {
            let v = c.specialize(value)?;
            out.add_term(w.clone(), RationalFunction::constant(v));
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_element(&self.terms, "G"))
    }
}

/// Canonical `G[..]` symbol for a group element.
pub fn group_basis_symbol(w: &ExtAffineWeylElement) -> String {
    basis_symbol(w, "G")
}

/// Parse the element grammar `coeff * G[Pi^k; i1 ..] + ..` at rank `n`.
pub fn parse_group_element(
    n: usize,
    input: &str,
) -> Result<GroupAlgebraElement, crate::expr::ExprError> {
    crate::expr::parse_group(n, input)
}

/// Letters of the abstract presentation alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationLetter {
    S,
    T,
    TInv,
}

/// Canonical form of a word in the quotient
/// `C[S, T, T^-1] / (S^2 - 1, T^2 S - S T^2)`.
///
/// Writing `U = T S T^-1`, the relations say `S^2 = U^2 = 1` and conjugation
/// by `T` swaps `S` and `U`. Every word therefore rewrites uniquely as an
/// alternating word in `{S, U}` followed by a power of `T`:
/// `x_1 x_2 .. x_j * T^k` with `x_i` alternating. That pair is the normal
/// form computed here (letters: `false = S`, `true = U`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientNormalForm {
    pub alternating: Vec<bool>,
    pub t_power: i64,
}

impl fmt::Display for QuotientNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &u in &self.alternating {
            write!(f, "{}", if u { "U " } else { "S " })?;
        }
        write!(f, "T^{}", self.t_power)
    }
}

/// Rewrite a word left-to-right: keep the processed prefix as
/// `alt_word * T^k`; absorbing `T^e` bumps `k`, absorbing `S` appends
/// `T^k S T^-k` (which is `S` for even `k`, `U` for odd `k`) with the
/// involution cancellation applied.
pub fn quotient_normal_form(word: &[PresentationLetter]) -> QuotientNormalForm {
    let mut alternating: Vec<bool> = Vec::new();
    let mut k: i64 = 0;
    for letter in word {
        match letter {
            PresentationLetter::T => k += 1,
            PresentationLetter::TInv => k -= 1,
            PresentationLetter::S => {
                let x = k.rem_euclid(2) == 1;
                if alternating.last() == Some(&x) {
                    alternating.pop();
                } else {
                    alternating.push(x);
                }
            }
        }
    }
    QuotientNormalForm {
        alternating,
        t_power: k,
    }
}

/// Image of a presentation word in the rank-2 group under
/// `S -> s_1`, `T -> Pi`.
pub fn presentation_image(word: &[PresentationLetter]) -> ExtAffineWeylElement {
    let s1 = weyl::simple_reflection(2, 1);
    let pi = weyl::pi_element(2);
    let pi_inv = weyl::inverse(&pi);
    let mut out = ExtAffineWeylElement::identity(2);
    for letter in word {
        let g = match letter {
            PresentationLetter::S => &s1,
            PresentationLetter::T => &pi,
            PresentationLetter::TInv => &pi_inv,
        };
        out = weyl::multiply(&out, g);
    }
    out
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    /// `S^2 - 1` maps to zero in the group algebra.
    pub involution_relation_holds: bool,
    /// `T^2 S - S T^2` maps to zero in the group algebra.
    pub rotation_relation_holds: bool,
    pub words_checked: usize,
    pub distinct_normal_forms: usize,
    pub distinct_images: usize,
    /// Words with equal normal forms always had equal group images.
    pub normal_form_sound: bool,
    /// Distinct normal forms always had distinct group images.
    pub injective_on_normal_forms: bool,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.involution_relation_holds
            && self.rotation_relation_holds
            && self.normal_form_sound
            && self.injective_on_normal_forms
    }
}

/// Check the rank-2 group algebra against the abstract presentation: the two
/// relators map to zero, and over all words of length at most `max_word_len`
/// in `{S, T, T^-1}` the normal form classifies words exactly as the group
/// does (evidence that the quotient map is an isomorphism).
pub fn presentation_check_rank2(max_word_len: usize) -> PresentationReport {
    let s = GroupAlgebraElement::basis(weyl::simple_reflection(2, 1));
    let t = GroupAlgebraElement::basis(weyl::pi_element(2));
    let unit = GroupAlgebraElement::unit(2);

    let involution = s.mul(&s).sub(&unit);
    let t2 = t.mul(&t);
    let rotation = t2.mul(&s).sub(&s.mul(&t2));

    let mut by_normal_form: BTreeMap<QuotientNormalForm, ExtAffineWeylElement> = BTreeMap::new();
    let mut normal_form_sound = true;
    let mut words_checked = 0usize;

    let letters = [
        PresentationLetter::S,
        PresentationLetter::T,
        PresentationLetter::TInv,
    ];
    let mut stack: Vec<Vec<PresentationLetter>> = vec![vec![]];
    while let Some(word) = stack.pop() {
        words_checked += 1;
        let nf = quotient_normal_form(&word);
        let image = presentation_image(&word);
        match by_normal_form.get(&nf) {
            None => {
                by_normal_form.insert(nf, image);
            }
            Some(prev) => {
                if *prev != image {
                    normal_form_sound = false;
                }
            }
        }
        if word.len() < max_word_len {
            for l in letters {
                let mut next = word.clone();
                next.push(l);
                stack.push(next);
            }
        }
    }

    let mut seen_images = std::collections::BTreeSet::new();
    let mut injective = true;
    for image in by_normal_form.values() {
        if !seen_images.insert(image.clone()) {
            injective = false;
        }
    }

    PresentationReport {
        involution_relation_holds: involution.is_zero(),
        rotation_relation_holds: rotation.is_zero(),
        words_checked,
        distinct_normal_forms: by_normal_form.len(),
        distinct_images: seen_images.len(),
        normal_form_sound,
        injective_on_normal_forms: injective,
    }
}
