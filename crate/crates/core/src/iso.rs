//! Explicit isomorphism between the rank-2 convolution algebra and the group
//! algebra of the rank-2 extended affine Weyl group.
//!
//! The forward map sends `T[Pi] -> Pi` and `T[s_1] -> sbar_1` where
//! `sbar_1 = ((r+1)/2) s_1 + ((r-1)/2)`; the inverse map divides by `r + 1`,
//! so the specialization `r = -1` is rejected at construction time.
//!
//! The rank-3 story is different: the analogous `sbar_i` fail the braid
//! relation, and [`braid_obstruction`] returns the exact defect
//! `sbar_1 sbar_2 sbar_1 - sbar_2 sbar_1 sbar_2`.

use thiserror::Error;

use crate::group_algebra::GroupAlgebraElement;
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::scalars::{Parameter, Rational, RationalFunction};
use crate::weyl;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    /// The inverse basis change divides by `r + 1`.
    #[error("parameter value -1 is rejected: the inverse basis change divides by r + 1")]
    ParameterPole,
}

/// Precomputed data for applying the isomorphism in either direction at a
/// fixed parameter (generic or a specialized value).
#[derive(Debug, Clone)]
pub struct IsoContext {
    parameter: Parameter,
    algebra: HeckeAlgebra,
    s_bar: [GroupAlgebraElement; 2],
    x_bar: [HeckeElement; 2],
}

/// `((r+1)/2) s_i + ((r-1)/2)` in the rank-`n` group algebra.
fn s_bar_element(n: usize, i: usize, param_rf: &RationalFunction) -> GroupAlgebraElement {
    let two = RationalFunction::integer(2);
    let one = RationalFunction::one();
    let half_up = (param_rf + &one)
        .checked_div(&two)
        .expect("division by the nonzero constant 2");
    let half_down = (param_rf - &one)
        .checked_div(&two)
        .expect("division by the nonzero constant 2");
    GroupAlgebraElement::basis(weyl::simple_reflection(n, i))
        .scale(&half_up)
        .add(&GroupAlgebraElement::unit(n).scale(&half_down))
}

impl IsoContext {
    pub fn new(parameter: Parameter) -> Result<Self, IsoError> {
        let param_rf = parameter.to_rational_function();
        let one = RationalFunction::one();
        let two = RationalFunction::integer(2);
        let shifted = &param_rf + &one;

        // x_1 = (2/(r+1)) T[s_1] - ((r-1)/(r+1)); the divisions fail exactly
        // at the rejected specialization.
        let x_scale = two
            .checked_div(&shifted)
            .map_err(|_| IsoError::ParameterPole)?;
        let x_shift = (&param_rf - &one)
            .checked_div(&shifted)
            .map_err(|_| IsoError::ParameterPole)?;

        let algebra = HeckeAlgebra::new(2, parameter.clone());
        let x1 = algebra
            .s_generator(1)
            .scale(&x_scale)
            .sub(&algebra.unit().scale(&x_shift));
        let x0 = {
            let t = algebra.t_generator();
            let t_inv = algebra.t_inverse();
            algebra.mul(&algebra.mul(&t, &x1), &t_inv)
        };

        let s1 = s_bar_element(2, 1, &param_rf);
        let s0 = {
            let p = GroupAlgebraElement::basis(weyl::pi_element(2));
            let p_inv = GroupAlgebraElement::basis(weyl::inverse(&weyl::pi_element(2)));
            p.mul(&s1).mul(&p_inv)
        };

        Ok(IsoContext {
            parameter,
            algebra,
            s_bar: [s0, s1],
            x_bar: [x0, x1],
        })
    }

    pub fn generic() -> Self {
        IsoContext::new(Parameter::Generic).expect("the generic parameter has no pole")
    }

    pub fn at(value: Rational) -> Result<Self, IsoError> {
        IsoContext::new(Parameter::Value(value))
    }

    pub fn parameter(&self) -> &Parameter {
        &self.parameter
    }

    /// The rank-2 convolution algebra this context maps out of.
    pub fn hecke_algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    /// Image of the generator `T[s_1]` under the forward map.
    pub fn s1_bar(&self) -> &GroupAlgebraElement {
        &self.s_bar[1]
    }

    /// Forward map: send each basis element `T_w` with `w = Pi^k s_{i_1} ..
    /// s_{i_L}` (canonical reduced word) to `Pi^k sbar_{i_1} .. sbar_{i_L}`
    /// and extend linearly over the coefficients.
    pub fn phi(&self, a: &HeckeElement) -> GroupAlgebraElement {
        assert_eq!(a.rank(), 2, "the isomorphism is defined at rank 2");
        let pi = weyl::pi_element(2);
        let mut out = GroupAlgebraElement::zero(2);
        for (w, c) in a.terms() {
            let (k, word) = weyl::reduced_word(w);
            let mut image = GroupAlgebraElement::basis(weyl::power(&pi, k));
            for i in word {
                image = image.mul(&self.s_bar[i]);
            }
            out = out.add(&image.scale(c));
        }
        out
    }

    /// Inverse map: send each group element `w = Pi^k s_{i_1} .. s_{i_L}` to
    /// `T[Pi]^k x_{i_1} .. x_{i_L}` where `x_1 = (2/(r+1)) T[s_1] -
    /// ((r-1)/(r+1))` and `x_0 = T[Pi] x_1 T[Pi]^-1`.
    pub fn phi_inverse(&self, a: &GroupAlgebraElement) -> HeckeElement {
        assert_eq!(a.rank(), 2, "the isomorphism is defined at rank 2");
        let pi = weyl::pi_element(2);
        let mut out = HeckeElement::zero(2);
        for (w, c) in a.terms() {
            let (k, word) = weyl::reduced_word(w);
            let mut image = self.algebra.basis(&weyl::power(&pi, k));
            for i in word {
                image = self.algebra.mul(&image, &self.x_bar[i]);
            }
            out = out.add(&image.scale(c));
        }
        out
    }
}

/// The rank-3 braid defect `sbar_1 sbar_2 sbar_1 - sbar_2 sbar_1 sbar_2` in
/// the group algebra of the rank-3 extended affine Weyl group. It vanishes
/// exactly at the parameter values 1 and -1, so no rank-3 analogue of the
/// rank-2 basis change exists away from those points.
pub fn braid_obstruction(parameter: &Parameter) -> GroupAlgebraElement {
    let param_rf = parameter.to_rational_function();
    let s1 = s_bar_element(3, 1, &param_rf);
    let s2 = s_bar_element(3, 2, &param_rf);
    s1.mul(&s2).mul(&s1).sub(&s2.mul(&s1).mul(&s2))
}
