//! End-to-end checks of the rank-2 basis change between the deformed algebra
//! and the plain group algebra: it must be an algebra map in both directions,
//! bijective on a generous sample, defined exactly away from the parameter
//! pole, and obstructed at rank 3 except at the two special parameter values.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hecke_core::iso::{braid_obstruction, IsoContext, IsoError};
use hecke_core::scalars::{parse_rational, Parameter, RationalFunction};
use hecke_core::weyl::{self, ExtAffineWeylElement};
use hecke_core::{GroupAlgebraElement, HeckeElement};

fn random_weyl(rng: &mut StdRng, max_word: usize) -> ExtAffineWeylElement {
    let mut w = weyl::power(&weyl::pi_element(2), rng.gen_range(-2..=2));
    for _ in 0..rng.gen_range(0..=max_word) {
        w = weyl::multiply(&w, &weyl::simple_reflection(2, rng.gen_range(0..2)));
    }
    w
}

fn random_hecke(rng: &mut StdRng, ctx: &IsoContext) -> HeckeElement {
    let alg = ctx.hecke_algebra();
    let mut out = HeckeElement::zero(2);
    for _ in 0..rng.gen_range(1..=3) {
        let c = RationalFunction::integer(rng.gen_range(-3i64..=3))
            .checked_div(&RationalFunction::integer(rng.gen_range(1i64..=2)))
            .unwrap();
        let c = if rng.gen_bool(0.3) {
            &c * &RationalFunction::generator()
        } else {
            c
        };
        out = out.add(&alg.basis(&random_weyl(rng, 3)).scale(&c));
    }
    out
}

fn random_group(rng: &mut StdRng) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(2);
    for _ in 0..rng.gen_range(1..=3) {
        let c = RationalFunction::integer(rng.gen_range(-3i64..=3));
        out = out.add(&GroupAlgebraElement::basis(random_weyl(rng, 3)).scale(&c));
    }
    out
}

#[test]
fn forward_map_is_multiplicative_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(61);
    let contexts = [
        IsoContext::generic(),
        IsoContext::at(parse_rational("3").unwrap()).unwrap(),
        IsoContext::at(parse_rational("-2").unwrap()).unwrap(),
    ];
    for ctx in &contexts {
        let alg = ctx.hecke_algebra();
        for _ in 0..40 {
            let a = random_hecke(&mut rng, ctx);
            let b = random_hecke(&mut rng, ctx);
            assert_eq!(
                ctx.phi(&alg.mul(&a, &b)),
                ctx.phi(&a).mul(&ctx.phi(&b)),
                "phi(ab) != phi(a)phi(b) at {:?}",
                ctx.parameter()
            );
        }
    }
}

#[test]
fn inverse_map_is_multiplicative_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(62);
    let ctx = IsoContext::generic();
    let alg = ctx.hecke_algebra();
    for _ in 0..40 {
        let a = random_group(&mut rng);
        let b = random_group(&mut rng);
        assert_eq!(
            ctx.phi_inverse(&a.mul(&b)),
            alg.mul(&ctx.phi_inverse(&a), &ctx.phi_inverse(&b)),
            "phi^-1(ab) != phi^-1(a)phi^-1(b)"
        );
    }
}

#[test]
fn both_round_trips_are_the_identity_on_short_basis_elements() {
    let ctx = IsoContext::generic();
    let alg = ctx.hecke_algebra();
    for u in weyl::affine_ball(2, 5) {
        for k in -2..=2i64 {
            let w = weyl::multiply(&weyl::power(&weyl::pi_element(2), k), &u);
            let t = alg.basis(&w);
            assert_eq!(
                ctx.phi_inverse(&ctx.phi(&t)),
                t,
                "T-side round trip at {w:?}"
            );
            let g = GroupAlgebraElement::basis(w.clone());
            assert_eq!(
                ctx.phi(&ctx.phi_inverse(&g)),
                g,
                "group-side round trip at {w:?}"
            );
        }
    }
}

#[test]
fn round_trips_fix_random_linear_combinations() {
    let mut rng = StdRng::seed_from_u64(63);
    for value in ["2", "-2", "1/2", "5"] {
        let ctx = IsoContext::at(parse_rational(value).unwrap()).unwrap();
        for _ in 0..20 {
            let a = random_hecke(&mut rng, &ctx);
            assert_eq!(ctx.phi_inverse(&ctx.phi(&a)), a);
            let g = random_group(&mut rng);
            assert_eq!(ctx.phi(&ctx.phi_inverse(&g)), g);
        }
    }
}

#[test]
fn unit_and_rotation_have_forced_images() {
    let ctx = IsoContext::generic();
    let alg = ctx.hecke_algebra();
    assert_eq!(ctx.phi(&alg.unit()), GroupAlgebraElement::unit(2));
    assert_eq!(
        ctx.phi(&alg.t_generator()),
        GroupAlgebraElement::basis(weyl::pi_element(2))
    );
    assert_eq!(ctx.phi_inverse(&GroupAlgebraElement::unit(2)), alg.unit());
}

#[test]
fn the_parameter_pole_is_rejected_and_everything_else_accepted() {
    assert_eq!(
        IsoContext::at(parse_rational("-1").unwrap()).unwrap_err(),
        IsoError::ParameterPole
    );
    for value in ["0", "1", "2", "-2", "7/3", "-1/2"] {
        assert!(
            IsoContext::at(parse_rational(value).unwrap()).is_ok(),
            "r = {value} must be accepted"
        );
    }
}

#[test]
fn rank3_braid_obstruction_vanishes_exactly_at_the_special_values() {
    assert!(braid_obstruction(&Parameter::value(1, 1)).is_zero());
    assert!(braid_obstruction(&Parameter::value(-1, 1)).is_zero());
    for (n, d) in [(2i64, 1i64), (3, 1), (5, 1), (-2, 1), (1, 2)] {
        assert!(
            !braid_obstruction(&Parameter::value(n, d)).is_zero(),
            "obstruction unexpectedly vanished at {n}/{d}"
        );
    }
    // The generic obstruction is nonzero as an element over Q(r) but all of
    // its coefficients vanish under specialization at 1.
    let generic = braid_obstruction(&Parameter::Generic);
    assert!(!generic.is_zero());
    let one = parse_rational("1").unwrap();
    assert!(generic.specialize(&one).unwrap().is_zero());
    let minus_one = parse_rational("-1").unwrap();
    assert!(generic.specialize(&minus_one).unwrap().is_zero());
    let three = parse_rational("3").unwrap();
    assert!(!generic.specialize(&three).unwrap().is_zero());
}

#[test]
fn obstruction_matches_its_closed_form() {
    // sbar_1 sbar_2 sbar_1 - sbar_2 sbar_1 sbar_2
    //   = (r+1)(r-1)^2/8 * (s_1 - s_2)
    // because the pure braid terms cancel in the group and the mixed terms
    // telescope onto the difference of the two reflections.
    let generic = braid_obstruction(&Parameter::Generic);
    let scale: RationalFunction = "(r + 1)*(r - 1)^2/8".parse().unwrap();
    let s1 = GroupAlgebraElement::basis(weyl::simple_reflection(3, 1));
    let s2 = GroupAlgebraElement::basis(weyl::simple_reflection(3, 2));
    assert_eq!(generic, s1.sub(&s2).scale(&scale));
}
