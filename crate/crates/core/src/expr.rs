//! Parser for the textual element grammar shared by scalars in `Q(r)`,
//! Hecke elements (`T[..]` basis symbols), and group-algebra elements
//! (`G[..]` basis symbols).
//!
//! Grammar, whitespace-insensitive between tokens:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] INT)*              (left-associative)
//! atom   := INT | 'r' | basis | '(' expr ')'
//! basis  := ('T' | 'G') '[' 'Pi' '^' ['-'] INT (';' INT+)? ']'
//! ```
//!
//! `T[..]` atoms are accepted only when parsing Hecke elements and `G[..]`
//! atoms only when parsing group-algebra elements; plain scalars accept
//! neither. A scalar-valued expression in an element context is promoted to
//! the corresponding multiple of the unit basis element, so `0` parses as
//! the zero element and `r + T[Pi^0; 1]` means `r * T[Pi^0] + T[Pi^0; 1]`.
//!
//! Division requires a nonzero scalar right operand. Exponents are integer
//! literals (never parenthesized expressions) and may be negative only on
//! scalar bases. Products of `T[..]` atoms are expanded in the
//! generic-parameter algebra of the requested rank.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::group_algebra::GroupAlgebraElement;
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::scalars::{Polynomial, RationalFunction};
use crate::weyl;

/// Failure while parsing or evaluating an expression, with the byte offset
/// in the input where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

fn fail<T>(pos: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        pos,
        msg: msg.into(),
    })
}

/// Parse a scalar in `Q(r)`, e.g. `(r^2 - 1)/(2*r + 2)`.
pub fn parse_scalar(input: &str) -> Result<RationalFunction, ExprError> {
    match run(&Context::Scalar, input)? {
        Value::Scalar(s) => Ok(s),
        _ => fail(0, "internal: non-scalar value in scalar context"),
    }
}

/// Parse a Hecke element at rank `m`, e.g. `r * T[Pi^0] + (r - 1) * T[Pi^0; 1]`.
pub fn parse_hecke(m: usize, input: &str) -> Result<HeckeElement, ExprError> {
    if m == 0 {
        return fail(0, "rank must be at least 1");
    }
    let ctx = Context::Hecke(HeckeAlgebra::generic(m));
    match run(&ctx, input)? {
        Value::Scalar(s) => Ok(HeckeElement::unit(m).scale(&s)),
        Value::Hecke(h) => Ok(h),
        Value::Group(_) => fail(0, "internal: group value in Hecke context"),
    }
}

/// Parse a group-algebra element at rank `n`, e.g. `(r + 1)/2 * G[Pi^0; 1]`.
pub fn parse_group(n: usize, input: &str) -> Result<GroupAlgebraElement, ExprError> {
    if n == 0 {
        return fail(0, "rank must be at least 1");
    }
    let ctx = Context::Group(n);
    match run(&ctx, input)? {
        Value::Scalar(s) => Ok(GroupAlgebraElement::unit(n).scale(&s)),
        Value::Group(g) => Ok(g),
        Value::Hecke(_) => fail(0, "internal: Hecke value in group context"),
    }
}

/// What kind of element the expression is being parsed into.
enum Context {
    Scalar,
    Hecke(HeckeAlgebra),
    Group(usize),
}

/// Intermediate value during evaluation.
enum Value {
    Scalar(RationalFunction),
    Hecke(HeckeElement),
    Group(GroupAlgebraElement),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    /// The formal parameter `r`.
    Param,
    /// A complete bracketed basis symbol, already decoded.
    Basis {
        marker: char,
        pi_power: i64,
        word: Vec<usize>,
    },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn skip_ws(b: &[u8], i: &mut usize) {
    while *i < b.len() && b[*i].is_ascii_whitespace() {
        *i += 1;
    }
}

fn read_i64(src: &str, i: &mut usize) -> Result<i64, ExprError> {
    let b = src.as_bytes();
    let start = *i;
    if *i < b.len() && b[*i] == b'-' {
        *i += 1;
    }
    let digits_start = *i;
    while *i < b.len() && b[*i].is_ascii_digit() {
        *i += 1;
    }
    if digits_start == *i {
        return fail(start, "expected an integer");
    }
    src[start..*i].parse::<i64>().map_err(|_| ExprError {
        pos: start,
        msg: "integer out of range".into(),
    })
}

/// Decode the bracketed part of `T[..]` / `G[..]`; `i` sits just past the
/// marker letter on entry and just past `]` on success.
fn lex_basis(src: &str, i: &mut usize, marker: char) -> Result<Tok, ExprError> {
    let b = src.as_bytes();
    skip_ws(b, i);
    if *i >= b.len() || b[*i] != b'[' {
        return fail(*i, format!("expected `[` after `{marker}`"));
    }
    *i += 1;
    skip_ws(b, i);
    if !src[*i..].starts_with("Pi") {
        return fail(*i, "expected `Pi` at the start of a basis symbol");
    }
    *i += 2;
    if *i >= b.len() || b[*i] != b'^' {
        return fail(*i, "expected `^` after `Pi`");
    }
    *i += 1;
    let pi_power = read_i64(src, i)?;
    skip_ws(b, i);
    let mut word = Vec::new();
    if *i < b.len() && b[*i] == b';' {
        *i += 1;
        skip_ws(b, i);
        while *i < b.len() && b[*i].is_ascii_digit() {
            let start = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            let letter = src[start..*i].parse::<usize>().map_err(|_| ExprError {
                pos: start,
                msg: "generator index out of range".into(),
            })?;
            word.push(letter);
            skip_ws(b, i);
        }
        if word.is_empty() {
            return fail(*i, "expected at least one generator index after `;`");
        }
    }
    if *i >= b.len() || b[*i] != b']' {
        return fail(*i, "expected `]` closing the basis symbol");
    }
    *i += 1;
    Ok(Tok::Basis {
        marker,
        pi_power,
        word,
    })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = src.as_bytes();
    let mut i = 0usize;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((i, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i]
                .parse::<BigInt>()
                .expect("digit run parses as a BigInt");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && b[i].is_ascii_alphabetic() {
                i += 1;
            }
            match &src[start..i] {
                "r" => out.push((start, Tok::Param)),
                m @ ("T" | "G") => {
                    let marker = m.chars().next().expect("nonempty marker");
                    let tok = lex_basis(src, &mut i, marker)?;
                    out.push((start, tok));
                }
                other => return fail(start, format!("unexpected name `{other}`")),
            }
        } else {
            let ch = src[i..].chars().next().expect("char at a valid offset");
            return fail(i, format!("unexpected character `{ch}`"));
        }
    }
    Ok(out)
}

fn run(ctx: &Context, input: &str) -> Result<Value, ExprError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return fail(0, "empty expression");
    }
    let mut parser = Parser {
        toks,
        at: 0,
        end: input.len(),
        ctx,
    };
    let value = parser.parse_expr()?;
    if let Some(pos) = parser.peek_pos() {
        return fail(pos, "unexpected trailing input");
    }
    Ok(value)
}

struct Parser<'c> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ctx: &'c Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek_pos(&self) -> Option<usize> {
        self.toks.get(self.at).map(|(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.parse_term()?;
        loop {
            let subtract = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            let (pos, _) = self.bump().expect("peeked operator");
            let rhs = self.parse_term()?;
            acc = self.combine_add(pos, acc, rhs, subtract)?;
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.parse_unary()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => break,
            };
            let (pos, _) = self.bump().expect("peeked operator");
            let rhs = self.parse_unary()?;
            acc = if divide {
                self.combine_div(pos, acc, rhs)?
            } else {
                self.combine_mul(pos, acc, rhs)?
            };
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Value, ExprError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            let v = self.parse_unary()?;
            return Ok(match v {
                Value::Scalar(s) => Value::Scalar(-&s),
                Value::Hecke(h) => Value::Hecke(h.neg()),
                Value::Group(g) => Value::Group(g.neg()),
            });
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Value, ExprError> {
        let mut base = self.parse_atom()?;
        while let Some(Tok::Caret) = self.peek() {
            let (caret_pos, _) = self.bump().expect("peeked caret");
            let negate = matches!(self.peek(), Some(Tok::Minus));
            if negate {
                self.bump();
            }
            let exponent = match self.bump() {
                Some((pos, Tok::Int(n))) => match n.to_i64() {
                    Some(k) => {
                        if negate {
                            -k
                        } else {
                            k
                        }
                    }
                    None => return fail(pos, "exponent out of range"),
                },
                Some((pos, _)) => return fail(pos, "expected an integer exponent"),
                None => return fail(self.end, "expected an integer exponent"),
            };
            base = self.apply_pow(caret_pos, base, exponent)?;
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Value, ExprError> {
        let Some((pos, tok)) = self.bump() else {
            return fail(self.end, "unexpected end of input");
        };
        match tok {
            Tok::Int(n) => Ok(Value::Scalar(RationalFunction::from_poly(
                Polynomial::constant(n),
            ))),
            Tok::Param => Ok(Value::Scalar(RationalFunction::generator())),
            Tok::LParen => {
                let v = self.parse_expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(v),
                    Some((p, _)) => fail(p, "expected `)`"),
                    None => fail(self.end, "missing `)`"),
                }
            }
            Tok::Basis {
                marker,
                pi_power,
                word,
            } => self.basis_atom(pos, marker, pi_power, &word),
            Tok::RParen => fail(pos, "unexpected `)`"),
            Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash | Tok::Caret => {
                fail(pos, "expected a value")
            }
        }
    }

    fn basis_atom(
        &self,
        pos: usize,
        marker: char,
        pi_power: i64,
        word: &[usize],
    ) -> Result<Value, ExprError> {
        let rank = match (marker, self.ctx) {
            ('T', Context::Hecke(alg)) => alg.rank(),
            ('G', Context::Group(n)) => *n,
            ('T', _) => {
                return fail(
                    pos,
                    "`T[..]` basis symbols are only valid in Hecke-element expressions",
                )
            }
            _ => {
                return fail(
                    pos,
                    "`G[..]` basis symbols are only valid in group-algebra expressions",
                )
            }
        };
        for &letter in word {
            if rank < 2 || letter >= rank {
                return fail(
                    pos,
                    format!("generator index {letter} out of range at rank {rank}"),
                );
            }
        }
        let w = weyl::from_word(rank, pi_power, word);
        Ok(match marker {
            'T' => Value::Hecke(HeckeElement::basis(w)),
            _ => Value::Group(GroupAlgebraElement::basis(w)),
        })
    }

    fn combine_add(
        &self,
        pos: usize,
        a: Value,
        b: Value,
        subtract: bool,
    ) -> Result<Value, ExprError> {
        use Value::{Group, Hecke, Scalar};
        Ok(match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(if subtract { &x - &y } else { &x + &y }),
            (Hecke(x), Hecke(y)) => Hecke(if subtract { x.sub(&y) } else { x.add(&y) }),
            (Group(x), Group(y)) => Group(if subtract { x.sub(&y) } else { x.add(&y) }),
            (Scalar(x), Hecke(y)) => {
                let u = HeckeElement::unit(y.rank()).scale(&x);
                Hecke(if subtract { u.sub(&y) } else { u.add(&y) })
            }
            (Hecke(x), Scalar(y)) => {
                let u = HeckeElement::unit(x.rank()).scale(&y);
                Hecke(if subtract { x.sub(&u) } else { x.add(&u) })
            }
            (Scalar(x), Group(y)) => {
                let u = GroupAlgebraElement::unit(y.rank()).scale(&x);
                Group(if subtract { u.sub(&y) } else { u.add(&y) })
            }
            (Group(x), Scalar(y)) => {
                let u = GroupAlgebraElement::unit(x.rank()).scale(&y);
                Group(if subtract { x.sub(&u) } else { x.add(&u) })
            }
            (Hecke(_), Group(_)) | (Group(_), Hecke(_)) => {
                return fail(pos, "cannot mix Hecke and group-algebra values")
            }
        })
    }

    fn combine_mul(&self, pos: usize, a: Value, b: Value) -> Result<Value, ExprError> {
        use Value::{Group, Hecke, Scalar};
        Ok(match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(&x * &y),
            (Scalar(x), Hecke(y)) | (Hecke(y), Scalar(x)) => Hecke(y.scale(&x)),
            (Scalar(x), Group(y)) | (Group(y), Scalar(x)) => Group(y.scale(&x)),
            (Hecke(x), Hecke(y)) => {
                let Context::Hecke(alg) = self.ctx else {
                    return fail(pos, "internal: Hecke value outside a Hecke context");
                };
                Hecke(alg.mul(&x, &y))
            }
            (Group(x), Group(y)) => Group(x.mul(&y)),
            (Hecke(_), Group(_)) | (Group(_), Hecke(_)) => {
                return fail(pos, "cannot mix Hecke and group-algebra values")
            }
        })
    }

    fn combine_div(&self, pos: usize, a: Value, b: Value) -> Result<Value, ExprError> {
        use Value::{Group, Hecke, Scalar};
        let Scalar(den) = b else {
            return fail(pos, "division is only defined by scalar values");
        };
        if den.is_zero() {
            return fail(pos, "division by zero");
        }
        let inverse = RationalFunction::one()
            .checked_div(&den)
            .map_err(|e| ExprError {
                pos,
                msg: e.to_string(),
            })?;
        Ok(match a {
            Scalar(x) => Scalar(&x * &inverse),
            Hecke(x) => Hecke(x.scale(&inverse)),
            Group(x) => Group(x.scale(&inverse)),
        })
    }

    fn apply_pow(&self, pos: usize, base: Value, exponent: i64) -> Result<Value, ExprError> {
        use Value::{Group, Hecke, Scalar};
        match base {
            Scalar(x) => {
                if exponent < 0 && x.is_zero() {
                    return fail(pos, "zero to a negative power");
                }
                let v = x.pow(exponent).map_err(|e| ExprError {
                    pos,
                    msg: e.to_string(),
                })?;
                Ok(Scalar(v))
            }
            Hecke(h) => {
                let k = nonnegative_exponent(pos, exponent)?;
                let Context::Hecke(alg) = self.ctx else {
                    return fail(pos, "internal: Hecke value outside a Hecke context");
                };
                Ok(Hecke(alg.pow(&h, k)))
            }
            Group(g) => {
                let k = nonnegative_exponent(pos, exponent)?;
                Ok(Group(g.pow(k)))
            }
        }
    }
}

fn nonnegative_exponent(pos: usize, exponent: i64) -> Result<u32, ExprError> {
    if exponent < 0 {
        return fail(pos, "negative exponents require a scalar base");
    }
    u32::try_from(exponent).map_err(|_| ExprError {
        pos,
        msg: "exponent too large".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{from_word, pi_element, power, simple_reflection};

    fn rf(s: &str) -> RationalFunction {
        parse_scalar(s).unwrap_or_else(|e| panic!("parse `{s}`: {e}"))
    }

    fn int(n: i64) -> RationalFunction {
        RationalFunction::integer(n)
    }

    fn ratio(n: i64, d: i64) -> RationalFunction {
        int(n).checked_div(&int(d)).unwrap()
    }

    fn q(n: i64) -> crate::scalars::Rational {
        crate::scalars::Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn scalar_literals() {
        assert!(rf("0").is_zero());
        assert_eq!(rf("17"), int(17));
        assert_eq!(rf("-3"), int(-3));
        assert_eq!(rf("r"), RationalFunction::generator());
        assert_eq!(
            rf("r^2"),
            &RationalFunction::generator() * &RationalFunction::generator()
        );
        // Literals larger than any machine integer still parse exactly.
        let big = rf("340282366920938463463374607431768211457");
        assert_eq!(
            &big - &rf("340282366920938463463374607431768211456"),
            int(1)
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(rf("2 + 3 * 4"), int(14));
        assert_eq!(rf("2 * 3 + 4"), int(10));
        assert_eq!(rf("(2 + 3) * 4"), int(20));
        assert_eq!(rf("2 - 3 - 4"), int(-5));
        assert_eq!(rf("6 / 2 / 3"), int(1));
        assert_eq!(
            rf("2 ^ 3 ^ 2"),
            int(64),
            "power chains are left-associative"
        );
        assert_eq!(rf("-2^2"), int(-4), "unary minus binds below the exponent");
        assert_eq!(rf("1/2 * r"), &ratio(1, 2) * &RationalFunction::generator());
        assert_eq!(rf("- 3"), int(-3));
        assert_eq!(rf("--3"), int(3));
    }

    #[test]
    fn standard_coefficient_forms() {
        let r = RationalFunction::generator();
        let half_up = rf("(r + 1)/2");
        let half_down = rf("(r - 1)/2");
        assert_eq!(&half_up + &half_down, r.clone());
        assert_eq!(&half_up - &half_down, int(1));
        assert!((&rf("2/(r + 1)") * &half_up).is_one());
        assert_eq!(rf("(r^2 - 1)/(2*r + 2)"), half_down);
        let braid_scale = rf("(r + 1)*(r - 1)^2/8");
        assert_eq!(braid_scale.specialize(&q(3)).unwrap(), q(2));
        assert_eq!(braid_scale.specialize(&q(1)).unwrap(), q(0));
        assert_eq!(rf("r^-1"), int(1).checked_div(&r).unwrap());
        assert_eq!(
            rf("(r + 1)^-2"),
            int(1).checked_div(&rf("(r + 1)^2")).unwrap()
        );
    }

    #[test]
    fn scalar_display_round_trips() {
        let r = RationalFunction::generator();
        let samples = vec![
            RationalFunction::zero(),
            RationalFunction::one(),
            -&RationalFunction::one(),
            r.clone(),
            -&r,
            &r * &r,
            rf("(r + 1)/2"),
            -&rf("(r + 1)/2"),
            int(1).checked_div(&rf("r^2 - 1")).unwrap(),
            rf("(r + 2)/(2*r)"),
            rf("(3*r^2 - 5)/7"),
            r.checked_div(&rf("r + 1")).unwrap(),
            rf("-5*r^3 + 2*r - 1"),
        ];
        for x in samples {
            let text = x.to_string();
            assert_eq!(rf(&text), x, "round-tripping `{text}`");
            let factor = x.factor_string();
            assert_eq!(rf(&factor), x, "round-tripping factor form `{factor}`");
        }
    }

    #[test]
    fn scalar_division_errors() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("r/(r - r)").is_err());
        assert!(parse_scalar("0 ^ -1").is_err());
        let err = parse_scalar("1/0").unwrap_err();
        assert_eq!(err.pos, 1);
        assert!(err.to_string().contains("division by zero"));
    }

    #[test]
    fn hecke_basis_atoms() {
        assert_eq!(parse_hecke(2, "T[Pi^0]").unwrap(), HeckeElement::unit(2));
        assert_eq!(
            parse_hecke(2, "T[Pi^1]").unwrap(),
            HeckeElement::basis(pi_element(2))
        );
        assert_eq!(
            parse_hecke(2, "T[Pi^-1]").unwrap(),
            HeckeElement::basis(power(&pi_element(2), -1))
        );
        assert_eq!(
            parse_hecke(2, "T[Pi^0; 1]").unwrap(),
            HeckeElement::basis(simple_reflection(2, 1))
        );
        assert_eq!(
            parse_hecke(2, "T[Pi^2; 1 0]").unwrap(),
            HeckeElement::basis(from_word(2, 2, &[1, 0]))
        );
        assert_eq!(
            parse_hecke(3, "T[ Pi^-2 ; 1 2 1 ]").unwrap(),
            HeckeElement::basis(from_word(3, -2, &[1, 2, 1]))
        );
    }

    #[test]
    fn hecke_products_use_the_generic_algebra() {
        let alg = HeckeAlgebra::generic(2);
        let s1 = alg.basis(&simple_reflection(2, 1));
        let square = alg.mul(&s1, &s1);
        assert_eq!(
            parse_hecke(2, "r * T[Pi^0] + (r - 1) * T[Pi^0; 1]").unwrap(),
            square
        );
        assert_eq!(parse_hecke(2, "T[Pi^0; 1] * T[Pi^0; 1]").unwrap(), square);
        assert_eq!(parse_hecke(2, "T[Pi^0; 1]^2").unwrap(), square);
        assert_eq!(
            parse_hecke(2, "T[Pi^1]^3").unwrap(),
            HeckeElement::basis(power(&pi_element(2), 3))
        );
    }

    #[test]
    fn scalars_promote_to_unit_multiples() {
        let zero = parse_hecke(2, "0").unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.rank(), 2);
        assert_eq!(
            parse_hecke(2, "(r - 1)/2").unwrap(),
            HeckeElement::unit(2).scale(&rf("(r - 1)/2"))
        );
        let s1 = HeckeElement::basis(simple_reflection(2, 1));
        assert_eq!(
            parse_hecke(2, "2 + T[Pi^0; 1]").unwrap(),
            HeckeElement::unit(2).scale(&int(2)).add(&s1)
        );
        assert_eq!(
            parse_hecke(2, "T[Pi^0; 1] - 2").unwrap(),
            s1.sub(&HeckeElement::unit(2).scale(&int(2)))
        );
        assert_eq!(
            parse_group(2, "r").unwrap(),
            GroupAlgebraElement::unit(2).scale(&RationalFunction::generator())
        );
    }

    #[test]
    fn hecke_display_round_trips() {
        let alg2 = HeckeAlgebra::generic(2);
        let alg3 = HeckeAlgebra::generic(3);
        let s1 = alg2.basis(&simple_reflection(2, 1));
        let mut samples2 = vec![
            HeckeElement::zero(2),
            alg2.unit(),
            HeckeElement::basis(power(&pi_element(2), -2)),
            alg2.mul(&s1, &s1),
            alg2.mul(&alg2.mul(&s1, &s1), &s1).scale(&rf("(r - 1)/3")),
            s1.neg(),
            alg2.unit().sub(&s1.scale(&rf("r^2"))),
        ];
        let t_s1 = alg2.basis(&simple_reflection(2, 1));
        samples2.push(t_s1.specialize(&q(3)).unwrap().scale(&ratio(3, 2)));
        for x in samples2 {
            let text = x.to_string();
            assert_eq!(parse_hecke(2, &text).unwrap(), x, "round-tripping `{text}`");
        }
        let braidish = alg3.mul(
            &alg3.basis(&from_word(3, 0, &[1, 2, 1])),
            &alg3.basis(&from_word(3, 1, &[2])),
        );
        let text = braidish.to_string();
        assert_eq!(parse_hecke(3, &text).unwrap(), braidish);
    }

    #[test]
    fn group_atoms_and_round_trips() {
        let s1 = GroupAlgebraElement::basis(simple_reflection(2, 1));
        assert_eq!(parse_group(2, "G[Pi^0; 1]").unwrap(), s1);
        // In the group algebra a reflection squares to the identity.
        assert_eq!(
            parse_group(2, "G[Pi^0; 1] * G[Pi^0; 1]").unwrap(),
            GroupAlgebraElement::unit(2)
        );
        let s_bar = s1
            .scale(&rf("(r + 1)/2"))
            .add(&GroupAlgebraElement::unit(2).scale(&rf("(r - 1)/2")));
        assert_eq!(
            parse_group(2, "(r - 1)/2 * G[Pi^0] + (r + 1)/2 * G[Pi^0; 1]").unwrap(),
            s_bar
        );
        let samples = vec![
            GroupAlgebraElement::zero(2),
            GroupAlgebraElement::unit(2),
            s_bar.clone(),
            s_bar.mul(&s_bar),
            GroupAlgebraElement::basis(power(&pi_element(2), -1)).scale(&rf("-2/(r + 1)")),
        ];
        for x in samples {
            let text = x.to_string();
            assert_eq!(parse_group(2, &text).unwrap(), x, "round-tripping `{text}`");
        }
    }

    #[test]
    fn context_enforcement() {
        assert!(parse_scalar("T[Pi^0]").is_err());
        assert!(parse_scalar("G[Pi^0]").is_err());
        assert!(parse_hecke(2, "G[Pi^0]").is_err());
        assert!(parse_group(2, "T[Pi^0]").is_err());
        assert!(parse_hecke(0, "T[Pi^0]").is_err());
        assert!(parse_group(0, "0").is_err());
    }

    #[test]
    fn generator_index_validation() {
        assert!(parse_hecke(2, "T[Pi^0; 2]").is_err());
        assert!(
            parse_hecke(1, "T[Pi^0; 0]").is_err(),
            "rank 1 has no reflections"
        );
        assert!(parse_hecke(1, "T[Pi^5]").is_ok());
        assert!(parse_group(3, "G[Pi^0; 2]").is_ok());
        assert!(parse_group(3, "G[Pi^0; 3]").is_err());
    }

    #[test]
    fn division_rules_for_elements() {
        assert_eq!(
            parse_hecke(2, "T[Pi^0; 1] / 2").unwrap(),
            HeckeElement::basis(simple_reflection(2, 1)).scale(&ratio(1, 2))
        );
        assert!(parse_hecke(2, "2 / T[Pi^0]").is_err());
        assert!(parse_hecke(2, "T[Pi^0] / 0").is_err());
        assert!(parse_hecke(2, "T[Pi^0; 1]^-1").is_err());
        assert!(parse_group(2, "G[Pi^0; 1]^-1").is_err());
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "",
            "   ",
            "2 +",
            "(r",
            "* 2",
            "r r",
            "2 2",
            "x",
            "T",
            "T[",
            "T[Pi",
            "T[Pi^",
            "T[Pi^0",
            "T[Pi^0;",
            "T[Pi^0; ]",
            "T[pi^0]",
            "Pi",
            "r^",
            "r^x",
            "r^(2)",
            "r^99999999999999999999",
            "r)",
            "£",
        ] {
            assert!(parse_hecke(2, bad).is_err(), "expected `{bad}` to fail");
        }
        let err = parse_scalar("2 + x").unwrap_err();
        assert_eq!(err.pos, 4);
    }
}
