//! Extended affine Weyl group of type A: elements are pairs `t_lambda * sigma`
//! of an integer translation vector and a permutation, with the semidirect
//! product law `(t_l s)(t_m u) = t_{l + s.m} (s u)` where `(s.m)_i = m_{s^-1(i)}`.
//!
//! The distinguished elements are the adjacent transpositions `s_1..s_{n-1}`,
//! the rotation `Pi` (translation part `(0,..,0,1)` times the cycle sending
//! `j -> j-1 mod n`), and the affine reflection `s_0 = Pi s_1 Pi^-1`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("search radius {0} exceeded")]
    RadiusExceeded(u64),
    #[error("cannot parse group element: {0}")]
    Parse(String),
}

/// A permutation of `{1..n}`, stored 0-based: `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from 0-based images; panics unless they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "images do not form a permutation");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { images: inv }
    }

    /// Composition: `(self * rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Permutation {
            images: rhs.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }
}

/// Element `t_lambda * sigma` of the extended affine Weyl group.
///
/// Ordering is derived (translation vector, then permutation images); it is
/// arbitrary but total and stable, which keeps map iteration deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineWeylElement {
    lambda: Vec<i64>,
    sigma: Permutation,
}

impl ExtAffineWeylElement {
    pub fn new(lambda: Vec<i64>, sigma: Permutation) -> Self {
        assert_eq!(lambda.len(), sigma.rank(), "rank mismatch");
        ExtAffineWeylElement { lambda, sigma }
    }

    pub fn identity(n: usize) -> Self {
        ExtAffineWeylElement::new(vec![0; n], Permutation::identity(n))
    }

    pub fn translation(lambda: Vec<i64>) -> Self {
        let n = lambda.len();
        ExtAffineWeylElement::new(lambda, Permutation::identity(n))
    }

    pub fn from_permutation(sigma: Permutation) -> Self {
        ExtAffineWeylElement::new(vec![0; sigma.rank()], sigma)
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.iter().all(|&a| a == 0) && self.sigma.is_identity()
    }

    pub fn is_translation(&self) -> bool {
        self.sigma.is_identity()
    }
}

/// Finite simple reflection `s_i` (1-based, swaps `i` and `i+1`), `1 <= i < n`.
fn finite_reflection(n: usize, i: usize) -> ExtAffineWeylElement {
    assert!(n >= 2, "rank must be at least 2");
    assert!((1..n).contains(&i), "reflection index out of range");
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(i - 1, i);
    ExtAffineWeylElement::from_permutation(Permutation::from_images(images))
}

/// The rotation element `Pi`: translation `(0,..,0,1)` times the cycle
/// `j -> j-1 (mod n)`. Conjugation by `Pi` rotates the simple reflections
/// and `Pi^n` is the central translation `(1,..,1)`.
pub fn pi_element(n: usize) -> ExtAffineWeylElement {
    assert!(n >= 1, "rank must be positive");
    let mut lambda = vec![0i64; n];
    lambda[n - 1] = 1;
    let images: Vec<usize> = (0..n).map(|j| (j + n - 1) % n).collect();
    ExtAffineWeylElement::new(lambda, Permutation::from_images(images))
}

/// Simple reflection by index: `i = 0` is the affine one (`Pi s_1 Pi^-1`),
/// `1 <= i <= n-1` are the adjacent transpositions. Requires `n >= 2`.
pub fn simple_reflection(n: usize, i: usize) -> ExtAffineWeylElement {
    assert!(n >= 2, "rank must be at least 2 for reflections");
    assert!(i < n, "reflection index out of range");
    if i == 0 {
        let pi = pi_element(n);
        multiply(&multiply(&pi, &finite_reflection(n, 1)), &inverse(&pi))
    } else {
        finite_reflection(n, i)
    }
}

/// All distinguished generators at rank `n`: `s_1..s_{n-1}`, `s_0`, and `Pi`.
pub struct SpecialElements {
    pub finite: Vec<ExtAffineWeylElement>,
    pub affine: ExtAffineWeylElement,
    pub pi: ExtAffineWeylElement,
}

pub fn special_elements(n: usize) -> SpecialElements {
    SpecialElements {
        finite: (1..n).map(|i| simple_reflection(n, i)).collect(),
        affine: simple_reflection(n, 0),
        pi: pi_element(n),
    }
}

/// Group law `(t_l s)(t_m u) = t_{l + s.m} (s u)`.
pub fn multiply(a: &ExtAffineWeylElement, b: &ExtAffineWeylElement) -> ExtAffineWeylElement {
    assert_eq!(a.rank(), b.rank(), "rank mismatch");
    let sig_inv = a.sigma.inverse();
    let lambda: Vec<i64> = (0..a.rank())
        .map(|i| a.lambda[i] + b.lambda[sig_inv.apply(i)])
        .collect();
    ExtAffineWeylElement::new(lambda, a.sigma.compose(&b.sigma))
}

/// Inverse `(t_l s)^-1 = t_{-s^-1.l} s^-1`.
pub fn inverse(a: &ExtAffineWeylElement) -> ExtAffineWeylElement {
    let sig_inv = a.sigma.inverse();
    let lambda: Vec<i64> = (0..a.rank()).map(|i| -a.lambda[a.sigma.apply(i)]).collect();
    ExtAffineWeylElement::new(lambda, sig_inv)
}

/// Left-to-right product of several factors; identity at rank `n` if empty.
pub fn product(n: usize, factors: &[&ExtAffineWeylElement]) -> ExtAffineWeylElement {
    factors
        .iter()
        .fold(ExtAffineWeylElement::identity(n), |acc, f| {
            multiply(&acc, f)
        })
}

/// Integer power.
pub fn power(a: &ExtAffineWeylElement, k: i64) -> ExtAffineWeylElement {
    let base = if k < 0 { inverse(a) } else { a.clone() };
    let mut out = ExtAffineWeylElement::identity(a.rank());
    for _ in 0..k.unsigned_abs() {
        out = multiply(&out, &base);
    }
    out
}

/// Exponent of the `Pi`-class of `w`: the unique `k` with `w` in
/// `Pi^k * W_aff`, where `W_aff` is generated by `s_0..s_{n-1}`. It equals
/// the coordinate sum of the translation part.
pub fn pi_class(w: &ExtAffineWeylElement) -> i64 {
    w.lambda.iter().sum()
}

/// Coxeter length via the closed-form pair sum: for `w = t_l sigma`,
///
/// `len(w) = sum over positions a < b of
///     |l_{sigma(b)} - l_{sigma(a)}|      if sigma(a) < sigma(b)
///     |l_{sigma(b)} - l_{sigma(a)} + 1|  if sigma(a) > sigma(b)`
///
/// The indicator orientation is pinned by exhaustive agreement with
/// `length_bfs` at ranks 2 and 3 (see the oracle tests). `Pi`-powers have
/// length 0.
pub fn length(w: &ExtAffineWeylElement) -> u64 {
    let n = w.rank();
    let mut total: u64 = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            let u = w.sigma.apply(a);
            let v = w.sigma.apply(b);
            let diff = w.lambda[v] - w.lambda[u];
            let term = if u < v { diff } else { diff + 1 };
            total += term.unsigned_abs();
        }
    }
    total
}

/// Word length of the `W_aff` part of `w` by breadth-first search over the
/// generators `s_0..s_{n-1}`, independent of the closed form. Errs when the
/// element is not reached within `radius`.
pub fn length_bfs(w: &ExtAffineWeylElement, radius: u64) -> Result<u64, WeylError> {
    let n = w.rank();
    let target = multiply(&power(&pi_element(n), -pi_class(w)), w);
    if target.is_identity() {
        return Ok(0);
    }
    if n < 2 {
        // Rank 1 has a trivial affine part; anything else is unreachable.
        return Err(WeylError::RadiusExceeded(radius));
    }
    let gens: Vec<ExtAffineWeylElement> = (0..n).map(|i| simple_reflection(n, i)).collect();
    let mut dist: BTreeMap<ExtAffineWeylElement, u64> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(ExtAffineWeylElement::identity(n), 0);
    queue.push_back(ExtAffineWeylElement::identity(n));
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if d == radius {
            continue;
        }
        for g in &gens {
            let next = multiply(&cur, g);
            if !dist.contains_key(&next) {
                if next == target {
                    return Ok(d + 1);
                }
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Err(WeylError::RadiusExceeded(radius))
}

/// All elements of the subgroup generated by `s_0..s_{n-1}` with length at
/// most `max_len`, in breadth-first order (deterministic).
pub fn affine_ball(n: usize, max_len: u64) -> Vec<ExtAffineWeylElement> {
    let mut out = vec![ExtAffineWeylElement::identity(n)];
    if n < 2 {
        return out;
    }
    let gens: Vec<ExtAffineWeylElement> = (0..n).map(|i| simple_reflection(n, i)).collect();
    let mut dist: BTreeMap<ExtAffineWeylElement, u64> = BTreeMap::new();
    dist.insert(ExtAffineWeylElement::identity(n), 0);
    let mut queue = VecDeque::new();
    queue.push_back(ExtAffineWeylElement::identity(n));
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if d == max_len {
            continue;
        }
        for g in &gens {
            let next = multiply(&cur, g);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

/// Which simple reflection to peel first when factoring an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentStrategy {
    /// Always take the smallest descent index (the canonical word).
    SmallestIndex,
    /// Always take the largest descent index.
    LargestIndex,
}

/// Canonical factorization `w = Pi^k * s_{i_1} ... s_{i_len}` with the word
/// chosen by greedy left descents, smallest index first. The word length
/// always equals `length(w)`.
pub fn reduced_word(w: &ExtAffineWeylElement) -> (i64, Vec<usize>) {
    reduced_word_with(w, DescentStrategy::SmallestIndex)
}

/// As `reduced_word`, with a pluggable descent tie-break.
pub fn reduced_word_with(w: &ExtAffineWeylElement, strategy: DescentStrategy) -> (i64, Vec<usize>) {
    let n = w.rank();
    let k = pi_class(w);
    let mut rest = multiply(&power(&pi_element(n), -k), w);
    let mut word = Vec::new();
    if n < 2 {
        assert!(rest.is_identity(), "internal error: rank-1 affine part");
        return (k, word);
    }
    let gens: Vec<ExtAffineWeylElement> = (0..n).map(|i| simple_reflection(n, i)).collect();
    let mut len = length(&rest);
    while len > 0 {
        let indices: Box<dyn Iterator<Item = usize>> = match strategy {
            DescentStrategy::SmallestIndex => Box::new(0..n),
            DescentStrategy::LargestIndex => Box::new((0..n).rev()),
        };
        let mut found = None;
        for i in indices {
            let next = multiply(&gens[i], &rest);
            let next_len = length(&next);
            if next_len < len {
                found = Some((i, next, next_len));
                break;
            }
        }
        let (i, next, next_len) = found.expect("internal error: positive length but no descent");
        word.push(i);
        rest = next;
        len = next_len;
    }
    assert!(rest.is_identity(), "internal error: residue after descents");
    (k, word)
}

/// Rebuild the element named by a `(pi_power, word)` pair.
pub fn from_word(n: usize, pi_power: i64, word: &[usize]) -> ExtAffineWeylElement {
    let mut out = power(&pi_element(n), pi_power);
    for &i in word {
        out = multiply(&out, &simple_reflection(n, i));
    }
    out
}

/// Canonical word form, e.g. `Pi^2 * s1 s0`, `s1`, `Pi^-1`, `e`.
pub fn to_word_string(w: &ExtAffineWeylElement) -> String {
    let (k, word) = reduced_word(w);
    let mut parts = Vec::new();
    if k != 0 {
        parts.push(format!("Pi^{k}"));
    }
    if !word.is_empty() {
        parts.push(
            word.iter()
                .map(|i| format!("s{i}"))
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join(" * ")
    }
}

/// Translation form, e.g. `t(0,1)*perm[2,1]` (permutation images 1-based).
pub fn to_translation_string(w: &ExtAffineWeylElement) -> String {
    let lambda = w
        .lambda
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let perm = w
        .sigma
        .images
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("t({lambda})*perm[{perm}]")
}

/// Parse either text form at rank `n`: the word form `Pi^k * s1 s0 ...`
/// (with `e` for the identity) or the translation form `t(..)*perm[..]`.
pub fn parse_element(n: usize, input: &str) -> Result<ExtAffineWeylElement, WeylError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(WeylError::Parse("empty input".into()));
    }
    if s.starts_with('t') || s.starts_with("perm") {
        parse_translation_form(n, s)
    } else {
        parse_word_form(n, s)
    }
}

fn parse_word_form(n: usize, s: &str) -> Result<ExtAffineWeylElement, WeylError> {
    let mut out = ExtAffineWeylElement::identity(n);
    for tok in s.split(|c: char| c.is_whitespace() || c == '*') {
        if tok.is_empty() || tok == "e" {
            continue;
        }
        if let Some(rest) = tok.strip_prefix("Pi") {
            let k: i64 = if rest.is_empty() {
                1
            } else {
                let digits = rest
                    .strip_prefix('^')
                    .ok_or_else(|| WeylError::Parse(format!("bad token {tok:?}")))?;
                digits
                    .parse()
                    .map_err(|_| WeylError::Parse(format!("bad exponent in {tok:?}")))?
            };
            out = multiply(&out, &power(&pi_element(n), k));
        } else if let Some(rest) = tok.strip_prefix('s') {
            let i: usize = rest
                .parse()
                .map_err(|_| WeylError::Parse(format!("bad reflection {tok:?}")))?;
            if i >= n {
                return Err(WeylError::Parse(format!(
                    "reflection index {i} out of range for rank {n}"
                )));
            }
            if n < 2 {
                return Err(WeylError::Parse("rank 1 has no reflections".into()));
            }
            out = multiply(&out, &simple_reflection(n, i));
        } else {
            return Err(WeylError::Parse(format!("unrecognized token {tok:?}")));
        }
    }
    Ok(out)
}

fn parse_translation_form(n: usize, s: &str) -> Result<ExtAffineWeylElement, WeylError> {
    let bad = |m: &str| WeylError::Parse(m.to_string());
    let mut lambda = vec![0i64; n];
    let mut images: Vec<usize> = (0..n).collect();
    let mut rest = s;
    if rest.starts_with('t') {
        let open = rest.find('(').ok_or_else(|| bad("expected '(' after t"))?;
        let close = rest.find(')').ok_or_else(|| bad("unterminated t(...)"))?;
        let body = &rest[open + 1..close];
        let parts: Vec<&str> = if body.trim().is_empty() {
            vec![]
        } else {
            body.split(',').collect()
        };
        if parts.len() != n {
            return Err(bad(&format!(
                "translation has {} coordinates, expected {n}",
                parts.len()
            )));
        }
        for (i, p) in parts.iter().enumerate() {
            lambda[i] = p
                .trim()
                .parse()
                .map_err(|_| bad(&format!("bad coordinate {p:?}")))?;
        }
        rest = rest[close + 1..].trim_start();
        rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
    }
    if !rest.is_empty() {
        let body = rest
            .strip_prefix("perm[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad(&format!("expected perm[..], got {rest:?}")))?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != n {
            return Err(bad(&format!(
                "permutation has {} images, expected {n}",
                parts.len()
            )));
        }
        for (i, p) in parts.iter().enumerate() {
            let img: usize = p
                .trim()
                .parse()
                .map_err(|_| bad(&format!("bad image {p:?}")))?;
            if !(1..=n).contains(&img) {
                return Err(bad(&format!("image {img} out of range 1..{n}")));
            }
            images[i] = img - 1;
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if seen[i] {
                return Err(bad("permutation images repeat"));
            }
            seen[i] = true;
        }
    }
    Ok(ExtAffineWeylElement::new(
        lambda,
        Permutation::from_images(images),
    ))
}

impl fmt::Display for ExtAffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_translation_string(self))
    }
}
